"""Command-line front end.

Exit codes: 0 success, 1 domain failure, 2 input/parse failure.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import io
from .cancel import (
    auto_cancel,
    cancel_pair,
    fast_update,
    find_cancellable_pairs,
    make_pair,
    update_boundary_k,
    update_coboundary_k,
)
from .complex import matching_complex
from .corpus import generate_corpus
from .errors import MorseError
from .gvf import TrajectoryEngine, critical_simplices, is_gradient, validate_dvf
from .homology import homology_from_boundaries, simplicial_homology
from .morse import check_chain_law, morse_boundary_matrix, morse_coboundary_matrix, morse_complex

BENCH_FIELDS = [
    "instance_id", "dim_k", "n_crit_k", "n_crit_km1", "traj_count", "fast_ns", "oracle_ns", "equal",
]


class InputError(Exception):
    pass


def _load(path, parser):
    try:
        return parser(io.load_json(path))
    except (OSError, json.JSONDecodeError, ValueError, TypeError, KeyError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _emit(obj, out):
    text = json.dumps(obj, indent=1)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _load_field(K, path):
    V = _load(path, io.matching_from_json)
    try:
        report = validate_dvf(K, V)
    except MorseError as exc:
        raise InputError(f"{path}: {exc}") from exc
    return V, report


def _morse_json(data, dims=None) -> dict:
    dims = sorted(data.boundary) if dims is None else dims
    return {
        "critical": {str(q): [list(s) for s in c] for q, c in data.critical.items()},
        "boundary": {str(q): io.matrix_to_json(data.boundary[q]) for q in dims if q in data.boundary},
        "coboundary": {
            str(q): io.matrix_to_json(data.coboundary[q]) for q in dims if q in data.coboundary
        },
    }


# -- commands ------------------------------------------------------------


def cmd_check(args) -> int:
    K = _load(args.complex, io.complex_from_json)
    V, report = _load_field(K, args.matching)
    if not report.ok:
        print("not a discrete vector field:")
        for v in report.violations:
            print(f"  {v}")
        return 1
    ok, witness = is_gradient(K, V)
    if not ok:
        print("not a gradient vector field; closed V-trajectory:")
        print(f"  {witness}")
        return 1
    print("gradient vector field")
    for q in range(K.dimension + 1):
        print(f"  critical {q}-cells: {len(critical_simplices(K, V, q))}")
    return 0


def cmd_morse(args) -> int:
    K = _load(args.complex, io.complex_from_json)
    V, report = _load_field(K, args.matching)
    if not report.ok:
        print("invalid discrete vector field", file=sys.stderr)
        return 1
    eng = TrajectoryEngine(K, V)
    dims = args.dim if args.dim else list(range(K.dimension + 2))
    out = {"critical": {}, "boundary": {}, "coboundary": {}, "transpose_ok": True}
    for q in range(K.dimension + 1):
        out["critical"][str(q)] = [list(s) for s in critical_simplices(K, V, q)]
    for q in dims:
        B = morse_boundary_matrix(K, eng, q)
        D = morse_coboundary_matrix(K, eng, q)
        out["boundary"][str(q)] = io.matrix_to_json(B)
        out["coboundary"][str(q)] = io.matrix_to_json(D)
        if D != B.transpose():
            out["transpose_ok"] = False
    _emit(out, args.out)
    return 0 if out["transpose_ok"] else 1


def _pair_arg(text):
    p = Path(text)
    obj = io.load_json(p) if p.exists() else json.loads(text)
    return io.pair_from_json(obj)


def _compare(fast, oracle) -> list:
    bad = []
    for kind in ("boundary", "coboundary"):
        fm, om = getattr(fast, kind), getattr(oracle, kind)
        for q in sorted(om):
            if fm.get(q) != om[q]:
                bad.append((kind, q))
    return bad


def cmd_cancel(args) -> int:
    K = _load(args.complex, io.complex_from_json)
    V, report = _load_field(K, args.matching)
    if not report.ok:
        print("invalid discrete vector field", file=sys.stderr)
        return 1
    if args.auto:
        W, pairs = auto_cancel(K, V)
    else:
        try:
            sigma0, tau0 = _pair_arg(args.pair)
        except (OSError, ValueError) as exc:
            raise InputError(f"--pair: {exc}") from exc
        pair = make_pair(K, V, sigma0, tau0)
        W = cancel_pair(K, V, pair)
        pairs = [pair]
    result = {
        "matching": io.matching_to_json(W),
        "cancelled": [
            {"sigma0": list(p.sigma0), "tau0": list(p.tau0), "weight": p.weight} for p in pairs
        ],
    }
    fast = oracle = None
    if args.mode in ("fast", "both"):
        fast = morse_complex(K, V)
        for p in pairs:
            fast = fast_update(fast, p.sigma0, p.tau0)
    if args.mode in ("oracle", "both"):
        oracle = morse_complex(K, W)
    shown = fast if fast is not None else oracle
    result.update(_morse_json(shown))
    status = 0
    if args.mode == "both":
        bad = _compare(fast, oracle)
        result["fast_equals_oracle"] = not bad
        if bad:
            status = 1
            print(f"fast update disagrees with re-enumeration at {bad}", file=sys.stderr)
    if not check_chain_law(shown.boundary, shown.coboundary).ok:
        print("chain law violated after cancellation", file=sys.stderr)
        status = 1
    _emit(result, args.out)
    return status


def cmd_fixture_update(args) -> int:
    M = _load(args.matrix, io.matrix_from_json)
    pivots = [tuple(p) for p in args.pivot or []]
    if args.pivots:
        pivots += _load(args.pivots, lambda o: [io.pair_from_json(p) for p in o])
    if not pivots:
        raise InputError("no pivots given")
    trace_lines = []
    for row0, col0 in pivots:
        if M.has_row(row0) and M.has_col(col0):
            M, trace = update_boundary_k(M, row0, col0)
        elif M.has_col(row0) and M.has_row(col0):
            # transposed (coboundary) layout (rows are the higher-dimensional cells)
            _, trace = update_boundary_k(M.transpose(), row0, col0)
            M = update_coboundary_k(M, col0, row0)
        else:
            print(f"pivot ({row0}, {col0}) not found in matrix labels", file=sys.stderr)
            return 1
        trace_lines += trace.lines()
    if args.trace:
        for line in trace_lines:
            print(line, file=sys.stderr)
    _emit(io.matrix_to_json(M), args.out)
    return 0


def cmd_homology(args) -> int:
    if args.matching_complex:
        K = matching_complex(args.matching_complex)
    elif args.complex:
        K = _load(args.complex, io.complex_from_json)
    else:
        raise InputError("give a complex file or --matching-complex N")
    simp = [simplicial_homology(K, q) for q in range(K.dimension + 1)]
    out = {"simplicial": [h.to_json(q) for q, h in enumerate(simp)]}
    status = 0
    if args.matching:
        V, report = _load_field(K, args.matching)
        if not report.ok:
            print("invalid discrete vector field", file=sys.stderr)
            return 1
        eng = TrajectoryEngine(K, V)
        bd = {q: morse_boundary_matrix(K, eng, q) for q in range(K.dimension + 2)}
        morse = homology_from_boundaries(bd, K.dimension)
        out["morse"] = [h.to_json(q) for q, h in enumerate(morse)]
        if morse != simp:
            status = 1
            print("Morse homology differs from simplicial homology", file=sys.stderr)
    _emit(out, args.out)
    return status


def bench_instance(inst, timing=True) -> list[dict]:
    """One CSV row per cancellable pair of the instance."""
    K, V = inst.complex, inst.field
    eng = TrajectoryEngine(K, V)
    data = morse_complex(K, eng)
    rows = []
    clock = time.perf_counter_ns if timing else (lambda: 0)
    for k in range(1, K.dimension + 1):
        crit_k, crit_km1 = data.critical[k], data.critical[k - 1]
        traj = sum(eng.aggregate(s, t).path_count for s in crit_k for t in crit_km1)
        for p in find_cancellable_pairs(K, eng, k):
            t0 = clock()
            fast = fast_update(data, p.sigma0, p.tau0)
            t1 = clock()
            W = cancel_pair(K, eng, p)
            weng = TrajectoryEngine(K, W, check=False)
            oracle_b = {q: morse_boundary_matrix(K, weng, q) for q in (k - 1, k, k + 1)}
            oracle_c = {q: morse_coboundary_matrix(K, weng, q) for q in (k - 1, k, k + 1)}
            t2 = clock()
            equal = all(fast.boundary[q] == oracle_b[q] for q in oracle_b) and all(
                fast.coboundary[q] == oracle_c[q] for q in oracle_c
            )
            if not equal:
                raise MorseError(
                    f"instance {inst.instance_id}: fast update differs from re-enumeration "
                    f"for pair ({list(p.sigma0)}, {list(p.tau0)})"
                )
            rows.append({
                "instance_id": inst.instance_id,
                "dim_k": k,
                "n_crit_k": len(crit_k),
                "n_crit_km1": len(crit_km1),
                "traj_count": traj,
                "fast_ns": t1 - t0,
                "oracle_ns": t2 - t1,
                "equal": int(equal),
            })
    return rows


def _bench_job(job):
    inst, timing = job
    return bench_instance(inst, timing)


def cmd_bench(args) -> int:
    corpus = generate_corpus(args.seed, args.instances, args.max_dim, args.max_vertices)
    jobs = [(inst, not args.no_timing) for inst in corpus]
    if args.workers > 1 and jobs:
        with ProcessPoolExecutor(args.workers) as pool:
            results = list(pool.map(_bench_job, jobs))
    else:
        results = [_bench_job(j) for j in jobs]
    buf = _io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_FIELDS, lineterminator="\n")
    writer.writeheader()
    for rows in results:
        writer.writerows(rows)
    if args.out:
        Path(args.out).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return 0


def cmd_gen(args) -> int:
    if args.matching_complex:
        _emit(io.complex_to_json(matching_complex(args.matching_complex)), args.out)
        return 0
    corpus = generate_corpus(args.seed, args.instances, args.max_dim, args.max_vertices)
    outdir = Path(args.out or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    for inst in corpus:
        stem = outdir / f"instance_{inst.instance_id:04d}"
        io.dump_json(io.complex_to_json(inst.complex), f"{stem}_complex.json")
        io.dump_json(io.matching_to_json(inst.field), f"{stem}_matching.json")
    print(f"wrote {len(corpus)} instances to {outdir}")
    return 0


# -- argument parsing ----------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="morsecancel", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a matching and test acyclicity")
    p.add_argument("complex")
    p.add_argument("matching")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("morse", help="Morse boundary and coboundary matrices")
    p.add_argument("complex")
    p.add_argument("matching")
    p.add_argument("--dim", type=int, action="append", help="dimension q (repeatable)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_morse)

    p = sub.add_parser("cancel", help="cancel a critical pair and update the matrices")
    p.add_argument("complex")
    p.add_argument("matching")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--pair", help='pair JSON file or literal {"sigma0": [...], "tau0": [...]}')
    g.add_argument("--auto", action="store_true", help="greedily cancel until no pair is left")
    m = p.add_mutually_exclusive_group()
    m.add_argument("--fast", dest="mode", action="store_const", const="fast")
    m.add_argument("--oracle", dest="mode", action="store_const", const="oracle")
    m.add_argument("--both", dest="mode", action="store_const", const="both")
    p.set_defaults(mode="fast")
    p.add_argument("--out")
    p.set_defaults(func=cmd_cancel)

    p = sub.add_parser("fixture-update", help="apply the closed-form update to a labelled matrix")
    p.add_argument("matrix")
    p.add_argument("--pivot", nargs=2, action="append", metavar=("ROW0", "COL0"),
                   help="(k-1)-cell label and k-cell label of the cancelled pair")
    p.add_argument("--pivots", help="JSON list of {row0, col0} pivots")
    p.add_argument("--trace", action="store_true", help="print the row operations to stderr")
    p.add_argument("--out")
    p.set_defaults(func=cmd_fixture_update)

    p = sub.add_parser("homology", help="simplicial (and Morse) integer homology")
    p.add_argument("complex", nargs="?")
    p.add_argument("matching", nargs="?")
    p.add_argument("--matching-complex", type=int, metavar="N")
    p.add_argument("--out")
    p.set_defaults(func=cmd_homology)

    for name, helptext, func in (
        ("bench", "time fast updates against re-enumeration", cmd_bench),
        ("gen", "write a seeded random corpus", cmd_gen),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--instances", type=int, default=20)
        p.add_argument("--max-dim", type=int, default=3)
        p.add_argument("--max-vertices", type=int, default=12)
        p.add_argument("--out")
        p.set_defaults(func=func)
        if name == "bench":
            p.add_argument("--workers", type=int, default=1)
            p.add_argument("--no-timing", action="store_true",
                           help="write 0 for timings so the CSV is byte-reproducible")
        else:
            p.add_argument("--matching-complex", type=int, metavar="N")
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MorseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
