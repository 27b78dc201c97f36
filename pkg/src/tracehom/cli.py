"""Command-line interface.

Exit codes: 0 success, 1 verify mismatch, 2 parse error, 3 validation
failure, 4 cap exceeded, 5 cyclic system refused by the oracle.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import action, cenet
from .action import InputError, ValidationError
from .complex import build_complex, euler_characteristic, groups_from_smith, smith_decompositions
from .oracle import CyclicSystem, OracleCapExceeded, nerve_homology, same_homology
from .report import AnalysisReport, dump_matrices, read_matrix
from .smith import smith_normal_form

EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_CAP = 4
EXIT_CYCLIC = 5


def infer_kind(doc) -> str:
    if isinstance(doc, dict):
        if "places" in doc:
            return "net"
        if "states" in doc:
            return "action"
    raise InputError("cannot infer input kind: expected 'places' (net) or 'states' (action)")


def load_system(path, kind=None, all_states=False):
    """Parse ``path`` and return ``(kind, system, scope)`` with the system validated."""
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    kind = kind or infer_kind(doc)
    if kind == "net":
        net = cenet.from_dict(doc)
        sys_ = cenet.compile_net(net, all_states=all_states)
        return kind, sys_, list(range(sys_.n_states))
    sys_ = action.from_dict(doc)
    action.ensure_valid(sys_)
    if sys_.initial is not None and not all_states:
        scope = sorted(action.reachable_states(sys_, sys_.initial))
    else:
        scope = list(range(sys_.n_states))
    return kind, sys_, scope


def analyze(path, kind=None, max_dim=None, all_states=False, dump_dir=None) -> AnalysisReport:
    start = time.perf_counter()
    kind, sys_, scope = load_system(path, kind, all_states)
    cx = build_complex(sys_, scope, None if max_dim is None else max_dim + 1)
    snf = smith_decompositions(cx)
    groups = groups_from_smith(cx.sizes(), snf)
    sizes = cx.sizes()
    ranks = [d.rank for d in snf]
    if max_dim is not None and len(sizes) > max_dim + 1:
        groups, sizes, ranks = groups[:max_dim + 1], sizes[:max_dim + 1], ranks[:max_dim + 2]
    if dump_dir is not None:
        dump_matrices(cx, dump_dir)
    chi = euler_characteristic(cx) if max_dim is None else sum((-1) ** n * s for n, s in enumerate(sizes))
    reachable = not all_states and (kind == "net" or sys_.initial is not None)
    report = AnalysisReport(
        kind=kind,
        scope="reachable" if reachable else "all",
        scope_size=len(scope),
        basis_sizes=sizes,
        ranks=ranks,
        homology=groups,
        euler_characteristic=chi,
        timing_seconds=round(time.perf_counter() - start, 6),
    )
    report.check()
    return report


def _cmd_analyze(args) -> int:
    report = analyze(args.file, args.kind, args.max_dim, args.all_states, args.dump_matrices)
    print(report.to_json() if args.json else report.render())
    return 0


def _cmd_verify(args) -> int:
    kind, sys_, scope = load_system(args.file, args.kind, args.all_states)
    cx = build_complex(sys_, scope)
    main = groups_from_smith(cx.sizes(), smith_decompositions(cx))
    nerve = nerve_homology(sys_, scope)
    ok = same_homology(main, nerve)
    n = max(len(main), len(nerve))
    rows = []
    for i in range(n):
        a = str(main[i]) if i < len(main) else "0"
        b = str(nerve[i]) if i < len(nerve) else "0"
        rows.append({"degree": i, "complex": a, "nerve": b, "match": a == b})
    if args.json:
        print(json.dumps({"match": ok, "degrees": rows}, indent=2, ensure_ascii=False))
    else:
        for r in rows:
            print(f"H_{r['degree']}: complex {r['complex']:<12} nerve {r['nerve']:<12} "
                  f"{'MATCH' if r['match'] else 'MISMATCH'}")
        print("MATCH" if ok else "MISMATCH")
    return 0 if ok else EXIT_MISMATCH


def _cmd_snf(args) -> int:
    try:
        m = read_matrix(args.file)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(str(exc)) from None
    d = smith_normal_form(m)
    if args.json:
        print(json.dumps({"rank": d.rank, "divisors": list(d.divisors)}))
    else:
        print(f"rank: {d.rank}")
        print("divisors: " + (" ".join(map(str, d.divisors)) if d.divisors else "(none)"))
    return 0


def _cmd_reach(args) -> int:
    kind, sys_, scope = load_system(args.file, args.kind, args.all_states)
    if args.source is not None:
        scope = sorted(action.reachable_states(sys_, sys_.state_index(args.source)))
    names = [sys_.states[i] for i in scope]
    if args.json:
        print(json.dumps({"kind": kind, "count": len(names), "states": names}))
    else:
        print(f"{len(names)} states")
        for name in names:
            print(name)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tracehom", description="Homology of partial trace monoid actions and CE nets.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", help="net or action JSON file")
        p.add_argument("--kind", choices=["net", "action"], help="input kind (inferred from fields by default)")
        p.add_argument("--all-states", action="store_true", help="skip the restriction to reachable states")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("analyze", help="compute homology groups")
    common(p)
    p.add_argument("--max-dim", type=int, default=None, metavar="N", help="report degrees 0..N only")
    p.add_argument("--dump-matrices", metavar="DIR", help="write the differentials to DIR")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("verify", help="compare against the brute-force nerve oracle")
    common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("snf", help="Smith normal form of a triplet matrix file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_snf)

    p = sub.add_parser("reach", help="list reachable states")
    common(p)
    p.add_argument("--from", dest="source", metavar="STATE", help="start state (action files)")
    p.set_defaults(func=_cmd_reach)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "max_dim", None) is not None and args.max_dim < 0:
        print("error: --max-dim must be non-negative", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (cenet.CapExceeded, OracleCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except CyclicSystem as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CYCLIC
    except (InputError, KeyError, IndexError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
