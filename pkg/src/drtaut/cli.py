"""Command-line interface to the graph-sum calculus.

One verb per library entry point: ``graphs`` enumerates stable graphs,
``pixton`` and ``dr`` compute the weighting graph sums, ``lambda`` the
Hodge class expressions, ``chiodo`` the r-th root pushforward, and
``integrate`` pairs a serialized class against a psi monomial.  The
``verify`` verb groups the consistency checks; each prints both routes'
values when they disagree and exits 1.

Exit codes: 0 success, 1 verification failure, 2 usage error (malformed
vectors, unstable types, inadmissible congruences).  ``--json`` switches
every verb to schema-versioned, byte-stable JSON on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .chiodo import chiodo_constant, chiodo_pushforward, verify_samefreeterm
from .exact import rat_to_str
from .graphs import (
    StableGraph,
    automorphism_order,
    enumerate_stable_graphs,
    first_betti,
    graph_to_json,
)
from .intersect import (
    complementary_psi_monomials,
    dr_ab_integral,
    hodge_triple,
    pair_with_psi,
    psi_sum_lambda,
    socle_integral,
    vanishing_probe,
)
from .pixton import dr_cycle, lambda_expression, pixton_class, pixton_fixed_r
from .tautclass import TautClass
from .weightings import SWEEP, DRVector

__all__ = ["main"]

SCHEMA_GRAPHLIST = "graphlist/1"
SCHEMA_VERIFY = "verify/1"
SCHEMA_INTEGRAL = "integral/1"


def parse_vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got {text!r}"
        )


def emit_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def emit_class(args: argparse.Namespace, cls: TautClass) -> None:
    if getattr(args, "json", False):
        emit_json(cls.to_json())
    else:
        print(cls.text())


def emit_verify(args: argparse.Namespace, ok: bool, value: str, detail: str = "") -> int:
    """Print a verification outcome and return the exit code."""
    if getattr(args, "json", False):
        payload = {"version": SCHEMA_VERIFY, "ok": ok, "value": value}
        if detail:
            payload["detail"] = detail
        emit_json(payload)
    else:
        print(f"OK {value}" if ok else f"FAIL {value}")
        if detail:
            print(detail)
    return 0 if ok else 1


def require_stable(g: int, n: int) -> None:
    if g < 0 or n < 0 or 2 * g - 2 + n <= 0:
        raise ValueError(f"no stable curves of type ({g}, {n})")


# -- verb implementations ---------------------------------------------


def cmd_graphs(args) -> int:
    require_stable(args.g, args.n)
    graphs = enumerate_stable_graphs(args.g, args.n, max_edges=args.max_edges)
    if getattr(args, "json", False):
        emit_json(
            {
                "version": SCHEMA_GRAPHLIST,
                "ambient": {"g": args.g, "n": args.n},
                "count": len(graphs),
                "graphs": [
                    {
                        "graph": graph_to_json(G),
                        "betti": first_betti(G),
                        "aut": automorphism_order(G),
                    }
                    for G in graphs
                ],
            }
        )
    else:
        for G in graphs:
            print(
                f"genera={G.genera} edges={G.edges} legs={G.legs} "
                f"betti={first_betti(G)} aut={automorphism_order(G)}"
            )
        print(f"total: {len(graphs)}")
    return 0


def cmd_pixton(args) -> int:
    dr = DRVector(args.g, args.a, args.k)
    if args.r is not None:
        cls = pixton_fixed_r(dr, args.d, args.r)
    else:
        cls = pixton_class(dr, args.d)
    emit_class(args, cls)
    return 0


def cmd_dr(args) -> int:
    emit_class(args, dr_cycle(DRVector(args.g, args.a)))
    return 0


def cmd_lambda(args) -> int:
    emit_class(args, lambda_expression(args.g, args.n))
    return 0


def cmd_chiodo(args) -> int:
    dr = DRVector(args.g, args.a, args.k)
    if args.constant:
        cls = chiodo_constant(dr, args.d)
    else:
        cls = chiodo_pushforward(dr, args.d, args.r)
    emit_class(args, cls)
    return 0


def cmd_integrate(args) -> int:
    with open(args.class_file, "r", encoding="utf-8") as fh:
        cls = TautClass.from_json(json.load(fh))
    exponents = list(args.psi) if args.psi is not None else [0] * cls.n
    value = pair_with_psi(cls, exponents)
    if getattr(args, "json", False):
        emit_json({"version": SCHEMA_INTEGRAL, "value": rat_to_str(value)})
    else:
        print(rat_to_str(value))
    return 0


def cmd_verify_samefreeterm(args) -> int:
    dr = DRVector(args.g, args.a, args.k)
    ok, report = verify_samefreeterm(dr, args.d)
    return emit_verify(args, ok, "constant terms agree" if ok else "", report)


def cmd_verify_vanishing(args) -> int:
    dr = DRVector(args.g, args.a)
    g, n = dr.genus, dr.n
    if args.d <= g:
        raise ValueError(f"vanishing holds for degree > genus; got d={args.d}, g={g}")
    complement = 3 * g - 3 + n - args.d
    sets = complementary_psi_monomials(g, n, complement)
    values = vanishing_probe(dr, args.d, sets)
    bad = [
        f"  psi^{list(e)} -> {rat_to_str(v)}"
        for e, v in zip(sets, values)
        if v != 0
    ]
    ok = not bad
    return emit_verify(
        args,
        ok,
        f"0 on {len(sets)} pairings" if ok else f"{len(bad)} nonzero pairings",
        "" if ok else "\n".join(bad),
    )


def cmd_verify_hodge_triple(args) -> int:
    try:
        value = hodge_triple(args.g)
    except ArithmeticError as exc:
        return emit_verify(args, False, "route disagreement", str(exc))
    return emit_verify(args, True, rat_to_str(value))


def cmd_verify_dr_ab(args) -> int:
    try:
        value = dr_ab_integral(args.g, args.a)
    except ArithmeticError as exc:
        return emit_verify(args, False, "route disagreement", str(exc))
    return emit_verify(args, True, rat_to_str(value))


def cmd_verify_socle(args) -> int:
    g = args.g
    lines = [
        f"  socle({g},{p},{g - p}) = {rat_to_str(socle_integral(g, p, g - p))}"
        for p in range(g + 1)
    ]
    try:
        value = psi_sum_lambda(g)
    except ArithmeticError as exc:
        return emit_verify(args, False, "route disagreement", str(exc))
    return emit_verify(args, True, rat_to_str(value), "\n".join(lines))


def cmd_verify_polynomiality(args) -> int:
    dr = DRVector(args.g, args.a, args.k)
    mark = SWEEP.total
    try:
        pixton_class(dr, args.d)
    except ValueError as exc:
        return emit_verify(args, False, "fit rejected", str(exc))
    entries = SWEEP.entries[mark:]
    bad = [e for e in entries if not (e["divisible"] and e["verified"])]
    ok = not bad
    detail = "" if ok else "\n".join(
        f"  {e['label']}: divisible={e['divisible']} verified={e['verified']}"
        for e in bad
    )
    return emit_verify(
        args,
        ok,
        f"{len(entries)} fits divisible and verified" if ok else f"{len(bad)} bad fits",
        detail,
    )


# -- parser -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--json",
        action="store_true",
        default=argparse.SUPPRESS,
        help="emit schema-versioned JSON on stdout",
    )
    common.add_argument(
        "--threads",
        type=int,
        default=argparse.SUPPRESS,
        help="upper bound on worker parallelism (results are independent of it)",
    )
    common.add_argument(
        "--seed",
        type=int,
        default=argparse.SUPPRESS,
        help="seed for randomized test selection (no effect on exact results)",
    )

    parser = argparse.ArgumentParser(
        prog="drtaut",
        description="Exact graph-sum calculus for ramification cycles.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("graphs", parents=[common], help="enumerate stable graphs")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-edges", type=int, default=None)
    p.set_defaults(func=cmd_graphs)

    p = sub.add_parser("pixton", parents=[common], help="weighting graph-sum class")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--a", type=parse_vector, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, default=None, help="fixed modulus (default: r-free constant term)")
    p.set_defaults(func=cmd_pixton)

    p = sub.add_parser("dr", parents=[common], help="double ramification cycle")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--a", type=parse_vector, required=True)
    p.set_defaults(func=cmd_dr)

    p = sub.add_parser("lambda", parents=[common], help="Hodge class expression")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, default=0)
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("chiodo", parents=[common], help="r-th root pushforward class")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--a", type=parse_vector, required=True)
    p.add_argument("--d", type=int, required=True)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--r", type=int, default=None, help="evaluate at this modulus")
    mode.add_argument(
        "--constant", action="store_true", help="r-constant term after scaling"
    )
    p.set_defaults(func=cmd_chiodo)

    p = sub.add_parser("integrate", parents=[common], help="pair a class with psi powers")
    p.add_argument("--class", dest="class_file", required=True, metavar="FILE")
    p.add_argument("--psi", type=parse_vector, default=None, help="exponents b_1,...,b_n")
    p.set_defaults(func=cmd_integrate)

    v = sub.add_parser("verify", parents=[common], help="consistency checks")
    vsub = v.add_subparsers(dest="check", required=True)

    p = vsub.add_parser("samefreeterm", parents=[common], help="two constant-term routes agree")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--a", type=parse_vector, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_verify_samefreeterm)

    p = vsub.add_parser("vanishing", parents=[common], help="above-genus pairings vanish")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--a", type=parse_vector, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_verify_vanishing)

    p = vsub.add_parser("hodge-triple", parents=[common], help="two-route triple Hodge integral")
    p.add_argument("--g", type=int, required=True)
    p.set_defaults(func=cmd_verify_hodge_triple)

    p = vsub.add_parser("dr-ab", parents=[common], help="two-route two-point cycle pairing")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--a", type=int, required=True, help="ramification order")
    p.set_defaults(func=cmd_verify_dr_ab)

    p = vsub.add_parser("socle", parents=[common], help="socle values against the psi-sum identity")
    p.add_argument("--g", type=int, required=True)
    p.set_defaults(func=cmd_verify_socle)

    p = vsub.add_parser(
        "polynomiality", parents=[common], help="certified fits divisible by r^betti"
    )
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--a", type=parse_vector, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_verify_polynomiality)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
