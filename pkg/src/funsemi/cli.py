"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 obstruction certificate,
3 inconclusive, 4 resource bound exceeded.
"""

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional

from .bitsets import braces, mask_of
from .cayley import format_table
from .convolution import (
    RationalMeasure, classify_idempotent_measure, classify_regular_measure, convolve, measure_inverse,
    parse_measure, serialize_measure, support, support_iso_check,
)
from .corpus import GROUPS_UP_TO_6, groups
from .embedding import EMBEDDED, OBSTRUCTED, decide
from .errors import AlgebraError, ParseError, ResourceLimitError
from .formats import load_group, load_semigroup
from .functor import inclusion_hyperspace_semigroup, superextension_semigroup
from .groups import DEFAULT_MAX_GROUP_ORDER
from .hyper import (
    DEFAULT_MAX_EXP_ORDER, classify_regular_subset, exp_semigroup, idempotents_exp, product_mask,
    regular_elements_exp,
)
from .semigroups import (
    IdempotentSemilattice, idempotents, idempotents_commute, is_clifford, is_inverse_semigroup, is_regular,
    regular_elements,
)
from .verify import VerifyConfig, run_claims

EXIT_OK, EXIT_USAGE, EXIT_OBSTRUCTION, EXIT_INCONCLUSIVE, EXIT_RESOURCE = 0, 1, 2, 3, 4


def _emit(args, payload, text_lines: List[str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print("\n".join(text_lines))


def _yes(b: bool) -> str:
    return "yes" if b else "no"


def _subset_arg(text: str, n: int) -> int:
    body = text.strip().strip("{}")
    try:
        idx = [int(v) for v in body.replace(" ", "").split(",") if v != ""]
    except ValueError:
        raise ParseError(f"cannot read subset {text!r}; use e.g. 0,2 or {{0,2}}") from None
    if not idx or any(not 0 <= i < n for i in idx):
        raise ParseError(f"subset {text!r} must be nonempty within [0,{n})")
    return mask_of(idx)


def _measure_arg(text: str, n: int) -> RationalMeasure:
    if os.path.exists(text):
        with open(text) as fh:
            return parse_measure(fh.read(), n)
    try:
        w = [Fraction(v) for v in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{text!r} is neither a measure file nor comma-separated weights") from None
    if len(w) != n:
        raise ParseError(f"expected {n} weights, got {len(w)}")
    if sum(w) != 1 or any(x < 0 for x in w):
        raise ParseError(f"weights {text!r} are not a probability vector")
    return RationalMeasure(tuple(w))


# subcommands -------------------------------------------------------------------

def cmd_analyze(args) -> int:
    S = load_semigroup(args.path)
    E = idempotents(S)
    inverse = is_inverse_semigroup(S)
    group = len(E) == 1 and inverse and is_clifford(S) and len(regular_elements(S)) == S.order \
        and all(S.mul(E[0], x) == x == S.mul(x, E[0]) for x in range(S.order))
    lattice = IdempotentSemilattice(S, tuple(E))
    report = {
        "name": str(S),
        "order": S.order,
        "group": group,
        "idempotents": E,
        "regular": is_regular(S),
        "inverse": inverse,
        "clifford": is_clifford(S),
        "idempotents_commute": idempotents_commute(S),
        "hasse_edges": [list(p) for p in lattice.hasse_edges()],
    }
    lines = [
        f"semigroup: {report['name']}",
        f"order: {S.order}",
        f"group: {_yes(group)}",
        f"idempotents: {E}",
        f"regular: {_yes(report['regular'])}",
        f"inverse: {_yes(inverse)}",
        f"Clifford: {_yes(report['clifford'])}",
        f"E commutative: {_yes(report['idempotents_commute'])}",
        "semilattice Hasse edges: " + (", ".join(f"{a}<{b}" for a, b in lattice.hasse_edges()) or "none"),
    ]
    _emit(args, report, lines)
    return EXIT_OK


def cmd_exp(args) -> int:
    G = load_group(args.group)
    n = G.order
    if args.product:
        A, B = (_subset_arg(s, n) for s in args.product)
        C = product_mask(G, A, B)
        _emit(args, {"product": [A, B, C]}, [f"{braces(A)}*{braces(B)} = {braces(C)}"])
    elif args.classify:
        A = _subset_arg(args.classify, n)
        w = classify_regular_subset(G, A)
        payload = {"subset": A, "regular": w is not None,
                   "subgroup": None if w is None else w.subgroup, "shift": None if w is None else w.shift}
        _emit(args, payload, [f"{braces(A)}: " + ("not regular" if w is None else f"regular, = {w}")])
    elif args.idempotents:
        idem = idempotents_exp(G, args.max_group_order)
        _emit(args, {"idempotents": [A.bits for A in idem]},
              [f"{len(idem)} idempotents (subgroups):"] + [str(A) for A in idem])
    elif args.table:
        T = exp_semigroup(G, args.max_exp_order)
        table = [[T.mul(i, j) for j in range(T.order)] for i in range(T.order)]
        _emit(args, {"order": T.order, "table": table}, [format_table(table, str(T)).rstrip()])
    else:
        reg = regular_elements_exp(G, args.max_group_order)
        payload = {"regular": [{"subset": A.bits, "subgroup": w.subgroup, "shift": w.shift} for A, w in reg]}
        _emit(args, payload, [f"{len(reg)} regular elements (cosets Hx):"] + [f"{A} = {w}" for A, w in reg])
    return EXIT_OK


def cmd_conv(args) -> int:
    G = load_group(args.group)
    n = G.order
    if args.action == "mul":
        if len(args.measures) != 2:
            raise ParseError("conv mul needs two measures")
        mu, nu = (_measure_arg(m, n) for m in args.measures)
        r = convolve(G, mu, nu)
        payload = {"product": {str(i): f"{w.numerator}/{w.denominator}" for i, w in enumerate(r.weights) if w}}
        _emit(args, payload, [serialize_measure(r).rstrip()])
    elif args.action == "classify":
        if len(args.measures) != 1:
            raise ParseError("conv classify needs one measure")
        mu = _measure_arg(args.measures[0], n)
        haar = classify_idempotent_measure(G, mu)
        reg = classify_regular_measure(G, mu)
        payload = {
            "support": support(mu),
            "idempotent": haar is not None,
            "haar_of": None if haar is None else haar.members,
            "regular": reg is not None,
            "subgroup": None if reg is None else reg.subgroup,
            "shift": None if reg is None else reg.shift,
        }
        lines = [f"support: {braces(support(mu))}",
                 "idempotent: " + ("no" if haar is None else f"Haar({braces(haar.members)})"),
                 "regular: " + ("no" if reg is None else str(reg))]
        if reg is not None:
            inv = measure_inverse(G, mu)
            payload["inverse"] = {str(i): f"{w.numerator}/{w.denominator}" for i, w in enumerate(inv.weights) if w}
            lines.append("inverse: " + serialize_measure(inv).strip().replace("\n", ", "))
        _emit(args, payload, lines)
    else:
        rep = support_iso_check(G, args.max_exp_order)
        lines = [
            f"group: {rep.group}",
            f"regular measures: {rep.measure_side}",
            f"regular subsets: {rep.subset_side}",
            f"sum of indices: {rep.coset_sum}",
            f"support map bijective: {_yes(rep.bijective)}",
            f"homomorphism on {rep.pairs_checked} pairs: {_yes(not rep.homomorphism_failures)}",
            f"result: {'PASS' if rep.passed else 'FAIL'}",
        ]
        _emit(args, rep.as_dict(), lines)
        return EXIT_OK if rep.passed else EXIT_OBSTRUCTION
    return EXIT_OK


def cmd_superext(args) -> int:
    S = load_semigroup(args.path)
    build = superextension_semigroup if args.functor == "lambda" else inclusion_hyperspace_semigroup
    F = build(S)
    T = F.semigroup
    report = {
        "order": T.order,
        "elements": [str(x) for x in F.elements],
        "unit_image": list(F.unit_image),
        "idempotents": idempotents(T),
        "inverse": is_inverse_semigroup(T),
        "clifford": is_clifford(T),
    }
    if args.json:
        print(json.dumps({"table": [list(r) for r in T.table], "report": report}, sort_keys=True, indent=2))
    else:
        sys.stdout.write(format_table(T.table, str(T)))
        for line in json.dumps(report, sort_keys=True, indent=2).splitlines():
            print("# " + line)
    return EXIT_OK


def cmd_embed(args) -> int:
    S = load_semigroup(args.path)
    d = decide(S, args.target, args.max_product_order, groups(GROUPS_UP_TO_6[:5]))
    payload = {"semigroup": str(S), "report": d.report.as_dict(), "brute_force": d.brute_force}
    lines = [f"semigroup: {S} (order {S.order})"]
    if d.code == EMBEDDED:
        emb = d.embedding
        G = emb.target.group
        payload["target_group"] = {"name": str(G), "order": G.order}
        payload["verified"] = emb.verification.ok
        lines.append(f"embedded into {emb.map.target}, target group order {G.order}; verified: {_yes(emb.verification.ok)}")
        if args.target == "exp":
            payload["images"] = [{"coordinates": list(c), "bits": A.bits}
                                 for c, A in zip(emb.target.coordinates, emb.map.images)]
            for x, c in enumerate(emb.target.coordinates):
                lines.append(f"  {x} -> " + " x ".join(braces(m) for m in c))
        else:
            payload["images"] = [{str(i): f"{w.numerator}/{w.denominator}" for i, w in enumerate(mu.weights) if w}
                                 for mu in emb.map.images]
            for x, mu in enumerate(emb.map.images):
                lines.append(f"  {x} -> uniform on {braces(support(mu))}")
    else:
        label = "obstruction certificate" if d.code == OBSTRUCTED else "inconclusive"
        lines.append(f"result: {label}")
        if not d.report.regular:
            lines.append(f"  not regular: element {d.report.nonregular_witness}")
        for v in d.report.verdicts:
            w = f" witness={v.witness}" if v.witness else ""
            lines.append(f"  condition ({v.condition}): {v.status} {v.detail}{w}")
        for r in d.brute_force:
            lines.append(f"  brute force into exp({r['group']}): {'none' if r['result'] is None else r['result']}")
    payload["exit_code"] = d.code
    _emit(args, payload, lines)
    return d.code


def cmd_verify_paper(args) -> int:
    cfg = VerifyConfig(seed=args.seed, quick=args.quick, idempotent_denominator=args.grid_denominator)
    results = run_claims(cfg, args.only)
    if args.json:
        print(json.dumps({"claims": [r.as_dict() for r in results], "all_passed": all(r.ok for r in results)},
                         sort_keys=True, indent=2, default=str))
    else:
        for r in results:
            print(r.line())
            if not r.ok:
                print("      " + json.dumps(r.detail, sort_keys=True, default=str)[:2000])
        print(f"{sum(r.ok for r in results)}/{len(results)} claims passed")
    return EXIT_OK if all(r.ok for r in results) else EXIT_OBSTRUCTION


# parser ----------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; 2 is reserved for certificates here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    def d(v):
        return argparse.SUPPRESS if suppress else v

    p.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    p.add_argument("--seed", type=int, default=d(0), help="seed for randomized checks")
    p.add_argument("--max-group-order", type=int, default=d(DEFAULT_MAX_GROUP_ORDER))
    p.add_argument("--max-exp-order", type=int, default=d(DEFAULT_MAX_EXP_ORDER))
    p.add_argument("--max-product-order", type=int, default=d(1024), help="bound on the embedding target group")
    p.add_argument("--grid-denominator", type=int, default=d(6), help="measure grid bound for verify-paper")
    p.add_argument("--quick", action="store_true", default=d(False), help="reduced verify-paper run")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="funsemi", description=__doc__.splitlines()[0])
    _globals(parser, suppress=False)
    common = _Parser(add_help=False)
    _globals(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", parents=[common], help="structural report for a semigroup")
    p.add_argument("path")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("exp", parents=[common], help="the power semigroup exp(G)")
    p.add_argument("group", help="Cayley-table file or group name such as C4")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--regular", action="store_true", help="list regular elements (default)")
    g.add_argument("--idempotents", action="store_true")
    g.add_argument("--product", nargs=2, metavar=("A", "B"))
    g.add_argument("--classify", metavar="A")
    g.add_argument("--table", action="store_true", help="full Cayley table")
    p.set_defaults(func=cmd_exp)

    p = sub.add_parser("conv", parents=[common], help="the convolution semigroup P(G)")
    p.add_argument("action", choices=["mul", "classify", "support-iso"])
    p.add_argument("group")
    p.add_argument("measures", nargs="*", help="measure files or comma-separated weights")
    p.set_defaults(func=cmd_conv)

    p = sub.add_parser("superext", parents=[common], help="lambda(S) or G(S) Cayley table")
    p.add_argument("path")
    p.add_argument("--functor", choices=["lambda", "G"], default="lambda")
    p.set_defaults(func=cmd_superext)

    p = sub.add_parser("embed", parents=[common], help="embed into exp(G)/P(G) or certify impossibility")
    p.add_argument("path")
    p.add_argument("--target", choices=["exp", "conv"], default="exp")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("verify-paper", parents=[common], help="run the claim suite")
    p.add_argument("--only", type=int, nargs="*", help="claim numbers to run")
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ParseError, AlgebraError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
