"""Command-line front end.

Every subcommand reads JSON documents (see :mod:`irum.io`), prints a text or
JSON report and exits 0 whenever a verdict was computed, whether positive or
negative.  Malformed input exits 2, size guards exit 3.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from irum import io
from irum.bm import MAX_RUM_N, bm_table, is_rum, rum_representation
from irum.bounds import (
    MAX_BOUNDS_N,
    satisfies_correlation_bounds,
    satisfies_weak_correlation_bounds,
)
from irum.core import MAX_ALTERNATIVES, MAX_ENUMERATED_N, AlternativeSet, RandomChoiceModel, StochasticChoiceFunction
from irum.demand import MAX_IRRATIONAL, MIN_IRRATIONAL, TwoBudgetData, extremal_table, irrational_share_bounds
from irum.errors import IrumError, SizeLimitError
from irum.falsify import IrrationalFamily, alpha_bar
from irum.represent import (
    dual_decomposition,
    dual_irum_construction,
    is_irum,
    is_pirum,
    pirum_representation,
    rum_decompose_irum_dual,
)

EXIT_INPUT = 2
EXIT_SIZE = 3

# size guard of the module behind each subcommand
GUARDS = {
    "check-rum": MAX_ALTERNATIVES,
    "bm-table": MAX_ALTERNATIVES,
    "bounds": MAX_BOUNDS_N,
    "irum": MAX_BOUNDS_N,
    "irum-witness": MAX_ENUMERATED_N,
    "pirum": MAX_ALTERNATIVES,
    "pirum-witness": MAX_RUM_N,
    "decompose": MAX_BOUNDS_N,
    "dual-construct": MAX_BOUNDS_N,
    "dual-decompose": MAX_BOUNDS_N,
    "alpha-bar": MAX_ENUMERATED_N,
}


class Report:
    """Collects text lines and a JSON document side by side."""

    def __init__(self, decimal: bool):
        self.decimal = decimal
        self.lines: list[str] = []
        self.doc: dict = {}

    def q(self, value: Fraction) -> str:
        text = io.format_rational(value)
        if self.decimal and Fraction(value).denominator != 1:
            text += f" (~{float(value):.6g})"
        return text

    def line(self, text: str = "") -> None:
        self.lines.append(text)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise IrumError(f"cannot read {path}: {exc.strerror}") from exc


def _guard(args, n: int) -> None:
    limit = GUARDS[args.command]
    if args.max_n is not None:
        if args.max_n > limit:
            raise SizeLimitError(f"--max-n {args.max_n} exceeds the limit of {limit} for {args.command}")
        limit = args.max_n
    if n > limit:
        raise SizeLimitError(f"{args.command} handles at most {limit} alternatives, got {n}")


def _dataset(args) -> StochasticChoiceFunction:
    rho = io.parse_dataset(_read(args.dataset))
    _guard(args, rho.n)
    return rho


def _distribution(args, path: str):
    alt_set, dist = io.parse_distribution(_read(path))
    _guard(args, alt_set.n)
    return alt_set, dist


def _rcm_lines(rep: Report, model: RandomChoiceModel) -> None:
    for entry in io.rcm_document(model)["support"]:
        tag = "irrational" if entry["irrational"] else "rational"
        table = ", ".join(f"{k}->{v}" for k, v in entry["choice"].items())
        rep.line(f"  {rep.q(Fraction(entry['weight']))}  [{tag}]  {table}")


def cmd_check_rum(args, rep: Report) -> None:
    rho = _dataset(args)
    verdict = is_rum(rho)
    labels = rho.alt_set.labels
    rep.line(f"RUM: {_yes(verdict.is_rum)}")
    for a, m in verdict.violations:
        rep.line(f"  BM({labels[a]}, {rho.alt_set.menu_name(m)}) = {rep.q(verdict.table[a, m])} < 0")
    rep.doc = {
        "is_rum": verdict.is_rum,
        "violations": [
            {"alternative": labels[a], "menu": rho.alt_set.menu_key(m), "bm": io.format_rational(verdict.table[a, m])}
            for a, m in verdict.violations
        ],
    }


def cmd_bm_table(args, rep: Report) -> None:
    rho = _dataset(args)
    table = bm_table(rho)
    labels = rho.alt_set.labels
    rows = []
    for (a, m), v in table.values.items():
        rep.line(f"BM({labels[a]}, {rho.alt_set.menu_name(m)}) = {rep.q(v)}")
        rows.append({"alternative": labels[a], "menu": rho.alt_set.menu_key(m), "bm": io.format_rational(v)})
    rep.doc = {"table": rows}


def cmd_bounds(args, rep: Report) -> None:
    rho = _dataset(args)
    report = satisfies_weak_correlation_bounds(rho) if args.weak else satisfies_correlation_bounds(rho)
    name = rho.alt_set.preference_name
    kind = "weak correlation bounds" if args.weak else "correlation bounds"
    rep.line(f"{kind}: {'satisfied' if report.ok else 'violated'}")
    for p, v in report.values.items():
        mark = "  VIOLATED" if v > 1 else ""
        rep.line(f"  {name(p)}: {rep.q(v)}{mark}")
    rep.doc = {
        "weak": args.weak,
        "satisfied": report.ok,
        "values": {name(p): io.format_rational(v) for p, v in report.values.items()},
        "violators": [name(p) for p in report.violators],
        "max": {"preference": name(report.argmax), "value": io.format_rational(report.max_value)},
    }


def cmd_irum(args, rep: Report, witness: bool = False) -> None:
    rho = _dataset(args)
    verdict = is_irum(rho, witness=witness)
    name = rho.alt_set.preference_name
    bounds = "n/a" if rho.n == 2 else ("satisfied" if verdict.bounds_ok else "violated")
    rep.line(f"RUM: {_yes(verdict.is_rum)}; correlation bounds: {bounds}; I-RUM: {_yes(verdict.is_irum)}")
    if verdict.violators:
        rep.line("violators: " + ", ".join(name(p) for p in verdict.violators))
    if verdict.note:
        rep.line(f"note: {verdict.note}")
    rep.doc = {
        "is_rum": verdict.is_rum,
        "bounds_ok": verdict.bounds_ok,
        "is_irum": verdict.is_irum,
        "violators": [name(p) for p in verdict.violators],
        "note": verdict.note,
    }
    if witness:
        if verdict.witness is not None:
            rep.line("witness:")
            _rcm_lines(rep, verdict.witness)
        rep.doc["witness"] = io.rcm_document(verdict.witness) if verdict.witness is not None else None


def cmd_pirum(args, rep: Report, witness: bool = False) -> None:
    rho = _dataset(args)
    verdict = is_pirum(rho)
    rep.line(f"RUM: {_yes(verdict.is_rum)}; shared positive pair: {_yes(verdict.condition3)}; pI-RUM: {_yes(verdict.is_pirum)}")
    rep.doc = {"is_rum": verdict.is_rum, "condition3": verdict.condition3, "is_pirum": verdict.is_pirum}
    if verdict.witness_menus is not None:
        first, second, a, b = verdict.witness_menus
        alt_set = rho.alt_set
        rep.line(
            f"menus {alt_set.menu_name(first)} and {alt_set.menu_name(second)} "
            f"both choose {alt_set.labels[a]} and {alt_set.labels[b]} with positive probability"
        )
        rep.doc["witness_menus"] = [alt_set.menu_key(first), alt_set.menu_key(second), alt_set.labels[a], alt_set.labels[b]]
    if witness and verdict.is_pirum:
        if args.mu:
            _, dist = _distribution(args, args.mu)
        else:
            dist = rum_representation(rho).as_distribution()
        model = pirum_representation(rho, dist)
        rep.line("witness:")
        _rcm_lines(rep, model)
        rep.doc["witness"] = io.rcm_document(model)


def cmd_decompose(args, rep: Report) -> None:
    alt_set, dist = _distribution(args, args.mu)
    split = rum_decompose_irum_dual(dist, alt_set)
    rep.line(f"irrational weight: {rep.q(split.irrational_weight)}")
    if split.irrational_pool is not None:
        rep.line("irrational pool:")
        _rcm_lines(rep, split.irrational_pool)
    rep.line("residual dual RUM:")
    residual = split.residual_dual.as_distribution()
    for p, w in sorted(residual.items()):
        rep.line(f"  {rep.q(w)}  {alt_set.preference_name(p)}")
    rep.doc = {
        "irrational_weight": io.format_rational(split.irrational_weight),
        "irrational_pool": io.rcm_document(split.irrational_pool) if split.irrational_pool is not None else None,
        "residual_dual": io.distribution_document(alt_set, residual),
    }


def cmd_dual_construct(args, rep: Report) -> None:
    alt_set = AlternativeSet(tuple(args.alternatives))
    _guard(args, alt_set.n)
    p1, p2 = io.parse_preference(alt_set, args.p1), io.parse_preference(alt_set, args.p2)
    model = dual_irum_construction(p1, p2, io.parse_rational(args.m1), io.parse_rational(args.m2), alt_set)
    rep.line(f"all-irrational representation with {len(model.support)} members:")
    _rcm_lines(rep, model)
    rep.doc = io.rcm_document(model)


def cmd_dual_decompose(args, rep: Report) -> None:
    alt_set, dist = _distribution(args, args.mu)
    anchor = io.parse_preference(alt_set, args.anchor)
    result = dual_decomposition(dist, anchor)
    name = alt_set.preference_name
    rep.line(f"anchor: {name(anchor)}")
    parts = []
    for weight, dual in result.components:
        cells = ", ".join(f"{name(p)}: {rep.q(w)}" for p, w in sorted(dual.items()))
        rep.line(f"  {rep.q(weight)} x {{{cells}}}")
        parts.append({"weight": io.format_rational(weight), "dual": io.distribution_document(alt_set, dual)})
    rep.doc = {"anchor": name(anchor), "components": parts}


def cmd_alpha_bar(args, rep: Report) -> None:
    rho_star = io.parse_dataset(_read(args.rho_star))
    _guard(args, rho_star.n)
    if args.family == "all":
        family = IrrationalFamily.all_rcms(rho_star.alt_set)
    else:
        alt_set, vertices = io.parse_family(_read(args.family))
        if alt_set != rho_star.alt_set:
            raise IrumError("family and rho-star list different alternatives")
        family = IrrationalFamily.finite(vertices)
    result = alpha_bar(rho_star, family)
    rep.line(rep.q(result.alpha_bar))
    rep.doc = {"alpha_bar": io.format_rational(result.alpha_bar), "worst_vertex": io.rcm_document(result.worst_vertex)}
    labels = rho_star.alt_set.labels
    if result.binding_constraint is not None:
        a, m = result.binding_constraint
        rep.line(f"binding: BM({labels[a]}, {rho_star.alt_set.menu_name(m)}) at the worst vertex")
        rep.doc["binding_constraint"] = {"alternative": labels[a], "menu": rho_star.alt_set.menu_key(m)}
    else:
        rep.doc["binding_constraint"] = None
    rep.line("worst vertex:")
    _rcm_lines(rep, result.worst_vertex)


def cmd_demand(args, rep: Report) -> None:
    data = TwoBudgetData(*(io.parse_rational(x) for x in args.pi))
    lo, hi = irrational_share_bounds(data)
    if lo == hi:
        rep.line(f"irrational share: exactly {rep.q(lo)}")
    else:
        rep.line(f"irrational share: between {rep.q(lo)} and {rep.q(hi)}")
    rep.doc = {"lower": io.format_rational(lo), "upper": io.format_rational(hi), "tables": {}}
    for target in (MIN_IRRATIONAL, MAX_IRRATIONAL):
        t = extremal_table(data, target)
        rep.line(f"{target}: q11={rep.q(t.q11)} q12={rep.q(t.q12)} q21={rep.q(t.q21)} q22={rep.q(t.q22)}")
        rep.doc["tables"][target] = {k: io.format_rational(getattr(t, k)) for k in ("q11", "q12", "q21", "q22")}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="irum", description="Exact tests for random utility and irrational choice models.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--decimal", action="store_true", help="append decimal approximations in text output")
    common.add_argument("--max-n", type=int, help="lower the size guard (values above the module limit are refused)")
    sub = parser.add_subparsers(dest="command", required=True)

    def dataset_cmd(name, func, help_text, **extra):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("dataset", help="choice data JSON file")
        p.set_defaults(func=func, **extra)
        return p

    dataset_cmd("check-rum", cmd_check_rum, "RUM test via BM polynomials")
    dataset_cmd("bm-table", cmd_bm_table, "print every BM polynomial")
    dataset_cmd("bounds", cmd_bounds, "correlation bounds per preference").add_argument(
        "--weak", action="store_true", help="use the weak bound over all menus"
    )
    dataset_cmd("irum", lambda a, r: cmd_irum(a, r, False), "I-RUM verdict")
    dataset_cmd("irum-witness", lambda a, r: cmd_irum(a, r, True), "I-RUM verdict with an irrational witness (n <= 4)")
    dataset_cmd("pirum", lambda a, r: cmd_pirum(a, r, False), "pI-RUM verdict")
    dataset_cmd("pirum-witness", lambda a, r: cmd_pirum(a, r, True), "pI-RUM verdict with a witness").add_argument(
        "--mu", help="preference distribution representing the data (found by LP when omitted)"
    )

    p = sub.add_parser("decompose", parents=[common], help="split a RUM into an I-RUM pool and a dual RUM")
    p.add_argument("--mu", required=True, help="preference distribution JSON file")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("dual-construct", parents=[common], help="irrational representation of a dual RUM at bound equality")
    p.add_argument("--alternatives", nargs="+", required=True)
    p.add_argument("--p1", required=True, help='lighter preference, e.g. "c>s>f"')
    p.add_argument("--p2", required=True, help="heavier preference")
    p.add_argument("--m1", required=True)
    p.add_argument("--m2", required=True)
    p.set_defaults(func=cmd_dual_construct)

    p = sub.add_parser("dual-decompose", parents=[common], help="split a RUM tight at an anchor into dual RUMs")
    p.add_argument("--mu", required=True, help="preference distribution JSON file")
    p.add_argument("--anchor", required=True, help='preference with a tight bound, e.g. "c>s>f"')
    p.set_defaults(func=cmd_dual_decompose)

    p = sub.add_parser("alpha-bar", parents=[common], help="falsifiability threshold of a family of choice models")
    p.add_argument("--rho-star", required=True, help="full-support RUM choice data JSON file")
    p.add_argument("--family", default="all", help='"all" or a JSON file of RCM vertices')
    p.set_defaults(func=cmd_alpha_bar)

    p = sub.add_parser("demand", parents=[common], help="irrational share bounds for two-budget demand data")
    p.add_argument("--pi", nargs=4, required=True, metavar=("PI_1_1", "PI_2_1", "PI_1_2", "PI_2_2"))
    p.set_defaults(func=cmd_demand)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    rep = Report(args.decimal)
    try:
        args.func(args, rep)
    except SizeLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except IrumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        print(io.dumps(rep.doc))
    else:
        print("\n".join(rep.lines))
    return 0


if __name__ == "__main__":
    sys.exit(main())
