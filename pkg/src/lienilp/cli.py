"""Command line front end: analyze one group or verify the whole corpus."""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from typing import Any, TextIO

from .catalog import (
    GroupSpec,
    build,
    spec_from_name,
    standard_corpus,
    _normal_form_group,
)
from .classify import LieReport, analyze_full
from .dimension import CONVENTIONS, validate_convention
from .fplin import is_prime
from .groups import FiniteGroup

__all__ = ["InputDocument", "parse_presentation", "cmd_analyze", "cmd_verify", "main"]


@dataclass(frozen=True)
class InputDocument:
    """One group to analyze: a registry name, a Cayley table, or a
    presentation string, together with the field characteristic."""

    format: str  # "named" | "json_table" | "presentation"
    payload: Any
    prime: int

    def __post_init__(self) -> None:
        if self.format not in ("named", "json_table", "presentation"):
            raise ValueError(f"unknown input format {self.format!r}")
        if not is_prime(self.prime):
            raise ValueError(f"characteristic must be prime, got {self.prime}")


_REL_A = re.compile(r"^a\^(\d+)=1$")
_REL_B = re.compile(r"^b\^2=(?:1|a(?:\^(-?\d+))?)$")
_REL_CONJ = re.compile(r"^a\^b=a(?:\^(-?\d+))?$")


def parse_presentation(text: str) -> GroupSpec:
    """Compile a two-generator presentation into a raw table spec.

    Supported fragment: relations ``a^k=1``, ``b^2=1`` or ``b^2=a^j``, and
    ``a^b=a^e``, separated by ``;``.  Anything else is rejected.
    """
    a_order = b_power = conj = None
    offset = 0
    parts = text.split(";")
    for i, raw in enumerate(parts, start=1):
        rel = raw.replace(" ", "")
        if not rel:
            offset += len(raw) + 1
            continue
        if (m := _REL_A.match(rel)) is not None:
            if a_order is not None:
                raise ValueError(f"relation {i}: duplicate order relation for a")
            a_order = int(m.group(1))
        elif (m := _REL_B.match(rel)) is not None:
            b_power = 0 if rel == "b^2=1" else int(m.group(1) or 1)
        elif (m := _REL_CONJ.match(rel)) is not None:
            conj = int(m.group(1) or 1)
        else:
            col = offset + len(raw) - len(raw.lstrip()) + 1
            raise ValueError(
                f"relation {i} (column {col}): cannot parse {raw.strip()!r}; "
                "supported shapes are a^k=1, b^2=1, b^2=a^j, a^b=a^e"
            )
        offset += len(raw) + 1
    if a_order is None or b_power is None or conj is None:
        raise ValueError(
            "unsupported presentation shape: need all of a^k=1, b^2=..., a^b=..."
        )
    if a_order < 1:
        raise ValueError("order of a must be positive")
    name = f"<a^{a_order}=1,b^2={'1' if b_power % a_order == 0 else f'a^{b_power % a_order}'},a^b=a^{conj % a_order}>"
    try:
        G = _normal_form_group(a_order, conj % a_order, b_power % a_order, name)
    except ValueError as exc:
        raise ValueError(f"unsupported presentation shape: {exc}") from exc
    return GroupSpec("raw_table", {"table": G.table, "labels": G.labels}, name)


def _group_from_table_payload(payload: dict) -> FiniteGroup:
    if not isinstance(payload, dict):
        raise ValueError("table document must be a JSON object")
    for key in ("order", "table"):
        if key not in payload:
            raise ValueError(f"table document is missing the {key!r} key")
    order = payload["order"]
    table = payload["table"]
    if not isinstance(table, list) or len(table) != order:
        raise ValueError(f"table must be a list of {order} rows")
    if order >= 1 and list(table[0]) != list(range(order)):
        raise ValueError("identity must be element 0 (first row must be 0..n-1)")
    return FiniteGroup(table, labels=payload.get("labels"), name=payload.get("name", "input"))


def group_to_table_payload(G: FiniteGroup) -> dict:
    payload: dict[str, Any] = {
        "order": G.order,
        "table": [list(row) for row in G.table],
    }
    if G.labels:
        payload["labels"] = list(G.labels)
    return payload


def _load_group(doc: InputDocument) -> FiniteGroup:
    if doc.format == "named":
        return build(spec_from_name(doc.payload))
    if doc.format == "presentation":
        return build(parse_presentation(doc.payload))
    return _group_from_table_payload(doc.payload)


def _yesno(flag: bool | None) -> str:
    if flag is None:
        return "-"
    return "yes" if flag else "no"


def render_report(report: LieReport, verbose: bool = False) -> str:
    lines = [
        f"group           : {report.group_name} (order {report.order})",
        f"prime           : {report.p}",
        f"Lie nilpotent   : {_yesno(report.lie_nilpotent)}",
        f"|G'|            : {report.derived_order}   (maximal index would be {report.bound})",
    ]
    if report.lie_nilpotent:
        agree = "-"
        if report.t_upper is not None and report.jennings_t_upper is not None:
            agree = "AGREE" if report.t_upper == report.jennings_t_upper else "DISAGREE"
        lines += [
            f"t_L  (brute)    : {report.t_lower if report.t_lower is not None else '- (above brute-force cap)'}",
            f"t^L  (brute)    : {report.t_upper if report.t_upper is not None else '- (above brute-force cap)'}",
            f"t^L  (formula)  : {report.jennings_t_upper}   [{agree}]",
            f"maximal index   : predicted {_yesno(report.predicts_maximal)}, observed {_yesno(report.observed_maximal)}",
            f"d-values        : {report.d_values[1:] if len(report.d_values) > 1 else []} (from the second step)",
            f"convention      : {report.convention}",
        ]
    failed = report.failed_checks()
    ok = sum(1 for v in report.checks.values() if v)
    lines.append(f"checks          : {ok} ok, {len(failed)} failed" + (f" {failed}" if failed else ""))
    for err in report.errors:
        lines.append(f"error           : {err}")
    if verbose:
        if report.series_orders:
            lines.append(f"series orders   : {report.series_orders}")
        if report.oracle_orders is not None:
            lines.append(f"oracle orders   : {report.oracle_orders}")
        if report.lower_dims is not None:
            lines.append(f"lower chain dims: {report.lower_dims}")
        if report.upper_dims is not None:
            lines.append(f"upper chain dims: {report.upper_dims}")
        for name in sorted(report.checks):
            lines.append(f"  check {name}: {'ok' if report.checks[name] else 'FAIL'}")
    return "\n".join(lines)


def cmd_analyze(
    doc: InputDocument,
    *,
    json_out: bool = False,
    max_order: int = 128,
    convention: str = "auto",
    verbose: bool = False,
    out: TextIO | None = None,
) -> int:
    out = out or sys.stdout
    G = _load_group(doc)
    report, _ = analyze_full(
        G, doc.prime, brute_cap=max_order, convention=convention
    )
    if json_out:
        print(json.dumps(report.to_dict(), indent=2, sort_keys=True), file=out)
    else:
        print(render_report(report, verbose=verbose), file=out)
    return 0 if report.passed() else 1


_MATRIX_COLUMNS = [
    ("flag", "expected_flag"),
    ("bnd", "index_bound"),
    ("bic", "maximal_biconditional"),
    ("ueq", "upper_maximal_equality"),
    ("jen", "jennings_matches_upper"),
    ("orc", "oracle_equivalence"),
    ("sum", "d_sum_matches_order"),
    ("col", "series_collapse"),
    ("prf", "profile_iff_formula_maximal"),
    ("pmf", "prediction_matches_formula"),
    ("ord", "orders_at_maximal"),
    ("gen", "generator_bound"),
    ("kln", "klein_structure"),
    ("hch", "high_char_equality"),
    ("opn", "non_nilpotent_chain_open"),
]


def cmd_verify(
    *,
    max_order: int = 64,
    convention: str = "auto",
    json_out: bool = False,
    verbose: bool = False,
    out: TextIO | None = None,
) -> int:
    """Run the whole corpus, print the group-by-check matrix, and return 0
    only if every check on every entry holds."""
    out = out or sys.stdout
    corpus = standard_corpus()
    rows = []
    oracle_cases = []
    for entry in corpus:
        G = build(entry.spec)
        report, artifacts = analyze_full(
            G,
            entry.p,
            name=entry.spec.name,
            brute_cap=max_order,
            convention=convention,
        )
        checks = dict(report.checks)
        checks["expected_flag"] = report.lie_nilpotent == entry.expect_lie_nilpotent
        rows.append((entry, report, checks))
        if artifacts.oracle_terms is not None:
            oracle_cases.append((entry.spec.name, G, entry.p, artifacts.oracle_terms))
    conv_report = validate_convention(oracle_cases)

    failures = []
    for entry, report, checks in rows:
        bad = [k for k, v in checks.items() if not v]
        if bad or report.errors:
            failures.append((entry.spec.name, entry.p, bad, report.errors))

    if json_out:
        payload = {
            "reports": [
                dict(report.to_dict(), checks={k: checks[k] for k in sorted(checks)})
                for _, report, checks in rows
            ],
            "convention_validation": {
                "consistent": conv_report.consistent,
                "chosen": conv_report.chosen,
                "mismatches": conv_report.mismatches,
            },
            "passed": not failures and conv_report.chosen is not None,
        }
        print(json.dumps(payload, indent=2, sort_keys=True), file=out)
    else:
        header = f"{'group':<12}{'p':>2} {'|G|':>4} {'nil':>4} {'t_L':>4} {'t^L':>4} {'jen':>4}  "
        header += " ".join(code for code, _ in _MATRIX_COLUMNS)
        print(header, file=out)
        print("-" * len(header), file=out)
        for entry, report, checks in rows:
            cells = []
            for _, key in _MATRIX_COLUMNS:
                if key not in checks:
                    cells.append(" " * 3)
                else:
                    cells.append((" . " if checks[key] else " X "))
            line = (
                f"{report.group_name:<12}{report.p:>2} {report.order:>4} "
                f"{_yesno(report.lie_nilpotent):>4} "
                f"{report.t_lower if report.t_lower is not None else '-':>4} "
                f"{report.t_upper if report.t_upper is not None else '-':>4} "
                f"{report.jennings_t_upper if report.jennings_t_upper is not None else '-':>4}  "
            )
            print(line + " ".join(c.strip().center(3) for c in cells), file=out)
        legend = ", ".join(f"{code}={key}" for code, key in _MATRIX_COLUMNS)
        print(f"\nlegend: {legend}", file=out)
        print(". = ok, X = failed, blank = not applicable\n", file=out)
        print(
            f"convention validation: ceiling {'ok' if conv_report.consistent.get('ceiling') else 'FAIL'}, "
            f"strict-greater {'ok' if conv_report.consistent.get('strict-greater') else 'FAIL'}; "
            f"validated default: {conv_report.chosen}",
            file=out,
        )
        if failures:
            print("\nFAILURES:", file=out)
            for name, p, bad, errors in failures:
                print(f"  {name} (p={p}): checks {bad} errors {errors}", file=out)
        else:
            print(f"\nall {len(rows)} corpus entries pass", file=out)
    if failures or conv_report.chosen is None:
        return 1
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="lienilp",
        description=(
            "Lie nilpotency indices of modular group algebras: brute-force "
            "Lie power chains, the dimension-subgroup recursion, and the "
            "maximal-index classification, cross-checked against each other."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="analyze one group over F_p")
    src = pa.add_mutually_exclusive_group(required=True)
    src.add_argument("--named", metavar="NAME", help="catalog name, e.g. D16, Q8, S3, C2xD8")
    src.add_argument("--table", metavar="FILE", help="JSON file with {order, table, labels?}")
    src.add_argument("--present", metavar="STR", help="presentation, e.g. 'a^8=1; b^2=1; a^b=a^-1'")
    pa.add_argument("-p", "--prime", type=int, required=True, help="field characteristic")
    pa.add_argument("--json", action="store_true", help="machine-readable output")
    pa.add_argument("--max-order", type=int, default=128, help="brute-force chain cap (default 128)")
    pa.add_argument("--convention", choices=("auto",) + CONVENTIONS, default="auto")
    pa.add_argument("--verbose", action="store_true", help="print series and chain details")

    pv = sub.add_parser("verify", help="run the whole corpus of checks")
    pv.add_argument("--json", action="store_true", help="machine-readable output")
    pv.add_argument("--max-order", type=int, default=64, help="brute-force cap; larger entries run prediction-only")
    pv.add_argument("--convention", choices=("auto",) + CONVENTIONS, default="auto")
    pv.add_argument("--verbose", action="store_true")

    args = parser.parse_args(argv)
    try:
        if args.command == "analyze":
            if args.named is not None:
                doc = InputDocument("named", args.named, args.prime)
            elif args.present is not None:
                doc = InputDocument("presentation", args.present, args.prime)
            else:
                with open(args.table, "r", encoding="utf-8") as fh:
                    payload = json.load(fh)
                doc = InputDocument("json_table", payload, args.prime)
            return cmd_analyze(
                doc,
                json_out=args.json,
                max_order=args.max_order,
                convention=args.convention,
                verbose=args.verbose,
            )
        return cmd_verify(
            max_order=args.max_order,
            convention=args.convention,
            json_out=args.json,
            verbose=args.verbose,
        )
    except json.JSONDecodeError as exc:
        print(f"input error: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
