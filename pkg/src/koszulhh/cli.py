"""Command-line frontend: ``koszulhh {check,dual,hh,cup,resolution} FILE [options]``.

Exit codes: 0 success, 1 a requested check failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field

from . import __version__
from .complexes import (
    ComplexError,
    HochschildComplex,
    RegularCoefficients,
    central_action,
    check_central,
    make_coefficients,
    resolution_report,
    truncated_estimate,
)
from .cup_product import compare_image_with_central_multiple, cup_surjectivity, product_classes
from .exact_linalg import format_scalar
from .koszul_dual import (
    CheckResult,
    associativity_check,
    dual_report,
    e_identity_check,
    koszul_dual,
    leibniz_check,
    twisting_cochain_check,
    verify_curved,
)
from .parser import PresentationError, parse_expression
from .presentation import (
    NotConfluentError,
    Presentation,
    coproduct_check,
    double_perp_check,
    format_word,
    intersection_coalgebra,
    load_presentation,
    pbw_confluence_check,
    validate,
)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2
RANGE_OPTIONS = ("--weights", "--degrees", "--resolution-weights")


class UsageError(Exception):
    pass


@dataclass
class Report:
    presentation: dict
    command: str
    tables: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    estimate: bool = False
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {
            "presentation": self.presentation,
            "command": self.command,
            "tables": self.tables,
            "checks": [c.as_dict() if isinstance(c, CheckResult) else c for c in self.checks],
            "estimate": self.estimate,
        }
        out.update(self.extra)
        return out

    @property
    def all_passed(self) -> bool:
        return all((c.passed if isinstance(c, CheckResult) else c["pass"]) for c in self.checks)


def parse_range(text: str) -> range:
    m = re.fullmatch(r"\s*(-?\d+)\s*(?:\.\.\s*(-?\d+))?\s*", text)
    if not m:
        raise UsageError(f"bad range {text!r}; expected a..b")
    a = int(m.group(1))
    b = int(m.group(2)) if m.group(2) is not None else a
    if b < a:
        raise UsageError(f"empty range {text!r}")
    return range(a, b + 1)


def digest(p: Presentation, path: str) -> dict:
    return {
        "file": path,
        "sha256": p.digest(),
        "field": repr(p.field),
        "generators": [{"name": g.name, "weight": g.effective_weight} for g in p.generators],
        "relations": [p.format_poly(r.as_poly()) for r in p.relations],
        "weighted": p.is_weighted,
        "curved": p.is_curved,
    }


def _matrix_rows(m) -> list:
    return [[format_scalar(x) for x in row] for row in m.to_dense(0)]


# ---------- commands ----------


def cmd_check(p: Presentation, args, report: Report) -> None:
    checks = report.checks
    conf = pbw_confluence_check(p)
    if conf.passed:
        checks.append(CheckResult("PBW confluence", True))
    else:
        w = conf.witness
        checks.append(
            CheckResult(
                "PBW confluence",
                False,
                f"overlap {format_word(w.word, p.names, power=False)}: "
                f"{p.format_poly(w.left_reduction)} != {p.format_poly(w.right_reduction)}",
            )
        )
        return
    deg = args.max_dual_degree
    c = intersection_coalgebra(p, deg)
    bad = coproduct_check(c)
    checks.append(CheckResult("coproduct closes on C", bad is None, None if bad is None else f"degree {bad[0]}, basis {bad[1]}, split {bad[2]}"))
    checks.append(CheckResult("(R^perp)^perp = R", double_perp_check(p)))
    t = koszul_dual(p, deg)
    checks.append(CheckResult("dim Lambda^i = dim C^-i", t.dims() == c.dims()))
    checks += [verify_curved(t), leibniz_check(t), associativity_check(t), twisting_cochain_check(p, t), e_identity_check(p, t)]
    if p.is_weighted:
        ws = args.resolution_weights or range(0, 5)
        for w in ws:
            r = resolution_report(p, t, w)
            wit = None if r.passed else f"d^2=0: {r.d_squared_zero}, H^0 {r.h0} vs dim A {r.dim_a}, H^<0 {r.negative_homology}"
            checks.append(CheckResult(f"resolution at weight {w}", r.passed, wit))
    else:
        checks.append({"name": "resolution", "pass": True, "skipped": True, "witness": "skipped: unweighted"})


def cmd_dual(p: Presentation, args, report: Report) -> None:
    t = koszul_dual(p, args.max_dual_degree)
    info = dual_report(p, t)
    report.extra["dual"] = info
    for n, names in enumerate(info["basis"]):
        report.tables.append({"degree": n, "weight": None, "dim": len(names), "representatives": names})


def _setup_complex(p: Presentation, args):
    try:
        coeff = make_coefficients(p, args.coeff)
    except ComplexError as exc:
        raise UsageError(str(exc)) from None
    top = max(args.degrees) if args.degrees else 3
    t = koszul_dual(p, max(args.max_dual_degree, top + 1))
    return t, coeff


def cmd_hh(p: Presentation, args, report: Report) -> None:
    t, coeff = _setup_complex(p, args)
    degrees = list(args.degrees or range(0, min(t.top_degree, t.max_degree - 1) + 1))
    if args.truncate is not None:
        if not isinstance(coeff, RegularCoefficients):
            raise UsageError("--truncate works with --coeff regular")
        est = truncated_estimate(p, t, coeff, args.truncate, degrees)
        report.estimate = True
        report.extra["estimate_detail"] = est.as_dict()
        for n, d, s in zip(est.degrees, est.dims_at_bound, est.stable):
            report.tables.append({"degree": n, "weight": None, "dim": d, "representatives": [], "stable": s})
        return
    if coeff.kind in ("regular", "enveloping") and not coeff.weighted:
        raise UsageError("presentation is not weighted; use --truncate D for an estimate, or finite --coeff bimodule:<name>")
    hc = HochschildComplex(p, t, coeff)
    weights = list(args.weights or range(0, 5)) if coeff.weighted else [None]
    for w in weights:
        res = hc.slice(w).check_d_squared()
        where = "" if w is None else f" at weight {w}"
        report.checks.append(CheckResult(f"d^2 = 0{where}", res.passed, res.witness))
    for n in degrees:
        for w in weights:
            cb = hc.cohomology(n, w)
            reps = [hc.format_cochain(n, hc.cochain(n, w, r)) for r in cb.representatives]
            report.tables.append({"degree": n, "weight": w, "dim": cb.dim, "representatives": reps})
    if args.central:
        if not isinstance(coeff, RegularCoefficients):
            raise UsageError("--central needs --coeff regular")
        z = parse_expression(args.central, p.field, {g: i for i, g in enumerate(p.names)})
        if not check_central(p, hc.coeff.rw, hc.coeff.rw.normal_form(z)):
            raise UsageError(f"{args.central} is not central")
        mats = []
        for n in degrees:
            for w in weights:
                m = central_action(z, hc, n, w)
                mats.append({"degree": n, "weight": w, "rows": m.nrows, "cols": m.ncols, "matrix": _matrix_rows(m)})
        report.extra["central_action"] = {"element": p.format_poly(z), "matrices": mats}


def _cup_complex(p: Presentation, args) -> HochschildComplex:
    if args.coeff != "regular":
        raise UsageError("cup product requires algebra coefficients")
    if not p.is_weighted:
        raise UsageError("cup products are computed on weight slices; the presentation is not weighted")
    t, coeff = _setup_complex(p, argparse.Namespace(**{**vars(args), "degrees": range(0, 4)}))
    return HochschildComplex(p, t, coeff)


def cmd_cup(p: Presentation, args, report: Report) -> None:
    hc = _cup_complex(p, args)
    weights = list(args.weights or range(-4, 3))
    lo = min(weights) - 4
    if args.table:
        m = re.fullmatch(r"(?:deg)?(\d+)x(?:deg)?(\d+)", args.table)
        if not m:
            raise UsageError("--table expects PxQ, e.g. 1x1 or deg1xdeg2")
        a, b = int(m.group(1)), int(m.group(2))
        rows = []
        for w in weights:
            for w1 in range(lo, w - lo + 1):
                w2 = w - w1
                if a > hc.top or b > hc.top or a + b > hc.top:
                    continue
                if not hc.cohomology(a, w1).dim or not hc.cohomology(b, w2).dim:
                    continue
                coeffs = product_classes(hc, a, w1, b, w2)
                da, db = hc.cohomology(a, w1).dim, hc.cohomology(b, w2).dim
                for i in range(da):
                    for j in range(db):
                        c = coeffs[i * db + j]
                        rows.append(
                            {
                                "left": {"degree": a, "weight": w1, "index": i},
                                "right": {"degree": b, "weight": w2, "index": j},
                                "product": {"degree": a + b, "weight": w, "coefficients": [format_scalar(x) for x in c]},
                            }
                        )
        report.extra["products"] = rows
        for n in sorted({a, b, a + b}):
            for w in sorted({*weights, *range(lo, max(weights) - lo + 1)}) if n != a + b else weights:
                if n <= hc.top:
                    cb = hc.cohomology(n, w)
                    if cb.dim:
                        reps = [hc.format_cochain(n, hc.cochain(n, w, r)) for r in cb.representatives]
                        report.tables.append({"degree": n, "weight": w, "dim": cb.dim, "representatives": reps})
    if args.surjectivity:
        m = re.fullmatch(r"(\d+)x(\d+)to(\d+)", args.surjectivity)
        if not m or int(m.group(1)) + int(m.group(2)) != int(m.group(3)):
            raise UsageError("--surjectivity expects AxBtoC with A+B=C, e.g. 1x2to3")
        a, b = int(m.group(1)), int(m.group(2))
        out = []
        for w in weights:
            row = cup_surjectivity(hc, w, lo, (a, b))
            out.append({"weight": w, "rank": row.rank, "target_dim": row.target_dim, "surjective": row.surjective})
            report.checks.append(CheckResult(f"H^{a} x H^{b} -> H^{a + b} surjective at weight {w}", row.surjective))
        report.extra["surjectivity"] = out
    if args.image:
        z = parse_expression(args.image, p.field, {g: i for i, g in enumerate(p.names)})
        out = []
        for w in weights:
            c = compare_image_with_central_multiple(hc, z, w, lo)
            out.append({"weight": w, "image_rank": c.image_rank, "expected_rank": c.expected_rank, "equal": c.equal})
            report.checks.append(CheckResult(f"H^1 . H^1 = ({args.image}) H^2 at weight {w}", c.equal))
        report.extra["image"] = out
    if not (args.table or args.surjectivity or args.image):
        raise UsageError("cup needs at least one of --table, --surjectivity, --image")


def cmd_resolution(p: Presentation, args, report: Report) -> None:
    if not p.is_weighted:
        raise UsageError("resolution slices need a weighted presentation")
    t = koszul_dual(p, args.max_dual_degree)
    for w in args.weights or range(0, 5):
        r = resolution_report(p, t, w)
        report.tables.append({"degree": 0, "weight": w, "dim": r.h0, "representatives": []})
        for n, d in sorted(r.negative_homology.items()):
            report.tables.append({"degree": -n, "weight": w, "dim": d, "representatives": []})
        wit = None if r.passed else f"d^2=0: {r.d_squared_zero}, H^0 {r.h0} vs dim A {r.dim_a}"
        report.checks.append(CheckResult(f"resolution at weight {w}", r.passed, wit))


COMMANDS = {"check": cmd_check, "dual": cmd_dual, "hh": cmd_hh, "cup": cmd_cup, "resolution": cmd_resolution}


# ---------- output ----------


def render_text(report: Report) -> str:
    d = report.as_dict()
    pres = d["presentation"]
    lines = [f"# {report.command} {pres['file']}  [{pres['field']}, {'weighted' if pres['weighted'] else 'unweighted'}]"]
    if report.estimate:
        lines.append("ESTIMATE (filtration truncation; unstable entries are unreliable)")
    if d["tables"]:
        lines.append("degree  weight  dim  representatives")
        for row in d["tables"]:
            w = "-" if row["weight"] is None else str(row["weight"])
            extra = "" if "stable" not in row else ("  stable" if row["stable"] else "  unstable")
            reps = "; ".join(row["representatives"])
            lines.append(f"{row['degree']:>6}  {w:>6}  {row['dim']:>3}  {reps}{extra}")
    if "dual" in d:
        lines.append(f"d: {d['dual'].get('d')}")
        lines.append(f"curvature: {d['dual'].get('curvature')}")
    if "central_action" in d:
        ca = d["central_action"]
        lines.append(f"action of {ca['element']}:")
        for m in ca["matrices"]:
            lines.append(f"  degree {m['degree']} weight {m['weight']}: {m['matrix']}")
    for key in ("products", "surjectivity", "image"):
        if key in d:
            lines.append(f"{key}:")
            for row in d[key]:
                lines.append(f"  {json.dumps(row)}")
    for c in d["checks"]:
        status = "skip" if c.get("skipped") else ("pass" if c["pass"] else "FAIL")
        wit = f"  ({c['witness']})" if c.get("witness") else ""
        lines.append(f"[{status}] {c['name']}{wit}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="koszulhh", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("file")
        sp.add_argument("--json", action="store_true", help="emit the JSON report")
        sp.add_argument("--max-dual-degree", type=int, default=4, metavar="N")

    sp = sub.add_parser("check", help="confluence, curved dg, twisting cochain and resolution checks")
    common(sp)
    sp.add_argument("--resolution-weights", type=parse_range_arg)

    sp = sub.add_parser("dual", help="print the curved Koszul dual")
    common(sp)

    sp = sub.add_parser("hh", help="Hochschild cohomology tables")
    common(sp)
    sp.add_argument("--coeff", default="regular", help="regular | enveloping | bimodule:<name>")
    sp.add_argument("--weights", type=parse_range_arg)
    sp.add_argument("--degrees", type=parse_range_arg)
    sp.add_argument("--truncate", type=int, metavar="D")
    sp.add_argument("--central", metavar="z")

    sp = sub.add_parser("cup", help="cup products of cohomology classes")
    common(sp)
    sp.add_argument("--coeff", default="regular")
    sp.add_argument("--weights", type=parse_range_arg)
    sp.add_argument("--table", "--classes", dest="table", metavar="PxQ", help="product table between degrees P and Q")
    sp.add_argument("--surjectivity", metavar="AxBtoC")
    sp.add_argument("--image", metavar="z", help="compare H^1.H^1 with z.H^2")

    sp = sub.add_parser("resolution", help="verify the Koszul bimodule resolution on weight slices")
    common(sp)
    sp.add_argument("--weights", type=parse_range_arg)
    return ap


def parse_range_arg(text: str) -> range:
    try:
        return parse_range(text)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _join_range_values(argv: list) -> list:
    """Let ``--weights -4..4`` through argparse, which would read -4..4 as an option."""
    out = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a in RANGE_OPTIONS and i + 1 < len(argv):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = _join_range_values(list(sys.argv[1:] if argv is None else argv))
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        p = load_presentation(args.file)
        validate(p)
        report = Report(digest(p, args.file), args.command)
        COMMANDS[args.command](p, args, report)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except (PresentationError, UsageError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except (NotConfluentError, ComplexError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_CHECK_FAILED
    if args.json:
        stdout.write(json.dumps(report.as_dict(), indent=2) + "\n")
    else:
        stdout.write(render_text(report))
    return EXIT_OK if report.all_passed else EXIT_CHECK_FAILED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
