"""Command-line interface.

    mappingtori su2 --matrix 3,-1,1,0 --level 3 --formula sqm
    mappingtori general --family A --rank 2 --p 3 --levels 1..4 --formula all
    mappingtori fixed-points --matrix 3,-1,1,0
    mappingtori verify --suite reciprocity --max 20

Exit codes: 0 success, 1 internal error or failed verification, 2 invalid
input, 3 unsupported or degenerate monodromy.
"""

from __future__ import annotations

import argparse
import csv
import inspect
import io
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import framing, partition, verify
from .errors import CUnsupported, DegenerateFixedSet, DomainError, MappingToriError, ParabolicMonodromy
from .fixedpoints import fixed_points
from .gausssums import DEFAULT_TOL, Phase
from .modulargroup import SL2Element, classify, format_word, rademacher_phi, word_decompose
from .rootsystems import FAMILIES, build

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_MONODROMY = 0, 1, 2, 3

SU2_FORMULAS = ("sqm", "trace", "rt")
GENERAL_FORMULAS = ("sqm", "weights", "cosets")


class InputError(Exception):
    """Bad command-line input, reported with exit code 2."""


# ------------------------------------------------------------------ parsing


def parse_matrix(text: str) -> SL2Element:
    try:
        entries = [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"matrix must be four comma-separated integers, got {text!r}") from None
    if len(entries) != 4:
        raise InputError(f"matrix must have four entries a,b,c,d, got {len(entries)}")
    a, b, c, d = entries
    if a * d - b * c != 1:
        raise InputError(f"matrix {entries} has determinant {a * d - b * c}, not 1")
    return SL2Element(a, b, c, d)


def parse_levels(text: str) -> list[int]:
    """``"3"``, ``"1..8"`` or ``"1,2,5"``."""
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
            levels = list(range(lo, hi + 1))
        else:
            levels = [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"cannot parse levels {text!r}") from None
    if not levels or min(levels) < 1:
        raise InputError(f"levels must be integers >= 1, got {text!r}")
    return levels


def parse_phase(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse phase {text!r} as a rational") from None


def _levels(args) -> list[int]:
    if args.levels is not None:
        return parse_levels(args.levels)
    if args.level is not None:
        return parse_levels(str(args.level))
    raise InputError("give --level or --levels")


def _family(args):
    fam = args.family.upper()
    if fam not in FAMILIES:
        raise InputError(f"unsupported family {args.family!r}; choose from {', '.join(FAMILIES)}")
    try:
        return build(fam, args.rank)
    except DomainError as exc:
        raise InputError(str(exc)) from None


# ------------------------------------------------------------------ records


def rational(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def _num(x: float) -> float:
    return float(x) + 0.0  # drop negative zero


def value_record(result: partition.PartitionResult, name: str) -> dict:
    v = result.value
    return {
        "level": result.level,
        "formula": name,
        "re": _num(v.real),
        "im": _num(v.imag),
        "modulus": _num(abs(v)),
        "term_count": result.term_count,
    }


def comparison_record(level: int, name: str, cmp: framing.PhaseComparison, **extra) -> dict:
    rec = {
        "level": level,
        "comparison": name,
        "predicted_re": _num(cmp.predicted.real),
        "predicted_im": _num(cmp.predicted.imag),
        "sign": cmp.sign,
        "match_up_to_sign": cmp.match_up_to_sign,
        "residual": _num(cmp.abs_residual),
    }
    rec.update(extra)
    return rec


def _bump(residuals: dict, key: str, value: float) -> None:
    residuals[key] = _num(max(residuals.get(key, 0.0), value))


# ----------------------------------------------------------------- commands


def cmd_su2(args) -> dict:
    U = parse_matrix(args.matrix)
    levels = _levels(args)
    formulas = SU2_FORMULAS if args.formula == "all" else (args.formula,)
    k_override = None if args.k_override is None else complex(Phase(parse_phase(args.k_override)))
    tol = args.tol
    report = _report(
        {
            "command": "su2",
            "matrix": [U.a, U.b, U.c, U.d],
            "kind": classify(U).value,
            "word": format_word(word_decompose(U)),
            "phi": rademacher_phi(U, args.phi_sign) if U.c else None,
            "levels": levels,
            "formula": args.formula,
            "tol": tol,
            "phi_sign": args.phi_sign,
            "k_override": args.k_override,
        }
    )
    for k in levels:
        values = {}
        for name in formulas:
            if name == "sqm":
                res = partition.z_sqm_su2(U, k)
            elif name == "trace":
                res = partition.z_trace_su2(U, k, k_override=k_override, phi_sign=args.phi_sign)
            else:
                res = partition.rt_trace_su2(U, k)
            values[name] = res.value
            report["results"].append(value_record(res, name))
        if args.formula == "all":
            mod = abs(abs(values["rt"]) - abs(values["sqm"]))
            tr = abs(values["trace"] - values["rt"])
            report["comparisons"].append({"level": k, "comparison": "modulus rt|sqm", "residual": _num(mod), "ok": mod < tol})
            report["comparisons"].append({"level": k, "comparison": "value trace|rt", "residual": _num(tr), "ok": tr < tol})
            _bump(report["residuals"], "modulus rt|sqm", mod)
            _bump(report["residuals"], "value trace|rt", tr)
            cmp = framing.compare(values["rt"], values["sqm"], framing.su2_predicted_phase(U, args.phi_sign), tol)
            report["comparisons"].append(
                comparison_record(k, "framing rt|sqm", cmp, psi=framing.psi(U, args.phi_sign))
            )
            _bump(report["residuals"], "framing rt|sqm", cmp.abs_residual)
    return report


def cmd_general(args) -> dict:
    rs = _family(args)
    levels = _levels(args)
    p = args.p
    if abs(p) == 2:
        raise ParabolicMonodromy(f"T^{p} S is parabolic")
    formulas = GENERAL_FORMULAS if args.formula == "all" else (args.formula,)
    tol = args.tol
    report = _report(
        {
            "command": "general",
            "group": rs.name,
            "p": p,
            "levels": levels,
            "formula": args.formula,
            "tol": tol,
            "weyl_order": len(rs.weyl_group),
            "dual_coxeter": rs.h,
        }
    )
    funcs = {
        "sqm": partition.z_sqm_general,
        "weights": partition.z_trace_general_weights,
        "cosets": partition.z_trace_general_cosets,
    }
    for k in levels:
        values = {}
        for name in formulas:
            res = funcs[name](rs, p, k)
            values[name] = res.value
            report["results"].append(value_record(res, name))
        if args.formula == "all":
            wc = abs(values["weights"] - values["cosets"])
            mod = abs(abs(values["sqm"]) - abs(values["weights"]))
            report["comparisons"].append({"level": k, "comparison": "value weights|cosets", "residual": _num(wc), "ok": wc < tol})
            report["comparisons"].append({"level": k, "comparison": "modulus sqm|weights", "residual": _num(mod), "ok": mod < tol})
            _bump(report["residuals"], "value weights|cosets", wc)
            _bump(report["residuals"], "modulus sqm|weights", mod)
        if abs(p) > 2 and {"sqm", "weights"} <= set(values):
            cmp = framing.compare(values["weights"], values["sqm"], framing.general_phase_prediction(rs, p), tol)
            report["comparisons"].append(
                comparison_record(k, "framing weights|sqm", cmp, framing_sign=framing.framing_sign(cmp, rs, p))
            )
            _bump(report["residuals"], "framing weights|sqm", cmp.abs_residual)
    return report


def cmd_fixed_points(args) -> dict:
    U = parse_matrix(args.matrix)
    rs = _family(args)
    report = _report({"command": "fixed-points", "matrix": [U.a, U.b, U.c, U.d], "group": rs.name})
    for index, w in enumerate(rs.weyl_group):
        for fp in fixed_points(rs, U, w):
            report["results"].append(
                {
                    "w_index": index,
                    "det_w": w.det,
                    "lam": [int(x) for x in fp.lam],
                    "a_point": [rational(x) for x in fp.a_point],
                    "cs": rational(fp.cs),
                    "eps": fp.eps,
                    "absdet": fp.absdet,
                }
            )
    return report


def cmd_verify(args) -> dict:
    names = list(verify.SUITES) if "all" in args.suite else args.suite
    options = {
        "max_n": args.max,
        "bound": args.bound,
        "levels": None if args.levels is None else parse_levels(args.levels),
        "draws": args.draws,
        "samples": args.samples,
        "seed": args.seed,
        "tol": args.tol,
    }
    report = _report({"command": "verify", "suites": names, **{k: v for k, v in options.items() if v is not None}})
    for name in names:
        fn = verify.SUITES[name]
        params = inspect.signature(fn).parameters
        kwargs = {k: v for k, v in options.items() if v is not None and k in params}
        res = fn(**kwargs)
        report["results"].append(
            {
                "suite": name,
                "passed": res.passed,
                "cases": res.cases,
                "max_residual": _num(res.max_residual),
                "failures": [str(f) for f in res.failures],
            }
        )
        report["residuals"][name] = _num(res.max_residual)
    return report


def _report(inputs: dict) -> dict:
    return {"input": inputs, "results": [], "comparisons": [], "residuals": {}}


# ------------------------------------------------------------------ writers


def write_json(report: dict, out) -> None:
    json.dump(report, out, indent=2, allow_nan=False)
    out.write("\n")


def _cell(v) -> str:
    if isinstance(v, list):
        return " ".join(str(x) for x in v)
    if v is None:
        return ""
    return str(v)


def write_csv(report: dict, out) -> None:
    rows = report["results"]
    if not rows:
        return
    fields = list(rows[0])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow([_cell(row.get(f)) for f in fields])
    out.write(buf.getvalue())


def write_text(report: dict, out) -> None:
    for key, value in report["input"].items():
        out.write(f"{key}: {_cell(value)}\n")
    for section in ("results", "comparisons"):
        if report[section]:
            out.write(f"\n{section}\n")
            for row in report[section]:
                out.write("  " + "  ".join(f"{k}={_cell(v)}" for k, v in row.items()) + "\n")
    if report["residuals"]:
        out.write("\nmax residuals\n")
        for key, value in report["residuals"].items():
            out.write(f"  {key}: {value:.3e}\n")


WRITERS = {"json": write_json, "csv": write_csv, "text": write_text}


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=sorted(WRITERS), default="json")

    parser = argparse.ArgumentParser(prog="mappingtori", description="Chern-Simons invariants of torus bundles.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_levels(p):
        p.add_argument("--level", type=int)
        p.add_argument("--levels", help="range like 1..8 or a list like 1,2,5")

    def add_group(p, required=True):
        p.add_argument("--family", required=required, default=None if required else "A")
        p.add_argument("--rank", type=int, required=required, default=None if required else 1)

    su2 = sub.add_parser("su2", parents=[common], help="SU(2) partition functions of one mapping torus")
    su2.add_argument("--matrix", required=True, help="entries a,b,c,d")
    add_levels(su2)
    su2.add_argument("--formula", choices=SU2_FORMULAS + ("all",), default="all")
    su2.add_argument("--k-override", help="replace K(U) by exp(2 pi i q) for this rational q")
    su2.add_argument("--phi-sign", type=int, choices=(1, -1), default=1)
    su2.add_argument("--tol", type=float, default=DEFAULT_TOL)
    su2.set_defaults(func=cmd_su2)

    gen = sub.add_parser("general", parents=[common], help="classical group, U = T^p S")
    add_group(gen)
    gen.add_argument("--p", type=int, required=True)
    add_levels(gen)
    gen.add_argument("--formula", choices=GENERAL_FORMULAS + ("all",), default="all")
    gen.add_argument("--tol", type=float, default=DEFAULT_TOL)
    gen.set_defaults(func=cmd_general)

    fp = sub.add_parser("fixed-points", parents=[common], help="table of flat connections")
    fp.add_argument("--matrix", required=True)
    add_group(fp, required=False)
    fp.set_defaults(func=cmd_fixed_points)

    ver = sub.add_parser("verify", parents=[common], help="run cross-formula verification suites")
    ver.add_argument("--suite", action="append", choices=sorted(verify.SUITES) + ["all"], required=True)
    ver.add_argument("--max", type=int, help="largest a, c for reciprocity")
    ver.add_argument("--bound", "--trace-bound", dest="bound", type=int, help="entry bound for the hyperbolic grid")
    ver.add_argument("--levels")
    ver.add_argument("--draws", type=int)
    ver.add_argument("--samples", type=int)
    ver.add_argument("--seed", type=int)
    ver.add_argument("--tol", type=float)
    ver.set_defaults(func=cmd_verify)
    return parser


def _join_matrix(argv: list[str]) -> list[str]:
    """Glue ``--matrix -1,...`` into one token so argparse does not read the value as a flag."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--matrix":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--matrix={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(_join_matrix(sys.argv[1:] if argv is None else list(argv)))
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        report = args.func(args)
    except (InputError, DomainError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (ParabolicMonodromy, DegenerateFixedSet, CUnsupported) as exc:
        err.write(f"unsupported monodromy: {exc}\n")
        return EXIT_MONODROMY
    except MappingToriError as exc:
        err.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL
    WRITERS[args.format](report, out)
    if args.command == "verify" and not all(r["passed"] for r in report["results"]):
        return EXIT_INTERNAL
    return EXIT_OK


def run() -> None:
    sys.exit(main())
