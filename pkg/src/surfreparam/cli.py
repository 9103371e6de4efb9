"""Command line interface.

    surfreparam degmap    INPUT
    surfreparam baselocus INPUT
    surfreparam reparam   INPUT [--mode general|empty-base] [--d-max N]

INPUT is a file holding four semicolon-separated forms in t1, t2, t3, the
forms themselves, or ``-`` for standard input.  ``--format structured``
prints one JSON document (field names in docs/format.md).

Exit codes: 0 success, 2 parse or validation error, 3 hypothesis failure,
4 budget exhausted, 5 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from typing import Callable

import flint

from . import __version__, baselocus
from .baselocus import HypothesisError
from .fiber import PROJ, InconsistencyError, ProjParam, deg_map_param, gstar, r_polynomials
from .polycore import ParseError, parse, to_str
from .reparam import (
    BudgetExhausted,
    HypothesisFailure,
    NotTransversalError,
    ReparamSolution,
    reparametrize_empty_base,
    reparametrize_general,
)
from .solspace import SolveBudgetError

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_HYPOTHESIS = 3
EXIT_BUDGET = 4
EXIT_INCONSISTENT = 5

FORMAT_TAG = "surfreparam/1"


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# input


def read_input(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    return arg


def _strip_comments(text: str) -> str:
    return "\n".join(line.split("#", 1)[0] for line in text.splitlines())


def parse_param(text: str) -> tuple[ProjParam, list[str]]:
    """Parse four forms; return the parametrization and warnings.

    Parse errors are reported with the offending form and a caret.
    """
    text = _strip_comments(text).strip().rstrip(";")
    parts = text.split(";")
    if len(parts) != 4:
        raise InputError(f"expected 4 semicolon-separated forms, got {len(parts)}")
    forms = []
    for k, part in enumerate(parts, 1):
        try:
            forms.append(parse(part, PROJ))
        except ParseError as exc:
            caret = " " * exc.pos + "^"
            raise InputError(f"form {k}: {exc}\n  {part}\n  {caret}") from None
    if forms[3].is_zero():
        raise InputError("the fourth form is zero; apply a linear change of the "
                         "target coordinates so that it is not")
    try:
        P = ProjParam(tuple(forms))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    warnings = []
    g = P.common_factor()
    if not g.is_constant():
        warnings.append(f"removed the common factor {g} of the forms")
        P = P.reduced()
    return P, warnings


# ---------------------------------------------------------------------------
# payloads


def _forms(fs) -> list[str]:
    return [to_str(f) for f in fs]


def degmap_payload(P: ProjParam, rng: random.Random) -> dict:
    R1, R2 = r_polynomials(P, rng)
    return {
        "degmap": deg_map_param(P, rng),
        "degree": P.degree,
        "R1_degree": R1.degree("t1"),
        "R2_degree": R2.degree("t2"),
    }


def baselocus_payload(P: ProjParam, rng: random.Random) -> dict:
    report = baselocus.base_locus(P.forms, rng)
    out: dict = {
        "empty": report.empty,
        "classes": [
            {
                "point": pc.label(),
                "minpoly": to_str(pc.minpoly),
                "coords": _forms(pc.coords),
                "size": pc.size,
                "multiplicity": m,
                "min_multiplicity": r,
            }
            for pc, m, r in zip(report.classes, report.multiplicity, report.min_multiplicity)
        ],
        "total_multiplicity": report.total,
        "transversal": report.transversal,
        "divergent": report.divergent,
    }
    if report.transversal and not report.empty:
        surf = baselocus.surface_degree(P, report, rng)
        out["surface_degree"] = surf
        try:
            out["divisor"] = str(baselocus.divisor_D(report, surf))
        except HypothesisError as exc:
            out["divisor"] = None
            out["divisor_note"] = str(exc)
    return out


def _gstar_payload(P: ProjParam, rng: random.Random) -> dict:
    G = gstar(P, rng)
    return {
        "u_star": to_str(G.ustar),
        "v_num": to_str(G.v_num),
        "v_den": to_str(G.v_den),
        "change": [[int(c) for c in row] for row in G.change],
    }


def solution_payload(sol: ReparamSolution) -> dict:
    return {
        "S": _forms(sol.S.forms),
        "Q": _forms(sol.Q.forms),
        "certificate": sol.certificate.as_dict(),
        "diagnostics": _jsonable(sol.diagnostics),
    }


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    if isinstance(x, flint.fmpz):
        return int(x)
    return str(x)


# ---------------------------------------------------------------------------
# commands


def run(args: argparse.Namespace, trace: Callable[[str], None] | None) -> tuple[int, dict]:
    P, warnings = parse_param(read_input(args.input))
    rng = random.Random(args.seed)
    doc: dict = {
        "format": FORMAT_TAG,
        "command": args.command,
        "input": {"forms": _forms(P.forms)},
        "seed": args.seed,
        "warnings": warnings,
    }
    if args.command == "degmap":
        doc["result"] = degmap_payload(P, rng)
        return EXIT_OK, doc
    if args.command == "baselocus":
        doc["result"] = baselocus_payload(P, rng)
        return EXIT_OK, doc

    doc["mode"] = args.mode
    if args.show_fiber:
        doc["gstar"] = _gstar_payload(P, random.Random(args.seed))
    if args.mode == "empty-base":
        out = reparametrize_empty_base(P, seed=args.seed, trace=trace)
        if isinstance(out, HypothesisFailure):
            doc["status"] = "hypothesis-failure"
            doc["reason"] = out.reason
            doc["diagnostics"] = _jsonable(out.diagnostics)
            return EXIT_HYPOTHESIS, doc
    else:
        try:
            out = reparametrize_general(P, seed=args.seed, d_max=args.d_max, trace=trace)
        except BudgetExhausted as exc:
            doc["status"] = "budget-exhausted"
            doc["reason"] = str(exc)
            doc["diagnostics"] = _jsonable(exc.diagnostics)
            return EXIT_BUDGET, doc
    doc["status"] = "ok" if out.certificate.passed else "unverified"
    doc["solution"] = solution_payload(out)
    return (EXIT_OK if out.certificate.passed else EXIT_INCONSISTENT), doc


# ---------------------------------------------------------------------------
# rendering


def render_text(doc: dict) -> str:
    lines = [f"input: ({' : '.join(doc['input']['forms'])})"]
    lines += [f"warning: {w}" for w in doc.get("warnings", [])]
    if "error" in doc:
        lines.append(f"error: {doc['error']}")
        return "\n".join(lines) + "\n"
    cmd = doc["command"]
    if cmd == "degmap":
        r = doc["result"]
        lines += [f"degMap: {r['degmap']}", f"degree: {r['degree']}",
                  f"deg R1: {r['R1_degree']}", f"deg R2: {r['R2_degree']}"]
    elif cmd == "baselocus":
        r = doc["result"]
        if r["empty"]:
            lines.append("empty base locus")
        for c in r["classes"]:
            lines.append(f"base point {c['point']}: multiplicity {c['multiplicity']}, "
                         f"min multiplicity {c['min_multiplicity']}")
        lines.append(f"total multiplicity: {r['total_multiplicity']}")
        lines.append(f"transversal: {str(r['transversal']).lower()}")
        if "surface_degree" in r:
            lines.append(f"surface degree: {r['surface_degree']}")
        if r.get("divisor"):
            lines.append(f"D = {r['divisor']}")
        elif r.get("divisor_note"):
            lines.append(f"no divisor: {r['divisor_note']}")
    else:
        if "gstar" in doc:
            g = doc["gstar"]
            lines.append(f"fiber: u* = {g['u_star']}; t2 = ({g['v_num']}) / ({g['v_den']})")
        lines.append(f"status: {doc['status']}")
        if "solution" in doc:
            s = doc["solution"]
            lines.append(f"S = ({' : '.join(s['S'])})")
            lines.append(f"Q = ({' : '.join(s['Q'])})")
            c = s["certificate"]
            lines.append("certificate: " + ", ".join(f"{k}={c[k]}" for k in
                                                     ("degmap_P", "degmap_S", "degmap_Q",
                                                      "composition_checked", "d", "mode", "seed")))
        else:
            lines.append(f"reason: {doc['reason']}")
    return "\n".join(lines) + "\n"


def render(doc: dict, fmt: str) -> str:
    if fmt == "structured":
        return json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n"
    return render_text(doc)


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="surfreparam", description="Birational reparametrization of rational surfaces.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("input", help="file with four ';'-separated forms, the forms themselves, or '-'")
        p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
        p.add_argument("--format", choices=("text", "structured"), default="text")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--trace", action="store_true", help="log pipeline steps to stderr")

    common(sub.add_parser("degmap", help="degree of the parametrization"))
    common(sub.add_parser("baselocus", help="base points, multiplicities and the divisor D"))
    rp = sub.add_parser("reparam", help="find S and a birational Q with P = Q o S")
    common(rp)
    rp.add_argument("--mode", choices=("general", "empty-base"), default="general")
    rp.add_argument("--d-max", type=int, default=None, help="largest degree of S to try (general mode)")
    rp.add_argument("--show-fiber", action="store_true", help="include the punctured fiber in the report")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    trace = None
    if args.trace:
        step = [0]

        def trace(msg: str) -> None:
            step[0] += 1
            print(f"[{step[0]:3d}] {msg}", file=sys.stderr)

        logging.basicConfig(level=logging.INFO, stream=sys.stderr, format="%(name)s: %(message)s")
    try:
        code, doc = run(args, trace)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NotTransversalError, HypothesisError) as exc:
        code, doc = EXIT_HYPOTHESIS, _error_doc(args, "hypothesis-failure", exc)
    except (SolveBudgetError, BudgetExhausted) as exc:
        code, doc = EXIT_BUDGET, _error_doc(args, "budget-exhausted", exc)
    except InconsistencyError as exc:
        code, doc = EXIT_INCONSISTENT, _error_doc(args, "inconsistency", exc)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = render(doc, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def _error_doc(args, status: str, exc: Exception) -> dict:
    P, warnings = parse_param(read_input(args.input))
    return {
        "format": FORMAT_TAG,
        "command": args.command,
        "input": {"forms": _forms(P.forms)},
        "seed": args.seed,
        "warnings": warnings,
        "status": status,
        "error": str(exc),
    }


if __name__ == "__main__":
    sys.exit(main())
