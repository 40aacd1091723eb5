"""Command-line entry point: ``python3 -m mixedpoly <command> EXPR [options]``.

Exit codes: 0 on success, 2 when the expression does not parse (or an option
is invalid), 3 when the input is degenerate (for example a constant).  Every
error is printed to stderr as one line of JSON.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Dict, List, Optional

from . import __version__, geometry
from .parser import ParseError, parse
from .polynomial import DegenerateInputError, MixedPolynomial
from .probe import estimate_Kinf, estimate_S
from .report import (
    RunConfig,
    assemble_report,
    bound_section,
    emit_svg,
    face_entry,
    flags_section,
    geometry_section,
    input_section,
    nondeg_section,
    probe_section,
    section_json,
    to_json,
)

EXIT_OK, EXIT_PARSE, EXIT_DEGENERATE = 0, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route usage errors through the JSON diagnostics
        raise _UsageError(message)


def _radii(text: str):
    try:
        values = tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")
    return values


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mixedpoly", description="Analyse a mixed polynomial f(z, zbar).")
    p.add_argument("--version", action="version", version=f"mixedpoly {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "analyze": "full report: geometry, non-degeneracy, bound set, S and K-infinity probes, checks",
        "faces": "support, Newton polyhedron faces and the faces of Gamma^+",
        "badfaces": "bad faces of conv(supp f minus 0) with witness functionals",
        "nondeg": "per-face non-degeneracy verdicts",
        "bound": "critical values of f restricted to the bad faces",
        "probe-s": "S(f) estimate from Milnor-set chains",
        "probe-kinf": "K-infinity estimate from sphere minimisers of nu",
    }
    for name, text in helps.items():
        c = sub.add_parser(name, help=text)
        c.add_argument("expr", help="polynomial in z1..zn and zb1..zbn, e.g. 'z1*z2 + zb1^2*zb2^2'")
        c.add_argument("--n", type=int, default=None, help="ambient dimension (default: largest index used)")
        c.add_argument("--seed", type=int, default=0)
        c.add_argument("--radii", type=_radii, default=RunConfig.radii, help="comma-separated sphere radii")
        c.add_argument("--tol", type=float, default=RunConfig.tol)
        c.add_argument("--value-tol", type=float, default=RunConfig.value_tol)
        c.add_argument("--starts", type=int, default=RunConfig.starts, help="starts per radius for the probes")
        c.add_argument("--out", default=None, help="write JSON here instead of stdout")
        if name == "analyze":
            c.add_argument("--svg", default=None, help="also write an SVG of the value plane")
    return p


def _fail(code: int, kind: str, message: str, **extra) -> int:
    payload = {"error": kind, "message": message}
    payload.update(extra)
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)
    return code


def _faces(f: MixedPolynomial, cfg: RunConfig) -> str:
    g = geometry_section(f)
    g.pop("bad_faces")
    g["flags"] = flags_section(f)
    return section_json("geometry", g, cfg, input_section(f))


def _badfaces(f: MixedPolynomial, cfg: RunConfig) -> str:
    return section_json("bad_faces", [face_entry(F) for F in geometry.bad_faces(f)], cfg, input_section(f))


def _nondeg(f: MixedPolynomial, cfg: RunConfig) -> str:
    return section_json("nondegeneracy", nondeg_section(f, cfg.search()), cfg, input_section(f))


def _bound(f: MixedPolynomial, cfg: RunConfig) -> str:
    return section_json("bound_set", bound_section(f, cfg.critical(cfg.bound_phases)), cfg, input_section(f))


def _probe_s(f: MixedPolynomial, cfg: RunConfig) -> str:
    return section_json("s_estimate", probe_section(estimate_S(f, cfg.schedule())), cfg, input_section(f))


def _probe_kinf(f: MixedPolynomial, cfg: RunConfig) -> str:
    sched = cfg.schedule()
    res = estimate_Kinf(f, sched, estimate_S(f, sched))
    return section_json("kinf_estimate", probe_section(res), cfg, input_section(f))


_SECTIONS: Dict[str, Callable[[MixedPolynomial, RunConfig], str]] = {
    "faces": _faces,
    "badfaces": _badfaces,
    "nondeg": _nondeg,
    "bound": _bound,
    "probe-s": _probe_s,
    "probe-kinf": _probe_kinf,
}


def run(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        return _fail(EXIT_PARSE, "usage", str(exc))
    try:
        cfg = RunConfig(
            seed=args.seed, radii=args.radii, tol=args.tol, value_tol=args.value_tol,
            starts=args.starts, out=args.out, svg=getattr(args, "svg", None),
        )
    except ValueError as exc:
        return _fail(EXIT_PARSE, "config", str(exc))
    try:
        f = parse(args.expr, args.n)
    except ParseError as exc:
        return _fail(EXIT_PARSE, "parse", exc.message, offset=exc.offset, expected=exc.expected)
    except ValueError as exc:
        return _fail(EXIT_PARSE, "parse", str(exc))
    if f.is_zero or f.is_constant:
        return _fail(EXIT_DEGENERATE, "degenerate_input", "the polynomial is constant")
    try:
        if args.command == "analyze":
            report = assemble_report(f, cfg, text=args.expr)
            text = to_json(report)
            if cfg.svg:
                emit_svg(report, cfg.svg)
        else:
            text = _SECTIONS[args.command](f, cfg)
    except DegenerateInputError as exc:
        return _fail(EXIT_DEGENERATE, "degenerate_input", str(exc))
    except OSError as exc:
        return _fail(1, "io", str(exc))
    if cfg.out:
        try:
            with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            return _fail(1, "io", str(exc))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
