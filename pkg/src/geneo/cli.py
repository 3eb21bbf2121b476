"""Command line front end.

Exit codes: 0 success, 1 usage or input error, 2 an operator failed the
axiom check in strict mode, 3 an internal consistency check failed.
Set ``GENEO_LOG=debug`` or ``GENEO_LOG=info`` for progress on stderr;
stdout only ever carries the report.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .core import GROUP_PRESETS, TransformGroup, check_same_size
from .errors import EssentialMismatch, GeneoError
from .fileio import (dumps_csv, dumps_report, format_function, generate_random_function,
                     parse_family_file, parse_function_file)
from .matching import bottleneck
from .metrics import (DEFAULT_TOLERANCE, family_distances, max_with_label, natural_pseudo_distance,
                      verify_inequalities)
from .operators import validate_geneo
from .persistence import sublevel_diagram
from .plot import render_diagram_svg

log = logging.getLogger("geneo")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_AXIOMS = 2
EXIT_INTERNAL = 3

COMMANDS = ("diagram", "dist", "dg", "dmatch", "verify", "gen")
FORMATS = ("json", "csv", "svg")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    group: str = "cyclic"
    family: Optional[str] = None
    seed: int = 0
    trials: int = 100
    tolerance: float = DEFAULT_TOLERANCE
    output: Optional[str] = None
    format: Optional[str] = None
    strict: bool = True
    n: Optional[int] = None
    amplitude: float = 1.0
    size: int = 400

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        needed = {"diagram": 1, "dist": 2, "dg": 2, "dmatch": 2, "verify": 2, "gen": 0}[self.command]
        if len(self.inputs) != needed or any(p is None for p in self.inputs):
            raise UsageError(f"{self.command} needs {needed} input file(s)")
        if self.command in ("dmatch", "verify") and not self.family:
            raise UsageError(f"{self.command} needs --family")
        if self.group not in GROUP_PRESETS:
            raise UsageError(f"unknown group {self.group!r}")
        if self.trials < 0:
            raise UsageError("--trials must be >= 0")
        if self.command == "verify" and self.strict and self.trials < 1:
            raise UsageError("strict verify needs --trials >= 1 (or pass --no-strict)")
        if not self.tolerance >= 0:
            raise UsageError("--tolerance must be >= 0")
        if self.format == "svg" and self.command != "diagram":
            raise UsageError("svg output is only available for the diagram command")
        if self.command == "gen":
            if self.n is None or self.n < 3:
                raise UsageError("gen needs -n >= 3")
            if not self.amplitude > 0:
                raise UsageError("--amplitude must be positive")
        if self.size < 100:
            raise UsageError("--size must be at least 100")
        return self


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="geneo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common_out(p, formats=("json", "csv")):
        p.add_argument("-o", "--output", help="output path (default: stdout)")
        p.add_argument("--format", choices=formats)

    p = sub.add_parser("diagram", help="sublevel persistence diagram of a function")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--size", type=int, default=400, help="SVG size in pixels")
    common_out(p, FORMATS)

    p = sub.add_parser("dist", help="matching distance of the raw diagrams")
    p.add_argument("-a", required=True)
    p.add_argument("-b", required=True)
    common_out(p)

    p = sub.add_parser("dg", help="natural pseudo-distance under a grid group")
    p.add_argument("-a", required=True)
    p.add_argument("-b", required=True)
    p.add_argument("--group", choices=GROUP_PRESETS, default="cyclic")
    common_out(p)

    p = sub.add_parser("dmatch", help="family matching pseudo-distance")
    p.add_argument("-a", required=True)
    p.add_argument("-b", required=True)
    p.add_argument("--family", required=True)
    common_out(p)

    p = sub.add_parser("verify", help="check D_family <= d_G <= sup norm")
    p.add_argument("-a", required=True)
    p.add_argument("-b", required=True)
    p.add_argument("--group", choices=GROUP_PRESETS, default="cyclic")
    p.add_argument("--family", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.add_argument("--strict", dest="strict", action="store_true", default=True)
    p.add_argument("--no-strict", dest="strict", action="store_false",
                   help="report axiom failures as warnings instead of aborting")
    common_out(p)

    p = sub.add_parser("gen", help="seeded random function (SplitMix64)")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--amplitude", type=float, default=1.0)
    p.add_argument("-o", "--output")
    p.add_argument("--format", choices=("json", "csv"))
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cmd = ns.command
    if cmd == "diagram":
        inputs = [ns.input]
    elif cmd == "gen":
        inputs = []
    else:
        inputs = [ns.a, ns.b]
    fmt = ns.format
    if fmt is None and ns.output:
        suffix = Path(ns.output).suffix.lower().lstrip(".")
        if suffix in FORMATS:
            fmt = suffix
    return RunConfig(
        command=cmd,
        inputs=inputs,
        group=getattr(ns, "group", "cyclic"),
        family=getattr(ns, "family", None),
        seed=getattr(ns, "seed", 0),
        trials=getattr(ns, "trials", 100),
        tolerance=getattr(ns, "tolerance", DEFAULT_TOLERANCE),
        output=ns.output,
        format=fmt,
        strict=getattr(ns, "strict", True),
        n=getattr(ns, "n", None),
        amplitude=getattr(ns, "amplitude", 1.0),
        size=getattr(ns, "size", 400),
    ).validate()


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _render(payload: dict, fmt: Optional[str]) -> str:
    return dumps_csv(payload) if fmt == "csv" else dumps_report(payload)


def run(cfg: RunConfig) -> int:
    if cfg.command == "gen":
        phi = generate_random_function(cfg.n, cfg.seed, cfg.amplitude)
        _emit(format_function(phi, cfg.format or "csv"), cfg.output)
        return EXIT_OK

    phis = [parse_function_file(p) for p in cfg.inputs]
    log.info("loaded %d function(s) with N=%s", len(phis), [p.n for p in phis])

    if cfg.command == "diagram":
        diagram = sublevel_diagram(phis[0])
        if cfg.format == "svg":
            _emit(render_diagram_svg(diagram, cfg.size), cfg.output)
        else:
            _emit(_render(diagram.to_dict(), cfg.format), cfg.output)
        return EXIT_OK

    phi1, phi2 = phis
    if cfg.command == "dist":
        result = bottleneck(sublevel_diagram(phi1), sublevel_diagram(phi2))
        _emit(_render(result.to_dict(), cfg.format), cfg.output)
        return EXIT_OK

    if cfg.command == "dg":
        check_same_size(phi1.n, phi2.n)
        value, g = natural_pseudo_distance(phi1, phi2, TransformGroup(cfg.group, phi1.n))
        _emit(_render({"group": cfg.group, "d_G": value, "argmin_g": g.to_dict()}, cfg.format),
              cfg.output)
        return EXIT_OK

    family = parse_family_file(cfg.family)
    log.info("family %s with %d operator(s)", family.name, len(family))

    if cfg.command == "dmatch":
        per_op = family_distances(phi1, phi2, family)
        best, label = max_with_label(per_op)
        payload = {"D_family_match": best, "argmax_op": label,
                   "per_op_distances": [{"op": n, "distance": d} for n, d in per_op]}
        _emit(_render(payload, cfg.format), cfg.output)
        return EXIT_OK

    # verify
    check_same_size(phi1.n, phi2.n)
    group = TransformGroup(cfg.group, phi1.n)
    if cfg.strict:
        for index, op in enumerate(family):
            rep = validate_geneo(op, group, trials=cfg.trials, seed=cfg.seed)
            if not rep.passed:
                print(f"geneo: operator {index} ({op.label}) is not a GINO for the {cfg.group} "
                      f"group: equivariance violation {rep.max_equivariance_violation:.6g}, "
                      f"expansiveness ratio {rep.max_expansiveness_ratio:.6g}",
                      file=sys.stderr)
                return EXIT_AXIOMS
    report = verify_inequalities(phi1, phi2, group, family, cfg.tolerance,
                                 seed=cfg.seed, trials=cfg.trials)
    if not report.axioms_ok:
        log.warning("some operators failed the axiom check; the lower bound is not guaranteed")
    _emit(_render(report.to_dict(), cfg.format), cfg.output)
    if not (report.chain_ok and report.stability_ok):
        print("geneo: inequality chain or stability check failed", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


def _configure_logging():
    logger = logging.getLogger("geneo")
    for h in [h for h in logger.handlers if getattr(h, "_geneo_cli", False)]:
        logger.removeHandler(h)
    level = os.environ.get("GENEO_LOG", "").strip().lower()
    if level not in ("debug", "info"):
        return
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    handler._geneo_cli = True
    logger.addHandler(handler)
    logger.setLevel(getattr(logging, level.upper()))


def main(argv=None) -> int:
    _configure_logging()
    try:
        cfg = config_from_args(build_parser().parse_args(argv))
        return run(cfg)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except EssentialMismatch as exc:
        print(f"geneo: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except GeneoError as exc:
        print(f"geneo: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
