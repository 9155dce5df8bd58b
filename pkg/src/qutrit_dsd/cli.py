"""Command-line front end.

    qutrit-dsd sweep --family horodecki --param 4.3 --scenario multilocal --t-max 0.5
    qutrit-dsd crossings --config configs/horodecki43_multilocal.json
    qutrit-dsd classify --family isotropic --param 0.5 --scenario multilocal
    qutrit-dsd dump-state --family rotated --param 4.3 --output sigma.json

Exit codes: 0 success, 2 configuration error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from .analysis import RegimeReport, bound_window, classify_regime, sweep
from .channel import Mode, Scenario
from .errors import DomainError
from .states import DensityMatrix, Family

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3

CSV_HEADER = ("gamma_t", "negativity", "ccnr_value", "min_pt_eigenvalue")
FAMILIES = tuple(f.value for f in Family) + ("raw",)


class ConfigError(ValueError):
    pass


class StateIOError(OSError):
    pass


@dataclass(frozen=True)
class RunConfig:
    family: str | None = None
    family_param: float | None = None
    scenario: str = Mode.GLOBAL.value
    gamma1: float = 1.0
    gamma2: float = 1.0
    t_max: float = 1.0
    steps: int = 101
    raw_state_path: str | None = None

    def validate(self) -> None:
        if self.family not in FAMILIES:
            raise ConfigError(f"family must be one of {', '.join(FAMILIES)}; got {self.family!r}")
        if self.family == "raw":
            if not self.raw_state_path:
                raise ConfigError("family 'raw' needs --state")
        elif self.family_param is None:
            raise ConfigError(f"family {self.family!r} needs --param")
        else:
            try:
                Family(self.family).validate(self.family_param)
            except DomainError as exc:
                raise ConfigError(str(exc)) from None
        try:
            self.to_scenario()
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if self.steps < 2:
            raise ConfigError(f"steps must be >= 2, got {self.steps}")
        if not self.t_max > 0:
            raise ConfigError(f"t_max must be positive, got {self.t_max}")

    def to_scenario(self) -> Scenario:
        return Scenario.of(self.scenario, self.gamma1, self.gamma2)

    def grid(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.steps)


def load_config(path: str | Path) -> RunConfig:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise StateIOError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    known = {f.name for f in fields(RunConfig)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return RunConfig(**data)


def state_to_json(rho: DensityMatrix) -> str:
    rows = [[[float(z.real), float(z.imag)] for z in row] for row in rho.matrix]
    return json.dumps(rows, indent=1)


def load_state(path: str | Path) -> DensityMatrix:
    """Read a 9x9 state stored as rows of ``[re, im]`` pairs."""
    try:
        rows = json.loads(Path(path).read_text())
        m = np.array([[complex(re, im) for re, im in row] for row in rows])
        return DensityMatrix(m, 3, 3)
    except (OSError, ValueError, TypeError) as exc:
        raise StateIOError(f"cannot load state from {path}: {exc}") from None


def initial_state(config: RunConfig) -> DensityMatrix:
    if config.family == "raw":
        return load_state(config.raw_state_path)
    return Family(config.family).build(config.family_param)


def _fmt(x: float | None) -> str:
    return "none" if x is None else f"{x:.10g}"


def write_sweep(config: RunConfig, out) -> None:
    rho0 = initial_state(config)
    scenario = config.to_scenario()
    param = "" if config.family == "raw" else f" param={config.family_param}"
    out.write(
        f"# family={config.family}{param} scenario={scenario.mode.value} "
        f"gamma1={config.gamma1} gamma2={config.gamma2}\n"
    )
    out.write("# gamma_t = Gamma*t with Gamma = max of the effective rates\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in sweep(rho0, scenario, config.grid()):
        writer.writerow(
            f"{v:.12g}" for v in (rec.gamma_t, rec.negativity, rec.ccnr_value, rec.min_pt_eigenvalue)
        )


def regime_report(config: RunConfig) -> RegimeReport:
    scenario = config.to_scenario()
    if config.family == "raw":
        return bound_window(initial_state(config), scenario)
    return classify_regime(config.family, config.family_param, scenario)


def write_crossings(config: RunConfig, out) -> None:
    report = regime_report(config)
    out.write(f"t_N={_fmt(report.t_n)}\n")
    out.write(f"t_R={_fmt(report.t_r)}\n")
    out.write(f"regime={report.regime.value}\n")
    out.write(f"warnings={'; '.join(report.warnings) or 'none'}\n")


def write_classify(config: RunConfig, out) -> None:
    report = regime_report(config)
    out.write(f"regime={report.regime.value}\n")
    if report.window is not None:
        out.write(f"window={_fmt(report.window[0])},{_fmt(report.window[1])}\n")
    out.write(f"notes={'; '.join(report.notes) or 'none'}\n")
    out.write(f"warnings={'; '.join(report.warnings) or 'none'}\n")


def write_state(config: RunConfig, out) -> None:
    out.write(state_to_json(initial_state(config)) + "\n")


COMMANDS = {
    "sweep": write_sweep,
    "crossings": write_crossings,
    "classify": write_classify,
    "dump-state": write_state,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=FAMILIES)
    common.add_argument("--param", type=float, dest="family_param", help="alpha or p")
    common.add_argument("--scenario", choices=[m.value for m in Mode])
    common.add_argument("--gamma1", type=float, help="local dephasing rate")
    common.add_argument("--gamma2", type=float, help="collective dephasing rate")
    common.add_argument("--t-max", type=float, dest="t_max", help="Gamma t horizon of the sweep")
    common.add_argument("--steps", type=int, help="number of grid points")
    common.add_argument("--config", help="JSON file with RunConfig fields")
    common.add_argument("--state", dest="raw_state_path", help="raw 9x9 state (JSON)")
    common.add_argument("--output", help="write to this file instead of stdout")

    parser = argparse.ArgumentParser(
        prog="qutrit-dsd", description="Qutrit-qutrit dephasing and distillability sudden death."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    config = load_config(args.config) if args.config else RunConfig()
    overrides = {
        f.name: getattr(args, f.name)
        for f in fields(RunConfig)
        if getattr(args, f.name, None) is not None
    }
    config = replace(config, **overrides)
    config.validate()
    return config


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        config = resolve_config(args)
        if args.output:
            with open(args.output, "w", newline="") as out:
                COMMANDS[args.command](config, out)
        else:
            COMMANDS[args.command](config, sys.stdout)
    except (ConfigError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
