"""Command-line front end: config parsing, experiment dispatch, CSV emission.

Exit codes: 0 on success, 1 on any configuration or usage problem, 2 when an
internal numerical cross-check fails.  All outputs land in the configured
output directory: ``<experiment>.csv`` plus ``<experiment>.meta.json``.
"""

import argparse
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from .quantum_core import STATE_LABELS, axis_time_to_ps
from .fmo_model import (
    DEFAULT_RECOMB_RATE_CM,
    DEFAULT_SINK_RATE_CM,
    INITIAL_STATE_LABELS,
    build_coherent_model,
    build_model,
    dephasing_axis_rate,
    initial_state,
)
from .dynamics import lindblad_propagator_for, vec
from .leggett_garg import NumericalConsistencyError
from . import experiments as ex

EXPERIMENTS = (
    "coherent-scan",
    "table2",
    "dephasing-sweep",
    "robustness",
    "trapping-variants",
    "propagate",
)
PATTERN_CHOICES = ("base", "flip1", "flip2", "flip3", "min")


class ConfigError(ValueError):
    """Invalid configuration text, value, or combination."""


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved run parameters; defaults reproduce the published setup."""

    experiment: str = ""
    initial_state: str = "mix16"
    sites: tuple[int, ...] = (1, 2, 3, 4, 5, 6, 7)
    grid_points: int = ex.FINE_GRID_POINTS
    seed: int = 0
    out: str = "."
    pattern: str = "flip2"
    trials: int = 10
    sigma2: float = 2.0
    gamma_max: float = ex.GAMMA_AXIS_MAX
    gamma_step: float = ex.GAMMA_AXIS_MAX / ex.GAMMA_AXIS_STEPS
    t_max: float = 5.0
    step: float = 0.01
    hamiltonian_file: str = ""
    gamma_deph_per_ps: float = 0.0
    gamma_sink_cm: float = DEFAULT_SINK_RATE_CM
    gamma_recomb_cm: float = DEFAULT_RECOMB_RATE_CM


# Section layout of the config file; every key is typed and strict.
RUN_KEYS = (
    "experiment",
    "initial_state",
    "sites",
    "grid_points",
    "seed",
    "out",
    "pattern",
    "trials",
    "sigma2",
    "gamma_max",
    "gamma_step",
    "t_max",
    "step",
)
MODEL_KEYS = ("hamiltonian_file", "gamma_deph_per_ps", "gamma_sink_cm", "gamma_recomb_cm")
SECTION_KEYS = {"run": RUN_KEYS, "model": MODEL_KEYS}

# Keys each experiment may deviate from defaults on; everything else erroring
# keeps a config from silently configuring physics the experiment ignores.
_COMMON = ("experiment", "out", "seed")
APPLICABLE_KEYS = {
    "coherent-scan": _COMMON + ("initial_state", "sites", "grid_points", "pattern",
                                "hamiltonian_file"),
    "table2": _COMMON + ("grid_points", "pattern", "hamiltonian_file"),
    "dephasing-sweep": _COMMON + ("initial_state", "pattern", "gamma_max", "gamma_step",
                                  "hamiltonian_file", "gamma_sink_cm", "gamma_recomb_cm"),
    "robustness": _COMMON + ("trials", "sigma2", "pattern", "hamiltonian_file",
                             "gamma_sink_cm", "gamma_recomb_cm"),
    "trapping-variants": _COMMON + ("pattern", "hamiltonian_file", "gamma_recomb_cm"),
    "propagate": _COMMON + ("initial_state", "t_max", "step", "hamiltonian_file",
                            "gamma_deph_per_ps", "gamma_sink_cm", "gamma_recomb_cm"),
}


def _parse_int(raw: str, key: str, line: int, minimum: int) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"line {line}: {key} expects an integer, got {raw!r}") from None
    if value < minimum:
        raise ConfigError(f"line {line}: {key} must be >= {minimum}, got {value}")
    return value


def _parse_float(raw: str, key: str, line: int, minimum=None, strict: bool = False):
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"line {line}: {key} expects a number, got {raw!r}") from None
    if not np.isfinite(value):
        raise ConfigError(f"line {line}: {key} must be finite, got {raw}")
    if minimum is not None and (value < minimum or (strict and value == minimum)):
        bound = "greater than" if strict else "at least"
        raise ConfigError(f"line {line}: {key} must be {bound} {minimum}, got {value}")
    return value


def _parse_choice(raw: str, key: str, line: int, choices) -> str:
    if raw not in choices:
        allowed = ", ".join(choices)
        raise ConfigError(f"line {line}: {key} must be one of {allowed}; got {raw!r}")
    return raw


def _parse_sites(raw: str, line: int) -> tuple[int, ...]:
    parts = [p.strip() for p in raw.split(",") if p.strip()]
    if not parts:
        raise ConfigError(f"line {line}: sites must list at least one site")
    sites = []
    for part in parts:
        site = _parse_int(part, "sites", line, 1)
        if site > 7:
            raise ConfigError(f"line {line}: sites must lie in 1..7, got {site}")
        if sites and site <= sites[-1]:
            raise ConfigError(f"line {line}: sites must be strictly ascending")
        sites.append(site)
    return tuple(sites)


def _parse_value(section: str, key: str, raw: str, line: int):
    if key == "experiment":
        return _parse_choice(raw, key, line, EXPERIMENTS)
    if key == "initial_state":
        return _parse_choice(raw, key, line, INITIAL_STATE_LABELS)
    if key == "pattern":
        return _parse_choice(raw, key, line, PATTERN_CHOICES)
    if key == "sites":
        return _parse_sites(raw, line)
    if key in ("grid_points", "trials"):
        return _parse_int(raw, key, line, 1)
    if key == "seed":
        return _parse_int(raw, key, line, 0)
    if key == "sigma2":
        return _parse_float(raw, key, line, minimum=0.0)
    if key in ("gamma_max", "gamma_step", "t_max", "step"):
        return _parse_float(raw, key, line, minimum=0.0, strict=True)
    if key in ("gamma_deph_per_ps", "gamma_sink_cm", "gamma_recomb_cm"):
        return _parse_float(raw, key, line, minimum=0.0)
    if key in ("out", "hamiltonian_file"):
        if not raw:
            raise ConfigError(f"line {line}: {key} must not be empty")
        return raw
    raise ConfigError(f"line {line}: unknown key {key!r} in section [{section}]")


def parse_config(text: str) -> RunConfig:
    """Parse ``[section]`` / ``key = value`` text into a validated RunConfig.

    Unknown sections or keys, malformed or out-of-range values, and duplicate
    keys are all errors naming the offending line.
    """
    values: dict[str, object] = {}
    section = None
    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in SECTION_KEYS:
                known = ", ".join(sorted(SECTION_KEYS))
                raise ConfigError(
                    f"line {line_number}: unknown section [{section}] (known: {known})"
                )
            continue
        if "=" not in line:
            raise ConfigError(f"line {line_number}: expected key = value, got {line!r}")
        if section is None:
            raise ConfigError(f"line {line_number}: key outside any [section]")
        key, raw_value = (part.strip() for part in line.split("=", 1))
        if key not in SECTION_KEYS[section]:
            raise ConfigError(
                f"line {line_number}: unknown key {key!r} in section [{section}]"
            )
        if key in values:
            raise ConfigError(f"line {line_number}: duplicate key {key!r}")
        values[key] = _parse_value(section, key, raw_value, line_number)
    return RunConfig(**values)


def render_config(config: RunConfig) -> str:
    """Render a RunConfig as config text; parse_config inverts this exactly."""
    def fmt(value):
        if isinstance(value, tuple):
            return ",".join(str(v) for v in value)
        if isinstance(value, float):
            return repr(value)
        return str(value)

    lines = ["[run]"]
    for key in RUN_KEYS:
        if key == "experiment" and not config.experiment:
            continue
        lines.append(f"{key} = {fmt(getattr(config, key))}")
    lines.append("[model]")
    for key in MODEL_KEYS:
        if key == "hamiltonian_file" and not config.hamiltonian_file:
            continue
        lines.append(f"{key} = {fmt(getattr(config, key))}")
    return "\n".join(lines) + "\n"


def _check_applicability(config: RunConfig) -> None:
    defaults = RunConfig()
    allowed = APPLICABLE_KEYS[config.experiment]
    for f in fields(RunConfig):
        if f.name in allowed:
            continue
        if getattr(config, f.name) != getattr(defaults, f.name):
            raise ConfigError(
                f"config key {f.name!r} does not apply to experiment {config.experiment!r}"
            )


def load_hamiltonian_file(path: str) -> np.ndarray:
    """Read a 7x7 Hamiltonian (cm^-1) from comma- or whitespace-separated text."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise ConfigError(f"cannot read hamiltonian_file {path!r}: {err}") from None
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.replace(",", " ").split()
        try:
            rows.append([float(p) for p in parts])
        except ValueError:
            raise ConfigError(f"hamiltonian_file {path!r}: non-numeric entry in {line!r}") from None
    matrix = np.asarray(rows, dtype=float)
    if matrix.shape != (7, 7):
        raise ConfigError(
            f"hamiltonian_file {path!r}: expected a 7x7 matrix, got shape {matrix.shape}"
        )
    return matrix


def _gamma_grid(config: RunConfig) -> list[float]:
    steps = round(config.gamma_max / config.gamma_step)
    if steps < 1 or abs(steps * config.gamma_step - config.gamma_max) > 1e-9:
        raise ConfigError(
            f"gamma_step {config.gamma_step} must divide gamma_max {config.gamma_max}"
        )
    return [i * config.gamma_max / steps for i in range(steps + 1)]


def _run_propagate(config: RunConfig, hamiltonian_cm, out_dir: Path) -> dict:
    model = build_model(
        dephasing_axis_rate(config.gamma_deph_per_ps),
        hamiltonian_cm=hamiltonian_cm,
        gamma_sink_cm=config.gamma_sink_cm,
        gamma_recomb_cm=config.gamma_recomb_cm,
    )
    steps = int(config.t_max / config.step + 1e-9)
    propagator = lindblad_propagator_for(model)
    step_matrix = propagator.step_matrix(axis_time_to_ps(config.step))
    state = vec(initial_state(config.initial_state).realize())
    header = "t_ps," + ",".join(f"pop_{label}" for label in STATE_LABELS)
    lines = [header]
    for i in range(steps + 1):
        rho = state.reshape((9, 9), order="F")
        populations = np.real(np.diag(rho))
        t = i * config.step
        lines.append(",".join([ex.format_float(t)] + [ex.format_float(p) for p in populations]))
        state = step_matrix @ state
    path = out_dir / "propagate.csv"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return {
        "rows": steps + 1,
        "t_max": config.t_max,
        "step": config.step,
        "initial_state": config.initial_state,
        "gamma_deph_per_ps_axis": config.gamma_deph_per_ps,
        "model": ex.model_metadata(model),
    }


def run_experiment(config: RunConfig) -> None:
    """Execute the configured experiment, writing CSV plus metadata sidecar."""
    if not config.experiment:
        raise ConfigError("no experiment selected (positional argument or config key)")
    _check_applicability(config)
    out_dir = Path(config.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    hamiltonian = (
        load_hamiltonian_file(config.hamiltonian_file) if config.hamiltonian_file else None
    )
    name = config.experiment
    meta: dict = {
        "experiment": name,
        "pattern": config.pattern,
        "pattern_note": (
            "strongest-violation intervals always use signs (-1,-1,+1); "
            "'min' reports the minimum K over all four sign patterns"
        ),
        "seed": config.seed,
        "config": render_config(config),
    }

    if name == "propagate":
        meta.update(_run_propagate(config, hamiltonian, out_dir))
        ex.write_metadata(out_dir / "propagate.meta.json", meta)
        return

    if name == "coherent-scan":
        grid = ex.fine_dt_grid(config.grid_points)
        records = ex.run_coherent_scan(
            config.initial_state, config.sites, grid, config.pattern, hamiltonian
        )
        meta.update(
            {
                "dt_grid": {"points": config.grid_points, "max": ex.DT_MAX},
                "sites": list(config.sites),
                "initial_state": config.initial_state,
                "model": ex.model_metadata(build_coherent_model(hamiltonian)),
            }
        )
    elif name == "table2":
        grid = ex.fine_dt_grid(config.grid_points)
        records = ex.run_table2(ex.TABLE2_STATES, grid, config.pattern, hamiltonian)
        meta.update(
            {
                "dt_grid": {"points": config.grid_points, "max": ex.DT_MAX},
                "initial_states": list(ex.TABLE2_STATES) + ["maxmix7"],
                "pattern_floor_all_patterns": ex.table2_pattern_floor(
                    ex.TABLE2_STATES, grid, hamiltonian
                ),
                "model": ex.model_metadata(build_coherent_model(hamiltonian)),
            }
        )
    elif name == "dephasing-sweep":
        gammas = _gamma_grid(config)
        records = ex.run_dephasing_sweep(
            config.initial_state,
            gammas,
            None,
            config.pattern,
            hamiltonian,
            config.gamma_sink_cm,
            config.gamma_recomb_cm,
        )
        meta.update(
            {
                "gamma_axis": {"max": config.gamma_max, "step": config.gamma_step},
                "initial_state": config.initial_state,
                "dt_table_reference_grid": ex.reference_intervals(
                    config.initial_state, hamiltonian
                ),
                "dt_table_fine_grid": ex.fine_intervals(
                    config.initial_state, ex.FINE_GRID_POINTS, hamiltonian
                ),
                "dt_table_used": "reference_grid",
                "model": ex.model_metadata(
                    build_model(
                        0.0,
                        hamiltonian_cm=hamiltonian,
                        gamma_sink_cm=config.gamma_sink_cm,
                        gamma_recomb_cm=config.gamma_recomb_cm,
                    )
                ),
            }
        )
    elif name == "robustness":
        result = ex.run_robustness(
            config.trials,
            config.sigma2,
            config.seed,
            config.pattern,
            hamiltonian,
            config.gamma_sink_cm,
            config.gamma_recomb_cm,
        )
        records = list(result.records)
        meta.update(
            {
                "trials": result.trials,
                "sigma2": result.sigma2,
                "seed_scheme": "trial i draws with seed = seed + i",
                "gamma_per_ps": ex.ROOM_TEMPERATURE_GAMMA,
                "summary": {
                    "max_abs_shift": result.max_abs_shift,
                    "all_signs_preserved": result.all_signs_preserved,
                    "pairs": {
                        f"{p.initial_state}/{p.observable}": {
                            "k_nominal": p.k_nominal,
                            "max_abs_shift": p.max_abs_shift,
                            "sign_preserved": p.sign_preserved,
                        }
                        for p in result.pairs
                    },
                },
                "model": ex.model_metadata(
                    build_model(
                        0.0,
                        hamiltonian_cm=hamiltonian,
                        gamma_sink_cm=config.gamma_sink_cm,
                        gamma_recomb_cm=config.gamma_recomb_cm,
                    )
                ),
            }
        )
    elif name == "trapping-variants":
        records = ex.run_trapping_variants(None, config.pattern, hamiltonian,
                                           config.gamma_recomb_cm)
        meta.update(
            {
                "rates_per_ps": ex.trapping_variant_rates(),
                "gamma_per_ps": ex.ROOM_TEMPERATURE_GAMMA,
                "model": ex.model_metadata(
                    build_model(
                        0.0,
                        hamiltonian_cm=hamiltonian,
                        gamma_recomb_cm=config.gamma_recomb_cm,
                    )
                ),
            }
        )
    else:
        raise ConfigError(f"unknown experiment {name!r}")

    ex.write_records_csv(out_dir / f"{name}.csv", records)
    ex.write_metadata(out_dir / f"{name}.meta.json", meta)


class _Parser(argparse.ArgumentParser):
    # Usage problems must exit 1, not argparse's default 2.
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="lgfmo",
        description="Leggett-Garg sweeps for the nine-level FMO model.",
    )
    parser.add_argument("experiment", nargs="?", choices=EXPERIMENTS,
                        help="experiment to run (may also come from --config)")
    parser.add_argument("--config", metavar="PATH", help="config file path")
    parser.add_argument("--out", metavar="DIR", help="output directory")
    parser.add_argument("--seed", type=int, metavar="N", help="base RNG seed")
    parser.add_argument("--pattern", choices=PATTERN_CHOICES, help="sign pattern")
    parser.add_argument("--grid-points", type=int, metavar="N",
                        help="interval-grid points over (0, 5]")
    parser.add_argument("--initial", metavar="LABEL", help="initial state label")
    parser.add_argument("--t-max", type=float, metavar="T", help="trajectory length")
    parser.add_argument("--step", type=float, metavar="DT", help="trajectory step")
    return parser


def _apply_flags(config: RunConfig, args: argparse.Namespace) -> RunConfig:
    updates: dict[str, object] = {}
    if args.experiment:
        updates["experiment"] = args.experiment
    if args.out is not None:
        if not args.out:
            raise ConfigError("--out must not be empty")
        updates["out"] = args.out
    if args.seed is not None:
        if args.seed < 0:
            raise ConfigError(f"--seed must be >= 0, got {args.seed}")
        updates["seed"] = args.seed
    if args.pattern is not None:
        updates["pattern"] = args.pattern
    if args.grid_points is not None:
        if args.grid_points < 1:
            raise ConfigError(f"--grid-points must be >= 1, got {args.grid_points}")
        updates["grid_points"] = args.grid_points
    if args.initial is not None:
        if args.initial not in INITIAL_STATE_LABELS:
            allowed = ", ".join(INITIAL_STATE_LABELS)
            raise ConfigError(f"--initial must be one of {allowed}; got {args.initial!r}")
        updates["initial_state"] = args.initial
    if args.t_max is not None:
        if not (args.t_max > 0.0):
            raise ConfigError(f"--t-max must be positive, got {args.t_max}")
        updates["t_max"] = args.t_max
    if args.step is not None:
        if not (args.step > 0.0):
            raise ConfigError(f"--step must be positive, got {args.step}")
        updates["step"] = args.step
    return replace(config, **updates)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.config is not None:
            try:
                text = Path(args.config).read_text(encoding="utf-8")
            except OSError as err:
                raise ConfigError(f"cannot read config {args.config!r}: {err}") from None
            config = parse_config(text)
        else:
            config = RunConfig()
        config = _apply_flags(config, args)
        run_experiment(config)
    except ConfigError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except NumericalConsistencyError as err:
        print(f"numerical consistency failure: {err}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
