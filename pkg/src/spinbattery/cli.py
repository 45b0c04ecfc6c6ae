"""Configuration-driven command line frontend.

Subcommands run parameter sweeps over the battery model and write
plot-ready CSV or JSON tables. Every run is deterministic: the output
carries the fully resolved configuration in its header and contains no
timestamps, so identical invocations produce byte-identical files.

Config files are plain ``key = value`` lines with dotted keys matching
the CLI flags (for example ``model.n_sites = 8``); ``#`` starts a
comment. Unknown keys are rejected. Every config key can be overridden
by the corresponding flag.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from .analysis import (
    ScanDirection,
    detect_first_jump,
    find_jmax,
    ground_power_curve,
    scaling_fit,
    thermal_diff_map,
)
from .disorder import DisorderStats, StatePrep, quenched_power
from .dynamics import OptimizerConfig, evolve, power_max
from .errors import ConfigError, SpinBatteryError, ValidationError
from .model import DisorderSpec, DisorderTarget, ModelParams, build_h0, normalize, uniform_chain
from .observables import (
    DEFAULT_BIAS_SCALE,
    fidelity_scan,
    middle_pair_entanglement,
    order_parameters,
)
from .states import BiasKind, SymmetryBias, ground_state, thermal_state

WORKERS_ENV_VAR = "SPINBATTERY_WORKERS"

EXIT_OK = 0
EXIT_COMPUTE = 1
EXIT_CONFIG = 2
EXIT_IO = 3

_GRID_EPS = 1e-9

_SWEEP_COLUMN = {
    "j": "j_over_h",
    "delta": "delta_over_h",
    "gamma": "gamma",
    "mean": "mean_over_h",
}


def _enum_caster(allowed: tuple[str, ...]):
    def cast(text: str) -> str:
        value = text.strip().lower()
        if value not in allowed:
            raise ValueError(f"must be one of {', '.join(allowed)}")
        return value

    return cast


def _int_caster(text: str) -> int:
    return int(text.strip())


def _float_caster(text: str) -> float:
    return float(text.strip())


def _str_caster(text: str) -> str:
    return text.strip()


def _sizes_caster(text) -> tuple[int, ...]:
    if isinstance(text, (tuple, list)):
        return tuple(int(v) for v in text)
    parts = [p for p in str(text).replace(",", " ").split() if p]
    if not parts:
        raise ValueError("expected a comma-separated list of integers")
    return tuple(int(p) for p in parts)


# Full config schema; every entry is key -> caster. Commands validate
# which keys they actually require.
_SCHEMA = {
    "model.n_sites": _int_caster,
    "model.h": _float_caster,
    "model.gamma": _float_caster,
    "model.delta": _float_caster,
    "model.j": _float_caster,
    "model.omega": _float_caster,
    "sweep.parameter": _enum_caster(("j", "gamma", "delta", "mean")),
    "sweep.start": _float_caster,
    "sweep.stop": _float_caster,
    "sweep.step": _float_caster,
    "state.kind": _enum_caster(("ground", "thermal")),
    "state.beta": _float_caster,
    "state.bias": _enum_caster(("none", "uniform", "staggered")),
    "state.bias_eps": _float_caster,
    "disorder.target": _enum_caster(("xy", "zz")),
    "disorder.mean": _float_caster,
    "disorder.sigma": _float_caster,
    "disorder.realizations": _int_caster,
    "disorder.seed": _int_caster,
    "optimizer.grid_points": _int_caster,
    "optimizer.refine_tolerance": _float_caster,
    "thermal.beta_start": _float_caster,
    "thermal.beta_stop": _float_caster,
    "thermal.beta_step": _float_caster,
    "fidelity.delta_j": _float_caster,
    "entanglement.at": _enum_caster(("initial", "t-star")),
    "scaling.sizes": _sizes_caster,
    "scaling.j_c_infinity": _float_caster,
    "output.path": _str_caster,
    "output.format": _enum_caster(("csv", "json")),
    "workers": _int_caster,
}

_FLAG_TO_KEY = {
    "n_sites": "model.n_sites",
    "h": "model.h",
    "gamma": "model.gamma",
    "delta": "model.delta",
    "j": "model.j",
    "omega": "model.omega",
    "sweep_parameter": "sweep.parameter",
    "sweep_start": "sweep.start",
    "sweep_stop": "sweep.stop",
    "sweep_step": "sweep.step",
    "state": "state.kind",
    "beta": "state.beta",
    "bias": "state.bias",
    "bias_eps": "state.bias_eps",
    "disorder_target": "disorder.target",
    "disorder_mean": "disorder.mean",
    "disorder_sigma": "disorder.sigma",
    "realizations": "disorder.realizations",
    "seed": "disorder.seed",
    "grid_points": "optimizer.grid_points",
    "refine_tolerance": "optimizer.refine_tolerance",
    "beta_start": "thermal.beta_start",
    "beta_stop": "thermal.beta_stop",
    "beta_step": "thermal.beta_step",
    "delta_j": "fidelity.delta_j",
    "at": "entanglement.at",
    "sizes": "scaling.sizes",
    "j_c_infinity": "scaling.j_c_infinity",
    "output": "output.path",
    "format": "output.format",
    "workers": "workers",
}


def parse_config_file(path: str) -> dict:
    """Strict key = value parser; unknown keys or bad values fail loudly."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.readlines()
    resolved = {}
    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value'", line=line_no)
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _SCHEMA:
            raise ConfigError("unknown configuration key", field=key, line=line_no)
        try:
            resolved[key] = _SCHEMA[key](value)
        except ValueError as exc:
            raise ConfigError(str(exc), field=key, line=line_no) from None
    return resolved


def _apply_flags(raw: dict, args: argparse.Namespace) -> dict:
    merged = dict(raw)
    for flag, key in _FLAG_TO_KEY.items():
        value = getattr(args, flag, None)
        if value is None:
            continue
        try:
            merged[key] = _SCHEMA[key](value) if isinstance(value, str) else value
        except ValueError as exc:
            raise ConfigError(str(exc), field=key) from None
    if "workers" not in merged and os.environ.get(WORKERS_ENV_VAR):
        try:
            merged["workers"] = int(os.environ[WORKERS_ENV_VAR])
        except ValueError:
            raise ConfigError(
                f"environment variable {WORKERS_ENV_VAR} must be an integer",
                field="workers",
            ) from None
    return merged


def _build_grid(start: float, stop: float, step: float, field_prefix: str) -> np.ndarray:
    if step <= 0.0:
        raise ConfigError(f"step must be > 0, got {step}", field=f"{field_prefix}.step")
    if start >= stop:
        raise ConfigError(
            f"start must be < stop, got [{start}, {stop}]", field=f"{field_prefix}.start"
        )
    count = int(np.floor((stop - start) / step + _GRID_EPS)) + 1
    return start + step * np.arange(count)


@dataclass
class RunConfig:
    """Fully resolved settings for one subcommand invocation."""

    command: str
    model: ModelParams
    raw: dict = field(default_factory=dict)
    sweep_parameter: str | None = None
    sweep_grid: np.ndarray | None = None
    uniform_j: float = 0.0
    uniform_delta: float = 0.0
    state_kind: str = "ground"
    state_beta: float | None = None
    bias: SymmetryBias | None = None
    bias_eps_raw: float | None = None
    disorder: DisorderSpec | None = None
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    beta_grid: np.ndarray | None = None
    delta_j: float | None = None
    entangle_at: str = "initial"
    sizes: tuple[int, ...] = (4, 6, 8, 10)
    j_c_infinity: float = 1.0
    workers: int = 1
    output_path: str | None = None
    output_format: str = "csv"

    def header_items(self) -> list[tuple[str, str]]:
        items = {"command": self.command}
        for key, value in self.raw.items():
            if isinstance(value, float):
                items[key] = f"{value:.12g}"
            elif isinstance(value, tuple):
                items[key] = ",".join(str(v) for v in value)
            else:
                items[key] = str(value)
        return sorted(items.items())


_SWEEP_COMMANDS = {
    "power-sweep": ("j", "gamma", "delta"),
    "disorder-sweep": ("mean", "j"),
    "thermal-map": ("j",),
    "entanglement": ("j",),
    "order-params": ("j",),
    "fidelity-scan": ("j",),
    "scaling-fit": ("j",),
}

# Commands that can run without an explicit sweep block, with their
# default (parameter, start, stop, step).
_DEFAULT_SWEEPS = {
    "thermal-map": ("j", -3.0, 3.0, 0.25),
    "scaling-fit": ("j", 0.0, 1.5, 0.005),
}


def build_run_config(command: str, raw: dict) -> RunConfig:
    """Type-check the merged key-value map into a RunConfig."""
    raw = dict(raw)
    model = uniform_chain(
        n_sites=raw.get("model.n_sites", 8),
        j=raw.get("model.j", 0.0),
        delta=raw.get("model.delta", 0.0),
        gamma=raw.get("model.gamma", 0.0),
        h=raw.get("model.h", 1.0),
        omega=raw.get("model.omega"),
    )
    cfg = RunConfig(
        command=command,
        model=model,
        uniform_j=raw.get("model.j", 0.0),
        uniform_delta=raw.get("model.delta", 0.0),
    )

    sweep_keys = [k for k in raw if k.startswith("sweep.")]
    if sweep_keys and len(sweep_keys) < 4:
        missing = sorted(
            {"sweep.parameter", "sweep.start", "sweep.stop", "sweep.step"}
            - set(sweep_keys)
        )
        raise ConfigError("incomplete sweep block", field=missing[0])
    if not sweep_keys and command in _DEFAULT_SWEEPS:
        parameter, start, stop, step = _DEFAULT_SWEEPS[command]
        raw.update(
            {
                "sweep.parameter": parameter,
                "sweep.start": start,
                "sweep.stop": stop,
                "sweep.step": step,
            }
        )
    if command in _SWEEP_COMMANDS:
        if "sweep.parameter" not in raw:
            raise ConfigError(
                f"required for {command}", field="sweep.parameter"
            )
        parameter = raw["sweep.parameter"]
        if parameter not in _SWEEP_COMMANDS[command]:
            raise ConfigError(
                f"{command} sweeps one of {_SWEEP_COMMANDS[command]}",
                field="sweep.parameter",
            )
        cfg.sweep_parameter = parameter
        cfg.sweep_grid = _build_grid(
            raw["sweep.start"], raw["sweep.stop"], raw["sweep.step"], "sweep"
        )

    cfg.state_kind = raw.get("state.kind", "ground")
    cfg.state_beta = raw.get("state.beta")
    if cfg.state_kind == "thermal" and cfg.state_beta is None:
        raise ConfigError("thermal state requires state.beta", field="state.beta")
    if cfg.state_kind == "ground" and cfg.state_beta is not None:
        raise ConfigError("state.beta requires state.kind = thermal", field="state.beta")

    bias_kind = raw.get("state.bias", "none")
    cfg.bias_eps_raw = raw.get("state.bias_eps")
    if bias_kind != "none":
        if cfg.state_kind == "thermal":
            raise ConfigError(
                "symmetry bias applies to ground states only", field="state.bias"
            )
        kind = BiasKind.UNIFORM if bias_kind == "uniform" else BiasKind.STAGGERED
        if cfg.bias_eps_raw is not None:
            cfg.bias = SymmetryBias(kind=kind, eps=cfg.bias_eps_raw)
        else:
            cfg.bias = SymmetryBias(kind=kind)
    elif cfg.bias_eps_raw is not None:
        raise ConfigError("state.bias_eps requires state.bias", field="state.bias_eps")

    disorder_keys = [k for k in raw if k.startswith("disorder.")]
    if command == "disorder-sweep":
        if "disorder.target" not in raw:
            raise ConfigError("required for disorder-sweep", field="disorder.target")
        if "disorder.sigma" not in raw:
            raise ConfigError("required for disorder-sweep", field="disorder.sigma")
        target = (
            DisorderTarget.XY_COUPLINGS
            if raw["disorder.target"] == "xy"
            else DisorderTarget.ZZ_COUPLINGS
        )
        try:
            cfg.disorder = DisorderSpec(
                target=target,
                mean=raw.get("disorder.mean", 0.0),
                sigma=raw["disorder.sigma"],
                n_realizations=raw.get("disorder.realizations", 5000),
                master_seed=raw.get("disorder.seed", 0),
            )
        except ValidationError as exc:
            raise ConfigError(str(exc), field="disorder.sigma") from None
    elif disorder_keys:
        raise ConfigError(
            "only disorder-sweep accepts disorder settings", field=disorder_keys[0]
        )

    try:
        cfg.optimizer = OptimizerConfig(
            grid_points=raw.get("optimizer.grid_points", 2000),
            refine_tolerance=raw.get("optimizer.refine_tolerance", 1e-10),
        )
    except ValidationError as exc:
        raise ConfigError(str(exc), field="optimizer.grid_points") from None

    if command == "thermal-map":
        start = raw.setdefault("thermal.beta_start", 0.5)
        stop = raw.setdefault("thermal.beta_stop", 8.0)
        step = raw.setdefault("thermal.beta_step", 0.5)
        cfg.beta_grid = _build_grid(start, stop, step, "thermal.beta")
    elif any(k.startswith("thermal.") for k in raw):
        raise ConfigError(
            "thermal.* settings apply to thermal-map only", field="thermal.beta_start"
        )

    cfg.delta_j = raw.get("fidelity.delta_j")
    cfg.entangle_at = raw.get("entanglement.at", "initial")
    cfg.sizes = raw.get("scaling.sizes", (4, 6, 8, 10))
    cfg.j_c_infinity = raw.get("scaling.j_c_infinity", 1.0)
    cfg.workers = raw.get("workers", 1)
    if cfg.workers < 1:
        raise ConfigError(f"workers must be >= 1, got {cfg.workers}", field="workers")
    cfg.output_path = raw.get("output.path")
    cfg.output_format = raw.get("output.format", "csv")

    # Echo the resolved values (defaults included) for the output header.
    resolved = dict(raw)
    resolved.setdefault("model.n_sites", model.n_sites)
    resolved.setdefault("model.h", model.field_h)
    resolved.setdefault("model.gamma", model.anisotropy_gamma)
    resolved.setdefault("model.j", raw.get("model.j", 0.0))
    resolved.setdefault("model.delta", raw.get("model.delta", 0.0))
    resolved.setdefault("model.omega", model.charging_omega)
    resolved.setdefault("state.kind", cfg.state_kind)
    resolved.setdefault("state.bias", bias_kind)
    resolved.setdefault("optimizer.grid_points", cfg.optimizer.grid_points)
    resolved.setdefault("optimizer.refine_tolerance", cfg.optimizer.refine_tolerance)
    resolved.setdefault("workers", cfg.workers)
    resolved.setdefault("output.format", cfg.output_format)
    if command == "disorder-sweep" and cfg.disorder is not None:
        resolved.setdefault("disorder.mean", cfg.disorder.mean)
        resolved.setdefault("disorder.realizations", cfg.disorder.n_realizations)
        resolved.setdefault("disorder.seed", cfg.disorder.master_seed)
    if command == "scaling-fit":
        resolved.setdefault("scaling.sizes", cfg.sizes)
        resolved.setdefault("scaling.j_c_infinity", cfg.j_c_infinity)
    if command == "entanglement":
        resolved.setdefault("entanglement.at", cfg.entangle_at)
    cfg.raw = resolved
    return cfg


def _chain_at(model: ModelParams, parameter: str, value: float) -> ModelParams:
    bonds = max(model.n_sites - 1, 0)
    if parameter == "j":
        return dataclasses.replace(model, xy_couplings=np.full(bonds, value))
    if parameter == "delta":
        return dataclasses.replace(model, zz_couplings=np.full(bonds, value))
    if parameter == "gamma":
        return dataclasses.replace(model, anisotropy_gamma=value)
    raise ValidationError(f"unknown sweep parameter {parameter!r}")


def _initial_state(cfg: RunConfig, h_norm):
    if cfg.state_kind == "thermal":
        return thermal_state(h_norm, cfg.state_beta)
    return ground_state(h_norm, cfg.bias)


def _run_power_sweep(cfg: RunConfig):
    rows = []
    for value in cfg.sweep_grid:
        chain = _chain_at(cfg.model, cfg.sweep_parameter, value)
        h_norm = normalize(build_h0(chain))
        state = _initial_state(cfg, h_norm)
        res = power_max(state, h_norm, chain, cfg.optimizer)
        rows.append(
            [value, res.p_max, res.t_star, res.work_at_t_star, int(res.degenerate_ground)]
        )
    columns = [
        _SWEEP_COLUMN[cfg.sweep_parameter],
        "p_max",
        "t_star",
        "work_at_t_star",
        "degenerate_ground",
    ]
    return columns, rows, {}


def _run_disorder_sweep(cfg: RunConfig):
    prep = (
        StatePrep.thermal(cfg.state_beta)
        if cfg.state_kind == "thermal"
        else StatePrep.ground()
    )
    rows = []
    for value in cfg.sweep_grid:
        if cfg.sweep_parameter == "mean":
            spec = dataclasses.replace(cfg.disorder, mean=float(value))
            chain = cfg.model
        else:
            spec = cfg.disorder
            chain = _chain_at(cfg.model, "j", value)
        stats: DisorderStats = quenched_power(
            chain, spec, prep, cfg.optimizer, workers=cfg.workers
        )
        rows.append(
            [
                value,
                stats.mean_p_max,
                stats.std_error,
                stats.n_realizations,
                stats.n_failed,
                int(stats.converged_2dp),
            ]
        )
    columns = [
        _SWEEP_COLUMN[cfg.sweep_parameter],
        "mean_p_max",
        "std_error",
        "n_realizations",
        "n_failed",
        "converged_2dp",
    ]
    return columns, rows, {}


def _run_thermal_map(cfg: RunConfig):
    diffs = thermal_diff_map(cfg.model, cfg.beta_grid, cfg.sweep_grid, cfg.optimizer)
    rows = [[d.beta_over_h, d.j_over_h, d.p_t_diff] for d in diffs]
    return ["beta_over_h", "j_over_h", "p_t_diff"], rows, {}


def _run_entanglement(cfg: RunConfig):
    rows = []
    for value in cfg.sweep_grid:
        chain = _chain_at(cfg.model, "j", value)
        h_norm = normalize(build_h0(chain))
        state = _initial_state(cfg, h_norm)
        if cfg.entangle_at == "t-star":
            res = power_max(state, h_norm, chain, cfg.optimizer)
            state = evolve(state, chain, res.t_star)
        ent = middle_pair_entanglement(state, chain.n_sites)
        rows.append([value, ent.negativity, ent.log_negativity])
    return ["j_over_h", "negativity", "log_negativity"], rows, {}


def _run_order_params(cfg: RunConfig):
    kind = BiasKind.STAGGERED if (
        cfg.bias is not None and cfg.bias.kind is BiasKind.STAGGERED
    ) else BiasKind.UNIFORM
    rows = []
    for value in cfg.sweep_grid:
        chain = _chain_at(cfg.model, "j", value)
        params = order_parameters(chain, kind, cfg.bias_eps_raw)
        rows.append([value, params.m_fm, params.m_afm])
    return ["j_over_h", "m_fm", "m_afm"], rows, {}


def _run_fidelity_scan(cfg: RunConfig):
    bias = cfg.bias
    if bias is not None and cfg.bias_eps_raw is None:
        # The scan biases the raw Hamiltonian, so the default strength
        # scales with the field instead of the normalized spectrum.
        bias = SymmetryBias(
            kind=bias.kind, eps=DEFAULT_BIAS_SCALE * abs(cfg.model.field_h)
        )
    scan = fidelity_scan(cfg.model, cfg.sweep_grid, cfg.delta_j, bias)
    rows = [[j, f] for j, f in scan]
    return ["j_over_h", "fidelity"], rows, {}


def _run_scaling_fit(cfg: RunConfig):
    j_c_by_n = {}
    for n in cfg.sizes:
        base = uniform_chain(
            n_sites=n,
            j=cfg.uniform_j,
            delta=cfg.uniform_delta,
            gamma=cfg.model.anisotropy_gamma,
            h=cfg.model.field_h,
            omega=cfg.model.charging_omega,
        )
        curve = ground_power_curve(base, cfg.sweep_grid, cfg.optimizer)
        jump = detect_first_jump(curve, ScanDirection.ASCENDING)
        if jump is None:
            raise SpinBatteryError(f"no power jump detected for N={n}")
        j_c_by_n[n] = jump
    fit = scaling_fit(j_c_by_n, cfg.j_c_infinity)
    rows = [[n, fit.j_c_by_n[n]] for n in sorted(fit.j_c_by_n)]
    extra = {
        "prefactor": fit.prefactor,
        "exponent": fit.exponent,
        "r_squared": fit.r_squared,
    }
    return ["n", "j_c_over_h"], rows, extra


_RUNNERS = {
    "power-sweep": _run_power_sweep,
    "disorder-sweep": _run_disorder_sweep,
    "thermal-map": _run_thermal_map,
    "entanglement": _run_entanglement,
    "order-params": _run_order_params,
    "fidelity-scan": _run_fidelity_scan,
    "scaling-fit": _run_scaling_fit,
}


def _format_cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.12g}"


def _render_csv(cfg: RunConfig, columns, rows, extra) -> str:
    lines = [f"# {key} = {value}" for key, value in cfg.header_items()]
    lines += [f"# {key} = {_format_cell(value)}" for key, value in sorted(extra.items())]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_format_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def _render_json(cfg: RunConfig, columns, rows, extra) -> str:
    payload = {
        "config": {key: value for key, value in cfg.header_items()},
        "columns": list(columns),
        "rows": [
            [int(v) if isinstance(v, (bool, int, np.integer)) else float(v) for v in row]
            for row in rows
        ],
    }
    if extra:
        payload["fit"] = {k: float(v) for k, v in extra.items()}
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _write_output(cfg: RunConfig, columns, rows, extra) -> None:
    text = (
        _render_csv(cfg, columns, rows, extra)
        if cfg.output_format == "csv"
        else _render_json(cfg, columns, rows, extra)
    )
    if cfg.output_path is None:
        sys.stdout.write(text)
        return
    with open(cfg.output_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# --- figure recipes -------------------------------------------------------

_FAMILIES = ((0.0, 0.0), (0.0, 0.4), (1.0, 0.0), (1.0, 0.4))  # (delta, gamma)


def _recipe_jobs(name: str, overrides: dict) -> list[tuple[str, str, dict]]:
    """(filename, command, raw-config) triples for one named recipe."""
    n_real = overrides.get("disorder.realizations", 5000)
    seed = overrides.get("disorder.seed", 0)
    jobs: list[tuple[str, str, dict]] = []

    def sweep(parameter, start, stop, step):
        return {
            "sweep.parameter": parameter,
            "sweep.start": start,
            "sweep.stop": stop,
            "sweep.step": step,
        }

    if name == "fig1":
        for gamma in (0.0, 0.2, 0.4, 0.6, 0.8, 1.0):
            jobs.append(
                (
                    f"fig1_gamma{gamma:g}.csv",
                    "power-sweep",
                    {"model.gamma": gamma, **sweep("j", -2.0, 2.0, 0.01)},
                )
            )
    elif name == "fig2":
        jobs.append(("fig2_advantage.csv", "advantage-table", {}))
    elif name == "fig3":
        for n in (4, 6, 8, 10):
            jobs.append(
                (
                    f"fig3_power_n{n}.csv",
                    "power-sweep",
                    {
                        "model.n_sites": n,
                        "model.gamma": 0.1,
                        **sweep("j", 0.0, 1.5, 0.005),
                    },
                )
            )
        jobs.append(
            (
                "fig3_scaling.csv",
                "scaling-fit",
                {"model.gamma": 0.1, "scaling.sizes": (4, 6, 8, 10)},
            )
        )
    elif name == "fig4":
        for delta in (0.0, 1.0):
            for gamma in (0.0, 0.4, 0.8):
                jobs.append(
                    (
                        f"fig4_delta{delta:g}_gamma{gamma:g}.csv",
                        "entanglement",
                        {
                            "model.delta": delta,
                            "model.gamma": gamma,
                            **sweep("j", -2.0, 2.0, 0.02),
                        },
                    )
                )
    elif name == "fig5":
        for delta in (0.5, 1.0):
            for gamma in (0.0, 0.4, 0.8):
                jobs.append(
                    (
                        f"fig5_delta{delta:g}_gamma{gamma:g}.csv",
                        "power-sweep",
                        {
                            "model.delta": delta,
                            "model.gamma": gamma,
                            **sweep("j", -2.0, 2.0, 0.01),
                        },
                    )
                )
    elif name == "fig6":
        for delta, gamma in _FAMILIES:
            jobs.append(
                (
                    f"fig6_delta{delta:g}_gamma{gamma:g}.csv",
                    "thermal-map",
                    {"model.n_sites": 4, "model.delta": delta, "model.gamma": gamma},
                )
            )
    elif name == "fig7":
        for delta, gamma in _FAMILIES:
            for sigma in (0.0, 0.5, 1.0):
                jobs.append(
                    (
                        f"fig7_delta{delta:g}_gamma{gamma:g}_sigma{sigma:g}.csv",
                        "disorder-sweep",
                        {
                            "model.delta": delta,
                            "model.gamma": gamma,
                            "disorder.target": "xy",
                            "disorder.sigma": sigma,
                            "disorder.realizations": n_real,
                            "disorder.seed": seed,
                            **sweep("mean", -2.0, 2.0, 0.1),
                        },
                    )
                )
    elif name == "fig8":
        for delta, gamma in _FAMILIES:
            for sigma in (0.0, 0.5, 1.0):
                jobs.append(
                    (
                        f"fig8_deltabar{delta:g}_gamma{gamma:g}_sigma{sigma:g}.csv",
                        "disorder-sweep",
                        {
                            "model.gamma": gamma,
                            "disorder.target": "zz",
                            "disorder.mean": delta,
                            "disorder.sigma": sigma,
                            "disorder.realizations": n_real,
                            "disorder.seed": seed,
                            **sweep("j", -2.0, 2.0, 0.1),
                        },
                    )
                )
    elif name == "appendixA":
        for gamma in (0.1, 0.8):
            base = {"model.n_sites": 10, "model.gamma": gamma}
            jobs.append(
                (
                    f"appendixA_gamma{gamma:g}_order_uniform.csv",
                    "order-params",
                    {**base, "state.bias": "uniform", **sweep("j", 0.0, 2.0, 0.005)},
                )
            )
            jobs.append(
                (
                    f"appendixA_gamma{gamma:g}_order_staggered.csv",
                    "order-params",
                    {**base, "state.bias": "staggered", **sweep("j", 0.0, 2.0, 0.005)},
                )
            )
            jobs.append(
                (
                    f"appendixA_gamma{gamma:g}_fidelity.csv",
                    "fidelity-scan",
                    {**base, **sweep("j", 0.0, 2.0, 0.005)},
                )
            )
    else:
        raise ConfigError(f"unknown recipe {name!r}", field="recipe")
    return jobs


def _run_advantage_table(raw: dict) -> tuple[RunConfig, list, list, dict]:
    """Fig.-2-style table: J_max and the power advantage per (gamma, N)."""
    cfg = build_run_config("advantage-table", {k: v for k, v in raw.items() if not k.startswith("sweep.")})
    rows = []
    for gamma in np.arange(0.0, 1.0 + 1e-9, 0.1):
        for n in (4, 6, 8):
            base = uniform_chain(n_sites=n, gamma=round(float(gamma), 10), h=cfg.model.field_h)
            j_grid = _build_grid(-2.0, 2.0, 0.01, "sweep")
            curve = ground_power_curve(base, j_grid, cfg.optimizer)
            adv = find_jmax(curve)
            rows.append([gamma, n, adv.j_max_over_h, adv.p_adv, adv.relative_gain])
    columns = ["gamma", "n", "j_max_over_h", "p_adv", "relative_gain"]
    return cfg, columns, rows, {}


def run_named_recipe(name: str, output_dir: str, overrides: dict) -> list[str]:
    """Execute every job of a stored figure recipe; returns paths written."""
    jobs = _recipe_jobs(name, overrides)
    written = []
    os.makedirs(output_dir, exist_ok=True)
    for filename, command, raw in jobs:
        extras = {
            k: v
            for k, v in overrides.items()
            if k not in raw
            and (command == "disorder-sweep" or not k.startswith("disorder."))
        }
        merged = {**raw, **extras}
        path = os.path.join(output_dir, filename)
        if command == "advantage-table":
            cfg, columns, rows, extra = _run_advantage_table(merged)
        else:
            cfg = build_run_config(command, merged)
            columns, rows, extra = _RUNNERS[command](cfg)
        cfg.output_path = path
        cfg.output_format = "csv"
        _write_output(cfg, columns, rows, extra)
        written.append(path)
    return written


# --- argument parsing ------------------------------------------------------


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="key = value configuration file")
    parser.add_argument("--output", help="output file path (default: stdout)")
    parser.add_argument("--format", choices=["csv", "json"])
    parser.add_argument("--workers", type=int)
    parser.add_argument("--n-sites", dest="n_sites", type=int)
    parser.add_argument("--h", type=float)
    parser.add_argument("--gamma", type=float)
    parser.add_argument("--delta", type=float)
    parser.add_argument("--j", type=float)
    parser.add_argument("--omega", type=float)
    parser.add_argument("--sweep-parameter", dest="sweep_parameter")
    parser.add_argument("--sweep-start", dest="sweep_start", type=float)
    parser.add_argument("--sweep-stop", dest="sweep_stop", type=float)
    parser.add_argument("--sweep-step", dest="sweep_step", type=float)
    parser.add_argument("--state", choices=["ground", "thermal"])
    parser.add_argument("--beta", type=float)
    parser.add_argument("--bias", choices=["none", "uniform", "staggered"])
    parser.add_argument("--bias-eps", dest="bias_eps", type=float)
    parser.add_argument("--grid-points", dest="grid_points", type=int)
    parser.add_argument("--refine-tolerance", dest="refine_tolerance", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinbattery",
        description="Spin-chain quantum battery sweeps and diagnostics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in [
        ("power-sweep", "maximum power along a parameter sweep"),
        ("disorder-sweep", "quenched-averaged power along a sweep"),
        ("thermal-map", "thermal-minus-ground power over a (beta, J) grid"),
        ("entanglement", "middle-pair entanglement along a J sweep"),
        ("order-params", "biased x-magnetizations along a J sweep"),
        ("fidelity-scan", "ground-state overlap at adjacent couplings"),
        ("scaling-fit", "first-jump locations and their power-law fit"),
    ]:
        p = sub.add_parser(name, help=help_text)
        _add_common_flags(p)
        if name == "disorder-sweep":
            p.add_argument("--disorder-target", dest="disorder_target", choices=["xy", "zz"])
            p.add_argument("--disorder-mean", dest="disorder_mean", type=float)
            p.add_argument("--disorder-sigma", dest="disorder_sigma", type=float)
            p.add_argument("--realizations", type=int)
            p.add_argument("--seed", type=int)
        if name == "thermal-map":
            p.add_argument("--beta-start", dest="beta_start", type=float)
            p.add_argument("--beta-stop", dest="beta_stop", type=float)
            p.add_argument("--beta-step", dest="beta_step", type=float)
        if name == "fidelity-scan":
            p.add_argument("--delta-j", dest="delta_j", type=float)
        if name == "entanglement":
            p.add_argument("--at", choices=["initial", "t-star"])
        if name == "scaling-fit":
            p.add_argument("--sizes")
            p.add_argument("--j-c-infinity", dest="j_c_infinity", type=float)

    recipe = sub.add_parser("recipe", help="run a stored figure reproduction")
    recipe.add_argument(
        "name",
        choices=["fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "appendixA"],
    )
    recipe.add_argument("--output-dir", dest="output_dir", default=".")
    recipe.add_argument("--realizations", type=int)
    recipe.add_argument("--seed", type=int)
    recipe.add_argument("--workers", type=int)
    recipe.add_argument("--grid-points", dest="grid_points", type=int)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "recipe":
            overrides = {}
            if args.realizations is not None:
                overrides["disorder.realizations"] = args.realizations
            if args.seed is not None:
                overrides["disorder.seed"] = args.seed
            if args.workers is not None:
                overrides["workers"] = args.workers
            if args.grid_points is not None:
                overrides["optimizer.grid_points"] = args.grid_points
            written = run_named_recipe(args.name, args.output_dir, overrides)
            for path in written:
                print(path)
            return EXIT_OK
        raw = parse_config_file(args.config) if args.config else {}
        raw = _apply_flags(raw, args)
        cfg = build_run_config(args.command, raw)
        columns, rows, extra = _RUNNERS[args.command](cfg)
        _write_output(cfg, columns, rows, extra)
        return EXIT_OK
    except (ConfigError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except SpinBatteryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
