"""Derived figures of merit: interaction advantage, jump detection,
finite-size scaling of jump locations, and thermal-advantage maps.
"""

from __future__ import annotations

import dataclasses
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .dynamics import OptimizerConfig, power_max
from .errors import ValidationError
from .model import ModelParams, build_h0, normalize
from .states import ground_state, thermal_state

# Adjacent |dP| must exceed this multiple of the curve's median adjacent
# |dP| to count as a jump.
DEFAULT_JUMP_THRESHOLD = 5.0
# Jump detection needs grids at least this fine to separate the
# closely spaced finite-size jumps.
MAX_JUMP_SPACING = 0.01 + 1e-12
_J_ZERO_ATOL = 1e-12


class ScanDirection(Enum):
    """Which side of J = 0 a jump scan walks, moving away from zero."""

    ASCENDING = "ascending"
    DESCENDING = "descending"


@dataclass(frozen=True)
class AdvantageResult:
    """Best-over-J power compared against the non-interacting point."""

    j_max_over_h: float
    p_at_jmax: float
    p_at_zero: float
    p_adv: float
    relative_gain: float


@dataclass(frozen=True, eq=False)
class ScalingFit:
    """Log-log fit of |J^c_N - J^c_inf| against N.

    ``residuals`` are in log space, aligned with ascending N over the
    sizes that entered the fit.
    """

    j_c_by_n: dict[int, float]
    prefactor: float
    exponent: float
    r_squared: float
    residuals: np.ndarray


@dataclass(frozen=True)
class ThermalDiff:
    """P_max(thermal) - P_max(ground) at one (beta, J) grid cell."""

    beta_over_h: float
    j_over_h: float
    p_t_diff: float


def _as_curve(power_curve) -> np.ndarray:
    curve = np.asarray(power_curve, dtype=float)
    if curve.ndim != 2 or curve.shape[1] != 2:
        raise ValidationError(
            f"power curve must be an array of (J, P) pairs, got shape {curve.shape}"
        )
    return curve


def ground_power_curve(
    base: ModelParams,
    j_values,
    opt: OptimizerConfig = OptimizerConfig(),
) -> np.ndarray:
    """P_max of the ground-state battery at each uniform coupling J.

    Returns an array of (J, P_max) rows in the given J order. The chain
    is ``base`` with its xy couplings replaced by the uniform value J.
    """
    j_values = np.asarray(j_values, dtype=float)
    bonds = max(base.n_sites - 1, 0)
    rows = np.empty((len(j_values), 2))
    for i, j in enumerate(j_values):
        params = dataclasses.replace(base, xy_couplings=np.full(bonds, j))
        h_norm = normalize(build_h0(params))
        state = ground_state(h_norm)
        rows[i] = (j, power_max(state, h_norm, params, opt).p_max)
    return rows


def find_jmax(power_curve, search_range: tuple[float, float] | None = None) -> AdvantageResult:
    """Locate the curve's power maximum and compare it against J = 0.

    Ties are broken toward the smallest |J|. The curve must contain a
    J = 0 sample and at least 3 points inside ``search_range``.
    """
    curve = _as_curve(power_curve)
    zero_rows = np.flatnonzero(np.abs(curve[:, 0]) <= _J_ZERO_ATOL)
    if zero_rows.size == 0:
        raise ValidationError("power curve has no J = 0 sample")
    p_at_zero = float(curve[zero_rows[0], 1])

    if search_range is not None:
        lo, hi = search_range
        in_range = curve[(curve[:, 0] >= lo) & (curve[:, 0] <= hi)]
    else:
        in_range = curve
    if in_range.shape[0] < 3:
        raise ValidationError("need at least 3 curve points in the search range")

    p_best = np.max(in_range[:, 1])
    ties = in_range[in_range[:, 1] == p_best]
    pick = np.lexsort((ties[:, 0], np.abs(ties[:, 0])))[0]
    j_max = float(ties[pick, 0])
    p_adv = float(p_best - p_at_zero)
    if p_adv == 0.0:
        gain = 0.0
    elif p_at_zero != 0.0:
        gain = p_adv / p_at_zero
    else:
        gain = float(np.inf) if p_adv > 0 else float(-np.inf)
    return AdvantageResult(
        j_max_over_h=j_max,
        p_at_jmax=float(p_best),
        p_at_zero=p_at_zero,
        p_adv=p_adv,
        relative_gain=gain,
    )


def _jump_ray(curve: np.ndarray, direction: ScanDirection) -> tuple[np.ndarray, np.ndarray, float]:
    """Sorted scan ray starting near J = 0 plus the whole-curve median |dP|."""
    order = np.argsort(curve[:, 0])
    j_sorted = curve[order, 0]
    p_sorted = curve[order, 1]
    spacings = np.diff(j_sorted)
    if spacings.size == 0:
        raise ValidationError("jump detection needs at least 2 curve points")
    if np.max(spacings) - np.min(spacings) > 1e-6 * np.max(spacings):
        raise ValidationError("jump detection requires a uniformly spaced J grid")
    if np.max(spacings) > MAX_JUMP_SPACING:
        raise ValidationError(
            f"grid spacing {np.max(spacings):.4g} too coarse; need <= 0.01"
        )
    median_step = float(np.median(np.abs(np.diff(p_sorted))))
    if direction is ScanDirection.ASCENDING:
        mask = j_sorted >= -_J_ZERO_ATOL
        ray_j, ray_p = j_sorted[mask], p_sorted[mask]
    else:
        mask = j_sorted <= _J_ZERO_ATOL
        ray_j, ray_p = j_sorted[mask][::-1], p_sorted[mask][::-1]
    return ray_j, ray_p, median_step


def detect_jumps(
    power_curve,
    direction: ScanDirection = ScanDirection.ASCENDING,
    threshold_factor: float = DEFAULT_JUMP_THRESHOLD,
) -> np.ndarray:
    """All jump locations on one side of J = 0, nearest first.

    A jump is an adjacent |dP| exceeding ``threshold_factor`` times the
    median adjacent |dP| of the whole curve; its location is the midpoint
    of the offending pair. The threshold is relative, so rescaling the
    power axis leaves the result unchanged.
    """
    curve = _as_curve(power_curve)
    ray_j, ray_p, median_step = _jump_ray(curve, direction)
    if ray_j.size < 2:
        return np.empty(0)
    steps = np.abs(np.diff(ray_p))
    hits = np.flatnonzero(steps > threshold_factor * median_step)
    return 0.5 * (ray_j[hits] + ray_j[hits + 1])


def detect_first_jump(
    power_curve,
    direction: ScanDirection = ScanDirection.ASCENDING,
    threshold_factor: float = DEFAULT_JUMP_THRESHOLD,
) -> float | None:
    """Location of the jump closest to J = 0, or None for smooth curves."""
    jumps = detect_jumps(power_curve, direction, threshold_factor)
    return float(jumps[0]) if jumps.size else None


def scaling_fit(j_c_by_n: dict[int, float], j_c_infinity: float = 1.0) -> ScalingFit:
    """Fit |J^c_N - J^c_inf| = prefactor * N^exponent on a log-log line.

    Sizes whose jump location coincides with the asymptotic value
    contribute log(0) and are excluded with a warning; at least two
    usable sizes must remain.
    """
    sizes = sorted(int(n) for n in j_c_by_n)
    if len(sizes) < 2:
        raise ValidationError("scaling fit needs at least 2 system sizes")
    kept, gaps = [], []
    for n in sizes:
        gap = abs(float(j_c_by_n[n]) - j_c_infinity)
        if gap == 0.0:
            warnings.warn(
                f"N={n}: |J^c_N - J^c_inf| = 0 excluded from scaling fit",
                stacklevel=2,
            )
            continue
        kept.append(n)
        gaps.append(gap)
    if len(kept) < 2:
        raise ValidationError("fewer than 2 non-degenerate sizes for scaling fit")
    x = np.log(np.asarray(kept, dtype=float))
    y = np.log(np.asarray(gaps, dtype=float))
    slope, intercept = np.polyfit(x, y, 1)
    fitted = slope * x + intercept
    residuals = y - fitted
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - float(np.sum(residuals**2)) / ss_tot
    return ScalingFit(
        j_c_by_n={int(n): float(j_c_by_n[n]) for n in sizes},
        prefactor=float(np.exp(intercept)),
        exponent=float(slope),
        r_squared=r_squared,
        residuals=residuals,
    )


def thermal_diff_map(
    params: ModelParams,
    beta_grid,
    j_grid,
    opt: OptimizerConfig = OptimizerConfig(),
) -> list[ThermalDiff]:
    """P_max(thermal) - P_max(ground) over a (beta, J) grid.

    Rows iterate J in the given order with beta varying fastest, each J
    sharing one normalized Hamiltonian and one ground-state baseline.
    """
    beta_grid = np.asarray(beta_grid, dtype=float)
    j_grid = np.asarray(j_grid, dtype=float)
    if beta_grid.size == 0 or j_grid.size == 0:
        raise ValidationError("thermal map grids must be non-empty")
    if np.any(beta_grid < 0.0):
        raise ValidationError("beta grid must be non-negative")
    bonds = max(params.n_sites - 1, 0)
    out: list[ThermalDiff] = []
    for j in j_grid:
        chain = dataclasses.replace(params, xy_couplings=np.full(bonds, j))
        h_norm = normalize(build_h0(chain))
        p_ground = power_max(ground_state(h_norm), h_norm, chain, opt).p_max
        for beta in beta_grid:
            p_thermal = power_max(thermal_state(h_norm, beta), h_norm, chain, opt).p_max
            out.append(
                ThermalDiff(
                    beta_over_h=float(beta),
                    j_over_h=float(j),
                    p_t_diff=float(p_thermal - p_ground),
                )
            )
    return out
