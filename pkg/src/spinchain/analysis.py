"""Detuning and spin-rate sweeps and the derived transmission metrics.

The probe detuning axis delta_p [Hz] is referenced so that the transparency
peak of the chain at rest sits at delta_p = 0: the internal probe-pump
offset is eta = 2*pi*(omega_m_1 + delta_p).  Group delay is the derivative
of the transmission phase with respect to the probe frequency,
tau_g = d arg(t_p) / d eta, positive for slow light.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .constants import TWO_PI, angular
from .errors import SingularSystem, SpinchainError, SweepError, ZeroBaseline
from .params import ChainConfig
from .response import solve_response
from .steady import DEFAULT_MAX_ITER, DEFAULT_TOL, SteadyState, solve_steady

THREADS_ENV = "SPINCHAIN_THREADS"
DEFAULT_GD_STEP = 1e3  # Hz, well below the ~MHz transparency window
_GD_CONV_RTOL = 1e-3
_GD_MAX_HALVINGS = 6
_ZERO_T = 1e-15
_ZERO_TAU = 1e-18


def _thread_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise SpinchainError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
        if n >= 1:
            return n
    return os.cpu_count() or 1


@dataclass(frozen=True)
class SpectrumResult:
    """Swept observables over a probe-detuning grid.

    grid : delta_p values [Hz], strictly monotonic, same orientation as the
        input grid.
    transmission : T at each point.
    phase : unwrapped arg(t_p) [rad], continuous along the grid.
    tau_g : group delay [s] from finite differences of the phase.
    metadata : config snapshot and solver tolerances.
    """

    grid: np.ndarray
    transmission: np.ndarray
    phase: np.ndarray
    tau_g: np.ndarray
    metadata: dict

    def __post_init__(self) -> None:
        for arr in (self.grid, self.transmission, self.phase, self.tau_g):
            arr.setflags(write=False)


@dataclass(frozen=True)
class MetricPoint:
    """Spin-rate-sweep metrics at one spin magnitude.

    ef is the transmission enhancement over the non-spinning baseline minus
    one; gd the same ratio for the group delay; tau_g the group delay [s].
    ef >= -1 by construction (ratio of nonnegative rates minus one).
    """

    omega_abs: float
    ef: float
    gd: float
    tau_g: float


def _transmission_and_phase(
    ss: SteadyState, config: ChainConfig, eta: float, spacing: float
) -> tuple[float, float]:
    try:
        point = solve_response(ss, config, eta)
    except SingularSystem:
        point = solve_response(ss, config, eta + 1e-9 * spacing)
    return point.transmission, math.atan2(point.t_p.imag, point.t_p.real)


def sweep_spectrum(
    config: ChainConfig,
    grid_hz: Sequence[float] | np.ndarray,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> SpectrumResult:
    """Solve the steady state once, then the response at every grid point.

    The grid must be strictly monotonic with at least 3 points.  Points are
    independent and evaluated in parallel (capped by the SPINCHAIN_THREADS
    environment variable); aggregation preserves grid order regardless of
    execution order.  A singular point is retried once, perturbed by 1e-9 of
    the grid spacing.  Solver errors propagate with the offending grid index.
    """
    grid = np.asarray(grid_hz, dtype=float)
    if grid.ndim != 1 or grid.size < 3:
        raise SpinchainError("grid must be one-dimensional with at least 3 points")
    diffs = np.diff(grid)
    if np.all(diffs > 0):
        ascending = True
    elif np.all(diffs < 0):
        ascending = False
    else:
        raise SpinchainError("grid must be strictly monotonic")
    work = grid if ascending else grid[::-1]

    ss = solve_steady(config, tol=tol, max_iter=max_iter)
    omega_m = config.resonators[0].omega_m
    etas = TWO_PI * (omega_m + work)
    spacing = float(np.min(np.abs(np.diff(etas))))

    def point(i: int) -> tuple[float, float]:
        try:
            return _transmission_and_phase(ss, config, float(etas[i]), spacing)
        except SpinchainError as exc:
            idx = i if ascending else grid.size - 1 - i
            raise SweepError(idx, exc) from exc

    n_threads = min(_thread_count(), grid.size)
    if n_threads > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            results = list(pool.map(point, range(grid.size)))
    else:
        results = [point(i) for i in range(grid.size)]

    transmission = np.array([r[0] for r in results])
    phase = np.unwrap(np.array([r[1] for r in results]))
    jumps = np.abs(np.diff(phase))
    if jumps.size and float(jumps.max()) >= math.pi:
        raise SpinchainError(
            "unwrapped phase jumps by >= pi between grid points; "
            "the grid is too coarse to resolve the phase"
        )
    tau = np.empty_like(phase)
    detas = np.diff(etas)
    tau[1:-1] = (phase[2:] - phase[:-2]) / (etas[2:] - etas[:-2])
    tau[0] = (phase[1] - phase[0]) / detas[0]
    tau[-1] = (phase[-1] - phase[-2]) / detas[-1]

    if not ascending:
        transmission = transmission[::-1]
        phase = phase[::-1]
        tau = tau[::-1]

    from .configio import config_to_dict  # local import to avoid a cycle

    meta = {
        "config": config_to_dict(config),
        "tol": tol,
        "max_iter": max_iter,
        "steady_residual": ss.residual,
        "steady_iterations": ss.iterations,
    }
    return SpectrumResult(
        grid=grid.copy(),
        transmission=transmission,
        phase=phase,
        tau_g=tau,
        metadata=meta,
    )


def transmission_at(
    config: ChainConfig,
    delta_p_hz: float,
    ss: SteadyState | None = None,
) -> float:
    """Probe transmission T at a single detuning [Hz]."""
    if ss is None:
        ss = solve_steady(config)
    eta = angular(config.resonators[0].omega_m + delta_p_hz)
    return solve_response(ss, config, eta).transmission


def _check_same_but_spins(config_a: ChainConfig, config_b: ChainConfig) -> None:
    if config_a.at_rest() != config_b.at_rest():
        raise SpinchainError(
            "configs must be identical apart from their spin rates"
        )


def enhancement_factor(
    config_spinning: ChainConfig, config_rest: ChainConfig, delta_p_hz: float
) -> float:
    """T(spinning)/T(rest) - 1 at a fixed probe detuning.

    Raises ZeroBaseline when the non-spinning transmission is below 1e-15.
    """
    _check_same_but_spins(config_spinning, config_rest)
    t_rest = transmission_at(config_rest, delta_p_hz)
    if t_rest < _ZERO_T:
        raise ZeroBaseline(t_rest)
    return transmission_at(config_spinning, delta_p_hz) / t_rest - 1.0


def group_delay(
    config: ChainConfig,
    delta_p_hz: float,
    step_hz: float = DEFAULT_GD_STEP,
    ss: SteadyState | None = None,
) -> float:
    """Group delay tau_g = d arg(t_p)/d eta at one detuning [s].

    Central difference of the unwrapped phase with the given step.  The step
    is halved (at most 6 times) until successive estimates agree to 1e-3
    relative; the finest estimate is returned.
    """
    if step_hz <= 0:
        raise SpinchainError("step_hz must be positive")
    if ss is None:
        ss = solve_steady(config)
    omega_m = config.resonators[0].omega_m

    def tau(h: float) -> float:
        phases = []
        for dp in (delta_p_hz - h, delta_p_hz, delta_p_hz + h):
            point = solve_response(ss, config, angular(omega_m + dp))
            phases.append(math.atan2(point.t_p.imag, point.t_p.real))
        ph = np.unwrap(np.array(phases))
        return float((ph[2] - ph[0]) / (2.0 * TWO_PI * h))

    h = step_hz
    previous = tau(h)
    for _ in range(_GD_MAX_HALVINGS):
        h /= 2.0
        current = tau(h)
        scale = max(abs(current), _ZERO_TAU)
        if abs(current - previous) / scale <= _GD_CONV_RTOL:
            return current
        previous = current
    return previous


def gd_enhancement(
    config_spinning: ChainConfig,
    config_rest: ChainConfig,
    delta_p_hz: float,
    step_hz: float = DEFAULT_GD_STEP,
) -> float:
    """tau_g(spinning)/tau_g(rest) - 1 at a fixed probe detuning.

    Raises ZeroBaseline when |tau_g(rest)| < 1e-18 s.
    """
    _check_same_but_spins(config_spinning, config_rest)
    tau_rest = group_delay(config_rest, delta_p_hz, step_hz)
    if abs(tau_rest) < _ZERO_TAU:
        raise ZeroBaseline(tau_rest)
    return group_delay(config_spinning, delta_p_hz, step_hz) / tau_rest - 1.0


def nonreciprocity_contrast(
    config: ChainConfig, delta_p_hz: float
) -> dict[str, float]:
    """Forward/backward transmission and their normalized difference.

    Backward launch flips the sign of every spin rate in the rotation shift;
    contrast = (T_fwd - T_bwd)/(T_fwd + T_bwd), in [-1, 1], defined as 0
    when both transmissions vanish.
    """
    t_fwd = transmission_at(config, delta_p_hz)
    t_bwd = transmission_at(config.reversed_probe(), delta_p_hz)
    total = t_fwd + t_bwd
    contrast = (t_fwd - t_bwd) / total if total > _ZERO_T else 0.0
    return {"T_fwd": t_fwd, "T_bwd": t_bwd, "contrast": contrast}


def sweep_metrics(
    config: ChainConfig,
    delta_p_hz: float,
    omegas_hz: Iterable[float],
    step_hz: float = DEFAULT_GD_STEP,
) -> list[MetricPoint]:
    """Metrics versus spin-rate magnitude at a fixed probe detuning.

    The spin-direction pattern is taken from the signs of the configured
    spin rates; each sweep point applies |Omega| scaled by those signs
    (a zero stays zero).  The non-spinning baseline is computed once.
    """
    signs = [float(np.sign(r.spin_rate)) for r in config.resonators]
    rest = config.at_rest()
    t_rest = transmission_at(rest, delta_p_hz)
    tau_rest = group_delay(rest, delta_p_hz, step_hz)
    points = []
    for omega in omegas_hz:
        spun = config.with_spins([s * abs(omega) for s in signs])
        ss = solve_steady(spun)
        t = transmission_at(spun, delta_p_hz, ss=ss)
        tau = group_delay(spun, delta_p_hz, step_hz, ss=ss)
        ef = t / t_rest - 1.0 if t_rest >= _ZERO_T else math.inf
        gd = tau / tau_rest - 1.0 if abs(tau_rest) >= _ZERO_TAU else math.inf
        points.append(MetricPoint(omega_abs=abs(omega), ef=ef, gd=gd, tau_g=tau))
    return points


def local_minima(values: Sequence[float] | np.ndarray) -> list[int]:
    """Indices of strict interior local minima (plateaus count once)."""
    v = np.asarray(values, dtype=float)
    out = []
    i = 1
    while i < v.size - 1:
        if v[i] < v[i - 1]:
            j = i
            while j + 1 < v.size and v[j + 1] == v[j]:
                j += 1
            if j < v.size - 1 and v[j + 1] > v[j]:
                out.append(i)
            i = j + 1
        else:
            i += 1
    return out
