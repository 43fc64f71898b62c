"""Self-consistent steady state of the driven resonator chain.

The static field amplitudes a_j and displacements x_j satisfy

    a_j = (sqrt(kappa_ex) eps_l_j - i J_{j,j-1} a_{j-1} - i J_{j,j+1} a_{j+1})
          / (i Delta_j - i xi_j x_j + beta_j)
    x_j = r_j Omega_j^2 / omega_m_j^2 + hbar xi_j |a_j|^2 / (m_j omega_m_j^2)

with all rates angular.  The displacement line carries the radiation-pressure
force hbar xi |a|^2 explicitly; the centrifugal term r Omega^2 is classical
and carries no hbar.

The default solver is a damped Picard iteration alternating an exact linear
solve of the field line (tridiagonal in the chain index) with a half-step
update of the displacement line.  When Picard stalls, a Newton iteration on
the stacked real system of 3N unknowns (Re a, Im a, x) takes over; if that
also fails the pump power is ramped geometrically from a tiny value to the
target with warm starts, which also selects the adiabatic branch under
optical bistability.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import HBAR, angular
from .errors import DegenerateCavity, NoConvergence
from .params import ChainConfig, DriveSpec, ResonatorSpec, centrifugal_displacement, effective_detuning

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 100_000
_X_DAMPING = 0.5
_STALL_WINDOW = 50
_STALL_FACTOR = 0.99
_RAMP_STEPS = 20


@dataclass(frozen=True)
class SteadyState:
    """Converged static solution of the chain.

    a : complex field amplitudes, sqrt(photon number) units.
    x : mechanical displacements [m].
    residual : max relative residual of the two steady-state lines.
    iterations : total iterations spent (all phases).
    """

    a: np.ndarray
    x: np.ndarray
    residual: float
    iterations: int

    def __post_init__(self) -> None:
        self.a.setflags(write=False)
        self.x.setflags(write=False)


@dataclass(frozen=True)
class SingleSteadyResult:
    """Closed-form single-resonator solution with the full root set.

    ``photon_roots`` lists every admissible real root of the intensity cubic
    at the target power (ascending); ``a`` and ``x`` correspond to the branch
    reached by adiabatically ramping the pump from zero.
    """

    a: complex
    x: float
    photon_roots: tuple[float, ...]


class _System:
    """Angular-unit view of a chain config, shared by solver phases."""

    def __init__(self, config: ChainConfig):
        drive = config.drive
        res = config.resonators
        n = len(res)
        self.n = n
        self.kappa_ex = angular(drive.kappa_ex)
        self.beta = np.array(
            [
                0.5 * (self.kappa_ex + angular(r.kappa_in))
                if j == 0
                else 0.5 * angular(r.kappa_in)
                for j, r in enumerate(res)
            ]
        )
        self.delta_c = np.array([angular(effective_detuning(r, drive)) for r in res])
        self.xi = np.array([angular(r.xi) for r in res])
        self.mass = np.array([r.mass for r in res])
        self.omega_m = np.array([angular(r.omega_m) for r in res])
        self.gamma_m = np.array([angular(r.gamma_m) for r in res])
        self.coupling = np.array([angular(j) for j in config.couplings])
        self.x_cf = np.array([centrifugal_displacement(r) for r in res])
        self.opt_gain = HBAR * self.xi / (self.mass * self.omega_m**2)
        eps_l = drive.pump_amplitude()
        self.drive_vec = np.array(
            [
                np.sqrt(self.kappa_ex) * eps_l if (drive.pump_all or j == 0) else 0.0
                for j in range(n)
            ],
            dtype=complex,
        )
        for j in range(n):
            if self.beta[j] == 0.0 and self.drive_vec[j] != 0.0:
                raise DegenerateCavity(j)

    def field_matrix(self, x: np.ndarray) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=complex)
        diag = 1j * (self.delta_c - self.xi * x) + self.beta
        np.fill_diagonal(m, diag)
        for j in range(self.n - 1):
            m[j, j + 1] = 1j * self.coupling[j]
            m[j + 1, j] = 1j * self.coupling[j]
        return m

    def x_target(self, a: np.ndarray) -> np.ndarray:
        return self.x_cf + self.opt_gain * np.abs(a) ** 2

    def residual(self, a: np.ndarray, x: np.ndarray) -> float:
        lhs = self.field_matrix(x) @ a
        rhs = self.drive_vec
        scale_a = np.maximum(np.abs(lhs), np.abs(rhs))
        res_a = np.where(scale_a > 0, np.abs(lhs - rhs) / np.where(scale_a > 0, scale_a, 1.0), 0.0)
        xt = self.x_target(a)
        scale_x = np.maximum(np.abs(x), np.abs(xt))
        res_x = np.where(scale_x > 0, np.abs(x - xt) / np.where(scale_x > 0, scale_x, 1.0), 0.0)
        return float(max(res_a.max(initial=0.0), res_x.max(initial=0.0)))


def _picard(
    sys: _System, x0: np.ndarray, tol: float, max_iter: int
) -> tuple[np.ndarray, np.ndarray, float, int, bool]:
    """Damped alternating iteration.  Returns (a, x, residual, iters, ok)."""
    x = x0.copy()
    a = np.zeros(sys.n, dtype=complex)
    best = np.inf
    last_window_best = np.inf
    for it in range(1, max_iter + 1):
        a = np.linalg.solve(sys.field_matrix(x), sys.drive_vec)
        x = x + _X_DAMPING * (sys.x_target(a) - x)
        res = sys.residual(a, x)
        if res <= tol:
            return a, x, res, it, True
        best = min(best, res)
        if it % _STALL_WINDOW == 0:
            if best > _STALL_FACTOR * last_window_best:
                return a, x, res, it, False
            last_window_best = best
    return a, x, sys.residual(a, x), max_iter, False


def _newton(
    sys: _System, a0: np.ndarray, x0: np.ndarray, tol: float, max_iter: int
) -> tuple[np.ndarray, np.ndarray, float, int, bool]:
    """Newton on the stacked real system F(Re a, Im a, x) = 0."""
    n = sys.n
    a = a0.copy()
    x = x0.copy()
    for it in range(1, max_iter + 1):
        m = sys.field_matrix(x)
        f_field = m @ a - sys.drive_vec
        f_x = x - sys.x_target(a)
        res = sys.residual(a, x)
        if res <= tol:
            return a, x, res, it, True
        jac = np.zeros((3 * n, 3 * n))
        jac[:n, :n] = m.real
        jac[:n, n : 2 * n] = -m.imag
        jac[n : 2 * n, :n] = m.imag
        jac[n : 2 * n, n : 2 * n] = m.real
        dmdx = -1j * sys.xi * a  # d(M a)_j / dx_j
        jac[:n, 2 * n :] = np.diag(dmdx.real)
        jac[n : 2 * n, 2 * n :] = np.diag(dmdx.imag)
        jac[2 * n :, :n] = np.diag(-2.0 * sys.opt_gain * a.real)
        jac[2 * n :, n : 2 * n] = np.diag(-2.0 * sys.opt_gain * a.imag)
        jac[2 * n :, 2 * n :] = np.eye(n)
        rhs = -np.concatenate([f_field.real, f_field.imag, f_x])
        try:
            step = np.linalg.solve(jac, rhs)
        except np.linalg.LinAlgError:
            return a, x, res, it, False
        if not np.all(np.isfinite(step)):
            return a, x, res, it, False
        a = a + step[:n] + 1j * step[n : 2 * n]
        x = x + step[2 * n :]
    return a, x, sys.residual(a, x), max_iter, False


def solve_steady(
    config: ChainConfig,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> SteadyState:
    """Solve the chain steady state to ``tol`` max relative residual.

    Deterministic for a given config: fixed initial guess (x at the
    centrifugal floor, a = 0), fixed damping schedule, fixed fallback order.

    Raises
    ------
    NoConvergence
        If every phase exhausts its budget.
    DegenerateCavity
        If a driven resonator has zero net leakage rate.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    sys = _System(config)
    total = 0

    a, x, res, used, ok = _picard(sys, sys.x_cf, tol, max_iter)
    total += used
    if ok:
        return SteadyState(a=a, x=x, residual=res, iterations=total)

    budget = max(max_iter - total, 100)
    a, x, res, used, ok = _newton(sys, a, x, tol, min(budget, 200))
    total += used
    if ok:
        return SteadyState(a=a, x=x, residual=res, iterations=total)

    # adiabatic power ramp with warm starts
    drive_full = sys.drive_vec.copy()
    factors = 0.5 ** np.arange(_RAMP_STEPS - 1, -1, -1)
    x = sys.x_cf.copy()
    for frac in factors:
        sys.drive_vec = drive_full * np.sqrt(frac)
        a, x, res, used, ok = _picard(sys, x, tol, max(max_iter // _RAMP_STEPS, 200))
        total += used
        if not ok:
            a, x, res, used, ok = _newton(sys, a, x, tol, 200)
            total += used
        if not ok:
            sys.drive_vec = drive_full
            raise NoConvergence(total, res)
    sys.drive_vec = drive_full
    return SteadyState(a=a, x=x, residual=res, iterations=total)


def _intensity_roots(
    beta: float, d0: float, c1: float, forcing: float
) -> list[float]:
    """Real nonnegative roots of I (beta^2 + (d0 - c1 I)^2) = forcing."""
    if forcing == 0.0:
        return [0.0]
    if c1 == 0.0:
        return [forcing / (beta**2 + d0**2)]
    coeffs = [c1**2, -2.0 * d0 * c1, beta**2 + d0**2, -forcing]
    roots = np.roots(coeffs)
    out = []
    for z in roots:
        if abs(z.imag) <= 1e-9 * max(abs(z), 1.0) and z.real > -1e-30:
            out.append(max(float(z.real), 0.0))
    return sorted(out)


def solve_steady_single_oracle(
    spec: ResonatorSpec, drive: DriveSpec
) -> SingleSteadyResult:
    """Single-resonator steady state via the real intensity cubic.

    Eliminating x reduces the self-consistency to a cubic in I = |a|^2:

        I (beta^2 + (D0 - c1 I)^2) = kappa_ex eps_l^2

    with D0 the detuning net of the centrifugal pull and c1 the
    radiation-pressure pull per photon.  The cubic always has at least one
    real nonnegative root; under bistability the branch is selected by
    ramping the power geometrically from zero and following the nearest
    root (the adiabatically prepared lower branch).
    """
    kex = angular(drive.kappa_ex)
    beta = 0.5 * (kex + angular(spec.kappa_in))
    xi = angular(spec.xi)
    d0 = angular(effective_detuning(spec, drive)) - xi * centrifugal_displacement(spec)
    c1 = HBAR * xi**2 / (spec.mass * angular(spec.omega_m) ** 2)
    forcing_full = kex * drive.pump_amplitude() ** 2

    intensity = 0.0
    roots: list[float] = [0.0]
    for frac in 0.5 ** np.arange(_RAMP_STEPS - 1, -1, -1):
        roots = _intensity_roots(beta, d0, c1, forcing_full * frac)
        intensity = min(roots, key=lambda r: abs(r - intensity))

    x = centrifugal_displacement(spec) + HBAR * xi * intensity / (
        spec.mass * angular(spec.omega_m) ** 2
    )
    a = (
        np.sqrt(kex) * drive.pump_amplitude() / (beta + 1j * (d0 - c1 * intensity))
        if drive.pump_amplitude() > 0
        else 0j
    )
    return SingleSteadyResult(a=complex(a), x=float(x), photon_roots=tuple(roots))
