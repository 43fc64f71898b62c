"""Linearized probe response of the chain about a converged steady state.

At probe-pump offset eta = omega_p - omega_l (angular), the fluctuation
amplitudes (da_-j, da*_+j, dx_j) obey the 3N x 3N complex linear system

    (beta_j + i Dt_j - i eta) da_-j - i xi_j a_j dx_j
        = sqrt(kappa_ex) eps_p delta_j1 - i J_{j,j-1} da_-(j-1) - i J_{j,j+1} da_-(j+1)
    (beta_j - i Dt_j - i eta) da*_+j + i xi_j a_j* dx_j
        = i J_{j,j-1} da*_+(j-1) + i J_{j,j+1} da*_+(j+1)
    Gm_j dx_j = (hbar xi_j / m_j) (a_j* da_-j + a_j da*_+j)

with Dt_j the pump detuning net of the static optomechanical pull and
Gm = omega_m^2 - i gamma_m eta - eta^2 the mechanical response denominator
(a debug flag switches in the dimensionally short variant
omega_m^2 - eta - i eta gamma_m for comparison).  The probe transmission is

    t_p = 1 - (sqrt(kappa_ex) / eps_p) da_-1,     T = |t_p|^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import HBAR, TWO_PI, angular
from .errors import NoConvergence, SingularSystem
from .params import ChainConfig, DriveSpec, ResonatorSpec, effective_detuning
from .steady import SteadyState

RESIDUAL_TOL = 1e-12
_STEADY_TOL = 1e-9  # acceptance bar on the steady state fed into the response


@dataclass(frozen=True)
class ResponsePoint:
    """Fluctuation solution and probe transmission at one offset eta.

    eta : angular probe-pump offset [rad/s].
    delta_a_minus, delta_a_plus_conj, delta_x : per-resonator fluctuation
        amplitudes in the fixed unknown ordering.
    t_p : complex probe transmission amplitude.
    transmission : T = |t_p|^2.
    residual : relative residual of the assembled linear system.
    """

    eta: float
    delta_a_minus: np.ndarray
    delta_a_plus_conj: np.ndarray
    delta_x: np.ndarray
    t_p: complex
    transmission: float
    residual: float

    def __post_init__(self) -> None:
        self.delta_a_minus.setflags(write=False)
        self.delta_a_plus_conj.setflags(write=False)
        self.delta_x.setflags(write=False)


def _probe_amplitude(drive: DriveSpec, eta: float) -> float:
    eps = drive.probe_amplitude(eta)
    return eps if eps > 0 else 1.0  # T is probe-power independent


def assemble_system(
    ss: SteadyState,
    config: ChainConfig,
    eta: float,
    printed_mechanical_line: bool = False,
) -> tuple[np.ndarray, np.ndarray]:
    """Build the 3N x 3N complex matrix and right-hand side at offset eta.

    Unknown ordering: (da_-1..N, da*_+1..N, dx_1..N).  The matrix is banded
    with bandwidth 2N under this ordering (nearest-neighbour coupling only).

    Raises NoConvergence if the supplied steady state is not converged.
    """
    if ss.residual > _STEADY_TOL:
        raise NoConvergence(ss.iterations, ss.residual)
    n = config.size
    drive = config.drive
    kex = angular(drive.kappa_ex)
    a = np.zeros((3 * n, 3 * n), dtype=complex)
    b = np.zeros(3 * n, dtype=complex)
    coupling = [angular(j) for j in config.couplings]
    for j, res in enumerate(config.resonators):
        beta = 0.5 * (kex + angular(res.kappa_in)) if j == 0 else 0.5 * angular(res.kappa_in)
        xi = angular(res.xi)
        dt = angular(effective_detuning(res, drive)) - xi * ss.x[j]
        aj = ss.a[j]

        a[j, j] = beta + 1j * dt - 1j * eta
        a[j, 2 * n + j] = -1j * xi * aj
        if j > 0:
            a[j, j - 1] = 1j * coupling[j - 1]
        if j < n - 1:
            a[j, j + 1] = 1j * coupling[j]

        a[n + j, n + j] = beta - 1j * dt - 1j * eta
        a[n + j, 2 * n + j] = 1j * xi * np.conj(aj)
        if j > 0:
            a[n + j, n + j - 1] = -1j * coupling[j - 1]
        if j < n - 1:
            a[n + j, n + j + 1] = -1j * coupling[j]

        om_m = angular(res.omega_m)
        gam = angular(res.gamma_m)
        if printed_mechanical_line:
            gm = om_m**2 - eta - 1j * eta * gam
        else:
            gm = om_m**2 - 1j * gam * eta - eta**2
        a[2 * n + j, 2 * n + j] = gm
        a[2 * n + j, j] = -HBAR * xi * np.conj(aj) / res.mass
        a[2 * n + j, n + j] = -HBAR * xi * aj / res.mass

    b[0] = np.sqrt(kex) * _probe_amplitude(drive, eta)
    return a, b


def solve_response(
    ss: SteadyState,
    config: ChainConfig,
    eta: float,
    printed_mechanical_line: bool = False,
) -> ResponsePoint:
    """Solve the fluctuation system at offset eta (partial-pivot elimination).

    Raises SingularSystem when the matrix is singular at this eta; callers
    sweeping a grid perturb the offending point by 1e-9 of the grid spacing.
    """
    matrix, rhs = assemble_system(ss, config, eta, printed_mechanical_line)
    try:
        sol = np.linalg.solve(matrix, rhs)
    except np.linalg.LinAlgError:
        raise SingularSystem(eta) from None
    scale = np.linalg.norm(matrix, ord=np.inf) * np.linalg.norm(sol, ord=np.inf) + np.linalg.norm(rhs, ord=np.inf)
    residual = float(np.linalg.norm(matrix @ sol - rhs, ord=np.inf) / scale) if scale > 0 else 0.0
    if not np.all(np.isfinite(sol)) or residual > 1e-6:
        raise SingularSystem(eta)
    n = config.size
    eps_p = _probe_amplitude(config.drive, eta)
    t_p = 1.0 - np.sqrt(angular(config.drive.kappa_ex)) * sol[0] / eps_p
    return ResponsePoint(
        eta=float(eta),
        delta_a_minus=sol[:n].copy(),
        delta_a_plus_conj=sol[n : 2 * n].copy(),
        delta_x=sol[2 * n :].copy(),
        t_p=complex(t_p),
        transmission=float(abs(t_p) ** 2),
        residual=residual,
    )


def closed_form_single(
    ss: SteadyState, spec: ResonatorSpec, drive: DriveSpec, eta
) -> complex | np.ndarray:
    """Closed-form da_-1 for a single resonator (independent oracle).

    Evaluates, with bt = beta - i Delta_c + i xi x - i eta and
    bt* = beta + i Delta_c - i xi x - i eta,

        da_-1 = - sqrt(kex) eps_p (i hbar xi^2 |a|^2 + m bt Gm)
                / (i hbar xi^2 |a|^2 bt - bt* (i hbar xi^2 |a|^2 + m bt Gm))

    which is the printed single-resonator form with the mass dressed by
    hbar to match the SI radiation-pressure coupling.  ``eta`` may be a
    scalar or an array (angular units).
    """
    eta = np.asarray(eta, dtype=float)
    kex = angular(drive.kappa_ex)
    beta = 0.5 * (kex + angular(spec.kappa_in))
    xi = angular(spec.xi)
    dc = angular(effective_detuning(spec, drive))
    x = float(ss.x[0])
    aj = complex(ss.a[0])
    om_m = angular(spec.omega_m)
    gam = angular(spec.gamma_m)

    bt_minus = beta - 1j * dc + 1j * xi * x - 1j * eta
    bt_minus_star = beta + 1j * dc - 1j * xi * x - 1j * eta
    gm = om_m**2 - 1j * gam * eta - eta**2
    coupling = 1j * HBAR * xi**2 * abs(aj) ** 2
    inner = coupling + spec.mass * bt_minus * gm
    eps_p = np.array([_probe_amplitude(drive, e) for e in np.atleast_1d(eta)])
    eps_p = eps_p.reshape(eta.shape) if eta.shape else eps_p[0]
    num = -np.sqrt(kex) * eps_p * inner
    den = coupling * bt_minus - bt_minus_star * inner
    out = num / den
    return complex(out) if out.ndim == 0 else out


def omit_window_width_estimate(ss: SteadyState, config: ChainConfig) -> float:
    """Analytic transparency-window full width for resonator 1 [Hz].

    gamma_m + hbar xi^2 |a|^2 / (m omega_m beta), the mechanical linewidth
    plus the pump-induced broadening (weak-coupling estimate).
    """
    res = config.resonators[0]
    beta = 0.5 * (angular(config.drive.kappa_ex) + angular(res.kappa_in))
    xi = angular(res.xi)
    width = angular(res.gamma_m) + HBAR * xi**2 * abs(ss.a[0]) ** 2 / (
        res.mass * angular(res.omega_m) * beta
    )
    return width / TWO_PI
