"""Physical parameter types and derived quantities.

Conventions
-----------
* Every frequency-valued field is an ordinary frequency in Hz, exactly as it
  appears in config files.  Solvers convert to angular units (rad/s) at the
  point of use via :func:`spinchain.constants.angular`.
* Spin rates are signed: positive means clockwise rotation.
* The rotation-induced optical mode shift is evaluated as a relation among
  ordinary frequencies (shift_hz = n r Omega_hz nu_c drag / c).  This reading
  reproduces the calibration anchor for the mechanical frequency pull of a
  spinning resonator at 100 kHz; the all-angular reading overestimates the
  shift by 2*pi and was rejected during calibration.
* The Fresnel-Fizeau drag coefficient is (1 - 1/n^2 - (lambda/n) dn/dlambda)
  with lambda the wavelength inside the medium, c/(n nu_c).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .constants import C_LIGHT, HBAR, TWO_PI, angular
from .errors import ConfigError

FORWARD = "forward"
BACKWARD = "backward"


@dataclass(frozen=True)
class ResonatorSpec:
    """Physical parameters of a single spinning optomechanical ring resonator.

    Parameters
    ----------
    mass : float
        Effective mass of the breathing mechanical mode [kg].
    omega_m : float
        Mechanical mode frequency [Hz].
    gamma_m : float
        Mechanical damping rate [Hz].
    omega_c : float
        Optical mode frequency [Hz].
    kappa_in : float
        Intrinsic optical loss rate [Hz].
    radius : float
        Ring radius [m].
    refractive_index : float
        Refractive index n (dimensionless, >= 1).
    dn_dlambda : float
        Dispersion dn/dlambda [1/m].  Defaults to 0 (no dispersion data).
    spin_rate : float
        Signed rotation rate [Hz]; positive is clockwise, 0 is non-spinning.
    xi : float
        Optomechanical frequency pull per unit displacement [Hz/m].
    """

    mass: float
    omega_m: float
    gamma_m: float
    omega_c: float
    kappa_in: float
    radius: float
    refractive_index: float
    dn_dlambda: float = 0.0
    spin_rate: float = 0.0
    xi: float = 0.0

    def __post_init__(self) -> None:
        if self.mass <= 0:
            raise ConfigError(f"mass must be positive, got {self.mass!r}")
        if self.omega_m <= 0:
            raise ConfigError(f"omega_m must be positive, got {self.omega_m!r}")
        if self.gamma_m < 0:
            raise ConfigError(f"gamma_m must be nonnegative, got {self.gamma_m!r}")
        if self.omega_c <= 0:
            raise ConfigError(f"omega_c must be positive, got {self.omega_c!r}")
        if self.kappa_in < 0:
            raise ConfigError(f"kappa_in must be nonnegative, got {self.kappa_in!r}")
        if self.radius <= 0:
            raise ConfigError(f"radius must be positive, got {self.radius!r}")
        if self.refractive_index < 1:
            raise ConfigError(
                f"refractive_index must be >= 1, got {self.refractive_index!r}"
            )
        if not math.isfinite(self.spin_rate):
            raise ConfigError(f"spin_rate must be finite, got {self.spin_rate!r}")

    @property
    def wavelength_medium(self) -> float:
        """Optical wavelength inside the medium, c / (n nu_c) [m]."""
        return C_LIGHT / (self.refractive_index * self.omega_c)

    def with_spin(self, spin_rate: float) -> "ResonatorSpec":
        """Copy of this spec with a different signed spin rate."""
        return replace(self, spin_rate=spin_rate)


@dataclass(frozen=True)
class DriveSpec:
    """Pump and probe drive applied through the fiber on resonator 1.

    Parameters
    ----------
    omega_l : float
        Pump frequency [Hz].
    pump_power : float
        Pump power P_l [W].
    probe_power : float
        Probe power P_in [W].
    kappa_ex : float
        External (fiber) coupling rate of resonator 1 [Hz].
    probe_direction : str
        "forward" or "backward" launch direction of pump and probe.
    pump_all : bool
        If True every resonator is pumped with the same amplitude through
        sqrt(kappa_ex); if False only resonator 1 is pumped.
    delta_p : float
        Probe detuning handle [Hz]; the point on the spectrum axis at which
        single-point observables are evaluated.  Swept commands override it.

    Pump and probe amplitudes are always derived from the powers,
    eps = sqrt(P / (hbar omega)), never stored.
    """

    omega_l: float
    pump_power: float
    probe_power: float
    kappa_ex: float
    probe_direction: str = FORWARD
    pump_all: bool = True
    delta_p: float = 0.0

    def __post_init__(self) -> None:
        if self.omega_l <= 0:
            raise ConfigError(f"omega_l must be positive, got {self.omega_l!r}")
        if self.pump_power < 0:
            raise ConfigError(f"pump_power must be nonnegative, got {self.pump_power!r}")
        if self.probe_power < 0:
            raise ConfigError(
                f"probe_power must be nonnegative, got {self.probe_power!r}"
            )
        if self.kappa_ex <= 0:
            raise ConfigError(f"kappa_ex must be positive, got {self.kappa_ex!r}")
        if self.probe_direction not in (FORWARD, BACKWARD):
            raise ConfigError(
                f"probe_direction must be 'forward' or 'backward', "
                f"got {self.probe_direction!r}"
            )

    @property
    def direction_sign(self) -> float:
        """+1 for a forward launch, -1 for backward.

        Reversing the launch direction flips the sign of every spin rate in
        the rotation-induced mode shift (co- versus counter-propagation);
        nothing else changes.
        """
        return 1.0 if self.probe_direction == FORWARD else -1.0

    def reversed(self) -> "DriveSpec":
        """Copy of this drive with the launch direction flipped."""
        other = BACKWARD if self.probe_direction == FORWARD else FORWARD
        return replace(self, probe_direction=other)

    def pump_amplitude(self) -> float:
        """Pump field amplitude eps_l = sqrt(P_l / (hbar omega_l)) [s^-1/2]."""
        return math.sqrt(self.pump_power / (HBAR * angular(self.omega_l)))

    def probe_amplitude(self, eta: float) -> float:
        """Probe amplitude eps_p = sqrt(P_in / (hbar omega_p)) at omega_p =
        omega_l + eta/(2 pi) [s^-1/2].  ``eta`` is angular [rad/s]."""
        omega_p = angular(self.omega_l) + eta
        return math.sqrt(self.probe_power / (HBAR * omega_p))


@dataclass(frozen=True)
class ChainConfig:
    """Ordered chain of resonators with nearest-neighbour couplings.

    Resonator 1 (index 0) is the fiber-coupled bottom resonator.  Couplings
    are symmetric, J[j] couples resonators j+1 and j+2, so len(couplings)
    must equal N - 1.  All couplings in Hz, nonnegative.
    """

    resonators: tuple[ResonatorSpec, ...]
    couplings: tuple[float, ...]
    drive: DriveSpec

    def __post_init__(self) -> None:
        if len(self.resonators) < 1:
            raise ConfigError("chain needs at least one resonator")
        if len(self.couplings) != len(self.resonators) - 1:
            raise ConfigError(
                f"expected {len(self.resonators) - 1} couplings for "
                f"{len(self.resonators)} resonators, got {len(self.couplings)}"
            )
        if any(j < 0 for j in self.couplings):
            raise ConfigError("couplings must be nonnegative")
        object.__setattr__(self, "resonators", tuple(self.resonators))
        object.__setattr__(self, "couplings", tuple(float(j) for j in self.couplings))

    @property
    def size(self) -> int:
        return len(self.resonators)

    def with_spins(self, spins: "list[float] | tuple[float, ...]") -> "ChainConfig":
        """Copy with all spin rates replaced (ordered, one per resonator)."""
        if len(spins) != self.size:
            raise ConfigError(f"expected {self.size} spin rates, got {len(spins)}")
        new = tuple(r.with_spin(s) for r, s in zip(self.resonators, spins))
        return replace(self, resonators=new)

    def at_rest(self) -> "ChainConfig":
        """Copy with every spin rate set to zero."""
        return self.with_spins([0.0] * self.size)

    def reversed_probe(self) -> "ChainConfig":
        return replace(self, drive=self.drive.reversed())


@dataclass(frozen=True)
class DerivedRates:
    """Per-resonator rates entering the equations of motion (angular units).

    beta[j] is the net photon leakage rate, (kappa_ex delta_j1 + kappa_in)/2.
    eps_l is the pump amplitude shared by all driven resonators; eps_p the
    probe amplitude at the drive's detuning handle.  xi[j] in rad/s per m.
    """

    beta: tuple[float, ...]
    eps_l: float
    eps_p: float
    xi: tuple[float, ...]


def sagnac_shift(spec: ResonatorSpec, direction_sign: float = 1.0) -> float:
    """Rotation-induced optical mode frequency shift [Hz, signed].

    shift = (n r Omega nu_c / c) (1 - 1/n^2 - (lambda/n) dn/dlambda)

    with lambda = c/(n nu_c) the wavelength in the medium and all frequencies
    ordinary.  Antisymmetric in Omega: clockwise spin (Omega > 0) up-shifts
    the co-propagating mode.  ``direction_sign`` = -1 evaluates the shift
    seen by a backward-launched field.

    The drag coefficient uses 1 - 1/n^2 (Fresnel-Fizeau); see the project
    notes for the calibration that fixed this choice.
    """
    n = spec.refractive_index
    lam = spec.wavelength_medium
    drag = 1.0 - 1.0 / n**2 - (lam / n) * spec.dn_dlambda
    omega = direction_sign * spec.spin_rate
    return n * spec.radius * omega * spec.omega_c * drag / C_LIGHT


def effective_detuning(spec: ResonatorSpec, drive: DriveSpec) -> float:
    """Pump-cavity detuning including the rotation shift [Hz].

    Delta_c = (omega_c + sagnac_shift) - omega_l, with the shift sign flipped
    for a backward probe launch.
    """
    return (spec.omega_c + sagnac_shift(spec, drive.direction_sign)) - drive.omega_l


def centrifugal_displacement(spec: ResonatorSpec) -> float:
    """Static displacement r Omega^2 / omega_m^2 of a spinning resonator [m].

    The ratio Omega/omega_m is unit-convention free, so ordinary frequencies
    can be used directly.
    """
    return spec.radius * (spec.spin_rate / spec.omega_m) ** 2


def derived_rates(config: ChainConfig) -> DerivedRates:
    """Leakage rates and drive amplitudes for every resonator (angular)."""
    drive = config.drive
    kappa_ex = angular(drive.kappa_ex)
    beta = tuple(
        0.5 * (kappa_ex + angular(r.kappa_in)) if j == 0 else 0.5 * angular(r.kappa_in)
        for j, r in enumerate(config.resonators)
    )
    eta = angular(config.resonators[0].omega_m + drive.delta_p)
    return DerivedRates(
        beta=beta,
        eps_l=drive.pump_amplitude(),
        eps_p=drive.probe_amplitude(eta),
        xi=tuple(angular(r.xi) for r in config.resonators),
    )


def kappa_ex_from_quality(omega_c: float, quality: float) -> float:
    """External coupling rate omega_c / Q [Hz]."""
    if quality <= 0:
        raise ConfigError(f"quality factor must be positive, got {quality!r}")
    return omega_c / quality


def omit_pump_frequency(
    spec: ResonatorSpec, kappa_ex: float, pump_power: float
) -> float:
    """Pump frequency [Hz] placing the non-spinning chain on the red sideband.

    Solves omega_c - omega_l - xi*x0 = omega_m self-consistently for the
    single non-spinning resonator, where x0 is the static radiation-pressure
    displacement at that drive.  Using this omega_l, the transparency peak of
    the resonator at rest sits at probe detuning zero; spinning the resonator
    then moves the spectrum instead of the laser.
    """
    om_c = angular(spec.omega_c)
    om_m = angular(spec.omega_m)
    kex = angular(kappa_ex)
    beta = 0.5 * (kex + angular(spec.kappa_in))
    xi = angular(spec.xi)
    om_l = om_c - om_m
    for _ in range(8):
        flux = pump_power / (HBAR * om_l)
        photons = kex * flux / (beta**2 + om_m**2)
        x0 = HBAR * xi * photons / (spec.mass * om_m**2)
        om_l = om_c - om_m - xi * x0
    return om_l / TWO_PI
