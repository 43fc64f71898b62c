import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spinchain import (
    ConfigError,
    DriveSpec,
    ResonatorSpec,
    derived_rates,
    effective_detuning,
    kappa_ex_from_quality,
    omit_pump_frequency,
    sagnac_shift,
)
from spinchain.constants import angular
from spinchain.presets import reference_chain, reference_resonator

# Golden constants computed before the build with an independent 40-digit
# mpmath script evaluating the formulas directly (see notes).
G_SAGNAC_100K_HZ = 12030406.048440351       # reference resonator, +100 kHz
G_SAGNAC_DISP_HZ = 12013044.93732924        # same but dn/dlambda = 1000 /m
G_EPS_L = 8831439552.9323979                # 10 W at omega_l = 193.5 THz


def spec(**kw) -> ResonatorSpec:
    base = dict(
        mass=2e-12,
        omega_m=200e6,
        gamma_m=0.2e6,
        omega_c=193.5e12,
        kappa_in=6.45e6,
        radius=0.25e-3,
        refractive_index=1.44,
        dn_dlambda=0.0,
        spin_rate=0.0,
        xi=193.5e12 / 0.25e-3,
    )
    base.update(kw)
    return ResonatorSpec(**base)


class TestSagnacShift:
    def test_zero_spin_gives_zero(self):
        assert sagnac_shift(spec(spin_rate=0.0)) == 0.0

    def test_unity_index_gives_zero(self):
        assert sagnac_shift(spec(refractive_index=1.0, spin_rate=1e5)) == 0.0

    def test_golden_value_at_100khz(self):
        shift = sagnac_shift(spec(spin_rate=1e5))
        assert shift == pytest.approx(G_SAGNAC_100K_HZ, rel=1e-12)

    def test_golden_value_with_dispersion(self):
        shift = sagnac_shift(spec(spin_rate=1e5, dn_dlambda=1000.0))
        assert shift == pytest.approx(G_SAGNAC_DISP_HZ, rel=1e-12)

    @given(st.floats(min_value=-2e5, max_value=2e5, allow_nan=False))
    def test_antisymmetric_bit_for_bit(self, omega):
        plus = sagnac_shift(spec(spin_rate=omega))
        minus = sagnac_shift(spec(spin_rate=-omega))
        assert minus == -plus

    @given(st.floats(min_value=1.0, max_value=1e5, allow_nan=False))
    def test_linear_in_spin(self, omega):
        one = sagnac_shift(spec(spin_rate=omega))
        two = sagnac_shift(spec(spin_rate=2 * omega))
        assert two == pytest.approx(2 * one, rel=1e-12)

    def test_backward_direction_flips_sign(self):
        s = spec(spin_rate=1e5)
        assert sagnac_shift(s, direction_sign=-1.0) == -sagnac_shift(s)


class TestEffectiveDetuning:
    def drive(self, omega_l, direction="forward"):
        return DriveSpec(
            omega_l=omega_l,
            pump_power=10.0,
            probe_power=1e-6,
            kappa_ex=6.45e6,
            probe_direction=direction,
        )

    def test_resonant_non_spinning_is_zero(self):
        s = spec()
        assert effective_detuning(s, self.drive(s.omega_c)) == 0.0

    def test_spin_average_cancels(self):
        omega_l = 193.4998e12
        plus = effective_detuning(spec(spin_rate=7e4), self.drive(omega_l))
        minus = effective_detuning(spec(spin_rate=-7e4), self.drive(omega_l))
        assert plus + minus == pytest.approx(2 * (193.5e12 - omega_l), rel=1e-12)

    def test_golden_shift_at_100khz(self):
        omega_l = 193.4998e12
        value = effective_detuning(spec(spin_rate=1e5), self.drive(omega_l))
        # absolute tolerance: a few ulp of the 193.5 THz optical frequency
        assert value == pytest.approx(
            (193.5e12 - omega_l) + G_SAGNAC_100K_HZ, abs=0.1
        )

    def test_backward_probe_flips_shift(self):
        omega_l = 193.4998e12
        fwd = effective_detuning(spec(spin_rate=1e5), self.drive(omega_l))
        bwd = effective_detuning(
            spec(spin_rate=1e5), self.drive(omega_l, "backward")
        )
        assert bwd == pytest.approx(
            (193.5e12 - omega_l) - G_SAGNAC_100K_HZ, abs=0.1
        )
        assert fwd != bwd


class TestDerivedRates:
    def test_kappa_ex_from_quality(self):
        assert kappa_ex_from_quality(193.5e12, 3e7) == pytest.approx(6.45e6, rel=1e-12)

    def test_beta_split_between_resonators(self):
        config = reference_chain((0.0, 0.0))
        rates = derived_rates(config)
        kex = angular(config.drive.kappa_ex)
        assert rates.beta[0] == pytest.approx(kex, rel=1e-15)  # kappa_in = kappa_ex
        assert rates.beta[1] == pytest.approx(kex / 2, rel=1e-15)

    def test_pump_amplitude_golden(self):
        drive = DriveSpec(
            omega_l=193.5e12, pump_power=10.0, probe_power=1e-6, kappa_ex=6.45e6
        )
        assert drive.pump_amplitude() == pytest.approx(G_EPS_L, rel=1e-12)

    def test_deterministic(self):
        config = reference_chain((30e3, -10e3))
        assert derived_rates(config) == derived_rates(config)

    def test_probe_amplitude_uses_probe_frequency(self):
        drive = DriveSpec(
            omega_l=193.5e12, pump_power=10.0, probe_power=10.0, kappa_ex=6.45e6
        )
        eta = angular(200e6)
        expected = math.sqrt(10.0 / (1.054571817e-34 * (angular(193.5e12) + eta)))
        assert drive.probe_amplitude(eta) == pytest.approx(expected, rel=1e-12)


class TestValidation:
    def test_rejects_nonpositive_mass(self):
        with pytest.raises(ConfigError):
            spec(mass=0.0)

    def test_rejects_negative_loss(self):
        with pytest.raises(ConfigError):
            spec(kappa_in=-1.0)

    def test_rejects_index_below_one(self):
        with pytest.raises(ConfigError):
            spec(refractive_index=0.9)

    def test_rejects_bad_probe_direction(self):
        with pytest.raises(ConfigError):
            DriveSpec(
                omega_l=1.0,
                pump_power=0.0,
                probe_power=0.0,
                kappa_ex=1.0,
                probe_direction="sideways",
            )

    def test_rejects_coupling_count_mismatch(self):
        with pytest.raises(ConfigError):
            reference_chain((0.0, 0.0)).with_spins([0.0])


class TestPumpLock:
    def test_lock_places_rest_chain_on_red_sideband(self):
        res = reference_resonator()
        omega_l = omit_pump_frequency(res, 6.45e6, 10.0)
        # solving at the locked frequency must give Delta_c - xi x = omega_m
        from spinchain import solve_steady_single_oracle

        drive = DriveSpec(
            omega_l=omega_l, pump_power=10.0, probe_power=1e-6, kappa_ex=6.45e6
        )
        result = solve_steady_single_oracle(res, drive)
        detuning = angular(effective_detuning(res, drive)) - angular(res.xi) * result.x
        assert detuning == pytest.approx(angular(res.omega_m), rel=1e-9)
