import numpy as np
import pytest

from spinchain import (
    ChainConfig,
    DriveSpec,
    NoConvergence,
    ResonatorSpec,
    SingularSystem,
    assemble_system,
    closed_form_single,
    effective_detuning,
    solve_response,
    solve_steady,
)
from spinchain.constants import HBAR, angular
from spinchain.presets import reference_chain
from spinchain.steady import SteadyState


def eta_at(config, delta_p_hz):
    return angular(config.resonators[0].omega_m + delta_p_hz)


def make_resonator(**kw):
    base = dict(
        mass=2e-12,
        omega_m=200e6,
        gamma_m=0.2e6,
        omega_c=193.5e12,
        kappa_in=6.45e6,
        radius=0.25e-3,
        refractive_index=1.44,
        xi=193.5e12 / 0.25e-3,
    )
    base.update(kw)
    return ResonatorSpec(**base)


def passive_chain(gamma_m=0.2e6):
    """No pump, no optomechanical coupling: bare linear cavity."""
    res = make_resonator(gamma_m=gamma_m, xi=0.0)
    drive = DriveSpec(
        omega_l=193.5e12 - 200e6,
        pump_power=0.0,
        probe_power=1e-6,
        kappa_ex=6.45e6,
    )
    return ChainConfig(resonators=(res,), couplings=(), drive=drive)


class TestAssembleSystem:
    def test_bare_cavity_response_is_diagonal_formula(self):
        config = passive_chain()
        ss = solve_steady(config)
        eta = eta_at(config, 3.3e6)
        point = solve_response(ss, config, eta)
        kex = angular(config.drive.kappa_ex)
        beta = 0.5 * (kex + angular(config.resonators[0].kappa_in))
        dc = angular(effective_detuning(config.resonators[0], config.drive))
        eps_p = config.drive.probe_amplitude(eta)
        expected = np.sqrt(kex) * eps_p / (beta + 1j * dc - 1j * eta)
        assert point.delta_a_minus[0] == pytest.approx(expected, rel=1e-12)

    def test_bandwidth_bounded_by_nearest_neighbour_coupling(self):
        for n in (1, 2, 3, 4):
            config = reference_chain(tuple(20e3 * (i + 1) for i in range(n)))
            ss = solve_steady(config)
            matrix, _ = assemble_system(ss, config, eta_at(config, 2e6))
            rows, cols = np.nonzero(matrix)
            assert np.max(np.abs(rows - cols)) <= 2 * n  # bandwidth <= 2N + 1

    def test_rejects_unconverged_steady_state(self, chain_one):
        good = solve_steady(chain_one)
        bad = SteadyState(
            a=good.a.copy(), x=good.x.copy(), residual=1.0, iterations=1
        )
        with pytest.raises(NoConvergence):
            assemble_system(bad, chain_one, eta_at(chain_one, 0.0))

    def test_matrix_matches_independent_symbolic_construction(self):
        # Rebuild every coefficient with sympy from the raw parameters and
        # compare entry by entry against the assembled matrix.
        sympy = pytest.importorskip("sympy")
        config = reference_chain((35e3, -80e3), coupling=4.1e6)
        ss = solve_steady(config)
        eta_val = eta_at(config, 7.7e6)
        matrix, rhs = assemble_system(ss, config, eta_val)

        pi = sympy.pi
        eta = sympy.Float(eta_val, 30)
        hbar = sympy.Float(HBAR, 30)
        n = config.size
        expected = sympy.zeros(3 * n, 3 * n)
        drive = config.drive
        kex = 2 * pi * sympy.Float(drive.kappa_ex, 30)
        coupling = [2 * pi * sympy.Float(j, 30) for j in config.couplings]
        for j, res in enumerate(config.resonators):
            kin = 2 * pi * sympy.Float(res.kappa_in, 30)
            beta = (kex + kin) / 2 if j == 0 else kin / 2
            xi = 2 * pi * sympy.Float(res.xi, 30)
            om_m = 2 * pi * sympy.Float(res.omega_m, 30)
            gam = 2 * pi * sympy.Float(res.gamma_m, 30)
            shift = sympy.Float(
                effective_detuning(res, drive), 30
            )  # Hz, already includes the rotation shift
            dt = 2 * pi * shift - xi * sympy.Float(ss.x[j], 30)
            a_j = sympy.Float(ss.a[j].real, 30) + sympy.I * sympy.Float(ss.a[j].imag, 30)
            expected[j, j] = beta + sympy.I * dt - sympy.I * eta
            expected[j, 2 * n + j] = -sympy.I * xi * a_j
            expected[n + j, n + j] = beta - sympy.I * dt - sympy.I * eta
            expected[n + j, 2 * n + j] = sympy.I * xi * sympy.conjugate(a_j)
            if j > 0:
                expected[j, j - 1] = sympy.I * coupling[j - 1]
                expected[n + j, n + j - 1] = -sympy.I * coupling[j - 1]
            if j < n - 1:
                expected[j, j + 1] = sympy.I * coupling[j]
                expected[n + j, n + j + 1] = -sympy.I * coupling[j]
            mass = sympy.Float(res.mass, 30)
            expected[2 * n + j, 2 * n + j] = om_m**2 - sympy.I * gam * eta - eta**2
            expected[2 * n + j, j] = -hbar * xi * sympy.conjugate(a_j) / mass
            expected[2 * n + j, n + j] = -hbar * xi * a_j / mass

        for r in range(3 * n):
            for c in range(3 * n):
                want = complex(expected[r, c])
                have = matrix[r, c]
                scale = max(abs(want), abs(have), 1e-300)
                assert abs(want - have) / scale < 1e-12, (r, c)
        eps_p = drive.probe_amplitude(eta_val)
        assert rhs[0] == pytest.approx(
            np.sqrt(angular(drive.kappa_ex)) * eps_p, rel=1e-12
        )
        assert np.all(rhs[1:] == 0)

    def test_printed_mechanical_line_flag_changes_matrix(self, chain_one):
        ss = solve_steady(chain_one)
        eta = eta_at(chain_one, 1e6)
        fixed, _ = assemble_system(ss, chain_one, eta)
        printed, _ = assemble_system(ss, chain_one, eta, printed_mechanical_line=True)
        assert fixed[2, 2] != printed[2, 2]


class TestSolveResponse:
    def test_transmission_is_modulus_squared_and_residual_small(self, chain_one):
        ss = solve_steady(chain_one)
        point = solve_response(ss, chain_one, eta_at(chain_one, 4e6))
        assert point.transmission == abs(point.t_p) ** 2
        assert point.transmission >= 0
        assert point.residual <= 1e-12

    def test_probe_amplitude_linearity(self, chain_one):
        from dataclasses import replace

        ss = solve_steady(chain_one)
        eta = eta_at(chain_one, 2.5e6)
        base = solve_response(ss, chain_one, eta)
        scaled_cfg = replace(
            chain_one, drive=replace(chain_one.drive, probe_power=1e-3)
        )
        scaled = solve_response(ss, scaled_cfg, eta)
        ratio = scaled_cfg.drive.probe_amplitude(eta) / chain_one.drive.probe_amplitude(eta)
        assert scaled.delta_a_minus[0] == pytest.approx(
            base.delta_a_minus[0] * ratio, rel=1e-12
        )
        assert scaled.transmission == pytest.approx(base.transmission, rel=1e-12)

    def test_probe_power_invariance_over_six_orders(self, chain_one):
        from dataclasses import replace

        ss = solve_steady(chain_one)
        eta = eta_at(chain_one, 6e6)
        values = []
        for p_in in (1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3):
            cfg = replace(chain_one, drive=replace(chain_one.drive, probe_power=p_in))
            values.append(solve_response(ss, cfg, eta).transmission)
        spread = (max(values) - min(values)) / min(values)
        assert spread <= 1e-9

    def test_reciprocal_at_rest(self, chain_two):
        ss_f = solve_steady(chain_two)
        ss_b = solve_steady(chain_two.reversed_probe())
        for dp in np.linspace(-15e6, 15e6, 21):
            t_f = solve_response(ss_f, chain_two, eta_at(chain_two, dp)).transmission
            t_b = solve_response(
                ss_b, chain_two.reversed_probe(), eta_at(chain_two, dp)
            ).transmission
            assert abs(t_f - t_b) <= 1e-12

    def test_singular_point_raises_with_eta(self):
        config = passive_chain(gamma_m=0.0)
        ss = solve_steady(config)
        eta = angular(config.resonators[0].omega_m)  # mechanical line vanishes
        with pytest.raises(SingularSystem) as err:
            solve_response(ss, config, eta)
        assert err.value.eta == eta


class TestClosedFormSingle:
    def test_matches_general_solver_on_dense_grid(self, chain_one):
        ss = solve_steady(chain_one)
        grid = np.linspace(-40e6, 40e6, 1001)
        etas = angular(chain_one.resonators[0].omega_m + grid)
        closed = closed_form_single(
            ss, chain_one.resonators[0], chain_one.drive, etas
        )
        worst = 0.0
        for k, eta in enumerate(etas):
            point = solve_response(ss, chain_one, eta)
            worst = max(
                worst,
                abs(point.delta_a_minus[0] - closed[k]) / abs(closed[k]),
            )
        assert worst <= 1e-10

    def test_spinning_resonator_also_matches(self):
        config = reference_chain((100e3,))
        ss = solve_steady(config)
        for dp in (-40e6, -10e6, 0.0, 5e6, 40e6):
            eta = eta_at(config, dp)
            point = solve_response(ss, config, eta)
            closed = closed_form_single(ss, config.resonators[0], config.drive, eta)
            assert abs(point.delta_a_minus[0] - closed) / abs(closed) <= 1e-10

    def test_no_coupling_limit_is_bare_cavity(self):
        config = passive_chain()
        ss = solve_steady(config)
        eta = eta_at(config, 2e6)
        kex = angular(config.drive.kappa_ex)
        beta = 0.5 * (kex + angular(config.resonators[0].kappa_in))
        dc = angular(effective_detuning(config.resonators[0], config.drive))
        eps_p = config.drive.probe_amplitude(eta)
        bare = np.sqrt(kex) * eps_p / (beta + 1j * dc - 1j * eta)
        closed = closed_form_single(ss, config.resonators[0], config.drive, eta)
        assert closed == pytest.approx(bare, rel=1e-12)

    def test_overdamped_mechanics_freeze_out(self):
        # gamma_m huge: the mechanical response is suppressed and the probe
        # sees the bare cavity.
        res = make_resonator(gamma_m=1e9 * 200e6)
        drive = DriveSpec(
            omega_l=193.5e12 - 200e6,
            pump_power=10.0,
            probe_power=1e-6,
            kappa_ex=6.45e6,
        )
        config = ChainConfig(resonators=(res,), couplings=(), drive=drive)
        ss = solve_steady(config)
        eta = eta_at(config, 1e6)
        closed = closed_form_single(ss, res, drive, eta)
        kex = angular(drive.kappa_ex)
        beta = 0.5 * (kex + angular(res.kappa_in))
        dt = angular(effective_detuning(res, drive)) - angular(res.xi) * ss.x[0]
        bare = np.sqrt(kex) * drive.probe_amplitude(eta) / (beta + 1j * dt - 1j * eta)
        assert abs(abs(closed) - abs(bare)) / abs(bare) < 1e-6

    def test_decoupled_pair_reduces_to_single(self):
        pair = reference_chain((25e3, 85e3), coupling=0.0)
        single = ChainConfig(
            resonators=(pair.resonators[0],), couplings=(), drive=pair.drive
        )
        ss_pair = solve_steady(pair)
        ss_single = solve_steady(single)
        for dp in (-12e6, 0.0, 9e6):
            eta = eta_at(pair, dp)
            a_pair = solve_response(ss_pair, pair, eta).delta_a_minus[0]
            a_single = solve_response(ss_single, single, eta).delta_a_minus[0]
            assert abs(a_pair - a_single) / abs(a_single) <= 1e-10
