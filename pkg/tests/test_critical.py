import math

import pytest

from etcrit.critical import (critical_coupling, critical_coupling_improved,
                             well_factor, zero_energy_radius)
from etcrit.errors import NoRootError
from etcrit.identical import IdenticalSystem, solve_energy
from etcrit.potentials import make_builtin, parse_custom
from etcrit.quantum import StateSpec, bosonic_ground

EXP = make_builtin("exponential", 1.0)


def pair(n, l):
    return StateSpec(((n, l),), 3)


class TestZeroEnergyRadius:
    @pytest.mark.parametrize("kind, expected", [
        ("exponential", 2.0), ("yukawa", 1.0), ("gaussian", 1.0),
    ])
    def test_algebraic_roots(self, kind, expected):
        assert zero_energy_radius(make_builtin(kind, 1.0)) == \
            pytest.approx(expected, rel=1e-12)

    def test_scales_with_mu(self):
        assert zero_energy_radius(make_builtin("exponential", 4.0)) == \
            pytest.approx(0.5, rel=1e-12)

    def test_power_law_has_no_root(self):
        with pytest.raises(NoRootError):
            zero_energy_radius(make_builtin("power_law", 1.0, exponent=-1.0))


class TestWellFactor:
    @pytest.mark.parametrize("mu", [0.5, 1.0, 3.0])
    def test_table_values(self, mu):
        assert well_factor(make_builtin("yukawa", mu)) == \
            pytest.approx(math.e * mu ** 2, rel=1e-10)
        assert well_factor(make_builtin("exponential", mu)) == \
            pytest.approx(math.e ** 2 * mu ** 2 / 4.0, rel=1e-10)
        assert well_factor(make_builtin("gaussian", mu)) == \
            pytest.approx(math.e * mu ** 2, rel=1e-10)

    def test_alternate_form(self):
        # 1/(rho^2 v) equals -2/(rho^3 v') at the zero-energy radius
        for kind in ("yukawa", "exponential", "gaussian"):
            well = make_builtin(kind, 1.3)
            rho = zero_energy_radius(well)
            assert well_factor(well) == pytest.approx(
                -2.0 / (rho ** 3 * well.v1(rho)), rel=1e-10)


class TestCriticalCoupling:
    def test_two_body_ground(self):
        result = critical_coupling(EXP, 2, 1.0, bosonic_ground(2, 3))
        assert result.g_crit == pytest.approx(4.156, abs=0.0051)
        assert result.bound_character == "upper_bound"
        assert result.method == "plain"

    def test_eleven_bosons(self):
        result = critical_coupling(EXP, 11, 1.0, bosonic_ground(11, 3))
        assert result.g_crit == pytest.approx(0.756, abs=0.001)

    def test_excited(self):
        assert critical_coupling(EXP, 2, 1.0, pair(1, 1)).g_crit == \
            pytest.approx(37.4, abs=0.051)

    def test_ratio_law_exact(self):
        values = {n: critical_coupling(EXP, n, 1.0, bosonic_ground(n, 3)).g_crit
                  for n in range(2, 13)}
        for n in range(3, 13):
            assert values[n] / values[n - 1] == \
                pytest.approx((n - 1) / n, rel=1e-12)

    def test_scaling_law(self):
        base = critical_coupling(EXP, 2, 1.0, bosonic_ground(2, 3)).g_crit
        for mu in (0.5, 1.0, 3.0):
            for mass in (0.5, 1.0, 2.0):
                got = critical_coupling(make_builtin("exponential", mu), 2,
                                        mass, bosonic_ground(2, 3)).g_crit
                assert got == pytest.approx(mu ** 2 / mass * base, rel=1e-12)

    def test_yukawa_gaussian_coincide(self):
        state = bosonic_ground(4, 3)
        yuk = critical_coupling(make_builtin("yukawa", 1.7), 4, 1.0, state)
        gau = critical_coupling(make_builtin("gaussian", 1.7), 4, 1.0, state)
        assert yuk.g_crit == pytest.approx(gau.g_crit, rel=1e-12)

    def test_energy_vanishes_at_critical(self):
        for n in (2, 5, 11):
            state = bosonic_ground(n, 3)
            g = critical_coupling(EXP, n, 1.0, state).g_crit
            sol = solve_energy(IdenticalSystem(n, 1.0, g, EXP), state)
            assert abs(sol.energy) <= 1e-8 * g

    def test_attractive_power_law_limit(self):
        result = critical_coupling(make_builtin("power_law", 1.0, exponent=-1.0),
                                   2, 1.0, bosonic_ground(2, 3))
        assert result.g_crit == 0.0 and not result.infinite

    def test_repulsive_power_law_limit(self):
        result = critical_coupling(make_builtin("power_law", 1.0, exponent=2.0),
                                   2, 1.0, bosonic_ground(2, 3))
        assert result.infinite and result.g_crit is None

    def test_custom_well_admissible(self):
        parsed = parse_custom("exp(-r)", 1.0)
        got = critical_coupling(parsed, 2, 1.0, bosonic_ground(2, 3)).g_crit
        assert got == pytest.approx(4.156344, rel=1e-7)

    def test_dimension_enters_through_q(self):
        base = critical_coupling(EXP, 2, 1.0, bosonic_ground(2, 3)).g_crit
        for d in (2, 4, 7):
            got = critical_coupling(EXP, 2, 1.0, bosonic_ground(2, d)).g_crit
            assert got == pytest.approx(base * (d / 3.0) ** 2, rel=1e-12)


class TestImprovedCritical:
    @pytest.mark.parametrize("state, expected", [
        (pair(0, 0), 2.92), (pair(0, 1), 8.71), (pair(1, 0), 16.0),
        (pair(2, 2), 73.1),
    ])
    def test_table_values(self, state, expected):
        result = critical_coupling_improved(EXP, 2, 1.0, state)
        assert result.g_crit == pytest.approx(expected, abs=0.051)
        assert result.bound_character == "no_guarantee"

    def test_iteration_trace_recorded(self):
        result = critical_coupling_improved(EXP, 2, 1.0, pair(0, 0))
        assert len(result.trace) >= 2
        assert result.trace[-1] == pytest.approx(result.g_crit, rel=1e-9)

    def test_fixed_point_property(self):
        # the returned value maps to itself under the update
        from etcrit.identical import radial_weight_from_angular
        from etcrit.quantum import split_quantum_number

        state = pair(1, 1)
        result = critical_coupling_improved(EXP, 2, 1.0, state)
        split = split_quantum_number(state)
        w = radial_weight_from_angular(EXP, 2, 1.0, result.g_crit,
                                       split.angular)
        q_eff = w * split.radial + split.angular
        mapped = result.factor * (q_eff ** 2)
        assert mapped == pytest.approx(result.g_crit, rel=1e-9)

    def test_improved_below_plain(self):
        for state in (pair(0, 0), pair(1, 0), pair(2, 1)):
            plain = critical_coupling(EXP, 2, 1.0, state).g_crit
            improved = critical_coupling_improved(EXP, 2, 1.0, state).g_crit
            assert improved < plain

    def test_rejects_one_dimension(self):
        with pytest.raises(ValueError):
            critical_coupling_improved(EXP, 2, 1.0,
                                       StateSpec(((0, 0),), 1))

    def test_rejects_vanishing_angular_part(self):
        # D = 2 ground state: angular quantum number is exactly zero
        with pytest.raises(ValueError):
            critical_coupling_improved(EXP, 2, 1.0, bosonic_ground(2, 2))

    def test_power_law_short_circuit(self):
        result = critical_coupling_improved(
            make_builtin("power_law", 1.0, exponent=-0.5), 2, 1.0,
            bosonic_ground(2, 3))
        assert result.g_crit == 0.0
