import math
import random

import pytest

from etcrit.errors import UnboundError
from etcrit.identical import (IdenticalSystem, energy_exponential_closed,
                              radial_weight, solve_energy,
                              solve_energy_improved, solve_energy_q)
from etcrit.potentials import make_builtin, parse_custom
from etcrit.quantum import StateSpec, bosonic_ground

EXP = make_builtin("exponential", 1.0)
SYS2_40 = IdenticalSystem(2, 1.0, 40.0, EXP)


def pair(n, l):
    return StateSpec(((n, l),), 3)


class TestSolveEnergy:
    def test_two_body_ground(self):
        sol = solve_energy(SYS2_40, bosonic_ground(2, 3))
        assert sol.bound
        assert sol.energy == pytest.approx(-15.7, abs=0.051)
        assert all(r <= 1e-9 for r in sol.residuals)
        assert sol.rho0 > 0 and sol.p0 > 0

    def test_orbital_excitation(self):
        sol = solve_energy(SYS2_40, pair(0, 1))
        assert sol.energy == pytest.approx(-8.56, abs=0.0051)

    def test_weak_coupling_unbound(self):
        weak = IdenticalSystem(2, 1.0, 0.5, EXP)
        sol = solve_energy(weak, pair(1, 1))
        assert not sol.stationary and not sol.bound
        assert math.isnan(sol.energy)

    def test_positive_stationary_energy_reported(self):
        # stationary point exists but sits above zero: the energy is still
        # returned and only the bound flag says no
        sol = solve_energy_improved(SYS2_40, pair(1, 2))
        assert sol.stationary and not sol.bound
        assert sol.energy == pytest.approx(0.02, abs=0.01)

    def test_harmonic_exact(self):
        harmonic = make_builtin("power_law", 1.0, exponent=2.0)
        for n in range(2, 11):
            k = 0.7
            sysn = IdenticalSystem(n, 1.0, k, harmonic)
            sol = solve_energy(sysn, bosonic_ground(n, 3))
            q = 1.5 * (n - 1)
            assert sol.energy == pytest.approx(q * math.sqrt(2.0 * k * n),
                                               rel=1e-10)
            assert sol.bound  # confining: bound at positive energy

    def test_attractive_power_law(self):
        coulombic = make_builtin("power_law", 1.0, exponent=-1.0)
        sys2 = IdenticalSystem(2, 1.0, 1.0, coulombic)
        sol = solve_energy(sys2, bosonic_ground(2, 3))
        # stationary value -g^2 m / (4 Q^2) (eliminate p0, minimize in rho)
        assert sol.energy == pytest.approx(-1.0 / (4.0 * 1.5 ** 2), rel=1e-10)
        # the split-improved spectrum is exact here: -g^2 m / (4 (n+l+1)^2),
        # the two-body Coulomb ground energy for reduced mass m/2
        improved = solve_energy_improved(sys2, bosonic_ground(2, 3))
        assert improved.energy == pytest.approx(-0.25, rel=1e-10)

    def test_state_size_mismatch(self):
        with pytest.raises(ValueError):
            solve_energy(SYS2_40, bosonic_ground(3, 3))

    def test_bad_system(self):
        with pytest.raises(ValueError):
            IdenticalSystem(1, 1.0, 1.0, EXP)
        with pytest.raises(ValueError):
            IdenticalSystem(2, -1.0, 1.0, EXP)


class TestClosedForm:
    def test_matches_generic_on_anchor(self):
        closed = energy_exponential_closed(SYS2_40, 1.5)
        generic = solve_energy_q(SYS2_40, 1.5)
        assert closed.energy == pytest.approx(generic.energy, rel=1e-9)
        assert closed.rho0 == pytest.approx(generic.rho0, rel=1e-9)

    def test_random_agreement(self):
        rng = random.Random(7)
        checked = 0
        while checked < 50:
            n = rng.randint(2, 9)
            mass = rng.uniform(0.2, 4.0)
            mu = rng.uniform(0.4, 2.5)
            g = 10.0 ** rng.uniform(-0.5, 2.0)
            q = 1.5 * (n - 1) * rng.uniform(1.0, 2.5)
            z = ((4.0 * (mu * q) ** 2 /
                  (n * (n - 1) ** 2 * g * mass)) ** (1 / 3)) / 3.0
            if z > 0.999 * math.exp(-1.0):
                continue
            checked += 1
            sysn = IdenticalSystem(n, mass, g, make_builtin("exponential", mu))
            closed = energy_exponential_closed(sysn, q)
            generic = solve_energy_q(sysn, q)
            assert abs(closed.energy - generic.energy) <= \
                1e-9 * max(abs(closed.energy), g)

    def test_unbound_when_z_large(self):
        sol = energy_exponential_closed(IdenticalSystem(2, 1.0, 0.1, EXP), 1.5)
        assert not sol.stationary and not sol.bound

    def test_wrong_well_kind(self):
        with pytest.raises(ValueError):
            energy_exponential_closed(
                IdenticalSystem(2, 1.0, 1.0, make_builtin("gaussian", 1.0)), 1.5)


class TestRadialWeight:
    def test_power_laws(self):
        for p, expected in ((2.0, 2.0), (-1.0, 1.0), (1.0, math.sqrt(3.0))):
            well = make_builtin("power_law", 1.0, exponent=p)
            w = radial_weight(IdenticalSystem(2, 1.0, 1.0, well),
                              bosonic_ground(2, 3))
            assert w == pytest.approx(expected, rel=1e-10)

    def test_exponential_value(self):
        w = radial_weight(IdenticalSystem(2, 1.0, 2.92, EXP),
                          bosonic_ground(2, 3))
        assert w == pytest.approx(1.516, abs=5e-4)

    def test_undefined_when_angular_solve_unbound(self):
        with pytest.raises(UnboundError):
            radial_weight(IdenticalSystem(2, 1.0, 0.05, EXP),
                          bosonic_ground(2, 3))


class TestImproved:
    def test_table_values(self):
        assert solve_energy_improved(SYS2_40, pair(0, 0)).energy == \
            pytest.approx(-17.3, abs=0.051)
        assert solve_energy_improved(SYS2_40, pair(0, 1)).energy == \
            pytest.approx(-9.92, abs=0.0051)

    def test_starred_cell_unbound(self):
        sol = solve_energy_improved(SYS2_40, pair(2, 1))
        assert not sol.bound

    def test_weight_two_recovers_plain(self):
        for state in (pair(0, 0), pair(1, 1), pair(0, 2)):
            plain = solve_energy(SYS2_40, state)
            forced = solve_energy_improved(SYS2_40, state, weight=2.0)
            assert forced.energy == plain.energy
            assert forced.rho0 == plain.rho0


class TestNearCriticalRobustness:
    def test_barely_bound_still_found(self):
        # z within 1e-6 of the existence boundary: the stationary dip is
        # narrower than the scan grid and must be recovered by refinement
        z_target = math.exp(-1.0) * (1.0 - 1e-6)
        q = 1.5
        g = 4.0 * q * q / (2.0 * (3.0 * z_target) ** 3)
        sysn = IdenticalSystem(2, 1.0, g, EXP)
        generic = solve_energy_q(sysn, q)
        closed = energy_exponential_closed(sysn, q)
        assert generic.stationary and closed.stationary
        assert generic.energy == pytest.approx(closed.energy,
                                               abs=1e-9 * max(1.0, g))


class TestCustomWell:
    def test_parsed_exponential_matches_builtin(self):
        parsed = parse_custom("exp(-r)", 1.0)
        sol_parsed = solve_energy(IdenticalSystem(2, 1.0, 40.0, parsed),
                                  bosonic_ground(2, 3))
        sol_builtin = solve_energy(SYS2_40, bosonic_ground(2, 3))
        assert sol_parsed.energy == pytest.approx(sol_builtin.energy, rel=1e-7)
