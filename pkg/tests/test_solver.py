import math

import numpy as np
import pytest

from blowup_profiles import matching, solver
from blowup_profiles.errors import DomainError


class TestSeeds:
    def test_small_h_seed_value(self):
        assert abs(solver.sigma_seed_small_h(0.5)
                   - 2.0 * math.exp(-2.0 * math.pi) * 2.0) < 1e-15

    def test_large_h_seed_value(self):
        assert solver.sigma_seed_large_h(10.0) == 0.4

    def test_log_asymptote_identity(self):
        # log(2 e^{-pi h_inv} h_inv) = log 2 - pi h_inv + log h_inv exactly
        for h_inv in (0.5, 1.0, 3.0):
            direct = math.log(solver.sigma_seed_small_h(1.0 / h_inv))
            assert abs(direct - solver.log_sigma_asymptote(h_inv)) < 1e-12

    def test_h_seed_near_three(self):
        assert abs(solver.h_seed_for_p(3.001)
                   - math.pi / math.log(8000.0)) < 1e-12

    def test_domains(self):
        for fn in (solver.sigma_seed_small_h, solver.sigma_seed_large_h):
            with pytest.raises(DomainError):
                fn(-1.0)
        with pytest.raises(DomainError):
            solver.h_seed_for_p(3.0)


class TestSolveSigma:
    def test_large_h_matches_expansion(self):
        root = solver.solve_sigma(1000.0)
        assert abs(root.value - 0.499) <= 5e-6
        assert root.converged and root.residual <= 1e-12

    def test_small_h_matches_seed(self):
        root = solver.solve_sigma(0.3)
        seed = solver.sigma_seed_small_h(0.3)
        assert abs(root.value - seed) / seed < 3.0 * 0.3

    def test_unit_h_cross_representation(self):
        root = solver.solve_sigma(1.0)
        assert root.residual <= 1e-12
        alt = matching.f_phase_stable_form(root.value, 1.0, 1.0).f
        assert abs(alt) <= 1e-9

    def test_oracle_roots(self, oracle):
        for row in oracle["sigma_roots"]:
            root = solver.solve_sigma(row["h"])
            assert abs(root.value - row["sigma"]) < 1e-10

    def test_bracket_fields(self):
        root = solver.solve_sigma(2.0)
        assert root.bracket_lo < root.value < root.bracket_hi

    def test_seed_quality_scaling(self):
        # |sigma(h)/seed - 1| <= C h with one C <= 3 across h <= 0.5
        worst_c = 0.0
        for h in (0.2, 0.3, 0.4, 0.5):
            root = solver.solve_sigma(h)
            seed = solver.sigma_seed_small_h(h)
            worst_c = max(worst_c, abs(root.value - seed) / seed / h)
        assert worst_c <= 3.0

    def test_domain(self):
        with pytest.raises(DomainError):
            solver.solve_sigma(-2.0)
        with pytest.raises(DomainError):
            solver.solve_sigma(1.0, tol=-1e-3)

    def test_never_evaluates_outside_unit_interval(self, monkeypatch):
        seen = []
        original = matching.f_phase

        def spy(sigma, h_inv, kappa):
            seen.append(sigma)
            return original(sigma, h_inv, kappa)

        monkeypatch.setattr(solver.matching, "f_phase", spy)
        solver.solve_sigma(0.7)
        assert seen and all(0.0 <= s <= 1.0 for s in seen)


class TestUniqueness:
    def test_single_sign_change(self):
        for h in (0.3, 1.0, 5.0, 50.0):
            h_inv = 1.0 / h
            vals = [matching.f_phase(s, h_inv, 1.0).f
                    for s in np.linspace(0.0, 1.0, 200)]
            changes = sum(1 for a, b in zip(vals, vals[1:]) if (a < 0) != (b < 0))
            assert changes == 1


class TestSolveHForP:
    def test_near_critical_seed(self):
        root = solver.solve_h_for_p(3.001)
        seed = solver.h_seed_for_p(3.001)
        assert abs(root.value - seed) / seed < 0.25

    def test_p5_oracle(self, oracle):
        row = oracle["h_for_p"][0]
        root = solver.solve_h_for_p(row["p"])
        assert abs(root.value - row["h"]) < 1e-7

    def test_round_trip(self):
        tol = 1e-10
        for p in (4.0, 5.0, 7.0):
            root = solver.solve_h_for_p(p, tol=tol)
            sigma_c = 0.5 - 1.0 / (p - 1.0)
            back = solver.solve_sigma(root.value).value
            assert abs(back - sigma_c) <= 10.0 * tol

    def test_domain(self):
        with pytest.raises(DomainError):
            solver.solve_h_for_p(2.5)


class TestSweep:
    def test_monotone_and_endpoint(self):
        rows = solver.sweep_sigma(0.1, 6.0, 60)
        sig = [r.sigma for r in rows]
        assert all(a > b for a, b in zip(sig, sig[1:]))
        assert abs(sig[0] - 0.5) < 0.1      # approaches 1/2 as h_inv -> 0

    def test_asymptote_agreement_at_three(self):
        rows = solver.sweep_sigma(3.0, 3.0 + 1e-9, 2)
        dev = abs(rows[0].log_sigma - rows[0].asym_log_sigma)
        assert dev <= 0.15

    def test_degenerate_two_steps(self):
        rows = solver.sweep_sigma(1.0, 2.0, 2)
        assert len(rows) == 2
        assert rows[0].h_inv == 1.0 and rows[1].h_inv == 2.0

    def test_residual_column(self):
        for row in solver.sweep_sigma(0.5, 2.0, 5, tol=1e-12):
            assert row.f_residual <= 1e-12

    def test_worker_determinism(self):
        serial = solver.sweep_sigma(0.5, 4.0, 9, workers=1)
        threaded = solver.sweep_sigma(0.5, 4.0, 9, workers=4)
        assert [r.sigma for r in serial] == [r.sigma for r in threaded]

    def test_domain(self):
        with pytest.raises(DomainError):
            solver.sweep_sigma(2.0, 1.0, 10)
        with pytest.raises(DomainError):
            solver.sweep_sigma(1.0, 2.0, 1)


class TestKappaMinusGuard:
    def test_no_root_on_grid(self):
        ok, cells = solver.kappa_minus_scan(sigma_steps=60, h_inv_steps=15)
        assert ok and cells > 0
