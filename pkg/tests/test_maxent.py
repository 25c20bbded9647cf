import math
from fractions import Fraction as F

import numpy as np
import pytest

from logent.entropy import Dist, H, kl_divergence, logical_divergence
from logent.errors import Infeasible, InfeasibleMean, LengthMismatch, SchemaError
from logent.maxent import (
    MAX_CANDIDATES,
    BoltzmannProblem,
    MeanConstraintProblem,
    boltzmann_exact,
    boltzmann_shannon_approx,
    compare_solutions,
    interior_bounds,
    mean_equation,
    multinomial,
    prob_variance,
    solve_max_logical,
    solve_max_shannon,
    stirling_pair,
)

from oracles import (
    constrained_grid,
    feasible_occupancies_brute,
    grid_logical,
    grid_shannon,
    random_mean_problem,
)

DICE = tuple(range(1, 7))


def dice(m, mode="exact"):
    return MeanConstraintProblem(DICE, m, mode)


class TestProblem:
    def test_validation(self):
        with pytest.raises(SchemaError):
            MeanConstraintProblem((1,), 1)
        with pytest.raises(SchemaError):
            MeanConstraintProblem((1, 1, 2), F(3, 2))
        with pytest.raises(InfeasibleMean):
            MeanConstraintProblem((1, 2), 3)

    def test_mean_and_variance(self):
        p = dice(4)
        assert p.mu() == F(7, 2)
        assert p.var() == F(35, 12)

    def test_float_input_read_exactly(self):
        assert dice(4.5).target_mean == F(9, 2)


class TestShannon:
    def test_dice_4_5(self):
        s = solve_max_shannon(dice(F(9, 2)))
        # solved to full precision; compare at the 4-decimal level
        np.testing.assert_allclose(
            s.probs.probs, [0.054353, 0.078772, 0.114160, 0.165447, 0.239774, 0.347494], atol=1e-6
        )
        assert s.w == pytest.approx(1.449254, abs=1e-6)
        assert s.multipliers.tau == pytest.approx(-math.log(s.w))
        assert s.active_zero_set == frozenset()

    def test_dice_5(self):
        s = solve_max_shannon(dice(5))
        np.testing.assert_allclose(
            s.probs.probs, [0.0205, 0.0385, 0.0723, 0.1357, 0.2548, 0.4781], atol=5e-5
        )

    def test_indifference(self):
        s = solve_max_shannon(dice(F(7, 2)))
        np.testing.assert_allclose(s.probs.probs, [1 / 6] * 6, atol=1e-15)
        assert s.multipliers.tau == 0

    def test_constraints(self, rng):
        for n in range(2, 7):
            vals, m = random_mean_problem(rng, n)
            s = solve_max_shannon(MeanConstraintProblem(vals, m))
            p = np.array(s.probs.probs)
            assert p.sum() == pytest.approx(1, abs=1e-12)
            assert p @ np.array([float(v) for v in vals]) == pytest.approx(float(m), abs=1e-10)
            assert (p > 0).all()

    def test_lagrangian_normaliser(self):
        s = solve_max_shannon(dice(5))
        z = sum(math.exp(-s.multipliers.tau * x) for x in DICE)
        assert math.exp(1 + s.multipliers.lam) == pytest.approx(z)

    def test_non_integer_values(self):
        s = solve_max_shannon(MeanConstraintProblem((0.5, 1.25, 2.0, 3.75), 2.5))
        assert np.dot(s.probs.probs, (0.5, 1.25, 2.0, 3.75)) == pytest.approx(2.5, abs=1e-12)

    def test_extreme_means_rejected(self):
        with pytest.raises(InfeasibleMean):
            solve_max_shannon(dice(6))
        with pytest.raises(InfeasibleMean):
            solve_max_shannon(dice(1))

    def test_near_extreme(self):
        s = solve_max_shannon(MeanConstraintProblem(DICE, 5.999))
        assert np.dot(s.probs.probs, DICE) == pytest.approx(5.999, abs=1e-10)

    def test_mean_equation_increasing(self):
        ws = np.geomspace(1e-3, 1e3, 400)
        g = [mean_equation(DICE, w) for w in ws]
        assert all(b > a for a, b in zip(g, g[1:]))

    def test_beats_feasible_perturbations(self, rng):
        prob = dice(F(9, 2))
        s = solve_max_shannon(prob)
        p = np.array(s.probs.probs)
        x = np.array(DICE, dtype=float)
        # directions preserving both constraints
        basis = np.linalg.svd(np.vstack([np.ones(6), x]))[2][2:]
        for _ in range(200):
            q = p + 0.02 * rng.normal(size=4) @ basis
            if (q < 0).any():
                continue
            assert H(s.probs) >= H(Dist(tuple(q / q.sum()))) - 1e-9


class TestLogical:
    def test_dice_4_5(self):
        s = solve_max_logical(dice(F(9, 2)))
        assert s.probs.probs == tuple(F(k, 210) for k in (5, 17, 29, 41, 53, 65))
        assert s.active_zero_set == frozenset()

    def test_indifference(self):
        s = solve_max_logical(dice(F(7, 2)))
        assert s.probs.probs == (F(1, 6),) * 6

    def test_dice_5_active_set(self):
        s = solve_max_logical(dice(5))
        assert s.probs.probs == tuple(F(k, 10) for k in (0, 0, 1, 2, 3, 4))
        assert s.active_zero_set == frozenset({0, 1})

    def test_low_mean_active_set(self):
        s = solve_max_logical(dice(F(3, 2)))
        p = s.probs.probs
        assert sum(p) == 1
        assert sum(a * b for a, b in zip(p, DICE)) == F(3, 2)
        assert p[-1] == 0

    def test_multipliers(self):
        s = solve_max_logical(dice(F(9, 2)))
        lam, tau = s.multipliers.lam, s.multipliers.tau
        for p, x in zip(s.probs.probs, DICE):
            assert p == (lam - tau * x) / 2

    def test_float_mode(self):
        s = solve_max_logical(dice(5.0, "float"))
        np.testing.assert_allclose(s.probs.probs, [0, 0, 0.1, 0.2, 0.3, 0.4], atol=1e-14)

    def test_value_at_mean_gets_one_over_n(self):
        vals = (1, 2, 3, 4, 5)
        lo, hi = interior_bounds(MeanConstraintProblem(vals, 3))
        for m in (lo + F(1, 7), F(3), hi - F(1, 9)):
            s = solve_max_logical(MeanConstraintProblem(vals, m))
            assert s.probs.probs[2] == F(1, 5)

    def test_extreme_means_rejected(self):
        with pytest.raises(InfeasibleMean):
            solve_max_logical(dice(6))

    def test_kkt_on_random_problems(self, rng):
        for _ in range(60):
            n = int(rng.integers(2, 7))
            vals, m = random_mean_problem(rng, n)
            s = solve_max_logical(MeanConstraintProblem(vals, m))
            p = s.probs.probs
            assert sum(p) == 1
            assert sum(a * b for a, b in zip(p, vals)) == m
            assert all(v >= 0 for v in p)
            lam, tau = s.multipliers.lam, s.multipliers.tau
            for i, x in enumerate(vals):
                # stationarity on the support, dual feasibility off it
                if p[i] > 0:
                    assert 2 * p[i] == lam - tau * x
                else:
                    assert lam - tau * x <= 0


class TestInteriorBounds:
    def test_dice(self):
        assert interior_bounds(dice(4)) == (F(7, 3), F(14, 3))

    def test_two_points(self):
        assert interior_bounds(MeanConstraintProblem((0, 1), F(1, 2))) == (0, 1)

    def test_three_points_grid_scan(self):
        vals = (0, 1, 2)
        lo, hi = interior_bounds(MeanConstraintProblem(vals, 1))
        assert (lo, hi) == (F(1, 3), F(5, 3))
        mu, var = F(1), F(2, 3)
        for k in range(1, 400):
            m = F(k, 200)
            closed = [F(1, 3) + (mu - m) * (mu - x) / (3 * var) for x in vals]
            assert (min(closed) >= 0) == (lo <= m <= hi)

    def test_closed_form_used_inside(self):
        lo, hi = interior_bounds(dice(4))
        for m in (lo, (lo + hi) / 2, hi):
            assert solve_max_logical(dice(m)).iterations == 1


class TestGridOracles:
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_both_solvers_beat_grid(self, rng, n):
        for _ in range(3):
            vals, m = random_mean_problem(rng, n)
            prob = MeanConstraintProblem(vals, m)
            pts = constrained_grid(vals, m)
            lg = solve_max_logical(prob)
            sh = solve_max_shannon(prob)
            assert float(lg.objective) >= grid_logical(pts).max() - 1e-12
            assert sh.objective >= grid_shannon(pts).max() - 1e-9

    def test_kl_duality(self):
        vals, m = (1, 2, 4, 7), F(5)
        pts = constrained_grid(vals, m)
        sh = solve_max_shannon(MeanConstraintProblem(vals, m))
        kl = np.array([kl_divergence(Dist(tuple(p / p.sum())), Dist.uniform(4, "float")) for p in pts])
        best = pts[kl.argmin()]
        assert best.tolist() == pts[grid_shannon(pts).argmax()].tolist()
        assert kl_divergence(sh.probs, Dist.uniform(4, "float")) <= kl.min() + 1e-12

    def test_logical_duality(self):
        vals, m = (1, 2, 4, 7), F(5)
        pts = constrained_grid(vals, m)
        lg = solve_max_logical(MeanConstraintProblem(vals, m))
        d = ((pts - 0.25) ** 2).sum(axis=1) * 4
        assert pts[d.argmin()].tolist() == pts[grid_logical(pts).argmax()].tolist()
        assert float(logical_divergence(lg.probs, Dist.uniform(4))) <= d.min() + 1e-12


class TestCompare:
    def test_dice_pairs(self):
        for m in (F(9, 2), F(5)):
            c = compare_solutions(solve_max_logical(dice(m)), solve_max_shannon(dice(m)))
            assert c.var_a < c.var_b
            assert c.dist_uniform_a < c.dist_uniform_b
            assert c.kl_from_uniform_a > c.kl_from_uniform_b

    def test_published_m5_vectors(self):
        a = Dist(tuple(F(k, 10) for k in (0, 0, 1, 2, 3, 4)))
        b = Dist((0.0205, 0.0385, 0.0723, 0.1357, 0.2548, 0.4782))
        assert prob_variance(a) < prob_variance(b)

    def test_identical(self):
        s = solve_max_logical(dice(4))
        c = compare_solutions(s, s)
        assert c.var_a == c.var_b and c.dist_uniform_a == c.dist_uniform_b

    def test_variance_formula(self):
        d = Dist((F(1, 2), F(1, 4), F(1, 4)))
        assert prob_variance(d) == sum((p - F(1, 3)) ** 2 for p in d.probs) / 3

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            compare_solutions(Dist.uniform(2), Dist.uniform(3))


class TestBoltzmann:
    def test_worked_example(self):
        r = boltzmann_exact(BoltzmannProblem(10, (1, 2, 3), 22))
        assert r.occupancies == (2, 4, 4)
        assert r.multinomial == 3150
        assert r.normalized_log == pytest.approx(0.8055, abs=5e-5)

    def test_feasible_set_matches_enumeration(self):
        r = boltzmann_exact(BoltzmannProblem(10, (1, 2, 3), 22))
        brute = feasible_occupancies_brute(10, (1, 2, 3), 22)
        assert [o for o, _ in r.feasible] == sorted(brute)
        # includes (0, 8, 2), which a hand tabulation can easily miss
        assert dict(r.feasible) == {
            (0, 8, 2): 45, (1, 6, 3): 840, (2, 4, 4): 3150, (3, 2, 5): 2520, (4, 0, 6): 210,
        }

    def test_single_level(self):
        r = boltzmann_exact(BoltzmannProblem(1, (5,), 5))
        assert (r.occupancies, r.multinomial, r.normalized_log) == ((1,), 1, 0.0)

    def test_tie_break_lexicographic(self):
        # (1,1,0,...) style ties: two particles on levels 0 and 2 or both on 1
        r = boltzmann_exact(BoltzmannProblem(2, (0, 1, 2), 2))
        assert dict(r.feasible) == {(0, 2, 0): 1, (1, 0, 1): 2}
        r = boltzmann_exact(BoltzmannProblem(2, (0, 1, 2, 3), 3))
        assert dict(r.feasible) == {(0, 1, 1, 0): 2, (1, 0, 0, 1): 2}
        assert r.occupancies == (0, 1, 1, 0)

    def test_infeasible(self):
        with pytest.raises(Infeasible):
            boltzmann_exact(BoltzmannProblem(10, (1, 2, 3), 35))
        with pytest.raises(Infeasible):
            boltzmann_exact(BoltzmannProblem(10, (1, 2, 3), 22.5))

    def test_candidate_guard(self):
        with pytest.raises(Infeasible, match="exceeds"):
            boltzmann_exact(BoltzmannProblem(200, tuple(range(8)), 700))
        assert math.comb(200 + 7, 7) > MAX_CANDIDATES

    def test_problem_validation(self):
        with pytest.raises(SchemaError):
            BoltzmannProblem(0, (1,), 0)

    def test_multinomial(self):
        assert multinomial((2, 4, 4)) == 3150
        assert multinomial((0, 8, 2)) == 45


class TestStirling:
    def test_relaxation(self):
        r = boltzmann_shannon_approx(BoltzmannProblem(10, (1, 2, 3), 22))
        np.testing.assert_allclose(r.occupancies_real, (2.3837, 3.2326, 4.3837), atol=5e-4)
        assert r.H_e == pytest.approx(1.0684, abs=5e-5)
        assert sum(r.occupancies_real) == pytest.approx(10)

    def test_uniform_when_mean_is_central(self):
        r = boltzmann_shannon_approx(BoltzmannProblem(9, (1, 2, 3), 18))
        np.testing.assert_allclose(r.occupancies_real, (3, 3, 3), atol=1e-12)

    def test_gap_shrinks(self):
        gaps = []
        for n in (10, 100, 1000):
            occ = (n // 5, 2 * n // 5, 2 * n // 5)
            lhs, rhs = stirling_pair(occ)
            assert lhs <= rhs
            gaps.append(rhs - lhs)
        assert gaps[0] > gaps[1] > gaps[2]

    def test_pair_against_exact_log(self):
        lhs, _ = stirling_pair((2, 4, 4))
        assert lhs == pytest.approx(math.log(3150) / 10)
