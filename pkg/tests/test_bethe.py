from fractions import Fraction as F

import numpy as np
import pytest

from slavnov_lab.bethe import (BetheSolution, bethe_residual, extended_residual, solve_bethe,
                               verify_on_shell)
from slavnov_lab.detforms import pdwpf_2Nx2N, slavnov
from slavnov_lab.errors import CardinalityMismatch, NoSolutionFound


def test_residual_examples():
    assert bethe_residual([F(-1, 2)], [0, 0]) == [0]
    assert bethe_residual([F(1)], [0, 0]) == [-3]


def test_residual_symmetric_in_y():
    b = [F(1, 3), F(-2, 7)]
    y = [F(0), F(1, 2), F(5), F(-1, 3)]
    assert bethe_residual(b, y) == bethe_residual(b, y[::-1])


def test_residual_degree():
    # F_1 as a polynomial in b_1 has degree <= L + N
    y = [F(0), F(1, 2), F(-3, 4)]
    b2 = F(2, 9)
    L, N = len(y), 2
    pts = [F(k, 3) for k in range(L + N + 3)]
    vals = [bethe_residual([u, b2], y)[0] for u in pts]
    V = np.array([[float(u) ** j for j in range(L + N + 1)] for u in pts[:L + N + 1]])
    coef = np.linalg.solve(V, np.array([float(v) for v in vals[:L + N + 1]]))
    for u, v in zip(pts[L + N + 1:], vals[L + N + 1:]):
        assert abs(np.polyval(coef[::-1], float(u)) - float(v)) < 1e-8 * max(1, abs(float(v)))


def test_solve_l2():
    sols = solve_bethe(2, 1, [0, 0])
    assert len(sols) == 1
    assert abs(sols[0].roots[0] + 0.5) < 1e-12


def test_solve_quartic_against_numpy():
    sols = solve_bethe(4, 1, [0, 0, 0, 0])
    # -(b+1)^4 + b^4 is a cubic
    coeffs = np.polysub([1, 0, 0, 0, 0], np.poly1d([1, 1]) ** 4)
    ref = sorted(np.roots(coeffs), key=lambda z: (round(z.real, 8), round(z.imag, 8)))
    got = [s.roots[0] for s in sols]
    assert len(got) == len(ref)
    for z in ref:
        assert min(abs(z - w) for w in got) < 1e-10
    for s in sols:
        assert extended_residual(s.roots, s.y) < 1e-12


def test_two_magnons_satisfy_lemma2():
    for L in (4, 5, 6):
        y = [0] * L if L == 4 else [F(k, 3) for k in range(L)]
        sols = solve_bethe(L, 2, y)
        assert sols
        for sol in sols:
            assert sol.residual_max < 1e-10
            x = [0.3 + 0.2j, -0.7 + 0.45j]
            s = slavnov(x, sol, y)
            z = pdwpf_2Nx2N(x, list(sol.roots), y)
            assert abs(s - z) / max(1, abs(s)) < 1e-8


def test_conjugation_closure():
    y = [F(0), F(1, 2), F(-1, 3), F(2)]
    sols = solve_bethe(4, 1, y, seeds=40)
    for s in sols:
        conj = [r.conjugate() for r in s.roots]
        assert any(all(abs(a - b) < 1e-7 for a, b in zip(sorted(conj, key=abs), sorted(o.roots, key=abs)))
                   for o in sols)


def test_degenerate_sets_rejected():
    # roots differing by 1 or sitting on y are never returned
    sols = solve_bethe(5, 2, [0] * 5)
    for s in sols:
        a, b = s.roots
        assert min(abs(a - b), abs(a - b - 1), abs(a - b + 1)) > 1e-6
        assert all(abs(r) > 1e-6 and abs(r + 1) > 1e-6 for r in s.roots)


def test_deterministic():
    a = solve_bethe(5, 2, [F(k, 2) for k in range(5)], rng_seed=7)
    b = solve_bethe(5, 2, [F(k, 2) for k in range(5)], rng_seed=7)
    assert [s.roots for s in a] == [s.roots for s in b]


def test_verify_on_shell():
    sol = solve_bethe(2, 1, [0, 0])[0]
    assert verify_on_shell(sol).passed
    bumped = BetheSolution.from_roots([sol.roots[0] + 1e-3], [0, 0])
    rep = verify_on_shell(bumped)
    assert not rep.passed
    # F = -(b+1)^2 + b^2 = -2b - 1, so |dF/db| = 2
    assert rep.residual_max == pytest.approx(2e-3, rel=1e-6)
    empty = BetheSolution((), 0.0, 2, (0, 0))
    assert verify_on_shell(empty).passed


def test_errors():
    with pytest.raises(CardinalityMismatch):
        solve_bethe(3, 2, [0, 0, 0])
    with pytest.raises(CardinalityMismatch):
        solve_bethe(3, 1, [0, 0])
    with pytest.raises(ValueError):
        solve_bethe(2, 1, [0, 0], seeds=0)


def test_no_solution_found():
    # with y = {0, 1} the cleared equation is -2b = 0 and b = 0 sits on y_1
    with pytest.raises(NoSolutionFound):
        solve_bethe(2, 1, [0, 1], seeds=4)
