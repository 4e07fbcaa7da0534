import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from slavnov_lab.errors import CardinalityMismatch, DegenerateParams, ZeroDenominator
from slavnov_lab.identities import polynomial_degree
from slavnov_lab.symcaso import (CasoratianSpec, CombinedRapidities, HSeries, casoratian,
                                 casoratian_sign, coeffs_for_restricted_sp, complete_h,
                                 discrete_derivative, elementary_e, renormalized_sp)

from conftest import distinct_rationals, rationals

y1, y2 = F(3, 7), F(-5, 2)


def test_complete_h():
    assert complete_h(0, [y1, y2]) == 1
    assert complete_h(1, [y1, y2]) == y1 + y2
    assert complete_h(2, [y1, y2]) == y1 ** 2 + y1 * y2 + y2 ** 2
    assert complete_h(-1, [y1]) == 0


def test_elementary_e():
    X = [F(2)]
    vals = [-v for v in X] + [-(v + 1) for v in X]
    assert elementary_e(0, vals) == 1
    assert elementary_e(1, vals) == -5
    assert elementary_e(2, vals) == 6
    assert elementary_e(3, vals) == 0


def test_discrete_derivative_lowers():
    y = [y1, y2]
    h = lambda i: HSeries((1,), i)
    assert discrete_derivative(h(2), y, 0) == complete_h(1, y)
    assert discrete_derivative(h(1), y, 0) == 1
    assert discrete_derivative(h(0), y, 0) == 0
    # at a zero variable only the lowering identity is available
    assert discrete_derivative(h(2), [F(0), y2], 0) == complete_h(1, [F(0), y2])
    with pytest.raises(ZeroDenominator):
        discrete_derivative(lambda v: complete_h(2, v), [F(0), y2], 0)


@st.composite
def specs(draw, max_L=5, extra=3):
    L = draw(st.integers(1, max_L))
    M = L + draw(st.integers(0, extra))
    c = draw(st.lists(st.lists(rationals, min_size=M, max_size=M), min_size=L, max_size=L))
    return CasoratianSpec(c, draw(distinct_rationals(L)))


def test_trivial_casoratian():
    s = CasoratianSpec([[1]], [y1])
    assert casoratian(s, "symfunc") == 1 == casoratian(s, "monomial")


@given(specs())
def test_jacobi_trudi(spec):
    assert casoratian(spec, "symfunc") == casoratian(spec, "monomial")


@given(specs(), rationals)
def test_row_scaling(spec, lam):
    c = [list(r) for r in spec.c]
    c[0] = [lam * v for v in c[0]]
    assert casoratian(CasoratianSpec(c, spec.y)) == lam * casoratian(spec)


@given(specs(max_L=4))
def test_casoratian_condition(spec):
    y = list(spec.y)
    for i in range(spec.L):
        for j in range(spec.L - 1):
            for l in range(spec.L):
                assert discrete_derivative(spec.entry(i, j), y, l) == spec.entry(i, j + 1)(y)


def test_monomial_needs_distinct():
    s = CasoratianSpec([[1, 2], [3, 5]], [y1, y1])
    with pytest.raises(DegenerateParams):
        casoratian(s, "monomial")
    # the symmetric-function form is fine
    casoratian(s, "symfunc")


def test_spec_validation_and_json():
    with pytest.raises(CardinalityMismatch):
        CasoratianSpec([[1, 2]], [y1, y2])
    with pytest.raises(CardinalityMismatch):
        CasoratianSpec([[1], [2]], [y1, y2])
    s = CasoratianSpec([[1, F(1, 2)], [0, 3]], [y1, y2])
    assert CasoratianSpec.from_json(s.to_json()) == s


def test_coefficient_matrix_shapes():
    rows = coeffs_for_restricted_sp(CombinedRapidities(()), 0, 0, 3)
    assert len(rows) == 3 and all(len(r) == 3 for r in rows)
    # n = N = 0: shifted full e-sequences of the empty set, i.e. unit anti-diagonal
    assert rows == [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
    X = CombinedRapidities.from_sets([], [F(2)])
    rows = coeffs_for_restricted_sp(X, 0, 1, 2)
    assert len(rows) == 1 and len(rows[0]) == 2
    assert rows[0] == [1, 0]
    rows = coeffs_for_restricted_sp(CombinedRapidities.from_sets([F(1, 3)], [F(2)]), 1, 1, 3)
    assert len(rows) == 3 and all(len(r) == 5 for r in rows)
    with pytest.raises(CardinalityMismatch):
        coeffs_for_restricted_sp(X, 1, 1, 2)


def test_renormalized_empty():
    y = [y1, y2, F(1, 5)]
    assert renormalized_sp([], [], y, "casoratian") == renormalized_sp([], [], y, "pdwpf") == 1


@pytest.mark.parametrize("n", [0, 1])
def test_casoratian_route(n):
    rng = random.Random(n)
    y = [F(rng.randint(-9, 9), rng.randint(1, 5)) + k for k in range(3)]
    x = [F(13, 7)][:n]
    b = [F(-11, 3)]
    assert renormalized_sp(x, b, y, "casoratian") == renormalized_sp(x, b, y, "pdwpf")


def test_sign_regression():
    # pinned at the exact on-shell point b = -1/2, y = {0, 0}
    # (-1)^(N + L'(L'-1)/2) with L' = L - N + n
    assert casoratian_sign(0, 1, 2) == -1
    assert casoratian_sign(1, 1, 2) == 1
    assert casoratian_sign(0, 1, 3) == 1
    assert [casoratian_sign(n, 2, 5) for n in (0, 1, 2)] == [-1, 1, 1]
    b, y = [F(-1, 2)], [F(0), F(0)]
    s = renormalized_sp([], b, y, "slavnov")
    assert renormalized_sp([], b, y, "casoratian") == s
    assert renormalized_sp([], b, y, "pdwpf") == s
    # (b + 1) * (b + 1) / b * 1 / (b + 1) at b = -1/2
    assert s == -1


def test_symmetric_and_polynomial_in_surviving_y():
    x, b = [F(13, 7)], [F(-11, 3), F(5, 2)]
    y = [F(1, 2), F(-2, 3), F(7, 5), F(9, 4)]
    n, L = 1, 4
    base = renormalized_sp(x, b, y, "pdwpf")
    perm = y[:1] + [y[3], y[1], y[2]]
    assert renormalized_sp(x, b, perm, "pdwpf") == base
    assert renormalized_sp(x, b, perm, "casoratian") == base

    def P(u):
        return renormalized_sp(x, b, y[:-1] + [u], "casoratian")
    deg, _ = polynomial_degree(P, L + 2 * n - 1, True)
    assert deg is not None and deg <= L + 2 * n - 1
