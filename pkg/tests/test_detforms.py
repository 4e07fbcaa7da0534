from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from slavnov_lab import detforms as df
from slavnov_lab.bethe import solve_bethe
from slavnov_lab.errors import CardinalityMismatch, DegenerateParams, NotConverged, NotOnShell
from slavnov_lab.vertexlat import dwpf_oracle, pdwpf_oracle, scalar_product_oracle

from conftest import generic_sets

Y0 = [F(0), F(0)]
B0 = [F(-1, 2)]


def shapes(max_L=5, max_N=2):
    return st.integers(1, max_L).flatmap(
        lambda L: st.integers(0, min(max_N, L // 2)).map(lambda N: (N, L)))


def test_izergin_examples():
    assert df.izergin_uniform([1], [0]) == F(1, 2)
    assert df.izergin_uniform([2, 3], [0, 1]) == dwpf_oracle([2, 3], [], [], [0, 1])
    assert df.izergin_uniform([3, 2], [0, 1]) == df.izergin_uniform([2, 3], [0, 1])


def test_izergin_mixed_examples():
    x, b, y = [F(5, 2)], [F(-7, 3)], [F(0), F(1, 3)]
    assert df.izergin_mixed(x, b, [], y) == df.izergin_uniform(x + b, y)
    y4 = [F(0), F(1, 3), F(-2), F(5, 4)]
    x2, b2 = [F(7, 2), F(1, 9)], [F(-5, 3), F(11, 4)]
    assert df.izergin_mixed(x2, b2, [], y4) == df.izergin_uniform(x2 + b2, y4)


def test_kostov_examples():
    assert df.kostov_dwpf([1], [0]) == F(1, 2)
    assert df.kostov_dwpf([5], [0, 1]) == pdwpf_oracle([5], [], [0, 1])
    xs, y = [F(5, 3), F(-8, 7)], [F(1, 2), F(3)]
    assert df.kostov_dwpf(xs, y) == df.izergin_uniform(xs, y)


def test_pdwpf_examples():
    assert df.pdwpf_LxL([], [], [0, 1, 2]) == 1
    assert df.pdwpf_2Nx2N([], [], [0, 1, 2]) == 1
    assert df.pdwpf_LxL([5], [7], [0, 1]) == df.pdwpf_2Nx2N([5], [7], [0, 1])
    assert df.pdwpf_2Nx2N([5], [7], [0, 1]) == pdwpf_oracle([5], [7], [0, 1])
    assert df.pdwpf_LxL([5], [7], [0, 1]) == df.izergin_mixed([5], [7], [], [0, 1])
    assert df.pdwpf_2Nx2N([5], [7], [0, 1, 3]) == df.pdwpf_2Nx2N([7], [5], [0, 1, 3])


@given(shapes().flatmap(lambda s: generic_sets([s[0], s[0], s[1] - 2 * s[0]], s[1])))
def test_closed_forms_equal_lattice(case):
    x, b, t, y = case
    raps = x + b + t
    assert df.izergin_uniform(raps, y) == dwpf_oracle(raps, [], [], y)
    assert df.izergin_mixed(x, b, t, y) == dwpf_oracle(x, b, t, y)
    z = pdwpf_oracle(x, b, y)
    assert df.pdwpf_LxL(x, b, y) == z
    assert df.pdwpf_2Nx2N(x, b, y) == z
    assert df.kostov_dwpf(x + b, y) == z


def test_repeated_inhomogeneities():
    # the confluent evaluation agrees with the lattice at coincident y
    x, b, y = [F(5, 2)], [F(-7, 3)], [F(0), F(0), F(1, 2), F(1, 2)]
    assert df.pdwpf_LxL(x, b, y) == pdwpf_oracle(x, b, y)
    assert df.pdwpf_2Nx2N(x, b, y) == pdwpf_oracle(x, b, y)
    assert df.izergin_uniform([F(3), F(5)], [F(1), F(1)]) == dwpf_oracle([3, 5], [], [], [1, 1])


def test_degenerate_inputs():
    with pytest.raises(DegenerateParams):
        df.izergin_uniform([1, 1], [0, 2])
    with pytest.raises(CardinalityMismatch):
        df.pdwpf_LxL([1, 2], [3, 4], [0, 1, 2])


def test_slavnov_examples():
    assert df.slavnov([], [], [0, 1]) == 1
    assert df.slavnov([1], B0, Y0) == F(-1, 2)
    assert df.slavnov([1], B0, Y0) == scalar_product_oracle([1], B0, Y0)
    assert df.slavnov([1], B0, Y0) == -df.pdwpf_2Nx2N([1], B0, Y0)


def test_slavnov_gating():
    with pytest.raises(NotOnShell):
        df.slavnov([1], [F(1, 3)], Y0)
    # without the check it is just a formula
    df.slavnov([1], [F(1, 3)], Y0, check=False)
    with pytest.raises(DegenerateParams):
        df.slavnov(B0, B0, Y0)
    assert df.slavnov(B0, B0, Y0, coincident="limit") == scalar_product_oracle(B0, B0, Y0)


def test_slavnov_symmetric_in_y():
    sols = solve_bethe(3, 1, [F(0), F(1, 2), F(-1, 3)])
    for sol in sols:
        a = df.slavnov([0.7 + 0.1j], sol, [F(0), F(1, 2), F(-1, 3)])
        b = df.slavnov([0.7 + 0.1j], sol, [F(-1, 3), F(0), F(1, 2)])
        assert abs(a - b) < 1e-10 * max(1, abs(a))


def test_extended_limit():
    x, b, y = [F(5, 2)], [F(-7, 3)], [F(0), F(1, 3)]
    assert df.extended_limit(x, b, y) == df.izergin_mixed(x, b, [], y)
    y3 = [F(0), F(1, 3), F(-2, 5)]
    exact = df.extended_limit(x, b, y3)
    assert exact == df.pdwpf_LxL(x, b, y3)
    assert df.extended_limit(x, b, y3, normalized=False) == exact  # 1! = 1
    y4 = y3 + [F(7, 3)]
    assert df.extended_limit(x, b, y4, normalized=False) == 2 * df.pdwpf_LxL(x, b, y4)
    num = df.extended_limit(x, b, y3, mode="numeric")
    assert abs(num - complex(exact)) <= 1e-6 * max(1, abs(exact))


def test_extended_limit_not_converged():
    with pytest.raises(NotConverged):
        df.extended_limit([F(5, 2)], [F(-7, 3)], [F(0), F(1, 3), F(-2, 5)], mode="numeric",
                          t_magnitudes=(1.0, 2.0, 3.0), tol=1e-12)


def test_restricted_full_n_equals_plain():
    x, b, y = [F(5, 2)], [F(-7, 3)], [F(0), F(1, 3), F(-2, 5)]
    assert df.restricted_pdwpf_ize(x, b, y) == df.pdwpf_LxL(x, b, y)
    assert df.restricted_pdwpf_kos(x, b, y) == df.pdwpf_2Nx2N(x, b, y)
    assert df.restricted_slavnov([1], B0, Y0) == df.slavnov([1], B0, Y0)


def test_restricted_specialisation():
    y = [F(0), F(1, 3), F(-2, 5), F(3, 2)]
    x, b = [F(5, 2), F(7, 4)], [F(-7, 3), F(9, 5)]
    # x_N -> y_1 removes the last x; the Izergin form is 0/0 there, so the
    # lattice and the Kostov form serve as references
    spec = pdwpf_oracle([x[0], y[0]], b, y)
    assert df.pdwpf_2Nx2N([x[0], y[0]], b, y) == spec
    assert df.restricted_pdwpf_ize(x[:1], b, y) == spec
    assert df.restricted_pdwpf_kos(x[:1], b, y) == spec
    # y_1 no longer enters
    y2 = [F(11, 7)] + y[1:]
    assert df.restricted_pdwpf_ize(x[:1], b, y2) == df.restricted_pdwpf_ize(x[:1], b, y)


def test_restricted_base_cases():
    b, y = F(-1, 2), [F(0), F(0)]
    val = df.restricted_slavnov([], [b], y)
    assert val == (b - y[0] + 1) / (b - y[0]) * df.izergin_uniform([b], y[:1])
    bb, yy = [F(2, 7)], [F(1, 3), F(-5, 2)]
    assert df.restricted_pdwpf_kos([], bb, yy) == df.kostov_dwpf(bb, yy[1:])


def test_restricted_slavnov_specialisation():
    sols = solve_bethe(4, 2, [F(0), F(1, 2), F(-1, 3), F(2)])
    y = [F(0), F(1, 2), F(-1, 3), F(2)]
    for sol in sols[:3]:
        x1 = 0.4 + 0.3j
        spec = df.slavnov([x1, complex(y[0])], sol, y)
        got = df.restricted_slavnov([x1], sol, y)
        assert abs(got - spec) <= 1e-9 * max(1, abs(spec))


def test_params_json():
    p = df.ParamSets([F(1, 2)], [F(-3)], [], [F(0), F(7, 5)])
    q = df.ParamSets.from_json(p.to_json())
    assert q == p and q.exact and q.N == 1 and q.L == 2
    with pytest.raises(DegenerateParams):
        df.ParamSets([F(1)], [F(1)], [], [F(5), F(6)]).validate()
    with pytest.raises(DegenerateParams):
        df.ParamSets([F(-1)], [F(3)], [], [F(0), F(6)]).validate()
