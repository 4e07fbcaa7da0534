import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from slavnov_lab.detforms import izergin_uniform
from slavnov_lab.errors import CardinalityMismatch, SingularWeight
from slavnov_lab.vertexlat import (SUMMED, Column, LatticeProblem, RowSpec, dwpf_oracle,
                                   partition_function, pdwpf_oracle, scalar_product_oracle,
                                   vertex_weight)

from conftest import generic_sets

x, y = F(7, 3), F(-2, 5)


def test_weights():
    assert vertex_weight(1, 1, 1, 1, x, y) == 1
    assert vertex_weight(2, 2, 2, 2, x, y) == 1
    assert vertex_weight(1, 2, 2, 1, 1, 0) == F(1, 2)
    assert vertex_weight(1, 1, 2, 2, x, y) == 0
    assert vertex_weight(2, 1, 2, 1, 3, 1) == F(2, 3)
    assert vertex_weight(2, 1, 1, 2, 3, 1) == F(1, 3)


def test_pole_and_bad_colour():
    with pytest.raises(SingularWeight):
        vertex_weight(1, 2, 2, 1, 1, 2)
    with pytest.raises(ValueError):
        vertex_weight(0, 1, 1, 1, x, y)


def test_small_lattices():
    p = LatticeProblem([RowSpec(1, 2, 1)], [Column(0, 1, 2)])
    assert partition_function(p) == F(1, 2)
    empty = LatticeProblem([], [Column(0, 1, 1), Column(1, 1, 1)])
    assert partition_function(empty) == 1
    assert partition_function(empty, "enumerate") == 1


def test_dwpf_examples():
    assert dwpf_oracle([1], [], [], [0]) == F(1, 2)
    assert dwpf_oracle([2, 3], [], [], [0, 1]) == izergin_uniform([2, 3], [0, 1])
    assert pdwpf_oracle([], [], [0, 1, 2]) == 1


def test_json_roundtrip():
    p = LatticeProblem([RowSpec(F(1, 2), 2, 1), RowSpec(F(-3), 1, 2)],
                       [Column(F(0), 1, 1), Column(F(5, 7), 1, SUMMED)])
    assert LatticeProblem.from_json(p.to_json()) == p


def test_cardinality():
    with pytest.raises(CardinalityMismatch):
        dwpf_oracle([1, 2], [], [], [0])
    with pytest.raises(CardinalityMismatch):
        scalar_product_oracle([1], [], [0, 1])


@st.composite
def lattice_problems(draw):
    L = draw(st.integers(1, 4))
    R = draw(st.integers(0, 3))
    raps, y = draw(generic_sets([R], L))
    rows = [RowSpec(r, draw(st.sampled_from((1, 2))), draw(st.sampled_from((1, 2)))) for r in raps]
    cols = [Column(v, draw(st.sampled_from((1, 2))), draw(st.sampled_from((1, 2, SUMMED))))
            for v in y]
    return LatticeProblem(rows, cols)


@given(lattice_problems())
def test_transfer_equals_enumeration(p):
    assert partition_function(p, "transfer") == partition_function(p, "enumerate")


@given(st.integers(1, 4).flatmap(lambda L: generic_sets([L], L)), st.randoms())
def test_dwpf_symmetry(case, rnd):
    raps, y = case
    ref = dwpf_oracle(raps, [], [], y)
    r2, y2 = list(raps), list(y)
    rnd.shuffle(r2)
    rnd.shuffle(y2)
    assert dwpf_oracle(r2, [], [], y2) == ref


@given(st.integers(1, 2).flatmap(lambda N: st.integers(2 * N, 5).flatmap(
    lambda L: generic_sets([N, N], L))))
def test_scalar_product_exchange(case):
    xs, bs, y = case
    assert scalar_product_oracle(xs, bs, y) == scalar_product_oracle(bs, xs, y)


def test_row_permutation_l3():
    rng = random.Random(3)
    raps = [F(rng.randint(10, 40), 7) + k for k in range(3)]
    y = [F(0), F(1, 2), F(-1)]
    ref = dwpf_oracle(raps, [], [], y)
    assert dwpf_oracle(raps[::-1], [], [], y) == ref
