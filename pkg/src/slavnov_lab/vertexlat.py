"""Brute-force six-vertex lattice partition functions.

Edge colours are the integers 1 and 2.  A vertex is described by the colours
on its left, bottom, right and top edges; colour is conserved through it
(the number of 2's entering from the left/bottom equals the number leaving
right/top).  Rows are listed bottom first, columns left to right.

Two independent evaluators are provided: a row-by-row transfer contraction
over the 2^L vertical edge states, and a depth-first enumeration of complete
configurations (small lattices only).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import CardinalityMismatch, SingularWeight
from .numkernel import format_scalar, is_zero, parse_scalar

SUMMED = "sum"
COLORS = (1, 2)
MAX_ENUMERATION_L = 4


def _check_color(c):
    if c not in COLORS:
        raise ValueError(f"edge colour must be 1 or 2, got {c!r}")


def _pole(x, y):
    d = x - y + 1
    if is_zero(d):
        raise SingularWeight(f"x - y + 1 vanishes at x={x!r}, y={y!r}")
    return Fraction(d) if isinstance(d, int) else d


def vertex_weight(left, bottom, right, top, x, y):
    """Rational-parametrised Boltzmann weight; 0 for ice-rule violations."""
    for c in (left, bottom, right, top):
        _check_color(c)
    if (left == 2) + (bottom == 2) != (right == 2) + (top == 2):
        return 0
    if left == bottom == right == top:
        return 1
    d = _pole(x, y)
    if left == right:
        return (x - y) / d
    return 1 / d


@dataclass(frozen=True)
class RowSpec:
    rapidity: object
    left: int
    right: int


@dataclass(frozen=True)
class Column:
    inhomogeneity: object
    bottom: int
    top: object  # 1, 2 or SUMMED


@dataclass(frozen=True)
class LatticeProblem:
    rows: tuple = field(default_factory=tuple)
    columns: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "columns", tuple(self.columns))
        if not self.columns:
            raise ValueError("a lattice needs at least one column")
        for r in self.rows:
            _check_color(r.left)
            _check_color(r.right)
        for c in self.columns:
            _check_color(c.bottom)
            if c.top != SUMMED:
                _check_color(c.top)

    def to_json(self) -> str:
        doc = {
            "rows": [{"x": format_scalar(r.rapidity), "left": r.left, "right": r.right}
                     for r in self.rows],
            "cols": [{"y": format_scalar(c.inhomogeneity), "bottom": c.bottom, "top": c.top}
                     for c in self.columns],
        }
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text: str, exact: bool = True) -> "LatticeProblem":
        doc = json.loads(text)
        rows = [RowSpec(parse_scalar(r["x"], exact), int(r["left"]), int(r["right"]))
                for r in doc.get("rows", [])]
        cols = []
        for c in doc["cols"]:
            top = c["top"]
            cols.append(Column(parse_scalar(c["y"], exact), int(c["bottom"]),
                               SUMMED if top == SUMMED else int(top)))
        return cls(rows, cols)


def _row_weights(x, y):
    """Weights indexed by (left, bottom, right, top) for one vertex."""
    table = {}
    for l in COLORS:
        for b in COLORS:
            for r in COLORS:
                for t in COLORS:
                    if (l == 2) + (b == 2) != (r == 2) + (t == 2):
                        continue
                    table[(l, b, r, t)] = vertex_weight(l, b, r, t, x, y)
    return table


def _accumulate(d, key, val):
    if key in d:
        d[key] = d[key] + val
    else:
        d[key] = val


def _top_ok(state, columns):
    return all(c.top == SUMMED or c.top == s for s, c in zip(state, columns))


def _transfer(p: LatticeProblem):
    states = {tuple(c.bottom for c in p.columns): 1}
    for row in p.rows:
        tables = [_row_weights(row.rapidity, c.inhomogeneity) for c in p.columns]
        delta = (row.left == 2) - (row.right == 2)
        new = {}
        for state, w in states.items():
            partial = {((), row.left): w}
            for j, table in enumerate(tables):
                below = state[j]
                nxt = {}
                for (tops, h), pw in partial.items():
                    for (l, b, r, t), vw in table.items():
                        if l == h and b == below and not is_zero(vw):
                            _accumulate(nxt, (tops + (t,), r), pw * vw)
                partial = nxt
            for (tops, h), pw in partial.items():
                if h == row.right:
                    assert tops.count(2) - state.count(2) == delta
                    _accumulate(new, tops, pw)
        states = new
    total = 0
    for state, w in states.items():
        if _top_ok(state, p.columns):
            total = total + w
    return total


def _enumerate(p: LatticeProblem):
    L = len(p.columns)
    if L > MAX_ENUMERATION_L:
        raise ValueError(f"naive enumeration is limited to L <= {MAX_ENUMERATION_L}")
    R = len(p.rows)
    if R == 0:
        return 1 if _top_ok([c.bottom for c in p.columns], p.columns) else 0
    tables = [[_row_weights(r.rapidity, c.inhomogeneity) for c in p.columns] for r in p.rows]
    total = 0
    verticals = [c.bottom for c in p.columns]

    def visit(i, j, h, weight):
        nonlocal total
        if j == L:
            if h != p.rows[i].right:
                return
            if i == R - 1:
                if _top_ok(verticals, p.columns):
                    total = total + weight
                return
            visit(i + 1, 0, p.rows[i + 1].left, weight)
            return
        below = verticals[j]
        for (l, b, r, t), vw in tables[i][j].items():
            if l != h or b != below or is_zero(vw):
                continue
            verticals[j] = t
            visit(i, j + 1, r, weight * vw)
            verticals[j] = below

    visit(0, 0, p.rows[0].left, 1)
    return total


def partition_function(p: LatticeProblem, method: str = "transfer"):
    """Sum over all colourings of the product of vertex weights.

    ``method="transfer"`` contracts row by row; ``"enumerate"`` walks every
    complete configuration and is restricted to L <= 4.
    """
    if method == "transfer":
        return _transfer(p)
    if method == "enumerate":
        return _enumerate(p)
    raise ValueError(f"unknown method {method!r}")


def dwpf_problem(rapidities: Sequence, y: Sequence) -> LatticeProblem:
    rows = [RowSpec(r, 2, 1) for r in rapidities]
    cols = [Column(v, 1, 2) for v in y]
    return LatticeProblem(rows, cols)


def dwpf_oracle(x, b, t, y, method: str = "transfer"):
    """Square lattice with domain wall boundaries; rows x, then b, then t."""
    if len(x) + len(b) + len(t) != len(y):
        raise CardinalityMismatch("|x| + |b| + |t| must equal |y|")
    return partition_function(dwpf_problem(list(x) + list(b) + list(t), y), method)


def pdwpf_problem(rapidities: Sequence, y: Sequence) -> LatticeProblem:
    rows = [RowSpec(r, 2, 1) for r in rapidities]
    cols = [Column(v, 1, SUMMED) for v in y]
    return LatticeProblem(rows, cols)


def pdwpf_oracle(x, b, y, method: str = "transfer"):
    """Partial domain wall lattice: rows x then b, top edges summed."""
    if len(x) + len(b) > len(y):
        raise CardinalityMismatch("more rows than columns")
    return partition_function(pdwpf_problem(list(x) + list(b), y), method)


def scalar_product_problem(x, b, y) -> LatticeProblem:
    rows = [RowSpec(v, 2, 1) for v in x] + [RowSpec(v, 1, 2) for v in b]
    cols = [Column(v, 1, 1) for v in y]
    return LatticeProblem(rows, cols)


def scalar_product_oracle(x, b, y, method: str = "transfer"):
    """Bottom block of x rows (left 2, right 1) under a block of b rows
    (left 1, right 2); every outer vertical edge has colour 1."""
    if len(x) != len(b):
        raise CardinalityMismatch("|x| must equal |b|")
    if 2 * len(x) > len(y):
        raise CardinalityMismatch("2N must not exceed L")
    return partition_function(scalar_product_problem(x, b, y), method)
