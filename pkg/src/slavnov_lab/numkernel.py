"""Arithmetic backends and determinant primitives.

Three kinds of scalar flow through the package:

* exact rationals (:class:`fractions.Fraction`, ints are promoted),
* complex doubles (``complex``),
* :class:`Jet2`, multivariate Taylor jets truncated at total degree two,
  whose coefficients are themselves rationals or complex numbers.

All functions here are pure; matrices are plain nested sequences.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import permutations
from numbers import Rational
from typing import Callable, Sequence

import numpy as np

from .errors import DivisionByNonUnit, NonFinite

ASCENDING = "ascending"
DESCENDING = "descending"

_HALF = Fraction(1, 2)


def is_exact(v) -> bool:
    return isinstance(v, Rational)


def is_zero(v) -> bool:
    """Exact zero test; a jet counts as zero only if every coefficient is."""
    if isinstance(v, Jet2):
        return v.is_zero()
    return v == 0


def is_unit(v) -> bool:
    """True if ``v`` is invertible in its ring (nonzero constant term for jets)."""
    if isinstance(v, Jet2):
        return v.const != 0
    return v != 0


# ---------------------------------------------------------------------------
# determinants


def det_exact(m: Sequence[Sequence[Rational]]) -> Fraction:
    """Exact determinant by fraction-free Bareiss elimination.

    Each row is first scaled by the lcm of its denominators so that the
    elimination runs over integers; the scales are divided out at the end.
    """
    n = len(m)
    if n == 0:
        return Fraction(1)
    rows = []
    scale = 1
    for row in m:
        if len(row) != n:
            raise ValueError("matrix is not square")
        fr = [Fraction(v) for v in row]
        d = 1
        for v in fr:
            d = d * v.denominator // math.gcd(d, v.denominator)
        scale *= d
        rows.append([int(v * d) for v in fr])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for r in range(k + 1, n):
                if rows[r][k] != 0:
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = rows[k][k]
        for i in range(k + 1, n):
            ri = rows[i]
            rik = ri[k]
            rk = rows[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pivot - rik * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return Fraction(sign * rows[n - 1][n - 1], scale)


def det_cofactor(m: Sequence[Sequence]):
    """Leibniz-formula determinant; an independent oracle for small orders."""
    n = len(m)
    if n > 6:
        raise ValueError("cofactor oracle is limited to order <= 6")
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = 1
        for i, p in enumerate(perm):
            term = term * m[i][p]
        total = total - term if inv % 2 else total + term
    return total


def det_float(m: Sequence[Sequence[complex]]) -> complex:
    """Complex determinant via LAPACK's row-pivoted LU.

    Relative error is O(order * eps * cond(m)).
    """
    n = len(m)
    if n == 0:
        return complex(1.0)
    a = np.array([[complex(v) for v in row] for row in m], dtype=complex)
    if a.shape != (n, n):
        raise ValueError("matrix is not square")
    if not np.all(np.isfinite(a)):
        raise NonFinite("non-finite matrix entry")
    d = complex(np.linalg.det(a))
    if not (math.isfinite(d.real) and math.isfinite(d.imag)):
        raise NonFinite("determinant overflowed")
    return d


def det_generic(m: Sequence[Sequence]):
    """Gaussian elimination over any field-like scalar type.

    Pivots are chosen among entries that are units; if a column has none
    the remaining block is expanded by cofactors instead.
    """
    n = len(m)
    a = [list(row) for row in m]
    result = 1
    for k in range(n):
        piv = None
        for r in range(k, n):
            if is_unit(a[r][k]):
                piv = r
                break
        if piv is None:
            block = [row[k:] for row in a[k:]]
            if all(is_zero(v) for v in (row[0] for row in block)):
                return 0 * result
            return result * _laplace(block)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            result = -result
        p = a[k][k]
        result = result * p
        for i in range(k + 1, n):
            if is_zero(a[i][k]):
                continue
            f = a[i][k] / p
            for j in range(k + 1, n):
                a[i][j] = a[i][j] - f * a[k][j]
    return result


def _laplace(m):
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if is_zero(m[0][j]):
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _laplace(minor)
        total = total - term if j % 2 else total + term
    return total


def det(m: Sequence[Sequence]):
    """Dispatch to the exact, float or generic determinant by entry type."""
    kinds = {type(v) for row in m for v in row}
    if any(issubclass(k, Jet2) for k in kinds):
        return det_generic(m)
    if all(issubclass(k, Rational) for k in kinds):
        return det_exact(m)
    return det_float(m)


def vandermonde(vals: Sequence, orientation: str = ASCENDING):
    """prod_{i<j} (v_j - v_i); the descending variant carries the global sign."""
    p = 1
    n = len(vals)
    for i in range(n):
        for j in range(i + 1, n):
            p = p * (vals[j] - vals[i])
    if orientation == DESCENDING:
        if (n * (n - 1) // 2) % 2:
            p = -p
    elif orientation != ASCENDING:
        raise ValueError(f"unknown orientation {orientation!r}")
    return p


# ---------------------------------------------------------------------------
# jets


class Jet2:
    """Truncated multivariate Taylor polynomial of total degree <= 2.

    Represents ``const + sum_i lin[i] t_i + sum_{i,j} quad[i][j] t_i t_j``
    with ``quad`` symmetric, so the Hessian is ``2 * quad``.
    """

    __slots__ = ("const", "lin", "quad")

    def __init__(self, const, lin, quad):
        self.const = const
        self.lin = tuple(lin)
        self.quad = tuple(tuple(r) for r in quad)

    @property
    def dim(self) -> int:
        return len(self.lin)

    @classmethod
    def constant(cls, value, m: int) -> "Jet2":
        if isinstance(value, int):
            value = Fraction(value)
        z = 0 * value
        return cls(value, [z] * m, [[z] * m for _ in range(m)])

    @classmethod
    def variable(cls, value, i: int, m: int) -> "Jet2":
        if isinstance(value, int):
            value = Fraction(value)
        z = 0 * value
        lin = [z] * m
        lin[i] = z + 1
        return cls(value, lin, [[z] * m for _ in range(m)])

    def gradient(self) -> list:
        return list(self.lin)

    def hessian(self) -> list:
        return [[2 * q for q in row] for row in self.quad]

    def is_zero(self) -> bool:
        return (self.const == 0 and all(v == 0 for v in self.lin)
                and all(v == 0 for row in self.quad for v in row))

    def _lift(self, other) -> "Jet2":
        if isinstance(other, Jet2):
            if other.dim != self.dim:
                raise ValueError("jets over different numbers of variables")
            return other
        return Jet2.constant(other, self.dim)

    def __add__(self, other):
        o = self._lift(other)
        return Jet2(self.const + o.const,
                    [a + b for a, b in zip(self.lin, o.lin)],
                    [[a + b for a, b in zip(r, s)] for r, s in zip(self.quad, o.quad)])

    __radd__ = __add__

    def __neg__(self):
        return Jet2(-self.const, [-a for a in self.lin], [[-a for a in r] for r in self.quad])

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Jet2):
            return Jet2(self.const * other, [a * other for a in self.lin],
                        [[a * other for a in r] for r in self.quad])
        o = self._lift(other)
        c, d = self.const, o.const
        m = self.dim
        lin = [c * o.lin[i] + d * self.lin[i] for i in range(m)]
        quad = [[c * o.quad[i][j] + d * self.quad[i][j]
                 + (self.lin[i] * o.lin[j] + self.lin[j] * o.lin[i]) * _HALF
                 for j in range(m)] for i in range(m)]
        return Jet2(c * d, lin, quad)

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet2":
        if self.const == 0:
            raise DivisionByNonUnit("jet with zero constant term is not invertible")
        inv = Fraction(1) / self.const if is_exact(self.const) else 1 / self.const
        # 1/(c+u) = (1/c)(1 - u/c + (u/c)^2) truncated
        u = Jet2(0 * self.const, [a * inv for a in self.lin],
                 [[a * inv for a in r] for r in self.quad])
        one = Jet2.constant(0 * self.const + 1, self.dim)
        return (one - u + u * u) * inv

    def __truediv__(self, other):
        if isinstance(other, Jet2):
            return self * other.reciprocal()
        if other == 0:
            raise ZeroDivisionError("division of jet by zero")
        inv = Fraction(1) / other if is_exact(other) else 1 / other
        return self * inv

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.reciprocal() ** (-k)
        result = Jet2.constant(0 * self.const + 1, self.dim)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Jet2):
            if isinstance(other, (int, float, complex, Rational)):
                other = Jet2.constant(other, self.dim)
            else:
                return NotImplemented
        return (self.const == other.const and self.lin == other.lin
                and self.quad == other.quad)

    __hash__ = None

    def __repr__(self):
        return f"Jet2({self.const!r}, {list(self.lin)!r}, {[list(r) for r in self.quad]!r})"


def jet_second_derivatives(f: Callable, point: Sequence):
    """Exact value, gradient and Hessian of ``f`` at ``point``.

    ``f`` is called with one :class:`Jet2` per coordinate and must use only
    ring operations and division by units.
    """
    m = len(point)
    args = [Jet2.variable(p, i, m) for i, p in enumerate(point)]
    out = f(*args)
    if not isinstance(out, Jet2):
        out = Jet2.constant(out, m)
    return out.const, out.gradient(), out.hessian()


# ---------------------------------------------------------------------------
# serialisation


def format_scalar(v):
    """Rationals as ``"p/q"`` (``"p"`` when q = 1), complex as ``[re, im]``."""
    if isinstance(v, Rational):
        return str(Fraction(v))
    c = complex(v)
    return [c.real, c.imag]


def parse_scalar(obj, exact: bool = True):
    """Inverse of :func:`format_scalar`; ``exact=False`` yields ``complex``."""
    if isinstance(obj, bool):
        raise ValueError("booleans are not scalars")
    if isinstance(obj, (list, tuple)):
        if len(obj) != 2:
            raise ValueError(f"complex value must be [re, im], got {obj!r}")
        if exact:
            if obj[1] != 0:
                raise ValueError("exact backend rejects non-rational input")
            return Fraction(str(obj[0]))
        return complex(float(obj[0]), float(obj[1]))
    if isinstance(obj, int):
        return Fraction(obj) if exact else complex(obj)
    if isinstance(obj, str):
        q = Fraction(obj)
        return q if exact else complex(q)
    if isinstance(obj, float):
        if exact:
            raise ValueError("exact backend rejects float input; use a \"p/q\" string")
        return complex(obj)
    raise ValueError(f"cannot parse scalar {obj!r}")


def to_complex(v) -> complex:
    return complex(v)
