"""Complete and elementary symmetric functions, the discrete derivative,
and Casoratian determinants, including the Casoratian presentation of the
renormalized restricted scalar product."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .detforms import _inv, _norm, _prod, _roots_of, restricted_pdwpf_ize, restricted_slavnov
from .errors import CardinalityMismatch, DegenerateParams, ZeroDenominator
from .numkernel import det, format_scalar, is_zero, parse_scalar, vandermonde

SYMFUNC = "symfunc"
MONOMIAL = "monomial"


def complete_h(k: int, y: Sequence):
    """h_k{y}, the z^k coefficient of prod_l 1/(1 - y_l z)."""
    if k < 0:
        return Fraction(0)
    h = [Fraction(1)] + [Fraction(0)] * k
    for v in y:
        # multiply the truncated series by 1/(1 - v z)
        for i in range(1, k + 1):
            h[i] = h[i] + v * h[i - 1]
    return h[k]


def complete_h_all(kmax: int, y: Sequence):
    """[h_0, ..., h_kmax] in one pass."""
    h = [Fraction(1)] + [Fraction(0)] * max(kmax, 0)
    for v in y:
        for i in range(1, kmax + 1):
            h[i] = h[i] + v * h[i - 1]
    return h[:kmax + 1] if kmax >= 0 else []


def elementary_e(k: int, vals: Sequence):
    """e_k of the multiset ``vals``; zero outside 0 <= k <= len(vals)."""
    if k < 0 or k > len(vals):
        return Fraction(0)
    e = [Fraction(1)] + [Fraction(0)] * k
    for v in vals:
        for i in range(k, 0, -1):
            e[i] = e[i] + v * e[i - 1]
    return e[k]


@dataclass(frozen=True)
class HSeries:
    """A finite linear combination sum_i coeffs[i] * h_{shift + i}{y}."""
    coeffs: tuple
    shift: int = 0

    def __call__(self, y):
        top = self.shift + len(self.coeffs) - 1
        hs = complete_h_all(top, y) if top >= 0 else []
        total = 0
        for i, c in enumerate(self.coeffs):
            k = self.shift + i
            if 0 <= k <= top:
                total = total + c * hs[k]
        return total

    def lowered(self) -> "HSeries":
        """The image under any discrete derivative: every h_i becomes h_{i-1}."""
        return HSeries(self.coeffs, self.shift - 1)


def discrete_derivative(f, y: Sequence, l: int):
    """(f{y} - f{y without y_l}) / y_l for a symmetric function ``f``.

    ``l`` is a 0-based position in ``y``.  At y_l = 0 the quotient is
    undefined; for an :class:`HSeries` the lowering identity is used instead,
    any other ``f`` raises ZeroDenominator.
    """
    y = list(y)
    v = y[l]
    if is_zero(v):
        if isinstance(f, HSeries):
            return f.lowered()(y)
        raise ZeroDenominator(f"discrete derivative at y_{l} = 0")
    rest = y[:l] + y[l + 1:]
    return (f(y) - f(rest)) / v


# ---------------------------------------------------------------------------
# Casoratians


@dataclass(frozen=True)
class CasoratianSpec:
    c: tuple
    y: tuple

    def __post_init__(self):
        c = tuple(tuple(_norm(row)) for row in self.c)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "y", tuple(_norm(self.y)))
        if len(c) != len(self.y):
            raise CardinalityMismatch("coefficient matrix needs one row per variable")
        if c and any(len(row) != len(c[0]) for row in c):
            raise CardinalityMismatch("coefficient rows have unequal lengths")
        if c and len(c[0]) < len(c):
            raise CardinalityMismatch("need M >= L")

    @property
    def L(self) -> int:
        return len(self.c)

    @property
    def M(self) -> int:
        return len(self.c[0]) if self.c else 0

    def padded(self, width: int) -> "CasoratianSpec":
        if width <= self.M:
            return self
        z = [0 * (row[0] if row else 0) for row in self.c]
        return CasoratianSpec([list(row) + [zi] * (width - self.M) for row, zi in zip(self.c, z)],
                              self.y)

    def entry(self, i: int, j: int) -> HSeries:
        """omega_{i,j} (0-based) = sum_k c_{ik} h_{k-j}, as an HSeries."""
        return HSeries(self.c[i], -j)

    def to_json(self) -> str:
        return json.dumps({"c": [[format_scalar(v) for v in row] for row in self.c],
                           "y": [format_scalar(v) for v in self.y]}, sort_keys=True)

    @classmethod
    def from_dict(cls, doc, exact=True) -> "CasoratianSpec":
        return cls([[parse_scalar(v, exact) for v in row] for row in doc["c"]],
                   [parse_scalar(v, exact) for v in doc["y"]])

    @classmethod
    def from_json(cls, text, exact=True) -> "CasoratianSpec":
        return cls.from_dict(json.loads(text), exact)


def casoratian(spec: CasoratianSpec, form: str = SYMFUNC):
    """Casoratian determinant in either presentation.

    ``symfunc``: det[sum_k c_ik h_{k-j}{y}].
    ``monomial``: det[sum_k c_ik y_j^{k-1}] / Delta{y}, with the ascending
    Vandermonde so that the two forms agree.
    """
    L, M = spec.L, spec.M
    if L == 0:
        return Fraction(1)
    y = list(spec.y)
    if form == SYMFUNC:
        hs = complete_h_all(M - 1, y)
        m = [[sum((spec.c[i][k] * hs[k - j] for k in range(j, M)), 0 * hs[0])
              for j in range(L)] for i in range(L)]
        return det(m)
    if form == MONOMIAL:
        vd = vandermonde(y)
        if is_zero(vd):
            raise DegenerateParams("repeated variable in the monomial Casoratian")
        m = [[sum((spec.c[i][k] * v ** k for k in range(M)), 0 * v) for v in y] for i in range(L)]
        return det(m) * _inv(vd, "Vandermonde")
    raise ValueError(f"unknown form {form!r}")


# ---------------------------------------------------------------------------
# restricted scalar product as a Casoratian


@dataclass(frozen=True)
class CombinedRapidities:
    X: tuple

    @classmethod
    def from_sets(cls, x, b) -> "CombinedRapidities":
        return cls(tuple(_norm(list(x) + list(b))))

    @property
    def Xbar(self) -> tuple:
        return tuple(v + 1 for v in self.X)


def coeffs_for_restricted_sp(X: CombinedRapidities, n: int, N: int, L: int):
    """The (L - N + n) x (L + 2n) coefficient matrix c_ik{X}.

    Rows i <= n + N use e_{2n+2N-k-1} of {-X, -Xbar} with X_i, Xbar_i
    removed; later rows use e_{3n+N+L-k-i+1} of the full set (1-based i, k).
    """
    if len(X.X) != n + N or n > N or 2 * N > L:
        raise CardinalityMismatch("inconsistent cardinalities for the coefficient matrix")
    Xs = list(X.X)
    neg_all = [-v for v in Xs] + [-(v + 1) for v in Xs]
    rows = []
    for i in range(1, L - N + n + 1):
        if i <= n + N:
            rest = [v for j, v in enumerate(Xs) if j != i - 1]
            vals = [-v for v in rest] + [-(v + 1) for v in rest]
            rows.append([elementary_e(2 * n + 2 * N - k - 1, vals) for k in range(1, L + 2 * n + 1)])
        else:
            rows.append([elementary_e(3 * n + N + L - k - i + 1, neg_all)
                         for k in range(1, L + 2 * n + 1)])
    return rows


def casoratian_sign(n: int, N: int, L: int) -> int:
    """Sign relating the renormalized product to Delta^{-1}{X} * casoratian."""
    Lp = L - N + n
    return -1 if (N + Lp * (Lp - 1) // 2) % 2 else 1


def renormalization(x, b, y):
    """prod over x and b and the surviving columns of (r - y_j + 1)."""
    x, b, y = _norm(x), _norm(b), _norm(y)
    N, n = len(b), len(x)
    return _prod(r - v + 1 for r in x + b for v in y[N - n:])


def renormalized_sp(x, b, y, side: str = "pdwpf", **kw):
    """Restricted scalar product times prod (x - y_j + 1) prod (b - y_j + 1)
    over the surviving columns; a polynomial in those inhomogeneities.

    ``side`` selects the construction: ``"pdwpf"`` uses (-1)^N times the
    restricted partial DWPF (valid for any b); ``"slavnov"`` uses the
    restricted Slavnov determinant (b must be on-shell unless check=False);
    ``"casoratian"`` uses the coefficient matrix of
    :func:`coeffs_for_restricted_sp` with the symmetric-function form.
    """
    x, b, y = _norm(x), _roots_of(b), _norm(y)
    n, N, L = len(x), len(b), len(y)
    ren = renormalization(x, b, y)
    if side == "pdwpf":
        return (-1) ** N * ren * restricted_pdwpf_ize(x, b, y)
    if side == "slavnov":
        return ren * restricted_slavnov(x, b, y, **kw)
    if side == "casoratian":
        X = CombinedRapidities.from_sets(x, b)
        spec = CasoratianSpec(coeffs_for_restricted_sp(X, n, N, L), y[N - n:])
        vx = _inv(vandermonde(list(X.X)), "Vandermonde of the combined rapidities")
        return casoratian_sign(n, N, L) * casoratian(spec, SYMFUNC) * vx
    raise ValueError(f"unknown side {side!r}")
