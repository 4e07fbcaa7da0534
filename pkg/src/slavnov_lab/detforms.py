"""Closed-form determinant expressions for domain wall partition functions
and Bethe scalar products.

Conventions: Greek-indexed rapidities label rows and Latin-indexed
inhomogeneities label columns.  Row blocks appear in the order x, b, t (or
monomials).  ``Delta{v}`` is the ascending Vandermonde prod_{i<j}(v_j - v_i).

Every function accepts rationals (``Fraction``/``int``, evaluated exactly) or
complex floats.  Where an inhomogeneity value repeats, expressions of the
form det[f_i(y_j)] / Delta{y} are evaluated via their confluent limit (see
:func:`alternant_ratio`), so homogeneous chains such as y = (0, ..., 0) work.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .bethe import DEFAULT_TOL, BetheSolution, bethe_residual, extended_residual
from .errors import CardinalityMismatch, DegenerateParams, NotConverged, NotOnShell
from .numkernel import (DESCENDING, det, format_scalar, is_exact, is_zero, jet_second_derivatives,
                        parse_scalar, vandermonde)

DEFAULT_EPS_SEP = 1e-8


# ---------------------------------------------------------------------------
# parameter sets


def _norm(vals):
    return [Fraction(v) if isinstance(v, int) else v for v in vals]


@dataclass(frozen=True)
class ParamSets:
    x: tuple = ()
    b: tuple = ()
    t: tuple = ()
    y: tuple = ()

    def __post_init__(self):
        for name in ("x", "b", "t", "y"):
            object.__setattr__(self, name, tuple(_norm(getattr(self, name))))

    @property
    def L(self) -> int:
        return len(self.y)

    @property
    def N(self) -> int:
        return len(self.b)

    @property
    def exact(self) -> bool:
        return all(is_exact(v) for v in self.x + self.b + self.t + self.y)

    def validate(self, eps=0):
        """Raise DegenerateParams if a distinctness or pole invariant fails.

        Repeated inhomogeneities are allowed here; the determinant
        evaluators handle them through confluent limits where meaningful.
        """
        if len(self.x) > self.N or 2 * self.N > self.L:
            raise CardinalityMismatch("need n <= N and 2N <= L")

        def close(u, v):
            return abs(u - v) <= eps if eps else u == v

        for name in ("x", "b", "t"):
            vals = getattr(self, name)
            for i in range(len(vals)):
                for j in range(i + 1, len(vals)):
                    if close(vals[i], vals[j]):
                        raise DegenerateParams(f"repeated value in {name}")
        for a in self.x:
            for c in self.b:
                if close(a, c):
                    raise DegenerateParams("x and b share a value")
        for a in self.x + self.b + self.t:
            for v in self.y:
                if close(a, v - 1):
                    raise DegenerateParams("a rapidity sits on a weight pole y - 1")
        return self

    def to_json(self) -> str:
        return json.dumps({k: [format_scalar(v) for v in getattr(self, k)]
                           for k in ("x", "b", "t", "y")}, sort_keys=True)

    @classmethod
    def from_dict(cls, doc, exact=True) -> "ParamSets":
        return cls(*(tuple(parse_scalar(v, exact) for v in doc.get(k, []))
                     for k in ("x", "b", "t", "y")))

    @classmethod
    def from_json(cls, text, exact=True) -> "ParamSets":
        return cls.from_dict(json.loads(text), exact)


# ---------------------------------------------------------------------------
# helpers


def _prod(vals):
    p = 1
    for v in vals:
        p = p * v
    return p


def _inv(v, what):
    if is_zero(v):
        raise DegenerateParams(f"{what} vanishes")
    if isinstance(v, int):
        return Fraction(1, v)
    return 1 / v


def _check_distinct(vals, what):
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            if vals[i] == vals[j]:
                raise DegenerateParams(f"repeated value in {what}")


def _weight_ratio(r, y):
    """prod_l (r - y_l) / (r - y_l + 1)."""
    p = 1
    for v in y:
        p = p * (r - v) * _inv(r - v + 1, "pole factor r - y + 1")
    return p


def _pole_row(r):
    """Taylor coefficients in y of 1 / ((r - y)(r - y + 1))."""
    def coeff(v, s):
        u = r - v
        if is_zero(u) or is_zero(u + 1):
            raise DegenerateParams("pole factor in an Izergin entry vanishes")
        return _inv(u ** (s + 1), "") - _inv((u + 1) ** (s + 1), "")
    return coeff


def _monomial_row(p):
    """Taylor coefficients in y of y**p."""
    def coeff(v, s):
        if s > p:
            return 0 * v
        return math.comb(p, s) * v ** (p - s)
    return coeff


def alternant_ratio(rows: Sequence[Callable], y: Sequence):
    """det[f_i(y_j)] / Delta{y}, continued to repeated y.

    Each ``rows[i]`` is called as ``f(v, s)`` and must return the order-s
    Taylor coefficient of f_i at ``v``.  The s-th repeat of a value in y
    uses the order-s coefficient, which is the confluent limit of the ratio.
    """
    y = _norm(y)
    n = len(y)
    if len(rows) != n:
        raise CardinalityMismatch("alternant needs as many rows as variables")
    if n == 0:
        return Fraction(1)
    order = []
    seen = []
    for v in y:
        s = sum(1 for w in seen if w == v)
        order.append(s)
        seen.append(v)
    if max(order) == 0:
        m = [[f(v, 0) for v in y] for f in rows]
        return det(m) * _inv(vandermonde(y), "Vandermonde of y")
    # confluent case: group equal values; the Vandermonde transforms the same way
    m = [[f(v, s) for v, s in zip(y, order)] for f in rows]
    vm = [[_monomial_row(p)(v, s) for v, s in zip(y, order)] for p in range(n)]
    return det(m) * _inv(det(vm), "confluent Vandermonde of y")


def _descending_sign(n):
    return -1 if (n * (n - 1) // 2) % 2 else 1


def _izergin_core(rapidities, y):
    """Delta^{-1}{-y} det[1/((r - y)(r - y + 1))] with repeated y allowed."""
    return _descending_sign(len(y)) * alternant_ratio([_pole_row(r) for r in rapidities], y)


# ---------------------------------------------------------------------------
# domain wall partition functions


def izergin_uniform(x, y):
    """Izergin's determinant with rapidities x and inhomogeneities y."""
    x, y = _norm(x), _norm(y)
    if len(x) != len(y):
        raise CardinalityMismatch("|x| must equal |y|")
    _check_distinct(x, "x")
    pre = _prod(a - v for a in x for v in y)
    return pre * _inv(vandermonde(x), "Vandermonde of x") * _izergin_core(x, y)


def izergin_mixed(x, b, t, y):
    """Three-block Izergin determinant with rows x, b, t."""
    x, b, t, y = _norm(x), _roots_of(b), _norm(t), _norm(y)
    if len(x) != len(b) or len(x) + len(b) + len(t) != len(y):
        raise CardinalityMismatch("need |x| = |b| and |x| + |b| + |t| = |y|")
    for vals, name in ((x, "x"), (b, "b"), (t, "t")):
        _check_distinct(vals, name)
    pre = _prod(r - v for r in x + b + t for v in y)
    den = (_prod(c - a for a in x for c in b) * _prod(s - a for a in x for s in t)
           * _prod(s - c for c in b for s in t))
    vd = vandermonde(x) * vandermonde(b) * vandermonde(t)
    return (pre * _inv(den, "cross-block product") * _inv(vd, "rapidity Vandermonde")
            * _izergin_core(x + b + t, y))


def kostov_dwpf(x, y):
    """Kostov's N x N determinant; the pDWPF when N < L, the DWPF at N = L."""
    x, y = _norm(x), _norm(y)
    if len(x) > len(y):
        raise CardinalityMismatch("|x| must not exceed |y|")
    _check_distinct(x, "x")
    N = len(x)
    m = [[a ** j - _weight_ratio(a, y) * (a + 1) ** j for j in range(N)] for a in x]
    return det(m) * _inv(vandermonde(x), "Vandermonde of x")


def pdwpf_LxL(x, b, y):
    """L x L determinant for the partial DWPF with monomial rows."""
    x, b, y = _norm(x), _roots_of(b), _norm(y)
    N, L = len(b), len(y)
    if len(x) != N or 2 * N > L:
        raise CardinalityMismatch("need |x| = |b| and 2N <= L")
    _check_distinct(x, "x")
    _check_distinct(b, "b")
    pre = _prod(r - v for r in x + b for v in y)
    den = _prod(c - a for a in x for c in b) * vandermonde(x) * vandermonde(b)
    rows = [_pole_row(r) for r in x + b]
    rows += [_monomial_row(L - 2 * N - g) for g in range(1, L - 2 * N + 1)]
    core = _descending_sign(L) * alternant_ratio(rows, y)
    return pre * _inv(den, "pDWPF prefactor") * core


def _kostov_rows(rapidities, y, width):
    return [[r ** j - _weight_ratio(r, y) * (r + 1) ** j for j in range(width)]
            for r in rapidities]


def pdwpf_2Nx2N(x, b, y):
    """Kostov's 2N x 2N two-block determinant for the partial DWPF."""
    x, b, y = _norm(x), _roots_of(b), _norm(y)
    N = len(b)
    if len(x) != N or 2 * N > len(y):
        raise CardinalityMismatch("need |x| = |b| and 2N <= L")
    _check_distinct(x, "x")
    _check_distinct(b, "b")
    m = _kostov_rows(x + b, y, 2 * N)
    den = _prod(c - a for a in x for c in b) * vandermonde(x) * vandermonde(b)
    return det(m) * _inv(den, "pDWPF prefactor")


# ---------------------------------------------------------------------------
# scalar products


def _roots_of(b):
    if isinstance(b, BetheSolution):
        return _norm(b.roots)
    return _norm(b)


def require_on_shell(b, y, tol=DEFAULT_TOL):
    """Raise NotOnShell unless every cleared Bethe residual vanishes.

    Exact roots must give exactly zero.  Float roots are taken at face value
    and their residuals recomputed at extended precision, which must not
    exceed ``tol``.
    """
    if all(is_exact(v) for v in list(b) + list(y)):
        res = bethe_residual(b, y)
        bad = [r for r in res if r != 0]
        if bad:
            raise NotOnShell(f"exact Bethe residual {bad[0]} is nonzero")
        return
    worst = extended_residual(b, y)
    if worst > tol:
        raise NotOnShell(f"Bethe residual {worst:.3g} exceeds tolerance {tol:.3g}")


def _slavnov_entry(a, b, j, y, eps_sep, coincident):
    N = len(b)
    others = [b[k] for k in range(N) if k != j]

    def numer(u):
        return (_prod(c - u - 1 for c in others) * _weight_ratio(u, y)
                - _prod(c - u + 1 for c in others))

    d = a - b[j]
    near = is_zero(d) if (is_exact(a) and is_exact(b[j])) else abs(d) <= eps_sep
    if not near:
        return numer(a) / d
    if coincident != "limit":
        raise DegenerateParams("x coincides with a Bethe root; pass coincident='limit'")
    # removable point: the numerator vanishes on-shell, the entry is its derivative
    _, grad, _ = jet_second_derivatives(numer, [b[j]])
    return grad[0]


def _slavnov_rows(x, b, y, eps_sep, coincident):
    return [[_slavnov_entry(a, b, j, y, eps_sep, coincident) for j in range(len(b))] for a in x]


def slavnov(x, b, y, *, tol=DEFAULT_TOL, check=True, eps_sep=DEFAULT_EPS_SEP, coincident="error"):
    """Slavnov's N x N determinant for the overlap of an off-shell state x
    with an on-shell state b.

    ``b`` is a BetheSolution or a plain list of roots.  With ``check=True``
    the roots are first verified to be on-shell; ``check=False`` evaluates
    the determinant as a formula at arbitrary b.
    """
    x, b, y = _norm(x), _roots_of(b), _norm(y)
    N = len(b)
    if len(x) != N or 2 * N > len(y):
        raise CardinalityMismatch("need |x| = |b| and 2N <= L")
    _check_distinct(x, "x")
    _check_distinct(b, "b")
    if check:
        require_on_shell(b, y, tol)
    m = _slavnov_rows(x, b, y, eps_sep, coincident)
    pre = _inv(vandermonde(x) * vandermonde(b, DESCENDING), "Vandermonde prefactor")
    return det(m) * pre


def restricted_slavnov(x, b, y, *, tol=DEFAULT_TOL, check=True, eps_sep=DEFAULT_EPS_SEP,
                       coincident="error"):
    """Slavnov's scalar product with x_{N-i+1} set to y_i for i <= N - n.

    Rows: n Slavnov rows for the surviving x, then N - n restricted rows in
    descending order of the restricted inhomogeneity index.
    """
    x, b, y = _norm(x), _roots_of(b), _norm(y)
    n, N = len(x), len(b)
    if n > N or 2 * N > len(y):
        raise CardinalityMismatch("need n <= N and 2N <= L")
    _check_distinct(x, "x")
    _check_distinct(b, "b")
    if check:
        require_on_shell(b, y, tol)
    R = y[:N - n]
    _check_distinct(R, "restricted inhomogeneities")
    m = _slavnov_rows(x, b, y, eps_sep, coincident)
    for g in range(N - n, 0, -1):
        v = y[g - 1]
        row = []
        for j in range(N):
            rest = _prod(b[k] - v + 1 for k in range(N) if k != j)
            row.append(rest * _inv(b[j] - v, "b - y in a restricted row"))
        m.append(row)
    den = (vandermonde(x) * vandermonde(b, DESCENDING) * vandermonde(R, DESCENDING)
           * _prod(v - a for a in x for v in R))
    return det(m) * _inv(den, "restricted Slavnov prefactor")


# ---------------------------------------------------------------------------
# restricted partial DWPF


def restricted_pdwpf_ize(x, b, y):
    """Partial DWPF with x_{N-i+1} = y_i for i <= N - n, as an
    (L - N + n)-order determinant over the surviving columns."""
    x, b, y = _norm(x), _roots_of(b), _norm(y)
    n, N, L = len(x), len(b), len(y)
    if n > N or 2 * N > L:
        raise CardinalityMismatch("need n <= N and 2N <= L")
    _check_distinct(x, "x")
    _check_distinct(b, "b")
    J = y[N - n:]
    pre = _prod(r - v for r in x + b for v in J)
    den = _prod(c - a for a in x for c in b) * vandermonde(x) * vandermonde(b)
    rows = [_pole_row(r) for r in x + b]
    rows += [_monomial_row(L - 2 * N - g) for g in range(1, L - 2 * N + 1)]
    core = _descending_sign(len(J)) * alternant_ratio(rows, J)
    return pre * _inv(den, "restricted pDWPF prefactor") * core


def restricted_pdwpf_kos(x, b, y):
    """Restricted partial DWPF as a 2N x 2N determinant: N - n monomial rows
    in the restricted inhomogeneities, then Kostov rows for x and b."""
    x, b, y = _norm(x), _roots_of(b), _norm(y)
    n, N, L = len(x), len(b), len(y)
    if n > N or 2 * N > L:
        raise CardinalityMismatch("need n <= N and 2N <= L")
    _check_distinct(x, "x")
    _check_distinct(b, "b")
    R = y[:N - n]
    _check_distinct(R, "restricted inhomogeneities")
    m = [[v ** j for j in range(2 * N)] for v in R]
    m += _kostov_rows(x + b, y, 2 * N)
    den = (vandermonde(x) * vandermonde(b) * vandermonde(R)
           * _prod(r - v for r in x + b for v in R) * _prod(c - a for a in x for c in b))
    return det(m) * _inv(den, "restricted pDWPF prefactor")


# ---------------------------------------------------------------------------
# decoupling limit of the extension parameters


def _lagrange_at_zero(eps, vals):
    total = 0
    for i, (ei, vi) in enumerate(zip(eps, vals)):
        w = 1
        for m, em in enumerate(eps):
            if m != i:
                w = w * (0 - em) / (ei - em)
        total = total + vi * w
    return total


def _scale_of(vals):
    return max([abs(complex(v)) for v in vals] + [1.0])


def _limit_exact_sequential(x, b, y, k):
    L = len(y)
    base = int(4 * _scale_of(x + b + y)) + 2 * L + 8

    def level(j, outer):
        if j == 0:
            return izergin_mixed(x, b, outer, y)
        T = base * (k + 1) + j * (L + 3) * 2
        eps, vals = [], []
        for i in range(L + 2):
            t = Fraction(T + i)
            e = 1 / t
            g = t * level(j - 1, [t] + outer) * _prod(1 - (v - 1) * e for v in y)
            eps.append(e)
            vals.append(g)
        return _lagrange_at_zero(eps, vals)

    return level(k, [])


def _limit_circle_sequential(x, b, y, k):
    L = len(y)
    R0 = 4 * _scale_of(x + b + y) + 4
    K = L + 2

    def level(j, outer):
        if j == 0:
            return izergin_mixed(x, b, outer, y)
        radius = R0 * (1 + 0.61 * j)
        phase = 0.113 * j
        acc = 0
        for m in range(K):
            t = radius * cmath.exp(2j * math.pi * (m + phase) / K)
            e = 1 / t
            acc += t * level(j - 1, [t] + outer) * _prod(1 - (v - 1) * e for v in y)
        return acc / K

    return level(k, [])


def _limit_simultaneous(x, b, y, k, exact):
    L = len(y)
    c = [1 + g for g in range(k)]
    deg = k * L
    weight = lambda e: _prod(1 - (v - 1) * e / cg for cg in c for v in y)
    if exact:
        T = int(4 * _scale_of(x + b + y)) + 2 * L + 8
        eps, vals = [], []
        for i in range(deg + 2):
            e = Fraction(1, T + i)
            ts = [Fraction(cg) / e for cg in c]
            eps.append(e)
            vals.append(_prod(ts) * izergin_mixed(x, b, ts, y) * weight(e))
        return _lagrange_at_zero(eps, vals)
    R0 = 1 / (4 * _scale_of(x + b + y) + 4)
    K = deg + 2
    acc = 0
    for m in range(K):
        e = R0 * cmath.exp(2j * math.pi * (m + 0.137) / K)
        ts = [cg / e for cg in c]
        acc += _prod(ts) * izergin_mixed(x, b, ts, y) * weight(e)
    return acc / K


def _neville_at_zero(eps, vals):
    """Successive polynomial extrapolations to 0 through the first m points."""
    p = list(vals)
    out = [p[0]]
    n = len(eps)
    for level in range(1, n):
        for i in range(n - level):
            p[i] = ((0 - eps[i + level]) * p[i] - (0 - eps[i]) * p[i + 1]) / (eps[i] - eps[i + level])
        out.append(p[0])
    return out


def _limit_numeric(x, b, y, k, t_magnitudes, tol):
    c = [1 + g for g in range(k)]
    eps, vals = [], []
    for T in t_magnitudes:
        ts = [complex(cg * T) for cg in c]
        eps.append(1 / T)
        vals.append(_prod(ts) * izergin_mixed(x, b, ts, y))
    est = _neville_at_zero(eps, vals)
    if len(est) >= 2:
        err = abs(est[-1] - est[-2]) / max(abs(est[-1]), 1e-300)
        if err > tol:
            raise NotConverged(f"extrapolated limit moved by {err:.3g} (relative)")
    return est[-1]


def extended_limit(x, b, y, mode="exact", *, t_magnitudes=(1e3, 1e4, 1e5), tol=1e-6,
                   simultaneous=False, normalized=True):
    """Decouple the L - 2N extension parameters t by sending them to infinity.

    Computes lim t_1...t_k Z(x, b, t | y), k = L - 2N.  ``mode="exact"``
    uses the fact that t * Z * prod_l (1 - (y_l - 1)/t) is a polynomial of
    degree <= L in 1/t, so the limit is recovered exactly by interpolation
    (rational sample points for rational input, a circle of complex points
    otherwise).  ``mode="numeric"`` evaluates at the given magnitudes and
    extrapolates, raising NotConverged if the estimates do not settle.

    Expanding the t rows in 1/t produces monomial rows y^p with weights
    p + 1, so the raw limit is k! times the partial domain wall partition
    function; ``normalized=True`` (the default) divides that factor out.
    """
    x, b, y = _norm(x), _roots_of(b), _norm(y)
    N, L = len(b), len(y)
    if len(x) != N or 2 * N > L:
        raise CardinalityMismatch("need |x| = |b| and 2N <= L")
    k = L - 2 * N
    if k == 0:
        return izergin_mixed(x, b, [], y)
    exact = all(is_exact(v) for v in x + b + y)
    if mode == "exact":
        if simultaneous:
            val = _limit_simultaneous(x, b, y, k, exact)
        elif exact:
            val = _limit_exact_sequential(x, b, y, k)
        else:
            val = _limit_circle_sequential(x, b, y, k)
    elif mode == "numeric":
        val = _limit_numeric(x, b, y, k, t_magnitudes, tol)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if normalized:
        val = val / math.factorial(k)
    return val
