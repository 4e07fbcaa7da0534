"""The order-g^2 theta mapping, evaluated exactly with second-order jets,
and its closed-form action on Casoratian determinants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .detforms import _inv, _norm, _prod, _roots_of, restricted_pdwpf_kos, restricted_slavnov
from .numkernel import det, is_exact, jet_second_derivatives, vandermonde
from .symcaso import (CasoratianSpec, CombinedRapidities, casoratian, casoratian_sign,
                      coeffs_for_restricted_sp)


@dataclass(frozen=True)
class GvImage:
    order0: object
    order_g2: object

    def __sub__(self, other: "GvImage") -> "GvImage":
        return GvImage(self.order0 - other.order0, self.order_g2 - other.order_g2)

    def scaled(self, s) -> "GvImage":
        return GvImage(s * self.order0, s * self.order_g2)


def cyclic_second_difference(hess):
    """(1/2) sum_i (d_i - d_{i+1})^2 applied via the Hessian, indices mod m."""
    m = len(hess)
    total = 0
    for i in range(m):
        j = (i + 1) % m
        total = total + hess[i][i] - 2 * hess[i][j] + hess[j][j]
    return total / 2 if not is_exact(total) else Fraction(total) / 2


def theta_map(f, m: int, zero=Fraction(0)) -> GvImage:
    """Map f(theta_1..theta_m) to its value at 0 and its g^2 coefficient.

    ``zero`` fixes the coefficient field of the jets (use ``0j`` when f
    involves complex constants).
    """
    if m == 0:
        return GvImage(f(), 0 * zero)
    value, _, hess = jet_second_derivatives(f, [zero] * m)
    return GvImage(value, cyclic_second_difference(hess))


def gv_casoratian_closed(spec: CasoratianSpec) -> GvImage:
    """Closed-form GV image of the Casoratian with coefficients ``spec.c``
    in its variables set to theta-perturbations of 0.

    Order 0 is det of the first L coefficient columns; the g^2 term replaces
    column L-1 by L times column L+1, and column L by L times column L+2,
    one at a time.  For L = 1 the cyclic operator vanishes identically.
    """
    L = spec.L
    if L == 0:
        return GvImage(Fraction(1), Fraction(0))
    c = spec.padded(L + 2).c
    base = [list(row[:L]) for row in c]
    order0 = det(base)
    if L == 1:
        return GvImage(order0, 0 * order0)
    g2 = 0
    for col, src in ((L - 2, L), (L - 1, L + 1)):
        m = [list(row) for row in base]
        for i in range(L):
            m[i][col] = L * c[i][src]
        g2 = g2 + det(m)
    return GvImage(order0, g2)


def casoratian_theta(spec: CasoratianSpec, zero=Fraction(0)) -> GvImage:
    """theta_map of the symmetric-function Casoratian in its L variables."""
    def f(*theta):
        return casoratian(CasoratianSpec(spec.c, list(theta)))
    return theta_map(f, spec.L, zero)


@dataclass(frozen=True)
class StructureConstantReport:
    jets: GvImage
    closed: GvImage
    difference: GvImage
    slavnov_order0: object = None


def gv_structure_constant(x, b, y, *, check=True, tol=1e-10) -> StructureConstantReport:
    """GV image of the renormalized restricted scalar product in the
    surviving inhomogeneities y_{N-n+1..L}, which must all be 0.

    Route one maps (-1)^N * renormalization * restricted pDWPF (2N x 2N form)
    with jets; route two applies :func:`gv_casoratian_closed` to the
    coefficient matrix.  The on-shell Slavnov value at theta = 0 is also
    reported when b is on-shell (``check``).
    """
    x, b, y = _norm(x), _roots_of(b), _norm(y)
    n, N, L = len(x), len(b), len(y)
    R, J = y[:N - n], y[N - n:]
    if any(v != 0 for v in J):
        raise ValueError("the mapped inhomogeneities must sit at 0")
    exact = all(is_exact(v) for v in x + b + y)
    zero = Fraction(0) if exact else 0j
    sign = (-1) ** N
    m = len(J)

    def f(*theta):
        yy = list(R) + list(theta)
        ren = _prod(r - v + 1 for r in x + b for v in theta)
        return sign * ren * restricted_pdwpf_kos(x, b, yy)

    jets = theta_map(f, m, zero)
    X = CombinedRapidities.from_sets(x, b)
    spec = CasoratianSpec(coeffs_for_restricted_sp(X, n, N, L), [zero] * m)
    pre = casoratian_sign(n, N, L) * _inv(vandermonde(list(X.X)), "Vandermonde of X")
    closed = gv_casoratian_closed(spec).scaled(pre)
    s0 = None
    if check:
        ren0 = _prod(r + 1 for r in x + b for _ in J)
        s0 = ren0 * restricted_slavnov(x, b, y, tol=tol)
    return StructureConstantReport(jets, closed, jets - closed, s0)
