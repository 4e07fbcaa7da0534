"""Bethe equations: residuals, a multi-start Newton solver, and an
extended-precision recheck of candidate root sets."""

from __future__ import annotations

import logging
from fractions import Fraction
from dataclasses import dataclass, field

import mpmath
import numpy as np

from .errors import CardinalityMismatch, NoSolutionFound

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-10
DEFAULT_EPS_SEP = 1e-6


def bethe_residual(b, y):
    """Cleared Bethe polynomials F_i for every root.

    F_i = prod_k (b_i - y_k + 1) prod_j (b_i - b_j - 1)
        + prod_k (b_i - y_k) prod_j (b_i - b_j + 1),

    with j running over all roots, i included.  Works with any scalar type.
    """
    out = []
    for bi in b:
        p_shift = 1
        p_plain = 1
        for yk in y:
            p_shift = p_shift * (bi - yk + 1)
            p_plain = p_plain * (bi - yk)
        q_minus = 1
        q_plus = 1
        for bj in b:
            q_minus = q_minus * (bi - bj - 1)
            q_plus = q_plus * (bi - bj + 1)
        out.append(p_shift * q_minus + p_plain * q_plus)
    return out


def _canonical(roots):
    return tuple(sorted(roots, key=lambda z: (round(complex(z).real, 8), round(complex(z).imag, 8))))


@dataclass(frozen=True)
class BetheSolution:
    roots: tuple
    residual_max: float
    L: int
    y: tuple = field(default_factory=tuple)

    @classmethod
    def from_roots(cls, roots, y) -> "BetheSolution":
        roots = _canonical(roots)
        res = bethe_residual(roots, y)
        rmax = max((abs(complex(r)) for r in res), default=0.0)
        return cls(roots, float(rmax), len(y), tuple(y))

    @property
    def N(self) -> int:
        return len(self.roots)

    def residuals(self):
        return bethe_residual(self.roots, self.y)

    def to_json(self) -> dict:
        return {"roots": [[complex(r).real, complex(r).imag] for r in self.roots],
                "residual_max": self.residual_max}


# ---------------------------------------------------------------------------
# Newton on the cleared system


def _prod(vals):
    p = 1
    for v in vals:
        p *= v
    return p


def _poly_and_derivative(u, shifts):
    """prod_k (u - s_k) and its derivative in u."""
    val = _prod(u - s for s in shifts)
    der = 0
    for k in range(len(shifts)):
        der += _prod(u - s for m, s in enumerate(shifts) if m != k)
    return val, der


def _system(b, y):
    N = len(b)
    shift = [yk - 1 for yk in y]
    F = np.empty(N, dtype=complex)
    J = np.zeros((N, N), dtype=complex)
    for i in range(N):
        bi = b[i]
        pp, dpp = _poly_and_derivative(bi, shift)
        p0, dp0 = _poly_and_derivative(bi, y)
        others = [m for m in range(N) if m != i]
        qm = _prod(bi - b[m] - 1 for m in others)
        qp = _prod(bi - b[m] + 1 for m in others)
        # the j = i factors are (-1) and (+1)
        F[i] = -pp * qm + p0 * qp
        dqm_i = 0
        dqp_i = 0
        for m in others:
            rest_m = _prod(bi - b[j] - 1 for j in others if j != m)
            rest_p = _prod(bi - b[j] + 1 for j in others if j != m)
            dqm_i += rest_m
            dqp_i += rest_p
            J[i, m] = pp * rest_m - p0 * rest_p
        J[i, i] = -dpp * qm - pp * dqm_i + dp0 * qp + p0 * dqp_i
    return F, J


def _newton(b0, y, max_iter=80):
    b = np.array(b0, dtype=complex)
    F, J = _system(b, y)
    r = np.max(np.abs(F))
    for _ in range(max_iter):
        if not np.isfinite(r):
            return None
        try:
            step = np.linalg.solve(J, F)
        except np.linalg.LinAlgError:
            return None
        lam = 1.0
        for _ in range(20):
            trial = b - lam * step
            Ft, Jt = _system(trial, y)
            rt = np.max(np.abs(Ft))
            if np.isfinite(rt) and rt < r:
                break
            lam *= 0.5
        else:
            return b, r
        b, F, J, r = trial, Ft, Jt, rt
        if r < 1e-14:
            break
    return b, r


def _polish(b, y, dps=40, steps=4):
    """A few Newton steps in extended precision; returns complex roots."""
    with mpmath.workdps(dps):
        yy = [_to_mp(v) for v in y]
        bb = [mpmath.mpc(complex(v)) for v in b]
        N = len(bb)
        for _ in range(steps):
            F = bethe_residual(bb, yy)
            J = mpmath.matrix(N, N)
            h = mpmath.mpf(10) ** (-dps // 2)
            for m in range(N):
                bp = list(bb)
                bp[m] += h
                Fp = bethe_residual(bp, yy)
                for i in range(N):
                    J[i, m] = (Fp[i] - F[i]) / h
            try:
                step = mpmath.lu_solve(J, mpmath.matrix(F))
            except ZeroDivisionError:
                break
            bb = [bb[i] - step[i] for i in range(N)]
        return [complex(v) for v in bb]


def _to_mp(v):
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    if isinstance(v, int):
        return mpmath.mpf(v)
    c = complex(v)
    return mpmath.mpc(c.real, c.imag)


def _degeneracy(roots, y, eps_sep):
    """Reason string if the root set is degenerate, else None."""
    N = len(roots)
    for i in range(N):
        for k in range(len(y)):
            yk = complex(y[k])
            if abs(roots[i] - yk) < eps_sep:
                return f"root {roots[i]} coincides with y_{k + 1}"
            if abs(roots[i] - yk + 1) < eps_sep:
                return f"root {roots[i]} coincides with y_{k + 1} - 1"
        for j in range(i + 1, N):
            d = roots[i] - roots[j]
            if abs(d) < eps_sep:
                return f"roots {i + 1} and {j + 1} coincide"
            if abs(d - 1) < eps_sep or abs(d + 1) < eps_sep:
                return f"roots {i + 1} and {j + 1} differ by 1"
    return None


def _same_set(a, b, tol=1e-7):
    left = list(b)
    for z in a:
        for k, w in enumerate(left):
            if abs(z - w) < tol * max(1.0, abs(z)):
                del left[k]
                break
        else:
            return False
    return True


def _seeds(L, N, y, count, rng):
    yc = [complex(v) for v in y]
    out = []
    for s in range(L):
        out.append([yc[(s + i) % L] - 0.5 + 0.1 * (i + 1) + 0.37j * (i - (N - 1) / 2)
                    for i in range(N)])
    for _ in range(count):
        out.append(list(rng.uniform(-L, L, N) + 1j * rng.uniform(-L, L, N)))
    return out


def solve_bethe(L, N, y, seeds=32, tol=DEFAULT_TOL, eps_sep=DEFAULT_EPS_SEP, rng_seed=0):
    """Multi-start Newton search for on-shell root sets.

    Returns deduplicated, non-degenerate solutions with residual_max < tol.
    Raises NoSolutionFound if none survive.
    """
    y = list(y)
    if len(y) != L:
        raise CardinalityMismatch("len(y) must equal L")
    if 2 * N > L:
        raise CardinalityMismatch("2N must not exceed L")
    if seeds < 1:
        raise ValueError("at least one seed is required")
    if N == 0:
        return [BetheSolution((), 0.0, L, tuple(y))]
    rng = np.random.default_rng(rng_seed)
    yc = [complex(v) for v in y]
    found = []
    for start in _seeds(L, N, y, seeds, rng):
        out = _newton(start, yc)
        if out is None:
            continue
        b, r = out
        if not np.all(np.isfinite(b)) or r > 1e-6 * max(1.0, float(np.max(np.abs(b)))) ** (L + N):
            continue
        roots = _polish(list(b), y)
        reason = _degeneracy(roots, y, eps_sep)
        if reason:
            log.info("discarding degenerate Bethe solution: %s", reason)
            continue
        sol = BetheSolution.from_roots(roots, y)
        check = verify_on_shell(sol, tol)
        if not check.passed:
            log.info("discarding inaccurate Bethe solution, residual %.3g", check.residual_max)
            continue
        sol = BetheSolution(sol.roots, check.residual_max, L, tuple(y))
        if any(_same_set(sol.roots, f.roots) for f in found):
            continue
        found.append(sol)
    if not found:
        raise NoSolutionFound(f"no admissible solution for L={L}, N={N} after {seeds} seeds")
    found.sort(key=lambda s: [(round(z.real, 8), round(z.imag, 8)) for z in s.roots])
    return found


@dataclass(frozen=True)
class OnShellReport:
    passed: bool
    per_root: tuple
    residuals: tuple
    residual_max: float


def _residuals_mp(b, y, dps=50):
    with mpmath.workdps(dps):
        yy = [_to_mp(v) for v in y]
        bb = [_to_mp(v) for v in b]
        return tuple(float(abs(r)) for r in bethe_residual(bb, yy))


def extended_residual(b, y, dps=50) -> float:
    """max_i |F_i| recomputed at ``dps`` digits, treating b and y as exact."""
    return max(_residuals_mp(b, y, dps), default=0.0)


def verify_on_shell(sol: BetheSolution, tol=DEFAULT_TOL, dps=50) -> OnShellReport:
    """Recompute the residuals at ``dps`` digits from the stored roots."""
    res = _residuals_mp(sol.roots, sol.y, dps)
    rmax = max(res, default=0.0)
    per_root = tuple(r <= tol for r in res)
    return OnShellReport(all(per_root), per_root, res, rmax)
