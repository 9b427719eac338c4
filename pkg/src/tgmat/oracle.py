"""Brute-force H-eigenpair oracles and the nonnegative spectral radius.

These routines are deliberately independent of the dominance and region
machinery so they can serve as ground truth in tests: an exact companion
matrix solve for dimension 2, a multistart damped Newton iteration for
small dimensions (no completeness guarantee), and a ratio-bounded power
iteration for the spectral radius of a nonnegative tensor.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import tensor as tz
from .errors import NegativeEntry, WrongDimension

__all__ = ["EigenPair", "h_eigen_exact_2d", "h_eigen_newton", "nqz_spectral_radius"]


@dataclass(frozen=True)
class EigenPair:
    """A real H-eigenpair: contract(t, x) = value * x^[m-1], with ||x||_inf = 1."""

    value: float
    vector: np.ndarray
    residual: float


def _finish_pair(t: tz.DenseTensor, lam: float, x: np.ndarray):
    """Normalise to max-norm one, fix the sign, and re-measure the residual."""
    k = int(np.argmax(np.abs(x)))
    if x[k] == 0.0:
        return None
    x = x / x[k]
    res = tz.contract(t, x) - lam * x ** (t.order - 1)
    resn = float(np.max(np.abs(res)))
    if resn > 1e-8 * max(1.0, abs(lam)):
        return None
    return EigenPair(float(lam), x, resn)


def _dedupe(pairs, tol):
    pairs = sorted(pairs, key=lambda p: (p.value, p.residual))
    out = []
    for p in pairs:
        if out and abs(p.value - out[-1].value) <= tol:
            if p.residual < out[-1].residual:
                out[-1] = p
            continue
        out.append(p)
    return out


def _branch_coeffs(t: tz.DenseTensor, row: int) -> np.ndarray:
    """Coefficients (ascending in s) of (A (1, s)^{m-1})_row for n = 2."""
    m = t.order
    coeffs = np.zeros(m)
    arr = t.entries[row]
    for tup in np.ndindex(*([2] * (m - 1))):
        coeffs[sum(tup)] += arr[tup]
    return coeffs


def h_eigen_exact_2d(t: tz.DenseTensor) -> list[EigenPair]:
    """All real H-eigenpairs of a dimension-2 tensor.

    Substituting x = (1, s) eliminates the eigenvalue and leaves the single
    polynomial p(s) = (A(1,s)^{m-1})_2 - (A(1,s)^{m-1})_1 * s^{m-1}, whose
    real roots are taken from the companion matrix and polished by Newton;
    the branch x = (0, 1) is handled separately.  Eigenvalues are
    deduplicated within 1e-7.
    """
    if t.dim != 2:
        raise WrongDimension("exact oracle is limited to dimension 2")
    m = t.order
    scale = max(1.0, float(np.max(np.abs(t.entries))))
    c1 = _branch_coeffs(t, 0)
    c2 = _branch_coeffs(t, 1)
    # p = c2(s) - s^{m-1} c1(s), ascending coefficients
    p = np.zeros(2 * m - 1)
    p[: m] += c2
    p[m - 1 :] -= c1
    pairs = []
    if np.max(np.abs(p)) <= 1e-14 * scale:
        # degenerate pencil: every direction solves; sample s in {0, 1, -1}
        for s in (0.0, 1.0, -1.0):
            lam = float(np.polyval(c1[::-1], s))
            pair = _finish_pair(t, lam, np.array([1.0, s]))
            if pair:
                pairs.append(pair)
    else:
        dp = np.polyder(p[::-1])
        roots = np.roots(np.trim_zeros(p[::-1], "f"))
        for r in roots:
            if abs(r.imag) > 1e-7 * max(1.0, abs(r)):
                continue
            s = float(r.real)
            for _ in range(6):  # Newton polish on the real line
                deriv = np.polyval(dp, s)
                if deriv == 0.0:
                    break
                s -= np.polyval(p[::-1], s) / deriv
            lam = float(np.polyval(c1[::-1], s))
            pair = _finish_pair(t, lam, np.array([1.0, s]))
            if pair:
                pairs.append(pair)
    # the x = (0, 1) branch is an eigenpair iff the first component vanishes
    e2 = np.array([0.0, 1.0])
    w = tz.contract(t, e2)
    if abs(w[0]) <= 1e-12 * scale:
        pair = _finish_pair(t, float(w[1]), e2)
        if pair:
            pairs.append(pair)
    return _dedupe(pairs, 1e-7)


def _newton_solve(t: tz.DenseTensor, x0: np.ndarray, lam0: float, max_iter=80, max_halvings=30):
    """Damped Newton on F(x, lam) = (contract - lam x^[m-1], |x|^2 - 1)."""
    m, n = t.order, t.dim
    x, lam = x0.copy(), lam0

    def system(xv, lv):
        F = np.empty(n + 1)
        F[:n] = tz.contract(t, xv) - lv * xv ** (m - 1)
        F[n] = xv @ xv - 1.0
        return F

    F = system(x, lam)
    norm = np.max(np.abs(F))
    for _ in range(max_iter):
        if norm <= 1e-10:
            return x, lam, True
        J = np.empty((n + 1, n + 1))
        J[:n, :n] = tz.contract_jacobian(t, x)
        if m == 2:
            J[:n, :n] -= lam * np.eye(n)
        else:
            J[:n, :n] -= lam * (m - 1) * np.diag(x ** (m - 2))
        J[:n, n] = -(x ** (m - 1))
        J[n, :n] = 2.0 * x
        J[n, n] = 0.0
        try:
            step = np.linalg.solve(J, -F)
        except np.linalg.LinAlgError:
            return x, lam, False
        scale = 1.0
        for _ in range(max_halvings):
            xt = x + scale * step[:n]
            lt = lam + scale * step[n]
            Ft = system(xt, lt)
            nt = np.max(np.abs(Ft))
            if nt < norm:
                x, lam, F, norm = xt, lt, Ft, nt
                break
            scale *= 0.5
        else:
            return x, lam, norm <= 1e-10
    return x, lam, norm <= 1e-10


def h_eigen_newton(t: tz.DenseTensor, starts: int = 2000, seed: int = 1) -> list[EigenPair]:
    """Multistart Newton search for real H-eigenpairs.

    Start vectors are drawn uniformly from the sphere with a fixed seed, the
    initial eigenvalue guess is the Rayleigh-like quotient when it is usable,
    and converged pairs are deduplicated by eigenvalue within 1e-6.  The
    returned set is whatever the starts found; completeness is not claimed.
    """
    rng = np.random.default_rng(seed)
    m, n = t.order, t.dim
    pairs = []
    for _ in range(starts):
        v = rng.standard_normal(n)
        nv = np.linalg.norm(v)
        if nv == 0.0:
            continue
        x0 = v / nv
        cx = tz.contract(t, x0)
        denom = float(np.sum(x0 ** m))
        lam0 = float(x0 @ cx / denom) if abs(denom) > 1e-8 else 0.0
        if not np.isfinite(lam0):
            lam0 = 0.0
        x, lam, ok = _newton_solve(t, x0, lam0)
        if not ok or not np.all(np.isfinite(x)) or not np.isfinite(lam):
            continue
        pair = _finish_pair(t, lam, x)
        if pair:
            pairs.append(pair)
    return _dedupe(pairs, 1e-6)


def nqz_spectral_radius(t: tz.DenseTensor, tol: float = 1e-9, max_iter: int = 10000) -> float:
    """Spectral radius of a nonnegative tensor by ratio-bounded power iteration.

    The iteration runs on t + eps*I (eps = 1e-9) so the positive start vector
    stays positive even for reducible inputs; the exact diagonal shift is
    subtracted at the end.  Converged when the Collatz-Wielandt bounds
    min_i/max_i of (contract x)_i / x_i^{m-1} agree to relative gap ``tol``;
    the geometric mean of the final bounds is returned.
    """
    if np.any(t.entries < 0.0):
        raise NegativeEntry("spectral radius iteration needs a nonnegative tensor")
    eps = 1e-9
    m, n = t.order, t.dim
    arr = t.entries.copy()
    for i in range(n):
        arr[(i,) * m] += eps
    reg = tz.DenseTensor(arr)
    x = np.ones(n)
    lo = hi = None
    for _ in range(max_iter):
        y = tz.contract(reg, x)
        ratios = y / x ** (m - 1)
        lo, hi = float(np.min(ratios)), float(np.max(ratios))
        if hi - lo <= tol * max(1.0, hi):
            break
        x = y ** (1.0 / (m - 1))
        x = x / np.max(x)
    else:
        warnings.warn("nqz_spectral_radius: ratio bounds did not converge", RuntimeWarning)
    return max(float(np.sqrt(lo * hi)) - eps, 0.0)
