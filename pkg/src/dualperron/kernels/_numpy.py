"""Pure-numpy implementations of the hot kernels.

Every function here has a twin with the same signature and return layout in
``_numba``. Inputs are float64 C-contiguous arrays; no validation is done at
this level.
"""

import numpy as np

from . import status


def dual_matmul(As, Ad, Bs, Bd):
    return As @ Bs, As @ Bd + Ad @ Bs


def dual_matvec(As, Ad, xs, xd):
    return As @ xs, As @ xd + Ad @ xs


def gauss_solve(M, B):
    """Solve ``M X = B`` by Gaussian elimination with partial pivoting.

    Returns ``(X, ok)``; ``ok`` is False when a pivot falls below
    ``1e-12 * max|M_ij|``.
    """
    A = np.array(M, dtype=np.float64)
    X = np.array(B, dtype=np.float64)
    n = A.shape[0]
    thresh = 1e-12 * np.max(np.abs(A)) if n else 0.0
    if n and thresh == 0.0:
        return X, False
    for j in range(n):
        p = j + int(np.argmax(np.abs(A[j:, j])))
        if abs(A[p, j]) <= thresh:
            return X, False
        if p != j:
            A[[j, p]] = A[[p, j]]
            X[[j, p]] = X[[p, j]]
        f = A[j + 1:, j] / A[j, j]
        A[j + 1:, j:] -= np.outer(f, A[j, j:])
        X[j + 1:] -= np.outer(f, X[j])
    for j in range(n - 1, -1, -1):
        X[j] = (X[j] - A[j, j + 1:] @ X[j + 1:]) / A[j, j]
    return X, True


def primitive_witness(P, kmax):
    """Smallest ``k <= kmax`` with an all-positive boolean power of ``P``; 0 if none."""
    base = (P > 0).astype(np.float64)
    cur = base.copy()
    for k in range(1, kmax + 1):
        if cur.all():
            return k
        cur = ((cur @ base) > 0).astype(np.float64)
    return 0


def power_iteration(M, tol, max_iter):
    n = M.shape[0]
    x = np.full(n, 1.0 / np.sqrt(n))
    rho_old = np.inf
    rho, res = 0.0, np.inf
    for it in range(1, max_iter + 1):
        y = M @ x
        rho = float(x @ y)
        res = float(np.linalg.norm(y - rho * x))
        if abs(rho - rho_old) <= tol and res <= tol:
            return rho, x, it, res, status.OK
        ny = np.linalg.norm(y)
        if ny == 0.0 or not np.isfinite(ny):
            return rho, x, it, res, status.DEGENERATE
        x = y / ny
        rho_old = rho
    return rho, x, max_iter, res, status.MAX_ITER


def _ratio_brackets(ys, yd, xs, xd):
    rs = ys / xs
    rd = yd / xs - ys * xd / (xs * xs)
    # lexicographic argmin/argmax: standard part first, dual part on ties
    lo = np.lexsort((rd, rs))
    i_lo, i_hi = lo[0], lo[-1]
    return rs[i_lo], rd[i_lo], rs[i_hi], rd[i_hi]


def collatz_loop(As, Ad, xs0, xd0, tol_s, tol_d, max_iter):
    n = xs0.shape[0]
    lower = np.empty((max_iter + 1, 2))
    upper = np.empty((max_iter + 1, 2))
    its_s = np.empty((max_iter + 1, n))
    its_d = np.empty((max_iter + 1, n))
    xs, xd = xs0.copy(), xd0.copy()
    for k in range(max_iter + 1):
        its_s[k] = xs
        its_d[k] = xd
        if np.any(xs == 0.0):
            return lower, upper, its_s, its_d, k, status.NON_APPRECIABLE
        ys = As @ xs
        yd = As @ xd + Ad @ xs
        ls, ld, us, ud = _ratio_brackets(ys, yd, xs, xd)
        lower[k] = ls, ld
        upper[k] = us, ud
        if ls > us or (ls == us and ld > ud):
            return lower, upper, its_s, its_d, k + 1, status.BRACKET_INVERSION
        if us - ls <= tol_s and abs(ud - ld) <= tol_d:
            return lower, upper, its_s, its_d, k + 1, status.OK
        if k == max_iter:
            break
        ns = np.sqrt(ys @ ys)
        if ns == 0.0 or not np.isfinite(ns):
            return lower, upper, its_s, its_d, k + 1, status.DEGENERATE
        xs = ys / ns
        xd = yd / ns - xs * (xs @ yd) / ns
    return lower, upper, its_s, its_d, max_iter + 1, status.MAX_ITER


def decay_loop(As, Ad, k_max):
    """Entrywise max-abs of both parts of ``A**k`` for ``k = 1..k_max``.

    Stops early (returning the count reached) once an entry turns non-finite.
    """
    s_max = np.zeros(k_max)
    d_max = np.zeros(k_max)
    Ps, Pd = As.copy(), Ad.copy()
    for k in range(k_max):
        ms = np.max(np.abs(Ps))
        md = np.max(np.abs(Pd))
        if not (np.isfinite(ms) and np.isfinite(md)):
            return s_max, d_max, k, status.OVERFLOW
        s_max[k] = ms
        d_max[k] = md
        with np.errstate(over="ignore", invalid="ignore"):
            Ps, Pd = Ps @ As, Ps @ Ad + Pd @ As
    return s_max, d_max, k_max, status.OK


def lemma_grid(lam_s, lam_d, gamma, L, eta, k, m):
    """Extremes of both parts of ``lam * (g + t1 h + t2 h eps) / (g + t3 h + t4 h eps)``.

    ``h = eta**k`` and each ``t_i`` ranges over ``m`` evenly spaced points on
    ``[-L, L]``. Returns ``(min_s, max_s, min_d, max_d)``.
    """
    h = eta ** k
    t = np.linspace(-L, L, m)
    t1, t2, t3, t4 = np.meshgrid(t, t, t, t, indexing="ij", sparse=True)
    ns, nd = gamma + t1 * h, t2 * h
    ds, dd = gamma + t3 * h, t4 * h
    qs = ns / ds
    qd = nd / ds - ns * dd / (ds * ds)
    vs = lam_s * qs
    vd = lam_s * qd + lam_d * qs
    vs, vd = np.broadcast_arrays(vs, vd)
    return float(vs.min()), float(vs.max()), float(vd.min()), float(vd.max())
