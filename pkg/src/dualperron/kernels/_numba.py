"""Loop-form kernels compiled with numba.

Signatures and return layouts mirror ``_numpy`` exactly. The bodies are
written as explicit loops so the compiled code avoids temporaries.
"""

import numpy as np
from numba import njit

from .status import BRACKET_INVERSION, DEGENERATE, MAX_ITER, NON_APPRECIABLE, OK, OVERFLOW


@njit(cache=True)
def _matmul_into(A, B, out):
    n, m = A.shape
    p = B.shape[1]
    for i in range(n):
        for j in range(p):
            out[i, j] = 0.0
        for k in range(m):
            a = A[i, k]
            if a != 0.0:
                for j in range(p):
                    out[i, j] += a * B[k, j]


@njit(cache=True)
def dual_matmul(As, Ad, Bs, Bd):
    n = As.shape[0]
    p = Bs.shape[1]
    Cs = np.empty((n, p))
    Cd = np.empty((n, p))
    tmp = np.empty((n, p))
    _matmul_into(As, Bs, Cs)
    _matmul_into(As, Bd, Cd)
    _matmul_into(Ad, Bs, tmp)
    for i in range(n):
        for j in range(p):
            Cd[i, j] += tmp[i, j]
    return Cs, Cd


@njit(cache=True)
def _matvec_pair(As, Ad, xs, xd, ys, yd):
    n = As.shape[0]
    for i in range(n):
        acc_s = 0.0
        acc_d = 0.0
        for j in range(n):
            a = As[i, j]
            acc_s += a * xs[j]
            acc_d += a * xd[j] + Ad[i, j] * xs[j]
        ys[i] = acc_s
        yd[i] = acc_d


@njit(cache=True)
def dual_matvec(As, Ad, xs, xd):
    n = As.shape[0]
    ys = np.empty(n)
    yd = np.empty(n)
    _matvec_pair(As, Ad, xs, xd, ys, yd)
    return ys, yd


@njit(cache=True)
def gauss_solve(M, B):
    A = M.copy()
    X = B.copy()
    n = A.shape[0]
    m = X.shape[1]
    big = 0.0
    for i in range(n):
        for j in range(n):
            v = abs(A[i, j])
            if v > big:
                big = v
    thresh = 1e-12 * big
    if n > 0 and thresh == 0.0:
        return X, False
    for j in range(n):
        p = j
        best = abs(A[j, j])
        for i in range(j + 1, n):
            v = abs(A[i, j])
            if v > best:
                best = v
                p = i
        if best <= thresh:
            return X, False
        if p != j:
            for c in range(n):
                t = A[j, c]
                A[j, c] = A[p, c]
                A[p, c] = t
            for c in range(m):
                t = X[j, c]
                X[j, c] = X[p, c]
                X[p, c] = t
        piv = A[j, j]
        for i in range(j + 1, n):
            f = A[i, j] / piv
            if f != 0.0:
                for c in range(j, n):
                    A[i, c] -= f * A[j, c]
                for c in range(m):
                    X[i, c] -= f * X[j, c]
    for j in range(n - 1, -1, -1):
        for c in range(m):
            acc = X[j, c]
            for q in range(j + 1, n):
                acc -= A[j, q] * X[q, c]
            X[j, c] = acc / A[j, j]
    return X, True


@njit(cache=True)
def primitive_witness(P, kmax):
    n = P.shape[0]
    base = np.zeros((n, n), dtype=np.bool_)
    for i in range(n):
        for j in range(n):
            base[i, j] = P[i, j] > 0
    cur = base.copy()
    nxt = np.zeros((n, n), dtype=np.bool_)
    for k in range(1, kmax + 1):
        full = True
        for i in range(n):
            for j in range(n):
                if not cur[i, j]:
                    full = False
                    break
            if not full:
                break
        if full:
            return k
        for i in range(n):
            for j in range(n):
                hit = False
                for q in range(n):
                    if cur[i, q] and base[q, j]:
                        hit = True
                        break
                nxt[i, j] = hit
        cur, nxt = nxt, cur
    return 0


@njit(cache=True)
def power_iteration(M, tol, max_iter):
    n = M.shape[0]
    x = np.full(n, 1.0 / np.sqrt(n))
    y = np.empty(n)
    rho_old = np.inf
    rho = 0.0
    res = np.inf
    for it in range(1, max_iter + 1):
        for i in range(n):
            acc = 0.0
            for j in range(n):
                acc += M[i, j] * x[j]
            y[i] = acc
        rho = 0.0
        for i in range(n):
            rho += x[i] * y[i]
        res = 0.0
        ny = 0.0
        for i in range(n):
            r = y[i] - rho * x[i]
            res += r * r
            ny += y[i] * y[i]
        res = np.sqrt(res)
        ny = np.sqrt(ny)
        if abs(rho - rho_old) <= tol and res <= tol:
            return rho, x, it, res, OK
        if ny == 0.0 or not np.isfinite(ny):
            return rho, x, it, res, DEGENERATE
        for i in range(n):
            x[i] = y[i] / ny
        rho_old = rho
    return rho, x, max_iter, res, MAX_ITER


@njit(cache=True)
def collatz_loop(As, Ad, xs0, xd0, tol_s, tol_d, max_iter):
    n = xs0.shape[0]
    lower = np.empty((max_iter + 1, 2))
    upper = np.empty((max_iter + 1, 2))
    its_s = np.empty((max_iter + 1, n))
    its_d = np.empty((max_iter + 1, n))
    xs = xs0.copy()
    xd = xd0.copy()
    ys = np.empty(n)
    yd = np.empty(n)
    for k in range(max_iter + 1):
        for i in range(n):
            its_s[k, i] = xs[i]
            its_d[k, i] = xd[i]
            if xs[i] == 0.0:
                return lower, upper, its_s, its_d, k, NON_APPRECIABLE
        _matvec_pair(As, Ad, xs, xd, ys, yd)
        ls = np.inf
        ld = np.inf
        us = -np.inf
        ud = -np.inf
        for i in range(n):
            rs = ys[i] / xs[i]
            rd = yd[i] / xs[i] - ys[i] * xd[i] / (xs[i] * xs[i])
            if rs < ls or (rs == ls and rd < ld):
                ls = rs
                ld = rd
            if rs > us or (rs == us and rd > ud):
                us = rs
                ud = rd
        lower[k, 0] = ls
        lower[k, 1] = ld
        upper[k, 0] = us
        upper[k, 1] = ud
        if ls > us or (ls == us and ld > ud):
            return lower, upper, its_s, its_d, k + 1, BRACKET_INVERSION
        if us - ls <= tol_s and abs(ud - ld) <= tol_d:
            return lower, upper, its_s, its_d, k + 1, OK
        if k == max_iter:
            break
        ns = 0.0
        for i in range(n):
            ns += ys[i] * ys[i]
        ns = np.sqrt(ns)
        if ns == 0.0 or not np.isfinite(ns):
            return lower, upper, its_s, its_d, k + 1, DEGENERATE
        dot = 0.0
        for i in range(n):
            xs[i] = ys[i] / ns
            dot += xs[i] * yd[i]
        for i in range(n):
            xd[i] = yd[i] / ns - xs[i] * dot / ns
    return lower, upper, its_s, its_d, max_iter + 1, MAX_ITER


@njit(cache=True)
def decay_loop(As, Ad, k_max):
    n = As.shape[0]
    s_max = np.zeros(k_max)
    d_max = np.zeros(k_max)
    Ps = As.copy()
    Pd = Ad.copy()
    Ns = np.empty((n, n))
    Nd = np.empty((n, n))
    tmp = np.empty((n, n))
    for k in range(k_max):
        ms = 0.0
        md = 0.0
        for i in range(n):
            for j in range(n):
                a = abs(Ps[i, j])
                b = abs(Pd[i, j])
                if a > ms or not np.isfinite(a):
                    ms = a
                if b > md or not np.isfinite(b):
                    md = b
        if not (np.isfinite(ms) and np.isfinite(md)):
            return s_max, d_max, k, OVERFLOW
        s_max[k] = ms
        d_max[k] = md
        _matmul_into(Ps, As, Ns)
        _matmul_into(Ps, Ad, Nd)
        _matmul_into(Pd, As, tmp)
        for i in range(n):
            for j in range(n):
                Nd[i, j] += tmp[i, j]
        Ps, Ns = Ns, Ps
        Pd, Nd = Nd, Pd
    return s_max, d_max, k_max, OK


@njit(cache=True)
def lemma_grid(lam_s, lam_d, gamma, L, eta, k, m):
    h = eta ** k
    t = np.linspace(-L, L, m)
    min_s = np.inf
    max_s = -np.inf
    min_d = np.inf
    max_d = -np.inf
    for a in range(m):
        ns = gamma + t[a] * h
        for b in range(m):
            nd = t[b] * h
            for c in range(m):
                ds = gamma + t[c] * h
                for e in range(m):
                    dd = t[e] * h
                    qs = ns / ds
                    qd = nd / ds - ns * dd / (ds * ds)
                    vs = lam_s * qs
                    vd = lam_s * qd + lam_d * qs
                    if vs < min_s:
                        min_s = vs
                    if vs > max_s:
                        max_s = vs
                    if vd < min_d:
                        min_d = vd
                    if vd > max_d:
                        max_d = vd
    return min_s, max_s, min_d, max_d
