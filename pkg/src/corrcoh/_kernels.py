"""Hot numeric kernels, each with a numba loop version and a numpy version.

The two versions of a kernel implement the same arithmetic and must agree to
rounding.  Callers go through the dispatchers at the bottom of the module;
the benchmark and the backend-agreement tests call both sides directly.
"""

import numpy as np

from ._accel import USE_NUMBA, njit

JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100
PROB_FLOOR = 1e-12


# ---------------------------------------------------------------------------
# cyclic Jacobi for complex Hermitian matrices
# ---------------------------------------------------------------------------

@njit
def _jacobi_one(A, W, tol, max_sweeps):
    n = A.shape[0]
    scale = 0.0
    for i in range(n):
        for j in range(n):
            scale += abs(A[i, j]) ** 2
    scale = max(1.0, np.sqrt(scale))
    for sweep in range(max_sweeps):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += abs(A[i, j]) ** 2
        if np.sqrt(off) <= tol * scale:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                h = A[p, q]
                mag = abs(h)
                if mag == 0.0:
                    continue
                e = h / mag
                theta = (A[q, q].real - A[p, p].real) / (2.0 * mag)
                sgn = 1.0 if theta >= 0.0 else -1.0
                t = sgn / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                vpp = c + 0j
                vpq = s + 0j
                vqp = -s * np.conj(e)
                vqq = c * np.conj(e)
                for k in range(n):
                    akp = A[k, p]
                    akq = A[k, q]
                    A[k, p] = akp * vpp + akq * vqp
                    A[k, q] = akp * vpq + akq * vqq
                    wkp = W[k, p]
                    wkq = W[k, q]
                    W[k, p] = wkp * vpp + wkq * vqp
                    W[k, q] = wkp * vpq + wkq * vqq
                for k in range(n):
                    apk = A[p, k]
                    aqk = A[q, k]
                    A[p, k] = np.conj(vpp) * apk + np.conj(vqp) * aqk
                    A[q, k] = np.conj(vpq) * apk + np.conj(vqq) * aqk
                A[p, q] = 0.0
                A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
    return max_sweeps


@njit
def jacobi_eigh_numba(H, tol, max_sweeps):
    N, n, _ = H.shape
    w = np.empty((N, n))
    V = np.empty((N, n, n), dtype=np.complex128)
    for b in range(N):
        A = H[b].copy()
        W = np.eye(n, dtype=np.complex128)
        _jacobi_one(A, W, tol, max_sweeps)
        d = np.empty(n)
        for i in range(n):
            d[i] = A[i, i].real
        order = np.argsort(d)
        for i in range(n):
            w[b, i] = d[order[i]]
            for k in range(n):
                V[b, k, i] = W[k, order[i]]
    return w, V


def jacobi_eigh_numpy(H, tol, max_sweeps):
    A = np.array(H, dtype=np.complex128, copy=True)
    N, n, _ = A.shape
    W = np.broadcast_to(np.eye(n, dtype=np.complex128), A.shape).copy()
    scale = np.maximum(1.0, np.sqrt(np.sum(np.abs(A) ** 2, axis=(1, 2))))
    offmask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.abs(A[:, offmask]) ** 2, axis=1))
        active = off > tol * scale
        if not active.any():
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                h = A[:, p, q]
                mag = np.abs(h)
                live = active & (mag > 0.0)
                safe = np.where(live, mag, 1.0)
                e = np.where(live, h / safe, 1.0)
                theta = (A[:, q, q].real - A[:, p, p].real) / (2.0 * safe)
                sgn = np.where(theta >= 0.0, 1.0, -1.0)
                t = sgn / (np.abs(theta) + np.hypot(theta, 1.0))
                t = np.where(live, t, 0.0)
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                vpp = c.astype(np.complex128)
                vpq = s.astype(np.complex128)
                vqp = -s * np.conj(e)
                vqq = c * np.conj(e)
                for M in (A, W):
                    mp = M[:, :, p].copy()
                    mq = M[:, :, q]
                    M[:, :, p] = mp * vpp[:, None] + mq * vqp[:, None]
                    M[:, :, q] = mp * vpq[:, None] + mq * vqq[:, None]
                rp = A[:, p, :].copy()
                rq = A[:, q, :].copy()
                A[:, p, :] = np.conj(vpp)[:, None] * rp + np.conj(vqp)[:, None] * rq
                A[:, q, :] = np.conj(vpq)[:, None] * rp + np.conj(vqq)[:, None] * rq
                A[live, p, q] = 0.0
                A[live, q, p] = 0.0
                A[:, p, p] = A[:, p, p].real
                A[:, q, q] = A[:, q, q].real
    d = np.real(np.diagonal(A, axis1=1, axis2=2))
    order = np.argsort(d, axis=1, kind="stable")
    w = np.take_along_axis(d, order, axis=1)
    V = np.take_along_axis(W, order[:, None, :], axis=2)
    return w, V


# ---------------------------------------------------------------------------
# averaged conditional entropy of B after a projective measurement on A
# ---------------------------------------------------------------------------

@njit
def _h2(x):
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * np.log2(x) - (1.0 - x) * np.log2(1.0 - x)


@njit
def conditional_entropy_numba(a, b, E, dirs):
    M = dirs.shape[0]
    out = np.empty(M)
    for m in range(M):
        n0 = dirs[m, 0]
        n1 = dirs[m, 1]
        n2 = dirs[m, 2]
        na = n0 * a[0] + n1 * a[1] + n2 * a[2]
        u0 = n0 * E[0, 0] + n1 * E[1, 0] + n2 * E[2, 0]
        u1 = n0 * E[0, 1] + n1 * E[1, 1] + n2 * E[2, 1]
        u2 = n0 * E[0, 2] + n1 * E[1, 2] + n2 * E[2, 2]
        total = 0.0
        for k in (1.0, -1.0):
            den = 1.0 + k * na
            p = 0.5 * den
            if p < PROB_FLOOR:
                continue
            v0 = (b[0] + k * u0) / den
            v1 = (b[1] + k * u1) / den
            v2 = (b[2] + k * u2) / den
            r = min(1.0, np.sqrt(v0 * v0 + v1 * v1 + v2 * v2))
            total += p * _h2(0.5 * (1.0 + r))
        out[m] = total
    return out


def _h2_array(x):
    x = np.clip(x, 0.0, 1.0)
    out = np.zeros_like(x)
    inside = (x > 0.0) & (x < 1.0)
    xi = x[inside]
    out[inside] = -xi * np.log2(xi) - (1.0 - xi) * np.log2(1.0 - xi)
    return out


def conditional_entropy_numpy(a, b, E, dirs):
    dirs = np.asarray(dirs, dtype=float)
    na = dirs @ a
    u = dirs @ E
    total = np.zeros(dirs.shape[0])
    for k in (1.0, -1.0):
        den = 1.0 + k * na
        p = 0.5 * den
        ok = p >= PROB_FLOOR
        v = (b[None, :] + k * u) / np.where(ok, den, 1.0)[:, None]
        r = np.minimum(1.0, np.linalg.norm(v, axis=1))
        total += np.where(ok, p * _h2_array(0.5 * (1.0 + r)), 0.0)
    return total


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def jacobi_eigh(H, tol=JACOBI_TOL, max_sweeps=JACOBI_MAX_SWEEPS):
    """Batched Hermitian eigendecomposition, ``H`` of shape (N, n, n)."""
    H = np.ascontiguousarray(H, dtype=np.complex128)
    if USE_NUMBA:
        return jacobi_eigh_numba(H, tol, max_sweeps)
    return jacobi_eigh_numpy(H, tol, max_sweeps)


def conditional_entropy(a, b, E, dirs):
    a = np.ascontiguousarray(a, dtype=float)
    b = np.ascontiguousarray(b, dtype=float)
    E = np.ascontiguousarray(E, dtype=float)
    dirs = np.ascontiguousarray(dirs, dtype=float)
    if USE_NUMBA:
        return conditional_entropy_numba(a, b, E, dirs)
    return conditional_entropy_numpy(a, b, E, dirs)
