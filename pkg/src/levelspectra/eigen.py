"""Dense symmetric eigensolver, self-contained.

Primary path: Householder reduction to tridiagonal form followed by the
implicit-shift QL iteration (the classic tred2/imtql2 pair, ported to numpy).
A cyclic Jacobi solver is kept as an independent cross-validation path,
selectable via ``method="jacobi"``.

Both paths return all eigenvalues sorted descending together with an
orthonormal matrix of eigenvectors (as columns, matching the value order).
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ConvergenceFailure

#: Iteration budget multiplier; exceeding ``30 * n`` QL steps (or Jacobi
#: sweeps) signals a bug rather than hard input.
ITERATION_FACTOR = 30


def householder_tridiagonalize(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Orthogonal reduction of a symmetric matrix to tridiagonal form.

    Returns ``(d, e, q)`` with diagonal ``d``, subdiagonal ``e`` (length n,
    ``e[n-1]`` is zero padding) and the accumulated orthogonal ``q`` so that
    ``q.T @ a @ q`` is tridiagonal.
    """
    A = np.array(a, dtype=float)
    n = A.shape[0]
    d = np.zeros(n)
    e = np.zeros(n)
    for i in range(n - 1, 0, -1):
        scale = float(np.abs(A[:i, i]).sum())
        if i == 1 or scale == 0.0:
            e[i] = A[i - 1, i]
            d[i] = 0.0
            continue
        A[:i, i] /= scale
        u = A[:i, i]
        h = float(u @ u)
        f = float(u[i - 1])
        g = -math.copysign(math.sqrt(h), f)
        e[i] = scale * g
        h -= f * g
        u[i - 1] = f - g
        # Row i keeps u/h for the later transform accumulation. The active
        # block A[:i, :i] stays exactly symmetric under the rank-2 updates.
        A[i, :i] = u / h
        p = (A[:i, :i] @ u) / h
        hh = float(p @ u) / (2.0 * h)
        q = p - hh * u
        A[:i, :i] -= np.outer(q, u) + np.outer(u, q)
        d[i] = h
    e[:-1] = e[1:]
    e[-1] = 0.0
    # Accumulate the Householder reflectors into an explicit orthogonal matrix.
    d[0] = 0.0
    for i in range(n):
        if d[i] != 0.0:
            g_row = A[i, :i] @ A[:i, :i]
            A[:i, :i] -= np.outer(A[:i, i], g_row)
        d[i] = A[i, i]
        A[i, i] = 1.0
        A[:i, i] = 0.0
        A[i, :i] = 0.0
    return d, e, A


def ql_implicit_shift(d: np.ndarray, e: np.ndarray, z: np.ndarray,
                      iteration_cap: int | None = None) -> None:
    """Implicit-shift QL iteration on a symmetric tridiagonal matrix.

    ``d`` (diagonal) and ``e`` (subdiagonal, ``e[n-1]`` scratch) are reduced
    in place; on return ``d`` holds the eigenvalues. ``z`` is multiplied by
    the eigenvector matrix, so passing the orthogonal factor of the
    tridiagonalization yields eigenvectors of the original matrix.
    """
    n = len(d)
    if n <= 1:
        return
    if iteration_cap is None:
        iteration_cap = ITERATION_FACTOR * n
    eps = np.finfo(float).eps
    e[n - 1] = 0.0
    steps = 0
    for l in range(n):
        while True:
            m = l
            while m + 1 < n and abs(e[m]) > eps * (abs(d[m]) + abs(d[m + 1])):
                m += 1
            if m == l:
                break
            steps += 1
            if steps > iteration_cap:
                raise ConvergenceFailure(
                    f"QL iteration exceeded {iteration_cap} steps on an "
                    f"order-{n} tridiagonal matrix"
                )
            # Wilkinson-style shift from the leading 2x2 block.
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s, c, p = 1.0, 1.0, 0.0
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                if abs(f) > abs(g):
                    c = g / f
                    r = math.hypot(c, 1.0)
                    e[i + 1] = f * r
                    s = 1.0 / r
                    c *= s
                else:
                    s = f / g
                    r = math.hypot(s, 1.0)
                    e[i + 1] = g * r
                    c = 1.0 / r
                    s *= c
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                col = z[:, i + 1].copy()
                z[:, i + 1] = s * z[:, i] + c * col
                z[:, i] = c * z[:, i] - s * col
            d[l] -= p
            e[l] = g
            e[m] = 0.0


def jacobi_eigh(a: np.ndarray, iteration_cap: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi rotations; independent of the QL path.

    Classic sweep schedule: a rotation threshold for the first sweeps, then
    explicit zeroing of entries too small to matter, so the off-diagonal sum
    reaches exactly zero.
    """
    A = np.array(a, dtype=float)
    n = A.shape[0]
    V = np.eye(n)
    if n == 1:
        return np.array([A[0, 0]]), V
    if iteration_cap is None:
        iteration_cap = ITERATION_FACTOR * n
    eps = np.finfo(float).eps
    for sweep in range(1, iteration_cap + 1):
        off_sum = float(np.abs(np.triu(A, 1)).sum())
        if off_sum == 0.0:
            return np.diag(A).copy(), V
        thresh = 0.2 * off_sum / (n * n) if sweep < 4 else 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                small = 100.0 * abs(apq) <= eps * (abs(A[p, p]) + abs(A[q, q]))
                if sweep > 4 and small:
                    A[p, q] = A[q, p] = 0.0
                    continue
                if abs(apq) <= thresh:
                    continue
                app, aqq = A[p, p], A[q, q]
                diff = aqq - app
                if 100.0 * abs(apq) <= eps * abs(diff):
                    t = apq / diff
                else:
                    tau = diff / (2.0 * apq)
                    t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(tau, 1.0))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                colp = A[:, p].copy()
                colq = A[:, q].copy()
                new_p = c * colp - s * colq
                new_q = c * colq + s * colp
                A[:, p] = new_p
                A[p, :] = new_p
                A[:, q] = new_q
                A[q, :] = new_q
                A[p, p] = app - t * apq
                A[q, q] = aqq + t * apq
                A[p, q] = A[q, p] = 0.0
                vp = V[:, p].copy()
                V[:, p] = c * vp - s * V[:, q]
                V[:, q] = c * V[:, q] + s * vp
    raise ConvergenceFailure(
        f"Jacobi iteration exceeded {iteration_cap} sweeps on an order-{n} matrix"
    )


def symmetric_eigh(a, method: str = "ql",
                   iteration_cap: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """All eigenvalues (descending) and eigenvectors of a symmetric matrix.

    ``method`` is ``"ql"`` (Householder + implicit-shift QL, the default) or
    ``"jacobi"`` (cross-validation path).
    """
    A = np.asarray(a, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"need a square matrix, got shape {A.shape}")
    n = A.shape[0]
    if n == 1:
        return np.array([float(A[0, 0])]), np.eye(1)
    if method == "ql":
        d, e, z = householder_tridiagonalize(A)
        ql_implicit_shift(d, e, z, iteration_cap)
        values, vectors = d, z
    elif method == "jacobi":
        values, vectors = jacobi_eigh(A, iteration_cap)
    else:
        raise ValueError(f"unknown method {method!r}; use 'ql' or 'jacobi'")
    order = np.argsort(values, kind="stable")[::-1]
    return values[order], vectors[:, order]
