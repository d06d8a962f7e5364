"""Spectral data of level matrices: numerical eigenvalues via the in-repo
dense solver, exact integer characteristic polynomial, exact nullity, and
eigenvalue-cluster multiplicities.

Floating point (binary64) everywhere except the characteristic polynomial
and the rank computation, which run in exact arbitrary-precision integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .eigen import symmetric_eigh
from .errors import AmbiguousCluster, LevelSpectraError, ResourceLimit, TooSmall
from .levelmatrix import LevelMatrix

#: Eigenvalues closer than ``DEFAULT_CLUSTER_TOL * max(1, rho)`` are treated
#: as one cluster. Integer matrices at desk scale separate far better than
#: this; exact rank is the authority for the zero cluster.
DEFAULT_CLUSTER_TOL = 1e-8

#: Characteristic polynomials beyond this order are refused by default; the
#: coefficients grow combinatorially.
DEFAULT_CHARPOLY_CAP = 24


def _as_array(matrix) -> np.ndarray:
    if isinstance(matrix, LevelMatrix):
        return matrix.entries
    return np.asarray(matrix)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted descending, with clusters and Perron data.

    ``perron`` is the sign-normalised eigenvector of the top eigenvalue
    (``None`` for 1x1 input, where no Perron vector exists).
    """

    values: np.ndarray
    clusters: tuple[tuple[float, int], ...]
    rho: float
    energy: float
    perron: np.ndarray | None

    @property
    def n(self) -> int:
        return len(self.values)

    def to_dict(self) -> dict:
        return {
            "values": [float(v) for v in self.values],
            "clusters": [{"value": float(v), "multiplicity": m} for v, m in self.clusters],
            "rho": float(self.rho),
            "energy": float(self.energy),
        }


def _cluster(values: np.ndarray, threshold: float) -> tuple[tuple[float, int], ...]:
    """Group the (descending) values whenever adjacent gaps stay within the
    threshold."""
    clusters = []
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i - 1] - values[i] > threshold:
            block = values[start:i]
            clusters.append((float(block.mean()), len(block)))
            start = i
    return tuple(clusters)


def symmetric_eigenvalues(matrix, tol: float = DEFAULT_CLUSTER_TOL,
                          method: str = "ql") -> Spectrum:
    """Full spectrum of a symmetric matrix, computed in-repo.

    ``tol`` controls the cluster grouping (scaled by ``max(1, rho)``), not
    the solver itself, which iterates to machine precision.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    a = _as_array(matrix)
    values, vectors = symmetric_eigh(a, method=method)
    rho = float(np.abs(values).max()) if len(values) else 0.0
    energy = float(np.abs(values).sum())
    perron = None
    if len(values) >= 2:
        top = vectors[:, 0].copy()
        top /= np.linalg.norm(top)
        if top[np.argmax(np.abs(top))] < 0:
            top = -top
        perron = top
    return Spectrum(
        values=values,
        clusters=_cluster(values, tol * max(1.0, rho)),
        rho=rho,
        energy=energy,
        perron=perron,
    )


def perron_vector(matrix, tol: float = DEFAULT_CLUSTER_TOL,
                  method: str = "ql") -> tuple[float, np.ndarray]:
    """Spectral radius and its strictly positive unit eigenvector.

    Valid for irreducible non-negative matrices of order >= 2, where the top
    eigenvalue is simple and its eigenvector can be taken entrywise positive.
    """
    a = _as_array(matrix)
    if a.shape[0] < 2:
        raise TooSmall("Perron vector needs a matrix of order >= 2")
    spectrum = symmetric_eigenvalues(a, tol=tol, method=method)
    v = spectrum.perron
    if np.any(v <= 0.0):
        raise LevelSpectraError(
            "top eigenvector is not strictly positive; input is not an "
            "irreducible non-negative matrix"
        )
    return spectrum.rho, v


def level_energy(spectrum: Spectrum) -> float:
    """Sum of the absolute eigenvalues; equals 2*rho for every level matrix
    (exactly one positive eigenvalue and zero trace)."""
    return float(np.abs(spectrum.values).sum())


@dataclass(frozen=True)
class CharPoly:
    """Exact monic characteristic polynomial det(xI - M), degree-descending
    integer coefficients."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def to_json(self) -> str:
        return json.dumps([str(c) for c in self.coeffs])


def characteristic_polynomial(matrix, cap: int = DEFAULT_CHARPOLY_CAP) -> CharPoly:
    """Exact integer coefficients via the Faddeev-LeVerrier recurrence.

    M_1 = I, c_k = -tr(A M_k)/k, M_{k+1} = A M_k + c_k I; every division is
    exact for integer input.
    """
    a = _as_array(matrix)
    n = a.shape[0]
    if n > cap:
        raise ResourceLimit(
            f"characteristic polynomial of order {n} exceeds the cap of {cap}"
        )
    A = [[int(a[i, j]) for j in range(n)] for i in range(n)]
    M = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    coeffs = [1]
    for k in range(1, n + 1):
        AM = [
            [sum(A[i][t] * M[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)
        ]
        trace = sum(AM[i][i] for i in range(n))
        c, r = divmod(-trace, k)
        assert r == 0, "Faddeev-LeVerrier division must be exact on integers"
        coeffs.append(c)
        if k < n:
            M = AM
            for i in range(n):
                M[i][i] += c
    return CharPoly(tuple(coeffs))


def charpoly_roots(charpoly: CharPoly) -> np.ndarray:
    """Roots of the characteristic polynomial, descending.

    Uses the companion-matrix eigenproblem (numpy.roots) as a pipeline fully
    independent of the dense symmetric solver. All roots of a symmetric
    matrix's polynomial are real; a noticeable imaginary part flags a bug.
    """
    roots = np.roots([float(c) for c in charpoly.coeffs])
    scale = max(1.0, float(np.abs(roots).max())) if len(roots) else 1.0
    if len(roots) and float(np.abs(roots.imag).max()) > 1e-7 * scale:
        raise LevelSpectraError("complex roots from a symmetric matrix polynomial")
    return np.sort(roots.real)[::-1]


def exact_zero_multiplicity(matrix) -> int:
    """Exact nullity via Bareiss fraction-free integer elimination."""
    a = _as_array(matrix)
    n = a.shape[0]
    M = [[int(a[i, j]) for j in range(n)] for i in range(n)]
    rank = 0
    prev = 1
    for col in range(n):
        pivot = next((r for r in range(rank, n) if M[r][col] != 0), None)
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        p = M[rank][col]
        top = M[rank]
        for r in range(rank + 1, n):
            row = M[r]
            head = row[col]
            for c in range(col + 1, n):
                q, rem = divmod(row[c] * p - head * top[c], prev)
                assert rem == 0, "Bareiss division must be exact"
                row[c] = q
            row[col] = 0
        prev = p
        rank += 1
        if rank == n:
            break
    return n - rank


def clustered_multiplicity(spectrum: Spectrum, value: float,
                           tol: float = DEFAULT_CLUSTER_TOL) -> int:
    """Number of eigenvalues within ``tol * max(1, rho)`` of ``value``.

    Raises :class:`AmbiguousCluster` when the selected group is not separated
    from the remaining eigenvalues by more than the same threshold.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    threshold = tol * max(1.0, spectrum.rho)
    dist = np.abs(spectrum.values - value)
    inside = dist <= threshold
    count = int(inside.sum())
    if count and count < len(spectrum.values):
        gap = float(np.abs(spectrum.values[inside][:, None]
                           - spectrum.values[~inside][None, :]).min())
        if gap <= threshold:
            raise AmbiguousCluster(
                f"clusters around {value} overlap at tolerance {threshold:.3e}"
            )
    return count


def positive_eigenvalue_count(spectrum: Spectrum,
                              tol: float = DEFAULT_CLUSTER_TOL) -> int:
    """Eigenvalues exceeding ``tol * max(1, rho)``; one for every level
    matrix of order >= 2."""
    return int((spectrum.values > tol * max(1.0, spectrum.rho)).sum())


def eigenvalues_interlace(outer: Sequence[float], inner: Sequence[float],
                          slack: float) -> bool:
    """Cauchy interlacing test: inner[k] within [outer[k+1], outer[k]] up to
    ``slack``, both sequences descending."""
    outer = np.asarray(outer, dtype=float)
    inner = np.asarray(inner, dtype=float)
    if len(inner) != len(outer) - 1:
        raise ValueError("inner spectrum must have exactly one fewer value")
    return bool(
        np.all(inner <= outer[:-1] + slack) and np.all(inner >= outer[1:] - slack)
    )
