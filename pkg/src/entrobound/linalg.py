"""
Dense complex Hermitian linear algebra.

Everything downstream (square roots of POVM elements, operator norms,
density-matrix spectra, dilation unitaries) goes through the cyclic
Jacobi eigensolver defined here, so results are reproducible bit for bit
for identical inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

HERMITIAN_RTOL = 1e-12
PSD_CLAMP = 1e-10
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100
SIGN_ATOL = 1e-12
# eigenvalues this far below the top one are roundoff; their roots would not be
ROOT_FLOOR = 1e-14


class ValidationError(ValueError):
    """Input violates a structural invariant.

    ``index`` names the offending element (when there is one) and
    ``deviation`` the measured violation.
    """

    def __init__(self, message, *, index=None, deviation=None):
        super().__init__(message)
        self.index = index
        self.deviation = deviation

    def with_context(self, where: str) -> "ValidationError":
        return type(self)(f"{where}: {self}", index=self.index, deviation=self.deviation)


class NotHermitianError(ValidationError):
    pass


class NotPSDError(ValidationError):
    pass


class NotIsometryError(ValidationError):
    pass


class DimensionError(ValidationError):
    pass


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues in descending order with matching orthonormal columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T

    def __len__(self) -> int:
        return self.eigenvalues.shape[0]


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionError(f"expected a 2-d array, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValidationError("matrix has non-finite entries")
    return m


def max_abs(a) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def hermitian_part(a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    return 0.5 * (a + a.conj().T)


def check_hermitian(a, rtol: float = HERMITIAN_RTOL) -> np.ndarray:
    """Return ``a`` as a complex array after checking it is square and Hermitian.

    The tolerance is relative to the largest entry. On success the exact
    Hermitian part is returned, so later arithmetic never sees the residue.
    """
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    dev = max_abs(m - m.conj().T)
    if dev > rtol * max_abs(m):
        raise NotHermitianError(
            f"matrix is not Hermitian: max |A - A^dagger| = {dev:.3e}", deviation=dev
        )
    return hermitian_part(m)


@njit(cache=True)
def _jacobi_sweeps(a, v, tol, max_sweeps):
    n = a.shape[0]
    scale = 0.0
    for i in range(n):
        for j in range(n):
            scale += abs(a[i, j]) ** 2
    scale = np.sqrt(scale)
    for _ in range(max_sweeps):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += abs(a[i, j]) ** 2
        if np.sqrt(off) <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                # unitary phase turns a_pq real, then a real symmetric Schur rotation
                ph = (apq / r).conjugate()
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                sgn = 1.0 if tau >= 0.0 else -1.0
                t = sgn / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                g21 = -s * ph
                g22 = c * ph
                for k in range(n):
                    x = a[k, p]
                    y = a[k, q]
                    a[k, p] = c * x + g21 * y
                    a[k, q] = s * x + g22 * y
                for k in range(n):
                    x = a[p, k]
                    y = a[q, k]
                    a[p, k] = c * x + g21.conjugate() * y
                    a[q, k] = s * x + g22.conjugate() * y
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    x = v[k, p]
                    y = v[k, q]
                    v[k, p] = c * x + g21 * y
                    v[k, q] = s * x + g22 * y
    return a, v


def _jacobi(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = a.shape[0]
    work, v = _jacobi_sweeps(
        np.ascontiguousarray(a, dtype=np.complex128).copy(),
        np.eye(n, dtype=np.complex128),
        JACOBI_TOL,
        JACOBI_MAX_SWEEPS,
    )
    return work.diagonal().real.copy(), v


def _fix_phases(v: np.ndarray) -> np.ndarray:
    v = v.copy()
    for k in range(v.shape[1]):
        col = v[:, k]
        nz = np.flatnonzero(np.abs(col) > SIGN_ATOL)
        if nz.size:
            lead = col[nz[0]]
            v[:, k] = col * (abs(lead) / lead)
            v[nz[0], k] = abs(lead)
    return v


def hermitian_eig(a) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    a : array_like
        Square Hermitian matrix.

    Returns
    -------
    SpectralDecomposition
        Eigenvalues sorted descending (ties keep their Jacobi index order),
        eigenvectors as columns with the first non-negligible component of
        each made real and positive.

    Raises
    ------
    NotHermitianError
        If ``a`` deviates from its adjoint beyond the relative tolerance.
    """
    m = check_hermitian(a)
    w, v = _jacobi(m)
    order = np.argsort(-w, kind="stable")
    return SpectralDecomposition(w[order], _fix_phases(v[:, order]))


def clamp_spectrum(spec: SpectralDecomposition) -> SpectralDecomposition:
    """Zero negative and roundoff-level eigenvalues of a PSD spectrum."""
    w = spec.eigenvalues
    floor = ROOT_FLOOR * max(1.0, float(w[0])) if len(w) else 0.0
    return SpectralDecomposition(np.where(w > floor, w, 0.0), spec.eigenvectors)


def _psd_spectrum(a, what="matrix") -> SpectralDecomposition:
    spec = hermitian_eig(a)
    low = float(spec.eigenvalues[-1]) if len(spec) else 0.0
    if low < -PSD_CLAMP:
        raise NotPSDError(f"{what} is not positive semidefinite: eigenvalue {low:.3e}", deviation=low)
    return clamp_spectrum(spec)


def function_of(spec: SpectralDecomposition, fn) -> np.ndarray:
    """Apply ``fn`` to the eigenvalues and rebuild the (Hermitian) matrix."""
    v = spec.eigenvectors
    return hermitian_part((v * fn(spec.eigenvalues)) @ v.conj().T)


def psd_sqrt(a) -> np.ndarray:
    """Unique positive square root.

    Eigenvalues in [-1e-10, 1e-14 * max(1, top)] count as zero, so projectors
    are exact fixed points rather than picking up ``sqrt(eps)`` noise.
    """
    return function_of(_psd_spectrum(a), np.sqrt)


def operator_norm(a) -> float:
    """Largest singular value, from the top eigenvalue of A^dagger A."""
    m = as_matrix(a)
    if m.size == 0:
        return 0.0
    top = hermitian_eig(hermitian_part(m.conj().T @ m)).eigenvalues[0]
    return float(np.sqrt(max(top, 0.0)))


def complete_to_unitary(w, tol: float = 1e-10, skip: float = 1e-8) -> np.ndarray:
    """Extend a D x d isometry to a D x D unitary whose first d columns are ``w``.

    Missing columns come from Gram-Schmidt over the standard basis in index
    order; candidates whose residual norm falls below ``skip`` are dropped.
    """
    w = as_matrix(w)
    big, small = w.shape
    if small > big:
        raise NotIsometryError(f"cannot complete a {big}x{small} matrix: more columns than rows")
    dev = max_abs(w.conj().T @ w - np.eye(small))
    if dev > tol:
        raise NotIsometryError(f"columns are not orthonormal: max |W^dagger W - I| = {dev:.3e}", deviation=dev)
    cols = [w[:, k] for k in range(small)]
    basis = w.copy()
    for k in range(big):
        if len(cols) == big:
            break
        e = np.zeros(big, dtype=complex)
        e[k] = 1.0
        # two passes of classical Gram-Schmidt keep the result orthogonal to ~eps
        r = e - basis @ (basis.conj().T @ e)
        r = r - basis @ (basis.conj().T @ r)
        nrm = np.linalg.norm(r)
        if nrm < skip:
            continue
        cols.append(r / nrm)
        basis = np.column_stack(cols)
    if len(cols) != big:
        raise NotIsometryError("standard-basis completion did not reach full rank")
    return np.column_stack(cols)
