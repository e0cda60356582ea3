"""
Naimark dilation of a POVM to a PVM on an enlarged space.

The construction stacks the square roots of the POVM elements into an
isometry ``W = [E_1^{1/2}; ...; E_n^{1/2}]`` from C^d into C^{nd}, completes
it to a unitary ``U`` and sets ``Et_i = U^dagger Pi_i U`` with ``Pi_i`` the
projector onto the i-th block of d coordinates. In the coordinates of
``U`` the original space is the first d basis vectors, so each ``Et_i``
has ``E_i`` as its top-left block.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bounds import f_pure
from .linalg import (
    DimensionError,
    SpectralDecomposition,
    ValidationError,
    complete_to_unitary,
    hermitian_eig,
    hermitian_part,
    max_abs,
)
from .measurement import (
    DensityMatrix,
    Measurement,
    MeasurementKind,
    PureState,
    as_density,
    as_pure,
    validate_measurement,
)

SNAP_TOL = 1e-8
IDENTITY_TOL = 1e-9


class DilationError(ValidationError):
    pass


@dataclass(frozen=True, eq=False)
class NaimarkDilation:
    original: Measurement
    enlarged_dim: int
    projectors: Measurement
    embedding_unitary: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.original.dim


def _snap_projector(a: np.ndarray, index: int) -> np.ndarray:
    spec = hermitian_eig(a)
    w = spec.eigenvalues
    snapped = np.where(np.abs(w - 1.0) <= SNAP_TOL, 1.0, np.where(np.abs(w) <= SNAP_TOL, 0.0, w))
    bad = np.flatnonzero((snapped != 0.0) & (snapped != 1.0))
    if bad.size:
        k = int(bad[0])
        raise DilationError(
            f"dilated element {index} has eigenvalue {w[k]:.3e} away from 0 and 1",
            index=index,
            deviation=float(min(abs(w[k]), abs(w[k] - 1.0))),
        )
    v = spec.eigenvectors
    return hermitian_part((v * snapped) @ v.conj().T)


def dilate(e: Measurement) -> NaimarkDilation:
    """Realise a POVM as a PVM on C^(n*d) with the original space as the first d coordinates."""
    n, d = e.n_outcomes, e.dim
    w = np.vstack(e.roots)
    try:
        u = complete_to_unitary(w)
    except ValidationError as exc:
        raise DilationError(f"isometry completion failed: {exc}") from exc
    big = n * d
    projectors = []
    for i in range(n):
        block = u[i * d:(i + 1) * d, :]
        projectors.append(_snap_projector(block.conj().T @ block, i))
    pvm = validate_measurement(projectors, MeasurementKind.PVM, e.labels)
    return NaimarkDilation(e, big, pvm, u)


def _pad(vec: np.ndarray, size: int) -> np.ndarray:
    out = np.zeros(size, dtype=complex)
    out[: vec.shape[0]] = vec
    return out


def embed_state(psi, dilation: NaimarkDilation) -> PureState:
    psi = as_pure(psi)
    if psi.dim != dilation.dim:
        raise DimensionError(f"state has dimension {psi.dim}, dilation expects {dilation.dim}")
    return PureState(_pad(psi.amplitudes, dilation.enlarged_dim))


def embed_density(rho, dilation: NaimarkDilation) -> DensityMatrix:
    """Zero-padded density matrix with the spectrum carried over."""
    rho = as_density(rho)
    if rho.dim != dilation.dim:
        raise DimensionError(f"state has dimension {rho.dim}, dilation expects {dilation.dim}")
    d, big = rho.dim, dilation.enlarged_dim
    vecs = np.zeros((big, big), dtype=complex)
    vecs[:d, :d] = rho.spectrum.eigenvectors
    vecs[d:, d:] = np.eye(big - d)
    vals = np.concatenate([rho.spectrum.eigenvalues, np.zeros(big - d)])
    matrix = np.zeros((big, big), dtype=complex)
    for lam, vec in rho.support():
        tilde = _pad(vec, big)
        matrix += lam * np.outer(tilde, tilde.conj())
    return DensityMatrix(hermitian_part(matrix), SpectralDecomposition(vals, vecs))


def extend_companion(g: Measurement, dilation: NaimarkDilation) -> Measurement:
    """Block-extend a second measurement; the tail identity goes to the first outcome."""
    if g.dim != dilation.dim:
        raise DimensionError(f"measurement has dimension {g.dim}, dilation expects {dilation.dim}")
    d, big = dilation.dim, dilation.enlarged_dim
    out = []
    for j, el in enumerate(g.elements):
        t = np.zeros((big, big), dtype=complex)
        t[:d, :d] = el
        if j == 0:
            t[d:, d:] = np.eye(big - d)
        out.append(t)
    return validate_measurement(out, g.kind, g.labels)


@dataclass(frozen=True)
class DilationReport:
    """Residuals of the structural and per-state preservation identities.

    ``structural`` holds projector, completeness and corner-block residuals;
    ``per_state`` one dict per state with the probability, root-norm,
    inner-product and overlap-functional residuals; ``norm_gaps`` the
    per-outcome differences ``| ||Et_i psit|| - ||E_i psi|| |`` which are
    expected to be nonzero for genuine POVMs.
    """

    structural: dict[str, float]
    per_state: tuple[dict[str, float], ...]
    norm_gaps: tuple[tuple[float, ...], ...]

    def residuals(self) -> dict[str, float]:
        out = dict(self.structural)
        for row in self.per_state:
            for k, v in row.items():
                out[k] = max(out.get(k, 0.0), v)
        return out

    @property
    def max_residual(self) -> float:
        return max(self.residuals().values())

    @property
    def passed(self) -> bool:
        return self.max_residual <= IDENTITY_TOL

    @property
    def max_norm_gap(self) -> float:
        return max((max(g) for g in self.norm_gaps), default=0.0)


def structural_residuals(dilation: NaimarkDilation) -> dict[str, float]:
    d = dilation.dim
    tilde = dilation.projectors.elements
    return {
        "projector": max(max_abs(p @ p - p) for p in tilde),
        "completeness": max_abs(sum(tilde) - np.eye(dilation.enlarged_dim)),
        "corner_block": max(
            max_abs(p[:d, :d] - e) for p, e in zip(tilde, dilation.original.elements)
        ),
    }


def verify_dilation(dilation: NaimarkDilation, g: Measurement, states) -> DilationReport:
    """Check every preservation identity of the dilation on the given states."""
    e = dilation.original
    et = dilation.projectors
    gt = extend_companion(g, dilation)
    per_state, gaps = [], []
    for psi in states:
        psi = as_pure(psi)
        if psi.dim != e.dim:
            raise DimensionError(f"state has dimension {psi.dim}, dilation expects {e.dim}")
        x = psi.amplitudes
        xt = embed_state(psi, dilation).amplitudes
        prob = max(
            abs(np.vdot(xt, a @ xt).real - np.vdot(x, b @ x).real) for a, b in zip(et, e)
        )
        norm_e = max(
            abs(np.linalg.norm(a @ xt) - np.linalg.norm(b @ x)) for a, b in zip(et.roots, e.roots)
        )
        norm_g = max(
            abs(np.linalg.norm(a @ xt) - np.linalg.norm(b @ x)) for a, b in zip(gt.roots, g.roots)
        )
        inner = max(
            abs(np.vdot(a @ xt, c @ xt) - np.vdot(b @ x, h @ x))
            for a, b in zip(et, e)
            for c, h in zip(gt, g)
        )
        f_gap = abs(f_pure(et, gt, xt) - f_pure(e, g, x))
        per_state.append(
            {"probability": float(prob), "root_norm_E": float(norm_e),
             "root_norm_G": float(norm_g), "inner_product": float(inner), "f": float(f_gap)}
        )
        gaps.append(
            tuple(float(abs(np.linalg.norm(a @ xt) - np.linalg.norm(b @ x))) for a, b in zip(et, e))
        )
    return DilationReport(structural_residuals(dilation), tuple(per_state), tuple(gaps))
