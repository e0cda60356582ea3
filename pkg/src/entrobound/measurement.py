"""Quantum states, POVMs/PVMs and outcome probabilities."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .linalg import (
    PSD_CLAMP,
    DimensionError,
    NotPSDError,
    SpectralDecomposition,
    ValidationError,
    check_hermitian,
    clamp_spectrum,
    complete_to_unitary,
    function_of,
    hermitian_eig,
    max_abs,
)

COMPLETENESS_TOL = 1e-10
ORTHOGONALITY_TOL = 1e-10
NORM_TOL = 1e-10
TRACE_TOL = 1e-10
PROB_CLAMP = 1e-12
PROB_DRIFT = 1e-9
SUPPORT_CUTOFF = 1e-12
RANK_ONE_TOL = 1e-10


class CompletenessError(ValidationError):
    pass


class OrthogonalityError(ValidationError):
    pass


class EigenvalueBoundError(ValidationError):
    pass


class NormalizationError(ValidationError):
    pass


class MeasurementKind(str, enum.Enum):
    POVM = "POVM"
    PVM = "PVM"


@dataclass(frozen=True, eq=False)
class Measurement:
    """A validated resolution of the identity.

    Build instances with :func:`validate_measurement`; the constructor does
    not check anything. ``spectra`` holds the eigendecomposition of each
    element computed during validation and is reused for square roots.
    """

    elements: tuple[np.ndarray, ...]
    kind: MeasurementKind = MeasurementKind.POVM
    labels: tuple[str, ...] = ()
    spectra: tuple[SpectralDecomposition, ...] = field(default=(), repr=False)

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]

    @property
    def n_outcomes(self) -> int:
        return len(self.elements)

    @cached_property
    def roots(self) -> tuple[np.ndarray, ...]:
        return tuple(function_of(s, np.sqrt) for s in self.spectra)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __eq__(self, other):
        if not isinstance(other, Measurement):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.labels == other.labels
            and len(self) == len(other)
            and all(np.array_equal(a, b) for a, b in zip(self.elements, other.elements))
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def __eq__(self, other):
        if not isinstance(other, PureState):
            return NotImplemented
        return np.array_equal(self.amplitudes, other.amplitudes)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    matrix: np.ndarray
    spectrum: SpectralDecomposition = field(repr=False)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def support(self) -> list[tuple[float, np.ndarray]]:
        """Eigenpairs with eigenvalue above the support cutoff, largest first."""
        vals, vecs = self.spectrum.eigenvalues, self.spectrum.eigenvectors
        return [(float(vals[k]), vecs[:, k]) for k in range(len(vals)) if vals[k] > SUPPORT_CUTOFF]

    def __eq__(self, other):
        if not isinstance(other, DensityMatrix):
            return NotImplemented
        return np.array_equal(self.matrix, other.matrix)

    __hash__ = None


@dataclass(frozen=True)
class RankOneElement:
    """One element written as ``weight * |vector><vector|``."""

    weight: float
    vector: np.ndarray


@dataclass(frozen=True)
class NotRankOne:
    index: int
    second_eigenvalue: float


def _element_spectrum(a, index: int) -> tuple[np.ndarray, SpectralDecomposition]:
    try:
        m = check_hermitian(a)
    except ValidationError as exc:
        raise exc.with_context(f"element {index}") from None
    spec = hermitian_eig(m)
    low = float(spec.eigenvalues[-1])
    if low < -PSD_CLAMP:
        raise NotPSDError(
            f"element {index} is not positive semidefinite: smallest eigenvalue {low:.3e}",
            index=index,
            deviation=low,
        )
    high = float(spec.eigenvalues[0])
    if high > 1.0 + PSD_CLAMP:
        raise EigenvalueBoundError(
            f"element {index} has eigenvalue {high:.12g} > 1", index=index, deviation=high - 1.0
        )
    return m, clamp_spectrum(spec)


def projective_defect(elements: Sequence[np.ndarray]) -> tuple[float, int, int]:
    """Largest ``|P_i P_k - delta_ik P_i|`` entry over all pairs, with its indices."""
    worst, at = 0.0, (0, 0)
    for i, p in enumerate(elements):
        for k, q in enumerate(elements):
            target = p if i == k else 0.0
            dev = max_abs(p @ q - target)
            if dev > worst:
                worst, at = dev, (i, k)
    return worst, at[0], at[1]


def is_projective(m: Measurement, tol: float = ORTHOGONALITY_TOL) -> bool:
    return projective_defect(m.elements)[0] <= tol


def validate_measurement(elements, kind=MeasurementKind.POVM, labels=None) -> Measurement:
    """Check a list of operators is a POVM (or PVM) and wrap it.

    Raises
    ------
    NotHermitianError, NotPSDError, EigenvalueBoundError
        An individual element is malformed; ``index`` names it.
    CompletenessError
        The elements do not sum to the identity.
    OrthogonalityError
        ``kind`` is PVM and some pair violates ``P_i P_k = delta_ik P_i``.
    """
    kind = MeasurementKind(kind)
    if len(elements) == 0:
        raise ValidationError("a measurement needs at least one element")
    mats, spectra = [], []
    for i, e in enumerate(elements):
        m, spec = _element_spectrum(e, i)
        if mats and m.shape != mats[0].shape:
            raise DimensionError(
                f"element {i} has shape {m.shape}, expected {mats[0].shape}", index=i
            )
        mats.append(m)
        spectra.append(spec)
    d = mats[0].shape[0]
    dev = max_abs(sum(mats) - np.eye(d))
    if dev > COMPLETENESS_TOL:
        raise CompletenessError(
            f"elements do not sum to the identity: max |sum M_i - I| = {dev:.3e}", deviation=dev
        )
    if kind is MeasurementKind.PVM:
        dev, i, k = projective_defect(mats)
        if dev > ORTHOGONALITY_TOL:
            raise OrthogonalityError(
                f"elements {i},{k} violate P_i P_k = delta_ik P_i by {dev:.3e}",
                index=(i, k),
                deviation=dev,
            )
    if labels is None:
        labels = tuple(str(i + 1) for i in range(len(mats)))
    else:
        labels = tuple(str(x) for x in labels)
        if len(labels) != len(mats):
            raise ValidationError(f"{len(labels)} labels for {len(mats)} elements")
    return Measurement(tuple(mats), kind, labels, tuple(spectra))


def pure_state(amplitudes) -> PureState:
    psi = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if not np.all(np.isfinite(psi)):
        raise ValidationError("state has non-finite amplitudes")
    dev = abs(np.linalg.norm(psi) - 1.0)
    if dev > NORM_TOL:
        raise NormalizationError(f"state is not normalized: | ||psi|| - 1 | = {dev:.3e}", deviation=dev)
    return PureState(psi)


def as_pure(psi) -> PureState:
    return psi if isinstance(psi, PureState) else pure_state(psi)


def density_matrix(rho) -> DensityMatrix:
    m = check_hermitian(rho)
    spec = hermitian_eig(m)
    low = float(spec.eigenvalues[-1])
    if low < -PSD_CLAMP:
        raise NotPSDError(f"density matrix has eigenvalue {low:.3e}", deviation=low)
    dev = abs(np.trace(m).real - 1.0)
    if dev > TRACE_TOL:
        raise NormalizationError(f"density matrix trace differs from 1 by {dev:.3e}", deviation=dev)
    vals = spec.eigenvalues.copy()
    vals[vals <= SUPPORT_CUTOFF] = 0.0
    return DensityMatrix(m, SpectralDecomposition(vals, spec.eigenvectors))


def pure_to_density(psi) -> DensityMatrix:
    """Rank-one projector onto ``psi``; the spectrum is assembled directly."""
    psi = as_pure(psi).amplitudes
    vals = np.zeros(psi.shape[0])
    vals[0] = 1.0
    basis = complete_to_unitary(psi[:, None])
    return DensityMatrix(np.outer(psi, psi.conj()), SpectralDecomposition(vals, basis))


def as_density(state) -> DensityMatrix:
    if isinstance(state, DensityMatrix):
        return state
    if isinstance(state, PureState):
        return pure_to_density(state)
    arr = np.asarray(state)
    return pure_to_density(arr) if arr.ndim == 1 else density_matrix(arr)


def clamp_distribution(p) -> np.ndarray:
    """Zero tiny negative round-off and renormalize; larger defects raise."""
    p = np.asarray(p, dtype=float).copy()
    if np.any(p < -PROB_CLAMP):
        i = int(np.argmin(p))
        raise ValidationError(f"probability {i} is negative: {p[i]:.3e}", index=i, deviation=float(p[i]))
    p[p < 0] = 0.0
    drift = abs(p.sum() - 1.0)
    if drift > PROB_DRIFT:
        raise ValidationError(f"probabilities sum to {p.sum():.12g}", deviation=drift)
    return p / p.sum()


def outcome_distribution(m: Measurement, state) -> np.ndarray:
    """Probabilities ``tr(M_i rho)``; pure states give ``<psi, M_i psi>``."""
    if isinstance(state, DensityMatrix) or (not isinstance(state, PureState) and np.ndim(state) == 2):
        rho = as_density(state).matrix
        if rho.shape[0] != m.dim:
            raise DimensionError(f"state has dimension {rho.shape[0]}, measurement {m.dim}")
        raw = [np.einsum("ij,ji->", e, rho).real for e in m.elements]
    else:
        psi = as_pure(state).amplitudes
        if psi.shape[0] != m.dim:
            raise DimensionError(f"state has dimension {psi.shape[0]}, measurement {m.dim}")
        raw = [np.vdot(psi, e @ psi).real for e in m.elements]
    return clamp_distribution(raw)


def rank_one_decomposition(m: Measurement) -> list[RankOneElement] | NotRankOne:
    """Write each element as ``mu * |m><m|`` or report the first that is not rank one."""
    out = []
    for i, spec in enumerate(m.spectra):
        second = float(spec.eigenvalues[1]) if len(spec) > 1 else 0.0
        if second > RANK_ONE_TOL:
            return NotRankOne(i, second)
        out.append(RankOneElement(float(spec.eigenvalues[0]), spec.eigenvectors[:, 0].copy()))
    return out
