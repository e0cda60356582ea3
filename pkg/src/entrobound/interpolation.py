"""
Numerical checks of the Riesz interpolation inequality.

For a contraction ``T`` (``||T x||_2 <= ||x||_2``) with largest entry
modulus ``eta``, and ``1 < b < 2`` with ``a = b / (b - 1)``,

    S_a(T x) <= eta ** ((2 - b) / b) * S_b(x).

The PVM-pair specialisation builds ``T`` from the overlaps of the
normalised projections of a state, so that ``y = T x`` maps the
amplitude moduli of one measurement onto the other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .entropy import OrderError, conjugate_order, power_sum, quasi_norm
from .linalg import DimensionError, ValidationError, as_matrix, operator_norm
from .measurement import Measurement, MeasurementKind, as_pure, is_projective

CONTRACTION_TOL = 1e-9
SLACK_TOL = 1e-9
SUPPORT_PROB = 1e-18


class NotContractionError(ValidationError):
    pass


@dataclass(frozen=True)
class RieszResult:
    lhs: float
    rhs: float

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def passed(self) -> bool:
        return self.lhs <= self.rhs + SLACK_TOL


def apply_transform(t, x) -> np.ndarray:
    t = as_matrix(t)
    x = np.asarray(x, dtype=complex).reshape(-1)
    if t.shape[1] != x.shape[0]:
        raise DimensionError(f"matrix has {t.shape[1]} columns but vector has {x.shape[0]} entries")
    return t @ x


def eta(t) -> float:
    return float(np.max(np.abs(as_matrix(t))))


def certify_contraction(t) -> float:
    """Return ``||T||`` or raise if it exceeds one (beyond tolerance)."""
    nrm = operator_norm(t)
    if nrm > 1.0 + CONTRACTION_TOL:
        raise NotContractionError(f"operator norm {nrm:.12g} exceeds 1", deviation=nrm - 1.0)
    return nrm


def riesz_check(t, x, b: float) -> RieszResult:
    if not 1.0 < b < 2.0:
        raise OrderError(f"b must lie in (1, 2), got {b}")
    certify_contraction(t)
    a = b / (b - 1.0)
    y = apply_transform(t, x)
    return RieszResult(power_sum(y, a), eta(t) ** ((2.0 - b) / b) * power_sum(x, b))


@dataclass(frozen=True)
class OverlapData:
    """Overlap matrix ``t_ij = <u_i, v_j>`` with ``y_i = ||P_i psi||``, ``x_j = ||Q_j psi||``."""

    matrix: np.ndarray
    y: np.ndarray
    x: np.ndarray
    rows: tuple[int, ...]
    cols: tuple[int, ...]


def _require_pvm(m: Measurement, name: str):
    if m.kind is not MeasurementKind.PVM and not is_projective(m):
        raise ValidationError(f"{name} must be projective")


def overlap_matrix(p: Measurement, q: Measurement, psi) -> OverlapData:
    """Overlaps of the normalised projections ``P_i psi`` and ``Q_j psi``.

    Outcomes with probability at most 1e-18 are left out.
    """
    _require_pvm(p, "P")
    _require_pvm(q, "Q")
    psi = as_pure(psi).amplitudes

    def unit_projections(m):
        vecs, norms, keep = [], [], []
        for k, e in enumerate(m.elements):
            v = e @ psi
            prob = np.vdot(v, v).real
            if prob > SUPPORT_PROB:
                nrm = np.sqrt(prob)
                vecs.append(v / nrm)
                norms.append(nrm)
                keep.append(k)
        return np.column_stack(vecs), np.array(norms), tuple(keep)

    u, y, rows = unit_projections(p)
    v, x, cols = unit_projections(q)
    return OverlapData(u.conj().T @ v, y, x, rows, cols)


def squared_riesz_check(p: Measurement, q: Measurement, psi, beta: float) -> RieszResult:
    """``S_alpha(p) <= eta^(2(1-beta)/beta) S_beta(q)`` for PVM probabilities, ``1/2 < beta < 1``."""
    if not 0.5 < beta < 1.0:
        raise OrderError(f"beta must lie in (1/2, 1), got {beta}")
    alpha = conjugate_order(beta)
    data = overlap_matrix(p, q, psi)
    probs_p, probs_q = data.y ** 2, data.x ** 2
    lhs = quasi_norm(probs_p, alpha)
    rhs = eta(data.matrix) ** (2.0 * (1.0 - beta) / beta) * quasi_norm(probs_q, beta)
    return RieszResult(lhs, rhs)
