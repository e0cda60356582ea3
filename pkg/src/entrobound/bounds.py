"""
Entropic uncertainty bounds for POVMs and their numerical certificates.

Each ``check_*`` function evaluates both sides of one family of
inequalities on a concrete (measurement, state, order) instance and
returns a :class:`BoundReport` recording the slack ``lhs - rhs`` of every
inequality. Nothing here proves anything; a report is a certificate only
for the instance it was computed on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .entropy import conjugate_order, parse_order, renyi_entropy
from .linalg import DimensionError, ValidationError, check_hermitian, operator_norm
from .measurement import (
    Measurement,
    NotRankOne,
    as_density,
    as_pure,
    outcome_distribution,
    rank_one_decomposition,
)

SUPPORT_TOL = 1e-9
SLACK_TOL = 1e-9
DEGENERACY_GAP = 1e-8


@dataclass(frozen=True)
class Inequality:
    """One evaluated inequality ``lhs >= rhs``."""

    name: str
    lhs: float
    rhs: float

    @property
    def slack(self) -> float:
        return self.lhs - self.rhs

    @property
    def passed(self) -> bool:
        return self.slack >= -SLACK_TOL


@dataclass(frozen=True)
class BoundReport:
    check: str
    orders: tuple[float, ...]
    entropies: dict[str, float]
    values: dict[str, float]
    inequalities: tuple[Inequality, ...]
    notes: tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return all(q.passed for q in self.inequalities)

    @property
    def min_slack(self) -> float:
        return min(q.slack for q in self.inequalities)

    def __getitem__(self, name: str) -> Inequality:
        for q in self.inequalities:
            if q.name == name:
                return q
        raise KeyError(name)


def _same_dim(*objs):
    dims = {o.dim for o in objs}
    if len(dims) != 1:
        raise DimensionError(f"dimension mismatch: {sorted(dims)}")


def _f_terms(m: Measurement, n: Measurement, psi: np.ndarray):
    """Candidate ratios of the pure-state overlap functional with their index pairs."""
    mpsi = [e @ psi for e in m.elements]
    npsi = [e @ psi for e in n.elements]
    # ||M^{1/2} psi||^2 = <psi, M psi>
    mnorm = [math.sqrt(max(np.vdot(psi, v).real, 0.0)) for v in mpsi]
    nnorm = [math.sqrt(max(np.vdot(psi, v).real, 0.0)) for v in npsi]
    for i, (a, na) in enumerate(zip(mpsi, mnorm)):
        if na <= SUPPORT_TOL:
            continue
        for j, (b, nb) in enumerate(zip(npsi, nnorm)):
            if nb <= SUPPORT_TOL:
                continue
            yield i, j, abs(np.vdot(a, b)) / (na * nb)


def f_pure(m: Measurement, n: Measurement, psi) -> float:
    """Largest normalised cross-overlap ``|<M_i psi, N_j psi>| / (||M_i^1/2 psi|| ||N_j^1/2 psi||)``.

    Only index pairs where both outcomes have non-negligible weight on
    ``psi`` take part.
    """
    psi = as_pure(psi)
    _same_dim(m, n, psi)
    terms = [t for _, _, t in _f_terms(m, n, psi.amplitudes)]
    if not terms:
        raise ValidationError("no outcome pair has support on the state")
    return float(max(terms))


def f_mixed(m: Measurement, n: Measurement, rho) -> float:
    """Maximum of :func:`f_pure` over the support eigenvectors of ``rho``."""
    rho = as_density(rho)
    _same_dim(m, n, rho)
    return max(f_pure(m, n, vec) for _, vec in rho.support())


def f_bar(m: Measurement, n: Measurement) -> float:
    _same_dim(m, n)
    return max(operator_norm(a @ b) for a in m.roots for b in n.roots)


def phi(m: Measurement, rho) -> float:
    """Largest outcome probability."""
    return float(np.max(outcome_distribution(m, rho)))


def phi_bar(m: Measurement) -> float:
    return max(operator_norm(e) for e in m.elements)


def _neg_log(x: float, factor: float = 1.0) -> float:
    return -factor * math.log(x)


def _degenerate(rho) -> bool:
    vals = [v for v, _ in rho.support()]
    return any(abs(a - b) < DEGENERACY_GAP for a, b in zip(vals, vals[1:]))


def check_pair_bound(m: Measurement, n: Measurement, rho, alpha) -> BoundReport:
    """Conjugate-order pair bound with state-dependent and state-independent right sides.

    Records ``H_a(M) + H_b(N) >= -2 ln f(M,N|rho)``, the same sum against
    ``-2 ln fbar(M,N)``, and the ordering ``f <= fbar``.
    """
    alpha = parse_order(alpha)
    beta = conjugate_order(alpha)
    rho = as_density(rho)
    _same_dim(m, n, rho)
    ha = renyi_entropy(outcome_distribution(m, rho), alpha)
    hb = renyi_entropy(outcome_distribution(n, rho), beta)
    f = f_mixed(m, n, rho)
    fb = f_bar(m, n)
    lhs = ha + hb
    notes = ("degenerate_spectrum",) if _degenerate(rho) else ()
    return BoundReport(
        check="pair",
        orders=(alpha, beta),
        entropies={"H_alpha(M)": ha, "H_beta(N)": hb},
        values={"f": f, "f_bar": fb},
        inequalities=(
            Inequality("Thm5", lhs, _neg_log(f, 2.0)),
            Inequality("Cor7", lhs, _neg_log(fb, 2.0)),
            Inequality("f<=f_bar", fb, f),
        ),
        notes=notes,
    )


def check_single_bound(m: Measurement, rho, alpha) -> BoundReport:
    alpha = parse_order(alpha)
    rho = as_density(rho)
    _same_dim(m, rho)
    p = outcome_distribution(m, rho)
    h = renyi_entropy(p, alpha)
    ph = float(np.max(p))
    pb = phi_bar(m)
    return BoundReport(
        check="single",
        orders=(alpha,),
        entropies={"H_alpha(M)": h},
        values={"phi": ph, "phi_bar": pb},
        inequalities=(
            Inequality("Thm6", h, _neg_log(ph)),
            Inequality("Cor9", h, _neg_log(pb)),
            Inequality("phi<=phi_bar", pb, ph),
        ),
    )


def check_free_order_bound(m: Measurement, n: Measurement, rho, alpha, beta) -> BoundReport:
    """Bound from the product of largest probabilities; orders are unrestricted."""
    alpha, beta = parse_order(alpha), parse_order(beta)
    rho = as_density(rho)
    _same_dim(m, n, rho)
    p, q = outcome_distribution(m, rho), outcome_distribution(n, rho)
    ha, hb = renyi_entropy(p, alpha), renyi_entropy(q, beta)
    pm, pn = float(np.max(p)), float(np.max(q))
    return BoundReport(
        check="free",
        orders=(alpha, beta),
        entropies={"H_alpha(M)": ha, "H_beta(N)": hb},
        values={"phi(M)": pm, "phi(N)": pn},
        inequalities=(Inequality("Cor8", ha + hb, -math.log(pm * pn)),),
    )


def compare_bounds(m: Measurement, n: Measurement, rho, alpha=1.0) -> float:
    """``-2 ln fbar`` minus the free-order bound; positive when the pair bound is stronger.

    ``alpha`` only fixes the admissible conjugate pair; neither side
    depends on it.
    """
    conjugate_order(alpha)
    rho = as_density(rho)
    pair = _neg_log(f_bar(m, n), 2.0)
    free = -math.log(phi(m, rho) * phi(n, rho))
    return pair - free


@dataclass(frozen=True)
class SaturationVerdict:
    applicable: bool
    f: float = math.nan
    f_bar: float = math.nan
    reason: str = ""

    @property
    def gap(self) -> float:
        return abs(self.f - self.f_bar)

    @property
    def saturated(self) -> bool:
        return self.applicable and self.gap <= SLACK_TOL


def check_rank_one_saturation(m: Measurement, n: Measurement, rho) -> SaturationVerdict:
    """For rank-one POVM pairs ``f(M,N|rho)`` should equal ``fbar(M,N)`` for every state."""
    for name, meas in (("M", m), ("N", n)):
        dec = rank_one_decomposition(meas)
        if isinstance(dec, NotRankOne):
            return SaturationVerdict(
                False, reason=f"{name} element {dec.index} is not rank one "
                f"(second eigenvalue {dec.second_eigenvalue:.3e})"
            )
    return SaturationVerdict(True, f_mixed(m, n, rho), f_bar(m, n))


def robertson_bound(a, b, psi) -> tuple[float, float]:
    """``(dA dB, |<psi,[A,B] psi>| / 2)`` for Hermitian ``a``, ``b``."""
    a, b = check_hermitian(a), check_hermitian(b)
    psi = as_pure(psi).amplitudes
    if a.shape != b.shape or a.shape[0] != psi.shape[0]:
        raise DimensionError("operators and state have incompatible dimensions")

    def spread(op):
        v = op @ psi
        mean = np.vdot(psi, v).real
        return math.sqrt(max(np.vdot(v, v).real - mean * mean, 0.0))

    comm = a @ b - b @ a
    return spread(a) * spread(b), 0.5 * abs(np.vdot(psi, comm @ psi))


def term_bounds(m: Measurement, n: Measurement, psi) -> list[tuple[float, float]]:
    """Pairs (candidate ratio, ``||M_i^1/2 N_j^1/2||``) for every admissible ``(i, j)``."""
    psi = as_pure(psi)
    return [
        (t, operator_norm(m.roots[i] @ n.roots[j]))
        for i, j, t in _f_terms(m, n, psi.amplitudes)
    ]

