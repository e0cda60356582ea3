"""Seeded random states, measurements and contractions.

Every sampler takes a :class:`numpy.random.Generator` and returns an object
that has already passed its validator.
"""

from __future__ import annotations

import numpy as np

from ..linalg import function_of, hermitian_eig, hermitian_part
from ..measurement import (
    DensityMatrix,
    Measurement,
    MeasurementKind,
    PureState,
    density_matrix,
    pure_state,
    validate_measurement,
)

RNG_ALGORITHM = "philox"


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """Counter-based generator for ``(seed, stream...)``; streams are independent."""
    ss = np.random.SeedSequence(entropy=int(seed) & (2**64 - 1), spawn_key=tuple(stream))
    return np.random.Generator(np.random.Philox(ss))


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def haar_state(rng: np.random.Generator, d: int) -> PureState:
    z = complex_gaussian(rng, d)
    return pure_state(z / np.linalg.norm(z))


def random_density(rng: np.random.Generator, d: int, rank: int | None = None) -> DensityMatrix:
    """``G G^dagger / tr`` with ``G`` a d x rank complex Gaussian matrix."""
    g = complex_gaussian(rng, (d, rank or d))
    rho = g @ g.conj().T
    return density_matrix(hermitian_part(rho / np.trace(rho).real))


def _normalise(parts: list[np.ndarray], kind=MeasurementKind.POVM) -> Measurement:
    s = hermitian_part(sum(parts))
    inv_root = function_of(hermitian_eig(s), lambda w: 1.0 / np.sqrt(w))
    elements = [hermitian_part(inv_root @ a @ inv_root) for a in parts]
    return validate_measurement(elements, kind)


def random_povm(rng: np.random.Generator, d: int, n: int) -> Measurement:
    """``A_i = G_i G_i^dagger`` normalised by ``S^{-1/2} A_i S^{-1/2}``."""
    parts = []
    for _ in range(n):
        g = complex_gaussian(rng, (d, d))
        parts.append(g @ g.conj().T)
    return _normalise(parts)


def random_rank_one_povm(rng: np.random.Generator, d: int, n: int) -> Measurement:
    if n < d:
        raise ValueError(f"a rank-one POVM on C^{d} needs at least {d} outcomes, got {n}")
    parts = []
    for _ in range(n):
        g = complex_gaussian(rng, d)
        parts.append(np.outer(g, g.conj()))
    return _normalise(parts)


def haar_unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    q, r = np.linalg.qr(complex_gaussian(rng, (d, d)))
    ph = np.diag(r)
    return q * (ph / np.abs(ph))


def random_pvm(rng: np.random.Generator, d: int, n: int) -> Measurement:
    """Projectors onto ``n`` consecutive groups of columns of a Haar unitary."""
    if not 1 <= n <= d:
        raise ValueError(f"a PVM on C^{d} has between 1 and {d} outcomes, got {n}")
    u = haar_unitary(rng, d)
    cuts = np.sort(rng.choice(np.arange(1, d), size=n - 1, replace=False)) if n > 1 else []
    bounds = [0, *map(int, cuts), d]
    elements = []
    for lo, hi in zip(bounds, bounds[1:]):
        cols = u[:, lo:hi]
        elements.append(hermitian_part(cols @ cols.conj().T))
    return validate_measurement(elements, MeasurementKind.PVM)


def random_contraction(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """Gaussian matrix scaled to operator norm in ``(0, 1]``."""
    t = complex_gaussian(rng, (rows, cols))
    s = np.linalg.svd(t, compute_uv=False)[0]
    return t / s * rng.uniform(0.2, 1.0)


MEASUREMENT_ENSEMBLES = {
    "general-POVM": random_povm,
    "rank-one-POVM": random_rank_one_povm,
    "PVM": random_pvm,
}
STATE_ENSEMBLES = {
    "pure-Haar": haar_state,
    "mixed": random_density,
}
