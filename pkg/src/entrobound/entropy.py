"""Renyi entropies of outcome distributions, in nats."""

from __future__ import annotations

import math

import numpy as np

SHANNON = 1.0
MIN = math.inf
SHANNON_BAND = 1e-9


class OrderError(ValueError):
    pass


def parse_order(value) -> float:
    """Accept a positive number or the markers ``"shannon"`` / ``"min"``."""
    if isinstance(value, str):
        key = value.strip().lower()
        if key in ("shannon", "1"):
            return SHANNON
        if key in ("min", "inf", "infinity"):
            return MIN
        try:
            value = float(key)
        except ValueError:
            raise OrderError(f"unrecognised entropy order {value!r}") from None
    alpha = float(value)
    if not alpha > 0:
        raise OrderError(f"entropy order must be positive, got {alpha}")
    return alpha


def format_order(alpha: float):
    """Inverse of :func:`parse_order` for serialisation."""
    if alpha == MIN:
        return "min"
    if alpha == SHANNON:
        return "shannon"
    return alpha


def order_label(alpha: float) -> str:
    """Short human-readable form of an order."""
    out = format_order(alpha)
    return out if isinstance(out, str) else f"{out:.6g}"


def _probs(p) -> np.ndarray:
    return np.asarray(p, dtype=float).reshape(-1)


def shannon_entropy(p) -> float:
    p = _probs(p)
    p = p[p > 0]
    return float(-np.sum(p * np.log(p)))


def min_entropy(p) -> float:
    return float(-np.log(np.max(_probs(p))))


def renyi_entropy(p, alpha) -> float:
    """Renyi entropy ``ln(sum p_i^alpha) / (1 - alpha)``.

    Orders within 1e-9 of one use the Shannon formula and ``inf`` gives the
    min-entropy. Zero probabilities are dropped before exponentiation.
    """
    alpha = parse_order(alpha)
    if alpha == MIN:
        return min_entropy(p)
    if abs(alpha - 1.0) < SHANNON_BAND:
        return shannon_entropy(p)
    p = _probs(p)
    p = p[p > 0]
    # factor out p_max so large orders do not underflow
    top = p.max()
    s = np.sum((p / top) ** alpha)
    value = (alpha * math.log(top) + math.log(s)) / (1.0 - alpha)
    return max(float(value), 0.0)


def power_sum(x, b: float) -> float:
    """``(sum |x_j|^b)^(1/b)`` for ``b >= 1``."""
    if not b >= 1:
        raise OrderError(f"power_sum needs b >= 1, got {b}")
    return quasi_norm(x, b)


def quasi_norm(x, order: float) -> float:
    """Same formula as :func:`power_sum` but for any positive order (zeros skipped)."""
    if not order > 0:
        raise OrderError(f"order must be positive, got {order}")
    a = np.abs(np.asarray(x).reshape(-1))
    a = a[a > 0]
    if a.size == 0:
        return 0.0
    top = a.max()
    return float(top * np.sum((a / top) ** order) ** (1.0 / order))


def conjugate_order(alpha) -> float:
    """Partner order ``beta`` with ``1/alpha + 1/beta = 2``.

    The pair bounds need both orders strictly above 1/2, so ``alpha = inf``
    (which would pair with exactly 1/2) is refused along with ``alpha <= 1/2``.
    """
    alpha = parse_order(alpha)
    if alpha == MIN:
        raise OrderError("alpha = inf has conjugate 1/2, which is outside the admissible range")
    if not alpha > 0.5:
        raise OrderError(f"conjugate order needs alpha > 1/2, got {alpha}")
    if abs(alpha - 1.0) < SHANNON_BAND:
        return SHANNON
    return alpha / (2.0 * alpha - 1.0)


def exponent_multiplier(alpha: float, beta: float) -> float:
    """``(1 - alpha) beta / (alpha (1 - beta))``; equals -1 for conjugate orders."""
    near_a, near_b = abs(alpha - 1.0) < SHANNON_BAND, abs(beta - 1.0) < SHANNON_BAND
    if near_a and near_b:
        # removable point of the conjugate curve
        return -1.0
    if near_b:
        raise OrderError(f"multiplier is singular at beta = 1 with alpha = {alpha}")
    return (1.0 - alpha) * beta / (alpha * (1.0 - beta))
