"""Independent reference implementations used to derive expected values.

Everything here leans on LAPACK through ``numpy.linalg`` and on direct
formula evaluation, never on the package's own eigensolver.
"""

import math

import numpy as np

R2 = math.sqrt(2.0)
E0 = np.array([1.0, 0.0], dtype=complex)
E1 = np.array([0.0, 1.0], dtype=complex)


def proj(v):
    v = np.asarray(v, dtype=complex)
    return np.outer(v, v.conj())


def disc_m():
    d = E0 - E1
    m1 = 2 ** -0.5 / (R2 + 1) * proj(d)
    m2 = R2 / (R2 + 1) * proj(E1)
    return [m1, m2, np.eye(2) - m1 - m2]


def disc_n():
    c, s = math.cos(math.pi / 8), math.sin(math.pi / 8)
    return [proj(c * E0 - s * E1), proj(s * E0 + c * E1)]


def disc_phi3():
    return 2 ** -0.75 * (math.sqrt(R2 + 1) * E0 + math.sqrt(R2 - 1) * E1)


def sqrtm_psd(a):
    w, v = np.linalg.eigh(a)
    return (v * np.sqrt(np.clip(w, 0, None))) @ v.conj().T


def opnorm(a):
    return float(np.linalg.svd(a, compute_uv=False)[0])


def probs(elements, rho):
    rho = np.asarray(rho)
    if rho.ndim == 1:
        rho = proj(rho)
    return np.array([np.trace(e @ rho).real for e in elements])


def renyi(p, alpha):
    p = np.asarray(p, dtype=float)
    p = p[p > 0]
    if alpha == 1:
        return float(-np.sum(p * np.log(p)))
    if math.isinf(alpha):
        return float(-np.log(p.max()))
    return float(np.log(np.sum(p ** alpha)) / (1 - alpha))


def f_pure(ms, ns, psi):
    best = 0.0
    for a in ms:
        ra = sqrtm_psd(a)
        na = np.linalg.norm(ra @ psi)
        for b in ns:
            rb = sqrtm_psd(b)
            nb = np.linalg.norm(rb @ psi)
            if na > 1e-9 and nb > 1e-9:
                best = max(best, abs(np.vdot(a @ psi, b @ psi)) / (na * nb))
    return best


def f_mixed(ms, ns, rho):
    w, v = np.linalg.eigh(rho)
    return max(f_pure(ms, ns, v[:, k]) for k in range(len(w)) if w[k] > 1e-12)


def f_bar(ms, ns):
    return max(opnorm(sqrtm_psd(a) @ sqrtm_psd(b)) for a in ms for b in ns)


def rand_hermitian(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (g + g.conj().T) / 2


def rand_povm(rng, d, n):
    parts = []
    for _ in range(n):
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        parts.append(g @ g.conj().T)
    s = sum(parts)
    w, v = np.linalg.eigh(s)
    inv = (v / np.sqrt(w)) @ v.conj().T
    return [(inv @ a @ inv + (inv @ a @ inv).conj().T) / 2 for a in parts]


def rand_state(rng, d):
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return z / np.linalg.norm(z)


def rand_density(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def rand_basis_pvm(rng, d):
    q, _ = np.linalg.qr(rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
    return [proj(q[:, k]) for k in range(d)]
