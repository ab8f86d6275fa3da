"""Independent brute-force references used by the test-suite.

Nothing here calls into the library's operator builders, propagator or
measures; states and matrices are assembled element by element.
"""

import itertools
import math

import numpy as np
import scipy.linalg


def basis(M, N):
    """Row-major list of (i, m, n) triples."""
    return list(itertools.product(range(2), range(M), range(N)))


def ld_hamiltonian(M, N, Omega, g_eta_c, sever=()):
    """Element-wise Lamb-Dicke Hamiltonian.

    ``sever`` lists pairs of basis triples whose coupling is dropped.
    """
    states = basis(M, N)
    index = {s: k for k, s in enumerate(states)}
    h = np.zeros((len(states), len(states)))
    dropped = {frozenset(p) for p in sever}
    for (i, m, n), k in index.items():
        if i == 0:
            # carrier: |g,m,n> <-> |e,m,n>
            h[index[(1, m, n)], k] += Omega
            # s+ b a |g,m,n> = sqrt(m n) |e,m-1,n-1>
            if m > 0 and n > 0:
                j = index[(1, m - 1, n - 1)]
                if frozenset([(0, m, n), (1, m - 1, n - 1)]) not in dropped:
                    h[j, k] += g_eta_c * math.sqrt(m * n)
    return h + h.T


def series_ok(m, k, eta, cutoff=None):
    """<m|O_k|m> by summing the operator series with explicit matrix powers."""
    cutoff = cutoff or m + 1
    a = np.zeros((cutoff, cutoff))
    for j in range(1, cutoff):
        a[j - 1, j] = math.sqrt(j)
    total = np.zeros((cutoff, cutoff), dtype=complex)
    ad_p = np.eye(cutoff)
    a_p = np.eye(cutoff)
    for p in range(cutoff):
        total += (1j * eta) ** (2 * p) * (ad_p @ a_p) / (math.factorial(p) * math.factorial(p + k))
        ad_p = ad_p @ a.T
        a_p = a_p @ a
    return math.exp(-eta**2 / 2) * total[m, m]


def full_hamiltonian(M, N, Omega, g, eta_L, eta_c):
    """Element-wise Hamiltonian with the Lamb-Dicke operators to all orders."""
    states = basis(M, N)
    index = {s: k for k, s in enumerate(states)}
    o0 = [series_ok(m, 0, eta_L, M).real for m in range(M)]
    o1 = [series_ok(m, 1, eta_c, M).real for m in range(M)]
    h = np.zeros((len(states), len(states)))
    for (i, m, n), k in index.items():
        if i == 0:
            h[index[(1, m, n)], k] += Omega * o0[m]
            if m > 0 and n > 0:
                # s+ b O1 a: a first, then O1 at m-1
                h[index[(1, m - 1, n - 1)], k] += g * eta_c * math.sqrt(m * n) * o1[m - 1]
    return h + h.T


def propagate(h, psi0, T_deg, a=1.0):
    return scipy.linalg.expm(-1j * h * math.radians(T_deg) / a) @ psi0


def tensor_state(M, N, entries):
    psi = np.zeros((2, M, N), dtype=complex)
    for (i, m, n), amp in entries.items():
        psi[i, m, n] = amp
    return psi.reshape(-1)


def reduced(psi, shape, keep):
    """Partial trace by explicit summation over the other indices."""
    t = psi.reshape(shape)
    d = shape[keep]
    rho = np.zeros((d, d), dtype=complex)
    others = [range(s) for k, s in enumerate(shape) if k != keep]
    for x in range(d):
        for y in range(d):
            for rest in itertools.product(*others):
                ix, iy = list(rest), list(rest)
                ix.insert(keep, x)
                iy.insert(keep, y)
                rho[x, y] += t[tuple(ix)] * np.conj(t[tuple(iy)])
    return rho


def schmidt_negativity(psi, shape, keep):
    """((sum sqrt(lambda))^2 - 1)/2 from the reduced-state spectrum."""
    lam = np.linalg.eigvalsh(reduced(psi, shape, keep))
    # sqrt would blow eigenvalue round-off (~1e-17) up to ~1e-9
    lam = np.where(lam > 1e-14, lam, 0.0)
    return (np.sum(np.sqrt(lam)) ** 2 - 1) / 2


def pt_brute(psi, shape, which):
    """Partial transpose by explicit index swapping on the density matrix."""
    rho = np.outer(psi, psi.conj())
    states = list(itertools.product(*(range(s) for s in shape)))
    index = {s: k for k, s in enumerate(states)}
    out = np.zeros_like(rho)
    for r in states:
        for c in states:
            rr, cc = list(r), list(c)
            rr[which], cc[which] = c[which], r[which]
            out[index[r], index[c]] = rho[index[tuple(rr)], index[tuple(cc)]]
    return out


def random_state(rng, size):
    v = rng.normal(size=size) + 1j * rng.normal(size=size)
    return v / np.linalg.norm(v)
