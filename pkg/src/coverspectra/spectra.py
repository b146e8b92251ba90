"""Adjacency spectra and exact closed-walk counts.

Dense symmetric eigensolves carry the full spectrum up to a size cap; above
the cap only the top eigenvalue and its positive eigenvector are computed
iteratively. Walk counts are done in arbitrary-precision integers so that
combinatorial identities can be asserted exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .multigraph import MultiGraph, require_connected

DENSE_EIGEN_CAP = 4096
PERRON_RESIDUAL_FACTOR = 1e-10


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in nonincreasing order plus the unit Perron vector.

    full is False when only the top of the spectrum was computed (input was
    larger than the dense cap).
    """

    eigenvalues: np.ndarray
    perron: np.ndarray
    full: bool

    @property
    def lambda1(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def n(self) -> int:
        return len(self.perron)


def eigen_spectrum(g: MultiGraph, dense_cap: int = DENSE_EIGEN_CAP) -> Spectrum:
    """Spectrum of the adjacency matrix of a connected multigraph.

    The Perron vector is normalized to unit 2-norm, strictly positive, with
    residual ||A y - lambda1 y|| at most 1e-10 * max degree.
    """
    require_connected(g, "eigen_spectrum")
    a = g.adjacency_matrix().astype(np.float64)
    if g.n <= dense_cap:
        vals, vecs = np.linalg.eigh(a)
        order = np.argsort(vals)[::-1]
        vals = vals[order]
        perron = vecs[:, order[0]].copy()
        full = True
    else:
        from scipy.sparse import csr_matrix
        from scipy.sparse.linalg import eigsh

        sp = csr_matrix(a)
        v0 = np.ones(g.n) / np.sqrt(g.n)
        top, vec = eigsh(sp, k=1, which="LA", v0=v0)
        vals = np.array([top[0]])
        perron = vec[:, 0].copy()
        full = False

    if perron.sum() < 0:
        perron = -perron
    perron /= np.linalg.norm(perron)
    if g.m > 0 and perron.min() <= 0:
        raise ArithmeticError("Perron vector not strictly positive; eigensolve failed")
    lam = float(vals[0])
    residual = float(np.linalg.norm(a @ perron - lam * perron))
    if g.m > 0 and residual > PERRON_RESIDUAL_FACTOR * g.max_degree:
        raise ArithmeticError(f"Perron pair residual {residual:.3e} above tolerance")
    return Spectrum(vals, perron, full)


def wr_fraction(spectrum: Spectrum, rho: float, eta: float = 1e-9) -> float:
    """Fraction of eigenvalues (all of them, top included) with |lam| <= rho + eta."""
    if not spectrum.full:
        raise ValueError("wr_fraction needs the full spectrum; input was truncated")
    if eta < 0:
        raise ValueError("eta must be nonnegative")
    inside = int(np.count_nonzero(np.abs(spectrum.eigenvalues) <= rho + eta))
    return inside / len(spectrum.eigenvalues)


def closed_walk_count(g: MultiGraph, v: int, k: int) -> int:
    """Exact number of length-k closed walks at v, as a Python integer.

    Each walk step picks a half-edge at the current vertex, so a loop offers
    two continuations per visit.
    """
    require_connected(g, "closed_walk_count")
    if not (0 <= v < g.n):
        raise ValueError(f"vertex {v} out of range")
    if k < 0:
        raise ValueError("walk length must be nonnegative")
    nbr = g.neighbor_multiplicities
    x = [0] * g.n
    x[v] = 1
    for _ in range(k):
        y = [0] * g.n
        for u in range(g.n):
            xu = x[u]
            if xu:
                for w, mult in nbr[u]:
                    y[w] += xu * mult
        x = y
    return x[v]


def closed_walk_profile(g: MultiGraph, v: int, k_max: int) -> list[int]:
    """[closed_walk_count(g, v, k) for k in 0..k_max] in one sweep."""
    require_connected(g, "closed_walk_profile")
    nbr = g.neighbor_multiplicities
    x = [0] * g.n
    x[v] = 1
    counts = [x[v]]
    for _ in range(k_max):
        y = [0] * g.n
        for u in range(g.n):
            xu = x[u]
            if xu:
                for w, mult in nbr[u]:
                    y[w] += xu * mult
        x = y
        counts.append(x[v])
    return counts
