"""Two-boson sector of the Creutz-Hubbard ladder.

Fock basis management, the two-particle Hamiltonian, conversion between the
Fock and first-quantized amplitude sets, and the occupation / doublonness
observables.
"""

from __future__ import annotations

import math

import numpy as np

from .dynamics import Trajectory, propagate
from .errors import SymmetryViolation
from .lattice import LatticeParams, single_particle_hamiltonian

_SQRT2 = math.sqrt(2.0)


class TwoParticleBasis:
    """Ordered two-boson Fock basis over site pairs (a <= b).

    Sites are ordered 1A < 1B < ... < LA < LB (the linearized index), and the
    pair list runs lexicographically, so the basis has size N(N+1)/2 with
    N = 2L.
    """

    def __init__(self, L: int):
        if L < 2:
            raise ValueError(f"L must be >= 2, got {L}")
        self.L = int(L)
        self.n_sites = 2 * self.L
        self.pairs = [
            (a, b) for a in range(self.n_sites) for b in range(a, self.n_sites)
        ]
        self._index = {pair: i for i, pair in enumerate(self.pairs)}

    @property
    def size(self) -> int:
        return len(self.pairs)

    def index(self, a: int, b: int) -> int:
        """Basis position of the unordered pair {a, b}."""
        return self._index[(a, b) if a <= b else (b, a)]

    @property
    def doublon_indices(self) -> np.ndarray:
        """Positions of the doubly-occupied states |2_a>, in site order."""
        return np.array([self.index(a, a) for a in range(self.n_sites)])


def build_two_particle_hamiltonian(
    p: LatticeParams, basis: TwoParticleBasis | None = None
) -> np.ndarray:
    """Second-quantized ladder Hamiltonian restricted to the two-boson sector.

    Hopping elements between a doublon |2_a> and an adjacent pair carry the
    bosonic sqrt(2) enhancement; every doubly-occupied state costs U on the
    diagonal (U/2 * n(n-1) with n = 2).
    """
    basis = basis or TwoParticleBasis(p.L)
    H1 = single_particle_hamiltonian(p)
    n = basis.n_sites
    M = basis.size
    H = np.zeros((M, M), dtype=complex)
    hops = [(q, qp, H1[qp, q]) for q in range(n) for qp in range(n) if H1[qp, q] != 0.0]
    for col, (a, b) in enumerate(basis.pairs):
        if a == b:
            H[col, col] += p.U
        # one hop term per particle; a doublon is a single source with sqrt2 weight
        sources = ((a, b),) if a == b else ((a, b), (b, a))
        for src, spectator in sources:
            ann = _SQRT2 if src == spectator else 1.0
            for q, qp, t in hops:
                if q != src:
                    continue
                cre = _SQRT2 if qp == spectator else 1.0
                row = basis.index(qp, spectator)
                H[row, col] += t * ann * cre
    return H


def fock_to_first_quant(fock: np.ndarray, basis: TwoParticleBasis) -> np.ndarray:
    """First-quantized amplitudes lambda[a, b] of a Fock vector.

    eta = sqrt(2)*lambda on distinct pairs and eta = lambda on the diagonal,
    so both representations are unit norm together.
    """
    fock = np.asarray(fock, dtype=complex).ravel()
    if fock.shape[0] != basis.size:
        raise ValueError(f"expected {basis.size} Fock amplitudes, got {fock.shape[0]}")
    lam = np.zeros((basis.n_sites, basis.n_sites), dtype=complex)
    for i, (a, b) in enumerate(basis.pairs):
        if a == b:
            lam[a, a] = fock[i]
        else:
            lam[a, b] = fock[i] / _SQRT2
            lam[b, a] = fock[i] / _SQRT2
    return lam


def first_quant_to_fock(lam: np.ndarray, basis: TwoParticleBasis) -> np.ndarray:
    """Inverse of fock_to_first_quant; rejects non-exchange-symmetric input."""
    lam = np.asarray(lam, dtype=complex)
    if lam.shape != (basis.n_sites, basis.n_sites):
        raise ValueError(f"expected lambda of shape {(basis.n_sites,) * 2}, got {lam.shape}")
    if np.abs(lam - lam.T).max() > 1e-10:
        raise SymmetryViolation("lambda amplitudes are not exchange symmetric")
    fock = np.zeros(basis.size, dtype=complex)
    for i, (a, b) in enumerate(basis.pairs):
        fock[i] = lam[a, a] if a == b else _SQRT2 * lam[a, b]
    return fock


def occupation_expectation(fock: np.ndarray, basis: TwoParticleBasis) -> np.ndarray:
    """Expected particle number per site; sums to 2."""
    lam = fock_to_first_quant(fock, basis)
    return 2.0 * (np.abs(lam) ** 2).sum(axis=1)


def doublonness(fock: np.ndarray, basis: TwoParticleBasis) -> np.ndarray:
    """Conditional probability that an occupied site holds both particles.

    Defined as |lambda_aa|^2 / sum_b |lambda_ab|^2, and 0 on sites the state
    never occupies (denominator below 1e-14).
    """
    lam = fock_to_first_quant(fock, basis)
    num = np.abs(np.diag(lam)) ** 2
    den = (np.abs(lam) ** 2).sum(axis=1)
    out = np.zeros(basis.n_sites)
    occupied = den >= 1e-14
    out[occupied] = num[occupied] / den[occupied]
    return out


def product_state(basis: TwoParticleBasis, chi: np.ndarray, xi: np.ndarray) -> np.ndarray:
    """Symmetrized two-boson Fock state from two single-particle states."""
    chi = np.asarray(chi, dtype=complex).ravel()
    xi = np.asarray(xi, dtype=complex).ravel()
    if chi.shape[0] != basis.n_sites or xi.shape[0] != basis.n_sites:
        raise ValueError("single-particle factors must have length 2L")
    lam = 0.5 * (np.outer(chi, xi) + np.outer(xi, chi))
    lam /= np.linalg.norm(lam)
    return first_quant_to_fock(lam, basis)


def two_particle_evolve(
    p: LatticeParams,
    psi0: np.ndarray,
    times,
    basis: TwoParticleBasis | None = None,
    initial_label: str = "",
) -> Trajectory:
    """Exact two-boson evolution with occupation and doublonness per sample."""
    basis = basis or TwoParticleBasis(p.L)
    H = build_two_particle_hamiltonian(p, basis)
    times, states = propagate(H, psi0, times)
    occ = np.empty((len(times), basis.n_sites))
    dbl = np.empty((len(times), basis.n_sites))
    for i, psi in enumerate(states):
        occ[i] = occupation_expectation(psi, basis)
        dbl[i] = doublonness(psi, basis)
    return Trajectory(
        times=times,
        states=states,
        occupations=occ,
        doublonness=dbl,
        params=p,
        initial_label=initial_label,
    )
