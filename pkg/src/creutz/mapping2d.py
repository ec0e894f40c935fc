"""Quasi-2D single-particle lattice equivalent to the two-boson ladder.

One particle hopping on the Cartesian product of two ladders, with an on-site
potential U on the diagonal sites (i,a,i,a), reproduces the two-boson problem;
its exchange-symmetric sector matches the Fock-space model spectrum exactly.
The (i, j, zeta) relabeling exposes the synthetic dimension used by the
photonic layout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import propagate
from .errors import SymmetryViolation
from .hubbard import TwoParticleBasis, build_two_particle_hamiltonian, first_quant_to_fock
from .lattice import LatticeParams, single_particle_hamiltonian, site_label

# zeta = 1..4 labels the leg pair (alpha, beta) = (A,A), (A,B), (B,A), (B,B).
ZETA_PAIRS = {1: ("A", "A"), 2: ("A", "B"), 3: ("B", "A"), 4: ("B", "B")}
# Vertical stacking of the zeta layers in the 3D layout. This order walks the
# (alpha, beta) square so that three of its four flip-bonds are stack
# neighbours; only the {1,3} pair is left nonlocal.
ZETA_STACK_ORDER = (1, 2, 4, 3)
_STACK_POS = {z: i for i, z in enumerate(ZETA_STACK_ORDER)}


def build_2d_hamiltonian(p: LatticeParams) -> np.ndarray:
    """H2D = H1 (x) 1 + 1 (x) H1 + U * (diagonal-site projectors), (2L)^2 square."""
    H1 = single_particle_hamiltonian(p)
    n = H1.shape[0]
    eye = np.eye(n)
    H2 = np.kron(H1, eye) + np.kron(eye, H1)
    diag = np.arange(n) * n + np.arange(n)
    H2[diag, diag] += p.U
    return H2


def exchange_permutation(n_sites: int) -> np.ndarray:
    """Permutation matrix swapping the two particle slots of the (2L)^2 index."""
    dim = n_sites * n_sites
    P = np.zeros((dim, dim))
    for a in range(n_sites):
        for b in range(n_sites):
            P[b * n_sites + a, a * n_sites + b] = 1.0
    return P


def symmetric_basis_isometry(basis: TwoParticleBasis) -> np.ndarray:
    """Isometry from the Fock basis into the exchange-symmetric 2D subspace."""
    n = basis.n_sites
    S = np.zeros((n * n, basis.size))
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    for col, (a, b) in enumerate(basis.pairs):
        if a == b:
            S[a * n + a, col] = 1.0
        else:
            S[a * n + b, col] = inv_sqrt2
            S[b * n + a, col] = inv_sqrt2
    return S


def symmetric_sector_spectrum_check(p: LatticeParams) -> float:
    """Max deviation between the symmetric-sector spectrum of H2D and the Fock spectrum.

    This is the equivalence theorem check: both should agree to numerical
    precision for any parameter draw.
    """
    basis = TwoParticleBasis(p.L)
    H2 = build_2d_hamiltonian(p)
    S = symmetric_basis_isometry(basis)
    sym_spectrum = np.linalg.eigvalsh(S.T @ H2 @ S)
    fock_spectrum = np.linalg.eigvalsh(build_two_particle_hamiltonian(p, basis))
    return float(np.abs(sym_spectrum - fock_spectrum).max())


@dataclass
class Trajectory2D:
    """Single-particle evolution on the quasi-2D lattice, kept exchange symmetric."""

    times: np.ndarray
    states: np.ndarray  # (T, (2L)^2) first-quantized amplitudes
    symmetry_defect: np.ndarray  # sum |lam_ab - lam_ba|^2 per sample
    params: LatticeParams


def evolve_2d(p: LatticeParams, lam0: np.ndarray, times) -> Trajectory2D:
    """Evolve symmetric first-quantized amplitudes under H2D.

    The input is checked for exchange symmetry (to 1e-10); the per-sample
    defect is reported so tests can confirm symmetry is preserved.
    """
    n = p.n_sites
    lam0 = np.asarray(lam0, dtype=complex)
    if lam0.shape == (n, n):
        lam0 = lam0.ravel()
    if lam0.shape != (n * n,):
        raise ValueError(f"expected a (2L)^2 amplitude array, got shape {lam0.shape}")
    mat = lam0.reshape(n, n)
    if np.abs(mat - mat.T).max() > 1e-10:
        raise SymmetryViolation("initial 2D state is not exchange symmetric")
    H2 = build_2d_hamiltonian(p)
    times, states = propagate(H2, lam0, times)
    defect = np.array(
        [float((np.abs(s.reshape(n, n) - s.reshape(n, n).T) ** 2).sum()) for s in states]
    )
    return Trajectory2D(times=times, states=states, symmetry_defect=defect, params=p)


def occupancy_grid(traj: Trajectory2D) -> np.ndarray:
    """|lambda|^2 arranged as occupancy[t, i, j, zeta] with zeta layers 1..4."""
    L = traj.params.L
    n = 2 * L
    occ = np.abs(traj.states) ** 2
    # site index = 2(i-1)+alpha; zeta-1 = 2*alpha+beta
    grids = occ.reshape(-1, L, 2, L, 2)
    return grids.transpose(0, 1, 3, 2, 4).reshape(-1, L, L, 4)


def fock_states_from_2d(traj: Trajectory2D, basis: TwoParticleBasis | None = None) -> np.ndarray:
    """Per-sample Fock vectors recovered from the 2D amplitudes."""
    basis = basis or TwoParticleBasis(traj.params.L)
    n = basis.n_sites
    return np.stack([first_quant_to_fock(s.reshape(n, n), basis) for s in traj.states])


@dataclass(frozen=True)
class Bond2D:
    """One hopping bond of the quasi-2D lattice in (i, j, zeta) coordinates."""

    site_a: tuple[int, int, int]
    site_b: tuple[int, int, int]
    amplitude: complex
    kind: str  # "local" | "nonlocal"


@dataclass
class ZetaLayout:
    """Bond list of the (i, j, zeta) layout plus its nonlocal-hopping budget."""

    bonds: list
    nonlocal_types: list
    zeta_periodic: bool

    @property
    def nonlocal_bonds_per_cell(self) -> int:
        return len(self.nonlocal_types)


def _zeta_of(alpha: int, beta: int) -> int:
    return 1 + 2 * alpha + beta


def _stack_distance(za: int, zb: int, periodic: bool) -> int:
    d = abs(_STACK_POS[za] - _STACK_POS[zb])
    if periodic:
        d = min(d, len(ZETA_STACK_ORDER) - d)
    return d


def zeta_layout(p: LatticeParams, zeta_periodic: bool = False) -> ZetaLayout:
    """Enumerate the 2D bonds in (i, j, zeta) coordinates and classify locality.

    A bond is local when it connects sites at most one layer apart in the
    zeta stack (straight or face-diagonal); bonds skipping layers need
    nonlocal couplings unless the synthetic dimension is made periodic, which
    closes the (alpha, beta) square and removes them all.
    """
    H1 = single_particle_hamiltonian(p)
    n = p.n_sites
    bonds: list[Bond2D] = []
    types = {}
    hops = [(a, b) for a in range(n) for b in range(a + 1, n) if H1[a, b] != 0.0]
    for s1, s2 in hops:
        (i1, l1), (i2, l2) = site_label(s1), site_label(s2)
        a1, a2 = (0 if l1 == "A" else 1), (0 if l2 == "A" else 1)
        for spectator in range(n):
            js, ls = site_label(spectator)
            bs = 0 if ls == "A" else 1
            # particle-1 hop: (i1, a1) -> (i2, a2) with the spectator as particle 2
            pa = (i1, js, _zeta_of(a1, bs))
            pb = (i2, js, _zeta_of(a2, bs))
            bonds.append(_classify_bond(pa, pb, H1[s2, s1], p, zeta_periodic, types))
            # particle-2 hop
            pa = (js, i1, _zeta_of(bs, a1))
            pb = (js, i2, _zeta_of(bs, a2))
            bonds.append(_classify_bond(pa, pb, H1[s2, s1], p, zeta_periodic, types))
    nonlocal_types = sorted(t for t, kind in types.items() if kind == "nonlocal")
    return ZetaLayout(bonds=bonds, nonlocal_types=nonlocal_types, zeta_periodic=zeta_periodic)


def _wrap_displacement(d: int, p: LatticeParams) -> int:
    if not p.periodic:
        return d
    d = d % p.L
    return d - p.L if d > p.L // 2 else d


def _classify_bond(pa, pb, amplitude, p, zeta_periodic, types) -> Bond2D:
    kind = (
        "local"
        if _stack_distance(pa[2], pb[2], zeta_periodic) <= 1
        else "nonlocal"
    )
    di = _wrap_displacement(pb[0] - pa[0], p)
    dj = _wrap_displacement(pb[1] - pa[1], p)
    rep = (di, dj, pa[2], pb[2])
    alt = (-di, -dj, pb[2], pa[2])
    types[min(rep, alt)] = kind
    return Bond2D(site_a=pa, site_b=pb, amplitude=complex(amplitude), kind=kind)
