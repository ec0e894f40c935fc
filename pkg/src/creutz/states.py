"""Closed-form states: Wannier plaquette states, caged evolution, edge states.

All constructors return unit-norm amplitude arrays; single-particle states
have length 2L, doublon states live on the two-boson Fock basis.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import BulkOnly, FlatBandRequired, RungsPresent
from .hubbard import TwoParticleBasis
from .lattice import LEG_SIGN, LEGS, LatticeParams, site_index

_FLAT_TOL = 1e-12
SIGNS = ("+", "-")

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


def _flat_band_sign(p: LatticeParams) -> float:
    """+1 for phi = +pi, -1 for phi = -pi; error outside the flat-band limit."""
    if p.m != 0.0 or abs(abs(p.phi) - math.pi) > _FLAT_TOL:
        raise FlatBandRequired(
            f"flat-band limit needs m = 0 and phi = +/-pi, got m={p.m}, phi={p.phi}"
        )
    return 1.0 if p.phi > 0 else -1.0


def _other(leg: str) -> str:
    return "B" if leg == "A" else "A"


def _wrap_rung(p: LatticeParams, j: int) -> int:
    return (j - 1) % p.L + 1


def wannier_state(p: LatticeParams, j: int, sign: str) -> np.ndarray:
    """Four-site plaquette eigenstate |j,+/-> of the flat-band ladder.

    At phi = +pi the amplitudes are (1/2)[|j,A> + i|j,B> -/+ i|j+1,A> -/+ |j+1,B>];
    at phi = -pi they are complex conjugated (the Hamiltonian conjugates).
    Energies are +/-2J.
    """
    if sign not in SIGNS:
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    s = _flat_band_sign(p)
    if p.periodic:
        if not 1 <= j <= p.L:
            raise ValueError(f"rung {j} outside 1..{p.L}")
    elif not 1 <= j <= p.L - 1:
        raise BulkOnly(f"open ladder needs 1 <= j <= L-1 for a plaquette, got {j}")
    jn = _wrap_rung(p, j + 1)
    upper = -0.5 if sign == "+" else 0.5
    psi = np.zeros(p.n_sites, dtype=complex)
    psi[site_index(j, "A")] = 0.5
    psi[site_index(j, "B")] = 0.5j * s
    psi[site_index(jn, "A")] = upper * 1j * s
    psi[site_index(jn, "B")] = upper
    return psi


def site_in_wannier_basis(p: LatticeParams, j: int, leg: str):
    """Expansion of the bulk site |j,leg> over the four Wannier states carrying it.

    Returns four ((rung, sign), coefficient) pairs obtained by direct
    projection onto the plaquette states; reconstructing the site state from
    them is exact. (The coefficients depend on the leg.)
    """
    if not 1 < j < p.L and not p.periodic:
        raise BulkOnly(f"site expansion needs a bulk rung 1 < j < L, got {j}")
    _flat_band_sign(p)
    if leg not in LEGS:
        raise ValueError(f"leg must be 'A' or 'B', got {leg!r}")
    site = np.zeros(p.n_sites, dtype=complex)
    site[site_index(j, leg)] = 1.0
    out = []
    for jw in (_wrap_rung(p, j - 1), j):
        for sign in SIGNS:
            w = wannier_state(p, jw, sign)
            out.append(((jw, sign), complex(np.vdot(w, site))))
    return out


def analytic_caged_evolution(p: LatticeParams, j: int, leg: str, t: float) -> np.ndarray:
    """Closed-form flat-band evolution of |j,leg>: breathing within its 5-site cage.

    The state oscillates as cos(2Jt) on the initial site and (1/2) sin(2Jt)
    on the four first neighbours, with phases fixed by the leg sign and the
    sign of phi.
    """
    s = _flat_band_sign(p)
    if leg not in LEGS:
        raise ValueError(f"leg must be 'A' or 'B', got {leg!r}")
    if p.periodic:
        if not 1 <= j <= p.L:
            raise ValueError(f"rung {j} outside 1..{p.L}")
    elif not 1 < j < p.L:
        raise BulkOnly(f"caged evolution needs a bulk rung 1 < j < L, got {j}")
    jp, jm = _wrap_rung(p, j + 1), _wrap_rung(p, j - 1)
    sig = LEG_SIGN[leg] * s
    amp = 0.5 * math.sin(2.0 * p.J * t)
    psi = np.zeros(p.n_sites, dtype=complex)
    psi[site_index(j, leg)] = math.cos(2.0 * p.J * t)
    psi[site_index(jp, leg)] += -sig * amp
    psi[site_index(jp, _other(leg))] += 1j * amp
    psi[site_index(jm, leg)] += sig * amp
    psi[site_index(jm, _other(leg))] += 1j * amp
    return psi


def edge_state(p: LatticeParams, side: str) -> np.ndarray:
    """Two-site zero-energy edge state of the rungless open ladder.

    Left: (1/sqrt2)[|1,A> - e^{i phi/2}|1,B>]; right uses rung L and the
    conjugate phase. The two hopping paths onto rung 2 (or L-1) cancel for
    every phi, so H annihilates the state exactly.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if p.m != 0.0:
        raise RungsPresent(
            "closed-form edge states need m = 0; use dynamics.edge_profile_fit for m != 0"
        )
    if p.periodic:
        raise ValueError("edge states need an open boundary")
    psi = np.zeros(p.n_sites, dtype=complex)
    if side == "left":
        psi[site_index(1, "A")] = _INV_SQRT2
        psi[site_index(1, "B")] = -np.exp(1j * p.phi / 2.0) * _INV_SQRT2
    else:
        psi[site_index(p.L, "A")] = _INV_SQRT2
        psi[site_index(p.L, "B")] = -np.exp(-1j * p.phi / 2.0) * _INV_SQRT2
    return psi


def doublon_edge_state(p: LatticeParams, side: str, basis: TwoParticleBasis | None = None) -> np.ndarray:
    """Doublon edge state on the two-boson Fock basis; the edge phase doubles.

    Left: (1/sqrt2)[|2_{1,A}> - e^{i phi}|2_{1,B}>]; right uses rung L and the
    conjugate phase.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if p.m != 0.0:
        raise RungsPresent("doublon edge states need m = 0")
    if p.periodic:
        raise ValueError("doublon edge states need an open boundary")
    if not p.U > 0:
        raise ValueError("doublon edge states need U > 0")
    basis = basis or TwoParticleBasis(p.L)
    psi = np.zeros(basis.size, dtype=complex)
    if side == "left":
        a, b = site_index(1, "A"), site_index(1, "B")
        phase = np.exp(1j * p.phi)
    else:
        a, b = site_index(p.L, "A"), site_index(p.L, "B")
        phase = np.exp(-1j * p.phi)
    psi[basis.index(a, a)] = _INV_SQRT2
    psi[basis.index(b, b)] = -phase * _INV_SQRT2
    return psi


def noon_state(p: LatticeParams, basis: TwoParticleBasis | None = None) -> np.ndarray:
    """Normalized |2L_phi> + |2R_phi>: both particles at one end or the other."""
    basis = basis or TwoParticleBasis(p.L)
    psi = doublon_edge_state(p, "left", basis) + doublon_edge_state(p, "right", basis)
    return psi / np.linalg.norm(psi)
