"""Exact time evolution and trajectory observables.

Propagation uses the full eigendecomposition of the (desk-scale) Hamiltonian,
so the sampling times carry no integration error; step sizes chosen elsewhere
only control sampling density.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NoMidgapState, NoMinimumFound, NonHermitian
from .lattice import LatticeParams, site_index, site_label

HERMITICITY_ATOL = 1e-10


@dataclass
class Trajectory:
    """Sampled unitary evolution: times, states, and per-site observables.

    ``occupations[t, s]`` holds the expected particle number on site ``s``;
    for two-particle runs ``doublonness`` is attached as well. Norm is
    conserved to 1e-10 at every sample and times increase strictly.
    """

    times: np.ndarray
    states: np.ndarray
    occupations: np.ndarray
    doublonness: np.ndarray | None = None
    params: LatticeParams | None = None
    initial_label: str = ""

    @property
    def n_sites(self) -> int:
        return self.occupations.shape[1]


def check_hermitian(H: np.ndarray) -> np.ndarray:
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {H.shape}")
    asym = np.abs(H - H.conj().T).max()
    if asym > HERMITICITY_ATOL:
        raise NonHermitian(f"max asymmetry {asym:.3e} exceeds {HERMITICITY_ATOL}")
    return H


def propagate(H: np.ndarray, psi0: np.ndarray, times) -> tuple[np.ndarray, np.ndarray]:
    """psi(t) = exp(-iHt) psi0 at each sample, via eigendecomposition.

    Returns (times, states) with states of shape (n_times, dim).
    """
    H = check_hermitian(H)
    psi0 = np.asarray(psi0, dtype=complex).ravel()
    if psi0.shape[0] != H.shape[0]:
        raise DimensionMismatch(f"state dim {psi0.shape[0]} != matrix dim {H.shape[0]}")
    norm = np.linalg.norm(psi0)
    if abs(norm - 1.0) > 1e-8:
        raise ValueError(f"initial state must be normalized, |psi0| = {norm}")
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise ValueError("times must be a nonempty 1-d array")
    if times.size > 1 and not np.all(np.diff(times) > 0):
        raise ValueError("times must be strictly increasing")
    w, V = np.linalg.eigh(H)
    c0 = V.conj().T @ psi0
    phases = np.exp(-1j * np.outer(times, w))
    states = (phases * c0) @ V.T  # (T, dim) back in the site basis
    return times, states


def evolve(
    H: np.ndarray,
    psi0: np.ndarray,
    times,
    params: LatticeParams | None = None,
    initial_label: str = "",
) -> Trajectory:
    """Exact evolution with |amplitude|^2 occupations attached (single-particle)."""
    times, states = propagate(H, psi0, times)
    occupations = np.abs(states) ** 2
    return Trajectory(
        times=times,
        states=states,
        occupations=occupations,
        params=params,
        initial_label=initial_label,
    )


def occupation_profile(traj: Trajectory) -> np.ndarray:
    """Per-time per-site |amplitude|^2 of a single-particle trajectory; rows sum to 1."""
    return np.abs(traj.states) ** 2


def cage_support(traj: Trajectory, eps: float) -> set:
    """Sites whose occupation ever exceeds eps: the support explored by the state."""
    hit = np.flatnonzero((traj.occupations > eps).any(axis=0))
    return {site_label(i) for i in hit}


def breathing_half_period(traj: Trajectory, site: tuple[int, str]) -> float:
    """Time of the first interior minimum of a site's occupation.

    The discrete minimum is refined by quadratic interpolation through its
    neighbours, removing the sampling-step bias.
    """
    y = traj.occupations[:, site_index(*site)]
    t = traj.times
    for i in range(1, len(y) - 1):
        if y[i] <= y[i - 1] and y[i] <= y[i + 1] and (y[i] < y[i - 1] or y[i] < y[i + 1]):
            denom = y[i - 1] - 2.0 * y[i] + y[i + 1]
            if denom <= 0:
                return float(t[i])
            # vertex of the parabola through the three samples (uniform spacing)
            dt = 0.5 * (t[i + 1] - t[i - 1])
            shift = 0.5 * (y[i - 1] - y[i + 1]) / denom
            return float(t[i] + shift * dt)
    raise NoMinimumFound(f"occupation at site {site} has no interior minimum")


@dataclass
class EdgeProfileFit:
    """Mid-gap eigenstates of an open ladder and their localization profile."""

    energies: np.ndarray  # the two mid-gap eigenvalues
    profiles: np.ndarray  # (2, 2L) per-site magnitudes
    rung_weights: np.ndarray  # (L,) combined weight of both states per rung
    decay_length: float  # rungs; 0 when the support is a single end rung


def edge_profile_fit(H: np.ndarray) -> EdgeProfileFit:
    """Locate the two mid-gap states of an open topological ladder and fit their decay.

    The two middle eigenvalues are accepted as edge states only if they fall
    within the central two-thirds of the surrounding bulk gap (shifted edge
    states at m != 0 sit well off center but far from the band edges, while
    trivial spectra put the middle states at the edges); otherwise
    NoMidgapState is raised. The decay length is a least-squares exponential
    fit of the rung-summed weights against distance to the nearest end.
    """
    H = check_hermitian(H)
    dim = H.shape[0]
    if dim % 2 != 0 or dim < 8:
        raise ValueError("expected a 2L x 2L single-particle matrix with L >= 4")
    L = dim // 2
    w, V = np.linalg.eigh(H)
    lo, hi = w[L - 2], w[L + 1]  # bulk band edges around the two middle states
    gap = hi - lo
    center = 0.5 * (hi + lo)
    mid = w[L - 1 : L + 1]
    if gap <= 0 or np.any(np.abs(mid - center) > gap / 3.0):
        raise NoMidgapState("no eigenvalue inside the central two-thirds of the bulk gap")
    profiles = np.abs(V[:, L - 1 : L + 1].T)
    weights = (profiles**2).sum(axis=0).reshape(L, 2).sum(axis=1)
    dist = np.minimum(np.arange(L), np.arange(L)[::-1])
    # fold both ends together before fitting log-weight vs distance
    folded = np.zeros(dist.max() + 1)
    for d, wgt in zip(dist, weights):
        folded[d] += wgt
    mask = folded > 1e-14
    if mask.sum() < 2:
        decay = 0.0
    else:
        x = np.flatnonzero(mask)
        slope = np.polyfit(x, np.log(folded[mask]), 1)[0]
        decay = float(-2.0 / slope) if slope < 0 else float("inf")
    return EdgeProfileFit(
        energies=mid.copy(), profiles=profiles, rung_weights=weights, decay_length=decay
    )
