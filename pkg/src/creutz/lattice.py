"""Model parameters, site indexing, and the Creutz ladder Hamiltonians.

Conventions used throughout the package:

* rungs are labeled j = 1..L, legs alpha in {A, B};
* the linearized site index is 2*(j-1) + (0 for A, 1 for B);
* the gauge puts the Peierls phase exp(+/- i*phi/2) on the horizontal
  intraleg hoppings only (sign +1 on leg A, -1 on leg B);
* energies are measured in units of J (J defaults to 1), times in 1/J.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi

LEGS = ("A", "B")
LEG_SIGN = {"A": +1.0, "B": -1.0}


def canonical_phase(phi: float) -> float:
    """Reduce a Peierls phase to [-2pi, 2pi), the 4pi period of the phase diagram."""
    return (float(phi) + TWO_PI) % (2.0 * TWO_PI) - TWO_PI


def flux_to_phase(flux_ratio: float) -> float:
    """Peierls phase per plaquette for a magnetic flux: phi = 2pi * flux/flux_quantum."""
    return canonical_phase(TWO_PI * float(flux_ratio))


@dataclass(frozen=True)
class LatticeParams:
    """The model's five numbers plus the boundary condition.

    Attributes
    ----------
    L : int
        Number of rungs (>= 2).
    J : float
        Diagonal/horizontal hopping magnitude; sets the energy unit (> 0).
    m : float
        Vertical (rung) hopping amplitude.
    phi : float
        Peierls phase per plaquette, stored canonically in [-2pi, 2pi).
    U : float
        On-site Hubbard repulsion (>= 0).
    boundary : str
        "open" or "periodic".
    """

    L: int
    J: float = 1.0
    m: float = 0.0
    phi: float = 0.0
    U: float = 0.0
    boundary: str = "open"

    def __post_init__(self):
        if int(self.L) != self.L or self.L < 2:
            raise ValueError(f"L must be an integer >= 2, got {self.L}")
        if not self.J > 0:
            raise ValueError(f"J must be positive, got {self.J}")
        if self.U < 0:
            raise ValueError(f"U must be >= 0, got {self.U}")
        if self.boundary not in ("open", "periodic"):
            raise ValueError(f"boundary must be 'open' or 'periodic', got {self.boundary!r}")
        object.__setattr__(self, "L", int(self.L))
        object.__setattr__(self, "phi", canonical_phase(self.phi))

    @property
    def n_sites(self) -> int:
        return 2 * self.L

    @property
    def periodic(self) -> bool:
        return self.boundary == "periodic"


def site_index(j: int, leg: str) -> int:
    """Linearized index of site (j, leg); bijective with 0..2L-1."""
    if leg not in LEGS:
        raise ValueError(f"leg must be 'A' or 'B', got {leg!r}")
    if j < 1:
        raise ValueError(f"rung index must be >= 1, got {j}")
    return 2 * (j - 1) + (0 if leg == "A" else 1)


def site_label(index: int) -> tuple[int, str]:
    """Inverse of site_index: (rung, leg) of a linearized index."""
    j, a = divmod(int(index), 2)
    return j + 1, LEGS[a]


def site_name(index: int) -> str:
    j, leg = site_label(index)
    return f"{j}{leg}"


def single_particle_hamiltonian(p: LatticeParams) -> np.ndarray:
    """Real-space single-particle Hamiltonian, a (2L x 2L) complex Hermitian matrix.

    Bonds between rungs j and j+1 carry <j+1,a|H|j,a> = -J exp(i s_a phi/2)
    on each leg and -J on the two diagonals; the total rung element between
    |j,A> and |j,B> is -m (the m/2 term plus its Hermitian conjugate act on
    the same pair). Periodic boundary wraps rung L to rung 1.
    """
    n = p.n_sites
    H = np.zeros((n, n), dtype=complex)
    leg_hop = {leg: -p.J * np.exp(1j * LEG_SIGN[leg] * p.phi / 2.0) for leg in LEGS}
    last = p.L if p.periodic else p.L - 1
    for j in range(1, last + 1):
        jn = j % p.L + 1
        for leg in LEGS:
            other = "B" if leg == "A" else "A"
            a, b = site_index(jn, leg), site_index(j, leg)
            H[a, b] += leg_hop[leg]
            H[b, a] += leg_hop[leg].conjugate()
            a, b = site_index(jn, leg), site_index(j, other)
            H[a, b] += -p.J
            H[b, a] += -p.J
    if p.m != 0.0:
        for j in range(1, p.L + 1):
            a, b = site_index(j, "A"), site_index(j, "B")
            H[a, b] += -p.m
            H[b, a] += -p.m
    return H


@dataclass(frozen=True)
class BlochPoint:
    """Bloch decomposition H(k) = d0*I + d.sigma at quasimomentum k.

    dy vanishes identically for the Creutz model; band energies are
    d0 +/- sqrt(dx^2 + dy^2 + dz^2).
    """

    k: float
    d0: float
    dx: float
    dy: float
    dz: float

    @property
    def d_norm(self) -> float:
        return math.sqrt(self.dx**2 + self.dy**2 + self.dz**2)

    def energies(self) -> tuple[float, float]:
        r = self.d_norm
        return self.d0 - r, self.d0 + r

    def matrix(self) -> np.ndarray:
        return np.array(
            [
                [self.d0 + self.dz, self.dx - 1j * self.dy],
                [self.dx + 1j * self.dy, self.d0 - self.dz],
            ],
            dtype=complex,
        )


def bloch_hamiltonian(p: LatticeParams, k: float) -> BlochPoint:
    """d-vector of the bulk Bloch Hamiltonian at quasimomentum k."""
    d0, dx, dy, dz = bloch_components(p, np.asarray([k], dtype=float))
    return BlochPoint(k=float(k), d0=float(d0[0]), dx=float(dx[0]), dy=float(dy[0]), dz=float(dz[0]))


def bloch_components(p: LatticeParams, k: np.ndarray):
    """Vectorized (d0, dx, dy, dz) over an array of quasimomenta."""
    k = np.asarray(k, dtype=float)
    d0 = -2.0 * p.J * np.cos(k) * math.cos(p.phi / 2.0)
    dx = -p.m - 2.0 * p.J * np.cos(k)
    dy = np.zeros_like(k)
    dz = 2.0 * p.J * np.sin(k) * math.sin(p.phi / 2.0)
    return d0, dx, dy, dz


def band_energies(p: LatticeParams, k_values) -> tuple[np.ndarray, np.ndarray]:
    """Lower and upper band energies over a grid of quasimomenta."""
    k = np.asarray(k_values, dtype=float)
    if k.size == 0:
        raise ValueError("k grid must be nonempty")
    d0, dx, dy, dz = bloch_components(p, k)
    r = np.sqrt(dx * dx + dy * dy + dz * dz)
    return d0 - r, d0 + r


def k_grid(n_k: int) -> np.ndarray:
    """Uniform closed-loop grid k_n = -pi + 2pi*n/N, n = 0..N-1."""
    if n_k < 1:
        raise ValueError("n_k must be positive")
    return -math.pi + TWO_PI * np.arange(n_k) / n_k


def allowed_momenta(L: int) -> np.ndarray:
    """The L quasimomenta 2pi*n/L of a periodic ladder, wrapped to [-pi, pi)."""
    k = TWO_PI * np.arange(L) / L
    return np.sort((k + math.pi) % TWO_PI - math.pi)
