"""Topological diagnostics: Zak phase, winding number, gap, phase classification."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import MetallicSystem, PathThroughOrigin
from .lattice import TWO_PI, LatticeParams, bloch_components, k_grid

# A closing gap below this (in units of J) declares the system metallic; the
# probe grid is fine enough to hit the analytic closing points of this model.
METALLIC_GAP_TOL = 1e-8
PROBE_POINTS = 1024

BANDS = ("lower", "upper")


def min_gap(p: LatticeParams, n_k: int = PROBE_POINTS) -> float:
    """Minimum direct band gap 2*sqrt(dx^2+dy^2+dz^2) over the k grid."""
    _, dx, dy, dz = bloch_components(p, k_grid(n_k))
    return float(2.0 * np.sqrt(dx * dx + dy * dy + dz * dz).min())


def _min_gap_exact(p: LatticeParams) -> float:
    """Closed-form minimum of the direct gap over the whole Brillouin zone.

    dx^2 + dz^2 is a quadratic in c = cos k, so its minimum over [-1, 1] is
    exact. A probe grid misses the closing momenta on the sin(phi/2) = 0
    metallic lines (k0 = arccos(-m/2J) is generically off-grid), which this
    avoids.
    """
    J, m = p.J, p.m
    s2 = math.sin(p.phi / 2.0) ** 2
    c2 = 1.0 - s2

    def f(c: float) -> float:
        return 4.0 * J * J * c2 * c * c + 4.0 * m * J * c + m * m + 4.0 * J * J * s2

    candidates = [-1.0, 1.0]
    if c2 > 0.0:
        candidates.append(min(1.0, max(-1.0, -m / (2.0 * J * c2))))
    return 2.0 * math.sqrt(max(min(f(c) for c in candidates), 0.0))


def _band_vectors(p: LatticeParams, n_k: int, band: str) -> np.ndarray:
    """Eigenvectors of H(k) for one band on the closed k loop, shape (n_k, 2)."""
    if band not in BANDS:
        raise ValueError(f"band must be 'lower' or 'upper', got {band!r}")
    if _min_gap_exact(p) < METALLIC_GAP_TOL * p.J:
        raise MetallicSystem("band gap closes; band eigenvectors undefined")
    k = k_grid(n_k)
    d0, dx, dy, dz = bloch_components(p, k)
    h = np.empty((n_k, 2, 2), dtype=complex)
    h[:, 0, 0] = d0 + dz
    h[:, 1, 1] = d0 - dz
    h[:, 0, 1] = dx - 1j * dy
    h[:, 1, 0] = dx + 1j * dy
    _, vecs = np.linalg.eigh(h)
    return vecs[:, :, 0] if band == "lower" else vecs[:, :, 1]


def zak_phase(p: LatticeParams, band: str = "lower", n_k: int = 256) -> float:
    """Zak phase of one band as a gauge-invariant Wilson loop, in [-pi, pi).

    The product of overlaps <u_n|u_{n+1}> runs around the closed k loop with
    the final overlap wrapping back to the first point, so any per-point
    rephasing of the eigenvectors cancels.
    """
    if n_k < 8:
        raise ValueError("n_k must be >= 8 for a meaningful Wilson loop")
    vecs = _band_vectors(p, n_k, band)
    overlaps = np.einsum("ki,ki->k", vecs.conj(), np.roll(vecs, -1, axis=0))
    loop = complex(np.prod(overlaps))
    return float(-np.angle(loop))


def winding_number(p: LatticeParams, n_k: int = 256) -> int:
    """Signed winding of the closed planar curve (dz(k), dx(k)) around the origin.

    Angle increments of atan2(dx, dz) are accumulated with increasing k; the
    orientation makes (m=0, phi=pi) wind +1.
    """
    if n_k < 8:
        raise ValueError("n_k must be >= 8")
    if _min_gap_exact(p) < METALLIC_GAP_TOL * p.J:
        raise PathThroughOrigin("the (dz, dx) path passes through the origin")
    k = k_grid(n_k)
    _, dx, _, dz = bloch_components(p, k)
    theta = np.arctan2(dx, dz)
    inc = np.diff(np.append(theta, theta[0]))
    inc = (inc + math.pi) % TWO_PI - math.pi
    total = inc.sum() / TWO_PI
    nu = int(round(total))
    if abs(total - nu) > 1e-6:
        raise PathThroughOrigin(f"winding did not converge to an integer: {total}")
    return nu


@dataclass(frozen=True)
class PhaseClassification:
    """Point of the phase diagram: metallic, or gapped with winding and Zak phase."""

    kind: str  # "trivial" | "topological" | "metallic"
    nu: int | None
    zak: float | None

    @property
    def metallic(self) -> bool:
        return self.kind == "metallic"


def classify_phase(p: LatticeParams, n_k: int = 256) -> PhaseClassification:
    """Four-way phase classification of the (m, phi) point.

    Metallic when the probe-grid gap is below tolerance; otherwise the winding
    number decides trivial (nu = 0) versus topological (nu = +/-1), and the
    Zak phase is cross-checked against it.
    """
    if _min_gap_exact(p) < METALLIC_GAP_TOL * p.J:
        return PhaseClassification("metallic", None, None)
    nu = winding_number(p, n_k)
    zak = zak_phase(p, "lower", n_k)
    dist_pi = abs(abs(zak) - math.pi)
    dist_zero = min(abs(zak), TWO_PI - abs(zak))
    if nu != 0 and dist_pi > 1e-4:
        raise RuntimeError(f"winding {nu} but Zak phase {zak} is not at pi")
    if nu == 0 and dist_zero > 1e-4:
        raise RuntimeError(f"winding 0 but Zak phase {zak} is not at 0")
    kind = "topological" if nu != 0 else "trivial"
    return PhaseClassification(kind, nu, zak)


@dataclass(frozen=True)
class PhaseDiagram:
    """Row-major classification grid: rows scan m, columns scan phi."""

    m_values: np.ndarray
    phi_values: np.ndarray
    grid: list  # list (over m) of lists (over phi) of PhaseClassification


def _worker_count(requested: int | None) -> int:
    cap = os.environ.get("CREUTZ_THREADS")
    n = requested if requested is not None else (os.cpu_count() or 1)
    if cap is not None:
        n = min(n, max(1, int(cap)))
    return max(1, n)


def phase_diagram_scan(
    m_range,
    phi_range,
    resolution,
    *,
    J: float = 1.0,
    n_k: int = 256,
    workers: int | None = None,
) -> PhaseDiagram:
    """Classify every point of an (m, phi) raster; deterministic row-major grid.

    ``resolution`` is either a single count used for both axes or a pair
    (n_m, n_phi). Rows may be evaluated concurrently (capped by the
    CREUTZ_THREADS environment variable); assembly is ordered by index.
    """
    if isinstance(resolution, int):
        n_m = n_phi = resolution
    else:
        n_m, n_phi = resolution
    if n_m < 1 or n_phi < 1:
        raise ValueError("resolution must be positive")
    m_values = np.linspace(m_range[0], m_range[1], n_m)
    phi_values = np.linspace(phi_range[0], phi_range[1], n_phi)

    def scan_row(m):
        return [
            classify_phase(LatticeParams(L=2, J=J, m=float(m), phi=float(phi)), n_k)
            for phi in phi_values
        ]

    n_workers = _worker_count(workers)
    if n_workers == 1 or n_m == 1:
        rows = [scan_row(m) for m in m_values]
    else:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            rows = list(pool.map(scan_row, m_values))
    return PhaseDiagram(m_values=m_values, phi_values=phi_values, grid=rows)
