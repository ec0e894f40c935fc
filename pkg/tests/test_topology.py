import math

import numpy as np
import pytest

from creutz import LatticeParams, classify_phase, min_gap, phase_diagram_scan, winding_number, zak_phase
from creutz.errors import MetallicSystem, PathThroughOrigin
from creutz.lattice import bloch_components, k_grid

TWO_PI = 2 * math.pi


def dist_to_pi(z):
    return abs(abs(z) - math.pi)


def dist_to_zero(z):
    return min(abs(z), TWO_PI - abs(z))


def test_zak_topological_and_trivial():
    assert dist_to_pi(zak_phase(LatticeParams(L=2, m=0.0, phi=math.pi), "lower", 256)) < 1e-6
    assert dist_to_zero(zak_phase(LatticeParams(L=2, m=3.0, phi=math.pi), "lower", 256)) < 1e-6


def test_zak_gauge_invariance():
    # independent Wilson loop with randomly rephased eigenvectors
    p = LatticeParams(L=2, m=0.7, phi=1.9)
    n_k = 128
    rng = np.random.default_rng(5)
    ks = k_grid(n_k)
    d0, dx, dy, dz = bloch_components(p, ks)
    vecs = []
    for i in range(n_k):
        h = np.array(
            [[d0[i] + dz[i], dx[i] - 1j * dy[i]], [dx[i] + 1j * dy[i], d0[i] - dz[i]]]
        )
        _, v = np.linalg.eigh(h)
        vecs.append(v[:, 0] * np.exp(1j * rng.uniform(0, TWO_PI)))
    loop = 1.0 + 0.0j
    for i in range(n_k):
        loop *= np.vdot(vecs[i], vecs[(i + 1) % n_k])
    rephased = -np.angle(loop)
    library = zak_phase(p, "lower", n_k)
    assert dist_to_zero(rephased - library) < 1e-10


def test_winding_values():
    assert winding_number(LatticeParams(L=2, m=0.0, phi=math.pi)) == 1
    assert winding_number(LatticeParams(L=2, m=3.0, phi=math.pi)) == 0
    left = winding_number(LatticeParams(L=2, m=0.0, phi=-math.pi + 0.2))
    right = winding_number(LatticeParams(L=2, m=0.0, phi=math.pi - 0.2))
    assert left == -right != 0


def test_metallic_errors():
    with pytest.raises(MetallicSystem):
        zak_phase(LatticeParams(L=2, m=2.0, phi=math.pi))
    with pytest.raises(PathThroughOrigin):
        winding_number(LatticeParams(L=2, m=2.0, phi=math.pi))


def test_min_gap_values():
    assert min_gap(LatticeParams(L=2, m=2.0, phi=math.pi)) == pytest.approx(0.0, abs=1e-12)
    assert min_gap(LatticeParams(L=2, m=0.0, phi=math.pi)) == pytest.approx(4.0, abs=1e-12)
    assert min_gap(LatticeParams(L=2, m=0.0, phi=0.0)) == pytest.approx(0.0, abs=1e-12)


def test_classify_examples():
    c = classify_phase(LatticeParams(L=2, m=0.0, phi=math.pi))
    assert (c.kind, c.nu) == ("topological", 1) and dist_to_pi(c.zak) < 1e-6
    c = classify_phase(LatticeParams(L=2, m=3.0, phi=math.pi / 2))
    assert (c.kind, c.nu) == ("trivial", 0) and dist_to_zero(c.zak) < 1e-6
    c = classify_phase(LatticeParams(L=2, m=2.0, phi=math.pi))
    assert c.kind == "metallic" and c.nu is None and c.zak is None


def test_zak_winding_correspondence_random():
    rng = np.random.default_rng(11)
    checked = 0
    while checked < 100:
        p = LatticeParams(L=2, m=float(rng.uniform(-3, 3)), phi=float(rng.uniform(-TWO_PI, TWO_PI)))
        if min_gap(p) < 1e-3:
            continue
        nu = winding_number(p, 256)
        z = zak_phase(p, "lower", 256)
        if nu != 0:
            assert dist_to_pi(z) < 1e-4
        else:
            assert dist_to_zero(z) < 1e-4
        checked += 1


def test_grid_refinement_stability():
    rng = np.random.default_rng(13)
    checked = 0
    while checked < 10:
        p = LatticeParams(L=2, m=float(rng.uniform(-3, 3)), phi=float(rng.uniform(-TWO_PI, TWO_PI)))
        if min_gap(p) < 0.1:
            continue
        for n_k in (64, 128):
            assert winding_number(p, n_k) == winding_number(p, 2 * n_k)
            assert dist_to_zero(zak_phase(p, "lower", n_k) - zak_phase(p, "lower", 2 * n_k)) < 1e-6
        checked += 1


def test_4pi_periodicity():
    rng = np.random.default_rng(17)
    for _ in range(20):
        m = float(rng.uniform(-3, 3))
        phi = float(rng.uniform(-TWO_PI, TWO_PI))
        a = classify_phase(LatticeParams(L=2, m=m, phi=phi))
        b = classify_phase(LatticeParams(L=2, m=m, phi=phi + 2 * TWO_PI))
        assert (a.kind, a.nu) == (b.kind, b.nu)
        if a.zak is not None:
            assert dist_to_zero(a.zak - b.zak) < 1e-12


def test_scan_single_point_reduces_to_classify():
    diagram = phase_diagram_scan((0.5, 0.5), (math.pi, math.pi), 1)
    cls = classify_phase(LatticeParams(L=2, m=0.5, phi=math.pi))
    only = diagram.grid[0][0]
    assert (only.kind, only.nu) == (cls.kind, cls.nu)
    assert only.zak == pytest.approx(cls.zak)


def test_scan_m_reflection_symmetry():
    diagram = phase_diagram_scan((-2.5, 2.5), (-5.0, 5.0), (11, 9), n_k=128)
    grid = diagram.grid
    for i in range(11):
        for j in range(9):
            a, b = grid[i][j], grid[10 - i][j]
            assert a.kind == b.kind
            if a.nu is not None:
                assert abs(a.nu) == abs(b.nu)


def test_scan_row_major_layout():
    diagram = phase_diagram_scan((-1.0, 1.0), (0.5, 2.5), (3, 4), n_k=64)
    assert len(diagram.grid) == 3 and all(len(row) == 4 for row in diagram.grid)
    assert diagram.m_values[0] == -1.0 and diagram.phi_values[-1] == 2.5
