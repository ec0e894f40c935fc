"""Command-line interface: every computation as a subcommand with reproducible output.

Exit codes: 0 ok, 2 usage/validation error, 3 domain error (e.g. metallic
system). Identical invocations produce byte-identical output files.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from pathlib import Path

import numpy as np

from . import dynamics, effective, hubbard, mapping2d, states, topology
from ._io import format_float, json_dumps, write_csv, write_json
from .errors import CreutzError
from .lattice import (
    LatticeParams,
    single_particle_hamiltonian,
    site_index,
    site_name,
)

_ANGLE_RE = re.compile(r"^([+-]?)(\d+(?:\.\d*)?)?pi(?:/(\d+(?:\.\d*)?))?$")


def parse_angle(text: str) -> float:
    """Radians from 'pi', 'pi/2', '-3pi/2', or a decimal literal."""
    s = str(text).strip().replace(" ", "")
    m = _ANGLE_RE.match(s)
    if m:
        sign = -1.0 if m.group(1) == "-" else 1.0
        coef = float(m.group(2)) if m.group(2) else 1.0
        div = float(m.group(3)) if m.group(3) else 1.0
        return sign * coef * math.pi / div
    try:
        return float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse angle {text!r}") from None


def _read_config_file(path: str) -> dict:
    cfg = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        cfg[key] = value
    return cfg


_PARAM_PARSERS = {
    "L": int,
    "J": float,
    "m": float,
    "phi": parse_angle,
    "U": float,
    "bc": str,
}


def _resolve(args, cfg: dict, name: str, default, parser=None):
    value = getattr(args, name.replace("-", "_"), None)
    if value is not None:
        return value
    if name in cfg:
        parse = parser or _PARAM_PARSERS.get(name, str)
        return parse(cfg[name])
    return default


def _build_params(args, cfg: dict) -> LatticeParams:
    return LatticeParams(
        L=_resolve(args, cfg, "L", 6, int),
        J=_resolve(args, cfg, "J", 1.0, float),
        m=_resolve(args, cfg, "m", 0.0, float),
        phi=_resolve(args, cfg, "phi", 0.0, parse_angle),
        U=_resolve(args, cfg, "U", 0.0, float),
        boundary=_resolve(args, cfg, "bc", "open", str),
    )


def _params_dict(p: LatticeParams) -> dict:
    return {"L": p.L, "J": p.J, "m": p.m, "phi": p.phi, "U": p.U, "boundary": p.boundary}


def _parse_site(token: str, rest: list[str], p: LatticeParams) -> tuple[int, str]:
    j_text = token.split(":", 1)[1]
    if not rest:
        raise ValueError(f"descriptor {token!r} needs a leg, e.g. site:3,A")
    leg = rest.pop(0).strip().upper()
    j = int(j_text)
    if not 1 <= j <= p.L:
        raise ValueError(f"rung {j} outside 1..{p.L}")
    if leg not in ("A", "B"):
        raise ValueError(f"leg must be A or B, got {leg!r}")
    return j, leg


def _read_amplitude_file(path: str, expected: int) -> np.ndarray:
    import json

    data = json.loads(Path(path).read_text())
    if isinstance(data, dict):
        data = data["amplitudes"]
    amps = np.array([complex(re_, im_) for re_, im_ in data])
    if amps.shape[0] != expected:
        raise ValueError(f"{path}: expected {expected} amplitudes, got {amps.shape[0]}")
    norm = np.linalg.norm(amps)
    if abs(norm - 1.0) > 1e-8:
        raise ValueError(f"{path}: amplitudes are not normalized (|psi| = {norm})")
    return amps


def parse_single_init(descriptor: str, p: LatticeParams) -> np.ndarray:
    """Single-particle initial state from `site:j,leg` | `edge:left|right` | `file:path`."""
    d = descriptor.strip()
    if d.startswith("site:"):
        tokens = d.split(",")
        j, leg = _parse_site(tokens[0], tokens[1:], p)
        psi = np.zeros(p.n_sites, dtype=complex)
        psi[site_index(j, leg)] = 1.0
        return psi
    if d.startswith("edge:"):
        return states.edge_state(p, d.split(":", 1)[1])
    if d.startswith("file:"):
        return _read_amplitude_file(d.split(":", 1)[1], p.n_sites)
    raise ValueError(f"unknown single-particle initial state {descriptor!r}")


def _single_factor(tokens: list[str], p: LatticeParams) -> np.ndarray:
    token = tokens.pop(0).strip()
    if token == "edgeL":
        return states.edge_state(p, "left")
    if token == "edgeR":
        return states.edge_state(p, "right")
    if token.startswith("site:"):
        j, leg = _parse_site(token, tokens, p)
        psi = np.zeros(p.n_sites, dtype=complex)
        psi[site_index(j, leg)] = 1.0
        return psi
    raise ValueError(f"unknown product factor {token!r}")


def parse_two_init(descriptor: str, p: LatticeParams, basis: hubbard.TwoParticleBasis) -> np.ndarray:
    """Two-particle Fock state from the descriptor grammar.

    `doublon:j,leg` | `doublon-edge:left|right` | `noon` |
    `product:<factor>,<factor>` with factors edgeL | edgeR | site:j,leg |
    `file:path` with Fock amplitudes.
    """
    d = descriptor.strip()
    if d.startswith("doublon:"):
        tokens = d.split(",")
        j, leg = _parse_site(tokens[0].replace("doublon:", "site:"), tokens[1:], p)
        psi = np.zeros(basis.size, dtype=complex)
        psi[basis.index(site_index(j, leg), site_index(j, leg))] = 1.0
        return psi
    if d.startswith("doublon-edge:"):
        return states.doublon_edge_state(p, d.split(":", 1)[1], basis)
    if d == "noon":
        return states.noon_state(p, basis)
    if d.startswith("product:"):
        tokens = d.split(":", 1)[1].split(",")
        chi = _single_factor(tokens, p)
        xi = _single_factor(tokens, p)
        if tokens:
            raise ValueError(f"trailing tokens in product descriptor: {tokens}")
        return hubbard.product_state(basis, chi, xi)
    if d.startswith("file:"):
        return _read_amplitude_file(d.split(":", 1)[1], basis.size)
    raise ValueError(f"unknown two-particle initial state {descriptor!r}")


def parse_doublon_init(descriptor: str, p: LatticeParams) -> np.ndarray:
    """Doublon-subspace (length 2L) state for the effective-model comparison."""
    d = descriptor.strip()
    if d.startswith("doublon:"):
        tokens = d.split(",")
        j, leg = _parse_site(tokens[0].replace("doublon:", "site:"), tokens[1:], p)
        psi = np.zeros(p.n_sites, dtype=complex)
        psi[site_index(j, leg)] = 1.0
        return psi
    if d.startswith("doublon-edge:"):
        side = d.split(":", 1)[1]
        basis = hubbard.TwoParticleBasis(p.L)
        fock = states.doublon_edge_state(p, side, basis)
        return fock[basis.doublon_indices]
    if d.startswith("file:"):
        return _read_amplitude_file(d.split(":", 1)[1], p.n_sites)
    raise ValueError(f"unknown doublon initial state {descriptor!r}")


def _complex_pairs(vec: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in vec]


def _emit(args, payload: dict) -> None:
    if getattr(args, "output", None):
        write_json(args.output, payload)
    else:
        sys.stdout.write(json_dumps(payload))


# ---------------------------------------------------------------- subcommands


def _cmd_spectrum(args, cfg) -> int:
    p = _build_params(args, cfg)
    if args.model == "single":
        H = single_particle_hamiltonian(p)
    elif args.model == "two":
        H = hubbard.build_two_particle_hamiltonian(p)
    elif args.model == "effective":
        H = effective.build_effective_doublon_hamiltonian(p)
    else:
        H = mapping2d.build_2d_hamiltonian(p)
    if args.eigenvectors:
        w, V = np.linalg.eigh(H)
    else:
        w, V = np.linalg.eigvalsh(H), None
    payload = {
        "command": "spectrum",
        "model": args.model,
        "params": _params_dict(p),
        "dimension": int(H.shape[0]),
        "eigenvalues": [float(x) for x in w],
    }
    if V is not None:
        payload["eigenvectors"] = [_complex_pairs(V[:, i]) for i in range(V.shape[1])]
    _emit(args, payload)
    return 0


def _cmd_zak(args, cfg) -> int:
    p = _build_params(args, cfg)
    zak = topology.zak_phase(p, band=args.band, n_k=args.nk)
    nu = topology.winding_number(p, n_k=args.nk)
    payload = {
        "command": "zak",
        "params": _params_dict(p),
        "band": args.band,
        "n_k": args.nk,
        "zak": zak,
        "winding": nu,
        "min_gap": topology.min_gap(p),
    }
    _emit(args, payload)
    return 0


def _cmd_phase_diagram(args, cfg) -> int:
    p = _build_params(args, cfg)
    diagram = topology.phase_diagram_scan(
        (args.m_min, args.m_max),
        (args.phi_min, args.phi_max),
        args.res,
        J=p.J,
        n_k=args.nk,
    )
    rows = []
    for m, row in zip(diagram.m_values, diagram.grid):
        for phi, cls in zip(diagram.phi_values, row):
            rows.append((float(m), float(phi), cls.kind, cls.nu, cls.zak))
    if args.output:
        write_csv(args.output, ("m", "phi", "kind", "nu", "zak"), rows)
    else:
        sys.stdout.write("m,phi,kind,nu,zak\n")
        for row in rows:
            sys.stdout.write(
                ",".join("" if v is None else (format_float(v) if isinstance(v, float) else str(v)) for v in row)
                + "\n"
            )
    return 0


def _support_set(traj: dynamics.Trajectory, eps: float) -> list[str]:
    sites = dynamics.cage_support(traj, eps)
    return sorted(site_name(site_index(j, leg)) for j, leg in sites)


def _times(args) -> np.ndarray:
    if args.samples < 1:
        raise ValueError("--samples must be >= 1")
    if args.tmax <= 0:
        raise ValueError("--tmax must be positive")
    return np.linspace(0.0, args.tmax, args.samples + 1)


def _cmd_evolve(args, cfg) -> int:
    p = _build_params(args, cfg)
    times = _times(args)
    if args.space == "2d":
        if args.model != "two":
            raise ValueError("--space 2d needs --model two")
        basis = hubbard.TwoParticleBasis(p.L)
        fock0 = parse_two_init(args.init, p, basis)
        lam0 = hubbard.fock_to_first_quant(fock0, basis)
        traj2 = mapping2d.evolve_2d(p, lam0, times)
        payload = {
            "command": "evolve",
            "model": "two",
            "space": "2d",
            "params": _params_dict(p),
            "init": args.init,
            "times": [float(t) for t in traj2.times],
            "dims": [p.L, p.L, 4],
            "occupancy": mapping2d.occupancy_grid(traj2),
            "symmetry_defect": [float(x) for x in traj2.symmetry_defect],
        }
        _emit(args, payload)
        return 0
    if args.model == "single":
        psi0 = parse_single_init(args.init, p)
        traj = dynamics.evolve(
            single_particle_hamiltonian(p), psi0, times, params=p, initial_label=args.init
        )
    else:
        basis = hubbard.TwoParticleBasis(p.L)
        psi0 = parse_two_init(args.init, p, basis)
        traj = hubbard.two_particle_evolve(p, psi0, times, basis, initial_label=args.init)
    payload = {
        "command": "evolve",
        "model": args.model,
        "space": "site",
        "params": _params_dict(p),
        "init": args.init,
        "support_eps": args.support_eps,
        "times": [float(t) for t in traj.times],
        "occupations": traj.occupations,
        "support_set": _support_set(traj, args.support_eps),
    }
    if traj.doublonness is not None:
        payload["doublonness"] = traj.doublonness
    else:
        # site-resolved complex amplitudes feed the phase-as-hue renderings
        payload["amplitudes"] = [_complex_pairs(s) for s in traj.states]
    _emit(args, payload)
    if args.csv:
        header = ("t", "site", "occupation") + (
            ("doublonness",) if traj.doublonness is not None else ()
        )
        rows = []
        for i, t in enumerate(traj.times):
            for s in range(traj.n_sites):
                row = [float(t), site_name(s), float(traj.occupations[i, s])]
                if traj.doublonness is not None:
                    row.append(float(traj.doublonness[i, s]))
                rows.append(row)
        write_csv(args.csv, header, rows)
    return 0


def _cmd_effective_compare(args, cfg) -> int:
    p = _build_params(args, cfg)
    if not p.U > 0:
        raise ValueError("effective comparison needs U > 0")
    psi0 = parse_doublon_init(args.init, p)
    tmax = args.tmax if args.tmax is not None else 10.0 * p.U / p.J**2
    times = np.linspace(0.0, tmax, args.samples + 1)
    comp = effective.compare_effective_vs_full(p, psi0, times)
    rows = [
        (float(t), float(f), float(leak))
        for t, f, leak in zip(comp.times, comp.fidelity, comp.leakage)
    ]
    if args.output:
        write_csv(args.output, ("t", "fidelity", "leakage"), rows)
    else:
        sys.stdout.write("t,fidelity,leakage\n")
        for row in rows:
            sys.stdout.write(",".join(format_float(v) for v in row) + "\n")
    return 0


def _cmd_map2d_check(args, cfg) -> int:
    p = _build_params(args, cfg)
    deviation = mapping2d.symmetric_sector_spectrum_check(p)
    basis = hubbard.TwoParticleBasis(p.L)
    payload = {
        "command": "map2d-check",
        "params": _params_dict(p),
        "dimension_2d": p.n_sites**2,
        "dimension_fock": basis.size,
        "max_spectrum_deviation": deviation,
    }
    _emit(args, payload)
    return 0


def _cmd_layout(args, cfg) -> int:
    p = _build_params(args, cfg)
    layout = mapping2d.zeta_layout(p, zeta_periodic=args.zeta_periodic)
    if args.output:
        rows = [
            (
                "-".join(str(x) for x in bond.site_a),
                "-".join(str(x) for x in bond.site_b),
                float(bond.amplitude.real),
                float(bond.amplitude.imag),
                bond.kind,
            )
            for bond in layout.bonds
        ]
        write_csv(args.output, ("site_a", "site_b", "re", "im", "kind"), rows)
    summary = {
        "command": "layout",
        "params": _params_dict(p),
        "zeta_periodic": layout.zeta_periodic,
        "n_bonds": len(layout.bonds),
        "nonlocal_bonds_per_cell": layout.nonlocal_bonds_per_cell,
    }
    sys.stdout.write(json_dumps(summary))
    return 0


# --------------------------------------------------------------------- parser


def _add_param_options(sub):
    sub.add_argument("--L", type=int, default=None, help="number of rungs (default 6)")
    sub.add_argument("--J", type=float, default=None, help="hopping magnitude (default 1)")
    sub.add_argument("--m", type=float, default=None, help="rung hopping (default 0)")
    sub.add_argument("--phi", type=parse_angle, default=None, help="Peierls phase, e.g. pi/2")
    sub.add_argument("--U", type=float, default=None, help="Hubbard repulsion (default 0)")
    sub.add_argument("--bc", choices=("open", "periodic"), default=None, help="boundary")
    sub.add_argument("--config", default=None, help="key=value file with defaults")
    sub.add_argument("-o", "--output", default=None, help="output file (stdout if omitted)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="creutz",
        description="Creutz and Creutz-Hubbard ladder simulations",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("spectrum", help="eigenvalues of a model Hamiltonian")
    _add_param_options(sub)
    sub.add_argument("--model", choices=("single", "two", "effective", "map2d"), default="single")
    sub.add_argument("--eigenvectors", action="store_true", help="include eigenvectors")
    sub.set_defaults(func=_cmd_spectrum)

    sub = subs.add_parser("zak", help="Zak phase and winding number")
    _add_param_options(sub)
    sub.add_argument("--band", choices=("lower", "upper"), default="lower")
    sub.add_argument("--nk", type=int, default=256, help="Wilson-loop grid size")
    sub.set_defaults(func=_cmd_zak)

    sub = subs.add_parser("phase-diagram", help="classification raster over (m, phi)")
    _add_param_options(sub)
    sub.add_argument("--res", type=int, default=81, help="grid resolution per axis")
    sub.add_argument("--m-min", type=float, default=-3.0)
    sub.add_argument("--m-max", type=float, default=3.0)
    sub.add_argument("--phi-min", type=parse_angle, default=-2.0 * math.pi)
    sub.add_argument("--phi-max", type=parse_angle, default=2.0 * math.pi)
    sub.add_argument("--nk", type=int, default=256)
    sub.set_defaults(func=_cmd_phase_diagram)

    sub = subs.add_parser("evolve", help="exact time evolution")
    _add_param_options(sub)
    sub.add_argument("--model", choices=("single", "two"), default="single")
    sub.add_argument("--space", choices=("site", "2d"), default="site")
    sub.add_argument("--init", required=True, help="initial state descriptor")
    sub.add_argument("--tmax", type=float, default=10.0)
    sub.add_argument("--samples", type=int, default=1000, help="number of time steps")
    sub.add_argument("--support-eps", type=float, default=1e-8)
    sub.add_argument("--csv", default=None, help="also write per-(t,site) CSV")
    sub.set_defaults(func=_cmd_evolve)

    sub = subs.add_parser("effective-compare", help="effective vs full doublon dynamics")
    _add_param_options(sub)
    sub.add_argument("--init", default="doublon:3,A")
    sub.add_argument("--tmax", type=float, default=None, help="default 10 U/J^2")
    sub.add_argument("--samples", type=int, default=400)
    sub.set_defaults(func=_cmd_effective_compare)

    sub = subs.add_parser("map2d-check", help="symmetric-sector spectrum equivalence")
    _add_param_options(sub)
    sub.set_defaults(func=_cmd_map2d_check)

    sub = subs.add_parser("layout", help="quasi-2D bond list in (i, j, zeta) coordinates")
    _add_param_options(sub)
    sub.add_argument("--zeta-periodic", action="store_true")
    sub.set_defaults(func=_cmd_layout)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = {}
    if getattr(args, "config", None):
        try:
            cfg = _read_config_file(args.config)
        except OSError as exc:
            print(f"creutz: {exc}", file=sys.stderr)
            return 2
    try:
        return args.func(args, cfg)
    except CreutzError as exc:
        print(f"creutz: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError, KeyError) as exc:
        print(f"creutz: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
