import { heatColor, hubbardColor, phaseColor, phaseKindColor } from './color';
import { encodePng } from './png';
import { Raster } from './raster';
import {
  Grid2d,
  PhaseDiagramRow,
  SchemaError,
  Spectrum,
  Trajectory,
  readGrid2d,
  readPhaseDiagramCsv,
  readSpectrum,
  readTrajectory,
} from './schema';

export const KINDS = ['phase-diagram', 'caging', 'edge-states', 'hubbard-panel', 'grid2d'] as const;
export type Kind = (typeof KINDS)[number];

export function renderPhaseDiagram(rows: PhaseDiagramRow[]): Buffer {
  const ms = [...new Set(rows.map((r) => r.m))].sort((a, b) => a - b);
  const phis = [...new Set(rows.map((r) => r.phi))].sort((a, b) => a - b);
  if (ms.length * phis.length !== rows.length) {
    throw new SchemaError('rows', `grid is not rectangular: ${rows.length} rows for ${ms.length}x${phis.length}`);
  }
  const mIndex = new Map(ms.map((v, i) => [v, i]));
  const phiIndex = new Map(phis.map((v, i) => [v, i]));
  // phi left to right, m bottom to top (Fig 1b orientation)
  const img = new Raster(phis.length, ms.length);
  for (const row of rows) {
    const x = phiIndex.get(row.phi)!;
    const y = ms.length - 1 - mIndex.get(row.m)!;
    img.set(x, y, phaseKindColor(row.kind, row.nu));
  }
  const scale = Math.max(1, Math.floor(640 / Math.max(phis.length, ms.length)));
  return encode(img.upscaled(scale));
}

export function renderCaging(traj: Trajectory): Buffer {
  if (!traj.amplitudes) {
    throw new SchemaError('amplitudes', 'caging rendering needs single-particle amplitudes');
  }
  // sites across, time running downward; hue carries the local phase
  const img = new Raster(traj.nSites, traj.times.length, [0, 0, 0]);
  for (let t = 0; t < traj.times.length; t++) {
    for (let s = 0; s < traj.nSites; s++) {
      const [re, im] = traj.amplitudes[t][s];
      img.set(s, t, phaseColor(Math.atan2(im, re), traj.occupations[t][s]));
    }
  }
  const fx = 24;
  const fy = Math.max(1, Math.floor(480 / traj.times.length));
  return encode(img.upscaled(fx, fy));
}

export function renderEdgeStates(spec: Spectrum): Buffer {
  const dim = spec.eigenvalues.length;
  const picks = [dim / 2 - 1, dim / 2];
  const barWidth = 8;
  const panelHeight = 120;
  const gap = 12;
  const width = dim * barWidth;
  const img = new Raster(width, panelHeight * 2 + gap);
  picks.forEach((stateIndex, panel) => {
    const baseline = panelHeight * (panel + 1) + gap * panel;
    const vec = spec.eigenvectors[stateIndex];
    for (let s = 0; s < dim; s++) {
      const [re, im] = vec[s];
      const mag = Math.hypot(re, im);
      const h = Math.round(mag * (panelHeight - 8));
      img.fillRect(s * barWidth + 1, baseline - h, barWidth - 2, h, phaseColor(Math.atan2(im, re), 1.0));
    }
    img.fillRect(0, baseline, width, 1, [80, 80, 80]);
  });
  return encode(img.upscaled(2));
}

export function renderHubbardPanel(traj: Trajectory): Buffer {
  if (!traj.doublonness) {
    throw new SchemaError('doublonness', 'hubbard-panel rendering needs the doublonness channel');
  }
  const img = new Raster(traj.nSites, traj.times.length, [0, 0, 0]);
  for (let t = 0; t < traj.times.length; t++) {
    for (let s = 0; s < traj.nSites; s++) {
      img.set(s, t, hubbardColor(traj.occupations[t][s], traj.doublonness[t][s]));
    }
  }
  const fx = 24;
  const fy = Math.max(1, Math.floor(480 / traj.times.length));
  return encode(img.upscaled(fx, fy));
}

export function renderGrid2d(grid: Grid2d): Buffer {
  const [li, lj] = grid.dims;
  const maxFrames = 8;
  const step = Math.max(1, Math.floor((grid.times.length - 1) / (maxFrames - 1)) || 1);
  const frames: number[] = [];
  for (let t = 0; t < grid.times.length && frames.length < maxFrames; t += step) {
    frames.push(t);
  }
  let peak = 0;
  for (const t of frames) {
    for (const row of grid.occupancy[t]) {
      for (const cell of row) {
        for (const v of cell) peak = Math.max(peak, v);
      }
    }
  }
  const cell = 2; // 2x2 zeta subcells per (i, j) site
  const sep = 1;
  const frameW = lj * cell;
  const img = new Raster(frames.length * (frameW + sep) - sep, li * cell, [40, 40, 40]);
  frames.forEach((t, f) => {
    const x0 = f * (frameW + sep);
    for (let i = 0; i < li; i++) {
      for (let j = 0; j < lj; j++) {
        const zetas = grid.occupancy[t][i][j];
        // zeta order (A,A), (A,B), (B,A), (B,B): alpha picks the subrow
        for (let z = 0; z < 4; z++) {
          const dy = Math.floor(z / 2);
          const dx = z % 2;
          const w = peak > 0 ? zetas[z] / peak : 0;
          img.set(x0 + j * cell + dx, (li - 1 - i) * cell + dy, heatColor(w));
        }
      }
    }
  });
  const scale = Math.max(2, Math.floor(960 / img.width));
  return encode(img.upscaled(scale));
}

function encode(img: Raster): Buffer {
  return encodePng(img.width, img.height, img.data);
}

export function render(kind: Kind, inputText: string): Buffer {
  switch (kind) {
    case 'phase-diagram':
      return renderPhaseDiagram(readPhaseDiagramCsv(inputText));
    case 'caging':
      return renderCaging(readTrajectory(parseJson(inputText)));
    case 'edge-states':
      return renderEdgeStates(readSpectrum(parseJson(inputText)));
    case 'hubbard-panel':
      return renderHubbardPanel(readTrajectory(parseJson(inputText)));
    case 'grid2d':
      return renderGrid2d(readGrid2d(parseJson(inputText)));
  }
}

function parseJson(text: string): unknown {
  try {
    return JSON.parse(text);
  } catch (err) {
    throw new SchemaError('(document)', `not valid JSON: ${(err as Error).message}`);
  }
}
