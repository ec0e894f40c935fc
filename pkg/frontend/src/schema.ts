/** Readers for the simulation outputs. Rendering never recomputes physics;
 * these only parse and validate the emitted files, reporting the first
 * offending field on mismatch. */

export class SchemaError extends Error {
  readonly field: string;

  constructor(field: string, message: string) {
    super(`schema mismatch at ${field}: ${message}`);
    this.field = field;
  }
}

export interface PhaseDiagramRow {
  m: number;
  phi: number;
  kind: 'trivial' | 'topological' | 'metallic';
  nu: number | null;
  zak: number | null;
}

export interface Trajectory {
  times: number[];
  occupations: number[][];
  amplitudes: [number, number][][] | null;
  doublonness: number[][] | null;
  nSites: number;
}

export interface Spectrum {
  eigenvalues: number[];
  eigenvectors: [number, number][][];
}

export interface Grid2d {
  times: number[];
  dims: [number, number, number];
  occupancy: number[][][][];
}

function asNumber(value: unknown, field: string): number {
  if (typeof value !== 'number' || !Number.isFinite(value)) {
    throw new SchemaError(field, `expected a finite number, got ${JSON.stringify(value)}`);
  }
  return value;
}

function asArray(value: unknown, field: string): unknown[] {
  if (!Array.isArray(value)) {
    throw new SchemaError(field, 'expected an array');
  }
  return value;
}

function numberMatrix(value: unknown, field: string, rows: number, cols: number): number[][] {
  const outer = asArray(value, field);
  if (outer.length !== rows) {
    throw new SchemaError(field, `expected ${rows} rows, got ${outer.length}`);
  }
  return outer.map((row, i) => {
    const r = asArray(row, `${field}[${i}]`);
    if (r.length !== cols) {
      throw new SchemaError(`${field}[${i}]`, `expected ${cols} entries, got ${r.length}`);
    }
    return r.map((v, j) => asNumber(v, `${field}[${i}][${j}]`));
  });
}

export function readPhaseDiagramCsv(text: string): PhaseDiagramRow[] {
  const lines = text.trim().split(/\r?\n/);
  if (lines[0] !== 'm,phi,kind,nu,zak') {
    throw new SchemaError('header', `expected "m,phi,kind,nu,zak", got ${JSON.stringify(lines[0])}`);
  }
  return lines.slice(1).map((line, i) => {
    const parts = line.split(',');
    if (parts.length !== 5) {
      throw new SchemaError(`row ${i + 1}`, `expected 5 columns, got ${parts.length}`);
    }
    const kind = parts[2];
    if (kind !== 'trivial' && kind !== 'topological' && kind !== 'metallic') {
      throw new SchemaError(`row ${i + 1}.kind`, `unknown kind ${JSON.stringify(kind)}`);
    }
    const m = Number(parts[0]);
    const phi = Number(parts[1]);
    if (!Number.isFinite(m)) throw new SchemaError(`row ${i + 1}.m`, `not a number: ${parts[0]}`);
    if (!Number.isFinite(phi)) throw new SchemaError(`row ${i + 1}.phi`, `not a number: ${parts[1]}`);
    let nu: number | null = null;
    let zak: number | null = null;
    if (kind !== 'metallic') {
      nu = Number(parts[3]);
      zak = Number(parts[4]);
      if (!Number.isInteger(nu)) throw new SchemaError(`row ${i + 1}.nu`, `not an integer: ${parts[3]}`);
      if (!Number.isFinite(zak)) throw new SchemaError(`row ${i + 1}.zak`, `not a number: ${parts[4]}`);
    }
    return { m, phi, kind, nu, zak };
  });
}

export function readTrajectory(json: unknown): Trajectory {
  const obj = json as Record<string, unknown>;
  const times = asArray(obj.times, 'times').map((v, i) => asNumber(v, `times[${i}]`));
  const first = asArray(obj.occupations, 'occupations');
  if (first.length !== times.length) {
    throw new SchemaError('occupations', `expected ${times.length} rows, got ${first.length}`);
  }
  const nSites = asArray(first[0], 'occupations[0]').length;
  const occupations = numberMatrix(obj.occupations, 'occupations', times.length, nSites);

  let amplitudes: [number, number][][] | null = null;
  if (obj.amplitudes !== undefined) {
    const amps = asArray(obj.amplitudes, 'amplitudes');
    if (amps.length !== times.length) {
      throw new SchemaError('amplitudes', `expected ${times.length} rows, got ${amps.length}`);
    }
    amplitudes = amps.map((row, i) => {
      const r = asArray(row, `amplitudes[${i}]`);
      if (r.length !== nSites) {
        throw new SchemaError(`amplitudes[${i}]`, `expected ${nSites} entries, got ${r.length}`);
      }
      return r.map((pair, j) => {
        const p = asArray(pair, `amplitudes[${i}][${j}]`);
        if (p.length !== 2) {
          throw new SchemaError(`amplitudes[${i}][${j}]`, 'expected an [re, im] pair');
        }
        return [
          asNumber(p[0], `amplitudes[${i}][${j}][0]`),
          asNumber(p[1], `amplitudes[${i}][${j}][1]`),
        ] as [number, number];
      });
    });
  }
  const doublonness =
    obj.doublonness === undefined
      ? null
      : numberMatrix(obj.doublonness, 'doublonness', times.length, nSites);
  return { times, occupations, amplitudes, doublonness, nSites };
}

export function readSpectrum(json: unknown): Spectrum {
  const obj = json as Record<string, unknown>;
  const eigenvalues = asArray(obj.eigenvalues, 'eigenvalues').map((v, i) =>
    asNumber(v, `eigenvalues[${i}]`)
  );
  if (obj.eigenvectors === undefined) {
    throw new SchemaError('eigenvectors', 'missing (rerun spectrum with --eigenvectors)');
  }
  const vecs = asArray(obj.eigenvectors, 'eigenvectors');
  if (vecs.length !== eigenvalues.length) {
    throw new SchemaError('eigenvectors', `expected ${eigenvalues.length} vectors, got ${vecs.length}`);
  }
  const dim = eigenvalues.length;
  const eigenvectors = vecs.map((vec, i) => {
    const v = asArray(vec, `eigenvectors[${i}]`);
    if (v.length !== dim) {
      throw new SchemaError(`eigenvectors[${i}]`, `expected ${dim} components, got ${v.length}`);
    }
    return v.map((pair, j) => {
      const p = asArray(pair, `eigenvectors[${i}][${j}]`);
      if (p.length !== 2) {
        throw new SchemaError(`eigenvectors[${i}][${j}]`, 'expected an [re, im] pair');
      }
      return [
        asNumber(p[0], `eigenvectors[${i}][${j}][0]`),
        asNumber(p[1], `eigenvectors[${i}][${j}][1]`),
      ] as [number, number];
    });
  });
  return { eigenvalues, eigenvectors };
}

export function readGrid2d(json: unknown): Grid2d {
  const obj = json as Record<string, unknown>;
  const times = asArray(obj.times, 'times').map((v, i) => asNumber(v, `times[${i}]`));
  const dims = asArray(obj.dims, 'dims');
  if (dims.length !== 3) {
    throw new SchemaError('dims', `expected [L, L, 4], got length ${dims.length}`);
  }
  const [li, lj, lz] = dims.map((v, i) => asNumber(v, `dims[${i}]`));
  if (lz !== 4) {
    throw new SchemaError('dims[2]', `zeta dimension must be 4, got ${lz}`);
  }
  const occ = asArray(obj.occupancy, 'occupancy');
  if (occ.length !== times.length) {
    throw new SchemaError('occupancy', `expected ${times.length} frames, got ${occ.length}`);
  }
  const occupancy = occ.map((frame, t) => {
    const fi = asArray(frame, `occupancy[${t}]`);
    if (fi.length !== li) {
      throw new SchemaError(`occupancy[${t}]`, `expected ${li} rows, got ${fi.length}`);
    }
    return fi.map((row, i) => {
      const rj = asArray(row, `occupancy[${t}][${i}]`);
      if (rj.length !== lj) {
        throw new SchemaError(`occupancy[${t}][${i}]`, `expected ${lj} entries, got ${rj.length}`);
      }
      return rj.map((cell, j) => {
        const cz = asArray(cell, `occupancy[${t}][${i}][${j}]`);
        if (cz.length !== 4) {
          throw new SchemaError(`occupancy[${t}][${i}][${j}]`, 'expected 4 zeta entries');
        }
        return cz.map((v, z) => asNumber(v, `occupancy[${t}][${i}][${j}][${z}]`));
      });
    });
  });
  return { times, dims: [li, lj, lz] as [number, number, number], occupancy };
}
