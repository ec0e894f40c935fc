/** Color mappings: complex phase as hue, occupation as brightness.
 *
 * The color wheel is fixed so that phase 0 is red, +2pi/3 is green and
 * -2pi/3 (equivalently +4pi/3) is blue, i.e. hue grows counterclockwise
 * with the phase angle.
 */

export type Rgb = [number, number, number];

export function hsvToRgb(h: number, s: number, v: number): Rgb {
  const hue = ((h % 1) + 1) % 1;
  const i = Math.floor(hue * 6);
  const f = hue * 6 - i;
  const p = v * (1 - s);
  const q = v * (1 - f * s);
  const t = v * (1 - (1 - f) * s);
  let rgb: [number, number, number];
  switch (i % 6) {
    case 0: rgb = [v, t, p]; break;
    case 1: rgb = [q, v, p]; break;
    case 2: rgb = [p, v, t]; break;
    case 3: rgb = [p, q, v]; break;
    case 4: rgb = [t, p, v]; break;
    default: rgb = [v, p, q]; break;
  }
  return [
    Math.round(255 * rgb[0]),
    Math.round(255 * rgb[1]),
    Math.round(255 * rgb[2]),
  ];
}

/** Phase in radians + magnitude in [0, 1] -> hue-encoded color. */
export function phaseColor(phase: number, magnitude: number): Rgb {
  const v = Math.max(0, Math.min(1, magnitude));
  return hsvToRgb(phase / (2 * Math.PI), 1.0, v);
}

/** Two-channel ladder color: hue tracks doublonness (blue pair-free ->
 * red pure pair), brightness tracks occupation (expected 0..2). */
export function hubbardColor(occupation: number, doublonness: number): Rgb {
  const v = Math.max(0, Math.min(1, occupation / 2));
  const d = Math.max(0, Math.min(1, doublonness));
  const hue = (2 / 3) * (1 - d); // 240deg (blue) at D=0 down to 0deg (red) at D=1
  return hsvToRgb(hue, 1.0, v);
}

/** Monotone heat ramp for nonnegative weights in [0, 1] (black-orange-white). */
export function heatColor(w: number): Rgb {
  const x = Math.max(0, Math.min(1, w));
  const r = Math.min(1, 2.5 * x);
  const g = Math.max(0, Math.min(1, 2.0 * x - 0.4));
  const b = Math.max(0, Math.min(1, 4.0 * x - 3.0));
  return [Math.round(255 * r), Math.round(255 * g), Math.round(255 * b)];
}

/** Phase-diagram region palette. */
export function phaseKindColor(kind: string, nu: number | null): Rgb {
  if (kind === 'metallic') return [26, 26, 26];
  if (kind === 'trivial') return [217, 217, 217];
  return nu !== null && nu > 0 ? [217, 95, 2] : [117, 112, 179];
}
