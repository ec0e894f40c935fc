import { Rgb } from './color';

/** RGBA pixel grid with integer upscaling; origin at the top left. */
export class Raster {
  readonly width: number;
  readonly height: number;
  readonly data: Uint8Array;

  constructor(width: number, height: number, fill: Rgb = [255, 255, 255]) {
    this.width = width;
    this.height = height;
    this.data = new Uint8Array(4 * width * height);
    for (let i = 0; i < width * height; i++) {
      this.data[4 * i] = fill[0];
      this.data[4 * i + 1] = fill[1];
      this.data[4 * i + 2] = fill[2];
      this.data[4 * i + 3] = 255;
    }
  }

  set(x: number, y: number, rgb: Rgb): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = 4 * (y * this.width + x);
    this.data[i] = rgb[0];
    this.data[i + 1] = rgb[1];
    this.data[i + 2] = rgb[2];
    this.data[i + 3] = 255;
  }

  fillRect(x0: number, y0: number, w: number, h: number, rgb: Rgb): void {
    for (let y = y0; y < y0 + h; y++) {
      for (let x = x0; x < x0 + w; x++) {
        this.set(x, y, rgb);
      }
    }
  }

  upscaled(fx: number, fy: number = fx): Raster {
    const out = new Raster(this.width * fx, this.height * fy);
    for (let y = 0; y < out.height; y++) {
      const sy = Math.floor(y / fy);
      for (let x = 0; x < out.width; x++) {
        const sx = Math.floor(x / fx);
        const i = 4 * (sy * this.width + sx);
        out.set(x, y, [this.data[i], this.data[i + 1], this.data[i + 2]]);
      }
    }
    return out;
  }
}
