import { deflateSync, inflateSync } from 'node:zlib';

/** Minimal deterministic PNG encoder (8-bit RGBA, no ancillary chunks). */

const SIGNATURE = Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);

const CRC_TABLE = new Uint32Array(256);
for (let n = 0; n < 256; n++) {
  let c = n;
  for (let k = 0; k < 8; k++) {
    c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
  }
  CRC_TABLE[n] = c >>> 0;
}

function crc32(buf: Buffer): number {
  let c = 0xffffffff;
  for (let i = 0; i < buf.length; i++) {
    c = CRC_TABLE[(c ^ buf[i]) & 0xff] ^ (c >>> 8);
  }
  return (c ^ 0xffffffff) >>> 0;
}

function chunk(type: string, data: Buffer): Buffer {
  const header = Buffer.alloc(4);
  header.writeUInt32BE(data.length, 0);
  const body = Buffer.concat([Buffer.from(type, 'ascii'), data]);
  const crc = Buffer.alloc(4);
  crc.writeUInt32BE(crc32(body), 0);
  return Buffer.concat([header, body, crc]);
}

export function encodePng(width: number, height: number, rgba: Uint8Array): Buffer {
  if (width <= 0 || height <= 0 || !Number.isInteger(width) || !Number.isInteger(height)) {
    throw new Error(`invalid image size ${width}x${height}`);
  }
  if (rgba.length !== 4 * width * height) {
    throw new Error(`pixel buffer has ${rgba.length} bytes, expected ${4 * width * height}`);
  }
  const ihdr = Buffer.alloc(13);
  ihdr.writeUInt32BE(width, 0);
  ihdr.writeUInt32BE(height, 4);
  ihdr[8] = 8; // bit depth
  ihdr[9] = 6; // RGBA
  // compression/filter/interlace all 0

  // one filter byte (0 = none) per scanline
  const raw = Buffer.alloc((4 * width + 1) * height);
  for (let y = 0; y < height; y++) {
    const rowStart = y * (4 * width + 1);
    raw[rowStart] = 0;
    raw.set(rgba.subarray(y * 4 * width, (y + 1) * 4 * width), rowStart + 1);
  }
  return Buffer.concat([
    SIGNATURE,
    chunk('IHDR', ihdr),
    chunk('IDAT', deflateSync(raw, { level: 9 })),
    chunk('IEND', Buffer.alloc(0)),
  ]);
}

/** Header fields of an encoded PNG; used by the tests. */
export function readPngHeader(png: Buffer): { width: number; height: number } {
  if (!png.subarray(0, 8).equals(SIGNATURE)) {
    throw new Error('not a PNG');
  }
  return { width: png.readUInt32BE(16), height: png.readUInt32BE(20) };
}

/** Decode a PNG produced by encodePng (8-bit RGBA, filter 0 scanlines). */
export function decodePngPixels(png: Buffer): { width: number; height: number; rgba: Uint8Array } {
  const { width, height } = readPngHeader(png);
  if (png[24] !== 8 || png[25] !== 6) {
    throw new Error('decoder only handles 8-bit RGBA');
  }
  const idatParts: Buffer[] = [];
  let offset = 8;
  while (offset < png.length) {
    const length = png.readUInt32BE(offset);
    const type = png.subarray(offset + 4, offset + 8).toString('ascii');
    if (type === 'IDAT') {
      idatParts.push(png.subarray(offset + 8, offset + 8 + length));
    }
    offset += 12 + length;
  }
  const raw = inflateSync(Buffer.concat(idatParts));
  const rgba = new Uint8Array(4 * width * height);
  const stride = 4 * width + 1;
  for (let y = 0; y < height; y++) {
    if (raw[y * stride] !== 0) {
      throw new Error(`unexpected filter ${raw[y * stride]} on row ${y}`);
    }
    rgba.set(raw.subarray(y * stride + 1, (y + 1) * stride), y * 4 * width);
  }
  return { width, height, rgba };
}
