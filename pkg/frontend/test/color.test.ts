import assert from 'node:assert/strict';
import { test } from 'node:test';

import { heatColor, hsvToRgb, hubbardColor, phaseColor, phaseKindColor } from '../src/color';

test('zero phase maps to red at full magnitude', () => {
  assert.deepEqual(phaseColor(0, 1), [255, 0, 0]);
});

test('phase wheel lands on green and blue at the thirds', () => {
  assert.deepEqual(phaseColor((2 * Math.PI) / 3, 1), [0, 255, 0]);
  assert.deepEqual(phaseColor((4 * Math.PI) / 3, 1), [0, 0, 255]);
  // wraps modulo 2pi
  assert.deepEqual(phaseColor((2 * Math.PI) / 3 - 2 * Math.PI, 1), [0, 255, 0]);
});

test('zero magnitude is black regardless of phase', () => {
  assert.deepEqual(phaseColor(1.234, 0), [0, 0, 0]);
  assert.deepEqual(phaseColor(1.234, -0.5), [0, 0, 0]);
});

test('hsv basics', () => {
  assert.deepEqual(hsvToRgb(0, 0, 1), [255, 255, 255]);
  assert.deepEqual(hsvToRgb(0.5, 1, 1), [0, 255, 255]);
});

test('hubbard color: brightness from occupation, hue from doublonness', () => {
  assert.deepEqual(hubbardColor(2, 1), [255, 0, 0]); // bright pure pair: red
  assert.deepEqual(hubbardColor(2, 0), [0, 0, 255]); // bright pair-free: blue
  assert.deepEqual(hubbardColor(0, 0.7), [0, 0, 0]); // empty site: dark
});

test('heat ramp is monotone in each channel', () => {
  let prev = heatColor(0);
  for (let i = 1; i <= 10; i++) {
    const next = heatColor(i / 10);
    assert.ok(next[0] >= prev[0] && next[1] >= prev[1] && next[2] >= prev[2]);
    prev = next;
  }
  assert.deepEqual(heatColor(0), [0, 0, 0]);
  assert.deepEqual(heatColor(1), [255, 255, 255]);
});

test('phase diagram palette separates the four regions', () => {
  const colors = [
    phaseKindColor('metallic', null),
    phaseKindColor('trivial', 0),
    phaseKindColor('topological', 1),
    phaseKindColor('topological', -1),
  ];
  const keys = new Set(colors.map((c) => c.join(',')));
  assert.equal(keys.size, 4);
});
