#!/usr/bin/env node
import { readFileSync, writeFileSync } from 'node:fs';

import { KINDS, Kind, render } from './render';
import { SchemaError } from './schema';

function usage(): never {
  console.error(`usage: render <kind> <input> -o <output.png>\nkinds: ${KINDS.join(' | ')}`);
  process.exit(2);
}

export function main(argv: string[]): number {
  const args = [...argv];
  let output: string | null = null;
  const positional: string[] = [];
  while (args.length) {
    const a = args.shift()!;
    if (a === '-o' || a === '--output') {
      output = args.shift() ?? null;
      if (output === null) usage();
    } else if (a === '-h' || a === '--help') {
      usage();
    } else {
      positional.push(a);
    }
  }
  if (positional.length !== 2 || output === null) usage();
  const [kind, input] = positional;
  if (!(KINDS as readonly string[]).includes(kind)) {
    console.error(`render: unknown kind ${JSON.stringify(kind)}; expected ${KINDS.join(' | ')}`);
    return 2;
  }
  let text: string;
  try {
    text = readFileSync(input, 'utf8');
  } catch (err) {
    console.error(`render: cannot read ${input}: ${(err as Error).message}`);
    return 2;
  }
  try {
    writeFileSync(output, render(kind as Kind, text));
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`render: ${err.message}`);
      return 1;
    }
    throw err;
  }
  return 0;
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
