/**
 * Client-side double-word validation, mirroring the engine's check so the
 * form can flag bad input before any request goes out.
 *
 * Everything runs on small integer vectors: a word is reduced iff every
 * prefix sends the next simple root to a positive root, and positivity is
 * decided by Cramer determinants against the Cartan matrix (exact for the
 * ranks the interactive guard admits).
 */

const RANK_GUARD = 4;

export function cartanMatrix(type: string): number[][] | null {
  const kind = type.trim().toUpperCase().replace("_", "");
  const letter = kind[0];
  const rank = Number(kind.slice(1));
  if (!letter || !Number.isInteger(rank)) return null;
  if (rank < 1 || rank > RANK_GUARD) return null;
  const a: number[][] = Array.from({ length: rank }, (_, i) =>
    Array.from({ length: rank }, (_, j) => (i === j ? 2 : 0)),
  );
  const link = (i: number, j: number, aij = -1, aji = -1) => {
    a[i][j] = aij;
    a[j][i] = aji;
  };
  switch (letter) {
    case "A":
      for (let i = 0; i + 1 < rank; i++) link(i, i + 1);
      return a;
    case "B":
      if (rank < 2) return null;
      for (let i = 0; i + 2 < rank; i++) link(i, i + 1);
      link(rank - 2, rank - 1, -1, -2);
      return a;
    case "C":
      if (rank < 2) return null;
      for (let i = 0; i + 2 < rank; i++) link(i, i + 1);
      link(rank - 2, rank - 1, -2, -1);
      return a;
    case "D":
      if (rank !== 4) return null;
      link(0, 1);
      link(1, 2);
      link(1, 3);
      return a;
    case "F":
      if (rank !== 4) return null;
      link(0, 1);
      link(1, 2, -1, -2);
      link(2, 3);
      return a;
    case "G":
      if (rank !== 2) return null;
      link(0, 1, -1, -3);
      return a;
    default:
      return null;
  }
}

function det(m: number[][]): number {
  const n = m.length;
  if (n === 1) return m[0][0];
  let total = 0;
  for (let c = 0; c < n; c++) {
    if (m[0][c] === 0) continue;
    const minor = m.slice(1).map((row) => row.filter((_, j) => j !== c));
    total += (c % 2 ? -1 : 1) * m[0][c] * det(minor);
  }
  return total;
}

/** Sign pattern of the root coordinates of a weight known to be a root. */
function rootCoordSigns(a: number[][], weight: number[]): number[] {
  // solve A r = weight by Cramer; det(A) > 0 for finite Cartan matrices,
  // so sign(r_i) = sign(det_i)
  const n = a.length;
  const signs: number[] = [];
  for (let i = 0; i < n; i++) {
    const m = a.map((row, r) => row.map((v, c) => (c === i ? weight[r] : v)));
    signs.push(Math.sign(det(m)));
  }
  return signs;
}

class WeylState {
  /** columns[t] = image of the fundamental weight t under the product so far */
  private columns: number[][];

  constructor(private a: number[][]) {
    const n = a.length;
    this.columns = Array.from({ length: n }, (_, t) =>
      Array.from({ length: n }, (_, r) => (r === t ? 1 : 0)),
    );
  }

  /** image of alpha_s under the current element */
  private imageOfSimpleRoot(s: number): number[] {
    const n = this.a.length;
    const out = new Array(n).fill(0);
    for (let t = 0; t < n; t++) {
      const c = this.a[t][s];
      if (!c) continue;
      for (let r = 0; r < n; r++) out[r] += c * this.columns[t][r];
    }
    return out;
  }

  /** whether right-multiplying by r_s increases the length */
  ascends(s: number): boolean {
    return rootCoordSigns(this.a, this.imageOfSimpleRoot(s)).every((x) => x >= 0);
  }

  rightMultiply(s: number): void {
    const img = this.imageOfSimpleRoot(s);
    this.columns[s] = this.columns[s].map((v, r) => v - img[r]);
  }
}

export function isReducedWord(a: number[][], word: number[]): boolean {
  const state = new WeylState(a);
  for (const letter of word) {
    const s = letter - 1;
    if (s < 0 || s >= a.length) return false;
    if (!state.ascends(s)) return false;
    state.rightMultiply(s);
  }
  return true;
}

export function longestLength(a: number[][]): number {
  const state = new WeylState(a);
  let len = 0;
  for (;;) {
    let moved = false;
    for (let s = 0; s < a.length; s++) {
      if (state.ascends(s)) {
        state.rightMultiply(s);
        len += 1;
        moved = true;
        break;
      }
    }
    if (!moved) return len;
  }
}

export interface ValidationResult {
  ok: boolean;
  message: string;
}

/** Mirrors the engine: both signed subsequences must reduce to w0. */
export function validateDoubleWord(type: string, entries: number[]): ValidationResult {
  const a = cartanMatrix(type);
  if (!a) return { ok: false, message: `unsupported type ${type} (rank guard ${RANK_GUARD})` };
  if (entries.some((x) => !Number.isInteger(x) || x === 0 || Math.abs(x) > a.length)) {
    return { ok: false, message: "letters must be nonzero and within the rank" };
  }
  const half = longestLength(a);
  const neg = entries.filter((x) => x < 0).map((x) => -x);
  const pos = entries.filter((x) => x > 0);
  if (neg.length !== half || pos.length !== half) {
    return { ok: false, message: `need ${half} positive and ${half} negative letters` };
  }
  if (!isReducedWord(a, neg)) return { ok: false, message: "negative part is not reduced" };
  if (!isReducedWord(a, pos)) return { ok: false, message: "positive part is not reduced" };
  return { ok: true, message: "double reduced word for (w0, w0)" };
}

export function parseWord(text: string): number[] | null {
  const trimmed = text.trim();
  if (!trimmed) return [];
  const parts = trimmed.split(",").map((p) => Number(p.trim()));
  return parts.every((x) => Number.isInteger(x)) ? parts : null;
}
