// Editable reciprocal comparison grid.  Only the upper triangle is
// writable; the diagonal is fixed at 1 and the lower triangle always
// displays the reciprocal of its mirror cell, recomputed on every edit.

export const SCALE = [
  { value: 1, label: "Égal" },
  { value: 3, label: "Un peu plus important" },
  { value: 5, label: "Plus important" },
  { value: 7, label: "Beaucoup plus important" },
  { value: 9, label: "Absolument plus important" },
] as const;

// same slack the service applies, so 0.11 (a rounded 1/9) stays typable
const LOW = (1 / 9) * 0.95;
const HIGH = 9 * 1.05;

export function validateJudgment(raw: string): string | null {
  const value = Number(raw);
  if (raw.trim() === "" || !Number.isFinite(value)) {
    return "enter a number";
  }
  if (value <= 0) {
    return "judgments must be positive";
  }
  if (value < LOW || value > HIGH) {
    return "stay within the 1/9 .. 9 comparison scale";
  }
  return null;
}

export function formatReciprocal(value: number): string {
  const reciprocal = 1 / value;
  return String(Number(reciprocal.toPrecision(6)));
}

export class SaatyGrid {
  readonly order: number;
  private upper: (number | null)[];

  constructor(order: number) {
    if (order < 2) throw new Error("grid order must be at least 2");
    this.order = order;
    this.upper = new Array((order * (order - 1)) / 2).fill(null);
  }

  private slot(i: number, j: number): number {
    // row-major upper triangle offset for i < j
    return (i * (2 * this.order - i - 1)) / 2 + (j - i - 1);
  }

  set(i: number, j: number, raw: string): string | null {
    if (i >= j) {
      throw new Error("only upper-triangle cells are editable");
    }
    const problem = validateJudgment(raw);
    if (problem === null) {
      this.upper[this.slot(i, j)] = Number(raw);
    }
    return problem;
  }

  clear(i: number, j: number): void {
    if (i >= j) throw new Error("only upper-triangle cells are editable");
    this.upper[this.slot(i, j)] = null;
  }

  value(i: number, j: number): number | null {
    if (i === j) return 1;
    if (i < j) return this.upper[this.slot(i, j)];
    const mirror = this.upper[this.slot(j, i)];
    return mirror === null ? null : 1 / mirror;
  }

  // what the read-only mirror cell should show right now
  display(i: number, j: number): string {
    if (i === j) return "1";
    if (i < j) {
      const v = this.upper[this.slot(i, j)];
      return v === null ? "" : String(v);
    }
    const mirror = this.upper[this.slot(j, i)];
    return mirror === null ? "" : formatReciprocal(mirror);
  }

  isComplete(): boolean {
    return this.upper.every((v) => v !== null);
  }

  upperTokens(): string[] {
    if (!this.isComplete()) {
      throw new Error("grid has empty cells");
    }
    return this.upper.map((v) => String(v));
  }

  static fromUpper(order: number, values: number[]): SaatyGrid {
    const grid = new SaatyGrid(order);
    let k = 0;
    for (let i = 0; i < order; i++) {
      for (let j = i + 1; j < order; j++) {
        const problem = grid.set(i, j, String(values[k++]));
        if (problem !== null) throw new Error(problem);
      }
    }
    return grid;
  }
}
