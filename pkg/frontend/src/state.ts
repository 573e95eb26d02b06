import type { BreakdownRow } from "./api.js";

// Client-side mirror of the service's portfolio rules: weights stay in [0, 1]
// and names must come from the taxonomy once it is known. The score itself is
// never computed here; lastScore/lastBreakdown only cache what the service said.

export class SessionPortfolio {
  policy = "sqrt";
  lastScore: number | null = null;
  lastBreakdown: BreakdownRow[] = [];

  private readonly weights = new Map<string, number>();
  private known: Set<string> | null = null;

  /** Restrict add/setWeight to these names (the taxonomy's leaves). */
  setKnownLanguages(names: Iterable<string>): void {
    this.known = new Set(names);
    for (const name of this.weights.keys()) {
      if (!this.known.has(name)) this.weights.delete(name);
    }
  }

  knownLanguages(): string[] {
    return this.known ? [...this.known].sort() : [];
  }

  add(name: string, weight = 1.0): void {
    this.setWeight(name, weight);
  }

  setWeight(name: string, weight: number): void {
    if (this.known && !this.known.has(name)) {
      throw new RangeError(`unknown language: ${name}`);
    }
    if (!Number.isFinite(weight) || weight < 0 || weight > 1) {
      throw new RangeError(`proficiency for ${name} must be between 0 and 1, got ${weight}`);
    }
    this.weights.set(name, weight);
  }

  remove(name: string): void {
    this.weights.delete(name);
  }

  clear(): void {
    this.weights.clear();
  }

  has(name: string): boolean {
    return this.weights.has(name);
  }

  weight(name: string): number {
    return this.weights.get(name) ?? 0;
  }

  isEmpty(): boolean {
    return this.weights.size === 0;
  }

  size(): number {
    return this.weights.size;
  }

  /** Snapshot of the current entries, sorted by name for stable rendering. */
  languages(): Record<string, number> {
    const out: Record<string, number> = {};
    for (const name of [...this.weights.keys()].sort()) {
      out[name] = this.weights.get(name) as number;
    }
    return out;
  }
}
