// In-memory stand-in for the scoring service. It returns canned numbers (sum
// of weights, fixed suggestion gains) so app tests can assert wiring without
// depending on real aggregation; correctness of the numbers themselves is the
// service's business and is covered by the end-to-end test.

import {
  ApiRequestError,
  ServiceUnreachableError,
  type LanguageEntry,
  type LqResponse,
  type ScoringApi,
  type Suggestion,
  type TaxonomyDoc,
} from "../src/api.js";

export const STUB_TAXONOMY: TaxonomyDoc = {
  name: "Tower of Babel",
  children: [
    {
      name: "Indo-European",
      children: [
        {
          name: "Germanic",
          children: [
            { name: "West Germanic", children: [{ name: "English", children: [] }] },
          ],
        },
        {
          name: "Slavic",
          children: [
            {
              name: "South Slavic",
              children: [
                {
                  name: "Western",
                  children: [
                    { name: "Croatian", children: [] },
                    { name: "Serbian", children: [] },
                    { name: "Slovene", children: [] },
                  ],
                },
              ],
            },
          ],
        },
      ],
    },
    {
      name: "Sino-Tibetan",
      children: [{ name: "Sinitic", children: [{ name: "Chinese", children: [] }] }],
    },
  ],
};

const LEAF_PATHS: Record<string, string[]> = {
  Chinese: ["Tower of Babel", "Sino-Tibetan", "Sinitic", "Chinese"],
  Croatian: ["Tower of Babel", "Indo-European", "Slavic", "South Slavic", "Western", "Croatian"],
  English: ["Tower of Babel", "Indo-European", "Germanic", "West Germanic", "English"],
  Serbian: ["Tower of Babel", "Indo-European", "Slavic", "South Slavic", "Western", "Serbian"],
  Slovene: ["Tower of Babel", "Indo-European", "Slavic", "South Slavic", "Western", "Slovene"],
};

export const STUB_LEAVES = Object.keys(LEAF_PATHS).sort();

const STUB_GAINS: Record<string, number> = {
  Chinese: 1.0,
  English: 0.6325,
  Serbian: 0.52,
  Croatian: 0.3634,
  Slovene: 0.345,
};

const sleep = (ms: number) => new Promise<void>((resolve) => setTimeout(resolve, ms));

export class StubApi implements ScoringApi {
  /** When true every call fails as if the service were down. */
  offline = false;
  /** Injected once into the next lq call, then cleared. */
  nextLqError: unknown = null;
  /** Artificial latency for lq, to provoke overlapping edits. */
  lqDelayMs = 0;

  lqCount = 0;
  suggestCount = 0;
  taxonomyCount = 0;
  inFlightLq = 0;
  maxInFlightLq = 0;
  lastLq: { languages: Record<string, number>; policy?: string } | null = null;
  lastSuggest: { languages: Record<string, number>; topK: number; policy?: string } | null = null;

  private check(): void {
    if (this.offline) throw new ServiceUnreachableError("stub is offline");
  }

  async lq(languages: Record<string, number>, policy?: string): Promise<LqResponse> {
    this.check();
    this.lqCount += 1;
    this.lastLq = { languages, policy };
    if (this.nextLqError) {
      const error = this.nextLqError;
      this.nextLqError = null;
      throw error;
    }
    this.inFlightLq += 1;
    this.maxInFlightLq = Math.max(this.maxInFlightLq, this.inFlightLq);
    try {
      if (this.lqDelayMs > 0) await sleep(this.lqDelayMs);
      const active = Object.entries(languages).filter(([, w]) => w > 0);
      const score = active.reduce((acc, [, w]) => acc + w, 0);
      return {
        score,
        policy: policy ?? "sqrt",
        breakdown: [
          { node: "Tower of Babel", depth: 0, lambda: score },
          ...active.map(([name, w]) => ({ node: name, depth: 1, lambda: w })),
        ],
      };
    } finally {
      this.inFlightLq -= 1;
    }
  }

  async suggest(
    languages: Record<string, number>,
    topK: number,
    policy?: string,
  ): Promise<Suggestion[]> {
    this.check();
    this.suggestCount += 1;
    this.lastSuggest = { languages, topK, policy };
    return STUB_LEAVES.filter((name) => !(name in languages))
      .map((name) => ({ language: name, gain: STUB_GAINS[name] ?? 0 }))
      .sort((a, b) => b.gain - a.gain || a.language.localeCompare(b.language))
      .slice(0, topK);
  }

  async taxonomy(): Promise<TaxonomyDoc> {
    this.check();
    this.taxonomyCount += 1;
    return STUB_TAXONOMY;
  }

  async languages(prefix?: string): Promise<LanguageEntry[]> {
    this.check();
    const lowered = (prefix ?? "").toLowerCase();
    return STUB_LEAVES.filter((name) => name.toLowerCase().startsWith(lowered)).map(
      (name) => ({ name, path: LEAF_PATHS[name] as string[] }),
    );
  }

  async healthy(): Promise<boolean> {
    return !this.offline;
  }

  /** Handy for tests that want a coded rejection on the next lq call. */
  failNextLq(code: string, message: string, language?: string): void {
    this.nextLqError = new ApiRequestError(422, code, message, language);
  }
}
