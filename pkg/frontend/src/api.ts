// Typed access to the scoring service. Every number shown in the UI comes
// from these calls; the client never aggregates scores on its own.

export interface BreakdownRow {
  node: string;
  depth: number;
  lambda: number;
}

export interface LqResponse {
  score: number;
  policy: string;
  breakdown: BreakdownRow[];
}

export interface Suggestion {
  language: string;
  gain: number;
}

export interface TaxonomyDoc {
  name: string;
  children: TaxonomyDoc[];
}

export interface LanguageEntry {
  name: string;
  path: string[];
}

/** The service answered, but rejected the request (a 4xx with a coded body). */
export class ApiRequestError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly language?: string,
  ) {
    super(message);
    this.name = "ApiRequestError";
  }
}

/** The service could not be reached at all (connection refused, DNS, ...). */
export class ServiceUnreachableError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "ServiceUnreachableError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** What the app needs from the service; ApiClient is the real implementation. */
export interface ScoringApi {
  lq(languages: Record<string, number>, policy?: string): Promise<LqResponse>;
  suggest(languages: Record<string, number>, topK: number, policy?: string): Promise<Suggestion[]>;
  taxonomy(): Promise<TaxonomyDoc>;
  languages(prefix?: string): Promise<LanguageEntry[]>;
  healthy(): Promise<boolean>;
}

export class ApiClient implements ScoringApi {
  private readonly fetchFn: FetchLike;

  constructor(
    readonly baseUrl: string,
    fetchFn?: FetchLike,
  ) {
    // bind lazily so a fetch polyfill installed after construction still works
    this.fetchFn = fetchFn ?? ((input, init) => globalThis.fetch(input, init));
  }

  lq(languages: Record<string, number>, policy?: string): Promise<LqResponse> {
    return this.post<LqResponse>("/lq", {
      portfolio: { languages },
      ...(policy ? { policy } : {}),
    });
  }

  suggest(languages: Record<string, number>, topK: number, policy?: string): Promise<Suggestion[]> {
    return this.post<Suggestion[]>("/suggest", {
      portfolio: { languages },
      top_k: topK,
      ...(policy ? { policy } : {}),
    });
  }

  taxonomy(): Promise<TaxonomyDoc> {
    return this.request<TaxonomyDoc>("/taxonomy");
  }

  languages(prefix?: string): Promise<LanguageEntry[]> {
    const query = prefix ? `?q=${encodeURIComponent(prefix)}` : "";
    return this.request<LanguageEntry[]>(`/languages${query}`);
  }

  async healthy(): Promise<boolean> {
    try {
      await this.request<{ status: string }>("/healthz");
      return true;
    } catch {
      return false;
    }
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, init);
    } catch {
      throw new ServiceUnreachableError(`scoring service unreachable at ${this.baseUrl}`);
    }
    if (!response.ok) {
      let code = `http_${response.status}`;
      let message = `request failed with status ${response.status}`;
      let language: string | undefined;
      try {
        const body: unknown = await response.json();
        if (body && typeof body === "object") {
          const record = body as Record<string, unknown>;
          if (typeof record.error === "string") code = record.error;
          if (typeof record.message === "string") message = record.message;
          else message = JSON.stringify(body);
          if (typeof record.language === "string") language = record.language;
        }
      } catch {
        // non-JSON error body; keep the status-based message
      }
      throw new ApiRequestError(response.status, code, message, language);
    }
    return (await response.json()) as T;
  }
}
