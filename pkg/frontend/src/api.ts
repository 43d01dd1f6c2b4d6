/** Thin typed client for the search service; read-only by design. */

export interface CaseDoc {
  id: string;
  type?: string;
  description?: string;
  repository?: string;
  commit?: { sha1?: string; date?: string; message?: string; authorName?: string };
  meta?: { tool?: string };
  commitUrl?: string;
  [key: string]: unknown;
}

export interface SearchPage {
  total: number;
  offset: number;
  limit: number;
  items: CaseDoc[];
}

export interface TypeCount {
  type: string;
  count: number;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly offset?: number,
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, signal?: AbortSignal): Promise<T> {
    const response = await this.fetchFn(this.base + path, { signal });
    const body = await response.json().catch(() => ({}));
    if (!response.ok) {
      throw new ApiError(
        response.status,
        typeof body.code === "string" ? body.code : "internal",
        typeof body.message === "string" ? body.message : `HTTP ${response.status}`,
        typeof body.offset === "number" ? body.offset : undefined,
      );
    }
    return body as T;
  }

  search(q: string, offset: number, limit: number, signal?: AbortSignal): Promise<SearchPage> {
    const params = new URLSearchParams();
    if (q !== "") params.set("q", q);
    params.set("offset", String(offset));
    params.set("limit", String(limit));
    return this.request<SearchPage>(`/api/refactorings?${params}`, signal);
  }

  getCase(id: string, signal?: AbortSignal): Promise<CaseDoc> {
    return this.request<CaseDoc>(`/api/refactorings/${encodeURIComponent(id)}`, signal);
  }

  listTypes(signal?: AbortSignal): Promise<TypeCount[]> {
    return this.request<TypeCount[]>("/api/meta/types", signal);
  }
}
