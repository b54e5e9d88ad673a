// Typed client for the explorer service. The fetch function is injectable
// so tests can count or fake requests.

export interface SegmentSummary {
  id: string;
  game: string;
  tiles: string[];
}

export interface BlendPayload {
  version: number;
  tiles: string[];
  metric_vector: Record<string, number>;
  category: string;
  lr_playable: boolean | "unknown";
  loz_playable: boolean | "unknown";
  latent: number[];
  a?: string;
  b?: string;
  t?: number;
  seed?: number;
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class ExplorerApi {
  constructor(
    private baseUrl: string,
    private fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(`${this.baseUrl}${path}`, init);
    if (!resp.ok) {
      const body = await resp.text();
      throw new ApiError(resp.status, `${resp.status} on ${path}: ${body}`);
    }
    return (await resp.json()) as T;
  }

  health(): Promise<{ status: string; segments: number }> {
    return this.request("/api/health");
  }

  async listSegments(game = "all"): Promise<SegmentSummary[]> {
    const body = await this.request<{ segments: SegmentSummary[] }>(
      `/api/segments?game=${encodeURIComponent(game)}`,
    );
    return body.segments;
  }

  blend(a: string, b: string, t: number): Promise<BlendPayload> {
    return this.request("/api/blend", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ a, b, t }),
    });
  }

  random(seed?: number): Promise<BlendPayload> {
    const query = seed === undefined ? "" : `?seed=${seed}`;
    return this.request(`/api/random${query}`);
  }
}
