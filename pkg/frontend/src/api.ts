import { ApiError, HeightResponse, SessionState } from "./types.js";

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Thin typed client over the session endpoints.  All math lives on the
 * server; this never post-processes numbers. */
export class ApiClient {
  constructor(
    private readonly base: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.base + path, init);
    const body = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, body);
    }
    return body as T;
  }

  createSession(seed: string): Promise<SessionState> {
    return this.request("/sessions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ seed }),
    });
  }

  createSessionFromJson(helix: unknown): Promise<SessionState> {
    return this.request("/sessions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(helix),
    });
  }

  getState(id: string): Promise<SessionState> {
    return this.request(`/sessions/${id}`);
  }

  tilt(id: string, vertex: number, direction: "left" | "right" = "left"): Promise<SessionState> {
    return this.request(`/sessions/${id}/tilt`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ vertex, direction }),
    });
  }

  undo(id: string): Promise<SessionState> {
    return this.request(`/sessions/${id}/undo`, { method: "POST" });
  }

  heights(id: string, vertex: number, bound = 3): Promise<HeightResponse> {
    return this.request(`/sessions/${id}/height?vertex=${vertex}&bound=${bound}`);
  }
}
