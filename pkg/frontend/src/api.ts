import type { SeedPayload } from "./types.js";

export class ApiRequestError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function expectJson(res: Response): Promise<SeedPayload> {
  const body = await res.json();
  if (!res.ok) {
    throw new ApiRequestError(res.status, body.error ?? res.statusText);
  }
  return body as SeedPayload;
}

/** Thin typed client for the explorer endpoints. */
export class ExplorerClient {
  constructor(private baseUrl: string) {}

  async createSession(type: string, word: number[]): Promise<SeedPayload> {
    const res = await fetch(`${this.baseUrl}/api/v1/seeds`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ type, word }),
    });
    return expectJson(res);
  }

  async getSession(id: string): Promise<SeedPayload> {
    const res = await fetch(`${this.baseUrl}/api/v1/seeds/${id}`);
    return expectJson(res);
  }

  async mutate(id: string, vertex: number): Promise<SeedPayload> {
    const res = await fetch(`${this.baseUrl}/api/v1/seeds/${id}/mutations`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ vertex }),
    });
    return expectJson(res);
  }

  async undo(id: string): Promise<SeedPayload> {
    const res = await fetch(`${this.baseUrl}/api/v1/seeds/${id}/mutations/last`, {
      method: "DELETE",
    });
    return expectJson(res);
  }
}

/** Canonical serialization of the seed content (B and variables only). */
export function seedContentString(seed: SeedPayload): string {
  const vars = Object.keys(seed.variables)
    .sort()
    .map((k) => [k, seed.variables[k]]);
  return JSON.stringify({ B: seed.B, variables: vars });
}
