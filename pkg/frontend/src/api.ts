import type {
  AnalyzeRequest,
  AnalyzeResponse,
  CatalogResponse,
  SweepRequest,
  SweepResponse,
} from "./types";

/** Error envelope the service returns: {error: {code, message, field?}}. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly field?: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

/** Transport failure (server unreachable, request aborted by network). */
export class NetworkFailure extends Error {
  constructor(cause: unknown) {
    super("analysis service unreachable");
    this.name = "NetworkFailure";
    this.cause = cause;
  }
}

async function toApiError(res: Response): Promise<ApiError> {
  try {
    const body = await res.json();
    const err = body?.error;
    if (err && typeof err.code === "string") {
      return new ApiError(res.status, err.code, err.message ?? res.statusText, err.field);
    }
  } catch {
    // non-JSON error body; fall through
  }
  return new ApiError(res.status, "http_error", res.statusText || `HTTP ${res.status}`);
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: typeof fetch = (...args) => fetch(...args),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let res: Response;
    try {
      res = await this.fetchFn(`${this.baseUrl}${path}`, init);
    } catch (cause) {
      if (cause instanceof DOMException && cause.name === "AbortError") throw cause;
      throw new NetworkFailure(cause);
    }
    if (!res.ok) throw await toApiError(res);
    return (await res.json()) as T;
  }

  getCatalog(): Promise<CatalogResponse> {
    return this.request<CatalogResponse>("/api/v1/catalog");
  }

  analyze(body: AnalyzeRequest, signal?: AbortSignal): Promise<AnalyzeResponse> {
    return this.request<AnalyzeResponse>("/api/v1/analyze", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
  }

  sweep(body: SweepRequest, signal?: AbortSignal): Promise<SweepResponse> {
    return this.request<SweepResponse>("/api/v1/sweep", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
  }
}
