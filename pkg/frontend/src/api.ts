/** Thin typed client for the calibration service. All statistics stay on the
 * server; this module only moves JSON. */

import type {
  CalibrationPayload,
  DesignConfig,
  DesignParams,
  FieldError,
  JobRecord,
  SimulationPayload,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

/** Schema violations and other 4xx replies, with the server's field paths. */
export class ApiError extends Error {
  constructor(
    public status: number,
    public errors: FieldError[],
  ) {
    super(errors.map((e) => `${e.path || "(config)"}: ${e.message}`).join("; "));
  }
}

/** Network-level failure: the server could not be reached at all. */
export class ServerUnreachable extends Error {
  constructor(cause: unknown) {
    super(`cannot reach the calibration service: ${String(cause)}`);
  }
}

export interface JobResultPending {
  ready: false;
  state: string;
  progress: number;
}

export interface JobResultReady<T> {
  ready: true;
  payload: T;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async post(path: string, body: unknown): Promise<Response> {
    let response: Response;
    try {
      response = await this.fetchImpl(this.baseUrl + path, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
      });
    } catch (err) {
      throw new ServerUnreachable(err);
    }
    if (response.status >= 400 && response.status < 500) {
      const body0 = (await response.json()) as { errors?: FieldError[]; error?: string };
      throw new ApiError(
        response.status,
        body0.errors ?? [{ path: "", message: body0.error ?? "request rejected" }],
      );
    }
    return response;
  }

  private async get(path: string): Promise<Response> {
    try {
      return await this.fetchImpl(this.baseUrl + path);
    } catch (err) {
      throw new ServerUnreachable(err);
    }
  }

  async health(): Promise<{ status: string; version: string }> {
    const r = await this.get("/v1/health");
    return (await r.json()) as { status: string; version: string };
  }

  /** Validate a draft; resolves to the fully defaulted echo. */
  async validate(config: DesignConfig): Promise<DesignConfig> {
    const r = await this.post("/v1/validate", config);
    const body = (await r.json()) as { config: DesignConfig };
    return body.config;
  }

  async submitCalibrate(config: DesignConfig): Promise<JobRecord> {
    const r = await this.post("/v1/jobs/calibrate", config);
    return ((await r.json()) as { job: JobRecord }).job;
  }

  async submitSimulate(config: DesignConfig, design: DesignParams): Promise<JobRecord> {
    const r = await this.post("/v1/jobs/simulate", { config, design });
    return ((await r.json()) as { job: JobRecord }).job;
  }

  async job(id: string): Promise<JobRecord> {
    const r = await this.get(`/v1/jobs/${id}`);
    if (r.status === 404) {
      throw new ApiError(404, [{ path: "", message: "unknown job" }]);
    }
    return (await r.json()) as JobRecord;
  }

  /** The result endpoint 404s with the job state until the payload exists. */
  async result<T = CalibrationPayload | SimulationPayload>(
    id: string,
  ): Promise<JobResultPending | JobResultReady<T>> {
    const r = await this.get(`/v1/jobs/${id}/result`);
    if (r.status === 404) {
      const body = (await r.json()) as { state?: string; progress?: number; error?: string };
      if (body.error) {
        throw new ApiError(404, [{ path: "", message: body.error }]);
      }
      return { ready: false, state: body.state ?? "unknown", progress: body.progress ?? 0 };
    }
    return { ready: true, payload: (await r.json()) as T };
  }

  async decisionTable(config: DesignConfig, design: DesignParams): Promise<unknown> {
    const r = await this.post("/v1/decision-table", { config, design });
    return await r.json();
  }
}
