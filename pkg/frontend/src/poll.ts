/** Job polling: one-second cadence with backoff, and a monotone progress view
 * no matter what the raw records do. */

import { ApiClient } from "./api.js";
import type { JobRecord, JobState } from "./types.js";

export interface ProgressView {
  id: string;
  state: JobState;
  /** Highest progress seen so far; never decreases between updates. */
  progress: number;
}

export interface PollOptions {
  intervalMs?: number;
  maxIntervalMs?: number;
  backoff?: number;
  onUpdate?: (view: ProgressView) => void;
  sleep?: (ms: number) => Promise<void>;
  maxPolls?: number;
}

const defaultSleep = (ms: number) => new Promise<void>((resolve) => setTimeout(resolve, ms));

/** Failed jobs reject with the server's error payload verbatim. */
export class JobFailed extends Error {
  constructor(public record: JobRecord) {
    super(record.error ?? "job failed");
  }
}

/** Poll until the job reaches a terminal state; resolves with the final record. */
export async function pollJob(
  api: ApiClient,
  jobId: string,
  options: PollOptions = {},
): Promise<JobRecord> {
  const {
    intervalMs = 1000,
    maxIntervalMs = 8000,
    backoff = 1.5,
    onUpdate,
    sleep = defaultSleep,
    maxPolls = 10_000,
  } = options;
  let wait = intervalMs;
  let floor = 0;
  for (let polls = 0; polls < maxPolls; polls++) {
    const record = await api.job(jobId);
    floor = Math.max(floor, record.progress);
    onUpdate?.({ id: record.id, state: record.state, progress: floor });
    if (record.state === "done") {
      return record;
    }
    if (record.state === "failed") {
      throw new JobFailed(record);
    }
    await sleep(wait);
    wait = Math.min(wait * backoff, maxIntervalMs);
  }
  throw new Error(`job ${jobId} did not finish within ${maxPolls} polls`);
}
