/** What-if comparison: simulate several edited configs against one chosen set
 * of design parameters and line the results up column by column. A failing
 * variant keeps its column with the error; the rest still render. */

import { ApiClient } from "./api.js";
import { pollJob, JobFailed } from "./poll.js";
import type { ComparisonColumn } from "./render.js";
import type { DesignConfig, DesignParams, SimulationPayload } from "./types.js";

export interface Variant {
  label: string;
  config: DesignConfig;
}

async function runOne(
  api: ApiClient,
  variant: Variant,
  design: DesignParams,
  pollOptions: Parameters<typeof pollJob>[2],
): Promise<ComparisonColumn> {
  try {
    const job = await api.submitSimulate(variant.config, design);
    await pollJob(api, job.id, pollOptions);
    const result = await api.result<SimulationPayload>(job.id);
    if (!result.ready) {
      return { label: variant.label, ok: false, error: "result not available" };
    }
    return { label: variant.label, ok: true, payload: result.payload };
  } catch (err) {
    const message = err instanceof JobFailed ? (err.record.error ?? "job failed") : String(err);
    return { label: variant.label, ok: false, error: message };
  }
}

/** The base config runs first, then each edited variant; columns come back in
 * submission order regardless of which jobs finish first. */
export async function whatifCompare(
  api: ApiClient,
  base: DesignConfig,
  variants: Variant[],
  design: DesignParams,
  pollOptions: Parameters<typeof pollJob>[2] = {},
): Promise<ComparisonColumn[]> {
  const all: Variant[] = [{ label: "base", config: base }, ...variants];
  return Promise.all(all.map((v) => runOne(api, v, design, pollOptions)));
}
