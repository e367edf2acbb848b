/** Design-form validation: quick client-side checks for instant feedback, then
 * the server's validator as the source of truth. Field errors keep the
 * server's dotted paths so they can be pinned to inputs. */

import { ApiClient, ApiError, ServerUnreachable } from "./api.js";
import type { DesignConfig, FieldError } from "./types.js";

export type FormOutcome =
  | { ok: true; echo: DesignConfig }
  | { ok: false; errors: FieldError[]; offline: boolean };

function asNumbers(value: unknown): number[] | null {
  if (typeof value === "number") return [value];
  if (Array.isArray(value) && value.every((v) => typeof v === "number")) {
    return value as number[];
  }
  return null;
}

/** Cheap structural checks that do not need the server. Mirrors the engine's
 * most common rejections so typos surface while typing. */
export function localFieldChecks(draft: DesignConfig): FieldError[] {
  const errors: FieldError[] = [];
  const fail = (path: string, message: string) => errors.push({ path, message });

  const plan = draft.plan ?? {};
  const maxN = plan["max_n"];
  if (typeof maxN !== "number" || !Number.isInteger(maxN) || maxN < 1) {
    fail("plan.max_n", "maximum sample size must be a positive integer");
  }
  const looks = plan["interim_looks"];
  if (Array.isArray(looks) && typeof maxN === "number") {
    for (let i = 0; i < looks.length; i++) {
      const n = looks[i];
      if (typeof n !== "number" || n < 1 || n >= maxN) {
        fail(`plan.interim_looks[${i}]`, "interim looks must lie in [1, max_n)");
      } else if (i > 0 && typeof looks[i - 1] === "number" && n <= (looks[i - 1] as number)) {
        fail(`plan.interim_looks[${i}]`, "interim looks must be strictly increasing");
      }
    }
  }

  const profile = draft.profile ?? {};
  const lrv = asNumbers(profile["theta_lrv"]);
  const cmv = asNumbers(profile["theta_cmv"]);
  const eff = asNumbers(profile["theta_eff"]);
  const lower = lowerFlags(draft);
  if (lrv && cmv && lrv.length === cmv.length) {
    for (let i = 0; i < lrv.length; i++) {
      const ok = lower[i] ? cmv[i] < lrv[i] : cmv[i] > lrv[i];
      if (!ok) {
        fail(
          "profile.theta_cmv",
          lower[i]
            ? "the clinically meaningful value must sit below theta_lrv for a lower-is-better endpoint"
            : "the clinically meaningful value must exceed theta_lrv",
        );
      }
    }
  }
  if (cmv && eff && cmv.length === eff.length) {
    for (let i = 0; i < cmv.length; i++) {
      const ok = lower[i] ? eff[i] <= cmv[i] : eff[i] >= cmv[i];
      if (!ok) {
        fail("profile.theta_eff", "theta_eff must be at least as favorable as theta_cmv");
      }
    }
  }
  return errors;
}

function lowerFlags(draft: DesignConfig): boolean[] {
  const endpoint = draft.endpoint ?? {};
  const components = endpoint["components"];
  if (Array.isArray(components)) {
    return components.map((c) => Boolean((c as Record<string, unknown>)["lower_is_better"]));
  }
  return [Boolean(endpoint["lower_is_better"])];
}

/** Validate a draft, preferring inline errors over a round trip. A network
 * failure reports offline and leaves the draft untouched for retry. */
export async function designForm(draft: DesignConfig, api: ApiClient): Promise<FormOutcome> {
  const local = localFieldChecks(draft);
  if (local.length > 0) {
    return { ok: false, errors: local, offline: false };
  }
  try {
    const echo = await api.validate(draft);
    return { ok: true, echo };
  } catch (err) {
    if (err instanceof ApiError) {
      return { ok: false, errors: err.errors, offline: false };
    }
    if (err instanceof ServerUnreachable) {
      return { ok: false, errors: [{ path: "", message: err.message }], offline: true };
    }
    throw err;
  }
}
