/** DOM wiring for the explorer page. All logic worth testing lives in the
 * imported modules; this file only moves strings between them and the page. */

import { ApiClient } from "./api.js";
import { designForm } from "./form.js";
import { configHash } from "./hash.js";
import { pollJob, JobFailed } from "./poll.js";
import {
  renderCalibration,
  renderComparison,
  renderProgress,
  renderSimulationTable,
  escapeHtml,
} from "./render.js";
import { DesignSession } from "./session.js";
import { stateFromFragment, stateToFragment } from "./url-state.js";
import type { CalibrationPayload, DesignConfig, DesignParams, SimulationPayload } from "./types.js";
import { whatifCompare } from "./whatif.js";

const DEFAULT_DRAFT: DesignConfig = {
  endpoint: { family: "binary" },
  plan: { max_n: 40, interim_looks: [10, 20, 30] },
  profile: { theta_lrv: 0.2, theta_cmv: 0.3, theta_futile: 0.2, theta_eff: 0.4 },
};

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function bootstrap(): void {
  const api = new ApiClient("");
  const fromUrl = stateFromFragment(window.location.hash);
  const session = new DesignSession(fromUrl?.config ?? DEFAULT_DRAFT);

  const editor = el<HTMLTextAreaElement>("config-editor");
  const errorsBox = el<HTMLDivElement>("form-errors");
  const banner = el<HTMLDivElement>("offline-banner");
  const statusBox = el<HTMLDivElement>("job-status");
  const resultBox = el<HTMLDivElement>("result-panel");
  const staleBox = el<HTMLDivElement>("stale-banner");
  const compareBox = el<HTMLDivElement>("comparison-panel");

  editor.value = JSON.stringify(session.draft, null, 2);

  const refreshResultPanel = () => {
    const current = session.currentResult();
    staleBox.hidden = !session.hasStaleResults();
    if (!current) {
      if (!session.hasStaleResults()) resultBox.innerHTML = "";
      return;
    }
    staleBox.hidden = true;
    resultBox.innerHTML =
      "result" in current
        ? renderCalibration(current as CalibrationPayload)
        : renderSimulationTable(current as SimulationPayload);
  };

  const readDraft = (): DesignConfig | null => {
    try {
      const draft = JSON.parse(editor.value) as DesignConfig;
      session.setDraft(draft);
      window.location.hash = stateToFragment({ config: draft });
      refreshResultPanel();
      return draft;
    } catch (err) {
      errorsBox.innerHTML = `<p class="error">config is not valid JSON: ${escapeHtml(String(err))}</p>`;
      return null;
    }
  };

  editor.addEventListener("input", () => {
    readDraft();
  });

  el<HTMLButtonElement>("validate-btn").addEventListener("click", async () => {
    const draft = readDraft();
    if (!draft) return;
    const outcome = await designForm(draft, api);
    banner.hidden = !(outcome.ok === false && outcome.offline);
    if (outcome.ok) {
      session.setValidation({ kind: "valid", echo: outcome.echo });
      errorsBox.innerHTML = `<p class="ok">ready to calibrate — config ${configHash(draft)}</p>`;
      editor.value = JSON.stringify(outcome.echo, null, 2);
      session.setDraft(outcome.echo);
      session.setValidation({ kind: "valid", echo: outcome.echo });
      window.location.hash = stateToFragment({ config: outcome.echo });
    } else {
      session.setValidation(
        outcome.offline
          ? { kind: "offline", message: outcome.errors[0]?.message ?? "offline" }
          : { kind: "invalid", errors: outcome.errors },
      );
      errorsBox.innerHTML = outcome.errors
        .map((e) => `<p class="error" data-path="${escapeHtml(e.path)}">${escapeHtml(e.path)}: ${escapeHtml(e.message)}</p>`)
        .join("");
    }
  });

  el<HTMLButtonElement>("calibrate-btn").addEventListener("click", async () => {
    const draft = readDraft();
    if (!draft) return;
    const hash = configHash(draft);
    try {
      const job = await api.submitCalibrate(draft);
      session.trackJob(job.id);
      const done = await pollJob(api, job.id, {
        onUpdate: (view) => {
          statusBox.innerHTML = renderProgress(view.state, view.progress);
        },
      });
      statusBox.innerHTML = renderProgress(done.state, 1.0);
      const result = await api.result<CalibrationPayload>(job.id);
      if (result.ready) {
        session.cacheResult(hash, result.payload);
        refreshResultPanel();
      }
    } catch (err) {
      const detail = err instanceof JobFailed ? (err.record.error ?? "job failed") : String(err);
      statusBox.innerHTML = `<p class="error" data-role="job-error">${escapeHtml(detail)}</p>`;
    }
  });

  el<HTMLButtonElement>("whatif-btn").addEventListener("click", async () => {
    const draft = readDraft();
    if (!draft) return;
    const current = session.currentResult();
    if (!current || !("result" in current)) {
      compareBox.innerHTML = `<p class="error">calibrate first to pick design parameters</p>`;
      return;
    }
    const design = (current as CalibrationPayload).result.params as DesignParams;
    const variants = buildVariants(draft);
    compareBox.innerHTML = `<p>running ${variants.length + 1} simulate jobs...</p>`;
    const columns = await whatifCompare(api, withScenarios(draft), variants, design);
    compareBox.innerHTML = renderComparison(columns);
  });

  refreshResultPanel();
}

/** Simple built-in what-if: nudge the effective-scenario truth up and down. */
function buildVariants(draft: DesignConfig) {
  const profile = draft.profile as { theta_eff?: number };
  const base = typeof profile.theta_eff === "number" ? profile.theta_eff : 0.4;
  return [base - 0.05, base + 0.05]
    .filter((v) => v > 0 && v < 1)
    .map((v) => ({
      label: `theta_eff=${v.toFixed(2)}`,
      config: withScenarios({
        ...draft,
        profile: { ...(draft.profile as object), theta_eff: v } as DesignConfig["profile"],
      }),
    }));
}

function withScenarios(config: DesignConfig): DesignConfig {
  if (config.scenarios) return config;
  const profile = config.profile as { theta_futile?: number; theta_eff?: number };
  return {
    ...config,
    scenarios: [
      { label: "futile", experimental: { response_prob: profile.theta_futile ?? 0.2 } },
      { label: "effective", experimental: { response_prob: profile.theta_eff ?? 0.4 } },
    ],
  };
}

if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", bootstrap);
}
