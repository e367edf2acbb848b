/** Pure view builders. Every figure in the output is read from an API payload;
 * the only transformations here are number formatting and HTML escaping, so a
 * stubbed API can be checked verbatim against the rendered strings. */

import { canonicalJson, configHash } from "./hash.js";
import type {
  CalibrationPayload,
  DecisionTable,
  DesignConfig,
  DesignParams,
  OcRow,
  OperatingCharacteristics,
  SimulationPayload,
} from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Rates render as percents with one decimal, the layout used in design
 * operating-characteristic tables. */
export function formatPct(rate: number): string {
  return (100 * rate).toFixed(1);
}

export function formatNum(value: number, digits = 1): string {
  return value.toFixed(digits);
}

export function renderParams(params: DesignParams): string {
  return (
    `<dl class="params">` +
    `<dt>lambda_lrv</dt><dd data-field="lambda_lrv">${params.lambda_lrv}</dd>` +
    `<dt>lambda_cmv</dt><dd data-field="lambda_cmv">${params.lambda_cmv}</dd>` +
    `<dt>gamma_lrv</dt><dd data-field="gamma_lrv">${params.gamma_lrv}</dd>` +
    `<dt>gamma_cmv</dt><dd data-field="gamma_cmv">${params.gamma_cmv}</dd>` +
    `</dl>`
  );
}

export interface ConstraintBadge {
  name: string;
  value: number;
  limit: number;
  met: boolean;
}

/** Badge data pairs each achieved error rate with its limit; "met" is a pure
 * comparison of two payload numbers. */
export function constraintBadges(result: CalibrationPayload["result"]): ConstraintBadge[] {
  const m = result.metrics;
  const c = result.constraints;
  return [
    { name: "false go", value: m.fgr, limit: c.max_false_go, met: m.fgr <= c.max_false_go },
    { name: "false no-go", value: m.fngr, limit: c.max_false_nogo, met: m.fngr <= c.max_false_nogo },
    {
      name: "false consider",
      value: m.fcr,
      limit: c.max_false_consider,
      met: m.fcr <= c.max_false_consider,
    },
  ];
}

export function renderConstraintBadges(result: CalibrationPayload["result"]): string {
  const badges = constraintBadges(result)
    .map(
      (b) =>
        `<span class="badge ${b.met ? "met" : "violated"}" data-constraint="${b.name}">` +
        `${b.name}: <span data-role="value">${formatPct(b.value)}</span>% ` +
        `(limit ${formatPct(b.limit)}%) ${b.met ? "MET" : "VIOLATED"}</span>`,
    )
    .join("");
  return `<div class="badges">${badges}</div>`;
}

export function renderDecisionTable(table: DecisionTable): string {
  const rows = table.looks
    .map((n, j) => {
      const stop = table.stop_bounds[j];
      const stopText = stop >= 0 ? String(stop) : "never";
      if (j < table.looks.length - 1) {
        return `<tr><td>${n}</td><td data-cell="stop-${n}">${stopText}</td><td>-</td><td>-</td></tr>`;
      }
      const range = table.consider_range;
      const consider = range ? `${range[0]}..${range[1]}` : "empty";
      const go = table.go_bound <= n ? String(table.go_bound) : "unreachable";
      return (
        `<tr><td>${n}</td><td data-cell="stop-${n}">${stopText}</td>` +
        `<td data-cell="consider">${consider}</td><td data-cell="go">${go}</td></tr>`
      );
    })
    .join("");
  return (
    `<table class="decision-table"><thead><tr>` +
    `<th>look n</th><th>no-go if responders &lt;=</th><th>consider</th><th>go if &gt;=</th>` +
    `</tr></thead><tbody>${rows}</tbody></table>`
  );
}

/** Horizontal bars for the go / consider / no-go (/ graduate) split of one
 * scenario; widths are the payload rates scaled to percent. */
export function renderOcBars(label: string, oc: OperatingCharacteristics): string {
  const segments: Array<[string, number]> = [
    ["go", oc.go_rate],
    ["consider", oc.consider_rate],
    ["nogo", oc.nogo_rate],
  ];
  if (oc.graduate_rate > 0) {
    segments.unshift(["graduate", oc.graduate_rate]);
  }
  const bars = segments
    .map(
      ([name, rate]) =>
        `<div class="bar ${name}" data-scenario="${escapeHtml(label)}" data-rate="${name}" ` +
        `style="width:${formatPct(rate)}%"><span>${name} ${formatPct(rate)}%</span></div>`,
    )
    .join("");
  return (
    `<div class="oc-row"><div class="oc-label">${escapeHtml(label)}</div>` +
    `<div class="oc-bars">${bars}</div>` +
    `<div class="oc-n">avg N <span data-rate="avg-n">${formatNum(oc.avg_sample_size)}</span></div></div>`
  );
}

/** The exact shell invocation that reproduces this result from scratch. */
export function copyAsCliCommand(
  config: DesignConfig,
  kind: "calibrate" | "simulate",
  design?: DesignParams,
): string {
  const hash = configHash(design ? { config, design } : config);
  const lines = [
    `cat > design-${hash}.json <<'CONFIG'`,
    canonicalJson(config),
    "CONFIG",
  ];
  if (kind === "simulate" && design) {
    lines.push(`cat > params-${hash}.json <<'PARAMS'`, canonicalJson(design), "PARAMS");
    lines.push(
      `bop2dc simulate design-${hash}.json --design params-${hash}.json --out results-${hash}/`,
    );
  } else {
    lines.push(`bop2dc calibrate design-${hash}.json --out results-${hash}/`);
  }
  return lines.join("\n");
}

export function renderCalibration(payload: CalibrationPayload): string {
  const hash = configHash(payload.config);
  const result = payload.result;
  const parts = [
    `<section class="result" data-config-hash="${hash}">`,
    `<p class="hash">config <code data-role="config-hash">${hash}</code></p>`,
  ];
  if (!result.feasible) {
    parts.push(
      `<p class="infeasible" data-role="infeasible">No design on the grid met every ` +
        `constraint. The nearest point (smallest worst violation) is shown for diagnostics.</p>`,
    );
  }
  parts.push(renderParams(result.params));
  parts.push(renderConstraintBadges(result));
  parts.push(
    `<p class="metrics">correct-go rate <span data-metric="cgr">${formatPct(result.metrics.cgr)}</span>%` +
      `, expected N under futility <span data-metric="expected-n">${formatNum(
        result.metrics.expected_n_futile,
      )}</span></p>`,
  );
  parts.push(renderOcBars("futile scenario", result.oc_futile));
  parts.push(renderOcBars("effective scenario", result.oc_effective));
  if (payload.decision_table) {
    parts.push(renderDecisionTable(payload.decision_table));
  }
  parts.push(
    `<details><summary>copy as CLI</summary><pre data-role="cli">${escapeHtml(
      copyAsCliCommand(payload.config, "calibrate"),
    )}</pre></details>`,
  );
  parts.push("</section>");
  return parts.join("\n");
}

const OC_COLUMNS = [
  "scenario",
  "design",
  "theta_lrv",
  "theta_cmv",
  "theta_true",
  "go_pct",
  "nogo_pct",
  "consider_pct",
  "avg_sample_size",
] as const;

/** One engine-formatted OC row; cells are taken verbatim from the payload. */
function renderOcCells(row: OcRow): string {
  return OC_COLUMNS.map(
    (col) => `<td data-col="${col}">${escapeHtml(row[col] ?? "")}</td>`,
  ).join("");
}

export function renderSimulationTable(payload: SimulationPayload): string {
  const rows = payload.oc_table
    .map((row) => `<tr data-scenario="${escapeHtml(row.scenario ?? "")}">${renderOcCells(row)}</tr>`)
    .join("");
  const header = OC_COLUMNS.map((c) => `<th>${c}</th>`).join("");
  return (
    `<table class="oc-table" data-config-hash="${configHash(payload.config)}">` +
    `<thead><tr>${header}</tr></thead><tbody>${rows}</tbody></table>`
  );
}

export interface ComparisonColumn {
  label: string;
  ok: boolean;
  payload?: SimulationPayload;
  error?: string;
}

/** Side-by-side what-if table in the familiar OC-table column layout: one row
 * per (variant, scenario), error rows for variants that failed. */
export function renderComparison(columns: ComparisonColumn[]): string {
  const header = ["variant", ...OC_COLUMNS].map((c) => `<th>${c}</th>`).join("");
  const body = columns
    .map((col) => {
      if (!col.ok || !col.payload) {
        return (
          `<tr data-variant="${escapeHtml(col.label)}" class="failed">` +
          `<td>${escapeHtml(col.label)}</td>` +
          `<td colspan="${OC_COLUMNS.length}" data-role="error">${escapeHtml(
            col.error ?? "failed",
          )}</td></tr>`
        );
      }
      return col.payload.oc_table
        .map(
          (row) =>
            `<tr data-variant="${escapeHtml(col.label)}">` +
            `<td>${escapeHtml(col.label)}</td>${renderOcCells(row)}</tr>`,
        )
        .join("");
    })
    .join("");
  return `<table class="comparison"><thead><tr>${header}</tr></thead><tbody>${body}</tbody></table>`;
}

export function renderProgress(state: string, progress: number): string {
  return (
    `<div class="progress" data-state="${escapeHtml(state)}" data-progress="${progress}">` +
    `<div class="progress-fill" style="width:${formatPct(progress)}%"></div>` +
    `<span>${escapeHtml(state)} ${formatPct(progress)}%</span></div>`
  );
}
