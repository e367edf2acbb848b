/** Payload shapes of the calibration service. The UI never computes statistics;
 * it renders exactly what these carry. */

export interface FieldError {
  path: string;
  message: string;
}

/** A design config as the engine accepts and echoes it. The echo always has
 * every default filled in, so it is the reproducible form. */
export interface DesignConfig {
  endpoint: Record<string, unknown>;
  plan: Record<string, unknown>;
  profile: Record<string, unknown>;
  priors?: Record<string, unknown>;
  constraints?: Record<string, number>;
  objective?: string;
  grid?: Record<string, number[]>;
  simulation?: Record<string, number>;
  calibration_truth?: Record<string, unknown>;
  scenarios?: Array<Record<string, unknown>>;
}

export type JobState = "queued" | "running" | "done" | "failed";

export interface JobRecord {
  id: string;
  kind: string;
  state: JobState;
  progress: number;
  config: DesignConfig;
  error?: string;
}

export interface DesignParams {
  lambda_lrv: number;
  lambda_cmv: number;
  gamma_lrv: number;
  gamma_cmv: number;
}

export interface OperatingCharacteristics {
  go_rate: number;
  nogo_rate: number;
  consider_rate: number;
  graduate_rate: number;
  avg_sample_size: number;
  avg_duration_months: number | null;
  n_sims: number;
  mc_se: Record<string, number>;
}

export interface CalibrationResult {
  params: DesignParams;
  objective: string;
  objective_value: number;
  feasible: boolean;
  evaluation: string;
  n_grid_points: number;
  n_feasible: number;
  constraints: {
    max_false_go: number;
    max_false_nogo: number;
    max_false_consider: number;
  };
  metrics: {
    fgr: number;
    fngr: number;
    cgr: number;
    fcr: number;
    expected_n_futile: number;
  };
  oc_futile: OperatingCharacteristics;
  oc_effective: OperatingCharacteristics;
  validation_futile?: OperatingCharacteristics;
  validation_effective?: OperatingCharacteristics;
}

export interface DecisionTable {
  looks: number[];
  stop_bounds: number[];
  go_bound: number;
  consider_range: number[] | null;
}

export interface CalibrationPayload {
  config: DesignConfig;
  result: CalibrationResult;
  protocol: string;
  decision_table?: DecisionTable;
}

/** Rows of the engine-rendered OC table; every cell is a pre-formatted string. */
export type OcRow = Record<string, string>;

export interface SimulationPayload {
  config: DesignConfig;
  design: DesignParams;
  oc_table: OcRow[];
  oc_csv: string;
  oc_raw: Array<{ scenario: string } & OperatingCharacteristics>;
}
