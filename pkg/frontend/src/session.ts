/** The design session: one draft config, its validation state, submitted jobs,
 * and results cached under the hash of the exact config that produced them. */

import { configHash } from "./hash.js";
import type { CalibrationPayload, DesignConfig, FieldError, SimulationPayload } from "./types.js";

export type ValidationState =
  | { kind: "unchecked" }
  | { kind: "valid"; echo: DesignConfig }
  | { kind: "invalid"; errors: FieldError[] }
  | { kind: "offline"; message: string };

export type ResultPayload = CalibrationPayload | SimulationPayload;

export class DesignSession {
  private draftValue: DesignConfig;
  private validationValue: ValidationState = { kind: "unchecked" };
  private readonly results = new Map<string, ResultPayload>();
  readonly jobIds: string[] = [];

  constructor(draft: DesignConfig) {
    this.draftValue = draft;
  }

  get draft(): DesignConfig {
    return this.draftValue;
  }

  get validation(): ValidationState {
    return this.validationValue;
  }

  get draftHash(): string {
    return configHash(this.draftValue);
  }

  /** Any edit resets validation; cached results stay but stop being current. */
  setDraft(next: DesignConfig): void {
    this.draftValue = next;
    this.validationValue = { kind: "unchecked" };
  }

  setValidation(state: ValidationState): void {
    this.validationValue = state;
  }

  trackJob(jobId: string): void {
    this.jobIds.push(jobId);
  }

  cacheResult(hash: string, payload: ResultPayload): void {
    this.results.set(hash, payload);
  }

  resultFor(hash: string): ResultPayload | undefined {
    return this.results.get(hash);
  }

  /** The result to display for the current draft, or undefined if the draft
   * has drifted from everything computed so far (the stale case). */
  currentResult(): ResultPayload | undefined {
    return this.results.get(this.draftHash);
  }

  /** True when a previously computed result exists but no longer matches the
   * draft; the UI must show it as invalidated rather than current. */
  hasStaleResults(): boolean {
    return this.results.size > 0 && !this.results.has(this.draftHash);
  }
}
