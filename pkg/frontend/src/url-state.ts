/** Shareable sessions: the draft config (and a chosen design, if any) round-
 * trips through the URL fragment losslessly. */

import { canonicalJson } from "./hash.js";
import type { DesignConfig, DesignParams } from "./types.js";

export interface UrlState {
  config: DesignConfig;
  design?: DesignParams;
}

function toBase64Url(text: string): string {
  const bytes = new TextEncoder().encode(text);
  let binary = "";
  for (const byte of bytes) {
    binary += String.fromCharCode(byte);
  }
  const b64 = (typeof btoa === "function" ? btoa(binary) : Buffer.from(bytes).toString("base64"));
  return b64.replace(/\+/g, "-").replace(/\//g, "_").replace(/=+$/, "");
}

function fromBase64Url(encoded: string): string {
  const b64 = encoded.replace(/-/g, "+").replace(/_/g, "/");
  if (typeof atob === "function") {
    const binary = atob(b64);
    const bytes = Uint8Array.from(binary, (c) => c.charCodeAt(0));
    return new TextDecoder().decode(bytes);
  }
  return Buffer.from(b64, "base64").toString("utf-8");
}

/** Canonical serialization keeps equal states byte-equal, so a URL doubles as
 * a config fingerprint. */
export function encodeState(state: UrlState): string {
  return toBase64Url(canonicalJson(state));
}

export function decodeState(encoded: string): UrlState {
  const parsed = JSON.parse(fromBase64Url(encoded)) as UrlState;
  if (parsed === null || typeof parsed !== "object" || !parsed.config) {
    throw new Error("URL state does not contain a design config");
  }
  return parsed;
}

export function stateToFragment(state: UrlState): string {
  return `#s=${encodeState(state)}`;
}

export function stateFromFragment(fragment: string): UrlState | null {
  const match = /#s=([A-Za-z0-9_-]+)/.exec(fragment);
  return match ? decodeState(match[1]) : null;
}
