// Shareable permalinks: the whole composer state round-trips through the
// URL fragment, so decode(encode(state)) always equals state.

import type { ComposerState } from "./types.js";
import { EMPTY_STATE } from "./types.js";

export function encodeState(state: ComposerState): string {
  if (state.radical === null) {
    return "";
  }
  const parts = [`r=${encodeURIComponent(state.radical)}`];
  const regions = Object.keys(state.assignment).sort();
  if (regions.length > 0) {
    const assignment = regions
      .map((region) => {
        const mark = state.assignment[region];
        return `${encodeURIComponent(region)}:${encodeURIComponent(mark ?? "")}`;
      })
      .join(",");
    parts.push(`a=${assignment}`);
  }
  if (state.rules.length > 0) {
    parts.push(`d=${state.rules.map(encodeURIComponent).join(",")}`);
  }
  if (state.abbreviated) {
    parts.push("abbr=1");
  }
  return parts.join("&");
}

export function decodeState(fragment: string): ComposerState {
  const text = fragment.startsWith("#") ? fragment.slice(1) : fragment;
  if (text === "") {
    return EMPTY_STATE;
  }
  const fields = new Map<string, string>();
  for (const piece of text.split("&")) {
    const eq = piece.indexOf("=");
    if (eq > 0) {
      fields.set(piece.slice(0, eq), piece.slice(eq + 1));
    }
  }
  const radical = fields.get("r");
  if (!radical) {
    return EMPTY_STATE;
  }
  const assignment: Record<string, string> = {};
  const packed = fields.get("a");
  if (packed) {
    for (const entry of packed.split(",")) {
      const colon = entry.indexOf(":");
      if (colon > 0) {
        assignment[decodeURIComponent(entry.slice(0, colon))] =
          decodeURIComponent(entry.slice(colon + 1));
      }
    }
  }
  const rules = (fields.get("d") ?? "")
    .split(",")
    .filter((r) => r !== "")
    .map(decodeURIComponent);
  return {
    radical: decodeURIComponent(radical),
    assignment,
    rules,
    abbreviated: fields.get("abbr") === "1",
  };
}
