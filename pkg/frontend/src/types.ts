// Payload shapes of the read-only registry service, plus the composer state.

export interface RadicalSummary {
  id: string;
  name: string;
  family: string;
  regions: number;
  catalog_key: string | null;
}

export interface RegionInfo {
  name: string;
  constraint: string;
  constraint_name: string;
  negatable: boolean;
  anchor: [number, number];
  extent: [number, number];
  expandable: boolean;
}

export interface RuleInfo {
  id: string;
  name: string;
  requires: string[];
  adds: [string, string][];
  concept: string | null;
}

export interface MarkInfo {
  id: string;
  polarity: "positive" | "negative";
  printable: string;
}

export interface RadicalDetail extends RadicalSummary {
  derives_from: string | null;
  baseline: [string, string][];
  limit_file: string | null;
  region_schema: RegionInfo[];
  rules: RuleInfo[];
  marks: MarkInfo[];
}

export interface ComposeResponse {
  svg: string;
  constraints: [string, string][];
  concept: { id: string; name: string } | null;
  canonical_id: string;
  canonical_key: string;
  literal: string;
  irregular: boolean;
}

/**
 * The whole composer session. Semantics never live here: constraints and
 * concept labels are always verbatim from the last service response.
 */
export interface ComposerState {
  radical: string | null;
  assignment: Record<string, string>; // region name -> mark id
  rules: string[]; // applied rule ids, in application order
  abbreviated: boolean;
}

export const EMPTY_STATE: ComposerState = {
  radical: null,
  assignment: {},
  rules: [],
  abbreviated: false,
};
