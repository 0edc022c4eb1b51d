// Pure state transitions. Every control on the page is one of these
// functions; none of them computes semantics, they only shape the next
// compose request.

import type { ComposerState, MarkInfo, RadicalDetail, RuleInfo } from "./types.js";
import { EMPTY_STATE } from "./types.js";

export function selectRadical(radical: string): ComposerState {
  return { ...EMPTY_STATE, radical };
}

function markByPolarity(
  marks: MarkInfo[],
  polarity: "positive" | "negative",
): MarkInfo | undefined {
  return marks.find((m) => m.polarity === polarity);
}

/**
 * Cycle one region: absent -> positive -> negative (when the region's
 * constraint is negatable) -> absent.
 */
export function toggleRegion(
  state: ComposerState,
  detail: RadicalDetail,
  region: string,
): ComposerState {
  const info = detail.region_schema.find((r) => r.name === region);
  if (!info) {
    return state;
  }
  const positive = markByPolarity(detail.marks, "positive");
  const negative = markByPolarity(detail.marks, "negative");
  const current = state.assignment[region];
  const assignment = { ...state.assignment };
  if (current === undefined && positive) {
    assignment[region] = positive.id;
  } else if (positive && current === positive.id && info.negatable && negative) {
    assignment[region] = negative.id;
  } else {
    delete assignment[region];
  }
  return { ...state, assignment };
}

/** Rules whose prerequisites are all applied; everything else is greyed out. */
export function applicableRules(
  state: ComposerState,
  detail: RadicalDetail,
): RuleInfo[] {
  const applied = new Set(state.rules);
  return detail.rules.filter(
    (rule) =>
      !applied.has(rule.id) && rule.requires.every((req) => applied.has(req)),
  );
}

export function applyRule(
  state: ComposerState,
  detail: RadicalDetail,
  ruleId: string,
): ComposerState {
  if (state.rules.includes(ruleId)) {
    return state;
  }
  const rule = detail.rules.find((r) => r.id === ruleId);
  if (!rule || !applicableRules(state, detail).some((r) => r.id === ruleId)) {
    return state; // precondition violations are prevented, not reported
  }
  return { ...state, rules: [...state.rules, ruleId] };
}

/** Remove a rule along with every applied rule that depends on it. */
export function removeRule(
  state: ComposerState,
  detail: RadicalDetail,
  ruleId: string,
): ComposerState {
  const doomed = new Set([ruleId]);
  let grew = true;
  while (grew) {
    grew = false;
    for (const applied of state.rules) {
      if (doomed.has(applied)) {
        continue;
      }
      const rule = detail.rules.find((r) => r.id === applied);
      if (rule && rule.requires.some((req) => doomed.has(req))) {
        doomed.add(applied);
        grew = true;
      }
    }
  }
  return { ...state, rules: state.rules.filter((r) => !doomed.has(r)) };
}

export function toggleAbbreviated(
  state: ComposerState,
  detail: RadicalDetail,
): ComposerState {
  if (detail.limit_file === null) {
    return state;
  }
  return { ...state, abbreviated: !state.abbreviated };
}

/** The compose request body for the current state. */
export function composeSpec(state: ComposerState): Record<string, unknown> {
  return {
    radical: state.radical,
    assignment: state.assignment,
    rules: state.rules,
    abbreviated: state.abbreviated,
  };
}
