import assert from "node:assert/strict";
import { test } from "node:test";
import { applicableRules, applyRule, composeSpec, removeRule, selectRadical, toggleAbbreviated, toggleRegion, } from "../src/state.js";
const DETAIL = {
    id: "hausdorff-space",
    name: "Hausdorff space",
    family: "topological",
    regions: 2,
    catalog_key: "hausdorff-space",
    derives_from: null,
    baseline: [["topology", "+"]],
    limit_file: null,
    region_schema: [
        {
            name: "center",
            constraint: "compactness",
            constraint_name: "compact",
            negatable: true,
            anchor: [0.5, 0.5],
            extent: [0.16, 0.16],
            expandable: false,
        },
        {
            name: "frozen",
            constraint: "rigid",
            constraint_name: "rigid",
            negatable: false,
            anchor: [0.2, 0.2],
            extent: [0.1, 0.1],
            expandable: false,
        },
    ],
    rules: [
        { id: "banach", name: "banach", requires: ["vector-space"], adds: [], concept: null },
        { id: "vector-space", name: "vector space", requires: [], adds: [], concept: null },
        { id: "hilbert", name: "hilbert", requires: ["banach"], adds: [], concept: null },
    ],
    marks: [
        { id: "dot", polarity: "positive", printable: "filled-dot" },
        { id: "circle", polarity: "negative", printable: "open-circle" },
    ],
};
const CATEGORY_DETAIL = {
    ...DETAIL,
    id: "category",
    limit_file: "limit",
    region_schema: [],
    rules: [],
};
test("toggle cycles absent -> positive -> negative -> absent", () => {
    let state = selectRadical("hausdorff-space");
    state = toggleRegion(state, DETAIL, "center");
    assert.equal(state.assignment["center"], "dot");
    state = toggleRegion(state, DETAIL, "center");
    assert.equal(state.assignment["center"], "circle");
    state = toggleRegion(state, DETAIL, "center");
    assert.equal(state.assignment["center"], undefined);
});
test("non-negatable constraints skip the negative step", () => {
    let state = selectRadical("hausdorff-space");
    state = toggleRegion(state, DETAIL, "frozen");
    assert.equal(state.assignment["frozen"], "dot");
    state = toggleRegion(state, DETAIL, "frozen");
    assert.equal(state.assignment["frozen"], undefined);
});
test("toggling an unknown region is a no-op", () => {
    const state = selectRadical("hausdorff-space");
    assert.deepEqual(toggleRegion(state, DETAIL, "nowhere"), state);
});
test("rules gate on their prerequisites", () => {
    let state = selectRadical("hausdorff-space");
    assert.deepEqual(applicableRules(state, DETAIL).map((r) => r.id), ["vector-space"]);
    // Precondition violations are prevented at the control level.
    assert.deepEqual(applyRule(state, DETAIL, "banach"), state);
    state = applyRule(state, DETAIL, "vector-space");
    state = applyRule(state, DETAIL, "banach");
    assert.deepEqual(state.rules, ["vector-space", "banach"]);
    assert.deepEqual(applicableRules(state, DETAIL).map((r) => r.id), ["hilbert"]);
});
test("removing a rule removes its dependents", () => {
    let state = selectRadical("hausdorff-space");
    state = applyRule(state, DETAIL, "vector-space");
    state = applyRule(state, DETAIL, "banach");
    state = applyRule(state, DETAIL, "hilbert");
    state = removeRule(state, DETAIL, "banach");
    assert.deepEqual(state.rules, ["vector-space"]);
});
test("abbreviation only toggles when the radical has a limit file", () => {
    let state = selectRadical("category");
    assert.equal(toggleAbbreviated(state, DETAIL), state);
    state = toggleAbbreviated(state, CATEGORY_DETAIL);
    assert.equal(state.abbreviated, true);
    state = toggleAbbreviated(state, CATEGORY_DETAIL);
    assert.equal(state.abbreviated, false);
});
test("selecting a radical resets everything", () => {
    let state = selectRadical("hausdorff-space");
    state = toggleRegion(state, DETAIL, "center");
    state = applyRule(state, DETAIL, "vector-space");
    const fresh = selectRadical("set");
    assert.deepEqual(fresh.assignment, {});
    assert.deepEqual(fresh.rules, []);
    assert.equal(fresh.abbreviated, false);
});
test("compose spec mirrors the state", () => {
    let state = selectRadical("hausdorff-space");
    state = toggleRegion(state, DETAIL, "center");
    assert.deepEqual(composeSpec(state), {
        radical: "hausdorff-space",
        assignment: { center: "dot" },
        rules: [],
        abbreviated: false,
    });
});
