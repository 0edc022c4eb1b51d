import assert from "node:assert/strict";
import { test } from "node:test";
import { decodeState, encodeState } from "../src/permalink.js";
import { EMPTY_STATE } from "../src/types.js";
const SAMPLES = [
    EMPTY_STATE,
    { radical: "set", assignment: {}, rules: [], abbreviated: false },
    {
        radical: "hausdorff-space",
        assignment: { center: "dot", connectivity: "circle" },
        rules: [],
        abbreviated: false,
    },
    {
        radical: "set",
        assignment: {},
        rules: ["group", "abelian", "vector-space"],
        abbreviated: false,
    },
    {
        radical: "category",
        assignment: {},
        rules: ["topos"],
        abbreviated: true,
    },
];
test("decode(encode(state)) is the identity", () => {
    for (const state of SAMPLES) {
        assert.deepEqual(decodeState(encodeState(state)), state);
    }
});
test("decode accepts a leading hash mark", () => {
    const state = SAMPLES[2];
    assert.deepEqual(decodeState(`#${encodeState(state)}`), state);
});
test("assignment order does not leak into the permalink", () => {
    const a = {
        radical: "x",
        assignment: { p: "dot", q: "circle" },
        rules: [],
        abbreviated: false,
    };
    const b = {
        radical: "x",
        assignment: { q: "circle", p: "dot" },
        rules: [],
        abbreviated: false,
    };
    assert.equal(encodeState(a), encodeState(b));
});
test("garbage fragments decode to the empty state", () => {
    assert.deepEqual(decodeState("#not&a=real|permalink"), EMPTY_STATE);
    assert.deepEqual(decodeState(""), EMPTY_STATE);
});
test("encoding round-trips names that need escaping", () => {
    const state = {
        radical: "odd-radical",
        assignment: { "region-1": "dot" },
        rules: ["rule-a"],
        abbreviated: false,
    };
    assert.deepEqual(decodeState(encodeState(state)), state);
});
