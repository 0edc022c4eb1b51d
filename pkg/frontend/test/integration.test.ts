// End-to-end: the composer loop against a real `vtt serve` process.
//
// Covers the full acceptance path for the UI: selecting the Hausdorff
// radical and toggling its center region yields the compact-Hausdorff SVG
// byte-equal to the CLI render plus the right concept label, the
// set -> group -> abelian -> vector space chain is reachable purely through
// rule controls, and permalinks reproduce state (and therefore pixels)
// exactly.

import assert from "node:assert/strict";
import { spawn, spawnSync } from "node:child_process";
import { existsSync, mkdtempSync, readFileSync, readdirSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, resolve } from "node:path";
import { after, before, test } from "node:test";

import { RegistryClient } from "../src/api.js";
import { decodeState, encodeState } from "../src/permalink.js";
import {
  applicableRules,
  applyRule,
  composeSpec,
  selectRadical,
  toggleRegion,
} from "../src/state.js";

const PYTHON = process.env.PYTHON ?? "python3";

function findRepoRoot(): string {
  let dir = import.meta.dirname;
  for (let i = 0; i < 6; i++) {
    if (existsSync(join(dir, "src", "vtt", "seed.vtt"))) {
      return dir;
    }
    dir = resolve(dir, "..");
  }
  throw new Error("seed.vtt not found above the test directory");
}

const REPO_ROOT = findRepoRoot();
const SEED = join(REPO_ROOT, "src", "vtt", "seed.vtt");

let serveProcess: ReturnType<typeof spawn> | null = null;
let client: RegistryClient;
let workDir: string;
let registryPath: string;

function run(args: string[]): void {
  const result = spawnSync(PYTHON, ["-m", "vtt.cli", ...args], {
    cwd: REPO_ROOT,
    encoding: "utf-8",
  });
  assert.equal(result.status, 0, result.stderr);
}

before(async () => {
  workDir = mkdtempSync(join(tmpdir(), "vtt-composer-"));
  registryPath = join(workDir, "registry.json");
  run(["compile", SEED, "-o", registryPath]);

  serveProcess = spawn(
    PYTHON,
    ["-m", "vtt.cli", "serve", registryPath, "--bind", "127.0.0.1:0"],
    { cwd: REPO_ROOT, stdio: ["ignore", "pipe", "inherit"] },
  );
  const address = await new Promise<string>((resolvePromise, rejectPromise) => {
    const timer = setTimeout(
      () => rejectPromise(new Error("service did not start")),
      15000,
    );
    serveProcess!.stdout!.once("data", (chunk: Buffer) => {
      clearTimeout(timer);
      const line = chunk.toString();
      const match = line.match(/(http:\/\/[\S]+)/);
      if (match) {
        resolvePromise(match[1]!);
      } else {
        rejectPromise(new Error(`unexpected banner: ${line}`));
      }
    });
  });
  client = new RegistryClient(address);
});

after(() => {
  serveProcess?.kill();
});

test("radical listing covers the seed catalog", async () => {
  const radicals = await client.radicals();
  assert.ok(radicals.length >= 23);
  assert.ok(radicals.some((r) => r.id === "hausdorff-space"));
});

test("toggling the center region yields compact Hausdorff, byte-equal to the CLI", async () => {
  const detail = await client.radicalDetail("hausdorff-space");
  let state = selectRadical("hausdorff-space");
  state = toggleRegion(state, detail, "center");

  const outcome = await client.compose(composeSpec(state));
  assert.equal(outcome.stale, false);
  const response = outcome.response!;
  assert.equal(response.concept?.name, "compact Hausdorff space");
  assert.ok(
    response.constraints.some(([c, s]) => c === "compactness" && s === "+"),
  );

  const renderDir = join(workDir, "render");
  run([
    "render", registryPath,
    "--glyph", "compact-hausdorff-space",
    "-o", renderDir,
  ]);
  const files = readdirSync(renderDir).filter((f) => f.endsWith(".svg"));
  assert.equal(files.length, 1);
  const cliBytes = readFileSync(join(renderDir, files[0]!), "utf-8");
  assert.equal(response.svg, cliBytes);
});

test("the structure chain is reachable through rule controls alone", async () => {
  const detail = await client.radicalDetail("set");
  let state = selectRadical("set");
  const expected: Array<[string, string]> = [
    ["group", "group"],
    ["abelian", "abelian group"],
    ["vector-space", "vector space"],
  ];
  for (const [ruleId, label] of expected) {
    assert.ok(
      applicableRules(state, detail).some((r) => r.id === ruleId),
      `${ruleId} should be applicable`,
    );
    state = applyRule(state, detail, ruleId);
    const outcome = await client.compose(composeSpec(state));
    assert.equal(outcome.response?.concept?.name, label);
  }
  // Rules with unmet prerequisites stay out of reach the whole time.
  assert.ok(!applicableRules(selectRadical("set"), detail)
    .some((r) => r.id === "abelian"));
});

test("structure-only rules never show up on topological radicals", async () => {
  const detail = await client.radicalDetail("hausdorff-space");
  const offered = new Set(detail.rules.map((r) => r.id));
  assert.ok(offered.has("banach"));
  assert.ok(!offered.has("group"));
  assert.ok(!offered.has("abelian"));
});

test("permalinks reproduce state and pixels exactly", async () => {
  const detail = await client.radicalDetail("hausdorff-space");
  let state = selectRadical("hausdorff-space");
  state = toggleRegion(state, detail, "center");
  state = toggleRegion(state, detail, "connectivity");

  const restored = decodeState(encodeState(state));
  assert.deepEqual(restored, state);

  const original = await client.compose(composeSpec(state));
  const reproduced = await client.compose(composeSpec(restored));
  assert.equal(original.response?.svg, reproduced.response?.svg);
  assert.deepEqual(
    original.response?.constraints,
    reproduced.response?.constraints,
  );
});

test("unknown regions come back as a 422 naming the region", async () => {
  await assert.rejects(
    client.compose({ radical: "hausdorff-space", assignment: { middle: "dot" } }),
    (err: Error) => err.message.includes("middle"),
  );
});
