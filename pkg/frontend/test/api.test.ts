import assert from "node:assert/strict";
import { test } from "node:test";

import { RegistryClient, ServiceError } from "../src/api.js";
import type { FetchLike } from "../src/api.js";

function jsonResponse(payload: unknown, status = 200): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

test("compose delivers the response when it is the newest request", async () => {
  const fetchStub: FetchLike = async () =>
    jsonResponse({ svg: "<svg/>", constraints: [], concept: null });
  const client = new RegistryClient("http://service", fetchStub);
  const outcome = await client.compose({ radical: "set" });
  assert.equal(outcome.stale, false);
  assert.equal(outcome.response?.svg, "<svg/>");
});

test("an older in-flight compose is superseded by a newer one", async () => {
  const gates: Array<() => void> = [];
  const fetchStub: FetchLike = (input, init) => {
    const body = JSON.parse(String(init?.body)) as { radical: string };
    return new Promise((resolve) => {
      gates.push(() =>
        resolve(jsonResponse({ svg: `<svg>${body.radical}</svg>` })),
      );
    });
  };
  const client = new RegistryClient("http://service", fetchStub);
  const first = client.compose({ radical: "old" });
  const second = client.compose({ radical: "new" });
  // Resolve out of order: the old response arrives after the new request
  // was issued, so it must be dropped.
  gates[0]!();
  gates[1]!();
  const firstOutcome = await first;
  const secondOutcome = await second;
  assert.equal(firstOutcome.stale, true);
  assert.equal(firstOutcome.response, undefined);
  assert.equal(secondOutcome.stale, false);
  assert.equal(secondOutcome.response?.svg, "<svg>new</svg>");
});

test("service errors surface with the server's message", async () => {
  const fetchStub: FetchLike = async () =>
    jsonResponse({ error: { message: "unknown region 'middle'" } }, 422);
  const client = new RegistryClient("http://service", fetchStub);
  await assert.rejects(
    client.compose({ radical: "hausdorff-space" }),
    (err: unknown) =>
      err instanceof ServiceError &&
      err.status === 422 &&
      err.message.includes("middle"),
  );
});

test("radicals unwraps the listing payload", async () => {
  const fetchStub: FetchLike = async (input) => {
    assert.ok(String(input).endsWith("/radicals"));
    return jsonResponse({ radicals: [{ id: "set", name: "set" }] });
  };
  const client = new RegistryClient("http://service", fetchStub);
  const radicals = await client.radicals();
  assert.equal(radicals.length, 1);
  assert.equal(radicals[0]?.id, "set");
});
