/* Typed client against recorded responses: shapes, envelopes, races. */

import { describe, expect, it } from "vitest";
import {
  ApiClient,
  ApiError,
  canonicalJson,
  type Backend,
  type HttpResult,
} from "../src/api.js";
import { RequestGate } from "../src/gate.js";
import { Session } from "../src/controller.js";
import { A2, A2_FLIPPED, STAR, STAR_POINT, fixtureBackend } from "./fixtures.js";

describe("canonicalJson", () => {
  it("is insensitive to object key order", () => {
    expect(canonicalJson({ a: 1, b: [2, 3] })).toBe(canonicalJson({ b: [2, 3], a: 1 }));
  });

  it("keeps array order and drops undefined fields", () => {
    expect(canonicalJson([1, 2])).not.toBe(canonicalJson([2, 1]));
    expect(canonicalJson({ a: 1, b: undefined })).toBe(canonicalJson({ a: 1 }));
  });
});

describe("endpoint wrappers", () => {
  const api = new ApiClient(fixtureBackend());

  it("mutate returns the flipped quiver", async () => {
    const next = await api.mutate(A2, 1);
    expect(canonicalJson(next)).toBe(canonicalJson(A2_FLIPPED));
  });

  it("mutate surfaces the error envelope as ApiError", async () => {
    const err = await api.mutate(A2, 5).catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).status).toBe(400);
    expect((err as ApiError).code).toBe("bad-vertex");
  });

  it("classify reports the expected shape", async () => {
    const doc = await api.classify(STAR);
    expect(doc.classes.acyclic).toBe(true);
    expect(doc.gcd_vector).toHaveLength(3);
    expect(doc.quiver.n).toBe(3);
  });

  it("dilation returns the star equations", async () => {
    const doc = await api.dilation(STAR);
    expect(doc.structure.torus_rank).toBe(1);
    expect(doc.equations).toContain("t1^3 = 1");
    expect(doc.equations).toContain("t2^3 t3^2 = 1");
  });

  it("stabilizer distinguishes the open and frozen cases", async () => {
    const open = await api.stabilizer(STAR, STAR_POINT, []);
    const frozen = await api.stabilizer(STAR, STAR_POINT, [2]);
    expect(open.structure.trivial).toBe(true);
    expect(frozen.structure.trivial).toBe(false);
    expect(frozen.structure.torsion).toEqual([2]);
  });

  it("validate flags a broken relation with a message", async () => {
    const bad = await api.validate(A2, { p: ["0", "0"], p_prime: ["5", "0"], frozen: [] });
    expect(bad.valid).toBe(false);
    expect(bad.errors.length).toBeGreaterThan(0);
  });

  it("propagate returns chart values for a word", async () => {
    const chart = await api.propagate(STAR, STAR_POINT, [1]);
    expect(chart.word).toEqual([1]);
    expect(chart.values).toHaveLength(3);
  });

  it("deep check reports the star point as mysterious", async () => {
    const verdict = await api.deepCheck(STAR, STAR_POINT);
    expect(verdict.status).toBe("mysterious");
    expect(verdict.deep?.kind).toBe("Deep");
    expect(verdict.deep?.certificate?.kind).toBe("GcdStar");
  });

  it("gallery filters by id substring", async () => {
    const report = await api.gallery("a2-five-tori");
    expect(report.ok).toBe(true);
    expect(report.results).toHaveLength(1);
    expect(report.results[0].id).toBe("a2-five-tori");
    const full = await api.gallery("");
    expect(full.results.length).toBeGreaterThan(10);
  });
});

describe("request gate", () => {
  it("accepts only the newest token per lane", () => {
    const gate = new RequestGate();
    const a = gate.begin("act");
    expect(gate.accepts("act", a)).toBe(true);
    const b = gate.begin("act");
    expect(gate.accepts("act", a)).toBe(false);
    expect(gate.accepts("act", b)).toBe(true);
    expect(gate.accepts("other", 1)).toBe(false);
  });
});

describe("stale responses", () => {
  async function until(cond: () => boolean): Promise<void> {
    for (let i = 0; i < 100 && !cond(); i++) {
      await new Promise((r) => setTimeout(r, 0));
    }
    expect(cond()).toBe(true);
  }

  it("a slow first click cannot overwrite a faster second one", async () => {
    const pending: { path: string; resolve: (r: HttpResult) => void }[] = [];
    const backend: Backend = {
      post: (path) => new Promise((resolve) => pending.push({ path, resolve })),
      get: () => Promise.reject(new Error("unused")),
    };
    const rows = fixtureBackend();
    const canned = (path: string, body: unknown) => rows.post(path, body);

    const session = new Session(new ApiClient(backend), A2);
    const first = session.mutateClick(1); // requests index 0
    const second = session.mutateClick(1); // requests index 1
    await until(() => pending.length === 2);
    expect(pending.map((p) => p.path)).toEqual([
      "/api/quiver/mutate",
      "/api/quiver/mutate",
    ]);

    // let the second click finish completely first
    pending[1].resolve(await canned("/api/quiver/mutate", { quiver: A2, k: 1 }));
    await until(() => pending.length === 3);
    pending[2].resolve(await canned("/api/quiver/classify", { quiver: A2_FLIPPED }));
    await until(() => pending.length === 4);
    pending[3].resolve(await canned("/api/dilation", { quiver: A2_FLIPPED }));
    await second;
    expect(session.state.done).toHaveLength(1);
    const committed = canonicalJson(session.state);

    // now drain the stale first click; it must change nothing
    pending[0].resolve(await canned("/api/quiver/mutate", { quiver: A2, k: 1 }));
    await until(() => pending.length === 5);
    pending[4].resolve(await canned("/api/quiver/classify", { quiver: A2_FLIPPED }));
    await until(() => pending.length === 6);
    pending[5].resolve(await canned("/api/dilation", { quiver: A2_FLIPPED }));
    await first;
    expect(canonicalJson(session.state)).toBe(committed);
    expect(session.state.done).toHaveLength(1);
  });
});
