/* Pure session-state algebra: stacks, words, replay. */

import { describe, expect, it } from "vitest";
import type { QuiverDoc } from "../src/api.js";
import {
  type HistoryEntry,
  type SessionState,
  type Snapshot,
  canRedo,
  canUndo,
  emptyVerdicts,
  mutationWord,
  newSession,
  pushEntry,
  redoStep,
  replayCurrent,
  sameDoc,
  undoStep,
} from "../src/state.js";
import { A2, A2_FLIPPED } from "./fixtures.js";

function snap(quiver: QuiverDoc, frozen: number[] = []): Snapshot {
  return { quiver, frozen, verdicts: emptyVerdicts() };
}

function entry(label: string, mutated: number | null, before: Snapshot, after: Snapshot): HistoryEntry {
  return { label, mutated, before, after };
}

describe("session state", () => {
  it("starts with empty stacks and the given quiver", () => {
    const state = newSession(A2);
    expect(state.current.quiver).toBe(A2);
    expect(canUndo(state)).toBe(false);
    expect(canRedo(state)).toBe(false);
    expect(mutationWord(state)).toEqual([]);
  });

  it("push, undo, redo round-trip losslessly", () => {
    const s0 = newSession(A2);
    const e1 = entry("mutate 1", 1, s0.current, snap(A2_FLIPPED));
    const s1 = pushEntry(s0, e1);
    const e2 = entry("freeze 2", null, s1.current, snap(A2_FLIPPED, [2]));
    const s2 = pushEntry(s1, e2);

    expect(mutationWord(s2)).toEqual([1]);
    const back1 = undoStep(s2);
    expect(sameDoc(back1.current, s1.current)).toBe(true);
    const back0 = undoStep(back1);
    expect(sameDoc(back0.current, s0.current)).toBe(true);
    expect(canUndo(back0)).toBe(false);

    const fwd1 = redoStep(back0);
    expect(sameDoc(fwd1.current, s1.current)).toBe(true);
    const fwd2 = redoStep(fwd1);
    expect(sameDoc(fwd2.current, s2.current)).toBe(true);
    expect(sameDoc(fwd2.done, s2.done)).toBe(true);
  });

  it("a new action clears the redo stack", () => {
    const s0 = newSession(A2);
    const s1 = pushEntry(s0, entry("mutate 1", 1, s0.current, snap(A2_FLIPPED)));
    const s2 = undoStep(s1);
    expect(canRedo(s2)).toBe(true);
    const s3 = pushEntry(s2, entry("mutate 2", 2, s2.current, snap(A2_FLIPPED)));
    expect(canRedo(s3)).toBe(false);
  });

  it("undo and redo at the stops are identities", () => {
    const s0 = newSession(A2);
    expect(undoStep(s0)).toBe(s0);
    expect(redoStep(s0)).toBe(s0);
  });

  it("mutation word skips freeze entries and survives undo", () => {
    const s0 = newSession(A2);
    const s1 = pushEntry(s0, entry("mutate 2", 2, s0.current, snap(A2_FLIPPED)));
    const s2 = pushEntry(s1, entry("freeze 1", null, s1.current, snap(A2_FLIPPED, [1])));
    const s3 = pushEntry(s2, entry("mutate 1", 1, s2.current, snap(A2)));
    expect(mutationWord(s3)).toEqual([2, 1]);
    expect(mutationWord(undoStep(s3))).toEqual([2]);
  });

  it("replayCurrent checks the word against a mutate oracle", async () => {
    const flips: Record<string, QuiverDoc> = {};
    flips[JSON.stringify([A2, 1])] = A2_FLIPPED;
    flips[JSON.stringify([A2_FLIPPED, 1])] = A2;
    const mutate = async (q: QuiverDoc, k: number): Promise<QuiverDoc> => {
      const hit = flips[JSON.stringify([q, k])];
      if (hit === undefined) {
        throw new Error("unexpected replay step");
      }
      return hit;
    };

    const s0 = newSession(A2);
    const s1 = pushEntry(s0, entry("mutate 1", 1, s0.current, snap(A2_FLIPPED)));
    await expect(replayCurrent(s1, mutate)).resolves.toBe(true);

    const broken: SessionState = { ...s1, current: snap(A2) };
    await expect(replayCurrent(broken, mutate)).resolves.toBe(false);
  });
});
