/* Session state for the explorer.
 *
 * Every user action that changes what is on screen is recorded as a
 * history entry holding complete before and after snapshots, so undo and
 * redo are pure stack moves with no recomputation and no server traffic.
 * The mutation word of the session can always be replayed from the
 * initial quiver through the mutate endpoint; replayCurrent checks that.
 */

import type {
  ChartValuesDoc,
  ClassifyDoc,
  DilationDoc,
  MysteriousDoc,
  PointDoc,
  QuiverDoc,
  StabilizerDoc,
} from "./api.js";
import { canonicalJson } from "./api.js";

export interface Verdicts {
  classify: ClassifyDoc | null;
  dilation: DilationDoc | null;
  stabilizer: StabilizerDoc | null;
  values: ChartValuesDoc | null;
}

export interface Snapshot {
  quiver: QuiverDoc;
  /* mutable vertices the user froze on top of the quiver's own frozens */
  frozen: number[];
  verdicts: Verdicts;
}

export interface HistoryEntry {
  label: string;
  /* 1-based vertex for mutation entries, null for freeze toggles */
  mutated: number | null;
  before: Snapshot;
  after: Snapshot;
}

export interface SessionState {
  initial: QuiverDoc;
  point: PointDoc | null;
  deep: MysteriousDoc | null;
  current: Snapshot;
  done: HistoryEntry[];
  undone: HistoryEntry[];
}

export function emptyVerdicts(): Verdicts {
  return { classify: null, dilation: null, stabilizer: null, values: null };
}

export function newSession(quiver: QuiverDoc): SessionState {
  return {
    initial: quiver,
    point: null,
    deep: null,
    current: { quiver, frozen: [], verdicts: emptyVerdicts() },
    done: [],
    undone: [],
  };
}

export function pushEntry(state: SessionState, entry: HistoryEntry): SessionState {
  return {
    ...state,
    current: entry.after,
    done: [...state.done, entry],
    undone: [],
  };
}

export function canUndo(state: SessionState): boolean {
  return state.done.length > 0;
}

export function canRedo(state: SessionState): boolean {
  return state.undone.length > 0;
}

export function undoStep(state: SessionState): SessionState {
  if (!canUndo(state)) {
    return state;
  }
  const entry = state.done[state.done.length - 1];
  return {
    ...state,
    current: entry.before,
    done: state.done.slice(0, -1),
    undone: [...state.undone, entry],
  };
}

export function redoStep(state: SessionState): SessionState {
  if (!canRedo(state)) {
    return state;
  }
  const entry = state.undone[state.undone.length - 1];
  return {
    ...state,
    current: entry.after,
    done: [...state.done, entry],
    undone: state.undone.slice(0, -1),
  };
}

/* 1-based vertices of the applied mutations, oldest first. */
export function mutationWord(state: SessionState): number[] {
  const word: number[] = [];
  for (const entry of state.done) {
    if (entry.mutated !== null) {
      word.push(entry.mutated);
    }
  }
  return word;
}

export function sameDoc(a: unknown, b: unknown): boolean {
  return canonicalJson(a) === canonicalJson(b);
}

/* History invariant: replaying the mutation word from the initial quiver
 * through the mutate endpoint lands on the current quiver. */
export async function replayCurrent(
  state: SessionState,
  mutate: (q: QuiverDoc, k: number) => Promise<QuiverDoc>,
): Promise<boolean> {
  let q = state.initial;
  for (const k of mutationWord(state)) {
    q = await mutate(q, k);
  }
  return sameDoc(q, state.current.quiver);
}
