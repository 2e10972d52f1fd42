/* Session controller: the verbs behind the UI, free of any DOM code.
 *
 * Each action does its server round trips first and commits the new
 * state only if no later action started meanwhile (RequestGate), so a
 * slow response can never clobber a fresh one. Mutation and freeze
 * actions land on the undo/redo history with full before/after
 * snapshots; verdict refreshes on undo are therefore free.
 *
 * Verdict wiring: classification and scaling-group badges follow the
 * quiver on screen; the stabilizer, chart values, and deep verdict are
 * facts about the loaded point, so they are always computed against the
 * session's initial quiver, with the accumulated mutation word and the
 * user's freeze list as parameters.
 */

import { ApiClient, type PointDoc, type QuiverDoc } from "./api.js";
import { RequestGate } from "./gate.js";
import {
  type SessionState,
  type Snapshot,
  type Verdicts,
  canRedo,
  canUndo,
  mutationWord,
  newSession,
  pushEntry,
  redoStep,
  replayCurrent,
  undoStep,
} from "./state.js";

export class Session {
  state: SessionState;
  lastError: string | null = null;
  readonly gate = new RequestGate();
  onchange: (() => void) | null = null;

  constructor(
    private readonly api: ApiClient,
    quiver: QuiverDoc,
  ) {
    this.state = newSession(quiver);
  }

  private emit(): void {
    if (this.onchange !== null) {
      this.onchange();
    }
  }

  private fail(exc: unknown): void {
    this.lastError = exc instanceof Error ? exc.message : String(exc);
    this.emit();
  }

  private async quiverVerdicts(quiver: QuiverDoc): Promise<Pick<Verdicts, "classify" | "dilation">> {
    const classify = await this.api.classify(quiver);
    const dilation = await this.api.dilation(quiver);
    return { classify, dilation };
  }

  /* Fetch the badges for the initial quiver. */
  async start(): Promise<void> {
    const token = this.gate.begin("act");
    try {
      const head = await this.quiverVerdicts(this.state.current.quiver);
      if (!this.gate.accepts("act", token)) {
        return;
      }
      this.lastError = null;
      this.state = {
        ...this.state,
        current: {
          ...this.state.current,
          verdicts: { ...this.state.current.verdicts, ...head },
        },
      };
      this.emit();
    } catch (exc) {
      if (this.gate.accepts("act", token)) {
        this.fail(exc);
      }
    }
  }

  /* Validate, then attach the point and everything it determines. */
  async loadPoint(doc: PointDoc): Promise<void> {
    const token = this.gate.begin("act");
    try {
      const check = await this.api.validate(this.state.initial, doc);
      if (!this.gate.accepts("act", token)) {
        return;
      }
      if (!check.valid) {
        this.fail(new Error("point rejected: " + check.errors.join("; ")));
        return;
      }
      const before = this.state.current;
      const stabilizer = await this.api.stabilizer(this.state.initial, doc, before.frozen);
      const values = await this.api.propagate(this.state.initial, doc, mutationWord(this.state));
      const deep = await this.api.deepCheck(this.state.initial, doc);
      if (!this.gate.accepts("act", token)) {
        return;
      }
      this.lastError = null;
      this.state = {
        ...this.state,
        point: doc,
        deep,
        current: {
          ...before,
          verdicts: { ...before.verdicts, stabilizer, values },
        },
      };
      this.emit();
    } catch (exc) {
      if (this.gate.accepts("act", token)) {
        this.fail(exc);
      }
    }
  }

  /* Mutate at vertex k (1-based) and refresh every verdict the move
   * can change. */
  async mutateClick(k: number): Promise<void> {
    const before = this.state.current;
    if (k < 1 || k > before.quiver.n || before.frozen.includes(k)) {
      return;
    }
    const token = this.gate.begin("act");
    try {
      const next = await this.api.mutate(before.quiver, k);
      const head = await this.quiverVerdicts(next);
      const verdicts: Verdicts = { ...before.verdicts, ...head };
      if (this.state.point !== null) {
        const word = [...mutationWord(this.state), k];
        verdicts.values = await this.api.propagate(this.state.initial, this.state.point, word);
      }
      if (!this.gate.accepts("act", token)) {
        return;
      }
      this.lastError = null;
      const after: Snapshot = { quiver: next, frozen: before.frozen, verdicts };
      this.state = pushEntry(this.state, {
        label: `mutate ${k}`,
        mutated: k,
        before,
        after,
      });
      this.emit();
    } catch (exc) {
      if (this.gate.accepts("act", token)) {
        this.fail(exc);
      }
    }
  }

  /* Toggle the user freeze mark on mutable vertex k; with a point
   * loaded this re-asks for the stabilizer after freezing. */
  async freezeClick(k: number): Promise<void> {
    const before = this.state.current;
    if (k < 1 || k > before.quiver.n) {
      return;
    }
    const frozen = before.frozen.includes(k)
      ? before.frozen.filter((v) => v !== k)
      : [...before.frozen, k].sort((a, b) => a - b);
    const token = this.gate.begin("act");
    try {
      let verdicts = before.verdicts;
      if (this.state.point !== null) {
        const stabilizer = await this.api.stabilizer(this.state.initial, this.state.point, frozen);
        if (!this.gate.accepts("act", token)) {
          return;
        }
        verdicts = { ...verdicts, stabilizer };
      }
      this.lastError = null;
      const after: Snapshot = { ...before, frozen, verdicts };
      this.state = pushEntry(this.state, {
        label: `freeze ${k}`,
        mutated: null,
        before,
        after,
      });
      this.emit();
    } catch (exc) {
      if (this.gate.accepts("act", token)) {
        this.fail(exc);
      }
    }
  }

  /* Undo and redo restore recorded snapshots; starting a new gate token
   * makes any in-flight response stale. */
  undo(): void {
    if (canUndo(this.state)) {
      this.gate.begin("act");
      this.lastError = null;
      this.state = undoStep(this.state);
      this.emit();
    }
  }

  redo(): void {
    if (canRedo(this.state)) {
      this.gate.begin("act");
      this.lastError = null;
      this.state = redoStep(this.state);
      this.emit();
    }
  }

  /* Check the history invariant through the live mutate endpoint. */
  replay(): Promise<boolean> {
    return replayCurrent(this.state, (q, k) => this.api.mutate(q, k));
  }
}
