/* Browser wiring: connects the DOM to the session controller.
 *
 * Served statically next to dist/; talks to a running
 * `clusterdeep serve` on the origin given in the backend box.
 */

import { ApiClient, httpBackend, type PointDoc, type QuiverDoc } from "./api.js";
import { Session } from "./controller.js";
import { renderBadges, renderMatrixView, renderQuiver, renderValues } from "./render.js";

const STARTER_QUIVER: QuiverDoc = {
  n: 3,
  m: 0,
  arrows: [
    [2, 1, 3],
    [3, 1, 2],
  ],
};

const STARTER_POINT: PointDoc = {
  p: ["0", "-1", "1"],
  p_prime: ["0", "-1", "1"],
  frozen: [],
};

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) {
    throw new Error("missing element #" + id);
  }
  return node as T;
}

function main(): void {
  const quiverBox = el<HTMLTextAreaElement>("quiver-input");
  const pointBox = el<HTMLTextAreaElement>("point-input");
  const baseBox = el<HTMLInputElement>("base-url");
  const freezeMode = el<HTMLInputElement>("freeze-mode");
  const graphHolder = el<HTMLDivElement>("graph");
  const badgeHolder = el<HTMLDivElement>("badges");
  const valueHolder = el<HTMLDivElement>("values");
  const errorHolder = el<HTMLDivElement>("error");

  quiverBox.value = JSON.stringify(STARTER_QUIVER);
  pointBox.value = JSON.stringify(STARTER_POINT);

  let session: Session | null = null;

  const draw = (): void => {
    if (session === null) {
      return;
    }
    const snap = session.state.current;
    try {
      graphHolder.innerHTML = renderQuiver(snap.quiver, snap.frozen);
    } catch {
      graphHolder.innerHTML = renderMatrixView(snap.quiver);
    }
    badgeHolder.innerHTML = renderBadges(snap.verdicts, session.state.deep);
    valueHolder.innerHTML = renderValues(snap.verdicts.values);
    errorHolder.textContent = session.lastError ?? "";
    for (const node of graphHolder.querySelectorAll("[data-vertex]")) {
      node.addEventListener("click", () => {
        const k = Number(node.getAttribute("data-vertex"));
        if (session === null) {
          return;
        }
        if (freezeMode.checked) {
          void session.freezeClick(k);
        } else {
          void session.mutateClick(k);
        }
      });
    }
  };

  const boot = (): void => {
    let quiver: QuiverDoc;
    try {
      quiver = JSON.parse(quiverBox.value) as QuiverDoc;
    } catch (exc) {
      errorHolder.textContent = "quiver JSON: " + String(exc);
      return;
    }
    const api = new ApiClient(httpBackend(baseBox.value));
    session = new Session(api, quiver);
    session.onchange = draw;
    draw();
    void session.start();
  };

  el<HTMLButtonElement>("load-quiver").addEventListener("click", boot);
  el<HTMLButtonElement>("load-point").addEventListener("click", () => {
    if (session === null) {
      return;
    }
    try {
      void session.loadPoint(JSON.parse(pointBox.value) as PointDoc);
    } catch (exc) {
      errorHolder.textContent = "point JSON: " + String(exc);
    }
  });
  el<HTMLButtonElement>("undo").addEventListener("click", () => session?.undo());
  el<HTMLButtonElement>("redo").addEventListener("click", () => session?.redo());

  boot();
}

main();
