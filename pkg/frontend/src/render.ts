/* Pure string renderers: SVG quiver view, badge panel, value list.
 *
 * Everything here formats data the service already computed; nothing is
 * derived beyond reshaping the JSON. All functions return markup strings
 * so they can be tested without a DOM.
 */

import type { ChartValuesDoc, MysteriousDoc, QuiverDoc } from "./api.js";
import type { Verdicts } from "./state.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function checkQuiverDoc(q: QuiverDoc): void {
  if (!Number.isInteger(q.n) || !Number.isInteger(q.m) || q.n < 1 || q.m < 0) {
    throw new Error("bad quiver sizes");
  }
  if (!Array.isArray(q.arrows)) {
    throw new Error("arrows must be a list");
  }
  for (const arrow of q.arrows) {
    const [i, j, w] = arrow;
    if (!Number.isInteger(i) || !Number.isInteger(j) || !Number.isInteger(w)) {
      throw new Error("arrow entries must be integers");
    }
    if (i < 1 || i > q.n + q.m || j < 1 || j > q.n + q.m || w < 1) {
      throw new Error("arrow out of range");
    }
  }
}

export interface VertexPos {
  x: number;
  y: number;
}

/* Vertices spread on a circle, vertex 1 at the top, clockwise. */
export function vertexLayout(count: number, width: number, height: number): VertexPos[] {
  const cx = width / 2;
  const cy = height / 2;
  const r = Math.min(width, height) / 2 - 40;
  if (count === 1) {
    return [{ x: cx, y: cy }];
  }
  const out: VertexPos[] = [];
  for (let i = 0; i < count; i++) {
    const angle = -Math.PI / 2 + (2 * Math.PI * i) / count;
    out.push({ x: cx + r * Math.cos(angle), y: cy + r * Math.sin(angle) });
  }
  return out;
}

const NODE_R = 16;

/* Interactive quiver picture. Mutable vertices are circles, frozen ones
 * squares; vertices the user froze by hand render as squares too. Arrows
 * carry their weight as a label when it is not 1. Throws on a malformed
 * document; callers fall back to the matrix view. */
export function renderQuiver(
  quiver: QuiverDoc,
  userFrozen: number[] = [],
  width = 420,
  height = 420,
): string {
  checkQuiverDoc(quiver);
  const total = quiver.n + quiver.m;
  const pos = vertexLayout(total, width, height);
  const frozenByHand = new Set(userFrozen);
  const parts: string[] = [];
  parts.push(
    `<svg class="quiver" viewBox="0 0 ${width} ${height}" xmlns="http://www.w3.org/2000/svg">`,
  );
  parts.push(
    '<defs><marker id="arrowhead" markerWidth="9" markerHeight="7" refX="8" ' +
      'refY="3.5" orient="auto"><polygon points="0 0, 9 3.5, 0 7" /></marker></defs>',
  );
  for (const [i, j, w] of quiver.arrows) {
    const a = pos[i - 1];
    const b = pos[j - 1];
    const dx = b.x - a.x;
    const dy = b.y - a.y;
    const len = Math.hypot(dx, dy) || 1;
    const pad = NODE_R + 4;
    const x1 = a.x + (dx / len) * pad;
    const y1 = a.y + (dy / len) * pad;
    const x2 = b.x - (dx / len) * pad;
    const y2 = b.y - (dy / len) * pad;
    parts.push(
      `<line class="arrow" x1="${x1.toFixed(1)}" y1="${y1.toFixed(1)}" ` +
        `x2="${x2.toFixed(1)}" y2="${y2.toFixed(1)}" marker-end="url(#arrowhead)" />`,
    );
    if (w !== 1) {
      const mx = (x1 + x2) / 2 - (dy / len) * 10;
      const my = (y1 + y2) / 2 + (dx / len) * 10;
      parts.push(
        `<text class="weight" x="${mx.toFixed(1)}" y="${my.toFixed(1)}">${w}</text>`,
      );
    }
  }
  for (let v = 1; v <= total; v++) {
    const { x, y } = pos[v - 1];
    const quiverFrozen = v > quiver.n;
    const boxed = quiverFrozen || frozenByHand.has(v);
    const cls = quiverFrozen ? "vertex frozen" : boxed ? "vertex pinned" : "vertex mutable";
    const click = quiverFrozen ? "" : ` data-vertex="${v}"`;
    if (boxed) {
      const s = NODE_R * 1.8;
      parts.push(
        `<rect class="${cls}"${click} x="${(x - s / 2).toFixed(1)}" ` +
          `y="${(y - s / 2).toFixed(1)}" width="${s}" height="${s}" />`,
      );
    } else {
      parts.push(
        `<circle class="${cls}"${click} cx="${x.toFixed(1)}" cy="${y.toFixed(1)}" r="${NODE_R}" />`,
      );
    }
    parts.push(`<text class="vlabel" x="${x.toFixed(1)}" y="${(y + 5).toFixed(1)}">${v}</text>`);
  }
  parts.push("</svg>");
  return parts.join("");
}

/* Fallback view: the signed adjacency table reshaped straight from the
 * arrow list, entry (i, j) = w for an arrow i -> j of weight w. */
export function renderMatrixView(quiver: QuiverDoc): string {
  const total = quiver.n + quiver.m;
  const grid: number[][] = [];
  for (let i = 0; i < total; i++) {
    grid.push(new Array<number>(total).fill(0));
  }
  if (Array.isArray(quiver.arrows)) {
    for (const [i, j, w] of quiver.arrows) {
      if (
        Number.isInteger(i) &&
        Number.isInteger(j) &&
        i >= 1 &&
        j >= 1 &&
        i <= total &&
        j <= total
      ) {
        grid[i - 1][j - 1] = w;
        grid[j - 1][i - 1] = -w;
      }
    }
  }
  const rows = grid
    .map((row) => "<tr>" + row.map((v) => `<td>${v}</td>`).join("") + "</tr>")
    .join("");
  return `<table class="matrix-view"><tbody>${rows}</tbody></table>`;
}

function badge(label: string, on: boolean): string {
  return `<span class="badge ${on ? "on" : "off"}">${escapeHtml(label)}</span>`;
}

function groupText(torusRank: number, torsion: number[]): string {
  const parts: string[] = [];
  if (torusRank > 0) {
    parts.push(`rank ${torusRank}`);
  }
  if (torsion.length > 0) {
    parts.push("torsion [" + torsion.join(", ") + "]");
  }
  return parts.length > 0 ? parts.join(", ") : "trivial";
}

/* Badge panel: classification flags, gcd vector, scaling group, point
 * stabilizer, and the overall verdict for the loaded point. */
export function renderBadges(verdicts: Verdicts, deep: MysteriousDoc | null): string {
  const parts: string[] = [];
  const cls = verdicts.classify;
  if (cls !== null) {
    parts.push(badge("acyclic", cls.classes.acyclic));
    parts.push(badge("tree", cls.classes.tree_mutable));
    parts.push(badge("sink/source form", cls.classes.sink_source_form));
    parts.push(badge("abundant", cls.classes.abundant));
    parts.push(badge("full rank", cls.classes.really_full_rank));
    if (cls.key !== null) {
      parts.push(badge(`key (${cls.key.pair[0]}, ${cls.key.pair[1]})`, true));
    } else {
      parts.push(badge("no key", false));
    }
    if (cls.fork_return !== null) {
      parts.push(badge(`fork at ${cls.fork_return}`, true));
    }
    parts.push(`<span class="gcd">gcd [${cls.gcd_vector.join(", ")}]</span>`);
  }
  const dil = verdicts.dilation;
  if (dil !== null) {
    parts.push(
      `<span class="group" id="dil-badge">scaling group: ` +
        `${escapeHtml(groupText(dil.structure.torus_rank, dil.structure.torsion))}</span>`,
    );
  }
  const stab = verdicts.stabilizer;
  if (stab !== null) {
    const trivial = stab.structure.trivial;
    parts.push(
      `<span class="badge ${trivial ? "off" : "on"}" id="stab-badge">stabilizer: ` +
        `${trivial ? "trivial" : "nontrivial"} ` +
        `(${escapeHtml(groupText(stab.structure.torus_rank, stab.structure.torsion))})</span>`,
    );
  }
  if (deep !== null) {
    parts.push(
      `<span class="badge ${deep.status === "mysterious" ? "on" : "off"}" id="deep-badge">` +
        `point: ${escapeHtml(deep.status)}</span>`,
    );
  }
  return parts.join("\n");
}

/* Long sums are cut after `limit` terms; the tail count is shown so an
 * expander can reveal the full expression on demand. */
export function formatLaurent(
  text: string,
  limit = 40,
): { display: string; truncated: boolean; full: string } {
  const terms = text.split(" + ");
  if (terms.length <= limit) {
    return { display: text, truncated: false, full: text };
  }
  const display =
    terms.slice(0, limit).join(" + ") + ` + [${terms.length - limit} more terms]`;
  return { display, truncated: true, full: text };
}

/* Coordinate values along the current chart: zeros highlighted, unknown
 * values marked, long expressions truncated. */
export function renderValues(values: ChartValuesDoc | null): string {
  if (values === null) {
    return '<p class="muted">no point loaded</p>';
  }
  const items: string[] = [];
  values.values.forEach((value, idx) => {
    const name = `x${idx + 1}`;
    if (value === null) {
      items.push(`<li class="unknown">${name} = ?</li>`);
    } else {
      const shown = formatLaurent(value);
      const cls = value === "0" ? "zero" : "plain";
      items.push(
        `<li class="${cls}" ${shown.truncated ? `title="${escapeHtml(shown.full)}"` : ""}>` +
          `${name} = ${escapeHtml(shown.display)}</li>`,
      );
    }
  });
  values.frozen.forEach((value, idx) => {
    items.push(`<li class="plain">f${idx + 1} = ${escapeHtml(value)}</li>`);
  });
  const word =
    values.word.length > 0 ? "after mutations [" + values.word.join(", ") + "]" : "initial chart";
  return `<p class="muted">${word}</p><ul class="values">${items.join("")}</ul>`;
}
