/* Backend that replays recorded service responses.
 *
 * Lookup is by path plus canonical request body, so any drift between
 * what the client sends and what was recorded fails loudly instead of
 * silently matching. The call log lets tests assert that an action made
 * no network traffic at all.
 */

import { readFileSync } from "node:fs";
import { canonicalJson, type Backend, type HttpResult } from "../src/api.js";

interface FixtureRow {
  name: string;
  method: string;
  path: string;
  body: unknown;
  status: number;
  response: unknown;
}

const rows: FixtureRow[] = JSON.parse(
  readFileSync(new URL("../fixtures/manifest.json", import.meta.url), "utf8"),
) as FixtureRow[];

export interface FixtureBackend extends Backend {
  calls: string[];
}

export function fixtureBackend(): FixtureBackend {
  const calls: string[] = [];
  const post = async (path: string, body: unknown): Promise<HttpResult> => {
    const want = canonicalJson(body);
    for (const row of rows) {
      if (row.method === "POST" && row.path === path && canonicalJson(row.body) === want) {
        calls.push(row.name);
        return { status: row.status, body: row.response };
      }
    }
    throw new Error("no fixture for POST " + path + " with body " + want);
  };
  const get = async (path: string): Promise<HttpResult> => {
    for (const row of rows) {
      if (row.method === "GET" && row.path === path) {
        calls.push(row.name);
        return { status: row.status, body: row.response };
      }
    }
    throw new Error("no fixture for GET " + path);
  };
  return { post, get, calls };
}

export const A2 = { n: 2, m: 0, arrows: [[1, 2, 1]] as [number, number, number][] };
export const A2_FLIPPED = { n: 2, m: 0, arrows: [[2, 1, 1]] as [number, number, number][] };
export const STAR = {
  n: 3,
  m: 0,
  arrows: [
    [2, 1, 3],
    [3, 1, 2],
  ] as [number, number, number][],
};
export const STAR_POINT = {
  p: ["0", "-1", "1"],
  p_prime: ["0", "-1", "1"],
  frozen: [] as string[],
};
