/* Typed wrappers for the clusterdeep JSON service.
 *
 * The UI never computes anything itself: every displayed value comes out
 * of one of these calls. The transport is injected so tests can run the
 * same client against recorded fixtures.
 */

export interface QuiverDoc {
  n: number;
  m: number;
  arrows: [number, number, number][];
}

export interface PointDoc {
  p: string[];
  p_prime: string[];
  frozen: string[];
}

export interface GroupStructureDoc {
  torus_rank: number;
  torsion: number[];
  trivial: boolean;
}

export interface DilationDoc {
  structure: GroupStructureDoc;
  equations: string[];
}

export interface StabilizerDoc {
  structure: GroupStructureDoc;
}

export interface ClassifyDoc {
  quiver: QuiverDoc;
  classes: {
    acyclic: boolean;
    tree_mutable: boolean;
    sink_source_form: boolean;
    abundant: boolean;
    really_full_rank: boolean;
  };
  gcd_vector: number[];
  key: { pair: [number, number]; mode: string } | null;
  fork_return: number | null;
}

export interface ValidateDoc {
  valid: boolean;
  errors: string[];
}

export interface ChartValuesDoc {
  word: number[];
  values: (string | null)[];
  frozen: string[];
}

export interface CertificateDoc {
  kind: string;
  evidence: Record<string, unknown>;
}

export interface DeepVerdictDoc {
  kind: string;
  certificate?: CertificateDoc;
  element?: { exponents: number[]; order: number | null };
  word?: number[];
  witnesses?: unknown[];
  reason?: string;
}

export interface MysteriousDoc {
  mysterious: boolean | null;
  status: string;
  deep: DeepVerdictDoc | null;
  stabilizer: StabilizerDoc;
}

export interface GalleryResultDoc {
  id: string;
  anchor: string;
  ok: boolean;
  expected: Record<string, unknown>;
  actual: Record<string, unknown> | null;
  error: string | null;
}

export interface GalleryDoc {
  ok: boolean;
  results: GalleryResultDoc[];
}

export interface ErrorEnvelope {
  code: string;
  message: string;
  detail: unknown;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly detail: unknown = null,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export interface HttpResult {
  status: number;
  body: unknown;
}

export type PostFn = (path: string, body: unknown) => Promise<HttpResult>;
export type GetFn = (path: string) => Promise<HttpResult>;

export interface Backend {
  post: PostFn;
  get: GetFn;
}

/* Deterministic JSON with sorted object keys, so a request body can be
 * compared with a recorded one independent of key order. */
export function canonicalJson(value: unknown): string {
  if (value === null || typeof value !== "object") {
    return JSON.stringify(value);
  }
  if (Array.isArray(value)) {
    return "[" + value.map(canonicalJson).join(",") + "]";
  }
  const record = value as Record<string, unknown>;
  const keys = Object.keys(record)
    .filter((k) => record[k] !== undefined)
    .sort();
  const parts = keys.map((k) => JSON.stringify(k) + ":" + canonicalJson(record[k]));
  return "{" + parts.join(",") + "}";
}

function unwrap<T>(res: HttpResult): T {
  if (res.status === 200) {
    return res.body as T;
  }
  const env = (res.body ?? {}) as Partial<ErrorEnvelope>;
  throw new ApiError(
    res.status,
    env.code ?? "error",
    env.message ?? "request failed with status " + res.status,
    env.detail ?? null,
  );
}

export class ApiClient {
  constructor(private readonly backend: Backend) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    return unwrap<T>(await this.backend.post(path, body));
  }

  mutate(quiver: QuiverDoc, k: number): Promise<QuiverDoc> {
    return this.post("/api/quiver/mutate", { quiver, k });
  }

  classify(quiver: QuiverDoc): Promise<ClassifyDoc> {
    return this.post("/api/quiver/classify", { quiver });
  }

  dilation(quiver: QuiverDoc): Promise<DilationDoc> {
    return this.post("/api/dilation", { quiver });
  }

  stabilizer(quiver: QuiverDoc, point: PointDoc, freeze: number[]): Promise<StabilizerDoc> {
    return this.post("/api/stabilizer", { quiver, point, freeze });
  }

  validate(quiver: QuiverDoc, point: PointDoc): Promise<ValidateDoc> {
    return this.post("/api/point/validate", { quiver, point });
  }

  propagate(quiver: QuiverDoc, point: PointDoc, word: number[]): Promise<ChartValuesDoc> {
    return this.post("/api/point/propagate", { quiver, point, word });
  }

  deepCheck(quiver: QuiverDoc, point: PointDoc): Promise<MysteriousDoc> {
    return this.post("/api/deep/check", { quiver, point });
  }

  treeCover(quiver: QuiverDoc, point: PointDoc): Promise<DeepVerdictDoc> {
    return this.post("/api/tree-cover", { quiver, point });
  }

  async gallery(filter: string): Promise<GalleryDoc> {
    const path = "/api/gallery?filter=" + encodeURIComponent(filter);
    return unwrap<GalleryDoc>(await this.backend.get(path));
  }
}

/* fetch()-based transport for the browser; base is the service origin. */
export function httpBackend(base: string): Backend {
  const root = base.replace(/\/+$/, "");
  const read = async (res: Response): Promise<HttpResult> => {
    let body: unknown = null;
    try {
      body = await res.json();
    } catch {
      body = null;
    }
    return { status: res.status, body };
  };
  return {
    post: async (path, body) =>
      read(
        await fetch(root + path, {
          method: "POST",
          headers: { "Content-Type": "application/json" },
          body: JSON.stringify(body),
        }),
      ),
    get: async (path) => read(await fetch(root + path)),
  };
}
