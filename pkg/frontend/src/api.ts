/** Thin typed client over the service endpoints. Every number the UI shows
 * comes straight out of these payloads; nothing is recomputed client-side. */

import type {
  AnnotationPayload,
  ApiErrorBody,
  CorpusStats,
  ImageRecord,
  RankedResult,
  SearchFilters,
  SenseOption,
  TagAgreement,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public body: ApiErrorBody,
  ) {
    super(body.message);
  }
}

async function parse<T>(response: Response): Promise<T> {
  if (response.ok) {
    return (await response.json()) as T;
  }
  let body: ApiErrorBody;
  try {
    body = (await response.json()) as ApiErrorBody;
  } catch {
    body = { code: "internal", message: `HTTP ${response.status}` };
  }
  throw new ApiError(response.status, body);
}

export interface Api {
  listImages(committed?: boolean): Promise<ImageRecord[]>;
  getImage(id: string): Promise<ImageRecord>;
  createImage(uri: string, keyword?: string): Promise<ImageRecord>;
  senses(lemma: string): Promise<SenseOption[]>;
  annotate(imageId: string, payload: AnnotationPayload): Promise<ImageRecord>;
  commit(imageId: string): Promise<ImageRecord>;
  search(query: string, filters?: SearchFilters): Promise<RankedResult[]>;
  stats(): Promise<CorpusStats>;
  agreement(): Promise<TagAgreement[]>;
}

export class HttpApi implements Api {
  constructor(private base: string = "") {}

  private url(path: string, params?: Record<string, string>): string {
    const query = params ? `?${new URLSearchParams(params)}` : "";
    return `${this.base}${path}${query}`;
  }

  private post<T>(path: string, body?: unknown): Promise<T> {
    return fetch(this.url(path), {
      method: "POST",
      headers: body === undefined ? {} : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    }).then((r) => parse<T>(r));
  }

  listImages(committed?: boolean): Promise<ImageRecord[]> {
    const params: Record<string, string> = { limit: "200" };
    if (committed !== undefined) params.committed = String(committed);
    return fetch(this.url("/api/images", params)).then((r) => parse(r));
  }

  getImage(id: string): Promise<ImageRecord> {
    return fetch(this.url(`/api/images/${id}`)).then((r) => parse(r));
  }

  createImage(uri: string, keyword?: string): Promise<ImageRecord> {
    return this.post("/api/images", keyword ? { uri, keyword } : { uri });
  }

  senses(lemma: string): Promise<SenseOption[]> {
    return fetch(this.url("/api/ontology/senses", { lemma })).then((r) => parse(r));
  }

  annotate(imageId: string, payload: AnnotationPayload): Promise<ImageRecord> {
    return this.post(`/api/images/${imageId}/annotations`, payload);
  }

  commit(imageId: string): Promise<ImageRecord> {
    return this.post(`/api/images/${imageId}/commit`);
  }

  search(query: string, filters: SearchFilters = {}): Promise<RankedResult[]> {
    const params: Record<string, string> = { q: query };
    if (filters.val) params.val = `${filters.val[0]}..${filters.val[1]}`;
    if (filters.ar) params.ar = `${filters.ar[0]}..${filters.ar[1]}`;
    if (filters.dom) params.dom = `${filters.dom[0]}..${filters.dom[1]}`;
    if (filters.keyword) params.keyword = filters.keyword;
    if (filters.maxd !== undefined) params.maxd = String(filters.maxd);
    return fetch(this.url("/api/search", params)).then((r) => parse(r));
  }

  stats(): Promise<CorpusStats> {
    return fetch(this.url("/api/stats")).then((r) => parse(r));
  }

  agreement(): Promise<TagAgreement[]> {
    return fetch(this.url("/api/stats/agreement")).then((r) => parse(r));
  }
}
