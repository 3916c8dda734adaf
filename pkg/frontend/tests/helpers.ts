/** Test doubles: an Api fed from recorded service payloads. */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { Api, } from "../src/api.js";
import { ApiError } from "../src/api.js";
import type {
  AnnotationPayload,
  ApiErrorBody,
  CorpusStats,
  ImageRecord,
  RankedResult,
  SearchFilters,
  SenseOption,
  TagAgreement,
} from "../src/types.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

export function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(FIXTURES, name), "utf-8")) as T;
}

export interface FakeData {
  images?: ImageRecord[];
  imageDetails?: Record<string, ImageRecord>;
  senses?: Record<string, SenseOption[]>;
  searchResults?: RankedResult[];
  searchError?: ApiErrorBody & { status: number };
  stats?: CorpusStats;
  agreement?: TagAgreement[];
  annotateResponses?: ImageRecord[];
  commitError?: ApiErrorBody & { status: number };
  commitResponse?: ImageRecord;
}

export class FakeApi implements Api {
  calls: { method: string; args: unknown[] }[] = [];
  private annotateQueue: ImageRecord[];

  constructor(private data: FakeData) {
    this.annotateQueue = [...(data.annotateResponses ?? [])];
  }

  private log(method: string, ...args: unknown[]) {
    this.calls.push({ method, args });
  }

  callsTo(method: string) {
    return this.calls.filter((c) => c.method === method);
  }

  async listImages(committed?: boolean): Promise<ImageRecord[]> {
    this.log("listImages", committed);
    return this.data.images ?? [];
  }

  async getImage(id: string): Promise<ImageRecord> {
    this.log("getImage", id);
    const record = this.data.imageDetails?.[id] ?? this.data.images?.find((i) => i.id === id);
    if (!record) throw new ApiError(404, { code: "unknown_image", message: `no image ${id}` });
    return record;
  }

  async createImage(uri: string, keyword?: string): Promise<ImageRecord> {
    this.log("createImage", uri, keyword);
    return { id: "img-new", uri, keyword: keyword ?? null, emotion: null, tags: [], committed: false };
  }

  async senses(lemma: string): Promise<SenseOption[]> {
    this.log("senses", lemma);
    return this.data.senses?.[lemma] ?? [];
  }

  async annotate(imageId: string, payload: AnnotationPayload): Promise<ImageRecord> {
    this.log("annotate", imageId, payload);
    const next = this.annotateQueue.shift();
    if (!next) throw new ApiError(500, { code: "internal", message: "no scripted response" });
    return next;
  }

  async commit(imageId: string): Promise<ImageRecord> {
    this.log("commit", imageId);
    if (this.data.commitError) {
      const { status, ...body } = this.data.commitError;
      throw new ApiError(status, body);
    }
    if (this.data.commitResponse) return this.data.commitResponse;
    throw new ApiError(500, { code: "internal", message: "no scripted response" });
  }

  async search(query: string, filters?: SearchFilters): Promise<RankedResult[]> {
    this.log("search", query, filters);
    if (this.data.searchError) {
      const { status, ...body } = this.data.searchError;
      throw new ApiError(status, body);
    }
    return this.data.searchResults ?? [];
  }

  async stats(): Promise<CorpusStats> {
    this.log("stats");
    if (!this.data.stats) throw new ApiError(500, { code: "internal", message: "no stats" });
    return this.data.stats;
  }

  async agreement(): Promise<TagAgreement[]> {
    this.log("agreement");
    return this.data.agreement ?? [];
  }
}

export const memoryNameStore = (initial = "") => {
  let value = initial;
  return {
    get: () => value,
    set: (next: string) => {
      value = next;
    },
  };
};
