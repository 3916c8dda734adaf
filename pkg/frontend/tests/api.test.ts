/** HttpApi: URL construction, JSON bodies, error decoding. */

import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiError, HttpApi } from "../src/api.js";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

afterEach(() => {
  vi.restoreAllMocks();
});

describe("request shapes", () => {
  it("builds search URLs with ranges and keyword", async () => {
    const spy = vi.spyOn(globalThis, "fetch").mockResolvedValue(jsonResponse([]));
    await new HttpApi("http://x").search("fire engine", {
      val: [1, 4],
      keyword: "pets",
      maxd: 5,
    });
    const url = spy.mock.calls[0][0] as string;
    expect(url).toContain("http://x/api/search?");
    expect(url).toContain("q=fire+engine");
    expect(url).toContain("val=1..4");
    expect(url).toContain("keyword=pets");
    expect(url).toContain("maxd=5");
  });

  it("posts annotations as JSON", async () => {
    const spy = vi.spyOn(globalThis, "fetch").mockResolvedValue(jsonResponse({}));
    await new HttpApi().annotate("img-1", {
      lemma: "dog",
      pos: "n",
      offset: 2,
      weight: 0.5,
      annotator: "a",
    });
    const [url, init] = spy.mock.calls[0] as [string, RequestInit];
    expect(url).toBe("/api/images/img-1/annotations");
    expect(init.method).toBe("POST");
    expect((init.headers as Record<string, string>)["content-type"]).toBe("application/json");
    expect(JSON.parse(init.body as string).lemma).toBe("dog");
  });

  it("sends commit without a body", async () => {
    const spy = vi.spyOn(globalThis, "fetch").mockResolvedValue(jsonResponse({}));
    await new HttpApi().commit("img-1");
    const [, init] = spy.mock.calls[0] as [string, RequestInit];
    expect(init.body).toBeUndefined();
  });
});

describe("error decoding", () => {
  it("raises ApiError with the server body", async () => {
    vi.spyOn(globalThis, "fetch").mockResolvedValue(
      jsonResponse({ code: "too_few_senses", message: "needs 3", found: 2 }, 409),
    );
    const error = await new HttpApi().commit("img-1").catch((e) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect(error.status).toBe(409);
    expect(error.body).toEqual({ code: "too_few_senses", message: "needs 3", found: 2 });
  });

  it("synthesizes a body for non-JSON failures", async () => {
    vi.spyOn(globalThis, "fetch").mockResolvedValue(new Response("boom", { status: 502 }));
    const error = await new HttpApi().stats().catch((e) => e);
    expect(error.body.code).toBe("internal");
    expect(error.body.message).toContain("502");
  });
});
