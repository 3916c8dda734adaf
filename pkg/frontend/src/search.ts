/** Search page: query box plus affect/keyword filters, ranked result grid.
 * Result order is exactly the API order; expanding a card lists each
 * query-sense x image-sense pair with the server's weight, similarity and
 * contribution values verbatim. */

import type { Api } from "./api.js";
import { clear, el, formatPercent, formatWeight } from "./dom.js";
import type { RankedResult, SearchFilters } from "./types.js";

function parseRange(lo: string, hi: string): [number, number] | undefined {
  if (lo === "" && hi === "") return undefined;
  return [lo === "" ? 1 : Number(lo), hi === "" ? 9 : Number(hi)];
}

export class SearchController {
  results: RankedResult[] = [];

  private grid!: HTMLElement;
  private message!: HTMLElement;

  constructor(
    private root: HTMLElement,
    private api: Api,
  ) {}

  init(): void {
    clear(this.root);
    this.grid = el("div", { class: "result-grid" });
    this.message = el("p", { class: "inline-message", role: "status" });

    const form = el("form", {
      class: "search-form",
      onsubmit: (event) => {
        event.preventDefault();
        void this.run();
      },
    },
      el("input", { class: "query-input", placeholder: "e.g. fire engine", name: "q" }),
      el("details", { class: "filter-drawer" },
        el("summary", {}, "Filters"),
        rangeRow("valence", "val"),
        rangeRow("arousal", "ar"),
        rangeRow("dominance", "dom"),
        el("label", {}, "keyword ", el("input", { class: "f-keyword" })),
      ),
      el("button", { type: "submit" }, "Search"),
    );
    this.root.append(form, this.message, this.grid);
  }

  readFilters(): SearchFilters {
    const value = (selector: string) =>
      this.root.querySelector<HTMLInputElement>(selector)?.value.trim() ?? "";
    const filters: SearchFilters = {};
    const val = parseRange(value(".f-val-lo"), value(".f-val-hi"));
    const ar = parseRange(value(".f-ar-lo"), value(".f-ar-hi"));
    const dom = parseRange(value(".f-dom-lo"), value(".f-dom-hi"));
    if (val) filters.val = val;
    if (ar) filters.ar = ar;
    if (dom) filters.dom = dom;
    const keyword = value(".f-keyword");
    if (keyword) filters.keyword = keyword;
    return filters;
  }

  async run(query?: string): Promise<void> {
    const text =
      query ?? this.root.querySelector<HTMLInputElement>(".query-input")?.value ?? "";
    this.message.textContent = "";
    this.message.className = "inline-message";
    try {
      this.results = await this.api.search(text, this.readFilters());
      this.renderResults();
    } catch (error) {
      this.results = [];
      clear(this.grid);
      this.message.textContent = describeSearchError(error);
      this.message.className = "inline-message error";
    }
  }

  renderResults(): void {
    clear(this.grid);
    if (this.results.length === 0) {
      this.grid.append(el("p", { class: "empty-state" }, "no matching images"));
      return;
    }
    this.results.forEach((result, index) => {
      this.grid.append(this.card(result, index + 1));
    });
  }

  private card(result: RankedResult, rank: number): HTMLElement {
    const details = el("table", { class: "match-details", hidden: true },
      el("tr", {},
        el("th", {}, "query sense"), el("th", {}, "image sense"),
        el("th", {}, "w̄"), el("th", {}, "sim"), el("th", {}, "w̄×sim"),
      ),
    );
    for (const match of result.matches) {
      details.append(
        el("tr", { class: "match-row" },
          el("td", {}, `${match.query_sense.lemma}#${match.query_sense.pos}`),
          el("td", {}, `${match.image_sense.lemma}#${match.image_sense.pos}`),
          el("td", { class: "m-weight" }, formatWeight(match.mean_weight)),
          el("td", { class: "m-sim" }, match.similarity.toFixed(4)),
          el("td", { class: "m-contribution" }, match.contribution.toFixed(4)),
        ),
      );
    }

    const bar = el("div", { class: "relevance-bar" },
      el("div", { class: "relevance-fill" }),
    );
    (bar.firstChild as HTMLElement).style.width = `${result.relevance * 100}%`;

    return el("div", {
      class: "result-card",
      "data-image-id": result.image_id,
      "data-rank": String(rank),
      onclick: () => {
        details.hidden = !details.hidden;
      },
    },
      el("div", { class: "card-head" },
        el("span", { class: "rank" }, `#${rank}`),
        el("span", { class: "card-id" }, result.image_id),
        el("span", { class: "relevance" }, formatPercent(result.relevance)),
      ),
      bar,
      el("div", { class: "matched-chips" },
        ...dedupe(result.matches.map((m) => `${m.image_sense.lemma}#${m.image_sense.pos}`))
          .map((label) => el("span", { class: "chip" }, label)),
      ),
      details,
    );
  }
}

function dedupe(items: string[]): string[] {
  return [...new Set(items)];
}

export function describeSearchError(error: unknown): string {
  const body = (error as { body?: { code?: string; message?: string } }).body;
  if (body?.code === "empty_query") return "no word in the query matches any sense";
  if (body?.code === "invalid_range") return "filter ranges must be within [1, 9], low before high";
  return body?.message ?? (error instanceof Error ? error.message : String(error));
}

function rangeRow(label: string, key: string): HTMLElement {
  return el("label", { class: "range-row" },
    `${label} `,
    el("input", { class: `f-${key}-lo`, placeholder: "1", inputmode: "decimal" }),
    " .. ",
    el("input", { class: `f-${key}-hi`, placeholder: "9", inputmode: "decimal" }),
  );
}
