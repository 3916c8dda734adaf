/** Stats page: corpus tag-count statistics and per-tag agreement flags. */

import type { Api } from "./api.js";
import { clear, el } from "./dom.js";

export class StatsController {
  constructor(
    private root: HTMLElement,
    private api: Api,
  ) {}

  async refresh(): Promise<void> {
    const stats = await this.api.stats();
    clear(this.root);
    if (stats.empty) {
      this.root.append(
        el("div", { class: "empty-state" },
          el("h2", {}, "No committed images yet"),
          el("p", {}, "Annotate and commit at least one image to see corpus statistics."),
        ),
      );
      return;
    }

    const tile = (label: string, value: string, cls: string) =>
      el("div", { class: `stat-tile ${cls}` },
        el("b", { class: "stat-value" }, value),
        el("span", { class: "stat-label" }, label),
      );
    this.root.append(
      el("div", { class: "stat-tiles" },
        tile("committed images", String(stats.image_count), "s-images"),
        tile("median senses / image", String(stats.tag_count_median), "s-median"),
        tile("mean senses / image", stats.tag_count_mean.toFixed(2), "s-mean"),
        tile("sd", stats.tag_count_sd.toFixed(2), "s-sd"),
        tile("min … max", `${stats.tag_count_min} … ${stats.tag_count_max}`, "s-range"),
        tile("distinct synsets", String(stats.distinct_synset_count), "s-synsets"),
      ),
    );

    const agreements = await this.api.agreement();
    const table = el("table", { class: "agreement-table" },
      el("tr", {},
        el("th", {}, "image"), el("th", {}, "sense"),
        el("th", {}, "raters"), el("th", {}, "kappa"), el("th", {}, ""),
      ),
    );
    for (const entry of agreements) {
      table.append(
        el("tr", { class: "agreement-row" },
          el("td", {}, entry.image_id),
          el("td", {}, `${entry.lemma}#${entry.pos}#${entry.offset}`),
          el("td", {}, String(entry.rater_count)),
          el("td", { class: "kappa-value" }, entry.kappa.toFixed(3)),
          el("td", {},
            entry.inadequate
              ? el("span", { class: "badge low-agreement" }, "low agreement")
              : null),
        ),
      );
    }
    this.root.append(
      el("h3", {}, "Inter-annotator agreement (tags with 2+ raters)"),
      agreements.length ? table : el("p", { class: "empty-state" }, "no multi-rater tags yet"),
    );
  }
}
