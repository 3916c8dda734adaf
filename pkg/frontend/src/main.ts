import { HttpApi } from "./api.js";
import { AnnotationController } from "./annotate.js";
import { SearchController } from "./search.js";
import { StatsController } from "./stats.js";

const api = new HttpApi("");

const panes: Record<string, HTMLElement> = {
  annotate: document.getElementById("pane-annotate")!,
  search: document.getElementById("pane-search")!,
  stats: document.getElementById("pane-stats")!,
};

const annotate = new AnnotationController(panes.annotate, api);
const search = new SearchController(panes.search, api);
const stats = new StatsController(panes.stats, api);

function showTab(name: string): void {
  for (const [key, pane] of Object.entries(panes)) {
    pane.hidden = key !== name;
  }
  document.querySelectorAll<HTMLButtonElement>("nav button").forEach((button) => {
    button.classList.toggle("active", button.dataset.tab === name);
  });
  if (name === "stats") void stats.refresh();
  if (name === "annotate") void annotate.refreshImageList();
}

document.querySelectorAll<HTMLButtonElement>("nav button").forEach((button) => {
  button.addEventListener("click", () => showTab(button.dataset.tab!));
});

void annotate.init();
search.init();
showTab("annotate");
