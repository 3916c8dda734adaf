/** Annotation page: pick an image, disambiguate a lemma into a sense,
 * weight it, submit, and commit once three distinct senses exist.
 *
 * All numbers shown (mean weights, rater counts) are echoed from API
 * responses; the page computes nothing itself. API errors render as
 * inline messages, never as raw status codes. */

import type { Api } from "./api.js";
import { ApiError } from "./api.js";
import { clear, el, formatWeight } from "./dom.js";
import type { ImageRecord, SenseOption } from "./types.js";

export interface NameStore {
  get(): string;
  set(value: string): void;
}

export const localNameStore: NameStore = {
  get: () => window.localStorage.getItem("ontotag.annotator") ?? "",
  set: (value) => window.localStorage.setItem("ontotag.annotator", value),
};

const WEIGHT_STEP = 0.05;

export class AnnotationController {
  selected: ImageRecord | null = null;
  pendingSense: SenseOption | null = null;
  weight = 0.5;

  private listPane!: HTMLElement;
  private detailPane!: HTMLElement;

  constructor(
    private root: HTMLElement,
    private api: Api,
    private names: NameStore = localNameStore,
  ) {}

  async init(): Promise<void> {
    clear(this.root);
    this.listPane = el("div", { class: "image-list" });
    this.detailPane = el("div", { class: "image-detail" }, el("p", {}, "Pick an image to annotate."));
    this.root.append(
      el("div", { class: "annotate-layout" }, this.listPane, this.detailPane),
    );
    await this.refreshImageList();
  }

  get annotatorName(): string {
    return this.names.get().trim();
  }

  async refreshImageList(): Promise<void> {
    const images = await this.api.listImages();
    clear(this.listPane);
    this.listPane.append(
      el("form", {
        class: "add-image",
        onsubmit: (event) => {
          event.preventDefault();
          void this.addImage();
        },
      },
        el("input", { class: "new-uri", placeholder: "image URI", required: true }),
        el("button", { type: "submit" }, "Register image"),
      ),
    );
    for (const image of images) {
      this.listPane.append(
        el("button", {
          class: `image-row${image.committed ? " committed" : ""}`,
          "data-image-id": image.id,
          onclick: () => void this.selectImage(image.id),
        },
          el("span", { class: "image-row-id" }, image.id),
          el("span", { class: "image-row-meta" },
            `${image.tags.length} senses${image.committed ? " · committed" : ""}`),
        ),
      );
    }
  }

  private async addImage(): Promise<void> {
    const input = this.listPane.querySelector<HTMLInputElement>(".new-uri");
    if (!input || !input.value.trim()) return;
    try {
      const record = await this.api.createImage(input.value.trim());
      input.value = "";
      await this.refreshImageList();
      await this.selectImage(record.id);
    } catch (error) {
      this.showMessage(describeError(error), "error");
    }
  }

  async selectImage(imageId: string): Promise<void> {
    this.selected = await this.api.getImage(imageId);
    this.pendingSense = null;
    this.renderDetail();
  }

  renderDetail(): void {
    const image = this.selected;
    clear(this.detailPane);
    if (!image) return;

    const nameInput = el("input", {
      class: "annotator-name",
      placeholder: "your name",
      value: this.names.get(),
      oninput: (event) => {
        this.names.set((event.target as HTMLInputElement).value);
        this.syncSubmitState();
      },
    }) as HTMLInputElement;
    nameInput.value = this.names.get();

    const chipBox = el("div", { class: "tag-chips" });
    for (const tag of image.tags) {
      chipBox.append(
        el("span", { class: "chip", "data-lemma": tag.lemma },
          `${tag.lemma}#${tag.pos} `,
          el("b", { class: "chip-weight" }, `w̄ ${formatWeight(tag.mean_weight)}`),
          el("i", { class: "chip-raters" }, ` ×${tag.rater_count}`),
        ),
      );
    }

    const suggestionBox = el("div", { class: "suggestions" });
    const lemmaInput = el("input", {
      class: "lemma-input",
      placeholder: "type a word, e.g. dogs",
      oninput: (event) => {
        void this.suggest((event.target as HTMLInputElement).value, suggestionBox);
      },
    });

    const weightValue = el("span", { class: "weight-value" }, formatWeight(this.weight));
    const slider = el("input", {
      class: "weight-slider",
      type: "range",
      min: "0",
      max: "1",
      step: String(WEIGHT_STEP),
      value: String(this.weight),
      oninput: (event) => {
        this.weight = Number((event.target as HTMLInputElement).value);
        weightValue.textContent = formatWeight(this.weight);
      },
    });

    this.detailPane.append(el("h2", {}, image.id), el("p", { class: "image-uri" }, image.uri));
    if (image.emotion) {
      this.detailPane.append(
        el("p", { class: "emotion-line" },
          `valence ${image.emotion.val} · arousal ${image.emotion.ar} · dominance ${image.emotion.dom}`),
      );
    }
    this.detailPane.append(
      el("h3", {}, "Senses"),
      chipBox,
      el("div", { class: "pending-sense" }),
      el("label", {}, "Find a sense: ", lemmaInput),
      suggestionBox,
      el("label", {}, "Weight: ", slider, weightValue),
      el("label", {}, "Annotator: ", nameInput),
      el("div", { class: "actions" },
        el("button", {
          class: "submit-annotation",
          disabled: true,
          onclick: () => void this.submit(),
        }, "Add weighted sense"),
        el("button", {
          class: "commit-image",
          onclick: () => void this.commit(),
        }, image.committed ? "Committed ✓" : "Commit image"),
      ),
      el("p", { class: "inline-message", role: "status" }),
    );
    this.syncSubmitState();
  }

  private async suggest(text: string, box: HTMLElement): Promise<void> {
    clear(box);
    if (!text.trim()) return;
    const options = await this.api.senses(text.trim());
    if (options.length === 0) {
      box.append(el("p", { class: "no-senses" }, "no matching senses"));
      return;
    }
    for (const option of options) {
      box.append(
        el("button", {
          class: `sense-option${option.stemmed ? " stemmed" : ""}`,
          onclick: () => this.selectSense(option),
        },
          el("b", {}, `${option.lemma}#${option.pos}#${option.offset}`),
          option.stemmed ? el("em", { class: "stemmed-flag" }, " (stemmed)") : null,
          el("span", { class: "gloss" }, ` — ${option.gloss}`),
        ),
      );
    }
  }

  selectSense(option: SenseOption): void {
    this.pendingSense = option;
    const pending = this.detailPane.querySelector(".pending-sense");
    if (pending) {
      clear(pending as HTMLElement);
      pending.append(
        el("span", { class: "chip pending" },
          `${option.lemma}#${option.pos}#${option.offset} — ${option.gloss}`),
      );
    }
    this.syncSubmitState();
  }

  private syncSubmitState(): void {
    const button = this.detailPane.querySelector<HTMLButtonElement>(".submit-annotation");
    if (button) {
      button.disabled = this.pendingSense === null || this.annotatorName === "";
    }
  }

  async submit(): Promise<void> {
    if (!this.selected || !this.pendingSense || !this.annotatorName) return;
    try {
      const updated = await this.api.annotate(this.selected.id, {
        lemma: this.pendingSense.lemma,
        pos: this.pendingSense.pos,
        offset: this.pendingSense.offset,
        weight: this.weight,
        annotator: this.annotatorName,
      });
      this.selected = updated;
      this.pendingSense = null;
      this.renderDetail();
      this.showMessage("sense added", "ok");
    } catch (error) {
      this.showMessage(describeError(error), "error");
    }
  }

  async commit(): Promise<void> {
    if (!this.selected) return;
    try {
      this.selected = await this.api.commit(this.selected.id);
      this.renderDetail();
      this.showMessage("image committed — now searchable", "ok");
    } catch (error) {
      this.showMessage(describeError(error), "error");
    }
  }

  showMessage(text: string, kind: "ok" | "error"): void {
    const node = this.detailPane.querySelector(".inline-message");
    if (node) {
      node.textContent = text;
      (node as HTMLElement).className = `inline-message ${kind}`;
    }
  }
}

export function describeError(error: unknown): string {
  if (error instanceof ApiError) {
    if (error.body.code === "too_few_senses") {
      const found = error.body.found ?? 0;
      return `needs at least 3 senses (has ${found})`;
    }
    return error.body.message;
  }
  return error instanceof Error ? error.message : String(error);
}
