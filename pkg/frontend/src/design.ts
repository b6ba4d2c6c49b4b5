/** Color design view: upload, classification, concept, and scheme panels. */

import { ClassificationResult, FeatureCollection } from "./api.js";
import { AppStore, ViewState } from "./state.js";

const THEMES = ["strong_contrast", "light", "moderate", "elegant", "neutral"];
const SCHEME_TYPES = ["sequential", "diverging"];
const MOODS: { field: "temperature" | "distance" | "weight"; labels: string[] }[] = [
  { field: "temperature", labels: ["cold", "neutral", "warm"] },
  { field: "distance", labels: ["near", "medium", "far"] },
  { field: "weight", labels: ["light", "medium", "heavy"] },
];

/** Sliders snap to the three discrete mood levels. */
export function quantizeMoodLevel(raw: string | number): 0 | 1 | 2 {
  const n = Math.round(Number(raw));
  return (n <= 0 ? 0 : n >= 2 ? 2 : 1) as 0 | 1 | 2;
}

function histogramSvg(result: ClassificationResult): SVGElement {
  const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  const width = 150;
  const height = 40;
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("class", "histogram");
  const peak = Math.max(...result.class_counts, 1);
  const barWidth = width / result.k;
  result.class_counts.forEach((count, i) => {
    const bar = document.createElementNS("http://www.w3.org/2000/svg", "rect");
    const h = (count / peak) * (height - 2);
    bar.setAttribute("x", String(i * barWidth + 1));
    bar.setAttribute("y", String(height - h));
    bar.setAttribute("width", String(barWidth - 2));
    bar.setAttribute("height", String(h));
    bar.setAttribute("class", "histogram-bar");
    const label = document.createElementNS("http://www.w3.org/2000/svg", "title");
    label.textContent = `class ${i}: ${count}`;
    bar.appendChild(label);
    svg.appendChild(bar);
  });
  return svg;
}

export class DesignView {
  readonly element: HTMLElement;
  private uploadPanel: HTMLElement;
  private classifyPanel: HTMLElement;
  private conceptPanel: HTMLElement;
  private schemePanel: HTMLElement;
  private dataText!: HTMLTextAreaElement;
  private fieldInput!: HTMLInputElement;
  private geoText!: HTMLTextAreaElement;
  private namePropInput!: HTMLInputElement;
  private kInput!: HTMLInputElement;

  constructor(private store: AppStore) {
    this.element = document.createElement("section");
    this.element.className = "design-view";
    const title = document.createElement("h2");
    title.textContent = "Color Design";
    this.element.appendChild(title);

    this.uploadPanel = this.panel("upload", "1. Data upload");
    this.classifyPanel = this.panel("classify", "2. Classification");
    this.conceptPanel = this.panel("concept", "3. Color concept");
    this.schemePanel = this.panel("scheme", "4. Color scheme");
    this.buildUploadPanel();

    store.subscribe((state) => this.update(state));
  }

  private panel(name: string, heading: string): HTMLElement {
    const section = document.createElement("div");
    section.className = `panel panel-${name}`;
    const h = document.createElement("h3");
    h.textContent = heading;
    section.appendChild(h);
    const body = document.createElement("div");
    body.className = "panel-body";
    section.appendChild(body);
    this.element.appendChild(section);
    return body;
  }

  private buildUploadPanel(): void {
    this.dataText = document.createElement("textarea");
    this.dataText.className = "data-input";
    this.dataText.placeholder = '[{"name": "Region", "gdp": 123}, ...]';
    this.fieldInput = document.createElement("input");
    this.fieldInput.className = "field-input";
    this.fieldInput.placeholder = "value field, e.g. gdp";
    this.geoText = document.createElement("textarea");
    this.geoText.className = "geo-input";
    this.geoText.placeholder = "GeoJSON FeatureCollection (optional)";
    this.namePropInput = document.createElement("input");
    this.namePropInput.className = "name-prop-input";
    this.namePropInput.value = "name";
    const button = document.createElement("button");
    button.className = "upload-button";
    button.textContent = "Upload";
    button.addEventListener("click", () => {
      let data: unknown;
      let geojson: FeatureCollection | undefined;
      try {
        data = JSON.parse(this.dataText.value);
        geojson = this.geoText.value.trim()
          ? (JSON.parse(this.geoText.value) as FeatureCollection)
          : undefined;
      } catch (err) {
        this.uploadStatus(`not valid JSON: ${err}`);
        return;
      }
      void this.store.uploadData(data, this.fieldInput.value.trim(),
        geojson, this.namePropInput.value.trim() || "name");
    });
    const status = document.createElement("div");
    status.className = "upload-status";
    this.uploadPanel.append(this.dataText, this.fieldInput, this.geoText,
      this.namePropInput, button, status);
  }

  private uploadStatus(text: string): void {
    const status = this.uploadPanel.querySelector(".upload-status");
    if (status) status.textContent = text;
  }

  private update(state: ViewState): void {
    for (const button of this.element.querySelectorAll("button")) {
      (button as HTMLButtonElement).disabled = state.busy;
    }
    this.renderUploadStatus(state);
    this.renderClassifyPanel(state);
    this.renderConceptPanel(state);
    this.renderSchemePanel(state);
  }

  private renderUploadStatus(state: ViewState): void {
    if (!state.summary) return;
    const v = state.validation;
    const clean = v?.is_clean ? "clean" : "has issues";
    this.uploadStatus(
      `${state.summary.count} regions, ${state.summary.value_field} ` +
      `${state.summary.min}..${state.summary.max} (${clean})`);
  }

  private renderClassifyPanel(state: ViewState): void {
    const body = this.classifyPanel;
    body.replaceChildren();
    const row = document.createElement("div");
    this.kInput = document.createElement("input");
    this.kInput.type = "number";
    this.kInput.min = "3";
    this.kInput.max = "11";
    this.kInput.value = this.kInput.value || "5";
    this.kInput.className = "k-input";
    const button = document.createElement("button");
    button.className = "classify-button";
    button.textContent = "Classify";
    button.disabled = state.busy || !state.summary;
    button.addEventListener("click", () => {
      void this.store.classify(Number(this.kInput.value));
    });
    row.append("classes: ", this.kInput, button);
    body.appendChild(row);
    if (!state.classify) return;

    const list = document.createElement("div");
    list.className = "method-list";
    for (const result of state.classify.results) {
      const card = document.createElement("label");
      card.className = "method-card" +
        (result.method === state.selectedMethod ? " selected" : "");
      const radio = document.createElement("input");
      radio.type = "radio";
      radio.name = "method";
      radio.value = result.method;
      radio.checked = result.method === state.selectedMethod;
      radio.addEventListener("change", () => {
        void this.store.selectMethod(result.method);
      });
      const badge = document.createElement("span");
      badge.className = "gvf-badge";
      badge.textContent = `GVF ${result.gvf.toFixed(2)}`;
      const name = document.createElement("span");
      name.className = "method-name";
      name.textContent = result.method;
      card.append(radio, name, badge, histogramSvg(result));
      list.appendChild(card);
    }
    body.appendChild(list);
  }

  private renderConceptPanel(state: ViewState): void {
    const body = this.conceptPanel;
    body.replaceChildren();

    const intentRow = document.createElement("div");
    const intentInput = document.createElement("input");
    intentInput.className = "intent-input";
    intentInput.placeholder = "design intent, e.g. Statue of Liberty like";
    const intentButton = document.createElement("button");
    intentButton.className = "intent-button";
    intentButton.textContent = "Design concept";
    intentButton.disabled = state.busy || !state.classify;
    intentButton.addEventListener("click", () => {
      if (intentInput.value.trim()) void this.store.setIntent(intentInput.value.trim());
    });
    intentRow.append(intentInput, intentButton);
    body.appendChild(intentRow);
    if (!state.concept) return;

    const tagRow = document.createElement("div");
    tagRow.className = "theme-tags";
    for (const theme of THEMES) {
      const tag = document.createElement("button");
      tag.className = "theme-tag" + (state.concept.theme === theme ? " selected" : "");
      tag.dataset.theme = theme;
      tag.textContent = theme.replace("_", " ");
      tag.disabled = state.busy;
      tag.addEventListener("click", () => void this.store.patchConcept({ theme }));
      tagRow.appendChild(tag);
    }
    body.appendChild(tagRow);

    const typeRow = document.createElement("div");
    typeRow.className = "scheme-type-tags";
    for (const schemeType of SCHEME_TYPES) {
      const tag = document.createElement("button");
      tag.className = "scheme-type-tag" +
        (state.concept.scheme_type === schemeType ? " selected" : "");
      tag.textContent = schemeType;
      tag.disabled = state.busy;
      tag.addEventListener("click", () =>
        void this.store.patchConcept({ scheme_type: schemeType }));
      typeRow.appendChild(tag);
    }
    body.appendChild(typeRow);

    for (const mood of MOODS) {
      const row = document.createElement("div");
      row.className = "mood-row";
      const label = document.createElement("span");
      const level = state.concept[mood.field];
      label.textContent = `${mood.field}: ${mood.labels[level] ?? level}`;
      const slider = document.createElement("input");
      slider.type = "range";
      slider.min = "0";
      slider.max = "2";
      slider.step = "1";
      slider.value = String(level);
      slider.className = `mood-slider mood-${mood.field}`;
      slider.addEventListener("change", () => {
        void this.store.patchConcept({ [mood.field]: quantizeMoodLevel(slider.value) });
      });
      row.append(label, slider);
      body.appendChild(row);
    }

    const rationale = document.createElement("p");
    rationale.className = "rationale";
    rationale.textContent = state.concept.rationale;
    body.appendChild(rationale);
  }

  private renderSchemePanel(state: ViewState): void {
    const body = this.schemePanel;
    body.replaceChildren();
    const generate = document.createElement("button");
    generate.className = "generate-button";
    generate.textContent = state.schemeView?.scheme ? "Regenerate scheme" : "Generate scheme";
    generate.disabled = state.busy || !state.concept;
    generate.addEventListener("click", () => void this.store.generateScheme());
    body.appendChild(generate);
    const view = state.schemeView;
    if (!view?.scheme) return;

    const toggle = document.createElement("div");
    toggle.className = "scheme-toggle";
    for (const which of ["generated", "matched"] as const) {
      const button = document.createElement("button");
      button.className = `toggle-${which}` +
        (view.active_scheme === which ? " selected" : "");
      button.textContent = which === "generated"
        ? "Generated"
        : view.match
          ? `Matched (${view.match.palette.name})`
          : "Matched (none)";
      button.disabled = state.busy || (which === "matched" && !view.match);
      button.addEventListener("click", () => void this.store.setActiveScheme(which));
      toggle.appendChild(button);
    }
    body.appendChild(toggle);

    const swatches = document.createElement("div");
    swatches.className = "swatch-row";
    const activeColors = view.active_scheme === "matched" && view.match
      ? (view.match.reversed
        ? [...view.match.palette.colors].reverse()
        : view.match.palette.colors)
      : view.scheme.colors;
    activeColors.forEach((color, i) => {
      const cell = document.createElement("div");
      cell.className = "swatch";
      cell.style.background = color;
      const picker = document.createElement("input");
      picker.type = "color";
      picker.value = color;
      picker.className = "swatch-picker";
      picker.dataset.index = String(i);
      picker.addEventListener("change", () => {
        void this.store.directEdit(i, picker.value);
      });
      const caption = document.createElement("span");
      caption.textContent = `class ${i}`;
      cell.append(picker, caption);
      swatches.appendChild(cell);
    });
    body.appendChild(swatches);

    if (view.lint) {
      const lint = document.createElement("ul");
      lint.className = "lint-findings";
      if (view.lint.clean) {
        const li = document.createElement("li");
        li.className = "lint-clean";
        li.textContent = "lint: clean";
        lint.appendChild(li);
      }
      for (const finding of view.lint.findings) {
        const li = document.createElement("li");
        li.className = `lint-${finding.severity}`;
        li.textContent = `${finding.rule}: ${finding.message}`;
        lint.appendChild(li);
      }
      body.appendChild(lint);
    }
  }
}
