/** Map view: pan/zoom SVG rendering of the styled GeoJSON with a legend.
 *
 * Regions present in the uploaded geometry but absent from the styled map
 * (no data joined) render with a neutral gray hatch.
 */

import { FeatureCollection, GeoFeature, StyledMap } from "./api.js";
import { AppStore, ViewState } from "./state.js";

const WIDTH = 800;
const HEIGHT = 520;
const SVG_NS = "http://www.w3.org/2000/svg";

type Ring = [number, number][];

function collectRings(feature: GeoFeature): Ring[] {
  const geometry = feature.geometry;
  if (geometry.type === "Polygon") {
    return geometry.coordinates as Ring[];
  }
  if (geometry.type === "MultiPolygon") {
    return (geometry.coordinates as Ring[][]).flat();
  }
  return [];
}

function boundsOf(features: GeoFeature[]): [number, number, number, number] {
  let minX = Infinity, minY = Infinity, maxX = -Infinity, maxY = -Infinity;
  for (const f of features) {
    for (const ring of collectRings(f)) {
      for (const [x, y] of ring) {
        minX = Math.min(minX, x);
        minY = Math.min(minY, y);
        maxX = Math.max(maxX, x);
        maxY = Math.max(maxY, y);
      }
    }
  }
  if (!Number.isFinite(minX)) return [0, 0, 1, 1];
  return [minX, minY, maxX, maxY];
}

export class MapView {
  readonly element: HTMLElement;
  private svg: SVGSVGElement;
  private layer: SVGGElement;
  private legendBox: HTMLElement;
  private viewBox = { x: 0, y: 0, w: WIDTH, h: HEIGHT };
  private dragging: { x: number; y: number } | null = null;

  constructor(store: AppStore) {
    this.element = document.createElement("section");
    this.element.className = "map-view";
    const title = document.createElement("h2");
    title.textContent = "Map";
    this.element.appendChild(title);

    const frame = document.createElement("div");
    frame.className = "map-frame";
    this.svg = document.createElementNS(SVG_NS, "svg");
    this.svg.setAttribute("class", "map-svg");
    this.applyViewBox();

    const defs = document.createElementNS(SVG_NS, "defs");
    defs.innerHTML =
      '<pattern id="nodata-hatch" width="6" height="6" patternUnits="userSpaceOnUse" ' +
      'patternTransform="rotate(45)">' +
      '<rect width="6" height="6" fill="#e8e8e8"></rect>' +
      '<line x1="0" y1="0" x2="0" y2="6" stroke="#b0b0b0" stroke-width="2"></line>' +
      "</pattern>";
    this.svg.appendChild(defs);

    this.layer = document.createElementNS(SVG_NS, "g");
    this.svg.appendChild(this.layer);
    frame.appendChild(this.svg);

    this.legendBox = document.createElement("div");
    this.legendBox.className = "legend";
    frame.appendChild(this.legendBox);
    this.element.appendChild(frame);

    this.svg.addEventListener("wheel", (e) => this.onWheel(e));
    this.svg.addEventListener("mousedown", (e) => {
      this.dragging = { x: e.clientX, y: e.clientY };
    });
    this.svg.addEventListener("mousemove", (e) => this.onDrag(e));
    window.addEventListener("mouseup", () => {
      this.dragging = null;
    });

    store.subscribe((state) => this.update(state));
  }

  zoom(factor: number, cx = WIDTH / 2, cy = HEIGHT / 2): void {
    const { x, y, w, h } = this.viewBox;
    const px = x + (cx / WIDTH) * w;
    const py = y + (cy / HEIGHT) * h;
    const nw = w / factor;
    const nh = h / factor;
    this.viewBox = { x: px - (px - x) / factor, y: py - (py - y) / factor, w: nw, h: nh };
    this.applyViewBox();
  }

  pan(dx: number, dy: number): void {
    this.viewBox.x -= (dx / WIDTH) * this.viewBox.w;
    this.viewBox.y -= (dy / HEIGHT) * this.viewBox.h;
    this.applyViewBox();
  }

  private onWheel(e: WheelEvent): void {
    e.preventDefault();
    this.zoom(e.deltaY < 0 ? 1.2 : 1 / 1.2, e.offsetX, e.offsetY);
  }

  private onDrag(e: MouseEvent): void {
    if (!this.dragging) return;
    this.pan(e.clientX - this.dragging.x, e.clientY - this.dragging.y);
    this.dragging = { x: e.clientX, y: e.clientY };
  }

  private applyViewBox(): void {
    const { x, y, w, h } = this.viewBox;
    this.svg.setAttribute("viewBox", `${x} ${y} ${w} ${h}`);
    this.svg.setAttribute("width", String(WIDTH));
    this.svg.setAttribute("height", String(HEIGHT));
  }

  private update(state: ViewState): void {
    this.renderFeatures(state.map, state.geometry);
    this.renderLegend(state.map);
  }

  private renderFeatures(map: StyledMap | null, geometry: FeatureCollection | null): void {
    this.layer.replaceChildren();
    const base = geometry?.features ?? map?.features.features ?? [];
    if (!base.length || !map) return;
    const [minX, minY, maxX, maxY] = boundsOf(base);
    const pad = 10;
    const scale = Math.min(
      (WIDTH - 2 * pad) / Math.max(maxX - minX, 1e-9),
      (HEIGHT - 2 * pad) / Math.max(maxY - minY, 1e-9));
    const project = ([x, y]: [number, number]): [number, number] => [
      pad + (x - minX) * scale,
      HEIGHT - pad - (y - minY) * scale,  // north up
    ];

    const styledByName = new Map<string, GeoFeature>();
    for (const f of map.features.features) {
      styledByName.set(String(f.properties.name ?? ""), f);
    }

    for (const feature of base) {
      const name = String(feature.properties.name ?? "");
      const styled = styledByName.get(name);
      const rings = collectRings(feature);
      if (!rings.length) continue;
      const d = rings
        .map((ring) =>
          "M" + ring.map((pt) => project(pt).map((v) => v.toFixed(2)).join(",")).join("L") + "Z")
        .join(" ");
      const path = document.createElementNS(SVG_NS, "path");
      path.setAttribute("d", d);
      path.setAttribute("class", styled ? "region" : "region nodata");
      path.setAttribute("fill", styled ? String(styled.properties.fill) : "url(#nodata-hatch)");
      path.setAttribute("stroke", "#ffffff");
      path.setAttribute("data-name", name);
      if (styled) path.setAttribute("data-class-index", String(styled.properties.class_index));
      const tooltip = document.createElementNS(SVG_NS, "title");
      tooltip.textContent = styled
        ? `${name} (class ${styled.properties.class_index})`
        : `${name} (no data)`;
      path.appendChild(tooltip);
      this.layer.appendChild(path);
    }
  }

  private renderLegend(map: StyledMap | null): void {
    this.legendBox.replaceChildren();
    if (!map) return;
    for (const entry of map.legend) {
      const row = document.createElement("div");
      row.className = "legend-entry";
      const chip = document.createElement("span");
      chip.className = "legend-chip";
      chip.style.background = entry.color;
      chip.dataset.color = entry.color;
      const text = document.createElement("span");
      text.textContent = entry.range;
      row.append(chip, text);
      this.legendBox.appendChild(row);
    }
    if (map.unmatched.length) {
      const note = document.createElement("div");
      note.className = "legend-unmatched";
      note.textContent = `no geometry: ${map.unmatched.join(", ")}`;
      this.legendBox.appendChild(note);
    }
  }
}
