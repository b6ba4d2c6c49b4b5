import { describe, expect, it } from "vitest";

import { FeatureCollection, StyledMap } from "../src/api.js";
import { MapView } from "../src/mapview.js";
import { AppStore, ViewState } from "../src/state.js";

function square(name: string, x: number): { type: "Feature"; properties: Record<string, unknown>; geometry: { type: string; coordinates: unknown } } {
  return {
    type: "Feature",
    properties: { name },
    geometry: {
      type: "Polygon",
      coordinates: [[[x, 0], [x + 1, 0], [x + 1, 1], [x, 1], [x, 0]]],
    },
  };
}

const GEOMETRY: FeatureCollection = {
  type: "FeatureCollection",
  features: [square("A", 0), square("B", 1), square("C", 2)],
};

const STYLED: StyledMap = {
  features: {
    type: "FeatureCollection",
    features: [
      { ...square("A", 0), properties: { name: "A", class_index: 0, fill: "#eeeeee" } },
      { ...square("B", 1), properties: { name: "B", class_index: 2, fill: "#111111" } },
    ],
  },
  legend: [
    { range: "[0, 10)", color: "#eeeeee" },
    { range: "[10, 20)", color: "#888888" },
    { range: "[20, 30]", color: "#111111" },
  ],
  unmatched: ["D"],
};

/** A stand-in store that lets tests push states directly. */
function fakeStore(): { store: AppStore; push: (s: Partial<ViewState>) => void } {
  let listener: ((s: ViewState) => void) | null = null;
  const base: Partial<ViewState> = { map: null, geometry: null };
  const store = {
    state: base,
    subscribe(fn: (s: ViewState) => void) {
      listener = fn;
      fn(base as ViewState);
      return () => {};
    },
  } as unknown as AppStore;
  return {
    store,
    push(s) {
      listener?.({ ...base, ...s } as ViewState);
    },
  };
}

describe("MapView", () => {
  it("renders matched regions with their fill and no-data regions hatched", () => {
    const { store, push } = fakeStore();
    const view = new MapView(store);
    document.body.appendChild(view.element);
    push({ map: STYLED, geometry: GEOMETRY });

    const paths = view.element.querySelectorAll("path.region");
    expect(paths.length).toBe(3);
    const byName = new Map(
      [...paths].map((p) => [p.getAttribute("data-name"), p]));
    expect(byName.get("A")!.getAttribute("fill")).toBe("#eeeeee");
    expect(byName.get("B")!.getAttribute("fill")).toBe("#111111");
    expect(byName.get("C")!.getAttribute("fill")).toBe("url(#nodata-hatch)");
    expect(byName.get("C")!.classList.contains("nodata")).toBe(true);
    document.body.replaceChildren();
  });

  it("legend lists every class entry plus unmatched regions", () => {
    const { store, push } = fakeStore();
    const view = new MapView(store);
    document.body.appendChild(view.element);
    push({ map: STYLED, geometry: GEOMETRY });

    const entries = view.element.querySelectorAll(".legend-entry");
    expect(entries.length).toBe(3);
    const chips = [...view.element.querySelectorAll<HTMLElement>(".legend-chip")]
      .map((c) => c.dataset.color);
    expect(chips).toEqual(["#eeeeee", "#888888", "#111111"]);
    expect(view.element.querySelector(".legend-unmatched")!.textContent)
      .toContain("D");
    document.body.replaceChildren();
  });

  it("zoom and pan update the SVG viewBox", () => {
    const { store, push } = fakeStore();
    const view = new MapView(store);
    push({ map: STYLED, geometry: GEOMETRY });
    const svg = view.element.querySelector("svg")!;
    const before = svg.getAttribute("viewBox");
    view.zoom(2);
    const zoomed = svg.getAttribute("viewBox");
    expect(zoomed).not.toBe(before);
    view.pan(40, -20);
    expect(svg.getAttribute("viewBox")).not.toBe(zoomed);
  });
});
