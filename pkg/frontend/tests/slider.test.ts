import { afterEach, describe, expect, it } from "vitest";

import { ApiClient, Concept } from "../src/api.js";
import { DesignView, quantizeMoodLevel } from "../src/design.js";
import { AppStore } from "../src/state.js";
import { stubFetch, waitFor } from "./helpers.js";

const CONCEPT: Concept = {
  theme: "elegant",
  temperature: 1,
  distance: 1,
  weight: 1,
  scheme_type: "sequential",
  rationale: "test concept",
};

let restore: (() => void) | null = null;

afterEach(() => {
  restore?.();
  restore = null;
  document.body.replaceChildren();
});

function conceptRoutes() {
  return stubFetch((method, path, body) => {
    if (method === "POST" && path === "/sessions") return { json: { session_id: "s1" } };
    if (method === "POST" && path === "/sessions/s1/concept") return { json: CONCEPT };
    if (method === "PATCH" && path === "/sessions/s1/concept") {
      return { json: { ...CONCEPT, ...(body as object) } };
    }
    if (method === "POST" && path === "/sessions/s1/data") {
      return { json: { validation: { is_clean: true, missing_values: [], duplicate_names: [], non_numeric: [], outliers: [] }, summary: { count: 2, min: 1, max: 2, mean: 1.5, range: 1, value_field: "v" }, join: null } };
    }
    if (method === "POST" && path === "/sessions/s1/classify") {
      return { json: { results: [], selected: "fisher_jenks", skipped: {}, scheme_type: "sequential", analysis: { error_findings: "", description: "", suggested_scheme_type: "sequential" } } };
    }
    throw new Error(`unexpected ${method} ${path}`);
  });
}

async function viewWithConcept() {
  const stub = conceptRoutes();
  restore = stub.restore;
  const store = new AppStore(new ApiClient(""));
  const view = new DesignView(store);
  document.body.appendChild(view.element);
  await store.init();
  await store.uploadData([{ name: "A", v: 1 }], "v");
  await store.classify(5);
  await store.setIntent("anything");
  await waitFor(() => document.querySelector(".mood-slider"), 5000, "sliders");
  return { stub, store };
}

describe("mood sliders", () => {
  it("emit only the quantized levels 0, 1, 2 in PATCH bodies", async () => {
    const { stub, store } = await viewWithConcept();
    const attempts = ["0", "1", "2", "1.4", "2.9", "-3"];
    for (const raw of attempts) {
      const slider = document.querySelector<HTMLInputElement>(".mood-slider.mood-weight");
      expect(slider).toBeTruthy();
      slider!.value = raw;
      slider!.dispatchEvent(new Event("change", { bubbles: true }));
      await waitFor(() => !store.state.busy, 5000, "patch settled");
    }
    const patches = stub.calls.filter(
      (c) => c.method === "PATCH" && c.path === "/sessions/s1/concept");
    expect(patches.length).toBeGreaterThanOrEqual(attempts.length);
    for (const patch of patches) {
      const body = patch.body as Record<string, unknown>;
      for (const field of ["temperature", "distance", "weight"]) {
        if (field in body) {
          expect([0, 1, 2]).toContain(body[field]);
          expect(Number.isInteger(body[field])).toBe(true);
        }
      }
    }
  });

  it("sliders are configured for the three discrete levels", async () => {
    await viewWithConcept();
    const sliders = document.querySelectorAll<HTMLInputElement>(".mood-slider");
    expect(sliders.length).toBe(3);
    for (const slider of sliders) {
      expect(slider.min).toBe("0");
      expect(slider.max).toBe("2");
      expect(slider.step).toBe("1");
    }
  });
});

describe("quantizeMoodLevel", () => {
  it("clamps and rounds to the discrete levels", () => {
    expect(quantizeMoodLevel("0")).toBe(0);
    expect(quantizeMoodLevel("1")).toBe(1);
    expect(quantizeMoodLevel("2")).toBe(2);
    expect(quantizeMoodLevel("1.4")).toBe(1);
    expect(quantizeMoodLevel("1.6")).toBe(2);
    expect(quantizeMoodLevel("9")).toBe(2);
    expect(quantizeMoodLevel("-5")).toBe(0);
  });
});
