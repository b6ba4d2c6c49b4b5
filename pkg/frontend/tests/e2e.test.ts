/** End-to-end: the real UI in jsdom against a real offline API server.
 *
 * Drives upload -> classify -> intent -> scheme -> swatch edit purely
 * through DOM events; the server replays committed LLM fixtures so the
 * whole flow is deterministic and needs no network beyond localhost.
 */

import { ChildProcess, spawn } from "node:child_process";
import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { createApp } from "../src/main.js";
import type { App } from "../src/main.js";
import { waitFor } from "./helpers.js";

const ROOT = join(dirname(fileURLToPath(import.meta.url)), "..", "..");
const PORT = 8901 + Math.floor(Math.random() * 80);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

beforeAll(async () => {
  server = spawn(
    "python3",
    ["-m", "uvicorn", "chorocolor.service:app", "--host", "127.0.0.1",
      "--port", String(PORT), "--log-level", "warning"],
    {
      cwd: ROOT,
      env: {
        ...process.env,
        CHOROCOLOR_OFFLINE: "1",
        CHOROCOLOR_FIXTURES: join(ROOT, "fixtures", "llm"),
      },
      stdio: ["ignore", "inherit", "inherit"],
    },
  );
  await waitFor(async () => {
    try {
      const r = await fetch(`${BASE}/sessions`, { method: "POST" });
      return r.status === 201;
    } catch {
      return false;
    }
  }, 30000, "server startup");
}, 60000);

afterAll(() => {
  server?.kill();
});

function click(selector: string): void {
  const el = document.querySelector<HTMLElement>(selector);
  if (!el) throw new Error(`no element for ${selector}`);
  el.dispatchEvent(new MouseEvent("click", { bubbles: true }));
}

function setValue(selector: string, value: string): void {
  const el = document.querySelector<HTMLInputElement | HTMLTextAreaElement>(selector);
  if (!el) throw new Error(`no element for ${selector}`);
  el.value = value;
}

describe("full design flow through the UI", () => {
  let app: App;

  it("runs upload -> classify -> intent -> scheme -> swatch edit", async () => {
    const root = document.createElement("div");
    document.body.appendChild(root);
    app = await createApp(root, BASE);
    await waitFor(() => app.store.state.sessionId, 10000, "session id");

    // upload: paste dataset + geometry, click Upload
    setValue(".data-input", readFileSync(join(ROOT, "fixtures/data/gdp_2023.json"), "utf-8"));
    setValue(".field-input", "gdp");
    setValue(".geo-input", readFileSync(join(ROOT, "fixtures/data/regions.geojson"), "utf-8"));
    click(".upload-button");
    await waitFor(() => app.store.state.summary, 10000, "upload ack");
    expect(app.store.state.validation?.is_clean).toBe(true);

    // classify at k=5; six method cards with GVF badges and histograms appear
    setValue(".k-input", "5");
    click(".classify-button");
    await waitFor(() => app.store.state.classify, 10000, "classification");
    expect(document.querySelectorAll(".method-card").length).toBe(6);
    expect(document.querySelectorAll(".histogram").length).toBe(6);
    expect(app.store.state.selectedMethod).toBe("fisher_jenks");

    // intent -> concept
    setValue(".intent-input", "Statue of Liberty like");
    click(".intent-button");
    await waitFor(() => app.store.state.concept, 10000, "concept");
    expect(app.store.state.concept?.theme).toBe("elegant");
    expect(document.querySelectorAll(".mood-slider").length).toBe(3);

    // scheme generation: swatches, lint, match, and the styled map
    click(".generate-button");
    await waitFor(() => app.store.state.map, 15000, "styled map");
    const legendEntries = document.querySelectorAll(".legend-entry");
    expect(legendEntries.length).toBe(5); // legend length equals k

    const regionFills = () => {
      const fills = new Map<string, string>();
      for (const path of document.querySelectorAll("path.region")) {
        fills.set(path.getAttribute("data-name")!, path.getAttribute("fill")!);
      }
      return fills;
    };
    const before = regionFills();
    expect(before.size).toBe(31);

    // swatch edit: recolor class 2 only
    const picker = document.querySelector<HTMLInputElement>(
      '.swatch-picker[data-index="2"]');
    expect(picker).toBeTruthy();
    picker!.value = "#aa3311";
    picker!.dispatchEvent(new Event("change", { bubbles: true }));
    await waitFor(
      () => document.querySelector('.swatch-picker[data-index="2"]') &&
        (document.querySelector<HTMLInputElement>('.swatch-picker[data-index="2"]')!
          .value === "#aa3311") && !app.store.state.busy &&
        app.store.state.map?.legend[2]?.color === "#aa3311",
      15000, "swatch edit round trip");

    const after = regionFills();
    const changedNames = [...after.keys()].filter((n) => after.get(n) !== before.get(n));
    const class2Names = [...document.querySelectorAll('path.region[data-class-index="2"]')]
      .map((p) => p.getAttribute("data-name"));
    // exactly one class changed color, and it is class 2 everywhere
    expect(new Set(changedNames)).toEqual(new Set(class2Names));
    for (const name of changedNames) {
      expect(after.get(name)).toBe("#aa3311");
    }
    const untouched = [...after.keys()].filter((n) => !changedNames.includes(n));
    for (const name of untouched) {
      expect(after.get(name)).toBe(before.get(name));
    }
    expect(changedNames.length).toBeGreaterThan(0);

    // server stays the source of truth: UI colors equal the exported scheme
    const exported = await (await fetch(
      `${BASE}/sessions/${app.store.state.sessionId}/export`)).json();
    expect(exported.scheme.colors[2]).toBe("#aa3311");
  }, 90000);

  it("chat refinement updates the scheme through the conversation view", async () => {
    setValue(".chat-input-row input", "Make these colors more vivid");
    click(".chat-input-row button");
    await waitFor(
      () => app.store.state.transcript.some((t) => t.role === "assistant"),
      15000, "assistant reply");
    const turns = document.querySelectorAll(".turn");
    expect(turns.length).toBeGreaterThanOrEqual(2);
    expect(app.store.state.schemeView?.scheme?.colors[2]).not.toBe("#aa3311");
  }, 60000);
});
