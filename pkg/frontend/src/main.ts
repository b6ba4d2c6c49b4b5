/** Wires the three views to one store over the HTTP API. */

import { ApiClient } from "./api.js";
import { ConversationView } from "./conversation.js";
import { DesignView } from "./design.js";
import { MapView } from "./mapview.js";
import { AppStore } from "./state.js";

export interface App {
  store: AppStore;
  conversation: ConversationView;
  design: DesignView;
  map: MapView;
}

export async function createApp(root: HTMLElement, apiBase = ""): Promise<App> {
  const store = new AppStore(new ApiClient(apiBase));
  const conversation = new ConversationView(store);
  const design = new DesignView(store);
  const map = new MapView(store);
  root.replaceChildren(conversation.element, design.element, map.element);
  await store.init();
  return { store, conversation, design, map };
}

declare global {
  interface Window {
    CHOROCOLOR_API?: string;
  }
}

if (typeof document !== "undefined") {
  const root = document.getElementById("app");
  if (root) void createApp(root, window.CHOROCOLOR_API ?? "");
}
