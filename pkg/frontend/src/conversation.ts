/** Conversation view: natural-language steering of the design session. */

import { AppStore, ViewState } from "./state.js";

export class ConversationView {
  readonly element: HTMLElement;
  private log: HTMLElement;
  private input: HTMLInputElement;
  private send: HTMLButtonElement;
  private banner: HTMLElement;

  constructor(private store: AppStore) {
    this.element = document.createElement("section");
    this.element.className = "conversation-view";

    const title = document.createElement("h2");
    title.textContent = "Conversation";
    this.element.appendChild(title);

    this.banner = document.createElement("div");
    this.banner.className = "error-banner";
    this.banner.hidden = true;
    this.element.appendChild(this.banner);

    this.log = document.createElement("div");
    this.log.className = "chat-log";
    this.element.appendChild(this.log);

    const row = document.createElement("div");
    row.className = "chat-input-row";
    this.input = document.createElement("input");
    this.input.type = "text";
    this.input.placeholder = "e.g. I want a Statue of Liberty like map";
    this.input.addEventListener("keydown", (e) => {
      if (e.key === "Enter") this.submit();
    });
    this.send = document.createElement("button");
    this.send.textContent = "Send";
    this.send.addEventListener("click", () => this.submit());
    row.append(this.input, this.send);
    this.element.appendChild(row);

    store.subscribe((state) => this.update(state));
  }

  private submit(): void {
    const text = this.input.value.trim();
    if (!text) return;
    this.input.value = "";
    void this.store.sendChat(text);
  }

  private update(state: ViewState): void {
    this.input.disabled = state.busy;
    this.send.disabled = state.busy;

    if (state.error) {
      this.banner.hidden = false;
      this.banner.textContent = state.error + " ";
      if (state.errorRetryable) {
        const retry = document.createElement("button");
        retry.className = "retry";
        retry.textContent = "Retry";
        retry.addEventListener("click", () => void this.store.retryLastChat());
        this.banner.appendChild(retry);
      }
    } else {
      this.banner.hidden = true;
      this.banner.textContent = "";
    }

    this.log.replaceChildren(
      ...state.transcript.map((turn) => {
        const item = document.createElement("div");
        item.className = `turn turn-${turn.role}`;
        item.textContent = turn.content;
        return item;
      }),
    );
  }
}
