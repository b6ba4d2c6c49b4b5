/** Single source of truth for all three views.
 *
 * The server owns every color decision: mutations go over the API and the
 * store only ever reflects acknowledged responses (no optimistic
 * rendering). At most one mutation is in flight at a time.
 */

import {
  ApiClient,
  ApiError,
  ChatResponse,
  ClassifyResponse,
  Concept,
  ConceptPatchBody,
  DataSummary,
  FeatureCollection,
  JoinInfo,
  SchemeView,
  StyledMap,
  ValidationReport,
} from "./api.js";

export interface ChatTurn {
  role: "user" | "assistant";
  content: string;
}

export interface ViewState {
  sessionId: string | null;
  busy: boolean;
  error: string | null;
  errorRetryable: boolean;
  validation: ValidationReport | null;
  summary: DataSummary | null;
  join: JoinInfo | null;
  geometry: FeatureCollection | null;
  classify: ClassifyResponse | null;
  selectedMethod: string | null;
  concept: Concept | null;
  schemeView: SchemeView | null;
  map: StyledMap | null;
  transcript: ChatTurn[];
}

const INITIAL: ViewState = {
  sessionId: null,
  busy: false,
  error: null,
  errorRetryable: false,
  validation: null,
  summary: null,
  join: null,
  geometry: null,
  classify: null,
  selectedMethod: null,
  concept: null,
  schemeView: null,
  map: null,
  transcript: [],
};

type Listener = (state: ViewState) => void;

export class AppStore {
  state: ViewState = { ...INITIAL };
  private listeners: Listener[] = [];
  private lastUtterance: string | null = null;

  constructor(private api: ApiClient) {}

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    listener(this.state);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private set(partial: Partial<ViewState>): void {
    this.state = { ...this.state, ...partial };
    for (const listener of this.listeners) listener(this.state);
  }

  /** Serializes mutations and routes failures to the error banner. */
  private async mutate<T>(action: () => Promise<T>): Promise<T | null> {
    if (this.state.busy) return null;
    this.set({ busy: true, error: null, errorRetryable: false });
    try {
      const result = await action();
      this.set({ busy: false });
      return result;
    } catch (err) {
      const apiErr = err instanceof ApiError ? err : null;
      this.set({
        busy: false,
        error: apiErr ? `${apiErr.code}: ${apiErr.message}` : String(err),
        errorRetryable: apiErr?.retryable ?? false,
      });
      return null;
    }
  }

  async init(): Promise<void> {
    const { session_id } = await this.api.createSession();
    this.set({ sessionId: session_id });
  }

  private sid(): string {
    if (!this.state.sessionId) throw new Error("no session yet");
    return this.state.sessionId;
  }

  async uploadData(data: unknown, valueField: string,
    geojson?: FeatureCollection, nameProperty?: string): Promise<void> {
    await this.mutate(async () => {
      const response = await this.api.uploadData(
        this.sid(), data, valueField, geojson, nameProperty);
      // uploading resets every downstream stage
      this.set({
        validation: response.validation,
        summary: response.summary,
        join: response.join,
        geometry: geojson ?? null,
        classify: null,
        selectedMethod: null,
        concept: null,
        schemeView: null,
        map: null,
      });
    });
  }

  async classify(k: number): Promise<void> {
    await this.mutate(async () => {
      const response = await this.api.classify(this.sid(), k);
      this.set({
        classify: response,
        selectedMethod: response.selected,
        concept: null,
        schemeView: null,
        map: null,
      });
    });
  }

  async selectMethod(method: string): Promise<void> {
    await this.mutate(async () => {
      const response = await this.api.selectMethod(this.sid(), method);
      this.set({ selectedMethod: response.selected, schemeView: null, map: null });
    });
  }

  async setIntent(intent: string): Promise<void> {
    await this.mutate(async () => {
      const concept = await this.api.designConcept(this.sid(), intent);
      this.set({ concept, schemeView: null, map: null });
    });
  }

  async patchConcept(fields: ConceptPatchBody): Promise<void> {
    await this.mutate(async () => {
      const concept = await this.api.patchConcept(this.sid(), fields);
      // concept edits invalidate the scheme server-side; mirror that
      this.set({ concept, schemeView: null, map: null });
    });
  }

  async generateScheme(): Promise<void> {
    await this.mutate(async () => {
      const schemeView = await this.api.designScheme(this.sid());
      this.set({ schemeView });
      await this.refreshMap();
    });
  }

  async directEdit(index: number, color: string): Promise<void> {
    await this.mutate(async () => {
      const schemeView = await this.api.directEdit(this.sid(), index, color);
      this.set({ schemeView });
      await this.refreshMap();
    });
  }

  async setActiveScheme(active: "generated" | "matched"): Promise<void> {
    await this.mutate(async () => {
      const schemeView = await this.api.setActiveScheme(this.sid(), active);
      this.set({ schemeView });
      await this.refreshMap();
    });
  }

  async sendChat(utterance: string): Promise<void> {
    this.lastUtterance = utterance;
    await this.mutate(async () => {
      this.set({ transcript: [...this.state.transcript, { role: "user", content: utterance }] });
      const response: ChatResponse = await this.api.chat(this.sid(), utterance);
      this.set({
        transcript: [...this.state.transcript, { role: "assistant", content: response.assistant }],
        concept: response.concept,
        schemeView: {
          scheme: response.scheme,
          match: response.match,
          lint: response.lint,
          active_scheme: response.active_scheme,
        },
      });
      if (response.scheme) await this.refreshMap();
    });
  }

  async retryLastChat(): Promise<void> {
    if (this.lastUtterance) await this.sendChat(this.lastUtterance);
  }

  private async refreshMap(): Promise<void> {
    if (!this.state.geometry) return;
    const map = await this.api.styledMap(this.sid());
    this.set({ map });
  }
}
