/** Typed client for the chorocolor HTTP API. All color math stays on the
 * server; this client only moves JSON. */

export interface ValidationReport {
  missing_values: string[];
  duplicate_names: string[];
  non_numeric: [string, string][];
  outliers: [string, number][];
  is_clean: boolean;
}

export interface DataSummary {
  count: number;
  min: number;
  max: number;
  mean: number;
  range: number;
  value_field: string;
}

export interface JoinInfo {
  matched: string[];
  unmatched_data: string[];
  unmatched_features: string[];
}

export interface ClassificationResult {
  method: string;
  bounds: number[];
  k: number;
  gvf: number;
  class_counts: number[];
  class_means: (number | null)[];
}

export interface AnalysisInfo {
  error_findings: string;
  description: string;
  suggested_scheme_type: string;
}

export interface ClassifyResponse {
  results: ClassificationResult[];
  selected: string;
  skipped: Record<string, string>;
  scheme_type: string;
  analysis: AnalysisInfo;
}

export interface Concept {
  theme: string;
  temperature: number;
  distance: number;
  weight: number;
  scheme_type: string;
  rationale: string;
}

export interface Scheme {
  colors: string[];
  scheme_type: string;
  source: string;
}

export interface PaletteInfo {
  name: string;
  type: string;
  colors: string[];
}

export interface MatchInfo {
  palette: PaletteInfo;
  distance: number;
  reversed: boolean;
}

export interface LintFinding {
  rule: string;
  severity: string;
  message: string;
  class_indices: number[];
}

export interface LintReport {
  findings: LintFinding[];
  clean: boolean;
}

export interface SchemeView {
  scheme: Scheme | null;
  match: MatchInfo | null;
  lint: LintReport | null;
  active_scheme: string;
}

export interface GeoFeature {
  type: "Feature";
  properties: Record<string, unknown>;
  geometry: { type: string; coordinates: unknown };
}

export interface FeatureCollection {
  type: "FeatureCollection";
  features: GeoFeature[];
}

export interface LegendEntry {
  range: string;
  color: string;
}

export interface StyledMap {
  features: FeatureCollection;
  legend: LegendEntry[];
  unmatched: string[];
}

export interface ChatResponse extends SchemeView {
  assistant: string;
  effect: { type: string; [key: string]: unknown };
  concept: Concept | null;
}

export interface UploadResponse {
  validation: ValidationReport;
  summary: DataSummary;
  join: JoinInfo | null;
}

export interface ConceptPatchBody {
  theme?: string;
  temperature?: number;
  distance?: number;
  weight?: number;
  scheme_type?: string;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }

  /** Provider hiccups are worth retrying; user input errors are not. */
  get retryable(): boolean {
    return this.status >= 500 || this.status === 429;
  }
}

export class ApiClient {
  constructor(private baseUrl: string = "") {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "content-type": "application/json" } };
    if (body !== undefined) init.body = JSON.stringify(body);
    const response = await fetch(this.baseUrl + path, init);
    const payload = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, payload.code ?? "UNKNOWN",
        payload.message ?? response.statusText);
    }
    return payload as T;
  }

  createSession(): Promise<{ session_id: string }> {
    return this.request("POST", "/sessions");
  }

  uploadData(sid: string, data: unknown, valueField: string,
    geojson?: FeatureCollection, nameProperty?: string): Promise<UploadResponse> {
    return this.request("POST", `/sessions/${sid}/data`, {
      data, value_field: valueField, geojson, name_property: nameProperty,
    });
  }

  classify(sid: string, k: number): Promise<ClassifyResponse> {
    return this.request("POST", `/sessions/${sid}/classify`, { k });
  }

  selectMethod(sid: string, method: string): Promise<{ selected: string }> {
    return this.request("PATCH", `/sessions/${sid}/classify`, { method });
  }

  designConcept(sid: string, intent: string): Promise<Concept> {
    return this.request("POST", `/sessions/${sid}/concept`, { intent });
  }

  patchConcept(sid: string, fields: ConceptPatchBody): Promise<Concept> {
    return this.request("PATCH", `/sessions/${sid}/concept`, fields);
  }

  designScheme(sid: string): Promise<SchemeView> {
    return this.request("POST", `/sessions/${sid}/scheme`);
  }

  directEdit(sid: string, index: number, color: string): Promise<SchemeView> {
    return this.request("PATCH", `/sessions/${sid}/scheme`, { index, color });
  }

  setActiveScheme(sid: string, active: "generated" | "matched"): Promise<SchemeView> {
    return this.request("POST", `/sessions/${sid}/scheme/active`, { active });
  }

  chat(sid: string, utterance: string): Promise<ChatResponse> {
    return this.request("POST", `/sessions/${sid}/chat`, { utterance });
  }

  styledMap(sid: string): Promise<StyledMap> {
    return this.request("GET", `/sessions/${sid}/map`);
  }
}
