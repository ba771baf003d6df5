import { renderQuiver } from "./render.js";
import { ApiError, HeightResponse, SessionState } from "./types.js";

const SEEDS = ["p2", "quadric", "dp1", "dp2"];

/** The slice of the service client the page needs; ApiClient satisfies it. */
export interface ServiceApi {
  createSession(seed: string): Promise<SessionState>;
  createSessionFromJson(helix: unknown): Promise<SessionState>;
  tilt(id: string, vertex: number, direction?: "left" | "right"): Promise<SessionState>;
  undo(id: string): Promise<SessionState>;
  heights(id: string, vertex: number, bound?: number): Promise<HeightResponse>;
}

export interface ViewState {
  sessionId: string | null;
  state: SessionState | null;
  selectedVertex: number | null;
  history: string[];
  busy: boolean;
}

/** The page controller: owns the DOM under `root`, talks to the service,
 * and re-renders after every response.  At most one mutating request is in
 * flight; the tilt and undo controls are disabled while it runs. */
export class App {
  readonly view: ViewState = {
    sessionId: null,
    state: null,
    selectedVertex: null,
    history: [],
    busy: false,
  };

  private pending: Promise<void> = Promise.resolve();
  private inFlight = 0;

  readonly svg: SVGSVGElement;
  readonly seedSelect: HTMLSelectElement;
  readonly loadButton: HTMLButtonElement;
  readonly undoButton: HTMLButtonElement;
  readonly uploadInput: HTMLTextAreaElement;
  readonly uploadButton: HTMLButtonElement;
  readonly banner: HTMLDivElement;
  readonly badge: HTMLSpanElement;
  readonly inspector: HTMLDivElement;
  readonly historyList: HTMLUListElement;
  readonly heightButton: HTMLButtonElement;
  readonly heightOutput: HTMLPreElement;
  readonly exportJsonButton: HTMLButtonElement;
  readonly exportDotButton: HTMLButtonElement;
  readonly exportOutput: HTMLPreElement;

  constructor(
    readonly root: HTMLElement,
    private readonly api: ServiceApi,
  ) {
    const doc = root.ownerDocument;
    root.innerHTML = `
      <header>
        <select id="seed-select"></select>
        <button id="load-seed">load seed</button>
        <button id="undo" disabled>undo</button>
        <span id="badge" class="badge"></span>
      </header>
      <div id="banner" class="banner" hidden></div>
      <main>
        <svg id="quiver" width="480" height="480"></svg>
        <aside>
          <div id="inspector" class="inspector">hover a vertex</div>
          <button id="height" disabled>height functions</button>
          <pre id="height-output"></pre>
          <button id="export-json" disabled>export JSON</button>
          <button id="export-dot" disabled>export DOT</button>
          <pre id="export-output"></pre>
          <h3>history</h3>
          <ul id="history"></ul>
          <details>
            <summary>load helix JSON</summary>
            <textarea id="upload" rows="6" cols="40"></textarea>
            <button id="upload-go">create session</button>
          </details>
        </aside>
      </main>`;
    this.svg = root.querySelector("#quiver") as SVGSVGElement;
    this.seedSelect = root.querySelector("#seed-select") as HTMLSelectElement;
    this.loadButton = root.querySelector("#load-seed") as HTMLButtonElement;
    this.undoButton = root.querySelector("#undo") as HTMLButtonElement;
    this.uploadInput = root.querySelector("#upload") as HTMLTextAreaElement;
    this.uploadButton = root.querySelector("#upload-go") as HTMLButtonElement;
    this.banner = root.querySelector("#banner") as HTMLDivElement;
    this.badge = root.querySelector("#badge") as HTMLSpanElement;
    this.inspector = root.querySelector("#inspector") as HTMLDivElement;
    this.historyList = root.querySelector("#history") as HTMLUListElement;
    this.heightButton = root.querySelector("#height") as HTMLButtonElement;
    this.heightOutput = root.querySelector("#height-output") as HTMLPreElement;
    this.exportJsonButton = root.querySelector("#export-json") as HTMLButtonElement;
    this.exportDotButton = root.querySelector("#export-dot") as HTMLButtonElement;
    this.exportOutput = root.querySelector("#export-output") as HTMLPreElement;

    for (const seed of SEEDS) {
      const option = doc.createElement("option");
      option.value = seed;
      option.textContent = seed;
      this.seedSelect.appendChild(option);
    }
    this.seedSelect.value = "quadric";

    this.loadButton.addEventListener("click", () => {
      void this.loadSeed(this.seedSelect.value);
    });
    this.undoButton.addEventListener("click", () => {
      void this.undo();
    });
    this.uploadButton.addEventListener("click", () => {
      void this.loadFromText(this.uploadInput.value);
    });
    this.heightButton.addEventListener("click", () => {
      void this.fetchHeights();
    });
    this.exportJsonButton.addEventListener("click", () => this.exportJson());
    this.exportDotButton.addEventListener("click", () => this.exportDot());
  }

  /** Resolves when no request is in flight; tests await this. */
  whenIdle(): Promise<void> {
    return this.pending;
  }

  private track(op: () => Promise<void>): Promise<void> {
    this.inFlight += 1;
    this.view.busy = true;
    this.syncControls();
    const run = this.pending
      .then(async () => {
        try {
          await op();
          this.banner.hidden = true;
        } catch (error) {
          this.showError(error);
        }
      })
      .finally(() => {
        this.inFlight -= 1;
        this.view.busy = this.inFlight > 0;
        this.syncControls();
      });
    this.pending = run;
    return run;
  }

  loadSeed(seed: string): Promise<void> {
    return this.track(async () => {
      const state = await this.api.createSession(seed);
      this.view.history = [];
      this.applyState(state, `seed ${seed}`);
    });
  }

  loadFromText(text: string): Promise<void> {
    return this.track(async () => {
      let payload: unknown;
      try {
        payload = JSON.parse(text);
      } catch {
        throw new ApiError(400, { reason: "malformed_json", detail: "textarea content" });
      }
      const state = await this.api.createSessionFromJson(payload);
      this.view.history = [];
      this.applyState(state, "uploaded helix");
    });
  }

  tilt(vertex: number): Promise<void> {
    return this.track(async () => {
      if (!this.view.sessionId) {
        return;
      }
      const state = await this.api.tilt(this.view.sessionId, vertex);
      this.applyState(state, `tilt at vertex ${vertex}`);
      const check = state.cross_check;
      this.badge.textContent = check
        ? check.match
          ? "cross-check: match"
          : "cross-check: MISMATCH"
        : "";
      this.badge.className = check && !check.match ? "badge bad" : "badge ok";
    });
  }

  undo(): Promise<void> {
    return this.track(async () => {
      if (!this.view.sessionId) {
        return;
      }
      const state = await this.api.undo(this.view.sessionId);
      this.view.history.pop();
      this.applyState(state, null);
      this.badge.textContent = "";
      this.badge.className = "badge";
    });
  }

  fetchHeights(): Promise<void> {
    return this.track(async () => {
      if (!this.view.sessionId || this.view.selectedVertex === null) {
        this.heightOutput.textContent = "select a vertex first (hover)";
        return;
      }
      const vertex = this.view.selectedVertex;
      const response = await this.api.heights(this.view.sessionId, vertex);
      const rows = response.height_functions
        .map((values) => `(${values.join(", ")})`)
        .join("\n");
      this.heightOutput.textContent = rows || "none within bound";
    });
  }

  private applyState(state: SessionState, historyEntry: string | null): void {
    this.view.sessionId = state.id;
    this.view.state = state;
    if (historyEntry) {
      this.view.history.push(historyEntry);
    }
    this.renderAll();
  }

  private renderAll(): void {
    const state = this.view.state;
    if (!state) {
      return;
    }
    renderQuiver(this.svg, state.quiver, {
      onVertexClick: (vertex) => {
        if (!this.view.busy) {
          void this.tilt(vertex);
        }
      },
      onVertexHover: (vertex) => this.inspect(vertex),
    });
    this.historyList.innerHTML = "";
    for (const entry of this.view.history) {
      const item = this.historyList.ownerDocument.createElement("li");
      item.textContent = entry;
      this.historyList.appendChild(item);
    }
    this.syncControls();
  }

  private inspect(vertex: number | null): void {
    this.view.selectedVertex = vertex;
    const state = this.view.state;
    if (vertex === null || !state) {
      this.inspector.textContent = "hover a vertex";
      return;
    }
    const object = state.objects[vertex];
    this.inspector.textContent =
      `vertex ${vertex}: rank ${object.rank}, c1 (${object.c1.join(",")}), ` +
      `ch2 ${object.ch2}, shift ${object.shift}, slope ${object.slope}`;
  }

  private syncControls(): void {
    const haveSession = this.view.sessionId !== null;
    const busy = this.view.busy;
    this.undoButton.disabled =
      busy || !haveSession || (this.view.state?.history_length ?? 0) === 0;
    this.loadButton.disabled = busy;
    this.uploadButton.disabled = busy;
    this.heightButton.disabled = busy || !haveSession;
    this.exportJsonButton.disabled = !haveSession;
    this.exportDotButton.disabled = !haveSession;
  }

  private showError(error: unknown): void {
    const message =
      error instanceof ApiError
        ? `${error.reason}${error.status ? ` (${error.status})` : ""}: ${error.message}`
        : String(error);
    this.banner.textContent = `${message} — click to dismiss`;
    this.banner.hidden = false;
    this.banner.onclick = () => {
      this.banner.hidden = true;
    };
  }

  private offerDownload(name: string, mime: string, text: string): void {
    this.exportOutput.textContent = text;
    const win = this.root.ownerDocument.defaultView;
    if (win?.navigator.userAgent.includes("jsdom")) {
      return; // test DOM cannot navigate; the pre content is the export
    }
    if (win && typeof win.URL?.createObjectURL === "function") {
      const link = this.root.ownerDocument.createElement("a");
      link.href = win.URL.createObjectURL(new win.Blob([text], { type: mime }));
      link.download = name;
      link.click();
      win.URL.revokeObjectURL(link.href);
    }
  }

  private exportJson(): void {
    const state = this.view.state;
    if (state) {
      this.offerDownload(
        "quiver.json",
        "application/json",
        JSON.stringify(state.quiver, null, 2),
      );
    }
  }

  private exportDot(): void {
    const state = this.view.state;
    if (!state) {
      return;
    }
    const lines = ["digraph helix {"];
    state.quiver.vertices.forEach((label, i) => {
      lines.push(`  ${i} [label="${label}"];`);
    });
    state.quiver.arrows.forEach((row, i) => {
      row.forEach((multiplicity, j) => {
        if (multiplicity) {
          lines.push(`  ${i} -> ${j} [label=${multiplicity}];`);
        }
      });
    });
    lines.push("}");
    this.offerDownload("quiver.dot", "text/vnd.graphviz", lines.join("\n"));
  }
}

export function createApp(root: HTMLElement, api: ServiceApi): App {
  return new App(root, api);
}
