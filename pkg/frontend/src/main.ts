import { ApiRequestError, ExplorerClient } from "./api.js";
import { QuiverView } from "./quiver.js";
import type { SeedPayload, VariablePayload } from "./types.js";
import { parseWord, validateDoubleWord } from "./validate.js";

function prettyMinor(v: VariablePayload): string {
  if (v.minor) {
    const left = v.minor.left.join(",") || "e";
    const right = v.minor.right.join(",") || "e";
    return `Δ(${left} | ϖ${v.minor.s} | ${right})`;
  }
  return v.laurent ?? "?";
}

/**
 * The explorer never mutates seed state locally: every render comes from a
 * server payload, and each action re-renders from the response.
 */
export class ExplorerApp {
  public seed: SeedPayload | null = null;
  public quiver: QuiverView;
  private typeInput: HTMLInputElement;
  private wordInput: HTMLInputElement;
  private createButton: HTMLButtonElement;
  private undoButton: HTMLButtonElement;
  private validation: HTMLElement;
  private inspector: HTMLElement;
  private historyPanel: HTMLElement;
  private toast: HTMLElement;

  constructor(private root: Document, private client: ExplorerClient) {
    this.typeInput = root.getElementById("type-input") as HTMLInputElement;
    this.wordInput = root.getElementById("word-input") as HTMLInputElement;
    this.createButton = root.getElementById("create-button") as HTMLButtonElement;
    this.undoButton = root.getElementById("undo-button") as HTMLButtonElement;
    this.validation = root.getElementById("validation") as HTMLElement;
    this.inspector = root.getElementById("inspector") as HTMLElement;
    this.historyPanel = root.getElementById("history") as HTMLElement;
    this.toast = root.getElementById("toast") as HTMLElement;
    this.quiver = new QuiverView(root.getElementById("quiver") as unknown as SVGSVGElement);
    this.quiver.onVertexClick = (label) => void this.clickVertex(label);
    this.wordInput.addEventListener("input", () => this.revalidate());
    this.typeInput.addEventListener("input", () => this.revalidate());
    this.createButton.addEventListener("click", () => void this.createSession());
    this.undoButton.addEventListener("click", () => void this.undo());
    this.revalidate();
  }

  revalidate(): void {
    const word = parseWord(this.wordInput.value);
    if (word === null) {
      this.validation.textContent = "cannot parse the word";
      this.createButton.disabled = true;
      return;
    }
    const result = validateDoubleWord(this.typeInput.value, word);
    this.validation.textContent = result.ok ? result.message : `not double reduced: ${result.message}`;
    this.createButton.disabled = !result.ok;
  }

  async createSession(): Promise<void> {
    const word = parseWord(this.wordInput.value);
    if (word === null) return;
    try {
      const seed = await this.client.createSession(this.typeInput.value, word);
      this.applyPayload(seed);
    } catch (err) {
      this.showError(err);
    }
  }

  async clickVertex(label: number): Promise<void> {
    if (!this.seed) return;
    if (this.seed.frozen.includes(label)) {
      this.quiver.selected = label;
      this.renderInspector(label);
      return;
    }
    try {
      const seed = await this.client.mutate(this.seed.id, label);
      this.quiver.selected = label;
      this.applyPayload(seed);
    } catch (err) {
      this.showError(err);
    }
  }

  async undo(): Promise<void> {
    if (!this.seed) return;
    try {
      const seed = await this.client.undo(this.seed.id);
      this.applyPayload(seed);
    } catch (err) {
      this.showError(err);
    }
  }

  async refetch(): Promise<void> {
    if (!this.seed) return;
    this.applyPayload(await this.client.getSession(this.seed.id));
  }

  private applyPayload(seed: SeedPayload): void {
    this.seed = seed;
    this.toast.textContent = "";
    this.quiver.render(seed);
    this.historyPanel.textContent = seed.history.map((v) => `μ${v}`).join(" ") || "(initial)";
    this.undoButton.disabled = seed.history.length === 0;
    if (this.quiver.selected !== null) {
      this.renderInspector(this.quiver.selected);
    }
  }

  renderInspector(label: number): void {
    if (!this.seed) return;
    const variable = this.seed.variables[String(label)];
    if (!variable) {
      this.inspector.textContent = "";
      return;
    }
    const kind = this.seed.frozen.includes(label) ? "frozen" : "exchangeable";
    this.inspector.innerHTML = "";
    const title = this.root.createElement("div");
    title.className = "inspector-title";
    title.textContent = `x[${label}] (${kind})`;
    const body = this.root.createElement("pre");
    body.className = "inspector-body";
    body.textContent = prettyMinor(variable);
    const raw = this.root.createElement("pre");
    raw.className = "inspector-json";
    raw.textContent = JSON.stringify(variable);
    this.inspector.append(title, body, raw);
  }

  private showError(err: unknown): void {
    if (err instanceof ApiRequestError) {
      this.toast.textContent = `${err.status}: ${err.message}`;
    } else {
      this.toast.textContent = String(err);
    }
  }
}

export function bootstrap(doc: Document, baseUrl: string): ExplorerApp {
  return new ExplorerApp(doc, new ExplorerClient(baseUrl));
}

declare global {
  interface Window {
    minorlabExplorer?: ExplorerApp;
  }
}

if (typeof window !== "undefined" && typeof document !== "undefined" && document.getElementById("quiver")) {
  const base = (document.body.dataset.apiBase as string) || "http://127.0.0.1:8787";
  window.minorlabExplorer = bootstrap(document, base);
}
