import { beforeEach, describe, expect, it } from "vitest";

import { ExplorerClient, seedContentString } from "../src/api.js";
import { bootstrap, type ExplorerApp } from "../src/main.js";
import { edgesFromB } from "../src/quiver.js";
import { API_BASE } from "./config.js";

const WORD = "1,2,1,-1,-2,-1";

function mountDom(): void {
  document.body.innerHTML = `
    <input id="type-input" value="A2" />
    <input id="word-input" value="${WORD}" />
    <button id="create-button"></button>
    <button id="undo-button"></button>
    <div id="validation"></div>
    <div id="toast"></div>
    <svg id="quiver" xmlns="http://www.w3.org/2000/svg"></svg>
    <div id="history"></div>
    <div id="inspector"></div>
  `;
}

async function waitFor(cond: () => boolean, ms = 10000): Promise<void> {
  const deadline = Date.now() + ms;
  while (Date.now() < deadline) {
    if (cond()) return;
    await new Promise((r) => setTimeout(r, 25));
  }
  throw new Error("condition not reached");
}

function clickVertex(label: number): void {
  const el = document.querySelector(`#quiver g[data-label="${label}"]`);
  if (!el) throw new Error(`vertex ${label} not rendered`);
  el.dispatchEvent(new Event("click"));
}

describe("explorer against a live api", () => {
  let app: ExplorerApp;

  beforeEach(async () => {
    mountDom();
    app = bootstrap(document, API_BASE);
    (document.getElementById("create-button") as HTMLButtonElement).click();
    await waitFor(() => app.seed !== null);
  });

  it("clicking mu_1 twice and refetching restores the initial seed byte-identically", async () => {
    const initial = seedContentString(app.seed!);
    clickVertex(1);
    await waitFor(() => app.seed!.history.length === 1);
    expect(seedContentString(app.seed!)).not.toBe(initial);
    clickVertex(1);
    await waitFor(() => app.seed!.history.length === 2);
    await app.refetch();
    expect(app.seed!.history).toEqual([1, 1]);
    expect(seedContentString(app.seed!)).toBe(initial);
  });

  it("keeps displayed arrows equal to the server's B after every action", async () => {
    const client = new ExplorerClient(API_BASE);
    const check = async () => {
      const server = await client.getSession(app.seed!.id);
      expect(app.quiver.renderedEdges()).toEqual(edgesFromB(server));
    };
    await check();
    for (const vertex of [1, 3, 2]) {
      clickVertex(vertex);
      const before = app.seed!.history.length;
      await waitFor(() => app.seed!.history.length === before + 1);
      await check();
    }
    (document.getElementById("undo-button") as HTMLButtonElement).click();
    await waitFor(() => app.seed!.history.length === 2);
    await check();
  });

  it("frozen vertices select without mutating", async () => {
    clickVertex(-1);
    await waitFor(() => document.getElementById("inspector")!.textContent!.includes("frozen"));
    expect(app.seed!.history).toEqual([]);
    expect(document.getElementById("inspector")!.textContent).toContain("Δ(");
  });

  it("mutated vertices show a two-term Laurent numerator", async () => {
    clickVertex(1);
    await waitFor(() => app.seed!.history.length === 1);
    app.renderInspector(1);
    const body = document.querySelector("#inspector .inspector-body")!.textContent!;
    expect(body.split(" + ").length).toBe(2);
  });

  it("history panel appends mutation marks", async () => {
    clickVertex(2);
    await waitFor(() => app.seed!.history.length === 1);
    expect(document.getElementById("history")!.textContent).toBe("μ2");
  });
});
