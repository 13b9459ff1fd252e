import type { SeedPayload } from "./types.js";

export interface QuiverEdge {
  from: number;
  to: number;
  weight: number;
}

/**
 * One arrow per nonzero B entry: direction by sign (positive entry points
 * from the row vertex to the column vertex), |b| as the multiplicity.
 * Entries between two exchangeable vertices appear twice in B (skew pair),
 * so the duplicate is dropped.
 */
export function edgesFromB(seed: SeedPayload): QuiverEdge[] {
  const exchangeable = new Set(seed.exchangeable);
  const out: QuiverEdge[] = [];
  for (const [i, k, v] of seed.B) {
    if (v === 0) continue;
    if (exchangeable.has(i) && exchangeable.has(k)) {
      // keep one of the skew pair; the positive entry names the source
      if (v < 0) continue;
      out.push({ from: i, to: k, weight: v });
    } else {
      out.push(v > 0 ? { from: i, to: k, weight: v } : { from: k, to: i, weight: -v });
    }
  }
  out.sort((a, b) => a.from - b.from || a.to - b.to);
  return out;
}

export interface VertexPosition {
  label: number;
  x: number;
  y: number;
  frozen: boolean;
}

const CELL_W = 88;
const CELL_H = 96;
const MARGIN = 56;

/**
 * Deterministic layered layout: one row per simple letter, indices in word
 * order left to right so frames stay comparable across mutations.
 */
export function layoutVertices(seed: SeedPayload): VertexPosition[] {
  const letterOf = (k: number): number => (k < 0 ? -k : Math.abs(seed.word[k - 1]));
  const frozen = new Set(seed.frozen);
  return seed.labels.map((k) => ({
    label: k,
    x: MARGIN + (k < 0 ? 0 : k) * CELL_W,
    y: MARGIN + (letterOf(k) - 1) * CELL_H,
    frozen: frozen.has(k),
  }));
}

const SVG_NS = "http://www.w3.org/2000/svg";

export class QuiverView {
  private positions = new Map<number, VertexPosition>();
  public selected: number | null = null;
  public onVertexClick: ((label: number) => void) | null = null;

  constructor(private svg: SVGSVGElement) {}

  render(seed: SeedPayload): void {
    const doc = this.svg.ownerDocument;
    while (this.svg.firstChild) this.svg.removeChild(this.svg.firstChild);
    const vertices = layoutVertices(seed);
    this.positions = new Map(vertices.map((v) => [v.label, v]));
    const width = Math.max(...vertices.map((v) => v.x)) + MARGIN;
    const height = Math.max(...vertices.map((v) => v.y)) + MARGIN;
    this.svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
    this.svg.setAttribute("width", String(width));
    this.svg.setAttribute("height", String(height));

    const defs = doc.createElementNS(SVG_NS, "defs");
    const marker = doc.createElementNS(SVG_NS, "marker");
    marker.setAttribute("id", "arrowhead");
    marker.setAttribute("markerWidth", "8");
    marker.setAttribute("markerHeight", "8");
    marker.setAttribute("refX", "7");
    marker.setAttribute("refY", "3");
    marker.setAttribute("orient", "auto");
    const tip = doc.createElementNS(SVG_NS, "path");
    tip.setAttribute("d", "M0,0 L7,3 L0,6 Z");
    marker.appendChild(tip);
    defs.appendChild(marker);
    this.svg.appendChild(defs);

    for (const edge of edgesFromB(seed)) {
      const a = this.positions.get(edge.from)!;
      const b = this.positions.get(edge.to)!;
      const line = doc.createElementNS(SVG_NS, "line");
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const len = Math.hypot(dx, dy) || 1;
      const pad = 22;
      line.setAttribute("x1", String(a.x + (dx / len) * pad));
      line.setAttribute("y1", String(a.y + (dy / len) * pad));
      line.setAttribute("x2", String(b.x - (dx / len) * pad));
      line.setAttribute("y2", String(b.y - (dy / len) * pad));
      line.setAttribute("class", "edge");
      line.setAttribute("data-from", String(edge.from));
      line.setAttribute("data-to", String(edge.to));
      line.setAttribute("data-weight", String(edge.weight));
      line.setAttribute("marker-end", "url(#arrowhead)");
      this.svg.appendChild(line);
      if (edge.weight > 1) {
        const label = doc.createElementNS(SVG_NS, "text");
        label.setAttribute("x", String((a.x + b.x) / 2 + 6));
        label.setAttribute("y", String((a.y + b.y) / 2 - 6));
        label.setAttribute("class", "edge-weight");
        label.textContent = String(edge.weight);
        this.svg.appendChild(label);
      }
    }

    for (const v of vertices) {
      const group = doc.createElementNS(SVG_NS, "g");
      group.setAttribute("class", v.frozen ? "vertex frozen" : "vertex exchangeable");
      group.setAttribute("data-label", String(v.label));
      const shape = v.frozen
        ? doc.createElementNS(SVG_NS, "rect")
        : doc.createElementNS(SVG_NS, "circle");
      if (v.frozen) {
        shape.setAttribute("x", String(v.x - 16));
        shape.setAttribute("y", String(v.y - 16));
        shape.setAttribute("width", "32");
        shape.setAttribute("height", "32");
      } else {
        shape.setAttribute("cx", String(v.x));
        shape.setAttribute("cy", String(v.y));
        shape.setAttribute("r", "18");
      }
      if (v.label === this.selected) {
        shape.setAttribute("class", "selected");
      }
      group.appendChild(shape);
      const text = doc.createElementNS(SVG_NS, "text");
      text.setAttribute("x", String(v.x));
      text.setAttribute("y", String(v.y + 5));
      text.setAttribute("text-anchor", "middle");
      text.textContent = String(v.label);
      group.appendChild(text);
      group.addEventListener("click", () => {
        if (this.onVertexClick) this.onVertexClick(v.label);
      });
      this.svg.appendChild(group);
    }
  }

  /** Arrows currently in the DOM, for comparing against the server's B. */
  renderedEdges(): QuiverEdge[] {
    const out: QuiverEdge[] = [];
    this.svg.querySelectorAll("line.edge").forEach((el) => {
      out.push({
        from: Number(el.getAttribute("data-from")),
        to: Number(el.getAttribute("data-to")),
        weight: Number(el.getAttribute("data-weight")),
      });
    });
    out.sort((a, b) => a.from - b.from || a.to - b.to);
    return out;
  }
}
