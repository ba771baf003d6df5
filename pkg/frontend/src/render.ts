import { QuiverView } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const SIZE = 480;
const RADIUS = 175;

export interface RenderHooks {
  onVertexClick?: (vertex: number) => void;
  onVertexHover?: (vertex: number | null) => void;
}

/** Position of vertex i in the fixed circular layout.  The layout depends
 * only on the index, so consecutive quivers stay visually comparable. */
export function vertexPosition(i: number, n: number): { x: number; y: number } {
  const angle = (2 * Math.PI * i) / n - Math.PI / 2;
  return {
    x: SIZE / 2 + RADIUS * Math.cos(angle),
    y: SIZE / 2 + RADIUS * Math.sin(angle),
  };
}

function el(doc: Document, name: string, attrs: Record<string, string>): SVGElement {
  const node = doc.createElementNS(SVG_NS, name) as SVGElement;
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  return node;
}

/** Render a multiplicity quiver into an SVG element as a circular layout.
 * Each nonzero matrix entry becomes one arrow with a multiplicity label;
 * multiplicities are never drawn as parallel arrows. */
export function renderQuiver(
  svg: SVGSVGElement,
  quiver: QuiverView,
  hooks: RenderHooks = {},
): void {
  const doc = svg.ownerDocument;
  svg.setAttribute("viewBox", `0 0 ${SIZE} ${SIZE}`);
  while (svg.firstChild) {
    svg.removeChild(svg.firstChild);
  }

  const defs = el(doc, "defs", {});
  const marker = el(doc, "marker", {
    id: "arrowhead",
    viewBox: "0 0 10 10",
    refX: "9",
    refY: "5",
    markerWidth: "7",
    markerHeight: "7",
    orient: "auto-start-reverse",
  });
  marker.appendChild(el(doc, "path", { d: "M 0 0 L 10 5 L 0 10 z", fill: "#444" }));
  defs.appendChild(marker);
  svg.appendChild(defs);

  const n = quiver.arrows.length;
  const positions = Array.from({ length: n }, (_, i) => vertexPosition(i, n));

  for (let i = 0; i < n; i++) {
    for (let j = 0; j < n; j++) {
      const multiplicity = quiver.arrows[i][j];
      if (!multiplicity) {
        continue;
      }
      const a = positions[i];
      const b = positions[j];
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const length = Math.hypot(dx, dy) || 1;
      const trim = 26;
      const sx = a.x + (dx / length) * trim;
      const sy = a.y + (dy / length) * trim;
      const tx = b.x - (dx / length) * trim;
      const ty = b.y - (dy / length) * trim;
      // bow each edge slightly so opposite long arrows stay legible
      const mx = (sx + tx) / 2 - (dy / length) * 16;
      const my = (sy + ty) / 2 + (dx / length) * 16;
      const path = el(doc, "path", {
        d: `M ${sx} ${sy} Q ${mx} ${my} ${tx} ${ty}`,
        fill: "none",
        stroke: "#444",
        "stroke-width": "1.5",
        "marker-end": "url(#arrowhead)",
        class: "edge",
        "data-source": String(i),
        "data-target": String(j),
        "data-multiplicity": String(multiplicity),
      });
      svg.appendChild(path);
      const label = el(doc, "text", {
        x: String(mx),
        y: String(my - 4),
        "text-anchor": "middle",
        class: "edge-label",
        "data-source": String(i),
        "data-target": String(j),
      });
      label.textContent = String(multiplicity);
      svg.appendChild(label);
    }
  }

  for (let i = 0; i < n; i++) {
    const { x, y } = positions[i];
    const group = el(doc, "g", {
      class: "vertex",
      "data-vertex": String(i),
      transform: `translate(${x} ${y})`,
    });
    group.appendChild(el(doc, "circle", { r: "20", fill: "#e8eefc", stroke: "#3554a0" }));
    const text = el(doc, "text", {
      "text-anchor": "middle",
      dy: "4",
      class: "vertex-label",
    });
    text.textContent = quiver.vertices[i] ?? String(i);
    group.appendChild(text);
    if (hooks.onVertexClick) {
      group.addEventListener("click", () => hooks.onVertexClick!(i));
    }
    if (hooks.onVertexHover) {
      group.addEventListener("mouseenter", () => hooks.onVertexHover!(i));
      group.addEventListener("mouseleave", () => hooks.onVertexHover!(null));
    }
    svg.appendChild(group);
  }
}

/** Sum of the rendered edge labels; render-integrity checks compare this
 * with the sum of the service's matrix entries. */
export function renderedLabelSum(svg: SVGSVGElement): number {
  let total = 0;
  svg.querySelectorAll("text.edge-label").forEach((node) => {
    total += Number(node.textContent ?? "0");
  });
  return total;
}

export interface RenderedEdge {
  source: number;
  target: number;
  multiplicity: number;
}

export function renderedEdges(svg: SVGSVGElement): RenderedEdge[] {
  const edges: RenderedEdge[] = [];
  svg.querySelectorAll("path.edge").forEach((node) => {
    edges.push({
      source: Number(node.getAttribute("data-source")),
      target: Number(node.getAttribute("data-target")),
      multiplicity: Number(node.getAttribute("data-multiplicity")),
    });
  });
  return edges.sort(
    (a, b) => a.source - b.source || a.target - b.target,
  );
}
