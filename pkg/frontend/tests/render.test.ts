import { describe, expect, it } from "vitest";

import {
  renderQuiver,
  renderedEdges,
  renderedLabelSum,
  vertexPosition,
} from "../src/render.js";
import { QuiverView } from "../src/types.js";

const SQUARE: QuiverView = {
  vertices: ["O", "O(1,0)", "O(0,1)", "O(1,1)"],
  arrows: [
    [0, 2, 2, 0],
    [0, 0, 0, 2],
    [0, 0, 0, 2],
    [4, 0, 0, 0],
  ],
};

function freshSvg(): SVGSVGElement {
  return document.createElementNS(
    "http://www.w3.org/2000/svg",
    "svg",
  ) as SVGSVGElement;
}

describe("vertexPosition", () => {
  it("is stable across renders and depends only on the index", () => {
    const a = vertexPosition(1, 4);
    const b = vertexPosition(1, 4);
    expect(a).toEqual(b);
    const positions = [0, 1, 2, 3].map((i) => vertexPosition(i, 4));
    const distinct = new Set(positions.map((p) => `${p.x.toFixed(3)}:${p.y.toFixed(3)}`));
    expect(distinct.size).toBe(4);
  });
});

describe("renderQuiver", () => {
  it("draws one labeled edge per nonzero matrix entry", () => {
    const svg = freshSvg();
    renderQuiver(svg, SQUARE);
    const edges = renderedEdges(svg);
    expect(edges).toEqual([
      { source: 0, target: 1, multiplicity: 2 },
      { source: 0, target: 2, multiplicity: 2 },
      { source: 1, target: 3, multiplicity: 2 },
      { source: 2, target: 3, multiplicity: 2 },
      { source: 3, target: 0, multiplicity: 4 },
    ]);
  });

  it("edge label sum equals the matrix entry sum", () => {
    const svg = freshSvg();
    renderQuiver(svg, SQUARE);
    const matrixSum = SQUARE.arrows.flat().reduce((a, b) => a + b, 0);
    expect(renderedLabelSum(svg)).toBe(matrixSum);
  });

  it("re-rendering replaces the previous drawing", () => {
    const svg = freshSvg();
    renderQuiver(svg, SQUARE);
    renderQuiver(svg, SQUARE);
    expect(svg.querySelectorAll("g.vertex").length).toBe(4);
    expect(renderedEdges(svg).length).toBe(5);
  });

  it("invokes the click hook with the vertex index", () => {
    const svg = freshSvg();
    document.body.appendChild(svg);
    const clicks: number[] = [];
    renderQuiver(svg, SQUARE, { onVertexClick: (v) => clicks.push(v) });
    const vertex = svg.querySelector('g.vertex[data-vertex="2"]')!;
    vertex.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(clicks).toEqual([2]);
  });

  it("labels vertices with the service strings", () => {
    const svg = freshSvg();
    renderQuiver(svg, SQUARE);
    const labels = Array.from(svg.querySelectorAll("text.vertex-label")).map(
      (n) => n.textContent,
    );
    expect(labels).toEqual(SQUARE.vertices);
  });
});
