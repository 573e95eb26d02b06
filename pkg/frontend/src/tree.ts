import type { BreakdownRow, TaxonomyDoc } from "./api.js";

// Collapsible view of the full taxonomy. Nodes that took part in the last
// computation carry their aggregate value; the rest get a placeholder.

export function renderTree(
  container: HTMLElement,
  doc: TaxonomyDoc,
  breakdown: BreakdownRow[],
): void {
  const values = new Map(breakdown.map((row) => [row.node, row.lambda]));
  container.textContent = "";
  container.appendChild(buildNode(doc, values));
}

function buildNode(node: TaxonomyDoc, values: Map<string, number>): HTMLElement {
  const label = document.createElement("span");
  label.className = "tree-label";
  label.textContent = node.name;

  const value = values.get(node.name);
  const badge = document.createElement("span");
  badge.className = value === undefined ? "tree-value tree-value-inactive" : "tree-value";
  badge.textContent = value === undefined ? "·" : value.toFixed(4);

  if (node.children.length === 0) {
    const row = document.createElement("div");
    row.className = "tree-leaf";
    row.append(label, badge);
    return row;
  }

  const details = document.createElement("details");
  details.open = true;
  const summary = document.createElement("summary");
  summary.append(label, badge);
  details.appendChild(summary);

  const children = document.createElement("div");
  children.className = "tree-children";
  for (const child of node.children) {
    children.appendChild(buildNode(child, values));
  }
  details.appendChild(children);
  return details;
}
