"""Reference scorer used to cross-check the engine; shares no code with it.

Works straight off the nested {"name", "children"} taxonomy document and a
plain {language: weight} mapping, recursing from the root.
"""
from __future__ import annotations


def ref_lq(tax_doc: dict, weights: dict[str, float], order_of_rank) -> float:
    active = {name: w for name, w in weights.items() if w > 0}

    def visit(node: dict, depth: int) -> tuple[float, bool]:
        kids = node.get("children") or []
        if not kids:
            name = node["name"]
            return (active[name], True) if name in active else (0.0, False)
        vals = [v for v, used in (visit(k, depth + 1) for k in kids) if used]
        if not vals:
            return 0.0, False
        p = order_of_rank(depth + 1)
        return sum(v**p for v in vals) ** (1.0 / p), True

    return visit(tax_doc, 0)[0]
