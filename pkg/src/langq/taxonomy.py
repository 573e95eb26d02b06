"""Language classification tree: loading, validation, portfolios, induced subtrees.

The tree is rooted at a synthetic proto-language node (depth 0); its depth-1
children are the independent language families and the leaves are the
languages themselves.  Leaves may sit at different depths.  A portfolio maps
language names to proficiencies in [0, 1]; inducing it against a tree yields
the parent-closed union of the root-to-leaf paths of its positive entries.
"""
from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, Mapping, Union

from .errors import (
    PortfolioError,
    TaxonomyParseError,
    TaxonomyValidationError,
    UnknownLanguageError,
)

NodeId = int

TaxonomySource = Union[bytes, str, os.PathLike, IO]


@dataclass(frozen=True)
class TaxonomyNode:
    id: NodeId
    name: str
    parent: NodeId | None
    children: tuple[NodeId, ...]
    depth: int

    @property
    def is_leaf(self) -> bool:
        return not self.children


class TaxonomyTree:
    """Immutable rooted tree; safe to share across threads after construction."""

    def __init__(self, nodes: Iterable[TaxonomyNode]):
        self.nodes: dict[NodeId, TaxonomyNode] = {n.id: n for n in nodes}
        if not self.nodes:
            raise TaxonomyValidationError("empty tree")
        roots = [n.id for n in self.nodes.values() if n.parent is None]
        if len(roots) != 1:
            raise TaxonomyValidationError(f"expected exactly one root, found {len(roots)}")
        self.root: NodeId = roots[0]
        self.name_index: dict[str, NodeId] = {}
        for n in self.nodes.values():
            if n.name in self.name_index:
                raise TaxonomyValidationError(f"duplicate node name: {n.name!r}")
            self.name_index[n.name] = n.id
        self._validate_structure()
        self.max_depth: int = max(n.depth for n in self.nodes.values())

    def _validate_structure(self) -> None:
        for n in self.nodes.values():
            if len(set(n.children)) != len(n.children):
                raise TaxonomyValidationError(f"duplicate child under {n.name!r}")
            for c in n.children:
                child = self.nodes.get(c)
                if child is None or child.parent != n.id:
                    raise TaxonomyValidationError(f"broken parent link under {n.name!r}")
        seen: set[NodeId] = set()
        stack: list[tuple[NodeId, int]] = [(self.root, 0)]
        while stack:
            nid, depth = stack.pop()
            if nid in seen:
                raise TaxonomyValidationError("cycle detected")
            seen.add(nid)
            node = self.nodes[nid]
            if node.depth != depth:
                raise TaxonomyValidationError(
                    f"inconsistent depth at {node.name!r}: {node.depth} != {depth}"
                )
            stack.extend((c, depth + 1) for c in node.children)
        if len(seen) != len(self.nodes):
            raise TaxonomyValidationError("nodes unreachable from the root (cycle or orphan)")

    def node(self, nid: NodeId) -> TaxonomyNode:
        return self.nodes[nid]

    def leaves(self) -> Iterator[TaxonomyNode]:
        return (n for n in self.nodes.values() if n.is_leaf)

    def leaf_names(self) -> list[str]:
        return sorted(n.name for n in self.leaves())

    def resolve_leaf(self, name: str) -> TaxonomyNode:
        nid = self.name_index.get(name)
        if nid is None:
            raise UnknownLanguageError(name)
        node = self.nodes[nid]
        if not node.is_leaf:
            raise PortfolioError(f"{name!r} names a group, not a language")
        return node

    def path_to_root(self, nid: NodeId) -> list[NodeId]:
        """Node ids from `nid` up to and including the root."""
        path = [nid]
        parent = self.nodes[nid].parent
        while parent is not None:
            path.append(parent)
            parent = self.nodes[parent].parent
        return path

    def root_path_names(self, nid: NodeId) -> tuple[str, ...]:
        """Names from the root down to `nid`, inclusive."""
        return tuple(self.nodes[i].name for i in reversed(self.path_to_root(nid)))

    def family_of(self, nid: NodeId) -> NodeId:
        """The depth-1 ancestor (language family) of a node; the node itself at depth <= 1."""
        node = self.nodes[nid]
        while node.depth > 1:
            node = self.nodes[node.parent]
        return node.id

    def to_dict(self) -> dict:
        """Nested {"name", "children"} document; children keep input order."""

        def build(nid: NodeId) -> dict:
            node = self.nodes[nid]
            return {"name": node.name, "children": [build(c) for c in node.children]}

        return build(self.root)


def tree_from_dict(doc: object) -> TaxonomyTree:
    """Build and validate a tree from the nested {"name", "children"} form."""
    nodes: list[TaxonomyNode] = []
    # iterative walk so arbitrarily deep documents load without recursion limits
    stack: list[tuple[object, NodeId | None, int]] = [(doc, None, 0)]
    while stack:
        raw, parent, depth = stack.pop()
        if not isinstance(raw, dict):
            raise TaxonomyParseError(f"expected an object node, got {type(raw).__name__}")
        name = raw.get("name")
        if not isinstance(name, str) or not name:
            raise TaxonomyParseError("every node needs a non-empty string 'name'")
        raw_children = raw.get("children")
        if raw_children is None:
            raw_children = []
        if not isinstance(raw_children, list):
            raise TaxonomyParseError(f"'children' of {name!r} must be a list")
        nid = len(nodes)
        nodes.append(TaxonomyNode(nid, name, parent, (), depth))
        # children get ids as they pop (pre-order); links are patched afterwards
        for raw_child in reversed(raw_children):
            stack.append((raw_child, nid, depth + 1))
    return TaxonomyTree(_link_children(nodes))


def _link_children(nodes: list[TaxonomyNode]) -> list[TaxonomyNode]:
    children: dict[NodeId, list[NodeId]] = {n.id: [] for n in nodes}
    for n in nodes:
        if n.parent is not None:
            children[n.parent].append(n.id)
    return [
        TaxonomyNode(n.id, n.name, n.parent, tuple(children[n.id]), n.depth) for n in nodes
    ]


def load_taxonomy(source: TaxonomySource) -> TaxonomyTree:
    """Parse a taxonomy document from bytes, text, a path, or a readable stream."""
    text = _read_source(source)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TaxonomyParseError(f"malformed taxonomy document: {exc}") from None
    return tree_from_dict(doc)


def _read_source(source: TaxonomySource) -> str:
    if hasattr(source, "read"):
        data = source.read()
    elif isinstance(source, (bytes, str)) and not _looks_like_path(source):
        data = source
    else:
        with open(source, "rb") as fh:
            data = fh.read()
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise TaxonomyParseError(f"taxonomy is not valid UTF-8: {exc}") from None
    return data


def _looks_like_path(source: bytes | str) -> bool:
    text = source.decode("utf-8", "ignore") if isinstance(source, bytes) else source
    return not text.lstrip().startswith(("{", "["))


@dataclass(frozen=True)
class Portfolio:
    """Languages with proficiency weights in [0, 1]; a zero weight means absence."""

    entries: Mapping[str, float]

    def __post_init__(self):
        clean: dict[str, float] = {}
        for name, raw in dict(self.entries).items():
            if not isinstance(name, str):
                raise PortfolioError(f"language names must be strings, got {name!r}")
            try:
                weight = float(raw)
            except (TypeError, ValueError):
                raise PortfolioError(f"proficiency for {name!r} is not a number: {raw!r}") from None
            if math.isnan(weight) or not 0.0 <= weight <= 1.0:
                raise PortfolioError(f"proficiency for {name!r} out of [0, 1]: {raw!r}")
            clean[name] = weight
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dict(cls, doc: object) -> "Portfolio":
        if not isinstance(doc, dict) or not isinstance(doc.get("languages"), dict):
            raise PortfolioError('portfolio document must look like {"languages": {...}}')
        return cls(doc["languages"])

    def to_dict(self) -> dict:
        return {"languages": dict(self.entries)}

    def active(self) -> dict[str, float]:
        """Entries with positive proficiency (zero weight is equivalent to absence)."""
        return {name: w for name, w in self.entries.items() if w > 0.0}

    def union(self, other: "Portfolio") -> "Portfolio":
        """Pool two portfolios; a language known to both keeps the higher proficiency."""
        merged = dict(self.entries)
        for name, w in other.entries.items():
            merged[name] = max(w, merged.get(name, 0.0))
        return Portfolio(merged)

    def add(self, language: str, proficiency: float) -> "Portfolio":
        return self.union(Portfolio({language: proficiency}))


def as_portfolio(value: Portfolio | Mapping[str, float]) -> Portfolio:
    if isinstance(value, Portfolio):
        return value
    return Portfolio(value)


def union(p1: Portfolio, p2: Portfolio) -> Portfolio:
    return as_portfolio(p1).union(as_portfolio(p2))


@dataclass(frozen=True)
class PortfolioSubtree:
    """Parent-closed node set covering the root-to-leaf paths of a portfolio."""

    tree: TaxonomyTree
    included: frozenset[NodeId]
    leaf_weights: Mapping[NodeId, float]


def induce_subtree(tree: TaxonomyTree, portfolio: Portfolio | Mapping[str, float]) -> PortfolioSubtree:
    """Resolve a portfolio against a tree; entries at proficiency 0 are pruned."""
    portfolio = as_portfolio(portfolio)
    included: set[NodeId] = {tree.root}
    weights: dict[NodeId, float] = {}
    for name, weight in sorted(portfolio.entries.items()):
        leaf = tree.resolve_leaf(name)
        if weight <= 0.0:
            continue
        weights[leaf.id] = weight
        nid: NodeId | None = leaf.id
        while nid is not None and nid not in included:
            included.add(nid)
            nid = tree.nodes[nid].parent
    return PortfolioSubtree(tree, frozenset(included), weights)


def list_languages(
    tree: TaxonomyTree, query: str | None = None
) -> list[tuple[str, tuple[str, ...]]]:
    """All languages with their root paths, optionally filtered by name prefix.

    Matching is case-insensitive; results are sorted by name.
    """
    prefix = (query or "").lower()
    out = [
        (node.name, tree.root_path_names(node.id))
        for node in tree.leaves()
        if node.name.lower().startswith(prefix)
    ]
    out.sort(key=lambda item: item[0])
    return out
