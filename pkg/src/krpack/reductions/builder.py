"""Labeled graph construction with vertex identification."""

from __future__ import annotations

from itertools import combinations

from ..graph import Graph


class GadgetBuilder:
    """Collects labeled vertices and complete subgraphs, then merges
    identified vertices and assigns dense ids in creation order."""

    def __init__(self):
        self._labels: list[str] = []
        self._index: dict[str, int] = {}
        self._parent: list[int] = []
        self._cliques: list[tuple[str, ...]] = []

    def vertex(self, label: str) -> str:
        if label not in self._index:
            self._index[label] = len(self._labels)
            self._labels.append(label)
            self._parent.append(len(self._parent))
        return label

    def clique(self, *labels: str) -> tuple[str, ...]:
        for lab in labels:
            self.vertex(lab)
        self._cliques.append(labels)
        return labels

    def _find(self, i: int) -> int:
        while self._parent[i] != i:
            self._parent[i] = self._parent[self._parent[i]]
            i = self._parent[i]
        return i

    def identify(self, a: str, b: str) -> None:
        ra, rb = self._find(self._index[a]), self._find(self._index[b])
        if ra != rb:
            self._parent[max(ra, rb)] = min(ra, rb)

    def build(self) -> tuple[Graph, dict[str, int]]:
        """Return the graph and the map from every label to its vertex id."""
        root_id: dict[int, int] = {}
        names: list[list[str]] = []
        for i, lab in enumerate(self._labels):
            root = self._find(i)
            if root not in root_id:
                root_id[root] = len(names)
                names.append([])
            names[root_id[root]].append(lab)
        vid = {lab: root_id[self._find(i)] for i, lab in enumerate(self._labels)}
        edges: set[tuple[int, int]] = set()
        for labels in self._cliques:
            for x, y in combinations(labels, 2):
                u, v = vid[x], vid[y]
                if u == v:
                    raise ValueError(f"identification collapses adjacent vertices {x} and {y}")
                edges.add((min(u, v), max(u, v)))
        g = Graph.from_edges(len(names), sorted(edges), labels=["=".join(ns) for ns in names])
        return g, vid
