"""On-disk reduction bundles: target graph as DIMACS plus a JSON sidecar.

The sidecar carries vertex role labels and the named clique lists so other
tools can audit a gadget without rebuilding it.  Vertex, variable and
clause numbers are 1-based throughout.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from ..dimacs import read_graph, write_graph
from ..graph import Graph
from .edk import EdkReduction
from .vdkr import VdkrReduction

SCHEMA = 1


def _one_based(c) -> list[int]:
    return [v + 1 for v in c]


def sidecar(red: Union[VdkrReduction, EdkReduction], source: str = "") -> dict:
    g = red.target
    data = {
        "schema": SCHEMA,
        "kind": red.kind,
        "r": red.r,
        "source": source,
        "vertices": g.vertex_count,
        "labels": {str(v + 1): g.label(v) for v in range(g.vertex_count)},
    }
    if isinstance(red, VdkrReduction):
        data["cliques"] = {
            "U": [_one_based(c) for c in red.clique_of_vertex],
            "W": {f"{i + 1}-{j + 1}": _one_based(w) for (i, j), w in sorted(red.shared_sets.items())},
            "X": [_one_based(x) for x in red.free_sets],
        }
    else:
        data["cliques"] = {
            "even": [[_one_based(c) for c in fam] for fam in red.even],
            "odd": [[_one_based(c) for c in fam] for fam in red.odd],
            "P": [
                {
                    "clause": cc.clause + 1,
                    "position": cc.position + 1,
                    "variable": cc.variable + 1,
                    "positive": cc.positive,
                    "occurrence": cc.occurrence,
                    "vertices": _one_based(cc.clique),
                }
                for cc in red.clause_cliques
            ],
        }
    return data


def write_bundle(red: Union[VdkrReduction, EdkReduction], prefix: Union[str, Path], source: str = "") -> tuple[Path, Path]:
    """Write ``<prefix>.dimacs`` and ``<prefix>.json``; return both paths."""
    prefix = Path(prefix)
    graph_path = prefix.with_name(prefix.name + ".dimacs")
    meta_path = prefix.with_name(prefix.name + ".json")
    prefix.parent.mkdir(parents=True, exist_ok=True)
    write_graph(red.target, graph_path, comments=(f"{red.kind} reduction target, r={red.r}",))
    meta = sidecar(red, source)
    meta["graph"] = graph_path.name
    meta_path.write_text(json.dumps(meta, indent=1, sort_keys=True) + "\n")
    return graph_path, meta_path


def read_bundle(meta_path: Union[str, Path]) -> tuple[Graph, dict]:
    """Load a bundle from its sidecar; the graph gets the sidecar's labels."""
    meta_path = Path(meta_path)
    meta = json.loads(meta_path.read_text())
    if meta.get("schema") != SCHEMA:
        raise ValueError(f"{meta_path}: unsupported bundle schema {meta.get('schema')!r}")
    g = read_graph(meta_path.parent / meta["graph"])
    labels = [meta["labels"][str(v + 1)] for v in range(g.vertex_count)]
    return g.with_labels(labels), meta
