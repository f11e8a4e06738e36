"""File formats: graph JSON, plain edge lists, DOT export, and JSON
round trips for instances, certificates, and colorings."""

from __future__ import annotations

import json
from pathlib import Path

from .characterization import CharCertificate, OpDescriptor, OpKind, StarExtension
from .gls import BinPackingInstance, Coloring
from .graph import BlockGraph, from_edge_list


def graph_to_json_dict(g: BlockGraph) -> dict:
    d = {"n": g.n, "edges": [[u, v] for u, v in g.edges()]}
    if g.labels is not None:
        d["labels"] = list(g.labels)
    return d


def graph_from_json_dict(d: dict) -> BlockGraph:
    return from_edge_list(int(d["n"]), [tuple(e) for e in d["edges"]], d.get("labels"))


def parse_edge_list_text(text: str) -> BlockGraph:
    """Plain format: first line n, then one 'u v' pair per line."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty graph file")
    n = int(lines[0])
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line: {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return from_edge_list(n, edges)


def load_graph(path) -> BlockGraph:
    """Read a graph from JSON or plain edge-list text, sniffing the format."""
    text = Path(path).read_text()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return graph_from_json_dict(json.loads(text))
    return parse_edge_list_text(text)


def graph_to_dot(g: BlockGraph, name: str = "g") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        label = f' [label="{g.labels[v]}"]' if g.labels is not None else ""
        lines.append(f"  {v}{label};")
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines)


def instance_from_json(path_or_dict) -> BinPackingInstance:
    if isinstance(path_or_dict, dict):
        return BinPackingInstance.from_json_dict(path_or_dict)
    return BinPackingInstance.from_json_dict(json.loads(Path(path_or_dict).read_text()))


def certificate_to_json_dict(cert: CharCertificate) -> dict:
    return {
        "base_graph": graph_to_json_dict(cert.base_graph),
        "base_vertex": cert.base_vertex,
        "steps": [
            {
                "kind": op.kind.value,
                "anchors": list(op.anchors),
                "sizes": list(op.sizes),
                "extension": (
                    {"clique_index": op.star_extension.clique_index, "size": op.star_extension.size}
                    if op.star_extension is not None
                    else None
                ),
            }
            for op in cert.steps
        ],
        "r": cert.r,
    }


def certificate_from_json_dict(d: dict) -> CharCertificate:
    steps = []
    for s in d["steps"]:
        ext = s.get("extension")
        steps.append(
            OpDescriptor(
                OpKind(int(s["kind"])),
                tuple(s["anchors"]),
                tuple(s["sizes"]),
                StarExtension(int(ext["clique_index"]), int(ext["size"])) if ext else None,
            )
        )
    return CharCertificate(
        graph_from_json_dict(d["base_graph"]), int(d["base_vertex"]), tuple(steps)
    )


def coloring_to_json_dict(c: Coloring) -> dict:
    return c.to_json_dict()


def coloring_from_json_dict(d: dict) -> Coloring:
    return Coloring({int(v): int(c) for v, c in d["colors"].items()}, int(d["t"]))
