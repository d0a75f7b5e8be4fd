"""Graphviz DOT export of refinement posets and diagrams (Hasse-reduced)."""

from __future__ import annotations

from typing import Mapping

from .limits import Diagram
from .partitions import Partition, format_partition, leq


def hasse_reduction(d: Diagram) -> list[tuple]:
    """Non-identity arrows that do not factor through a third object."""
    edges = [(s, t) for (s, t) in d.arrows if s != t]
    arrows = set(edges)
    out = []
    for s, t in edges:
        if any((s, m) in arrows and (m, t) in arrows for m in d.objects if m not in (s, t)):
            continue
        out.append((s, t))
    order = d.position
    return sorted(out, key=lambda e: (order(e[0]), order(e[1])))


def hasse_edges(partitions: Mapping[str, Partition]) -> list[tuple]:
    """Cover relations ``fine -> coarse`` among the given partitions."""
    names = list(partitions)
    below = {(a, b) for a in names for b in names
             if a != b and leq(partitions[a], partitions[b])}
    return [(a, b) for a in names for b in names
            if (a, b) in below and not any((a, m) in below and (m, b) in below for m in names)]


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render(nodes: Mapping[str, str], edges, title: str = "refinement") -> str:
    """DOT text; ``nodes`` maps node name to label, edges run fine to coarse."""
    ids = {name: f"n{i}" for i, name in enumerate(nodes)}
    lines = [f"digraph {title} {{", "  rankdir=BT;", "  node [shape=box];"]
    for name, label in nodes.items():
        lines.append(f"  {ids[name]} [label={_quote(label)}];")
    for s, t in edges:
        lines.append(f"  {ids[s]} -> {ids[t]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def poset_dot(partitions: Mapping[str, Partition]) -> str:
    nodes = {name: format_partition(p) for name, p in partitions.items()}
    return render(nodes, hasse_edges(partitions))


def diagram_dot(d: Diagram, partitions: Mapping[str, Partition] | None = None) -> str:
    nodes = {}
    for name in d.objects:
        label = str(name)
        if partitions is not None and name in partitions:
            shown = format_partition(partitions[name])
            label = shown if shown == label else f"{name}: {shown}"
        nodes[name] = label
    return render(nodes, hasse_reduction(d), title="diagram")
