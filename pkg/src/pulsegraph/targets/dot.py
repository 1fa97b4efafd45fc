"""Graphviz DOT export."""

from __future__ import annotations

from ..nodes import Node, Num, Var, iter_unique


def _fmt(value) -> str:
    if isinstance(value, int):
        return str(value)
    return format(value, ".12g")


def node_label(node: Node) -> str:
    if isinstance(node, Num):
        return f"Num({_fmt(node.value)})"
    if isinstance(node, Var):
        return f"Var({node.key})"
    payload = [p.value if hasattr(p, "value") else str(p) for p in node.payload()]
    if payload:
        return f"{node.kind}({', '.join(payload)})"
    return node.kind


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(root: Node, name: str = "G") -> str:
    """Render ``root`` as a DOT digraph; shared nodes appear once."""
    ids: dict[int, str] = {}
    order = []
    for _, node in iter_unique(root):
        ids[id(node)] = f"n{len(ids)}"
        order.append(node)
    lines = [f"digraph {name} {{"]
    for node in order:
        lines.append(f"  {ids[id(node)]} [label={_quote(node_label(node))}];")
    for node in order:
        for label, child in node.children():
            lines.append(f"  {ids[id(node)]} -> {ids[id(child)]} [label={_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
