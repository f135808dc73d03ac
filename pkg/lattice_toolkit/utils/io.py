"""
Reading and writing lattices: JSON interchange, DOT and PNG Hasse diagrams,
and resolution of lattice sources given on the command line.
"""

import json
import logging
import os
import re
import sys
from typing import Optional, TextIO

import numpy as np

from lattice_toolkit.config import ToolkitConfig
from lattice_toolkit.errors import MalformedInput
from lattice_toolkit.models.lattice import FiniteLattice, FinitePoset, build_from_covers, stock
from lattice_toolkit.models.subspace import sub_lattice

logger = logging.getLogger(__name__)

KNOWN_KEYS = {"elements", "covers"}

_STOCK_PATTERN = re.compile(r"^(chain|boolean|mn)(\d+)$")
_SUB_PATTERN = re.compile(r"^sub:(\d+):(\d+)$")


def lattice_to_json(lattice: FiniteLattice) -> str:
    return json.dumps(lattice.to_dict(), indent=2, ensure_ascii=False)


def lattice_from_json(text: str, strict: bool = True,
                      config: Optional[ToolkitConfig] = None) -> FiniteLattice:
    """
    Build a lattice from the JSON interchange format.

    Args:
        text: ``{"elements": [...], "covers": [[lower, upper], ...]}``
        strict: Reject unknown keys and implied cover pairs; otherwise warn and drop them
        config: Limits to enforce

    Returns:
        The validated lattice
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise MalformedInput("lattice JSON must be an object")
    unknown = sorted(set(data) - KNOWN_KEYS)
    if unknown:
        if strict:
            raise MalformedInput(f"unknown keys: {', '.join(unknown)}")
        logger.warning("ignoring unknown keys: %s", ", ".join(unknown))
    elements = data.get("elements")
    covers = data.get("covers", [])
    if not isinstance(elements, list) or not isinstance(covers, list):
        raise MalformedInput("'elements' and 'covers' must be lists")
    for pair in covers:
        if not (isinstance(pair, list) and len(pair) == 2):
            raise MalformedInput(f"cover {pair!r} is not a [lower, upper] pair")
    return build_from_covers(elements, covers, strict=strict, config=config)


def read_lattice(path: str, strict: bool = True, config: Optional[ToolkitConfig] = None) -> FiniteLattice:
    with open(path, "r", encoding="utf-8") as fh:
        return lattice_from_json(fh.read(), strict, config)


def write_json(lattice: FiniteLattice, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(lattice_to_json(lattice) + "\n")


def _quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(poset: FinitePoset, name: str = "lattice") -> str:
    """Graphviz source with one node per element and cover edges drawn upward."""
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    lines += [f"  n{x} [label={_quote(label)}];" for x, label in enumerate(poset.labels)]
    lines += [f"  n{a} -> n{b} [arrowhead=none];" for a, b in poset.covers]
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_dot(poset: FinitePoset, path: str, name: str = "lattice") -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_dot(poset, name))


def write_png(poset: FinitePoset, path: str, title: Optional[str] = None) -> None:
    """Draw the Hasse diagram with elements placed on rows by height."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    heights = poset.heights
    x_pos = np.zeros(poset.size)
    for level in np.unique(heights):
        row = np.flatnonzero(heights == level)
        x_pos[row] = np.arange(len(row)) - (len(row) - 1) / 2

    width = max(4, 1.2 * max(np.bincount(heights)))
    fig, ax = plt.subplots(figsize=(width, max(3, 1.2 * (poset.length + 1))))
    for a, b in poset.covers:
        ax.plot([x_pos[a], x_pos[b]], [heights[a], heights[b]], color="0.4", linewidth=1, zorder=1)
    ax.scatter(x_pos, heights, s=300, color="white", edgecolors="black", zorder=2)
    for x, label in enumerate(poset.labels):
        ax.annotate(label, (x_pos[x], heights[x]), ha="center", va="center", fontsize=8, zorder=3)
    if title:
        ax.set_title(title)
    ax.axis("off")
    plt.tight_layout()
    plt.savefig(path)
    plt.close(fig)


def parse_stock_name(name: str, config: Optional[ToolkitConfig] = None) -> FiniteLattice:
    """
    Stock lattices by name: m3, n5, hexagon, chainN, booleanM, mnK and sub:P:N.
    """
    key = name.strip().lower()
    match = _STOCK_PATTERN.match(key)
    if match:
        return stock(match.group(1), int(match.group(2)))
    match = _SUB_PATTERN.match(key)
    if match:
        return sub_lattice(int(match.group(1)), int(match.group(2)), config)
    return stock(key)


def resolve_lattice(source: Optional[str], stdin: Optional[TextIO] = None, strict: bool = True,
                    config: Optional[ToolkitConfig] = None) -> FiniteLattice:
    """
    A lattice from a JSON file path, ``-`` for standard input, or a stock name.

    With no source, piped standard input is read.
    """
    stdin = stdin if stdin is not None else sys.stdin
    if source is None:
        if stdin is None or stdin.isatty():
            raise MalformedInput("no lattice given: use --lattice FILE, --lattice -, or a stock name")
        source = "-"
    if source == "-":
        return lattice_from_json(stdin.read(), strict, config)
    if os.path.exists(source):
        return read_lattice(source, strict, config)
    return parse_stock_name(source, config)
