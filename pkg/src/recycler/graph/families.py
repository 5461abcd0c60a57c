"""
Providing standard graph families with deterministic numbering.
"""

from typing import Callable, Literal

from recycler._typing import Edge
from recycler.exc import GraphValidationError
from recycler.graph.types import Graph

Family = Literal["path", "cycle", "grid2d", "complete", "star"]

FAMILIES: tuple[Family, ...] = ("path", "cycle", "grid2d", "complete", "star")


def _path(n: int) -> list[Edge]:
    return [(i, i + 1) for i in range(n - 1)]


def _cycle(n: int) -> list[Edge]:
    if n < 3:
        raise GraphValidationError(f"A simple cycle needs at least 3 vertices, got '{n}'.")
    return _path(n) + [(0, n - 1)]


def _complete(n: int) -> list[Edge]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def _star(n: int) -> list[Edge]:
    return [(0, v) for v in range(1, n)]


_BUILDERS: dict[str, Callable[[int], list[Edge]]] = {
    "path": _path,
    "cycle": _cycle,
    "complete": _complete,
    "star": _star,
}


def grid2d(rows: int, cols: int) -> Graph:
    """
    Rectangular grid, vertices numbered row-major.

    Args:
        rows (int): Number of rows (value > 0).
        cols (int): Number of columns (value > 0).

    Returns:
        Graph: The grid graph.
    """

    if rows < 1 or cols < 1:
        raise GraphValidationError(f"Grid dimensions '{rows}x{cols}' should be positive.")

    edges: list[Edge] = []

    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))

    return Graph.from_edges(rows * cols, edges)


def generate_family(family: Family, size: int | tuple[int, int]) -> Graph:
    """
    Generate a member of a standard graph family.

    Args:
        family (Family): One of "path", "cycle", "grid2d", "complete", "star".
        size (int | tuple[int, int]): Vertex count, or (rows, cols) for "grid2d"; an int
            grid size means a square grid.

    Returns:
        Graph: The generated graph.
    """

    if family == "grid2d":
        rows, cols = (size, size) if isinstance(size, int) else size
        return grid2d(rows, cols)

    if not isinstance(size, int):
        raise GraphValidationError(f"Family '{family}' takes a single vertex count.")

    if size < 1:
        raise GraphValidationError(f"Size '{size}' should be a positive value.")

    try:
        builder = _BUILDERS[family]
    except KeyError:
        raise GraphValidationError(f"Unknown graph family '{family}'.") from None

    return Graph.from_edges(size, builder(size))
