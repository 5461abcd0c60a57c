"""
Providing reading and writing of plain-text edge lists.

Format: UTF-8 text, one "u v" pair of decimal vertex numbers per line, lines starting
with '#' ignored, and an optional "n <count>" header fixing the vertex count.
"""

from pathlib import Path

from recycler._typing import Edge, StrPath
from recycler.exc import GraphParseError, GraphValidationError
from recycler.graph.types import Graph


def _parse_int(token: str, line_number: int) -> int:
    """
    Parse a vertex token, reporting `line_number` on failure.
    """

    try:
        value = int(token)
    except ValueError:
        raise GraphParseError(line_number, f"'{token}' is not a decimal integer.") from None

    if value < 0:
        raise GraphParseError(line_number, f"Vertex number '{value}' should not be negative.")

    return value


def load_edge_list(text: str) -> Graph:
    """
    Parse an edge list.

    Without a header the vertex count is one more than the largest vertex number.

    Args:
        text (str): The edge-list text.

    Returns:
        Graph: The parsed graph.
    """

    declared: int | None = None
    edges: list[Edge] = []
    seen: set[Edge] = set()

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()

        if not line or line.startswith("#"):
            continue

        tokens = line.split()

        if tokens[0] == "n":
            if len(tokens) != 2:
                raise GraphParseError(line_number, "Header should be 'n <count>'.")
            if declared is not None:
                raise GraphParseError(line_number, "Duplicate 'n' header.")
            declared = _parse_int(tokens[1], line_number)
            continue

        if len(tokens) != 2:
            raise GraphParseError(line_number, f"Expected 'u v', got '{line}'.")

        u, v = (_parse_int(token, line_number) for token in tokens)

        if u == v:
            raise GraphValidationError(f"Line {line_number}: self-loop at vertex '{u}'.")

        edge = (u, v) if u < v else (v, u)

        if edge in seen:
            raise GraphValidationError(f"Line {line_number}: duplicate edge '{edge}'.")

        seen.add(edge)
        edges.append(edge)

    largest = max((v for edge in edges for v in edge), default=-1)

    if declared is None:
        n = largest + 1
    elif largest >= declared:
        raise GraphValidationError(
            f"Vertex '{largest}' is out of range for declared count '{declared}'."
        )
    else:
        n = declared

    return Graph.from_edges(n, edges)


def read_edge_list(path: StrPath) -> Graph:
    """
    Read an edge-list file.

    Args:
        path (StrPath): Path to the file.

    Returns:
        Graph: The parsed graph.
    """

    return load_edge_list(Path(path).read_text(encoding="utf-8"))


def dump_edge_list(graph: Graph) -> str:
    """
    Write a graph as an edge list with an "n" header, so isolated vertices survive.

    Args:
        graph (Graph): The graph to write.

    Returns:
        str: Edge-list text accepted by `load_edge_list`.
    """

    lines = [f"n {graph.n}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"
