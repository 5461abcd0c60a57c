"""
Providing graph types.
"""

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Self

from recycler._typing import Edge, Site
from recycler.exc import GraphValidationError


@dataclass(frozen=True, kw_only=True)
class Graph:
    """
    Immutable undirected simple graph on vertices numbered 0..n-1.

    The numbering is fixed at construction; samplers rely on it for their site orders.
    """

    n: int
    """
    Vertex count.
    """

    edges: tuple[Edge, ...]
    """
    Edges as (lower, higher) pairs, sorted lexicographically.

    The position of an edge in this tuple is its site number in edge models.
    """

    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    """
    Ascending neighbor list per vertex.
    """

    max_degree: int = field(init=False, compare=False)
    """
    Maximum degree (Δ), 0 for an edgeless graph.
    """

    _index: dict[Edge, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphValidationError(f"Vertex count '{self.n}' should not be negative.")

        normalized: set[Edge] = set()

        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphValidationError(
                    f"Edge '{(u, v)}' is out of range for a graph with {self.n} vertices."
                )

            if u == v:
                raise GraphValidationError(f"Self-loop at vertex '{u}' is not allowed.")

            edge = (u, v) if u < v else (v, u)

            if edge in normalized:
                raise GraphValidationError(f"Duplicate edge '{edge}' is not allowed.")

            normalized.add(edge)

        edges = tuple(sorted(normalized))

        adjacency: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in edges:
            adjacency[u].append(v)
            adjacency[v].append(u)

        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(adj)) for adj in adjacency))
        object.__setattr__(self, "max_degree", max(map(len, adjacency), default=0))
        object.__setattr__(self, "_index", {edge: i for i, edge in enumerate(edges)})

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> Self:
        """
        Build a graph from an edge iterable.

        Args:
            n (int): Vertex count.
            edges (Iterable[Edge]): Unordered vertex pairs.

        Returns:
            Graph: The validated graph.
        """

        return cls(n=n, edges=tuple(edges))

    @property
    def vertices(self) -> range:
        """
        Vertex numbers in ascending order.
        """

        return range(self.n)

    @property
    def edge_count(self) -> int:
        """
        Number of edges, also the site count of edge models.
        """

        return len(self.edges)

    def degree(self, v: int) -> int:
        """
        Number of neighbors of a vertex.

        Args:
            v (int): The vertex.

        Returns:
            int: The degree of `v`.
        """

        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        """
        Neighbors of a vertex.

        Args:
            v (int): The vertex.

        Returns:
            tuple[int, ...]: The neighbors of `v` in ascending order.
        """

        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        """
        Whether {u, v} is an edge.

        Args:
            u (int), v (int): The endpoints, in any order.

        Returns:
            bool: True if the graph contains the edge.
        """

        return ((u, v) if u < v else (v, u)) in self._index

    def edge_index(self, u: int, v: int) -> Site:
        """
        Position of edge {u, v} in `edges`.

        Args:
            u (int), v (int): The endpoints, in any order.

        Returns:
            Site: The edge's site number.
        """

        edge = (u, v) if u < v else (v, u)

        try:
            return self._index[edge]
        except KeyError:
            raise GraphValidationError(f"Edge '{edge}' is not in the graph.") from None

    def incident_edges(self, v: int) -> Iterator[Site]:
        """
        Site numbers of the edges at a vertex.

        Args:
            v (int): The vertex.

        Yields:
            Site: The index of each edge {v, w}, by ascending w.
        """

        for w in self.adjacency[v]:
            yield self.edge_index(v, w)


class EdgeSubgraph:
    """
    A mutable set of edges of a parent graph, with per-vertex incidence.

    Owned by a single sampler run.
    """

    graph: Graph
    """
    Parent graph.
    """

    active_edges: set[Site]
    """
    Indices (into `graph.edges`) of the active edges.
    """

    _incident: list[set[int]]
    """
    Per-vertex set of neighbors reached through active edges.
    """

    def __init__(self, graph: Graph, active: Iterable[Site] = ()) -> None:
        """
        Initialize the subgraph.

        Args:
            graph (Graph): The parent graph.
            active (Iterable[Site], optional): Initially active edge indices. Defaults to none.
        """

        self.graph = graph
        self.active_edges = set()
        self._incident = [set() for _ in range(graph.n)]

        for e in active:
            self.add(e)

    def __contains__(self, e: Site) -> bool:
        return e in self.active_edges

    def __len__(self) -> int:
        return len(self.active_edges)

    def add(self, e: Site) -> None:
        """
        Activate an edge; activating an active edge does nothing.

        Args:
            e (Site): Index into the parent graph's edges.

        Raises:
            GraphValidationError: If `e` is not an edge index of the parent graph.
        """

        if not 0 <= e < self.graph.edge_count:
            raise GraphValidationError(f"Edge index '{e}' is not in the parent graph.")

        if e in self.active_edges:
            return

        u, v = self.graph.edges[e]
        self.active_edges.add(e)
        self._incident[u].add(v)
        self._incident[v].add(u)

    def discard(self, e: Site) -> None:
        """
        Deactivate an edge if it is active.

        Args:
            e (Site): Index into the parent graph's edges.
        """

        if e not in self.active_edges:
            return

        u, v = self.graph.edges[e]
        self.active_edges.remove(e)
        self._incident[u].discard(v)
        self._incident[v].discard(u)

    def neighbors(self, v: int) -> set[int]:
        """
        Vertices joined to `v` by an active edge.
        """

        return self._incident[v]

    def edges(self) -> list[Edge]:
        """
        Active edges as sorted vertex pairs.
        """

        return sorted(self.graph.edges[e] for e in self.active_edges)
