"""
Providing connectivity queries over edge subgraphs and whole graphs.

Queries traverse active edges on demand instead of keeping an incremental structure:
the random cluster sampler deletes whole components on rejection, which union-find
cannot undo.
"""

from collections import deque
from typing import Iterable

from recycler._typing import Edge
from recycler.exc import GraphValidationError
from recycler.graph.types import EdgeSubgraph, Graph


class DisjointSet:
    """
    Union-find over 0..n-1 with path halving and union by size.
    """

    _parents: list[int]
    _sizes: list[int]

    components: int
    """
    Current number of disjoint sets.
    """

    def __init__(self, n: int) -> None:
        self._parents = list(range(n))
        self._sizes = [1] * n
        self.components = n

    def find(self, x: int) -> int:
        """
        Representative of the set containing `x`, halving paths on the way.
        """

        parents = self._parents

        while parents[x] != x:
            parents[x] = parents[parents[x]]
            x = parents[x]

        return x

    def union(self, a: int, b: int) -> bool:
        """
        Merge the sets of `a` and `b`.

        Returns:
            bool: False if they were already in one set.
        """

        a, b = self.find(a), self.find(b)

        if a == b:
            return False

        if self._sizes[a] < self._sizes[b]:
            a, b = b, a

        self._parents[b] = a
        self._sizes[a] += self._sizes[b]
        self.components -= 1

        return True


def connected_in(sub: EdgeSubgraph, v: int, w: int) -> bool:
    """
    Whether `v` and `w` lie in one component of (V, active edges).

    Both sides are searched in lockstep, so the cost is bounded by the smaller of the
    two components.

    Args:
        sub (EdgeSubgraph): The subgraph to search.
        v (int), w (int): The vertices.

    Returns:
        bool: True if a path of active edges joins them.
    """

    if v == w:
        return True

    seen = ({v}, {w})
    queues = (deque([v]), deque([w]))

    while queues[0] and queues[1]:
        for side in (0, 1):
            u = queues[side].popleft()
            mine, other = seen[side], seen[1 - side]

            for x in sub.neighbors(u):
                if x in other:
                    return True
                if x not in mine:
                    mine.add(x)
                    queues[side].append(x)

            if not queues[side]:
                return False

    return False


def component_of(sub: EdgeSubgraph, w: int) -> tuple[set[int], set[Edge]]:
    """
    The component of (V, active edges) containing `w`.

    Args:
        sub (EdgeSubgraph): The subgraph to search.
        w (int): A vertex of the component.

    Returns:
        tuple[set[int], set[Edge]]: Its vertices, and the active edges with both endpoints
        among them.
    """

    vertices = {w}
    edges: set[Edge] = set()
    queue = deque([w])

    while queue:
        u = queue.popleft()

        for x in sub.neighbors(u):
            edges.add((u, x) if u < x else (x, u))

            if x not in vertices:
                vertices.add(x)
                queue.append(x)

    return vertices, edges


def count_components(sub: EdgeSubgraph) -> int:
    """
    Number of connected components of (V, active edges), isolated vertices included.
    """

    components = DisjointSet(sub.graph.n)

    for e in sub.active_edges:
        components.union(*sub.graph.edges[e])

    return components.components


def spanning_tree(
    component_vertices: Iterable[int],
    component_edges: Iterable[Edge],
    bridge: Edge,
    v: int,
) -> set[Edge]:
    """
    Breadth-first spanning tree of a component joined to `v` through `bridge`.

    Neighbors are visited in ascending order so the tree is a function of the inputs.

    Args:
        component_vertices (Iterable[int]): The M component vertices (not including `v`).
        component_edges (Iterable[Edge]): Edges inside the component.
        bridge (Edge): The edge joining `v` to the component.
        v (int): The root.

    Returns:
        set[Edge]: Exactly M edges spanning the component and `v`.
    """

    vertices = set(component_vertices)

    if v in vertices:
        raise GraphValidationError(f"Root '{v}' should not be a component vertex.")

    if v not in bridge:
        raise GraphValidationError(f"Bridge '{bridge}' does not touch root '{v}'.")

    adjacency: dict[int, set[int]] = {u: set() for u in vertices}
    adjacency[v] = set()

    for a, b in [*component_edges, bridge]:
        if a not in adjacency or b not in adjacency:
            raise GraphValidationError(f"Edge '{(a, b)}' leaves the component.")
        adjacency[a].add(b)
        adjacency[b].add(a)

    tree: set[Edge] = set()
    seen = {v}
    queue = deque([v])

    while queue:
        u = queue.popleft()

        for x in sorted(adjacency[u]):
            if x not in seen:
                seen.add(x)
                tree.add((u, x) if u < x else (x, u))
                queue.append(x)

    if len(seen) != len(vertices) + 1:
        raise GraphValidationError("Component and bridge do not form a connected graph.")

    return tree


def components(graph: Graph) -> list[list[int]]:
    """
    Connected components of a whole graph.

    Returns:
        list[list[int]]: Components ordered by their lowest vertex, each listed in
        breadth-first order from that vertex with ascending tie-breaking.
    """

    seen = [False] * graph.n
    result: list[list[int]] = []

    for root in graph.vertices:
        if seen[root]:
            continue

        seen[root] = True
        order = [root]
        queue = deque([root])

        while queue:
            u = queue.popleft()
            for x in graph.neighbors(u):
                if not seen[x]:
                    seen[x] = True
                    order.append(x)
                    queue.append(x)

        result.append(order)

    return result


def induced_subgraph(graph: Graph, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """
    The subgraph induced on a vertex subset, renumbered in ascending order.

    Args:
        graph (Graph): The parent graph.
        vertices (Iterable[int]): The kept vertices.

    Returns:
        tuple[Graph, dict[int, int]]: The induced graph, and the map from parent numbers
        to new numbers.
    """

    kept = sorted(set(vertices))
    relabel = {v: i for i, v in enumerate(kept)}
    edges = [(relabel[u], relabel[v]) for u, v in graph.edges if u in relabel and v in relabel]

    return Graph.from_edges(len(kept), edges), relabel
