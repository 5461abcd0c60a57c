"""
Providing rejection sets for the heat-bath vertex samplers.

A rejection reveals information about the active neighbors of the chosen vertex v.
The policies remove progressively larger sets:

- neighbors: the active neighbors of v.
- neighbors2: active vertices within distance 2 of v.
- component: every active component (in the subgraph induced by the active set) that
  contains a neighbor of v. No active edge joins the kept vertices to the removed
  ones, so the kept configuration is unbiased on every graph.
- restart: the whole active set.

Only component and restart are unbiased on every graph, and component is the default.
With vertices tried lowest-numbered first, neighbors matches the exact law on paths,
triangles, 4-cycles, the 2x2 grid and K4, but not in general: on the path 0-1-4-2-3
the rejection at vertex 4 leaves 0 and 3 correlated through 1 and 2. neighbors2 fails
the same way one step further out, on the path 0-1-2-6-3-4-5.

On paths, cycles and row-major grids the active set under the lowest-first order is a
connected prefix, so component empties it on every rejection and the expected running
time grows exponentially in n. The narrow policies keep the
linear running time of the drift analysis and remain selectable for runtime studies.
"""

from collections import deque
from typing import Literal

from recycler.exc import ParameterError
from recycler.graph.types import Graph

RejectionPolicy = Literal["neighbors", "neighbors2", "component", "restart"]

POLICIES: tuple[RejectionPolicy, ...] = ("neighbors", "neighbors2", "component", "restart")

DEFAULT_POLICY: RejectionPolicy = "component"


def validate_policy(policy: str) -> None:
    """
    Check a rejection policy name.

    Args:
        policy (str): The name to check.

    Raises:
        ParameterError: If `policy` is not one of `POLICIES`.
    """

    if policy not in POLICIES:
        raise ParameterError(f"Unknown rejection policy '{policy}'.")


def rejection_set(graph: Graph, active: set[int], v: int, policy: RejectionPolicy) -> set[int]:
    """
    Active vertices to remove after a rejection at `v`.

    Args:
        graph (Graph): The graph.
        active (set[int]): The active set before the step (`v` not in it).
        v (int): The vertex that was rejected.
        policy (RejectionPolicy): Which set to remove.

    Returns:
        set[int]: A subset of `active`.
    """

    if policy == "restart":
        return set(active)

    removed = {u for u in graph.neighbors(v) if u in active}

    if policy == "neighbors":
        return removed

    if policy == "neighbors2":
        for u in graph.neighbors(v):
            removed.update(x for x in graph.neighbors(u) if x in active)
        return removed

    queue = deque(removed)

    while queue:
        u = queue.popleft()
        for x in graph.neighbors(u):
            if x in active and x not in removed:
                removed.add(x)
                queue.append(x)

    return removed
