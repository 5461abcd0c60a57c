"""
Providing typing stubs.
"""

from os import PathLike

StrPath = str | PathLike[str]

Site = int
"""
A vertex number, or the index of an edge in `Graph.edges` for edge models.
"""

Edge = tuple[int, int]
"""
An undirected edge stored as (lower, higher).
"""

Config = tuple[int, ...]
"""
A canonical, hashable configuration encoding.
"""
