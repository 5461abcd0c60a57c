"""
Providing the fixed lowest-numbered-first site order.
"""

import heapq
from typing import Iterable, Iterator

from recycler._typing import Site


class SiteHeap:
    """
    Inactive sites, lowest number first.

    The order depends only on which sites are active, never on their colors.
    """

    _heap: list[Site]

    def __init__(self, sites: Iterable[Site]) -> None:
        self._heap = list(sites)
        heapq.heapify(self._heap)

    def __len__(self) -> int:
        return len(self._heap)

    def __iter__(self) -> Iterator[Site]:
        return iter(sorted(self._heap))

    def peek(self) -> Site:
        """
        The lowest pending site.
        """

        return self._heap[0]

    def take(self, site: Site) -> None:
        """
        Remove `site`, which is normally the minimum.
        """

        if self._heap[0] == site:
            heapq.heappop(self._heap)
        else:
            self._heap.remove(site)
            heapq.heapify(self._heap)

    def push_all(self, sites: Iterable[Site]) -> None:
        """
        Add sites back to the heap.
        """

        for site in sites:
            heapq.heappush(self._heap, site)
