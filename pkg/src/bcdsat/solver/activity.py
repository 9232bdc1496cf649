"""EVSIDS variable activities, the decision order heap and the Luby sequence."""

from __future__ import annotations

import heapq
from collections.abc import Callable, Iterable


def luby(base: float, index: int) -> float:
    """Return the index-th element (0-based) of the Luby sequence scaled by base.

    ``luby(2, i)`` yields 1, 1, 2, 1, 1, 2, 4, 1, ...
    """
    size, exponent = 1, 0
    while size < index + 1:
        exponent += 1
        size = 2 * size + 1
    while size - 1 != index:
        size = (size - 1) >> 1
        exponent -= 1
        index %= size
    return base**exponent


class VariableActivity:
    """Exponential VSIDS scores with a lazily-invalidated max-heap.

    Bumping adds ``var_inc`` to a score; decaying divides ``var_inc`` by the
    decay factor, which is equivalent to multiplying every score by it. When a
    score or ``var_inc`` passes ``rescale_limit`` everything is scaled down by
    the same factor, which keeps the relative order intact.

    Heap entries are ``(-activity, var)``, so ties pop the lower variable
    first. An entry is live only while its variable is marked as queued and
    its stored score equals the current one; everything else is skipped on
    pop.
    """

    def __init__(
        self, num_vars: int, decay: float = 0.95, rescale_limit: float = 1e100
    ):
        self.activity = [0.0] * (num_vars + 1)
        self.var_inc = 1.0
        self.decay_factor = decay
        self.rescale_limit = rescale_limit
        self._queued = [False] * (num_vars + 1)
        self._heap: list[tuple[float, int]] = []

    def __len__(self) -> int:
        return sum(self._queued)

    def insert(self, var: int) -> None:
        """Make var available for selection (no-op if already queued)."""
        if self._queued[var]:
            return
        self._queued[var] = True
        heapq.heappush(self._heap, (-self.activity[var], var))

    def bump(self, var: int) -> None:
        self.activity[var] += self.var_inc
        if self.activity[var] > self.rescale_limit:
            self._rescale()
        elif self._queued[var]:
            heapq.heappush(self._heap, (-self.activity[var], var))
            if len(self._heap) > 4 * len(self.activity) + 1024:
                self._rebuild()

    def decay(self) -> None:
        self.var_inc /= self.decay_factor
        if self.var_inc > self.rescale_limit:
            self._rescale()

    def bump_and_decay(self, variables: Iterable[int]) -> None:
        """Bump each variable once, then decay once (one conflict's update)."""
        for var in variables:
            self.bump(var)
        self.decay()

    def pop_max(self, is_unassigned: Callable[[int], bool]) -> int | None:
        """Remove and return the highest-activity unassigned queued variable."""
        heap = self._heap
        while heap:
            neg_activity, var = heapq.heappop(heap)
            if not self._queued[var] or -neg_activity != self.activity[var]:
                continue
            self._queued[var] = False
            if is_unassigned(var):
                return var
        return None

    def _rescale(self) -> None:
        scale = 1.0 / self.rescale_limit
        self.activity = [score * scale for score in self.activity]
        self.var_inc *= scale
        self._rebuild()

    def _rebuild(self) -> None:
        self._heap = [
            (-self.activity[var], var)
            for var, queued in enumerate(self._queued)
            if queued
        ]
        heapq.heapify(self._heap)
