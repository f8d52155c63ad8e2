"""Compensated accumulation for long sums of logarithms.

Chunks of a numpy array are reduced with :func:`math.fsum` (correctly
rounded); chunk results are merged with a Neumaier accumulator in a fixed
order, so results do not depend on segment size or thread count beyond the
final rounding.
"""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np


class NeumaierSum:
    """Running sum with a Neumaier (improved Kahan) correction term."""

    __slots__ = ("total", "carry")

    def __init__(self, start: float = 0.0):
        self.total = float(start)
        self.carry = 0.0

    def add(self, value: float) -> None:
        value = float(value)
        t = self.total + value
        if abs(self.total) >= abs(value):
            self.carry += (self.total - t) + value
        else:
            self.carry += (value - t) + self.total
        self.total = t

    def extend(self, values: Iterable[float]) -> None:
        for v in values:
            self.add(v)

    @property
    def value(self) -> float:
        return self.total + self.carry


def fsum_array(values: np.ndarray) -> float:
    if values.size == 0:
        return 0.0
    return math.fsum(values.tolist())


class PrefixSampler:
    """Compensated prefix sums of a stream f(n), read off at sorted points.

    Feed ``(ns, values)`` chunks with strictly increasing ``ns`` across calls;
    ``result()`` returns ``sum(f(n) for n <= point)`` for every point. An
    exact integer prefix (term counts, or signed integer weights) is tracked
    alongside.
    """

    def __init__(self, points: Iterable[int]):
        pts = np.asarray(sorted(int(p) for p in points), dtype=np.int64)
        if pts.size and np.any(np.diff(pts) <= 0):
            raise ValueError("sample points must be distinct")
        self.points = pts
        self._intervals = [NeumaierSum() for _ in range(pts.size)]
        self._counts = np.zeros(pts.size, dtype=np.int64)

    def feed(self, ns: np.ndarray, values: np.ndarray | None = None,
             weights: np.ndarray | None = None) -> None:
        """Add float ``values`` and integer ``weights`` (default 1) at ``ns``."""
        if ns.size == 0 or self.points.size == 0:
            return
        # interval k holds points[k-1] < n <= points[k]
        k = np.searchsorted(self.points, ns, side="left")
        keep = k < self.points.size
        if not keep.all():
            k = k[keep]
            if values is not None:
                values = values[keep]
            if weights is not None:
                weights = weights[keep]
            if k.size == 0:
                return
        starts = np.concatenate(([0], np.flatnonzero(np.diff(k)) + 1))
        ks = k[starts]
        w = np.ones(k.size, dtype=np.int64) if weights is None else weights.astype(np.int64)
        self._counts[ks] += np.add.reduceat(w, starts)
        if values is not None:
            ends = np.append(starts[1:], k.size)
            for idx, s, e in zip(ks.tolist(), starts.tolist(), ends.tolist()):
                self._intervals[idx].add(fsum_array(values[s:e]))

    def result(self) -> tuple[np.ndarray, np.ndarray]:
        """Return (prefix sums, prefix counts) aligned with ``self.points``."""
        acc = NeumaierSum()
        sums = np.empty(self.points.size, dtype=np.float64)
        for i, part in enumerate(self._intervals):
            acc.add(part.value)
            sums[i] = acc.value
        return sums, np.cumsum(self._counts)
