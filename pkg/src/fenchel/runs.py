"""Run-length encoded tuples.

Deep covers can carry millions (or billions) of identical periods; this keeps
them as ``(value, count)`` runs while still behaving like a read-only tuple.
"""
from __future__ import annotations

import bisect
from collections import Counter
from itertools import accumulate, repeat
from typing import Any, Iterable, Iterator, List, Sequence, Tuple


class RunTuple(Sequence):
    __slots__ = ("runs", "_ends")

    def __init__(self, runs: Iterable[Tuple[Any, int]]) -> None:
        merged: List[List[Any]] = []
        for value, count in runs:
            if count <= 0:
                continue
            if merged and merged[-1][0] == value:
                merged[-1][1] += count
            else:
                merged.append([value, count])
        self.runs: Tuple[Tuple[Any, int], ...] = tuple((v, c) for v, c in merged)
        self._ends = list(accumulate(c for _, c in self.runs))

    @classmethod
    def encode(cls, items: Iterable[Any]) -> "RunTuple":
        return cls((x, 1) for x in items)

    def __len__(self) -> int:
        return self._ends[-1] if self._ends else 0

    @property
    def size(self) -> int:
        """Like ``len`` but without the machine-word limit."""
        return self._ends[-1] if self._ends else 0

    def __bool__(self) -> bool:
        return bool(self.runs)

    def __iter__(self) -> Iterator[Any]:
        for v, c in self.runs:
            yield from repeat(v, c)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return tuple(self)[i]
        n = self.size
        if i < 0:
            i += n
        if not 0 <= i < n:
            raise IndexError("RunTuple index out of range")
        return self.runs[bisect.bisect_right(self._ends, i)][0]

    def counts(self) -> Counter:
        out: Counter = Counter()
        for v, c in self.runs:
            out[v] += c
        return out

    def _key(self) -> Tuple[Tuple[Any, int], ...]:
        return self.runs

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RunTuple):
            return self.runs == other.runs
        if isinstance(other, (tuple, list)):
            return self.size == len(other) and self.runs == RunTuple.encode(other).runs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("RunTuple", self.runs))

    def _cmp(self, other) -> int:
        a = list(self.runs)
        b = list(other.runs if isinstance(other, RunTuple) else RunTuple.encode(other).runs)
        i = j = 0
        ra = rb = None
        while True:
            if ra is None and i < len(a):
                ra = list(a[i]); i += 1
            if rb is None and j < len(b):
                rb = list(b[j]); j += 1
            if ra is None or rb is None:
                return (ra is not None) - (rb is not None)
            if ra[0] != rb[0]:
                return -1 if ra[0] < rb[0] else 1
            step = min(ra[1], rb[1])
            ra[1] -= step
            rb[1] -= step
            if not ra[1]:
                ra = None
            if not rb[1]:
                rb = None

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        return self._cmp(other) >= 0

    def __repr__(self) -> str:
        body = ", ".join(f"{v!r}×{c}" for v, c in self.runs)
        return f"RunTuple({body})"


def run_pairs(xs: Sequence[Any], ys: Sequence[Any]) -> List[Tuple[Tuple[Any, Any], int]]:
    """Runs of ``zip(xs, ys)`` as ``((x, y), count)``, without expanding RunTuples."""
    ra = xs.runs if isinstance(xs, RunTuple) else RunTuple.encode(xs).runs
    rb = ys.runs if isinstance(ys, RunTuple) else _encode_identity(ys)
    out: List[List[Any]] = []
    i = j = 0
    ca = cb = 0
    while i < len(ra) and j < len(rb):
        if ca == 0:
            ca = ra[i][1]
        if cb == 0:
            cb = rb[j][1]
        step = min(ca, cb)
        key = (ra[i][0], rb[j][0])
        if out and out[-1][0][0] == key[0] and out[-1][0][1] is key[1]:
            out[-1][1] += step
        else:
            out.append([key, step])
        ca -= step
        cb -= step
        if ca == 0:
            i += 1
        if cb == 0:
            j += 1
    if i < len(ra) or j < len(rb):
        raise ValueError("sequences have different lengths")
    return [(k, c) for k, c in out]


def _encode_identity(ys: Sequence[Any]) -> Tuple[Tuple[Any, int], ...]:
    # group by identity or equality of adjacent items; cheap for shared objects
    out: List[List[Any]] = []
    for y in ys:
        if out and (out[-1][0] is y or out[-1][0] == y):
            out[-1][1] += 1
        else:
            out.append([y, 1])
    return tuple((v, c) for v, c in out)
