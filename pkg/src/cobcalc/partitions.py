"""Integer partitions: predicates, concatenation, bounded enumeration.

A partition is a weakly decreasing tuple of positive integers; the empty
partition is valid with weight 0.  Partitions are immutable values (a tuple
subclass), so they work directly as dict keys throughout the package.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator

from .valuation import _require_odd_prime

PREDICATES = ("all", "even", "even-non-ladic")


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()) -> "Partition":
        parts = tuple(sorted(parts, reverse=True))
        if any(not isinstance(p, int) or p <= 0 for p in parts):
            raise ValueError(f"parts must be positive integers: {parts}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    def is_even(self) -> bool:
        """True when every part is even; vacuously true for ()."""
        return all(p % 2 == 0 for p in self)

    def is_ladic(self, ell: int) -> bool:
        """True when some part equals ell**m - 1 for some m >= 1."""
        _require_odd_prime(ell)
        if not self:
            return False
        v = ell - 1
        while v <= self[0]:
            if v in self:
                return True
            v = (v + 1) * ell - 1
        return False

    def concat(self, other: Iterable[int]) -> "Partition":
        """Multiset union of parts, reordered to be weakly decreasing."""
        return Partition(tuple(self) + tuple(other))

    def __repr__(self) -> str:
        return f"Partition{tuple(self)!r}"


def concat(a: Iterable[int], b: Iterable[int]) -> Partition:
    return Partition(a).concat(b)


def _descending_partitions(w: int, max_part: int) -> Iterator[tuple[int, ...]]:
    # lexicographic-descending order: largest first part first
    if w == 0:
        yield ()
        return
    for p in range(min(w, max_part), 0, -1):
        for rest in _descending_partitions(w - p, p):
            yield (p,) + rest


def enumerate_partitions(w: int, predicate: str = "all", ell: int | None = None) -> list[Partition]:
    """All partitions of weight w satisfying the predicate, each once,
    in lexicographic-descending order on part lists.

    predicate: "all", "even", or "even-non-ladic" (needs ell).
    """
    if w < 0:
        raise ValueError("weight must be nonnegative")
    if predicate not in PREDICATES:
        raise ValueError(f"unknown predicate {predicate!r}, expected one of {PREDICATES}")
    if predicate == "all":
        return [Partition(p) for p in _descending_partitions(w, w)]
    if w % 2 == 1:
        return []
    # even partitions of w are doubled partitions of w/2; doubling preserves order
    evens = [Partition(tuple(2 * x for x in p)) for p in _descending_partitions(w // 2, w // 2)]
    if predicate == "even":
        return evens
    if ell is None:
        raise ValueError("even-non-ladic predicate needs a prime")
    _require_odd_prime(ell)
    return [p for p in evens if not p.is_ladic(ell)]
