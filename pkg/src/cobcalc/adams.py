"""Rank and graded-dimension bookkeeping for the filtered pages attached
to the polynomial ring of weight-2i generators: the partition-indexed
module decomposition checked as a counting identity, the diagonal algebra
of the associated trigraded presentation, and the per-degree ranks that
pin down the image of the comparison map.

Only dimensions are modeled, never the modules themselves; the tracked
diagonal consists of the spots (s, t, u) with t = 2u, where the algebra is
polynomial on one generator in each even negative degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .partitions import enumerate_partitions
from .valuation import _require_odd_prime


@dataclass(frozen=True)
class MilnorExponent:
    """Finitely supported exponent sequence (r1, r2, ...); the i-th slot
    carries weight ell**i - 1."""

    exponents: tuple[int, ...]

    def weight(self, ell: int) -> int:
        return sum(r * (ell ** (i + 1) - 1) for i, r in enumerate(self.exponents))


@dataclass(frozen=True)
class TriDegree:
    """Filtration s, cohomological degree t, weight u; the spot holds the
    bidegree-(t - s, u) component of the filtration-s layer."""

    s: int
    t: int
    u: int

    @property
    def internal(self) -> tuple[int, int]:
        return (self.t - self.s, self.u)


def _basis_weights(q: int, ell: int) -> list[int]:
    weights = []
    w = ell - 1
    while w <= q:
        weights.append(w)
        w = (w + 1) * ell - 1
    return weights


def milnor_count(q: int, ell: int) -> int:
    """Number of exponent sequences of weight q: counted by dynamic
    programming over the slot weights ell**i - 1."""
    _require_odd_prime(ell)
    if q < 0:
        raise ValueError("weight must be nonnegative")
    dp = [0] * (q + 1)
    dp[0] = 1
    for w in _basis_weights(q, ell):
        for v in range(w, q + 1):
            dp[v] += dp[v - w]
    return dp[q]


@dataclass(frozen=True)
class DecompositionRow:
    weight: int
    even_partition_count: int
    module_count: int

    @property
    def equal(self) -> bool:
        return self.even_partition_count == self.module_count


@dataclass(frozen=True)
class DecompositionReport:
    prime: int
    rows: tuple[DecompositionRow, ...]

    @property
    def all_equal(self) -> bool:
        return all(r.equal for r in self.rows)


def decomposition_check(max_weight: int, ell: int) -> DecompositionReport:
    """Per even weight w <= max_weight, compare the number of partitions of
    w into even parts against the number of (even non-l-adic partition,
    exponent sequence) pairs of total weight w.  Equality in every weight
    is the graded-dimension form of the module decomposition."""
    _require_odd_prime(ell)
    if max_weight < 0:
        raise ValueError("max_weight must be nonnegative")
    rows = []
    for w in range(0, max_weight + 1, 2):
        lhs = len(enumerate_partitions(w, "even"))
        rhs = 0
        for v in range(0, w + 1, 2):
            rhs += len(enumerate_partitions(v, "even-non-ladic", ell)) * milnor_count(
                w - v, ell
            )
        rows.append(DecompositionRow(w, lhs, rhs))
    return DecompositionReport(ell, tuple(rows))


@lru_cache(maxsize=None)
def _partition_count(n: int, max_part: int) -> int:
    if n == 0:
        return 1
    if max_part == 0:
        return 0
    total = 0
    for p in range(min(n, max_part), 0, -1):
        total += _partition_count(n - p, p)
    return total


def e2_rank(d: int) -> int:
    """Free rank of the degree -2d diagonal: the number of partitions of
    2d into even parts, which is the number of partitions of d."""
    if d < 1:
        raise ValueError("d must be positive")
    return _partition_count(d, d)


def _generator_degrees(ell: int, max_degree: int) -> list[int]:
    """Positive even generator degrees up to max_degree: 2k for every
    2k != ell**i - 1, and ell**r - 1 for r >= 1.  Jointly these tile the
    even degrees exactly once."""
    exceptional = set()
    p = ell
    while p - 1 <= max_degree:
        exceptional.add(p - 1)
        p *= ell
    degrees = [2 * k for k in range(1, max_degree // 2 + 1) if 2 * k not in exceptional]
    degrees.extend(sorted(exceptional))
    return sorted(degrees)


def e2_rank_from_generators(d: int, ell: int) -> int:
    """Same rank by explicit monomial enumeration in the presentation's
    generator degrees; independent of the partition route and of ell."""
    if d < 1:
        raise ValueError("d must be positive")
    _require_odd_prime(ell)
    degrees = _generator_degrees(ell, 2 * d)
    target = 2 * d
    dp = [0] * (target + 1)
    dp[0] = 1
    for g in degrees:
        for v in range(g, target + 1):
            dp[v] += dp[v - g]
    return dp[target]


def mgl_rank(d: int) -> int:
    """Rank of the degree -d part of the full polynomial coefficient ring
    with one generator in every negative degree: partitions of d."""
    if d < 1:
        raise ValueError("d must be positive")
    return _partition_count(d, d)


def ext_generators(ell: int, u_min: int) -> list[tuple[str, TriDegree]]:
    """Generators of the diagonal algebra with weight component >= u_min:
    the unit, the partition duals z_(2k) at (0, -4k, -2k) for 2k not of the
    form ell**i - 1, and the tower classes h'_r at (1, 2(1 - ell**r),
    1 - ell**r) for r >= 0.  Every generator sits on the t = 2u diagonal.
    """
    _require_odd_prime(ell)
    if u_min > 0:
        raise ValueError("u_min must be <= 0")
    gens = [("1", TriDegree(0, 0, 0))]
    exceptional = set()
    p = ell
    while p - 1 <= -2 * u_min:
        exceptional.add(p - 1)
        p *= ell
    for k in range(1, (-u_min) // 2 + 1):
        if 2 * k in exceptional:
            continue
        gens.append((f"z_({2 * k})", TriDegree(0, -4 * k, -2 * k)))
    r = 0
    while 1 - ell**r >= u_min:
        gens.append((f"h'_{r}", TriDegree(1, 2 * (1 - ell**r), 1 - ell**r)))
        r += 1
    gens.sort(key=lambda g: (-g[1].u, g[1].s, g[0]))
    return gens


def _diagonal_dimension(s: int, u: int, ell: int) -> int:
    """Number of generator monomials at filtration s and weight u on the
    t = 2u diagonal.  Powers of the degree-0 tower class absorb any excess
    filtration, so a monomial in the other generators with filtration
    s' <= s and weight u counts once."""
    if u > 0 or s < 0:
        return 0
    target = -u
    # dp[s'][w] = monomial count in z's (s-degree 0) and h'_{r>=1} (s-degree 1)
    dp = [[0] * (target + 1) for _ in range(s + 1)]
    dp[0][0] = 1
    for k in range(1, target // 2 + 1):
        if _is_power_minus_one(2 * k, ell):
            continue
        for s_ in range(s + 1):
            for w in range(2 * k, target + 1):
                dp[s_][w] += dp[s_][w - 2 * k]
    r = 1
    while ell**r - 1 <= target:
        g = ell**r - 1
        for s_ in range(1, s + 1):
            for w in range(g, target + 1):
                dp[s_][w] += dp[s_ - 1][w - g]
        r += 1
    return sum(dp[s_][target] for s_ in range(s + 1))


def _is_power_minus_one(n: int, ell: int) -> bool:
    p = ell
    while p - 1 <= n:
        if p - 1 == n:
            return True
        p *= ell
    return False


def vanishing_check(s: int, t: int, u: int, ell: int) -> bool:
    """True when the dimension model assigns 0 at (s, t, u): everything
    above the diagonal (t > 2u) vanishes, and on the diagonal the monomial
    count decides.  Below the diagonal only the weight-(u=1) line can be
    nonzero and is field-dependent; it is outside this model, which tracks
    the diagonal ranks only."""
    _require_odd_prime(ell)
    if t > 2 * u:
        return True
    if t < 2 * u:
        return True
    return _diagonal_dimension(s, u, ell) == 0
