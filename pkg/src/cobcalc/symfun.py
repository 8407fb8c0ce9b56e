"""Symmetric functions in the monomial, elementary, and power-sum bases,
the dictionary between even partitions and polynomials in the generators
b1, b2, ..., the diagonal splitting of an even partition, and the dual
algebra of classes indexed by even non-l-adic partitions.

Representations are sparse dicts keyed by Partition.  Coefficients are
exact: Python ints, with Fractions appearing only where a conversion into
the power-sum basis genuinely requires them (denominators are products of
part-multiplicity factorials).  With a modulus set, coefficients live in
[0, ell) and divisions use modular inverses.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .partitions import Partition
from .valuation import _require_odd_prime

BASES = ("monomial", "elementary", "power-sum")

# conversions beyond this weight are rejected; partition counts make the
# transition computations grow quickly
DEFAULT_WEIGHT_CAP = 40


def _normalize_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def _reduce(coeffs: dict, modulus: int | None) -> dict:
    out = {}
    for k, c in coeffs.items():
        if modulus is not None:
            if isinstance(c, Fraction):
                c = c.numerator * pow(c.denominator, -1, modulus)
            c %= modulus
        else:
            c = _normalize_coeff(c)
        if c:
            out[k] = c
    return out


@dataclass(frozen=True)
class SymFn:
    """Symmetric function with finite support in a named basis."""

    coeffs: dict
    basis: str = "monomial"
    modulus: int | None = None

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"unknown basis {self.basis!r}")
        if self.modulus is not None:
            _require_odd_prime(self.modulus)
        clean = _reduce({Partition(k): c for k, c in self.coeffs.items()}, self.modulus)
        object.__setattr__(self, "coeffs", clean)

    @property
    def weight(self) -> int:
        """Largest weight in the support (0 for the zero function)."""
        return max((p.weight for p in self.coeffs), default=0)

    def __add__(self, other: "SymFn") -> "SymFn":
        if self.basis != other.basis or self.modulus != other.modulus:
            raise ValueError("basis/modulus mismatch")
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return SymFn(out, self.basis, self.modulus)

    def scale(self, a) -> "SymFn":
        return SymFn({k: a * c for k, c in self.coeffs.items()}, self.basis, self.modulus)

    @staticmethod
    def basis_element(parts, basis: str = "monomial", modulus: int | None = None) -> "SymFn":
        return SymFn({Partition(parts): 1}, basis, modulus)


# ---------------------------------------------------------------------------
# expansion oracle: evaluate basis elements on concrete variables t1..tk
# ---------------------------------------------------------------------------


def _distinct_arrangements(parts: tuple[int, ...], k: int):
    """All distinct length-k exponent vectors whose nonzero entries are a
    rearrangement of parts."""
    if len(parts) > k:
        return
    counts = Counter(parts)
    counts[0] = k - len(parts)
    values = sorted(counts)

    def rec(pos, remaining):
        if pos == k:
            yield ()
            return
        for v in list(remaining):
            if remaining[v] == 0:
                continue
            remaining[v] -= 1
            for rest in rec(pos + 1, remaining):
                yield (v,) + rest
            remaining[v] += 1

    yield from rec(0, dict(counts))


def _mono_in_vars(parts: tuple[int, ...], k: int) -> dict:
    return {vec: 1 for vec in _distinct_arrangements(tuple(parts), k)}


def _vars_mul(a: dict, b: dict) -> dict:
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def expand_in_vars(f: SymFn, k: int) -> dict:
    """Expand f as a concrete polynomial in variables t1..tk.

    Returns a sparse dict, exponent vector -> coefficient.  Partitions with
    more parts than k contribute zero.  This is the definitional oracle the
    basis conversions are tested against; it does not share code with them.
    """
    if k < 1:
        raise ValueError("need at least one variable")
    out: dict = {}
    for p, c in f.coeffs.items():
        if f.basis == "monomial":
            term = _mono_in_vars(tuple(p), k)
        elif f.basis == "elementary":
            term = {(0,) * k: 1}
            for part in p:
                term = _vars_mul(term, _mono_in_vars((1,) * part, k))
        else:  # power-sum
            term = {(0,) * k: 1}
            for part in p:
                term = _vars_mul(term, _mono_in_vars((part,), k))
        for e, v in term.items():
            out[e] = out.get(e, 0) + c * v
    out = {e: c for e, c in out.items() if c}
    if f.modulus is not None:
        out = {e: c % f.modulus for e, c in out.items() if c % f.modulus}
    return out


# ---------------------------------------------------------------------------
# basis conversions
# ---------------------------------------------------------------------------


def _mul_e_m(s: int, mf: dict) -> dict:
    """Multiply an m-basis dict by e_s: add 1 to s distinct slots."""
    if s == 0:
        return dict(mf)
    out: dict = {}
    for mu, c in mf.items():
        counts = Counter(mu)
        counts[0] = s  # at most s new parts can appear
        values = sorted(counts)

        def rec(i, rem, raised):
            if rem == 0:
                yield dict(raised)
                return
            if i == len(values):
                return
            v = values[i]
            for j in range(min(counts[v], rem) + 1):
                raised[v] = j
                yield from rec(i + 1, rem - j, raised)
            raised.pop(v, None)

        for raised in rec(0, s, {}):
            new = Counter(counts)
            for v, j in raised.items():
                new[v] -= j
                new[v + 1] += j
            coeff = 1
            for v, j in raised.items():
                if j:
                    coeff *= math.comb(new[v + 1], j)
            key = Partition(v for v, cnt in new.items() if v > 0 for _ in range(cnt))
            out[key] = out.get(key, 0) + c * coeff
    return {k: v for k, v in out.items() if v}


def _mul_p_m(r: int, mf: dict) -> dict:
    """Multiply an m-basis dict by p_r: add r to one slot (possibly new)."""
    out: dict = {}
    for mu, c in mf.items():
        for v in set(mu) | {0}:
            parts = list(mu)
            if v:
                parts.remove(v)
            parts.append(v + r)
            key = Partition(parts)
            out[key] = out.get(key, 0) + c * Counter(key)[v + r]
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _e_to_m(lam: Partition) -> tuple:
    mf = {Partition(): 1}
    for part in lam:
        mf = _mul_e_m(part, mf)
    return tuple(sorted(mf.items()))


@lru_cache(maxsize=None)
def _p_to_m(lam: Partition) -> tuple:
    mf = {Partition(): 1}
    for part in lam:
        mf = _mul_p_m(part, mf)
    return tuple(sorted(mf.items()))


def _conjugate(lam: Partition) -> Partition:
    if not lam:
        return Partition()
    return Partition(sum(1 for x in lam if x >= j) for j in range(1, lam[0] + 1))


def _to_m(coeffs: dict, basis: str) -> dict:
    if basis == "monomial":
        return dict(coeffs)
    table = _e_to_m if basis == "elementary" else _p_to_m
    out: dict = {}
    for lam, c in coeffs.items():
        for mu, v in table(lam):
            out[mu] = out.get(mu, 0) + c * v
    return {k: v for k, v in out.items() if v}


def _m_to_e(mf: dict) -> dict:
    """Subtract leading terms: e_{lam'} has lex-leading monomial m_lam with
    coefficient 1, and every other term lexicographically smaller."""
    mf = dict(mf)
    out: dict = {}
    while mf:
        lam = max(mf)
        c = mf.pop(lam)
        pivot = _conjugate(lam)
        out[pivot] = out.get(pivot, 0) + c
        for mu, v in _e_to_m(pivot):
            if mu == lam:
                continue
            mf[mu] = mf.get(mu, 0) - c * v
            if not mf[mu]:
                del mf[mu]
    return out


def _m_to_p(mf: dict) -> dict:
    """Subtract leading terms from below: p_lam expands as
    (prod of multiplicity factorials) * m_lam plus lex-larger terms only,
    so pivots are taken lex-smallest first.  Divisions by the multiplicity
    factorials are where non-integer coefficients can enter."""
    mf = dict(mf)
    out: dict = {}
    while mf:
        lam = min(mf)
        c = mf.pop(lam)
        lead = 1
        for mult in Counter(lam).values():
            lead *= math.factorial(mult)
        coeff = Fraction(c) / lead
        out[lam] = out.get(lam, 0) + coeff
        for mu, v in _p_to_m(lam):
            if mu == lam:
                continue
            mf[mu] = _normalize_coeff(mf.get(mu, 0) - coeff * v)
            if not mf[mu]:
                del mf[mu]
    return out


def _m_to_p_mod(mf: dict, ell: int) -> dict:
    mf = dict(mf)
    out: dict = {}
    while mf:
        lam = min(mf)
        c = mf.pop(lam)
        lead = 1
        for mult in Counter(lam).values():
            lead *= math.factorial(mult)
        if lead % ell == 0:
            raise ValueError(
                f"power-sum conversion of m_{tuple(lam)} needs division by {lead}, "
                f"not invertible mod {ell}"
            )
        coeff = c * pow(lead, -1, ell) % ell
        out[lam] = (out.get(lam, 0) + coeff) % ell
        for mu, v in _p_to_m(lam):
            if mu == lam:
                continue
            mf[mu] = (mf.get(mu, 0) - coeff * v) % ell
            if not mf[mu]:
                del mf[mu]
    return out


def convert(f: SymFn, target: str, max_weight: int = DEFAULT_WEIGHT_CAP) -> SymFn:
    """Re-express f in the target basis.  Round trips are exact."""
    if target not in BASES:
        raise ValueError(f"unknown basis {target!r}")
    if f.weight > max_weight:
        raise ValueError(f"weight {f.weight} exceeds cap {max_weight}")
    if target == f.basis:
        return f
    mf = _to_m(f.coeffs, f.basis)
    if target == "monomial":
        return SymFn(mf, "monomial", f.modulus)
    if target == "elementary":
        return SymFn(_m_to_e(mf), "elementary", f.modulus)
    if f.modulus is not None:
        return SymFn(_m_to_p_mod(_reduce(mf, f.modulus), f.modulus), "power-sum", f.modulus)
    return SymFn(_m_to_p(mf), "power-sum", None)


# ---------------------------------------------------------------------------
# polynomials in the generators b1, b2, ...
# ---------------------------------------------------------------------------

# a monomial is a sorted tuple of (generator index, exponent) pairs
BMono = tuple


def bmono_weight(mono: BMono) -> int:
    return sum(2 * i * k for i, k in mono)


@dataclass(frozen=True)
class BPoly:
    """Sparse polynomial in generators b1, b2, ... with b_i of weight 2i.

    coeffs maps a monomial ((i1, k1), (i2, k2), ...) with i1 < i2 < ... to a
    nonzero coefficient.  modulus None means exact integers.
    """

    coeffs: dict = field(default_factory=dict)
    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None:
            _require_odd_prime(self.modulus)
        clean = {}
        for mono, c in _reduce(self.coeffs, self.modulus).items():
            mono = tuple(sorted((i, k) for i, k in mono if k))
            if any(i < 1 or k < 0 for i, k in mono):
                raise ValueError(f"bad monomial {mono}")
            clean[mono] = clean.get(mono, 0) + c
        object.__setattr__(self, "coeffs", _reduce(clean, self.modulus))

    @staticmethod
    def zero(modulus: int | None = None) -> "BPoly":
        return BPoly({}, modulus)

    @staticmethod
    def one(modulus: int | None = None) -> "BPoly":
        return BPoly({(): 1}, modulus)

    @staticmethod
    def generator(i: int, modulus: int | None = None) -> "BPoly":
        return BPoly({((i, 1),): 1}, modulus)

    @property
    def weight(self) -> int:
        return max((bmono_weight(m) for m in self.coeffs), default=0)

    def is_homogeneous(self) -> bool:
        weights = {bmono_weight(m) for m in self.coeffs}
        return len(weights) <= 1

    def __add__(self, other: "BPoly") -> "BPoly":
        if self.modulus != other.modulus:
            raise ValueError("modulus mismatch")
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return BPoly(out, self.modulus)

    def __mul__(self, other: "BPoly") -> "BPoly":
        if self.modulus != other.modulus:
            raise ValueError("modulus mismatch")
        out: dict = {}
        for ma, ca in self.coeffs.items():
            for mb, cb in other.coeffs.items():
                exps = dict(ma)
                for i, k in mb:
                    exps[i] = exps.get(i, 0) + k
                key = tuple(sorted(exps.items()))
                out[key] = out.get(key, 0) + ca * cb
        return BPoly(out, self.modulus)

    def scale(self, a) -> "BPoly":
        return BPoly({m: a * c for m, c in self.coeffs.items()}, self.modulus)

    def reduce_mod(self, ell: int) -> "BPoly":
        return BPoly(dict(self.coeffs), ell)


def _epartition_to_bmono(ep: Partition) -> BMono:
    return tuple(sorted(Counter(ep).items()))


def symfn_to_bpoly(f: SymFn, max_weight: int = DEFAULT_WEIGHT_CAP) -> BPoly:
    """Express f in the elementary basis and rename e_i -> b_i."""
    ef = convert(f, "elementary", max_weight)
    return BPoly({_epartition_to_bmono(p): c for p, c in ef.coeffs.items()}, f.modulus)


def bpoly_to_symfn(b: BPoly) -> SymFn:
    """Inverse renaming: b_i -> e_i, giving an elementary-basis function."""
    coeffs = {}
    for mono, c in b.coeffs.items():
        parts = [i for i, k in mono for _ in range(k)]
        coeffs[Partition(parts)] = c
    return SymFn(coeffs, "elementary", b.modulus)


def u_to_b(omega, modulus: int | None = None, max_weight: int = DEFAULT_WEIGHT_CAP) -> BPoly:
    """The b-polynomial attached to an even partition: the monomial
    symmetric function of the halved partition, written in the elementary
    basis, with e_s renamed b_s.

    Under b_s -> e_s(t1**2, ..., tk**2) this recovers the monomial
    symmetric function of the halved partition in the squared variables.
    """
    omega = Partition(omega)
    if not omega.is_even():
        raise ValueError(f"{tuple(omega)} is not an even partition")
    if omega.weight > 2 * max_weight:
        raise ValueError(f"weight {omega.weight} exceeds cap {2 * max_weight}")
    half = Partition(p // 2 for p in omega)
    return symfn_to_bpoly(SymFn({half: 1}, "monomial", modulus), max_weight)


# ---------------------------------------------------------------------------
# diagonal and the dual algebra
# ---------------------------------------------------------------------------


def diagonal(omega) -> list[tuple[Partition, Partition]]:
    """All ordered pairs (w1, w2) of partitions with concatenation omega,
    each distinct ordered pair exactly once.  Pairs with w1 = w2 appear
    once; unordered splits with w1 != w2 contribute both orders."""
    omega = Partition(omega)
    if not omega.is_even():
        raise ValueError(f"{tuple(omega)} is not an even partition")
    counts = sorted(Counter(omega).items())

    def rec(i):
        if i == len(counts):
            yield ()
            return
        v, n = counts[i]
        for rest in rec(i + 1):
            for take in range(n + 1):
                yield ((v, take),) + rest

    pairs = []
    for choice in rec(0):
        left = Partition([v for v, take in choice for _ in range(take)])
        right_counts = {v: n for v, n in counts}
        for v, take in choice:
            right_counts[v] -= take
        right = Partition([v for v, n in right_counts.items() for _ in range(n)])
        pairs.append((left, right))
    pairs.sort()
    return pairs


@dataclass(frozen=True)
class ZClass:
    """Formal mod-ell sum of even non-l-adic partitions.

    Multiplication concatenates indexing partitions; the pairing against an
    even partition is the Kronecker pairing on the basis.
    """

    prime: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        _require_odd_prime(self.prime)
        clean = {}
        for p, c in self.coeffs.items():
            p = Partition(p)
            if not p.is_even():
                raise ValueError(f"{tuple(p)} is not even")
            if p.is_ladic(self.prime):
                raise ValueError(f"{tuple(p)} is {self.prime}-adic")
            c %= self.prime
            if c:
                clean[p] = c
        object.__setattr__(self, "coeffs", clean)

    @staticmethod
    def basis_element(omega, ell: int) -> "ZClass":
        return ZClass(ell, {Partition(omega): 1})

    def __add__(self, other: "ZClass") -> "ZClass":
        if self.prime != other.prime:
            raise ValueError("prime mismatch")
        out = dict(self.coeffs)
        for p, c in other.coeffs.items():
            out[p] = out.get(p, 0) + c
        return ZClass(self.prime, out)


def z_mul(z1: ZClass, z2: ZClass) -> ZClass:
    """Bilinear extension of concatenation on basis elements."""
    if z1.prime != z2.prime:
        raise ValueError("prime mismatch")
    out: dict = {}
    for p1, c1 in z1.coeffs.items():
        for p2, c2 in z2.coeffs.items():
            key = p1.concat(p2)
            out[key] = out.get(key, 0) + c1 * c2
    return ZClass(z1.prime, out)


def pair(z: ZClass, omega) -> int:
    """Kronecker pairing of z against the basis class of omega, mod ell."""
    return z.coeffs.get(Partition(omega), 0)


def pair_through_diagonal(z1: ZClass, z2: ZClass, omega) -> int:
    """Pairing of z1*z2 against omega evaluated via the diagonal: apply
    z1 (x) z2 to every ordered splitting of omega and sum.  Used as the
    independent route for the duality checks."""
    if z1.prime != z2.prime:
        raise ValueError("prime mismatch")
    total = 0
    for left, right in diagonal(omega):
        total += z1.coeffs.get(left, 0) * z2.coeffs.get(right, 0)
    return total % z1.prime
