"""Generator-detection verdicts from l-adic valuations of characteristic
numbers: the local criteria in the two gradings and the aggregated check
over a finite range of odd primes.

A candidate family assigns one integer characteristic number to each
degree index 1..d_max.  A zero entry is a hard per-degree failure (no
valuation exists), never an exception, so batch tables cannot abort.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import stong
from .valuation import is_odd_prime, nu, _require_odd_prime


@dataclass(frozen=True)
class CandidateFamily:
    """kind "msp": entry d is the characteristic number in degree -2d.
    kind "mgl": entry d is the characteristic number in degree -d."""

    kind: str
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("msp", "mgl"):
            raise ValueError(f"unknown family kind {self.kind!r}")
        clean = {}
        for d, value in self.entries.items():
            d = int(d)
            if d < 1:
                raise ValueError("degree indices start at 1")
            clean[d] = int(value)
        object.__setattr__(self, "entries", clean)

    def require_range(self, d_max: int) -> None:
        missing = [d for d in range(1, d_max + 1) if d not in self.entries]
        if missing:
            raise ValueError(f"family is missing degrees {missing}")

    def with_entry(self, d: int, value: int) -> "CandidateFamily":
        entries = dict(self.entries)
        entries[d] = value
        return CandidateFamily(self.kind, entries)


@dataclass(frozen=True)
class DegreeVerdict:
    d: int
    required: int
    observed: int | None  # None when the entry is zero
    passed: bool
    reason: str = ""


@dataclass(frozen=True)
class GeneratorVerdict:
    kind: str
    primes: tuple[int, ...]
    rows: tuple[DegreeVerdict, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def failures(self) -> list[DegreeVerdict]:
        return [r for r in self.rows if not r.passed]


def required_valuation_mgl(d: int, ell: int) -> int:
    """1 when d + 1 is a positive power of ell, else 0."""
    _require_odd_prime(ell)
    p = ell
    while p <= d + 1:
        if p == d + 1:
            return 1
        p *= ell
    return 0


def required_valuation_msp(d: int, ell: int) -> int:
    """1 when 2d + 1 is a positive power of ell, else 0."""
    return required_valuation_mgl(2 * d, ell)


def _check_family(fam: CandidateFamily, ell: int, d_max: int, required) -> GeneratorVerdict:
    fam.require_range(d_max)
    rows = []
    for d in range(1, d_max + 1):
        value = fam.entries[d]
        need = required(d, ell)
        if value == 0:
            rows.append(
                DegreeVerdict(d, need, None, False, "zero characteristic number")
            )
            continue
        seen = nu(value, ell)
        rows.append(
            DegreeVerdict(
                d,
                need,
                seen,
                seen == need,
                "" if seen == need else f"valuation {seen}, required {need}",
            )
        )
    return GeneratorVerdict(fam.kind, (ell,), tuple(rows))


def mgl_criterion(fam: CandidateFamily, ell: int, d_max: int) -> GeneratorVerdict:
    """Per degree d: the entry must have valuation 1 exactly when d is one
    less than a power of ell, and valuation 0 otherwise."""
    if fam.kind != "mgl":
        raise ValueError("expected an mgl family")
    return _check_family(fam, ell, d_max, required_valuation_mgl)


def msp_criterion(fam: CandidateFamily, ell: int, d_max: int) -> GeneratorVerdict:
    """Per degree index d (degree -2d): valuation 1 exactly when 2d is one
    less than a power of ell, and valuation 0 otherwise."""
    if fam.kind != "msp":
        raise ValueError("expected an msp family")
    return _check_family(fam, ell, d_max, required_valuation_msp)


def odd_primes_up_to(bound: int, excluded=()) -> list[int]:
    return [p for p in range(3, bound + 1, 2) if is_odd_prime(p) and p not in set(excluded)]


def global_criterion(
    fam: CandidateFamily, prime_bound: int, d_max: int, excluded=(2,)
) -> dict[int, GeneratorVerdict]:
    """Run the local criterion for every odd prime up to prime_bound not in
    excluded, on the same family.  Only finitely many primes are checkable;
    the unit condition away from the exceptional degrees is verified as
    valuation 0 at every checked prime."""
    if prime_bound < 3:
        raise ValueError("prime_bound must be at least 3")
    primes = odd_primes_up_to(prime_bound, excluded)
    return {ell: msp_criterion(fam, ell, d_max) for ell in primes}


def aggregate_passed(verdicts: dict[int, GeneratorVerdict]) -> bool:
    return all(v.passed for v in verdicts.values())


def stong_family(ell: int, d_max: int) -> CandidateFamily:
    """Default candidate family: absolute characteristic numbers of the
    construction for the given prime."""
    rows = stong.valuation_table(ell, d_max)
    return CandidateFamily("msp", {row.d: abs(row.s_number) for row in rows})
