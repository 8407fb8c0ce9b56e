"""Construction of the ambient products of odd projective spaces, the
characteristic numbers of the codimension-2 zero loci inside them, and the
l-adic valuation table those numbers produce.

The ambient space for a given degree d and odd prime ell is built from the
base-ell digits of 2d+2, except when 2d+1 is a power of ell, where a single
alternative product of equal factors is used instead.  The characteristic
number of the zero locus is -2 times the top self-intersection degree of
the (1,...,1) twist, available both as a multinomial closed form and as a
brute-force expansion in the truncated ring.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from . import chow
from .chow import LineTerm, ProjProduct, VirtualBundle
from .valuation import ladic_digits, multinomial, nu_multinomial, _require_odd_prime

DEFAULT_BRUTEFORCE_CAP = 14
_CAP_ENV = "COBCALC_BRUTEFORCE_CAP"


def bruteforce_cap() -> int:
    value = os.environ.get(_CAP_ENV)
    if value is None:
        return DEFAULT_BRUTEFORCE_CAP
    cap = int(value)
    if not (1 <= cap <= 16):
        raise ValueError(f"{_CAP_ENV} must be between 1 and 16")
    return cap


@dataclass(frozen=True)
class StongDatum:
    """One row of the valuation table."""

    prime: int
    d: int
    factors: ProjProduct
    s_number: int
    valuation: int
    n_y: int
    expected: int  # 1 when 2d+1 is a power of the prime, else 0

    @property
    def matches(self) -> bool:
        return self.valuation == self.expected


def exceptional_exponent(d: int, ell: int) -> int | None:
    """r >= 1 with 2d = ell**r - 1, or None."""
    _require_odd_prime(ell)
    target = 2 * d + 1
    power, r = ell, 1
    while power <= target:
        if power == target:
            return r
        power *= ell
        r += 1
    return None


def build_X(d: int, ell: int) -> ProjProduct:
    """Ambient product of total dimension 2d+2.

    Generic case: a_i copies of P^(ell^i) for each base-ell digit a_i of
    2d+2 (digit groups with a_i = 0 are simply omitted).  When 2d+1 is a
    power ell**r, the ambient is P^1 x (P^(ell^(r-1)))^ell instead.
    """
    if d < 1:
        raise ValueError("d must be positive")
    _require_odd_prime(ell)
    r = exceptional_exponent(d, ell)
    if r is not None:
        return ProjProduct((1,) + (ell ** (r - 1),) * ell)
    dims: list[int] = []
    for i, a in enumerate(ladic_digits(2 * d + 2, ell).digits):
        dims.extend([ell**i] * a)
    return ProjProduct(tuple(dims))


def _check_construction(X: ProjProduct) -> int:
    """Validate odd factor dimensions in even number; return 2d."""
    if any(n % 2 == 0 for n in X.dims):
        raise ValueError(f"factor dimensions must all be odd: {X.dims}")
    if X.factor_count % 2:
        raise ValueError(f"need an even number of factors: {X.dims}")
    return X.total_dimension - 2


def s_number(X: ProjProduct) -> int:
    """Closed form -2 * multinomial(total, dims) for the characteristic
    number of the zero locus of two (1,...,1) twists inside X."""
    _check_construction(X)
    return -2 * multinomial(X.total_dimension, X.dims)


def s_number_bruteforce(X: ProjProduct, cap: int | None = None) -> int:
    """Same number by full expansion in the truncated ring."""
    _check_construction(X)
    if cap is None:
        cap = bruteforce_cap()
    if X.total_dimension > cap:
        raise ValueError(
            f"total dimension {X.total_dimension} exceeds expansion cap {cap}"
        )
    a = chow.alpha(X)
    return -2 * chow.deg(a ** X.total_dimension)


def congruence_check(d: int, ell: int) -> tuple[int, int, bool]:
    """Digit-factorial congruence for generic d: the degree of twice the
    top power of the hyperplane sum against 2 * a_0! * a_1! * ... mod ell.

    Only defined away from the exceptional degrees 2d = ell**r - 1.
    """
    if d < 1:
        raise ValueError("d must be positive")
    if exceptional_exponent(d, ell) is not None:
        raise ValueError(f"2d = {2 * d} is {ell}**r - 1; congruence is generic-only")
    X = build_X(d, ell)
    lhs = (2 * multinomial(X.total_dimension, X.dims)) % ell
    rhs = 2
    for a in ladic_digits(2 * d + 2, ell).digits:
        for k in range(2, a + 1):
            rhs *= k
    rhs %= ell
    return lhs, rhs, lhs == rhs


def sign_exponent(X: ProjProduct) -> int:
    """Twist-factor count 1 + sum over factors P^(2n_i+1) of (n_i + 1)."""
    _check_construction(X)
    return 1 + sum((n + 1) // 2 for n in X.dims)


def signed_char_number(X: ProjProduct, cap: int | None = None) -> int:
    """Characteristic number of the associated symplectic class, with its
    sign: (-1)**n_Y times the degree of a^2 * c_(2d)(xi + xi - T_X),
    evaluated directly in the truncated ring.  By the comparison of the two
    computations this equals (-1)**(n_Y + 1) times s_number(X); only the
    valuation is consumed downstream.
    """
    two_d = _check_construction(X)
    if cap is None:
        cap = bruteforce_cap()
    if X.total_dimension > cap:
        raise ValueError(
            f"total dimension {X.total_dimension} exceeds expansion cap {cap}"
        )
    # -T_Y restricted from X: the normal bundle xi + xi minus the tangent bundle
    ones = (1,) * X.factor_count
    v = VirtualBundle(X, (LineTerm(1, ones), LineTerm(1, ones))) + (-chow.tangent_bundle(X))
    if two_d == 0:
        # degenerate d = 0: the Newton class of degree 0 is not defined
        raise ValueError("signed characteristic number needs d >= 1")
    cls = chow.newton_class(v, two_d)
    pushed = chow.alpha(X) ** 2 * cls
    return (-1) ** sign_exponent(X) * chow.deg(pushed)


def valuation_table(ell: int, d_max: int) -> list[StongDatum]:
    """Rows d = 1..d_max with the closed-form number, its valuation by the
    Legendre path, and the expected dichotomy flag."""
    if d_max < 1:
        raise ValueError("d_max must be positive")
    _require_odd_prime(ell)
    rows = []
    for d in range(1, d_max + 1):
        X = build_X(d, ell)
        s = s_number(X)
        # nu(|s|) = nu(multinomial): the factor 2 is prime to ell
        valuation = nu_multinomial(X.total_dimension, X.dims, ell)
        expected = 1 if exceptional_exponent(d, ell) is not None else 0
        rows.append(
            StongDatum(
                prime=ell,
                d=d,
                factors=X,
                s_number=s,
                valuation=valuation,
                n_y=sign_exponent(X),
                expected=expected,
            )
        )
    return rows
