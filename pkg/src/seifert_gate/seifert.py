"""Seifert invariants of Brieskorn homology spheres.

All arithmetic is exact: multiplicities are arbitrary-precision integers and
fiber sums are ``fractions.Fraction``.  Every defining identity is asserted at
construction time rather than trusted, so an instance of one of these types is
itself a small certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Iterable, Sequence

from .errors import DivisionByZero, MultiplicityTooSmall, NotCoprime, TooFewFibers

__all__ = [
    "Multiplicities",
    "SeifertPresentation",
    "NormalizedPresentation",
    "GluingData",
    "validate_multiplicities",
    "solve_unnormalized",
    "normalize",
    "gluing_data",
    "h1_order",
    "fiber_framing",
]


@dataclass(frozen=True)
class Multiplicities:
    """Fiber multiplicities (a_1, ..., a_n): n >= 3, each >= 2, pairwise coprime."""

    a: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.a) < 3:
            raise TooFewFibers(f"need at least 3 multiplicities, got {len(self.a)}")
        for x in self.a:
            if x < 2:
                raise MultiplicityTooSmall(f"multiplicity {x} < 2")
        for i in range(len(self.a)):
            for j in range(i + 1, len(self.a)):
                g = gcd(self.a[i], self.a[j])
                if g > 1:
                    raise NotCoprime(
                        f"gcd({self.a[i]}, {self.a[j]}) = {g} > 1"
                    )

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def product(self) -> int:
        """The exact product A = a_1 * ... * a_n."""
        return prod(self.a)


@dataclass(frozen=True)
class SeifertPresentation:
    """Surgery presentation (b; (a_1, b_1), ..., (a_n, b_n)).

    The defining identity A * sum(b_k / a_k) == 1 + b * A is checked exactly.
    Canonical form has b == 0.
    """

    multiplicities: Multiplicities
    b: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        a = self.multiplicities.a
        assert len(self.pairs) == len(a)
        assert all(p[0] == ai for p, ai in zip(self.pairs, a))
        big_a = self.multiplicities.product
        total = sum(Fraction(bk, ak) for ak, bk in self.pairs)
        if big_a * total != 1 + self.b * big_a:
            raise AssertionError(
                f"presentation identity violated: {big_a}*{total} != 1 + {self.b}*{big_a}"
            )

    @property
    def coefficients(self) -> tuple[int, ...]:
        return tuple(bk for _, bk in self.pairs)


@dataclass(frozen=True)
class NormalizedPresentation:
    """Normalized invariants: e0 together with b~_j in (-a_j, 0) and r_j = -b~_j/a_j."""

    e0: int
    tilde_b: tuple[int, ...]
    r: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        assert all(0 < rj < 1 for rj in self.r)


@dataclass(frozen=True)
class GluingData:
    """Solid-torus gluing columns: a_i*v_i - b_i*u_i = 1 with 0 < u_i < a_i."""

    u: tuple[int, ...]
    v: tuple[int, ...]


def validate_multiplicities(raw: Iterable[int]) -> Multiplicities:
    """Check and wrap a list of candidate multiplicities.

    Raises TooFewFibers, MultiplicityTooSmall or NotCoprime on bad input.
    """
    return Multiplicities(tuple(int(x) for x in raw))


def solve_unnormalized(m: Multiplicities) -> SeifertPresentation:
    """Produce the canonical presentation with b = 0.

    Each b_j starts as the representative of (A/a_j)^(-1) mod a_j in [0, a_j);
    the surplus is then absorbed into b_1 so that sum(b_k * A/a_k) == 1 holds
    on the nose.  The choice is deterministic: only b_1 is shifted.
    """
    big_a = m.product
    coeffs = []
    for aj in m.a:
        cofactor = big_a // aj
        coeffs.append(pow(cofactor, -1, aj) % aj)
    total = sum(bj * (big_a // aj) for bj, aj in zip(coeffs, m.a))
    shift, rem = divmod(total - 1, big_a)
    assert rem == 0, "residue sum must be 1 mod A by construction"
    coeffs[0] -= shift * m.a[0]
    pairs = tuple(zip(m.a, coeffs))
    return SeifertPresentation(multiplicities=m, b=0, pairs=pairs)


def normalize(p: SeifertPresentation) -> NormalizedPresentation:
    """Normalize a canonical presentation.

    b~_j is the representative of b_j mod a_j in (-a_j, 0) and
    e0 = sum(floor(-b_j / a_j)).  The identity
    sum(r_j) == -e0 - 1/A is asserted exactly.
    """
    if p.b != 0:
        raise ValueError("normalize expects the canonical presentation (b = 0)")
    tilde = []
    for aj, bj in p.pairs:
        res = bj % aj
        assert res != 0, "b_j is a unit mod a_j for a homology sphere"
        tilde.append(res - aj)
    e0 = sum((-bj) // aj for aj, bj in p.pairs)
    r = tuple(Fraction(-tb, aj) for tb, (aj, _) in zip(tilde, p.pairs))
    big_a = p.multiplicities.product
    assert sum(r) == -e0 - Fraction(1, big_a)
    return NormalizedPresentation(e0=e0, tilde_b=tuple(tilde), r=r)


def gluing_data(p: SeifertPresentation) -> GluingData:
    """Solve a_i*v_i - b_i*u_i = 1 with 0 < u_i < a_i for each fiber.

    The solution exists and is unique because b_i is a unit mod a_i.
    """
    us, vs = [], []
    for ai, bi in p.pairs:
        ui = (-pow(bi, -1, ai)) % ai
        vi, rem = divmod(1 + bi * ui, ai)
        assert rem == 0 and 0 < ui < ai
        assert ai * vi - bi * ui == 1
        us.append(ui)
        vs.append(vi)
    return GluingData(u=tuple(us), v=tuple(vs))


def h1_order(pairs: Sequence[tuple[int, int]]) -> int:
    """Order of the first homology of the surgery diagram with the given (a, b) pairs.

    Returns |a_1*...*a_n * sum(b_k / a_k)| as an exact integer; the value 0
    encodes infinite first homology.  Raises DivisionByZero if some a is 0.
    """
    for a, _ in pairs:
        if a == 0:
            raise DivisionByZero("surgery coefficient with a = 0")
    big_a = prod(a for a, _ in pairs)
    total = sum(b * (big_a // a) for a, b in pairs)
    return abs(total)


def fiber_framing(m: Multiplicities) -> int:
    """Framing of a regular fiber relative to the Seifert framing: A = a_1*...*a_n."""
    return m.product
