"""Star-shaped plumbing trees and their intersection forms.

The tree has one central vertex carrying e0 and one leg per singular fiber;
leg j carries the negative continued fraction expansion of a_j / b~_j.
Vertices are ordered center first, then legs in fiber order, each leg from the
center outward, so that index 0 always refers to the central vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

from . import _linalg
from .errors import InvalidRange, SingularMatrix
from .seifert import Multiplicities, NormalizedPresentation

__all__ = [
    "NegContinuedFraction",
    "PlumbingGraph",
    "IntersectionForm",
    "neg_cf",
    "build_plumbing",
    "intersection_form",
    "inverse_entry_11",
    "inverse_first_column",
]


@dataclass(frozen=True)
class NegContinuedFraction:
    """Expansion x = k_1 - 1/(k_2 - 1/(...)) with every k_i <= -2."""

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        assert self.entries, "empty expansion"
        assert all(k <= -2 for k in self.entries)

    def value(self) -> Fraction:
        """Evaluate the nested fraction back to the rational it expands."""
        x = Fraction(self.entries[-1])
        for k in reversed(self.entries[:-1]):
            x = k - Fraction(1) / x
        return x


@dataclass(frozen=True)
class PlumbingGraph:
    """Star-shaped weighted tree: central weight plus one weight chain per leg."""

    center_weight: int
    legs: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        for leg in self.legs:
            assert leg, "empty leg"
            assert all(w <= -2 for w in leg), "leg weights must be <= -2"

    @property
    def size(self) -> int:
        return 1 + sum(len(leg) for leg in self.legs)

    @property
    def weights(self) -> tuple[int, ...]:
        out = [self.center_weight]
        for leg in self.legs:
            out.extend(leg)
        return tuple(out)

    @property
    def vertex_order(self) -> tuple[tuple[int, int], ...]:
        """Canonical labels (j, i): (0, 0) is the center, (j, i) is vertex i of leg j (1-based)."""
        labels = [(0, 0)]
        for j, leg in enumerate(self.legs, start=1):
            labels.extend((j, i) for i in range(1, len(leg) + 1))
        return tuple(labels)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Tree edges as index pairs into the canonical vertex order."""
        out = []
        idx = 1
        for leg in self.legs:
            prev = 0
            for _ in leg:
                out.append((prev, idx))
                prev = idx
                idx += 1
        return tuple(out)


@dataclass(frozen=True)
class IntersectionForm:
    """Symmetric integer matrix of the plumbing, with exact determinant and definiteness."""

    Q: tuple[tuple[int, ...], ...]
    det: int
    negative_definite: bool
    graph: PlumbingGraph | None = field(default=None, compare=False)

    @property
    def m(self) -> int:
        return len(self.Q)

    @classmethod
    def from_matrix(cls, rows) -> "IntersectionForm":
        """Build a form from an explicit symmetric integer matrix."""
        q = tuple(tuple(int(x) for x in row) for row in rows)
        assert all(len(row) == len(q) for row in q), "matrix must be square"
        assert all(q[i][j] == q[j][i] for i in range(len(q)) for j in range(len(q)))
        det = _linalg.bareiss_determinant(q)
        pivots = _linalg.ldl_pivots(q)
        negdef = pivots is not None and all(p < 0 for p in pivots)
        return cls(Q=q, det=det, negative_definite=negdef)


def neg_cf(numerator: int, denominator: int) -> NegContinuedFraction:
    """Negative continued fraction expansion of numerator/denominator.

    Defined for rationals x < -1, where the expansion with all entries <= -2
    exists and is unique: take k = floor(x) (or x itself when integral) and
    recurse on -1/(x - k).
    """
    x = Fraction(numerator, denominator)
    if x >= -1:
        raise InvalidRange(f"{x} >= -1 has no all-(<= -2) expansion")
    entries = []
    while True:
        if x.denominator == 1:
            entries.append(int(x))
            break
        k = floor(x)
        entries.append(k)
        x = -1 / (x - k)
    out = NegContinuedFraction(entries=tuple(entries))
    assert out.value() == Fraction(numerator, denominator)
    return out


def build_plumbing(norm: NormalizedPresentation, m: Multiplicities) -> PlumbingGraph:
    """Plumbing tree with central weight e0 and leg j carrying neg_cf(a_j, b~_j)."""
    legs = tuple(
        neg_cf(aj, tbj).entries for aj, tbj in zip(m.a, norm.tilde_b)
    )
    return PlumbingGraph(center_weight=norm.e0, legs=legs)


def _leg_elimination(leg: tuple[int, ...]) -> list[Fraction]:
    """Pivots t_i of tip-first elimination along one leg (root first in the output).

    t_ell = w_ell and t_i = w_i - 1/t_{i+1}; t_1 equals the continued fraction
    value of the whole leg.  All pivots are < -1 when every weight is <= -2.
    """
    t: list[Fraction] = [Fraction(leg[-1])]
    for w in reversed(leg[:-1]):
        assert t[-1] != 0
        t.append(w - 1 / t[-1])
    t.reverse()
    return t


def _star_pivots(g: PlumbingGraph) -> tuple[list[Fraction], Fraction]:
    """All leg pivots plus the final central pivot of the leaf-first elimination."""
    all_pivots: list[Fraction] = []
    center = Fraction(g.center_weight)
    for leg in g.legs:
        t = _leg_elimination(leg)
        all_pivots.extend(t)
        center -= 1 / t[0]
    return all_pivots, center


def solve_star(g: PlumbingGraph, rhs: list[Fraction]) -> list[Fraction]:
    """Solve Q x = rhs in O(m) by eliminating each leg from the tip inward."""
    assert len(rhs) == g.size
    leg_t: list[list[Fraction]] = []
    leg_rho: list[list[Fraction]] = []
    pos = 1
    center = Fraction(g.center_weight)
    reduced_rhs = Fraction(rhs[0])
    for leg in g.legs:
        ell = len(leg)
        t = [Fraction(0)] * ell
        rho = [Fraction(0)] * ell
        for i in range(ell - 1, -1, -1):
            if i == ell - 1:
                t[i] = Fraction(leg[i])
                rho[i] = Fraction(rhs[pos + i])
            else:
                t[i] = leg[i] - 1 / t[i + 1]
                rho[i] = rhs[pos + i] - rho[i + 1] / t[i + 1]
        center -= 1 / t[0]
        reduced_rhs -= rho[0] / t[0]
        leg_t.append(t)
        leg_rho.append(rho)
        pos += ell
    if center == 0:
        raise SingularMatrix("central pivot vanishes")
    x0 = reduced_rhs / center
    x = [x0]
    for t, rho in zip(leg_t, leg_rho):
        prev = x0
        for ti, ri in zip(t, rho):
            prev = (ri - prev) / ti
            x.append(prev)
    return x


def intersection_form(g: PlumbingGraph) -> IntersectionForm:
    """Intersection matrix of the plumbing: weights on the diagonal, 1 for each edge.

    The determinant and definiteness are computed exactly from the leaf-first
    elimination pivots, which is linear in the number of vertices.
    """
    m = g.size
    rows = [[0] * m for _ in range(m)]
    rows[0][0] = g.center_weight
    idx = 1
    for leg in g.legs:
        prev = 0
        for w in leg:
            rows[idx][idx] = w
            rows[idx][prev] = rows[prev][idx] = 1
            prev = idx
            idx += 1
    q = tuple(tuple(r) for r in rows)
    pivots, center_pivot = _star_pivots(g)
    det = Fraction(1)
    for p in pivots:
        det *= p
    det *= center_pivot
    assert det.denominator == 1, "determinant of an integer matrix is an integer"
    negdef = center_pivot < 0 and all(p < 0 for p in pivots)
    return IntersectionForm(Q=q, det=int(det), negative_definite=negdef, graph=g)


def inverse_first_column(f: IntersectionForm) -> list[Fraction]:
    """First column of Q^{-1}, exactly.

    Uses the O(m) star solve when the form came from a plumbing graph, and
    dense exact elimination otherwise.
    """
    if f.det == 0:
        raise SingularMatrix("form has determinant zero")
    e1 = [Fraction(int(i == 0)) for i in range(f.m)]
    if f.graph is not None:
        x = solve_star(f.graph, e1)
    else:
        solved = _linalg.solve_exact(f.Q, e1)
        if solved is None:
            raise SingularMatrix("form has determinant zero")
        x = solved
    # Residual spot-check; the full product is checked in tests.
    if f.m <= 128:
        for i in range(f.m):
            assert sum(f.Q[i][j] * x[j] for j in range(f.m)) == e1[i]
    else:
        for i in (0, 1, f.m - 1):
            assert sum(f.Q[i][j] * x[j] for j in range(f.m)) == e1[i]
    return x


def inverse_entry_11(f: IntersectionForm) -> Fraction:
    """The (1,1) entry of Q^{-1} (indices as printed: the central vertex comes first)."""
    return inverse_first_column(f)[0]
