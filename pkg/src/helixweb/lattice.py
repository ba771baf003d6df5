"""Numerical K-theory of del Pezzo surfaces, in exact integer arithmetic.

A del Pezzo surface is either the blow-up of the plane in m <= 8 points
(``Surface.blowup(m)``, with ``blowup(0)`` serving as the plane itself) or
the smooth quadric P^1 x P^1 (``Surface.quadric()``).  Divisor classes are
integer vectors in a fixed basis: (h, e_1, ..., e_m) for blow-ups and the
two rulings (a, b) for the quadric.

Classes in the numerical K-group are stored as ``ChernClass`` triples
(rank, c_1, 2*ch_2).  The second Chern character is kept doubled so every
operation below is exact integer arithmetic; halves appear only in display
code.  The Euler pairing chi(v, w) is computed by Riemann-Roch, and the
canonical twist, slope comparison and sheaf normalization provide the
kernel that the mutation and helix layers are built on.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, InputError

BLOWUP = "blowup"
QUADRIC = "quadric"

MAX_BLOWUP_POINTS = 8


class SlopeOrder(enum.Enum):
    """Outcome of comparing two exceptional classes by slope."""

    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"

    def flipped(self) -> "SlopeOrder":
        if self is SlopeOrder.LESS:
            return SlopeOrder.GREATER
        if self is SlopeOrder.GREATER:
            return SlopeOrder.LESS
        return self


@dataclass(frozen=True)
class ChernClass:
    """Exact class in the numerical K-group: (rank, c_1, doubled ch_2)."""

    rank: int
    c1: tuple[int, ...]
    ch2_x2: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "c1", tuple(int(x) for x in self.c1))

    def negate(self) -> "ChernClass":
        return ChernClass(-self.rank, tuple(-x for x in self.c1), -self.ch2_x2)

    def add(self, other: "ChernClass") -> "ChernClass":
        if len(self.c1) != len(other.c1):
            raise InputError("cannot add classes of different Picard rank")
        return ChernClass(
            self.rank + other.rank,
            tuple(x + y for x, y in zip(self.c1, other.c1)),
            self.ch2_x2 + other.ch2_x2,
        )

    def scale(self, k: int) -> "ChernClass":
        return ChernClass(k * self.rank, tuple(k * x for x in self.c1), k * self.ch2_x2)

    def sub(self, other: "ChernClass") -> "ChernClass":
        return self.add(other.negate())


@dataclass(frozen=True)
class Surface:
    """A del Pezzo surface presented by its intersection lattice.

    Use the constructors :meth:`blowup` and :meth:`quadric`; the plane is
    ``blowup(0)``.
    """

    kind: str
    points: int = 0
    _gram: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.kind == BLOWUP:
            if not 0 <= self.points <= MAX_BLOWUP_POINTS:
                raise InputError(f"blow-up of {self.points} points is not del Pezzo")
        elif self.kind == QUADRIC:
            if self.points:
                raise InputError("the quadric carries no blow-up points")
        else:
            raise InputError(f"unknown surface kind {self.kind!r}")
        rho = self.picard_rank
        rows = []
        for i in range(rho):
            row = [0] * rho
            if self.kind == QUADRIC:
                row[1 - i] = 1
            else:
                row[i] = 1 if i == 0 else -1
            rows.append(tuple(row))
        object.__setattr__(self, "_gram", tuple(rows))

    @staticmethod
    def blowup(points: int) -> "Surface":
        return Surface(BLOWUP, points)

    @staticmethod
    def quadric() -> "Surface":
        return Surface(QUADRIC)

    @staticmethod
    def plane() -> "Surface":
        return Surface(BLOWUP, 0)

    @property
    def picard_rank(self) -> int:
        return 2 if self.kind == QUADRIC else self.points + 1

    @property
    def gram(self) -> tuple[tuple[int, ...], ...]:
        """Intersection form in the fixed basis."""
        return self._gram

    @property
    def basis_labels(self) -> tuple[str, ...]:
        if self.kind == QUADRIC:
            return ("a", "b")
        return ("h",) + tuple(f"e{i}" for i in range(1, self.points + 1))

    @property
    def canonical(self) -> tuple[int, ...]:
        """The canonical class K in divisor coordinates."""
        if self.kind == QUADRIC:
            return (-2, -2)
        return (-3,) + (1,) * self.points

    @property
    def anticanonical(self) -> tuple[int, ...]:
        return tuple(-x for x in self.canonical)

    @property
    def degree(self) -> int:
        """K^2; equals 9 - m for blow-ups and 8 for the quadric."""
        return self.intersection(self.canonical, self.canonical)

    @property
    def k_rank(self) -> int:
        """Rank of the numerical K-group, = picard_rank + 2."""
        return self.picard_rank + 2

    # -- divisor arithmetic -------------------------------------------------

    def _check_vector(self, v: tuple[int, ...]) -> tuple[int, ...]:
        if len(v) != self.picard_rank:
            raise InputError(
                f"divisor vector of length {len(v)} on a surface of Picard rank "
                f"{self.picard_rank}"
            )
        return tuple(int(x) for x in v)

    def intersection(self, u: tuple[int, ...], v: tuple[int, ...]) -> int:
        """Intersection number u.v of two divisor classes."""
        u = self._check_vector(u)
        v = self._check_vector(v)
        g = self._gram
        return sum(u[i] * g[i][j] * v[j] for i in range(len(u)) for j in range(len(v)))

    def line_bundle(self, c1: tuple[int, ...]) -> ChernClass:
        """Class of the line bundle O(D): rank 1, ch_2 = D^2/2."""
        c1 = self._check_vector(c1)
        return ChernClass(1, c1, self.intersection(c1, c1))

    def structure_sheaf(self) -> ChernClass:
        return ChernClass(1, (0,) * self.picard_rank, 0)

    # -- K-theory -----------------------------------------------------------

    def check_class(self, v: ChernClass) -> ChernClass:
        self._check_vector(v.c1)
        if (v.ch2_x2 + self.intersection(self.canonical, v.c1)) % 2:
            raise DomainError(f"non-integral class {v}: ch2_x2 + K.c1 is odd")
        return v

    def euler_pairing(self, v: ChernClass, w: ChernClass) -> int:
        """Euler pairing chi(v, w) by Riemann-Roch on the surface."""
        self._check_vector(v.c1)
        self._check_vector(w.c1)
        k = self.canonical
        doubled = (
            2 * v.rank * w.rank
            + v.rank * w.ch2_x2
            + w.rank * v.ch2_x2
            - 2 * self.intersection(v.c1, w.c1)
            - self.intersection(
                k,
                tuple(v.rank * y - w.rank * x for x, y in zip(v.c1, w.c1)),
            )
        )
        if doubled % 2:
            raise DomainError(
                "euler pairing is not an integer; a class violates integrality"
            )
        return doubled // 2

    def chi_from_structure(self, v: ChernClass) -> int:
        """chi(O, v); used as the integral third coordinate of the K-lattice."""
        return self.euler_pairing(self.structure_sheaf(), v)

    def k_coordinates(self, v: ChernClass) -> tuple[int, ...]:
        """Coordinates of v in an integral basis of the K-lattice.

        (rank, c_1, chi(O, v)) identifies the K-group with Z^(rho+2); the
        raw (rank, c_1, ch2_x2) coordinates span an index-2 sublattice, so
        unimodularity tests must run in these coordinates.
        """
        return (v.rank, *v.c1, self.chi_from_structure(v))

    def serre_twist(self, v: ChernClass, p: int) -> ChernClass:
        """Multiply v by ch(omega^p) for the canonical bundle omega."""
        v = self.check_class(v)
        k = self.canonical
        c1 = tuple(x + p * v.rank * kx for x, kx in zip(v.c1, k))
        ch2_x2 = (
            v.ch2_x2
            + 2 * p * self.intersection(v.c1, k)
            + p * p * v.rank * self.degree
        )
        return ChernClass(v.rank, c1, ch2_x2)

    def is_numerically_exceptional(self, v: ChernClass) -> bool:
        return self.euler_pairing(v, v) == 1

    def slope_num_den(self, v: ChernClass) -> tuple[int, int]:
        """(c_1.(-K), rank): the slope as an exact integer pair."""
        return (self.intersection(v.c1, self.anticanonical), v.rank)

    def slope(self, v: ChernClass) -> Fraction:
        """Slope mu = c_1.(-K)/rank of a positive-rank class."""
        num, den = self.slope_num_den(v)
        if den <= 0:
            raise DomainError("slope is defined for positive rank; torsion has mu = +infinity")
        return Fraction(num, den)

    def slope_compare(self, v: ChernClass, w: ChernClass) -> SlopeOrder:
        """Compare two sheaf-normalized exceptional classes.

        Positive ranks are compared by cross-multiplied slopes; identical
        classes are EQUAL and equal-slope distinct classes INCOMPARABLE.
        A torsion class dominates every positive-rank class; two torsion
        classes on the same curve compare by degree (stored in ch2_x2) and
        on distinct curves are INCOMPARABLE.
        """
        for x in (v, w):
            if not self.is_numerically_exceptional(x):
                raise DomainError(f"slope comparison needs exceptional classes, got {x}")
        if v == w:
            return SlopeOrder.EQUAL
        if v.rank > 0 and w.rank > 0:
            lhs = self.intersection(v.c1, self.anticanonical) * w.rank
            rhs = self.intersection(w.c1, self.anticanonical) * v.rank
            if lhs < rhs:
                return SlopeOrder.LESS
            if lhs > rhs:
                return SlopeOrder.GREATER
            return SlopeOrder.INCOMPARABLE
        if v.rank == 0 and w.rank > 0:
            return SlopeOrder.GREATER
        if w.rank == 0 and v.rank > 0:
            return SlopeOrder.LESS
        # both torsion
        if v.c1 == w.c1:
            if v.ch2_x2 < w.ch2_x2:
                return SlopeOrder.LESS
            if v.ch2_x2 > w.ch2_x2:
                return SlopeOrder.GREATER
            return SlopeOrder.EQUAL
        return SlopeOrder.INCOMPARABLE

    def sheaf_normalize(self, signed: ChernClass) -> tuple[ChernClass, int]:
        """Resolve the sign of an exceptional K-class.

        Every exceptional object is a shift of a sheaf, and [X[1]] = -[X],
        so each exceptional K-class has exactly one sheaf-like
        representative: positive rank, or rank zero with c_1.(-K) = +1
        (the supporting (-1)-curve meets -K once, by adjunction).  Returns
        the representative and a parity bit, 1 when negation was applied.
        """
        if not self.is_numerically_exceptional(signed):
            raise DomainError(f"cannot normalize non-exceptional class {signed}")
        if signed.rank > 0:
            return self.check_class(signed), 0
        if signed.rank < 0:
            return self.check_class(signed.negate()), 1
        deg = self.intersection(signed.c1, self.anticanonical)
        if deg == 1:
            return self.check_class(signed), 0
        if deg == -1:
            return self.check_class(signed.negate()), 1
        raise DomainError(
            f"torsion class {signed} has c1.(-K) = {deg}; not the class of an "
            "exceptional sheaf on a del Pezzo surface"
        )

    def describe_class(self, v: ChernClass) -> str:
        """Short human-readable form, with ch_2 displayed as a half-integer."""
        c1 = ",".join(str(x) for x in v.c1)
        if v.ch2_x2 % 2 == 0:
            ch2 = str(v.ch2_x2 // 2)
        else:
            ch2 = f"{v.ch2_x2}/2"
        return f"(r={v.rank}; c1=({c1}); ch2={ch2})"


def det_int(rows: list[list[int]]) -> int:
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InputError("determinant of a non-square matrix")
    if n == 0:
        return 1
    m = [list(map(int, r)) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]
