"""Exceptional objects, collections, mutations and braid operations.

An ``ExcObject`` is the numerical shadow of an exceptional object: a
sheaf-normalized class together with an integer shift recording which
power of [1] was applied.  Every exceptional object on a del Pezzo
surface is a shift of a sheaf, and the Hom-complex of an exceptional
pair is concentrated in a single degree, so this pair of data determines
all Hom-level bookkeeping exactly.

Mutations act on classes by the unimodular transform
``[L_E X] = [X] - chi(E, X) [E]`` (and its mirror), with the shift of the
result resolved through sheaf normalization: a left mutation of sheaves
lands in degrees {0, 1}, a right mutation in {-1, 0}, so the parity bit
of the normalization is the whole story.

Only chi = 0 is ever used to decide orthogonality.  That is sound here
because of degree concentration, and it is the working notion throughout
this package: "exceptional" always means numerically exceptional, which
is necessary but not known to be sufficient for the existence of an
actual exceptional sheaf.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DomainError, InputError, MutationError, StructureError
from .lattice import ChernClass, SlopeOrder, Surface, det_int


@dataclass(frozen=True)
class ExcObject:
    """Sheaf-normalized exceptional class plus a shift."""

    surface: Surface
    cls: ChernClass
    shift: int = 0

    def __post_init__(self) -> None:
        normalized, parity = self.surface.sheaf_normalize(self.cls)
        if parity or normalized != self.cls:
            raise DomainError(
                f"class {self.cls} is not sheaf-normalized; use make_object"
            )

    def shifted(self, k: int) -> "ExcObject":
        return ExcObject(self.surface, self.cls, self.shift + k)

    def signed_class(self) -> ChernClass:
        """K-class including the sign (-1)^shift of the shift."""
        return self.cls if self.shift % 2 == 0 else self.cls.negate()

    def twist(self, p: int) -> "ExcObject":
        """Tensor by omega^p; sheaves go to sheaves, the shift is unchanged."""
        return ExcObject(self.surface, self.surface.serre_twist(self.cls, p), self.shift)

    def describe(self) -> str:
        s = self.surface.describe_class(self.cls)
        return s if self.shift == 0 else f"{s}[{self.shift}]"


def make_object(surface: Surface, cls: ChernClass, shift: int = 0) -> ExcObject:
    """Build an ExcObject from a possibly signed class, folding the sign
    into the shift."""
    normalized, parity = surface.sheaf_normalize(cls)
    return ExcObject(surface, normalized, shift + parity)


def line_object(surface: Surface, c1: tuple[int, ...], shift: int = 0) -> ExcObject:
    return ExcObject(surface, surface.line_bundle(c1), shift)


@dataclass(frozen=True)
class HomProfile:
    """Total Hom-complex of a pair: zero, or concentrated in one degree."""

    degree: int | None
    dim: int

    @staticmethod
    def zero() -> "HomProfile":
        return HomProfile(None, 0)

    @staticmethod
    def concentrated(degree: int, dim: int) -> "HomProfile":
        if dim <= 0:
            raise InputError("a concentrated profile needs positive dimension")
        return HomProfile(degree, dim)

    @property
    def is_zero(self) -> bool:
        return self.degree is None

    def euler(self) -> int:
        if self.is_zero:
            return 0
        return self.dim if self.degree % 2 == 0 else -self.dim

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return f"C^{self.dim}[{-self.degree}]"


def _pair_check(a: ExcObject, b: ExcObject) -> Surface:
    if a.surface != b.surface:
        raise InputError("objects live on different surfaces")
    return a.surface


def hom_profile(a: ExcObject, b: ExcObject) -> HomProfile:
    """Hom-complex profile of a numerically exceptional pair (a, b).

    The degree comes from slope comparison of the underlying sheaves
    (smaller slope maps in degree 0, larger in degree 1) shifted by the
    difference of the shift fields; the dimension is |chi|.  Raises when
    neither order of the two objects pairs to zero (then they cannot sit
    in any exceptional collection together), when the sheaf classes
    coincide, or when the computed sign is inconsistent with the
    concentration degree (such input is not the shadow of any genuine
    exceptional pair).
    """
    s = _pair_check(a, b)
    chi = s.euler_pairing(a.cls, b.cls)
    if chi == 0:
        return HomProfile.zero()
    if s.euler_pairing(b.cls, a.cls) != 0:
        raise DomainError(
            f"not an exceptional pair: ({a.describe()}, {b.describe()}) pairs "
            "to nonzero in both orders"
        )
    if a.cls == b.cls:
        raise DomainError("pair with identical sheaf classes is not exceptional")
    order = s.slope_compare(a.cls, b.cls)
    if order is SlopeOrder.INCOMPARABLE:
        raise DomainError(
            "incomparable pair with nonzero pairing cannot come from sheaves"
        )
    delta = 0 if order is SlopeOrder.LESS else 1
    if (chi > 0) != (delta == 0):
        raise DomainError(
            f"pair ({a.describe()}, {b.describe()}) has chi = {chi} against "
            f"concentration degree {delta}; not realizable by sheaves"
        )
    return HomProfile.concentrated(a.shift - b.shift + delta, abs(chi))


def left_mutate(e: ExcObject, x: ExcObject) -> ExcObject:
    """Left mutation of x through e at class level.

    Requires chi(x, e) = 0.  Orthogonal input returns x unchanged; otherwise
    the signed class [x] - chi(e, x)[e] is normalized, and the parity of the
    normalization is exactly the sheaf-level shift n in {0, 1}.
    """
    s = _pair_check(e, x)
    if s.euler_pairing(x.cls, e.cls) != 0:
        raise MutationError(
            f"left mutation undefined: chi({x.describe()}, {e.describe()}) != 0"
        )
    k = s.euler_pairing(e.cls, x.cls)
    if k == 0:
        return x
    signed = x.cls.sub(e.cls.scale(k))
    cls, parity = s.sheaf_normalize(signed)
    return ExcObject(s, cls, x.shift + parity)


def right_mutate(f: ExcObject, y: ExcObject) -> ExcObject:
    """Right mutation of y through f; mirror of :func:`left_mutate`,
    with sheaf-level shift in {-1, 0}."""
    s = _pair_check(f, y)
    if s.euler_pairing(f.cls, y.cls) != 0:
        raise MutationError(
            f"right mutation undefined: chi({f.describe()}, {y.describe()}) != 0"
        )
    k = s.euler_pairing(y.cls, f.cls)
    if k == 0:
        return y
    signed = y.cls.sub(f.cls.scale(k))
    cls, parity = s.sheaf_normalize(signed)
    return ExcObject(s, cls, y.shift - parity)


def mutate_through(sub: Sequence[ExcObject], x: ExcObject, side: str = "left") -> ExcObject:
    """Mutate x through a subcollection (E_1, ..., E_k).

    Left mutation composes as L_{E_1} ... L_{E_k}, right mutation as
    R_{E_k} ... R_{E_1}; the two are mutually inverse.
    """
    if side == "left":
        for e in reversed(sub):
            x = left_mutate(e, x)
        return x
    if side == "right":
        for e in sub:
            x = right_mutate(e, x)
        return x
    raise InputError(f"side must be 'left' or 'right', got {side!r}")


@dataclass(frozen=True)
class Collection:
    """An ordered exceptional collection; validated on construction.

    The defining condition chi(E_j, E_i) = 0 for i < j is checked for all
    pairs, together with exceptionality of each member.  Operations in
    this module only ever hand out validated collections.
    """

    surface: Surface
    objects: tuple[ExcObject, ...]

    def __post_init__(self) -> None:
        objects = tuple(self.objects)
        object.__setattr__(self, "objects", objects)
        for obj in objects:
            if obj.surface != self.surface:
                raise InputError("collection mixes objects from different surfaces")
        for j in range(len(objects)):
            for i in range(j):
                chi = self.surface.euler_pairing(objects[j].cls, objects[i].cls)
                if chi != 0:
                    raise StructureError(
                        f"not an exceptional collection: chi(E_{j + 1}, E_{i + 1}) "
                        f"= {chi} for objects {objects[j].describe()}, "
                        f"{objects[i].describe()}"
                    )

    def __len__(self) -> int:
        return len(self.objects)

    def __getitem__(self, i: int) -> ExcObject:
        return self.objects[i]

    def class_matrix(self) -> list[list[int]]:
        """Rows are K-lattice coordinates of the member classes."""
        return [list(self.surface.k_coordinates(o.cls)) for o in self.objects]

    def replace(self, objects: Iterable[ExcObject]) -> "Collection":
        return Collection(self.surface, tuple(objects))


def collection(surface: Surface, objects: Iterable[ExcObject]) -> Collection:
    return Collection(surface, tuple(objects))


def is_numerically_full(c: Collection) -> bool:
    """True when the member classes are a basis of the K-lattice.

    Needs n = rho + 2 vectors whose matrix of integral K-coordinates has
    determinant +-1.
    """
    if len(c) != c.surface.k_rank:
        return False
    return abs(det_int(c.class_matrix())) == 1


def is_pure(c: Collection) -> bool:
    """All shifts zero: the collection consists of sheaves."""
    return all(o.shift == 0 for o in c.objects)


def is_strong(c: Collection) -> bool:
    """Every forward Hom-complex vanishes or sits in degree 0."""
    for i in range(len(c)):
        for j in range(i + 1, len(c)):
            p = hom_profile(c[i], c[j])
            if not (p.is_zero or p.degree == 0):
                return False
    return True


def _orthogonal(s: Surface, a: ExcObject, b: ExcObject) -> bool:
    return (
        s.euler_pairing(a.cls, b.cls) == 0
        and s.euler_pairing(b.cls, a.cls) == 0
    )


@dataclass(frozen=True)
class BlockStructure:
    """Partition of a collection into consecutive, mutually orthogonal blocks.

    Stored as index lists, e.g. ((0,), (1, 2), (3,)) for a 3-block of a
    length-4 collection.
    """

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        flat = [i for b in self.blocks for i in b]
        if flat != list(range(len(flat))):
            raise StructureError(
                f"blocks {self.blocks} are not a consecutive partition"
            )

    def __len__(self) -> int:
        return len(self.blocks)


def is_block(c: Collection, partition: BlockStructure) -> bool:
    flat = [i for b in partition.blocks for i in b]
    if len(flat) != len(c):
        return False
    for block in partition.blocks:
        for i in block:
            for j in block:
                if i < j and not _orthogonal(c.surface, c[i], c[j]):
                    return False
    return True


def check_block(c: Collection, partition: BlockStructure) -> None:
    if not is_block(c, partition):
        raise StructureError(f"partition {partition.blocks} is not a block structure")


def sigma(c: Collection, i: int) -> Collection:
    """Braid generator on collections, 1-based index i in 2..n:
    (..., E_{i-1}, E_i, ...) -> (..., L_{E_{i-1}}(E_i)[-1], E_{i-1}, ...)."""
    n = len(c)
    if not 2 <= i <= n:
        raise InputError(f"sigma index {i} out of range 2..{n}")
    objs = list(c.objects)
    mutated = left_mutate(objs[i - 2], objs[i - 1]).shifted(-1)
    objs[i - 2], objs[i - 1] = mutated, objs[i - 2]
    return c.replace(objs)


def sigma_inverse(c: Collection, i: int) -> Collection:
    n = len(c)
    if not 2 <= i <= n:
        raise InputError(f"sigma index {i} out of range 2..{n}")
    objs = list(c.objects)
    mutated = right_mutate(objs[i - 1], objs[i - 2]).shifted(1)
    objs[i - 2], objs[i - 1] = objs[i - 1], mutated
    return c.replace(objs)


def tau(
    c: Collection, blocks: BlockStructure, i: int
) -> tuple[Collection, BlockStructure]:
    """Block mutation, 1-based block index i in 2..d: mutate every object of
    block i through block i-1, then swap the two blocks."""
    check_block(c, blocks)
    d = len(blocks)
    if not 2 <= i <= d:
        raise InputError(f"tau index {i} out of range 2..{d}")
    prev = [c[k] for k in blocks.blocks[i - 2]]
    cur = [c[k] for k in blocks.blocks[i - 1]]
    mutated = [mutate_through(prev, x, "left").shifted(-1) for x in cur]
    objs = list(c.objects)
    start = blocks.blocks[i - 2][0]
    objs[start : start + len(prev) + len(cur)] = mutated + prev
    sizes = [len(b) for b in blocks.blocks]
    sizes[i - 2], sizes[i - 1] = sizes[i - 1], sizes[i - 2]
    new_blocks = []
    pos = 0
    for size in sizes:
        new_blocks.append(tuple(range(pos, pos + size)))
        pos += size
    result = c.replace(objs)
    structure = BlockStructure(tuple(new_blocks))
    check_block(result, structure)
    return result, structure


def tau_inverse(
    c: Collection, blocks: BlockStructure, i: int
) -> tuple[Collection, BlockStructure]:
    check_block(c, blocks)
    d = len(blocks)
    if not 2 <= i <= d:
        raise InputError(f"tau index {i} out of range 2..{d}")
    prev = [c[k] for k in blocks.blocks[i - 2]]
    cur = [c[k] for k in blocks.blocks[i - 1]]
    mutated = [mutate_through(cur, x, "right").shifted(1) for x in prev]
    objs = list(c.objects)
    start = blocks.blocks[i - 2][0]
    objs[start : start + len(prev) + len(cur)] = cur + mutated
    sizes = [len(b) for b in blocks.blocks]
    sizes[i - 2], sizes[i - 1] = sizes[i - 1], sizes[i - 2]
    new_blocks = []
    pos = 0
    for size in sizes:
        new_blocks.append(tuple(range(pos, pos + size)))
        pos += size
    result = c.replace(objs)
    structure = BlockStructure(tuple(new_blocks))
    check_block(result, structure)
    return result, structure


@lru_cache(maxsize=4096)
def dual_objects(c: Collection) -> tuple[ExcObject, ...]:
    """Aligned duals (F_1, ..., F_n) with F_j = L_{E_1} ... L_{E_{j-1}}(E_j)."""
    out = []
    for j in range(len(c)):
        out.append(mutate_through(c.objects[:j], c[j], "left"))
    return tuple(out)


def dual_collection(c: Collection) -> Collection:
    """The dual collection (F_n, ..., F_1), reverse-indexed and validated."""
    if not is_numerically_full(c):
        raise StructureError("dual collection requires a numerically full collection")
    return Collection(c.surface, tuple(reversed(dual_objects(c))))


def shift_adjusted_pairing(a: ExcObject, b: ExcObject) -> int:
    """chi of the signed K-classes, shift signs included."""
    s = _pair_check(a, b)
    return s.euler_pairing(a.signed_class(), b.signed_class())
