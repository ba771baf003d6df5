"""Skew Euler matrices, arrow quivers and the tilt/mutation cross-check.

The rolled-up algebra of a geometric helix is a CY3 quiver algebra, so
its Euler form on simple classes is skew-symmetric and determines the
quiver: n_ij = max(b_ij, 0).  The entries are computed on the surface as
``b_ij = chi(F_i, F_j) - chi(F_j, F_i)`` over the dual collection of a
thread; pushing a sheaf to the canonical cone antisymmetrizes the Euler
form exactly this way, and the sign convention is calibrated against the
quadric seed quiver.

``fz_mutate`` is standard skew matrix mutation; conjugating the Euler
form by the simple-class base change of a vertex tilt reproduces it, and
``cross_check_tilt`` verifies on actual helices that tilting and matrix
mutation commute, up to the canonical vertex bijection.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, InvariantBreach, StructureError
from .exceptional import Collection, ExcObject, dual_objects, hom_profile, is_strong
from .helices import Helix, geometric_failure, tilt

Matrix = tuple[tuple[int, ...], ...]


def _as_matrix(rows) -> Matrix:
    out = tuple(tuple(int(x) for x in row) for row in rows)
    n = len(out)
    if any(len(row) != n for row in out):
        raise InputError("matrix rows have inconsistent lengths")
    return out


@dataclass(frozen=True)
class BMatrix:
    """Skew-symmetric integer exchange matrix."""

    b: Matrix

    def __post_init__(self) -> None:
        b = _as_matrix(self.b)
        object.__setattr__(self, "b", b)
        n = len(b)
        for i in range(n):
            for j in range(n):
                if b[i][j] != -b[j][i]:
                    raise StructureError("exchange matrix is not skew-symmetric")

    @property
    def n(self) -> int:
        return len(self.b)


@dataclass(frozen=True)
class Quiver:
    """Directed multigraph given by a non-negative multiplicity matrix.

    ``objects`` carries the vertex objects when the quiver came from a
    collection or helix; synthetic quivers leave it None.
    """

    arrows: Matrix
    objects: tuple[ExcObject, ...] | None = None

    def __post_init__(self) -> None:
        arrows = _as_matrix(self.arrows)
        object.__setattr__(self, "arrows", arrows)
        if any(x < 0 for row in arrows for x in row):
            raise StructureError("arrow multiplicities must be non-negative")
        if self.objects is not None:
            object.__setattr__(self, "objects", tuple(self.objects))
            if len(self.objects) != len(arrows):
                raise InputError("vertex object count differs from matrix size")

    @property
    def n(self) -> int:
        return len(self.arrows)

    def labels(self) -> tuple[str, ...]:
        if self.objects is None:
            return tuple(str(i) for i in range(self.n))
        return tuple(o.describe() for o in self.objects)

    def has_loops(self) -> bool:
        return any(self.arrows[i][i] != 0 for i in range(self.n))

    def has_two_cycles(self) -> bool:
        return any(
            self.arrows[i][j] > 0 and self.arrows[j][i] > 0
            for i in range(self.n)
            for j in range(i + 1, self.n)
        )

    def arrow_count(self) -> int:
        return sum(x for row in self.arrows for x in row)


def thread_quiver(c: Collection) -> Quiver:
    """Quiver of the homomorphism algebra of a full strong collection.

    Arrows i -> j are counted by the degree-1 part of Hom(F_j, F_i) over
    the dual collection; the matrix is strictly upper triangular in
    collection order.
    """
    if not is_strong(c):
        raise StructureError("the homomorphism quiver needs a strong collection")
    duals = dual_objects(c)
    n = len(c)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            p = hom_profile(duals[j], duals[i])
            if not p.is_zero and p.degree == 1:
                rows[i][j] = p.dim
    return Quiver(_as_matrix(rows), c.objects)


def rolled_b_matrix(h: Helix, thread_start: int = 0) -> BMatrix:
    """Skew Euler matrix of the rolled-up algebra of a geometric helix,
    with vertices ordered by the thread starting at ``thread_start``."""
    failure = geometric_failure(h)
    if failure is not None:
        raise StructureError(f"rolled-up matrix needs a geometric helix: {failure}")
    thread = h.thread_at(thread_start)
    duals = dual_objects(thread)
    s = h.surface
    n = h.n
    signed = [d.signed_class() for d in duals]
    rows = [
        [
            s.euler_pairing(signed[i], signed[j]) - s.euler_pairing(signed[j], signed[i])
            for j in range(n)
        ]
        for i in range(n)
    ]
    return BMatrix(_as_matrix(rows))


def rolled_quiver(b: BMatrix, objects: tuple[ExcObject, ...] | None = None) -> Quiver:
    """Quiver of a skew exchange matrix: n_ij = max(b_ij, 0)."""
    rows = [[max(x, 0) for x in row] for row in b.b]
    q = Quiver(_as_matrix(rows), objects)
    if q.has_loops() or q.has_two_cycles():
        raise InvariantBreach("skew matrix produced loops or 2-cycles")
    return q


def helix_quiver(h: Helix, thread_start: int = 0) -> Quiver:
    return rolled_quiver(rolled_b_matrix(h, thread_start), h.window(thread_start))


def fz_mutate(b: BMatrix, k: int) -> BMatrix:
    """Exchange matrix mutation at vertex k (0-based).

    Entries touching k flip sign; an entry (j, l) away from k changes by
    |b_kj| * b_kl exactly when b_kj and b_kl have opposite signs.  The
    operation is an involution and preserves skewness.
    """
    n = b.n
    if not 0 <= k < n:
        raise InputError(f"vertex {k} out of range 0..{n - 1}")
    m = b.b
    rows = []
    for j in range(n):
        row = []
        for l in range(n):
            if j == k or l == k:
                row.append(-m[j][l])
            elif m[k][j] * m[k][l] <= 0:
                row.append(m[j][l] + abs(m[k][j]) * m[k][l])
            else:
                row.append(m[j][l])
        rows.append(row)
    return BMatrix(_as_matrix(rows))


def tilted_simple_classes(b: BMatrix, i: int) -> Matrix:
    """Base change on simple classes induced by a vertex tilt at i.

    Column j holds the class of the new simple at vertex j in the old
    simple basis: the vertex object is negated (it was shifted by [-1])
    and every other simple gains ext^1-many copies of the old simple at
    i, read off as max(b_ji, 0).  Conjugating the Euler form by this
    matrix reproduces ``fz_mutate``; that identity is asserted here.
    """
    n = b.n
    if not 0 <= i < n:
        raise InputError(f"vertex {i} out of range 0..{n - 1}")
    cols = []
    for j in range(n):
        col = [0] * n
        if j == i:
            col[i] = -1
        else:
            col[j] = 1
            col[i] = max(b.b[j][i], 0)
        cols.append(col)
    t = tuple(tuple(cols[j][r] for j in range(n)) for r in range(n))
    conjugated = _as_matrix(
        [
            [
                sum(
                    t[r][j] * b.b[r][s] * t[s][l]
                    for r in range(n)
                    for s in range(n)
                )
                for l in range(n)
            ]
            for j in range(n)
        ]
    )
    if conjugated != fz_mutate(b, i).b:
        raise InvariantBreach(
            "simple-class conjugation disagrees with matrix mutation"
        )
    return t


def _same_vertex(a: ExcObject, b: ExcObject, span: int = 2) -> bool:
    """Whether two objects are equal up to a canonical twist (same mod-n
    vertex of the rolled-up quiver)."""
    if a.surface != b.surface or a.shift != b.shift:
        return False
    for p in range(-span, span + 1):
        if a.twist(p) == b:
            return True
    return False


@dataclass(frozen=True)
class TiltReport:
    """Outcome of checking a tilt edge against matrix mutation."""

    vertex: int
    match: bool
    b_before: BMatrix
    b_mutated: BMatrix
    b_tilted: BMatrix
    psi: tuple[int, ...]
    tilted: Helix


def vertex_bijection(before: Helix, after: Helix, vertex: int) -> tuple[int, ...]:
    """The canonical bijection of quiver vertices across a tilt: every
    non-tilted object keeps its vertex (identified up to twist), and the
    tilted vertex goes to the one remaining position."""
    n = before.n
    psi = [-1] * n
    used = set()
    for j in range(n):
        if j == vertex:
            continue
        matches = [
            k
            for k in range(n)
            if k not in used and _same_vertex(before.thread[j], after.thread[k])
        ]
        if len(matches) != 1:
            raise InvariantBreach(
                f"object {before.thread[j].describe()} matches positions "
                f"{matches} in the tilted thread"
            )
        psi[j] = matches[0]
        used.add(matches[0])
    rest = [k for k in range(n) if k not in used]
    if len(rest) != 1:
        raise InvariantBreach("tilted thread has no unique new vertex")
    psi[vertex] = rest[0]
    return tuple(psi)


def cross_check_tilt(h: Helix, vertex: int, direction: str = "left") -> TiltReport:
    """Tilt at a vertex and compare the rolled-up matrix of the result
    with the mutation of the original matrix, transported along the
    canonical vertex bijection."""
    b = rolled_b_matrix(h)
    tilted = tilt(h, vertex, direction)
    psi = vertex_bijection(h, tilted, vertex)
    b_tilted = rolled_b_matrix(tilted)
    b_mutated = fz_mutate(b, vertex)
    n = h.n
    match = all(
        b_tilted.b[psi[j]][psi[l]] == b_mutated.b[j][l]
        for j in range(n)
        for l in range(n)
    )
    return TiltReport(vertex, match, b, b_mutated, b_tilted, psi, tilted)
