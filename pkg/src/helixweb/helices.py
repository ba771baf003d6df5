"""Helices of type (n, 3) on del Pezzo surfaces.

A helix is stored by one thread, the objects at indices 0..n-1; every
other object is produced by the canonical twist, since on a surface the
Serre functor shifted by [1-d] is exactly tensoring by omega.  All
operations below (turning the screw, braid mutations, relatedness,
height functions, vertex tilts) reduce to exact computations on one
period.

Geometricity is an infinite condition, but it reduces to a finite one:
twisting by omega^-1 raises the slope of a positive-rank class by
K^2 >= 1, so far enough into the future every pair is slope-increasing
and its Hom-complex sits in degree 0 automatically.  Two structural
facts sharpen the cut-off (see ``geometric_failure``): a geometric helix
cannot contain a torsion class, and all its shifts must agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, InputError, InvariantBreach, StructureError
from .exceptional import (
    Collection,
    ExcObject,
    HomProfile,
    dual_objects,
    hom_profile,
    is_numerically_full,
    is_strong,
    left_mutate,
    mutate_through,
    right_mutate,
)
from .lattice import SlopeOrder, Surface

D = 3  # on a surface, helices of sheaves force d = 3


@dataclass(frozen=True)
class Helix:
    """A helix of type (n, 3), presented by its thread at indices 0..n-1."""

    thread: Collection

    def __post_init__(self) -> None:
        n = self.thread.surface.k_rank
        if len(self.thread) != n:
            raise StructureError(
                f"helix thread must have length {n} = rank of the K-group, "
                f"got {len(self.thread)}"
            )
        if not is_numerically_full(self.thread):
            raise StructureError("helix thread is not numerically full")

    @property
    def surface(self) -> Surface:
        return self.thread.surface

    @property
    def n(self) -> int:
        return len(self.thread)

    def object_at(self, i: int) -> ExcObject:
        """Object at an arbitrary index; indices differing by n differ by
        a canonical twist, with the shift unchanged."""
        q, r = divmod(i, self.n)
        return self.thread[r].twist(-q)

    def window(self, start: int) -> tuple[ExcObject, ...]:
        return tuple(self.object_at(start + k) for k in range(self.n))

    def thread_at(self, start: int) -> Collection:
        return Collection(self.surface, self.window(start))

    def describe(self) -> str:
        return "(" + ", ".join(o.describe() for o in self.thread.objects) + ")"


def helix(thread: Collection) -> Helix:
    return Helix(thread)


def helix_from_window(surface: Surface, start: int, objs: list[ExcObject]) -> Helix:
    """Helix whose objects at indices start..start+n-1 are the given list."""
    n = surface.k_rank
    if len(objs) != n:
        raise InputError(f"window must contain {n} objects")
    base = []
    for j in range(n):
        q, k = divmod(j - start, n)
        base.append(objs[k].twist(-q))
    return Helix(Collection(surface, tuple(base)))


def reindex(h: Helix, r: int) -> Helix:
    """The helix with object_at(i) = h.object_at(i + r)."""
    return Helix(Collection(h.surface, h.window(r)))


def rho(h: Helix) -> Helix:
    """Turn the screw: shift all indices down by one."""
    return reindex(h, 1)


def sigma_helix(h: Helix, i: int) -> Helix:
    """Helix braid generator at index i (mod n): the object at positions
    congruent to i-1 becomes L_{E_{i-1}}(E_i)[-1] and E_{i-1} moves up."""
    n = h.n
    objs = []
    for j in range(n):
        if (j - i) % n == 0:
            objs.append(h.object_at(j - 1))
        elif (j - (i - 1)) % n == 0:
            objs.append(left_mutate(h.object_at(j), h.object_at(j + 1)).shifted(-1))
        else:
            objs.append(h.object_at(j))
    return Helix(Collection(h.surface, tuple(objs)))


def sigma_helix_inverse(h: Helix, i: int) -> Helix:
    n = h.n
    objs = []
    for j in range(n):
        if (j - (i - 1)) % n == 0:
            objs.append(h.object_at(j + 1))
        elif (j - i) % n == 0:
            objs.append(right_mutate(h.object_at(j), h.object_at(j - 1)).shifted(1))
        else:
            objs.append(h.object_at(j))
    return Helix(Collection(h.surface, tuple(objs)))


def find_reindexing(a: Helix, b: Helix, span: int = 3) -> int | None:
    """Return r with a.object_at(i + r) == b.object_at(i) for all i, if any."""
    if a.surface != b.surface or a.n != b.n:
        return None
    n = a.n
    for r in range(-span * n, span * n + 1):
        if all(a.object_at(r + k) == b.thread[k] for k in range(n)):
            return r
    return None


def equal_up_to_reindex(a: Helix, b: Helix) -> bool:
    return find_reindexing(a, b) is not None


# -- strongness and geometricity ---------------------------------------------


@lru_cache(maxsize=4096)
def strongness_failure(h: Helix) -> str | None:
    """None when every thread in one period is strong, else a diagnostic."""
    n = h.n
    for start in range(n):
        for i in range(start, start + n):
            for j in range(i + 1, start + n):
                a, b = h.object_at(i), h.object_at(j)
                try:
                    p = hom_profile(a, b)
                except DomainError as exc:
                    return f"pair ({a.describe()}, {b.describe()}): {exc}"
                if not (p.is_zero or p.degree == 0):
                    return (
                        f"thread at {start}: Hom({a.describe()}, {b.describe()}) "
                        f"concentrated in degree {p.degree}"
                    )
    return None


def is_strong_helix(h: Helix) -> bool:
    return strongness_failure(h) is None


def twist_bound(h: Helix) -> int:
    """Number of periods after which every forward pair is slope-increasing."""
    slopes = [h.surface.slope(o.cls) for o in h.thread.objects]
    spread = max(slopes) - min(slopes)
    return math.ceil(Fraction(spread, h.surface.degree)) + 1


@lru_cache(maxsize=4096)
def geometric_failure(h: Helix) -> str | None:
    """None when the helix is geometric, else a diagnostic string.

    A torsion member always eventually yields a degree-1 pair against a
    twisted positive-rank member, and unequal shifts always eventually
    yield a nonzero-degree pair, so either defect is immediate grounds
    for failure.  With equal shifts and positive ranks the condition is
    finite: pairs beyond the twist bound compare LESS and land in degree
    zero by concentration.
    """
    shifts = {o.shift for o in h.thread.objects}
    if len(shifts) > 1:
        return f"thread objects carry distinct shifts {sorted(shifts)}"
    torsion = [o for o in h.thread.objects if o.cls.rank == 0]
    if torsion:
        return f"thread contains the torsion class {torsion[0].describe()}"
    s = h.surface
    n = h.n
    horizon = n * (twist_bound(h) + 1)
    for i in range(n):
        a = h.object_at(i)
        for j in range(i + 1, i + horizon + 1):
            b = h.object_at(j)
            # Pairs more than a period apart are not exceptional pairs, but
            # slope still pins the possible degrees: a slope-increasing pair
            # maps in degrees {0, 1} with chi = h0 - h1, a slope-decreasing
            # pair has no degree-0 maps, and equal-slope distinct stables
            # only admit degree-1 maps.  Degree-0 concentration therefore
            # fails exactly in the cases below.
            order = s.slope_compare(a.cls, b.cls)
            chi = s.euler_pairing(a.cls, b.cls)
            if order is SlopeOrder.LESS and chi < 0:
                bad = f"chi = {chi} < 0 for a slope-increasing pair"
            elif order is SlopeOrder.GREATER and chi != 0:
                bad = f"chi = {chi} != 0 for a slope-decreasing pair"
            elif order is SlopeOrder.INCOMPARABLE and chi != 0:
                bad = f"chi = {chi} != 0 for an equal-slope pair"
            else:
                continue
            return f"Hom({a.describe()} at {i}, {b.describe()} at {j}): {bad}"
    return None


def is_geometric(h: Helix) -> bool:
    return geometric_failure(h) is None


# -- relatedness and levellings ------------------------------------------------


def p_relatedness(c: Collection, i: int, j: int) -> HomProfile:
    """Profile of Hom(F_j, F_i) for the duals of a full collection,
    1-based indices i <= j.  Zero means p-related for every p."""
    n = len(c)
    if not 1 <= i <= j <= n:
        raise InputError(f"need 1 <= i <= j <= {n}, got ({i}, {j})")
    if not is_numerically_full(c):
        raise StructureError("relatedness is defined for full collections")
    if i == j:
        return HomProfile.concentrated(0, 1)
    duals = dual_objects(c)
    return hom_profile(duals[j - 1], duals[i - 1])


@dataclass(frozen=True)
class Levelling:
    """Monotone integer labels for one period of objects."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if any(a > b for a, b in zip(values, values[1:])):
            raise StructureError(f"levelling {values} is not monotone")

    def __len__(self) -> int:
        return len(self.values)

    def value_at(self, i: int) -> int:
        """Periodic extension by phi(E_{i+n}) = phi(E_i) + d."""
        q, r = divmod(i, len(self.values))
        return self.values[r] + D * q


def check_helix_levelling(h: Helix, lev: Levelling) -> None:
    if len(lev) != h.n:
        raise StructureError("levelling length differs from the helix period")
    if lev.values[-1] > lev.values[0] + D:
        raise StructureError(
            f"levelling {lev.values} is not monotone across the periodic seam"
        )


def levelling_is_tilting(c: Collection, values: tuple[int, ...], m: int) -> bool:
    """Both clauses of the tilting-at-level-m condition on a collection:
    every pair involving a level-m object must be related exactly in the
    degree given by the level difference (or be orthogonal in the dual)."""
    n = len(c)
    for i in range(n):
        if values[i] != m:
            continue
        for j in range(n):
            p = values[j]
            if j >= i:
                prof = p_relatedness(c, i + 1, j + 1)
                need = p - m
            else:
                prof = p_relatedness(c, j + 1, i + 1)
                need = m - p
            if prof.is_zero:
                continue
            if prof.degree != need:
                return False
    return True


def _level_run(h: Helix, lev: Levelling, m: int) -> list[int]:
    """Absolute indices at level m; a consecutive run by monotonicity."""
    indices = []
    for r in range(h.n):
        diff = m - lev.values[r]
        if diff % D == 0:
            indices.append(r + (diff // D) * h.n)
    return sorted(indices)


def is_tilting_at_level(h: Helix, lev: Levelling, m: int) -> bool:
    """Helix tilting condition at level m, checked on a thread containing
    the whole level; independent of the choice of such thread."""
    check_helix_levelling(h, lev)
    run = _level_run(h, lev, m)
    if not run:
        return True
    if run[-1] - run[0] > h.n - 1:
        raise StructureError(f"level {m} does not fit in one thread")
    start = run[0]
    thread = h.thread_at(start)
    values = tuple(lev.value_at(start + k) for k in range(h.n))
    return levelling_is_tilting(thread, values, m)


@dataclass(frozen=True)
class HeightFunction:
    """A levelling isolating one object at level 0, tilting at level 0.

    ``index`` is the base-window position of the distinguished object;
    validity (isolation including twists, and the tilting condition) is
    checked by the constructor helpers, not here.
    """

    levelling: Levelling
    index: int


def check_height_function(h: Helix, hf: HeightFunction) -> None:
    check_helix_levelling(h, hf.levelling)
    vals = hf.levelling.values
    if vals[hf.index] != 0:
        raise StructureError("distinguished object is not at level 0")
    for k, v in enumerate(vals):
        if k != hf.index and v % D == 0:
            raise StructureError(
                f"object at position {k} hits level 0 after {v // D} twists"
            )
    if not is_tilting_at_level(h, hf.levelling, 0):
        raise StructureError("levelling is not tilting at level 0")


# -- reordering (adjacent orthogonal swaps) -----------------------------------


def _dual_order_violation(c: Collection) -> int | None:
    """First adjacent position (0-based) violating the dual ordering clause:
    dual f-degrees must be non-decreasing, and within an f-level the later
    dual must be slope-greater or incomparable."""
    duals = dual_objects(c)
    for i in range(len(c) - 1):
        a, b = duals[i], duals[i + 1]
        if b.shift < a.shift:
            return i
        if b.shift == a.shift:
            order = c.surface.slope_compare(b.cls, a.cls)
            if order is SlopeOrder.LESS:
                return i
            if order is SlopeOrder.EQUAL:
                raise StructureError("duplicate dual class in a full collection")
    return None


def reorder_collection(c: Collection) -> tuple[Collection, tuple[int, ...]]:
    """Reorder a full strong collection by adjacent orthogonal swaps until
    the dual ordering clauses hold.

    Returns the reordered collection and the permutation sending original
    positions to new positions.  Raises when a violating pair is not
    orthogonal (which degree concentration rules out for genuine inputs)
    or when no fixed point is reached within the swap budget.
    """
    if not is_numerically_full(c):
        raise StructureError("reordering is defined for full collections")
    objs = list(c.objects)
    perm = list(range(len(objs)))
    current = c
    budget = 4 * len(objs) * len(objs) + 8
    for _ in range(budget):
        pos = _dual_order_violation(current)
        if pos is None:
            inverse = [0] * len(perm)
            for new, old in enumerate(perm):
                inverse[old] = new
            return current, tuple(inverse)
        s = current.surface
        a, b = objs[pos], objs[pos + 1]
        if s.euler_pairing(a.cls, b.cls) != 0 or s.euler_pairing(b.cls, a.cls) != 0:
            raise StructureError(
                f"ordering clause fails at positions {pos},{pos + 1} but the "
                f"pair ({a.describe()}, {b.describe()}) is not orthogonal"
            )
        objs[pos], objs[pos + 1] = objs[pos + 1], objs[pos]
        perm[pos], perm[pos + 1] = perm[pos + 1], perm[pos]
        current = current.replace(objs)
    raise StructureError("reordering did not reach a fixed point")


# -- height function construction ---------------------------------------------


def _split_levelling(c: Collection, e_pos: int) -> list[int]:
    """Levelling on c tilting at the level of object e_pos.

    Each dual f-level splits into a lower and an upper part by slope
    comparison against the distinguished dual; incomparable duals are
    free and default to the lower part, except that monotonicity pins
    them to the upper part once a slope-greater dual has occurred in the
    same level.  The distinguished object goes in the lower part.
    """
    duals = dual_objects(c)
    f = [d.shift for d in duals]
    if any(b < a for a, b in zip(f, f[1:])):
        raise StructureError(f"dual f-degrees {f} are not monotone; reorder first")
    a_cls = duals[e_pos].cls
    s = c.surface
    values: list[int] = []
    seen_upper_in: dict[int, bool] = {}
    for j, dual in enumerate(duals):
        q = f[j]
        if j == e_pos:
            upper = False
        else:
            order = s.slope_compare(dual.cls, a_cls)
            if order is SlopeOrder.EQUAL:
                raise StructureError("duplicate dual class in a full collection")
            if order is SlopeOrder.GREATER:
                upper = True
            elif order is SlopeOrder.LESS:
                upper = False
                if seen_upper_in.get(q):
                    raise StructureError(
                        "slope split is inconsistent with the dual ordering; "
                        "the collection does not satisfy the reorder clauses"
                    )
            else:
                upper = bool(seen_upper_in.get(q))
        seen_upper_in[q] = seen_upper_in.get(q, False) or upper
        values.append(q + 1 if upper else q)
    if any(b < a for a, b in zip(values, values[1:])):
        raise StructureError(f"constructed levelling {values} is not monotone")
    return values


def collection_height_function(c: Collection, e_pos: int) -> tuple[int, ...]:
    """A height function for the object at e_pos (0-based) in a full strong
    collection, built by the split construction plus isolation of the
    distinguished object, normalized to phi(E) = 0."""
    values = _split_levelling(c, e_pos)
    p = values[e_pos]
    out = []
    for j, v in enumerate(values):
        if j != e_pos and v == p:
            out.append(p - 1 if j < e_pos else p + 1)
        else:
            out.append(v)
    out = [v - p for v in out]
    if any(b < a for a, b in zip(out, out[1:])):
        raise StructureError(f"isolated levelling {out} is not monotone")
    if not levelling_is_tilting(c, tuple(out), 0):
        raise StructureError("constructed levelling fails the tilting condition")
    return tuple(out)


def build_height_function(h: Helix, index: int) -> HeightFunction:
    """Height function for the object at base position ``index`` of a
    strong helix, on the thread starting at that object.

    Free choices are resolved deterministically: the distinguished dual
    goes in the lower split part, and free duals take the lowest level
    monotonicity allows, which minimizes the thread-end value.  When the
    thread violates the dual ordering clauses it is reordered first; the
    result must still be monotone in helix order to define a levelling
    of the helix.
    """
    n = h.n
    failure = strongness_failure(h)
    if failure is not None:
        raise StructureError(f"height functions require a strong helix: {failure}")
    start = index
    thread = h.thread_at(start)
    try:
        values = collection_height_function(thread, 0)
    except StructureError:
        reordered, perm = reorder_collection(thread)
        e_pos = perm[0]
        permuted = collection_height_function(reordered, e_pos)
        values = tuple(permuted[perm[k]] for k in range(n))
        if any(b < a for a, b in zip(values, values[1:])):
            raise StructureError(
                "reordered height function is not monotone in helix order"
            )
    base_values = [0] * n
    for k in range(n):
        i = start + k
        q, r = divmod(i, n)
        base_values[r] = values[k] - D * q
    hf = HeightFunction(Levelling(tuple(base_values)), index % n)
    check_height_function(h, hf)
    return hf


def enumerate_height_functions(
    c: Collection, e: ExcObject | int, value_bound: int
) -> list[tuple[int, ...]]:
    """All height functions for an object of a strong collection with
    values in [-value_bound, value_bound].

    Exhaustive over monotone integer labelings isolating the object at
    level 0; unbounded families are reported within the bound only.
    """
    if value_bound < 0:
        raise InputError("value bound must be non-negative")
    if isinstance(e, ExcObject):
        try:
            e_pos = c.objects.index(e)
        except ValueError:
            raise InputError("distinguished object is not in the collection") from None
    else:
        e_pos = e
        if not 0 <= e_pos < len(c):
            raise InputError(f"index {e_pos} out of range")
    if not is_strong(c):
        raise StructureError("height functions are defined on strong collections")
    n = len(c)
    found: list[tuple[int, ...]] = []

    def extend(prefix: list[int]) -> None:
        k = len(prefix)
        if k == n:
            values = tuple(prefix)
            if levelling_is_tilting(c, values, 0):
                found.append(values)
            return
        if k == e_pos:
            if not prefix or prefix[-1] <= 0:
                extend(prefix + [0])
            return
        low = prefix[-1] if prefix else -value_bound
        for v in range(max(low, -value_bound), value_bound + 1):
            if v == 0:
                continue
            if k < e_pos and v > 0:
                break
            extend(prefix + [v])

    extend([])
    return found


# -- levelled mutations and tilts ----------------------------------------------


def sigma_levelled(
    h: Helix, lev: Levelling, m: int
) -> tuple[Helix, Levelling]:
    """Levelled helix mutation at level m: objects of level m are mutated
    left through level m-1 and shifted by [-1], then the two levels swap
    places.  Index positions outside the two levels are untouched."""
    check_helix_levelling(h, lev)
    n = h.n
    run_m = _level_run(h, lev, m)
    run_prev = _level_run(h, lev, m - 1)
    if not run_m:
        return h, lev
    if run_prev and run_prev[-1] + 1 != run_m[0]:
        raise StructureError("levels m-1 and m are not adjacent runs")
    window_start = run_prev[0] if run_prev else run_m[0]
    prev_objs = [h.object_at(i) for i in run_prev]
    cur_objs = [h.object_at(i) for i in run_m]
    mutated = [mutate_through(prev_objs, x, "left").shifted(-1) for x in cur_objs]
    replaced = mutated + prev_objs
    objs = []
    vals = []
    for i in range(window_start, window_start + n):
        off = i - window_start
        if off < len(replaced):
            objs.append(replaced[off])
            vals.append(m - 1 if off < len(mutated) else m)
        else:
            objs.append(h.object_at(i))
            vals.append(lev.value_at(i))
    new_h = helix_from_window(h.surface, window_start, objs)
    base_vals = [0] * n
    for k in range(n):
        i = window_start + k
        q, r = divmod(i, n)
        base_vals[r] = vals[k] - D * q
    return new_h, Levelling(tuple(base_vals))


def sigma_levelled_inverse(
    h: Helix, lev: Levelling, m: int
) -> tuple[Helix, Levelling]:
    """Inverse levelled mutation: objects of level m-1 are mutated right
    through level m and shifted by [1], then the levels swap places."""
    check_helix_levelling(h, lev)
    n = h.n
    run_m = _level_run(h, lev, m)
    run_prev = _level_run(h, lev, m - 1)
    if not run_prev:
        return h, lev
    if run_m and run_prev[-1] + 1 != run_m[0]:
        raise StructureError("levels m-1 and m are not adjacent runs")
    window_start = run_prev[0]
    prev_objs = [h.object_at(i) for i in run_prev]
    cur_objs = [h.object_at(i) for i in run_m]
    mutated = [mutate_through(cur_objs, x, "right").shifted(1) for x in prev_objs]
    replaced = cur_objs + mutated
    objs = []
    vals = []
    for i in range(window_start, window_start + n):
        off = i - window_start
        if off < len(replaced):
            objs.append(replaced[off])
            vals.append(m - 1 if off < len(cur_objs) else m)
        else:
            objs.append(h.object_at(i))
            vals.append(lev.value_at(i))
    new_h = helix_from_window(h.surface, window_start, objs)
    base_vals = [0] * n
    for k in range(n):
        i = window_start + k
        q, r = divmod(i, n)
        base_vals[r] = vals[k] - D * q
    return new_h, Levelling(tuple(base_vals))


def tilt(h: Helix, vertex: int, direction: str = "left") -> Helix:
    """Tilt a geometric helix at a vertex (0-based thread position).

    A height function for the vertex object is built internally; the left
    tilt mutates the object through level -1, the right tilt through
    level +1.  The result is re-validated to be geometric, which the
    theory guarantees; a failure is reported as an invariant breach.
    For d = 3 the two directions agree up to reindexing.
    """
    n = h.n
    if not 0 <= vertex < n:
        raise InputError(f"vertex {vertex} out of range 0..{n - 1}")
    if direction not in ("left", "right"):
        raise InputError(f"direction must be 'left' or 'right', got {direction!r}")
    failure = geometric_failure(h)
    if failure is not None:
        raise StructureError(f"tilt requires a geometric helix: {failure}")
    hf = build_height_function(h, vertex)
    if direction == "left":
        tilted, _ = sigma_levelled(h, hf.levelling, 0)
    else:
        tilted, _ = sigma_levelled_inverse(h, hf.levelling, 1)
    failure = geometric_failure(tilted)
    if failure is not None:
        raise InvariantBreach(
            f"tilt of {h.describe()} at vertex {vertex} is not geometric: {failure}; "
            f"got {tilted.describe()}"
        )
    return tilted
