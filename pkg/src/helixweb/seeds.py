"""Built-in geometric helix seeds and their block structures."""

from __future__ import annotations

from .errors import InputError
from .exceptional import BlockStructure, Collection, line_object
from .helices import Helix
from .lattice import Surface

SEED_NAMES = ("p2", "quadric", "dp1", "dp2")


def seed_helix(name: str) -> Helix:
    """One geometric helix per surface of small degree.

    p2      (O, O(h), O(2h))                                   on the plane
    quadric (O, O(1,0), O(0,1), O(1,1))                        on P1 x P1
    dp1     (O, O(h-e), O(h), O(2h-e))                         one blow-up
    dp2     (O, O(h-e1), O(h-e2), O(h), O(2h-e1-e2))           two blow-ups
    """
    if name == "p2":
        s = Surface.plane()
        c1s = [(0,), (1,), (2,)]
    elif name == "quadric":
        s = Surface.quadric()
        c1s = [(0, 0), (1, 0), (0, 1), (1, 1)]
    elif name == "dp1":
        s = Surface.blowup(1)
        c1s = [(0, 0), (1, -1), (1, 0), (2, -1)]
    elif name == "dp2":
        s = Surface.blowup(2)
        c1s = [(0, 0, 0), (1, -1, 0), (1, 0, -1), (1, 0, 0), (2, -1, -1)]
    else:
        raise InputError(f"unknown seed {name!r}; available: {', '.join(SEED_NAMES)}")
    return Helix(Collection(s, tuple(line_object(s, c) for c in c1s)))


def seed_blocks(name: str) -> BlockStructure | None:
    """Canonical 3-block structure of a seed thread, when it has one."""
    if name == "p2":
        return BlockStructure(((0,), (1,), (2,)))
    if name == "quadric":
        return BlockStructure(((0,), (1, 2), (3,)))
    return None
