from __future__ import annotations

import pytest

from helixweb import Collection, Surface, line_object, seed_helix


@pytest.fixture
def quadric() -> Surface:
    return Surface.quadric()


@pytest.fixture
def plane() -> Surface:
    return Surface.plane()


@pytest.fixture
def dp1() -> Surface:
    return Surface.blowup(1)


@pytest.fixture
def quadric_seed():
    return seed_helix("quadric")


def lines(surface: Surface, *c1s) -> Collection:
    return Collection(surface, tuple(line_object(surface, c) for c in c1s))
