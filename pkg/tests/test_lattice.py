from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helixweb import ChernClass, DomainError, InputError, SlopeOrder, Surface
from helixweb.lattice import det_int


def kunneth_chi(a: int, b: int) -> int:
    # chi of O(a,b) on the quadric by factorwise line-bundle cohomology
    return (a + 1) * (b + 1)


def plane_sections(d: int) -> int:
    # h^0(O(d)) on the plane: monomials of degree d in three variables
    return math.comb(d + 2, 2)


class TestSurface:
    def test_blowup_basics(self):
        s = Surface.blowup(3)
        assert s.picard_rank == 4
        assert s.canonical == (-3, 1, 1, 1)
        assert s.degree == 9 - 3
        assert s.basis_labels == ("h", "e1", "e2", "e3")

    def test_quadric_basics(self):
        s = Surface.quadric()
        assert s.picard_rank == 2
        assert s.canonical == (-2, -2)
        assert s.degree == 8

    def test_degree_range(self):
        for m in range(9):
            assert Surface.blowup(m).degree == 9 - m >= 1
        with pytest.raises(InputError):
            Surface.blowup(9)

    def test_signature_one_positive(self):
        # the intersection form has signature (1, rho-1): exactly one sign
        # change at the top of the characteristic polynomial, checked via
        # eigenvalue signs of the small integer matrix using sympy
        sympy = pytest.importorskip("sympy")
        for s in [Surface.quadric(), Surface.blowup(0), Surface.blowup(4)]:
            eigs = sympy.Matrix(s.gram).eigenvals()
            signs = [1 if e > 0 else -1 for e in eigs for _ in range(eigs[e])]
            assert signs.count(1) == 1
            assert signs.count(-1) == s.picard_rank - 1


class TestIntersection:
    def test_quadric_rulings(self, quadric):
        assert quadric.intersection((1, 0), (0, 1)) == 1
        assert quadric.intersection((1, 0), (1, 0)) == 0

    def test_blowup_basis(self, dp1):
        assert dp1.intersection((1, 0), (1, 0)) == 1
        assert dp1.intersection((0, 1), (0, 1)) == -1
        assert dp1.intersection((1, 0), (0, 1)) == 0

    def test_canonical_pairing(self, quadric):
        # K.(-1,1) expands to (-2)(1)(1) + (-2)(1)(-1) = 0
        assert quadric.intersection(quadric.canonical, (-1, 1)) == 0

    def test_dimension_mismatch(self, quadric):
        with pytest.raises(InputError):
            quadric.intersection((1, 0, 0), (0, 1))


class TestEulerPairing:
    def test_structure_sheaf_self(self, plane):
        o = plane.structure_sheaf()
        assert plane.euler_pairing(o, o) == 1

    def test_plane_line_bundle(self, plane):
        o = plane.structure_sheaf()
        for d in range(4):
            assert plane.euler_pairing(o, plane.line_bundle((d,))) == plane_sections(d)

    def test_quadric_kunneth(self, quadric):
        o = quadric.structure_sheaf()
        assert quadric.euler_pairing(quadric.line_bundle((1, 0)), quadric.line_bundle((0, 1))) == 0
        for a in range(-2, 3):
            for b in range(-2, 3):
                assert quadric.euler_pairing(o, quadric.line_bundle((a, b))) == kunneth_chi(a, b)

    def test_integrality_violation(self, quadric):
        bad = ChernClass(1, (0, 0), 1)  # ch2_x2 + K.c1 odd
        with pytest.raises(DomainError):
            quadric.euler_pairing(quadric.structure_sheaf(), bad)
        with pytest.raises(DomainError):
            quadric.check_class(bad)


class TestSerreTwist:
    def test_identity(self, quadric):
        v = quadric.line_bundle((1, 1))
        assert quadric.serre_twist(v, 0) == v

    def test_quadric_period(self, quadric):
        o = quadric.structure_sheaf()
        assert quadric.serre_twist(o, -1) == ChernClass(1, (2, 2), 8)

    def test_dp1_anticanonical(self, dp1):
        # -K = 3h - e and (3h - e)^2 = 8
        o = dp1.structure_sheaf()
        twisted = dp1.serre_twist(o, -1)
        assert twisted == ChernClass(1, (3, -1), 8)
        assert dp1.intersection((3, -1), (3, -1)) == 8


def integral_classes(surface: Surface):
    rho = surface.picard_rank
    k = surface.canonical

    def build(rank: int, c1: tuple[int, ...], half: int) -> ChernClass:
        parity = surface.intersection(k, c1) % 2
        return ChernClass(rank, c1, 2 * half + parity)

    return st.builds(
        build,
        st.integers(-4, 4),
        st.tuples(*[st.integers(-5, 5)] * rho),
        st.integers(-20, 20),
    )


class TestClassInvariants:
    @settings(max_examples=200)
    @given(v=integral_classes(Surface.quadric()), w=integral_classes(Surface.quadric()), p=st.integers(-3, 3), q=st.integers(-3, 3))
    def test_twist_group_law_and_chi_invariance(self, v, w, p, q):
        s = Surface.quadric()
        assert s.serre_twist(s.serre_twist(v, p), q) == s.serre_twist(v, p + q)
        assert s.euler_pairing(s.serre_twist(v, p), s.serre_twist(w, p)) == s.euler_pairing(v, w)

    def test_serre_duality_random(self):
        # chi(v, w) = chi(w, v x omega): the shift [2] is invisible in chi
        rng = random.Random(20260810)
        s = Surface.blowup(2)
        k = s.canonical

        def rand_class() -> ChernClass:
            c1 = tuple(rng.randint(-5, 5) for _ in range(3))
            parity = s.intersection(k, c1) % 2
            return ChernClass(rng.randint(-4, 4), c1, 2 * rng.randint(-20, 20) + parity)

        for _ in range(1000):
            v, w = rand_class(), rand_class()
            assert s.euler_pairing(v, w) == s.euler_pairing(w, s.serre_twist(v, 1))


class TestSlopeCompare:
    def test_examples(self, quadric):
        o = quadric.structure_sheaf()
        l10 = quadric.line_bundle((1, 0))
        l01 = quadric.line_bundle((0, 1))
        # mu(O) = 0, mu(O(1,0)) = 2 against -K = (2,2)
        assert quadric.slope(o) == Fraction(0)
        assert quadric.slope(l10) == Fraction(2)
        assert quadric.slope_compare(o, l10) is SlopeOrder.LESS
        assert quadric.slope_compare(l10, l01) is SlopeOrder.INCOMPARABLE
        assert quadric.slope_compare(l10, l10) is SlopeOrder.EQUAL

    def test_torsion_dominates(self, dp1):
        # O_e(0) on the exceptional curve: chi(O, O_e(d)) = d + 1 pins
        # ch2_x2 = 2d + 1
        torsion = ChernClass(0, (0, 1), 1)
        assert dp1.is_numerically_exceptional(torsion)
        assert dp1.euler_pairing(dp1.structure_sheaf(), torsion) == 1
        bundle = dp1.structure_sheaf()
        assert dp1.slope_compare(torsion, bundle) is SlopeOrder.GREATER
        assert dp1.slope_compare(bundle, torsion) is SlopeOrder.LESS

    def test_torsion_same_curve_by_degree(self, dp1):
        a = ChernClass(0, (0, 1), 1)
        b = ChernClass(0, (0, 1), 3)
        assert dp1.slope_compare(a, b) is SlopeOrder.LESS
        assert dp1.slope_compare(b, a) is SlopeOrder.GREATER

    def test_non_exceptional_rejected(self, quadric):
        with pytest.raises(DomainError):
            quadric.slope_compare(quadric.structure_sheaf(), ChernClass(2, (0, 0), 0))

    @settings(max_examples=150)
    @given(
        a=st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
        b=st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
    )
    def test_antisymmetry_on_line_bundles(self, a, b):
        s = Surface.quadric()
        v, w = s.line_bundle(a), s.line_bundle(b)
        order = s.slope_compare(v, w)
        assert s.slope_compare(w, v) is order.flipped()


class TestSheafNormalize:
    def test_shifted_line_bundle(self, quadric):
        signed = ChernClass(-1, (1, 0), 0)
        cls, parity = quadric.sheaf_normalize(signed)
        assert cls == ChernClass(1, (-1, 0), 0)
        assert parity == 1

    def test_identity_on_sheaf(self, quadric):
        o = quadric.structure_sheaf()
        assert quadric.sheaf_normalize(o) == (o, 0)

    def test_negated_torsion(self, dp1):
        # class of minus the structure sheaf of the exceptional curve
        signed = ChernClass(0, (0, -1), -1)
        cls, parity = dp1.sheaf_normalize(signed)
        assert parity == 1
        assert cls == ChernClass(0, (0, 1), 1)
        assert dp1.intersection(cls.c1, dp1.anticanonical) == 1

    def test_bad_torsion_rejected(self):
        # C = 2h - 2e1 - e2 has C^2 = -1 but C.(-K) = 3: numerically
        # exceptional yet not normalizable on a del Pezzo
        s = Surface.blowup(2)
        c1 = (2, -2, -1)
        cls = ChernClass(0, c1, 1 + 2 * 0)
        parity = s.intersection(s.canonical, c1) % 2
        cls = ChernClass(0, c1, parity)
        assert s.is_numerically_exceptional(cls)
        with pytest.raises(DomainError):
            s.sheaf_normalize(cls)


class TestSeedObjects:
    def test_every_builtin_object_is_exceptional(self):
        from helixweb import seed_helix

        for name in ("p2", "quadric", "dp1", "dp2"):
            h = seed_helix(name)
            s = h.surface
            for o in h.thread.objects:
                assert s.euler_pairing(o.cls, o.cls) == 1


class TestDetInt:
    def test_small(self):
        assert det_int([[2, 0], [0, 3]]) == 6
        assert det_int([[0, 1], [1, 0]]) == -1
        assert det_int([[1, 2], [2, 4]]) == 0

    def test_against_permutation_expansion(self):
        rng = random.Random(7)
        import itertools

        for _ in range(25):
            n = rng.randint(1, 4)
            m = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
            expected = 0
            for perm in itertools.permutations(range(n)):
                sign = 1
                seen = [False] * n
                p = list(perm)
                # parity by cycle counting
                for i in range(n):
                    if not seen[i]:
                        j, length = i, 0
                        while not seen[j]:
                            seen[j] = True
                            j = p[j]
                            length += 1
                        if length % 2 == 0:
                            sign = -sign
                term = sign
                for i in range(n):
                    term *= m[i][perm[i]]
                expected += term
            assert det_int(m) == expected
