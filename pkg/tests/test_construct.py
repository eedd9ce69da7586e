import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from euler_engine.construct import (
    WitnessWord,
    build_E_member,
    build_euler,
    concat,
    deform,
    elementary_family,
    flip,
    hyperbolic_as_elliptic_commutator,
    mirror,
    pad,
    random_conjugate,
    random_conjugator,
    snap_nonfaithful,
    trivial,
)
from euler_engine.config import ToleranceConfig
from euler_engine.discreteness import jorgensen
from euler_engine.errors import EulerOutOfRange, IdentityB1, NotHyperbolic, NotInE, RelationViolated
from euler_engine.lift import Representation, euler_class, parity, relation_residual
from euler_engine.moebius import (
    IDENTITY,
    IsometryClass,
    apply_point,
    canonicalize,
    classify,
    commutator,
    hyperbolic_distance,
    rotation_about_origin,
    rotation_angle,
)
from euler_engine.realize import realize_signature, realize_surface
from euler_engine.signature import parse_signature
from tests.conftest import hyperbolic_matrices

ALL_CLASSES = [(g, k) for g in (2, 3, 4) for k in range(-(2 * g - 2), 2 * g - 1)]


def pair_distance(rho, other):
    return max(max(A.distance(C), B.distance(D)) for (A, B), (C, D) in zip(rho.pairs, other.pairs))


class TestEllipticCommutator:
    def test_trace_seven(self):
        # quarter turn with t = 1 gives trace 2 + 4 + 1
        M = canonicalize(np.diag([0.5 * (7 + math.sqrt(45)), 0.5 * (7 - math.sqrt(45))]))
        A, B = hyperbolic_as_elliptic_commutator(M)
        assert commutator(A, B).distance(M) < 1e-8

    @settings(max_examples=100)
    @given(hyperbolic_matrices(max_trace=50.0))
    def test_factorization(self, M):
        A, B = hyperbolic_as_elliptic_commutator(M)
        assert classify(A) is IsometryClass.ELLIPTIC
        assert classify(B) is IsometryClass.ELLIPTIC
        assert commutator(A, B).distance(M) < 1e-8

    def test_not_hyperbolic(self):
        with pytest.raises(NotHyperbolic):
            hyperbolic_as_elliptic_commutator(rotation_about_origin(1.0))


class TestBuildEuler:
    @pytest.mark.parametrize("genus,k", ALL_CLASSES)
    def test_every_class(self, genus, k):
        rho = build_euler(genus, k)
        assert rho.genus == genus
        assert euler_class(rho) == k
        assert parity(rho) == (-1) ** (k % 2)

    def test_out_of_range(self):
        with pytest.raises(EulerOutOfRange):
            build_euler(2, 3)
        with pytest.raises(EulerOutOfRange):
            build_euler(3, -5)

    def test_odd_even_genus_uses_doubled_handles(self):
        rho = build_euler(2, 1)
        gens = realize_signature(parse_signature("1;2"))
        handle = gens.handles[0]
        # possibly flipped into (b, a) order to fix the orientation
        assert {rho.pairs[0], rho.pairs[1]} <= {handle, (handle[1], handle[0])}

    def test_zero_class_image_is_cyclic(self):
        rho = build_euler(3, 0)
        (T, _), *rest = rho.pairs
        assert classify(T) is IsometryClass.HYPERBOLIC
        assert all(A == IDENTITY and B == IDENTITY for A, B in rest)

    @pytest.mark.parametrize("genus,k", [(2, 1), (2, 2), (3, 3), (3, -4)])
    def test_images_pass_jorgensen(self, genus, k):
        gens = build_euler(genus, k).generators()
        for X in gens:
            for Y in gens:
                if commutator(X, Y).distance(IDENTITY) > 1e-6:
                    assert jorgensen(X, Y) >= 1 - 1e-9


class TestBookkeeping:
    def test_flip(self, trivial_genus2):
        assert flip(trivial_genus2) == trivial_genus2
        assert euler_class(flip(realize_surface(2))) == -2
        rho = build_euler(3, 3)
        assert flip(flip(rho)) == rho

    def test_flip_rejects_broken(self):
        T = canonicalize(np.diag([2.0, 0.5]))
        U = canonicalize([[1.0, 1.0], [0.0, 1.0]])
        with pytest.raises(RelationViolated):
            flip(Representation.from_pairs([(T, U)]))

    def test_pad(self, trivial_genus2):
        rho = build_euler(2, 1)
        assert pad(rho, []) == rho
        q = realize_signature(parse_signature("1;2")).q[0]
        padded = pad(rho, [q])
        assert padded.genus == 3 and euler_class(padded) == 1
        T = canonicalize(np.diag([2.0, 0.5]))
        grown = pad(trivial_genus2, [T])
        assert grown.genus == 3 and euler_class(grown) == 0

    def test_concat(self, trivial_genus2):
        assert euler_class(concat(build_euler(2, 1), build_euler(2, -1))) == 0
        assert euler_class(concat(build_euler(2, 1), trivial_genus2)) == 1
        both = concat(realize_surface(2), realize_surface(2))
        assert both.genus == 4 and euler_class(both) == 4

    def test_mirror_negates(self):
        assert euler_class(mirror(build_euler(3, 3))) == -3

    def test_trivial(self):
        assert euler_class(trivial(3)) == 0


class TestRandomConjugate:
    def test_same_seed_same_result(self):
        rho = build_euler(2, 1)
        assert pair_distance(random_conjugate(rho), random_conjugate(rho)) == 0.0

    def test_seed_changes_conjugator(self):
        rho = build_euler(2, 1)
        other = random_conjugate(rho, ToleranceConfig(seed=1))
        assert pair_distance(random_conjugate(rho), other) > 1e-6

    @pytest.mark.parametrize("genus, k", [(2, 1), (3, 3), (3, -2), (4, -6)])
    def test_class_and_parity_kept(self, genus, k):
        for seed in range(3):
            moved = random_conjugate(build_euler(genus, k), ToleranceConfig(seed=seed))
            assert relation_residual(moved) < 1e-6
            assert euler_class(moved) == k
            assert parity(moved) == (-1) ** (k % 2)

    def test_translation_bounded_by_spread(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            g = random_conjugator(rng, spread=0.5)
            assert hyperbolic_distance(1j, apply_point(g, 1j)) <= 0.5 + 1e-9


class TestDeform:
    def test_zero_time(self):
        rho = build_euler(2, 1)
        assert deform(rho, 0.0) is rho

    def test_identity_b1(self):
        rho = Representation.from_pairs([(rotation_about_origin(1.0), IDENTITY), (IDENTITY, IDENTITY)])
        with pytest.raises(IdentityB1):
            deform(rho, 0.5)

    def test_class_preserved(self):
        assert euler_class(deform(build_euler(3, 1), 0.37)) == 1

    def test_trace_moves_for_elliptic_pair(self):
        rho = build_E_member(3, 3)
        tr = lambda t: deform(rho, t).pairs[0][0].trace
        slope = (tr(1e-5) - tr(0.0)) / 1e-5
        assert abs(slope) > 1e-6

    @settings(max_examples=50, deadline=None)
    @given(st.sampled_from([(2, 1), (2, -2), (3, 3), (3, 0), (4, -5)]), st.floats(-1.0, 1.0))
    def test_relation_and_class(self, case, t):
        rho = build_euler(*case)
        moved = deform(rho, t)
        assert relation_residual(moved) <= max(10 * relation_residual(rho), 1e-10)
        assert euler_class(moved) == case[1]


class TestEMembers:
    @pytest.mark.parametrize("genus,k", [(2, -1), (2, 0), (2, 1), (3, -3), (3, -1), (3, 0), (3, 2), (3, 3)])
    def test_first_pair_elliptic(self, genus, k):
        rho = build_E_member(genus, k)
        A1, B1 = rho.pairs[0]
        assert classify(A1) is IsometryClass.ELLIPTIC
        assert classify(B1) is IsometryClass.ELLIPTIC
        assert euler_class(rho) == k

    def test_out_of_range(self):
        with pytest.raises(EulerOutOfRange):
            build_E_member(2, 2)


class TestSnap:
    @pytest.mark.parametrize("k", range(-3, 4))
    def test_witness(self, k):
        rho = build_E_member(3, k)
        snapped, witness = snap_nonfaithful(rho, 64)
        assert isinstance(witness, WitnessWord)
        ((name, q),) = witness.letters
        assert name == "a1" and q >= 2
        assert snapped.pairs[0][0].power(q).distance(IDENTITY) <= 1e-7
        assert euler_class(snapped) == k

    def test_quarter_turn(self):
        # rotation angle 1.57 on a1, so a quarter turn is within reach
        A = rotation_about_origin(1.57)
        rho = Representation.from_pairs([(A, A), (IDENTITY, IDENTITY)])
        snapped, witness = snap_nonfaithful(rho, 8)
        assert witness.letters == (("a1", 4),)
        assert rotation_angle(snapped.pairs[0][0]) == pytest.approx(math.pi / 2, abs=1e-10)

    def test_distance_shrinks_with_qmax(self):
        rho = build_E_member(3, 1)
        distances = [pair_distance(snap_nonfaithful(rho, q)[0], rho) for q in (4, 16, 64, 256)]
        assert distances == sorted(distances, reverse=True)

    def test_requires_elliptic_pair(self):
        with pytest.raises(NotInE):
            snap_nonfaithful(build_euler(2, 1), 8)


class TestElementaryFamily:
    def test_finite_cyclic(self):
        rho = elementary_family(2, 2 / 5)
        A = rho.pairs[0][0]
        assert A.power(5).distance(IDENTITY) < 1e-9
        assert euler_class(rho) == 0
