import math

import numpy as np
import pytest
from hypothesis import given, settings

from euler_engine.construct import build_euler, elementary_family
from euler_engine.discreteness import (
    commutator_trace,
    enumerate_words,
    format_word,
    generator_labels,
    is_elementary_pair,
    jorgensen,
    nondiscreteness_certificate,
)
from euler_engine.errors import InvalidDepth
from euler_engine.moebius import IDENTITY, canonicalize, commutator
from tests.conftest import isometries

U1 = canonicalize([[1.0, 1.0], [0.0, 1.0]])
L1 = canonicalize([[1.0, 0.0], [1.0, 1.0]])

# convergents of sqrt(2) - 1
CONVERGENTS = [(2, 5), (5, 12), (12, 29), (29, 70)]


def A(theta):
    return canonicalize([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])


class TestJorgensen:
    def test_modular_parabolics(self):
        assert jorgensen(U1, L1) == pytest.approx(1.0, abs=1e-12)

    def test_small_rotation_against_parabolic(self):
        theta = math.pi / 100
        assert jorgensen(A(theta), U1) == pytest.approx(5 * math.sin(theta) ** 2, abs=1e-12)

    def test_identity(self):
        assert jorgensen(IDENTITY, L1) == pytest.approx(0.0, abs=1e-12)
        assert is_elementary_pair(IDENTITY, L1)

    @given(isometries(), isometries(), isometries())
    def test_conjugation_invariant(self, X, Y, g):
        before = jorgensen(X, Y)
        after = jorgensen(X.conjugate_by(g), Y.conjugate_by(g))
        assert after == pytest.approx(before, rel=1e-8, abs=1e-8)

    @given(isometries(), isometries())
    def test_commutator_trace(self, X, Y):
        # the canonical representative only fixes the sign
        assert abs(commutator_trace(X, Y)) == pytest.approx(commutator(X, Y).trace, rel=1e-9, abs=1e-9)


class TestWords:
    def test_labels(self):
        assert generator_labels(2) == ["a1", "b1", "a2", "b2"]

    def test_format(self):
        assert format_word((("a1", 1), ("b2", -1))) == "a1 b2^-1"
        assert format_word(()) == "1"

    def test_counts_free_words(self):
        # two generic hyperbolics: no coincidences up to length 2
        X = canonicalize(np.diag([2.0, 0.5]))
        Y = canonicalize([[5.0, 4.0], [1.0, 1.0]])
        words = enumerate_words(["a1", "b1"], [X, Y], 2)
        assert len(words) == 4 + 4 * 3

    def test_duplicates_dropped(self):
        R = A(math.pi / 3)
        words = enumerate_words(["a1"], [R], 6)
        # a finite cyclic group of order 3 has two non-identity elements
        assert len(words) == 2


class TestCertificates:
    def test_discrete_image_has_none(self):
        assert nondiscreteness_certificate(build_euler(2, 1), depth=4) is None

    @pytest.mark.parametrize("genus,k", [(2, 2), (2, -1), (3, 3)])
    def test_realized_images_have_none(self, genus, k):
        assert nondiscreteness_certificate(build_euler(genus, k), depth=3) is None

    def test_nondiscrete_fixture(self, nondiscrete_rep):
        found = nondiscreteness_certificate(nondiscrete_rep, depth=2)
        assert found is not None
        first, second = found
        assert first.pair[0] == second.pair[0]
        assert first.value < 1 and second.value < 1
        assert first.pair[1] != second.pair[1]

    def test_report_values_recompute(self, nondiscrete_rep):
        first, _ = nondiscreteness_certificate(nondiscrete_rep, depth=2)
        words = {format_word(w): M for w, M in enumerate_words(generator_labels(2), nondiscrete_rep.generators(), 2)}
        s, t = (words[name] for name in first.pair)
        assert jorgensen(s, t) == pytest.approx(first.value, abs=1e-9)

    def test_depth_zero(self, nondiscrete_rep):
        with pytest.raises(InvalidDepth):
            nondiscreteness_certificate(nondiscrete_rep, depth=0)


class TestConvergingRotations:
    def test_discrete_members_converge_to_irrational_rotation(self):
        smallest = []
        for p, q in CONVERGENTS:
            rho = elementary_family(2, p / q)
            R = rho.pairs[0][0]
            # each member is a finite cyclic group: every pair commutes
            assert nondiscreteness_certificate(rho, depth=3) is None
            assert is_elementary_pair(R, R.power(2))
            smallest.append(min(R.power(j).distance(IDENTITY) for j in range(1, q)))
        # elements creep toward the identity
        assert smallest == sorted(smallest, reverse=True)
        assert smallest[-1] < 0.05
