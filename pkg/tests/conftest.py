"""Shared fixtures and hypothesis strategies."""

import math

import numpy as np
import pytest
from hypothesis import strategies as st

from euler_engine.config import DEFAULT_CONFIG
from euler_engine.lift import Representation
from euler_engine.moebius import IDENTITY, canonicalize, rotation_about_origin

_entry = st.floats(min_value=-2.0, max_value=2.0, allow_nan=False, allow_infinity=False)


@st.composite
def isometries(draw):
    """Well-conditioned random PSL(2,R) elements."""
    a, b, c, d = (draw(_entry) for _ in range(4))
    det = a * d - b * c
    if det < 0:
        a, b = -a, -b
        det = -det
    if det < 0.1:
        # keep the normalized entries bounded
        a, d = a + 1.0, d + 1.0
        det = a * d - b * c
    if det < 0.1:
        return canonicalize(np.array([[1.0 + abs(a), b], [0.0, 1.0 / (1.0 + abs(a))]]))
    return canonicalize(np.array([[a, b], [c, d]]))


@st.composite
def hyperbolic_matrices(draw, max_trace=50.0):
    """Hyperbolic elements with prescribed trace, conjugated by a random element."""
    trace = draw(st.floats(min_value=2.05, max_value=max_trace))
    g = draw(isometries())
    lam = 0.5 * (trace + math.sqrt(trace * trace - 4.0))
    return canonicalize(np.diag([lam, 1.0 / lam])).conjugate_by(g)


@pytest.fixture
def cfg():
    return DEFAULT_CONFIG


@pytest.fixture
def trivial_genus2():
    return Representation(genus=2, pairs=((IDENTITY, IDENTITY), (IDENTITY, IDENTITY)))


@pytest.fixture
def parabolic_u1():
    return canonicalize([[1.0, 1.0], [0.0, 1.0]])


@pytest.fixture
def nondiscrete_rep(parabolic_u1):
    """A small rotation next to a parabolic; powers of the rotation give small-J elements."""
    A = rotation_about_origin(0.1)
    return Representation.from_pairs([(A, parabolic_u1), (parabolic_u1, A)])
