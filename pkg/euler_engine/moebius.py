# euler_engine/moebius.py
"""
moebius.py

Core PSL(2,R) arithmetic:
- canonical unit-determinant representatives (ProjMatrix)
- trace classification into identity / elliptic / parabolic / hyperbolic
- the action on the boundary circle, in angle coordinates
- one-parameter subgroups and rotations about points of the upper half-plane
- small hyperbolic-plane helpers (point action, distances, disk coordinates,
  isometries matching two pairs of points)

Boundary chart: a real point x of the half-plane boundary corresponds to the
angle 2*arg(x + 1j), i.e. twice the direction angle of the vector (x, 1).
This is the disk model through the Cayley transform followed by complex
conjugation. In this chart the normal form
    A_theta = [[cos t, -sin t], [sin t, cos t]]
acts on the circle by +2*theta, so counterclockwise rotations are positive.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List

import numpy as np

from euler_engine.config import DEFAULT_CONFIG, ToleranceConfig
from euler_engine.errors import (
    BoundaryCenter,
    IdentityInput,
    InvalidAngle,
    NonPositiveDeterminant,
    NotBoundaryFixing,
    NotElliptic,
)

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
# determinants this close to 1 are left unscaled so canonicalize is bit-idempotent
_DET_SNAP = 1e-14


class IsometryClass(str, Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class ProjMatrix:
    """Canonical SL(2,R) representative of an element of PSL(2,R). Build with canonicalize()."""

    a: float
    b: float
    c: float
    d: float

    @property
    def array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=float)

    @property
    def trace(self) -> float:
        return self.a + self.d

    def __matmul__(self, other: "ProjMatrix") -> "ProjMatrix":
        return canonicalize(self.array @ other.array)

    def inverse(self) -> "ProjMatrix":
        return canonicalize(np.array([[self.d, -self.b], [-self.c, self.a]]))

    def power(self, n: int) -> "ProjMatrix":
        """Integer power by repeated squaring (negative n uses the inverse)."""
        base = self.array if n >= 0 else self.inverse().array
        result = np.eye(2)
        k = abs(n)
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return canonicalize(result)

    def conjugate_by(self, g: "ProjMatrix") -> "ProjMatrix":
        """g M g^-1."""
        return g @ self @ g.inverse()

    def as_list(self) -> List[List[float]]:
        return [[self.a, self.b], [self.c, self.d]]

    def distance(self, other: "ProjMatrix") -> float:
        """Max-entry distance in PSL(2,R): the nearer of the two sign representatives."""
        diff, total = self.array - other.array, self.array + other.array
        return float(min(np.max(np.abs(diff)), np.max(np.abs(total))))


IDENTITY = ProjMatrix(1.0, 0.0, 0.0, 1.0)


def reduce_angle(phi: float) -> float:
    """Explicit reduction of an angle to [0, 2*pi)."""
    r = phi % TWO_PI
    return 0.0 if r >= TWO_PI else r


def angle_gap(phi: float, psi: float) -> float:
    """Distance between two boundary angles on the circle."""
    r = reduce_angle(phi - psi)
    return min(r, TWO_PI - r)


def canonicalize(raw, cfg: ToleranceConfig = DEFAULT_CONFIG) -> ProjMatrix:
    """
    Normalize a 2x2 real matrix of positive determinant to det 1 and pick the
    sign representative: trace > 0; or trace = 0 and c > 0; or trace = 0, c = 0, b > 0.
    """
    m = np.asarray(raw, dtype=float)
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if not det > cfg.tau_det:
        raise NonPositiveDeterminant(f"determinant {det!r} is not positive")
    if abs(det - 1.0) > _DET_SNAP:
        m = m / math.sqrt(det)
    a, b, c, d = (float(x) for x in m.ravel())
    tr = a + d
    if tr < 0 or (tr == 0 and (c < 0 or (c == 0 and b < 0))):
        a, b, c, d = -a, -b, -c, -d
    # + 0.0 turns negative zeros into positive ones
    return ProjMatrix(a + 0.0, b + 0.0, c + 0.0, d + 0.0)


def classify(M: ProjMatrix, cfg: ToleranceConfig = DEFAULT_CONFIG) -> IsometryClass:
    if float(np.max(np.abs(M.array - np.eye(2)))) <= cfg.tau_cls:
        return IsometryClass.IDENTITY
    tr = abs(M.trace)
    if tr < 2.0 - cfg.tau_cls:
        return IsometryClass.ELLIPTIC
    if tr <= 2.0 + cfg.tau_cls:
        if tr != 2.0:
            logger.debug("marginal parabolic classification, Tr - 2 = %.3e", tr - 2.0)
        return IsometryClass.PARABOLIC
    return IsometryClass.HYPERBOLIC


def is_marginal(M: ProjMatrix, cfg: ToleranceConfig = DEFAULT_CONFIG) -> bool:
    """True for a Parabolic verdict whose trace is not exactly 2."""
    return classify(M, cfg) is IsometryClass.PARABOLIC and abs(M.trace) != 2.0


def _positive_c_array(M: ProjMatrix) -> np.ndarray:
    # an elliptic SL(2,R) matrix has c != 0 and the sign of c is a conjugacy invariant
    arr = M.array
    return -arr if arr[1, 0] < 0 else arr


def _half_angle(arr: np.ndarray) -> float:
    h = 0.5 * (arr[0, 0] + arr[1, 1])
    s = math.sqrt(max(0.0, (1.0 - h) * (1.0 + h)))
    return math.atan2(s, h)


def rotation_angle(M: ProjMatrix, cfg: ToleranceConfig = DEFAULT_CONFIG) -> float:
    """Boundary rotation angle in (0, 2*pi) of an elliptic element."""
    if classify(M, cfg) is not IsometryClass.ELLIPTIC:
        raise NotElliptic(f"{M.as_list()} is not elliptic")
    return 2.0 * _half_angle(_positive_c_array(M))


def angle_to_vector(phi: float) -> np.ndarray:
    return np.array([math.cos(0.5 * phi), math.sin(0.5 * phi)])


def vector_to_angle(v) -> float:
    return reduce_angle(2.0 * math.atan2(float(v[1]), float(v[0])))


def circle_map(M: ProjMatrix, phi: float) -> float:
    """Image in [0, 2*pi) of the boundary point with angle phi."""
    x, y = math.cos(0.5 * phi), math.sin(0.5 * phi)
    return reduce_angle(2.0 * math.atan2(M.c * x + M.d * y, M.a * x + M.b * y))


def _kernel_direction(r1, r2) -> np.ndarray:
    v1 = np.array(r1, dtype=float)
    v2 = np.array(r2, dtype=float)
    return v1 if np.linalg.norm(v1) >= np.linalg.norm(v2) else v2


def fixed_boundary_angles(M: ProjMatrix, cfg: ToleranceConfig = DEFAULT_CONFIG) -> List[float]:
    """
    Boundary fixed points of a parabolic (one angle) or hyperbolic (attracting,
    then repelling) element.
    """
    cls = classify(M, cfg)
    a, b, c, d = M.a, M.b, M.c, M.d
    if cls is IsometryClass.PARABOLIC:
        n00, n01, n10, n11 = a - 1.0, b, c, d - 1.0
        return [vector_to_angle(_kernel_direction((-n01, n00), (-n11, n10)))]
    if cls is IsometryClass.HYPERBOLIC:
        t = M.trace
        lam_att = 0.5 * (t + math.sqrt(t * t - 4.0))
        angles = []
        for lam in (lam_att, 1.0 / lam_att):
            angles.append(vector_to_angle(_kernel_direction((b, lam - a), (lam - d, c))))
        return angles
    raise NotBoundaryFixing(f"{cls.value} element has no boundary fixed point")


def one_param(M: ProjMatrix, t: float, cfg: ToleranceConfig = DEFAULT_CONFIG) -> ProjMatrix:
    """
    Element at time t of the one-parameter subgroup through M (time 1 = M).
    Elliptic branch: the generator whose rotation angle matches rotation_angle(M).
    """
    cls = classify(M, cfg)
    if cls is IsometryClass.IDENTITY:
        raise IdentityInput("the identity lies on every one-parameter subgroup")
    eye = np.eye(2)
    if cls is IsometryClass.ELLIPTIC:
        arr = _positive_c_array(M)
        beta = _half_angle(arr)
        h = 0.5 * (arr[0, 0] + arr[1, 1])
        gen = (arr - h * eye) / math.sin(beta)
        return canonicalize(math.cos(t * beta) * eye + math.sin(t * beta) * gen)
    arr = M.array
    if cls is IsometryClass.PARABOLIC:
        return canonicalize(eye + t * (arr - eye))
    h = 0.5 * M.trace
    s = math.acosh(h)
    gen = (arr - h * eye) / math.sinh(s)
    return canonicalize(math.cosh(t * s) * eye + math.sinh(t * s) * gen)


def rotation_about_origin(psi: float) -> ProjMatrix:
    """Rotation by boundary angle psi about i (the disk center); psi is not reduced."""
    return canonicalize(np.array([
        [math.cos(0.5 * psi), -math.sin(0.5 * psi)],
        [math.sin(0.5 * psi), math.cos(0.5 * psi)],
    ]))


def translation_along_axis(length: float) -> ProjMatrix:
    """Translation by hyperbolic distance `length` along the geodesic from angle pi to angle 0."""
    return canonicalize(np.diag([math.exp(0.5 * length), math.exp(-0.5 * length)]))


def _frame_to(z: complex) -> np.ndarray:
    # SL(2,R) matrix sending i to z
    y = math.sqrt(z.imag)
    return np.array([[y, z.real / y], [0.0, 1.0 / y]])


def elliptic_about(center: complex, alpha: float, cfg: ToleranceConfig = DEFAULT_CONFIG) -> ProjMatrix:
    """Rotation by boundary angle alpha in (0, 2*pi) about a point of the upper half-plane."""
    if not (0.0 < alpha < TWO_PI) or not math.isfinite(alpha):
        raise InvalidAngle(f"rotation angle {alpha!r} not in (0, 2*pi)")
    z = complex(center)
    if not (z.imag > 0 and math.isfinite(z.real) and math.isfinite(z.imag)):
        raise BoundaryCenter(f"center {z!r} is not inside the upper half-plane")
    g = _frame_to(z)
    g_inv = np.array([[g[1, 1], -g[0, 1]], [0.0, g[0, 0]]])
    return canonicalize(g @ rotation_about_origin(alpha).array @ g_inv, cfg)


def mirror(M: ProjMatrix) -> ProjMatrix:
    """Conjugate by the orientation-reversing reflection z -> -conj(z)."""
    return canonicalize(np.array([[M.a, -M.b], [-M.c, M.d]]))


# -------------------------------
# Points of the hyperbolic plane
# -------------------------------
def apply_point(M: ProjMatrix, z: complex) -> complex:
    return (M.a * z + M.b) / (M.c * z + M.d)


def hyperbolic_distance(z: complex, w: complex) -> float:
    return math.acosh(1.0 + abs(z - w) ** 2 / (2.0 * z.imag * w.imag))


def disk_to_upper(w: complex) -> complex:
    wc = complex(w).conjugate()
    return 1j * (1.0 + wc) / (1.0 - wc)


def upper_to_disk(z: complex) -> complex:
    return ((z - 1j) / (z + 1j)).conjugate()


def polar_point(radius: float, angle: float) -> complex:
    """Point at hyperbolic distance `radius` from i, in direction `angle` of the disk chart."""
    return disk_to_upper(math.tanh(0.5 * radius) * complex(math.cos(angle), math.sin(angle)))


def _frame(p0: complex, p1: complex) -> ProjMatrix:
    # isometry sending i to p0 and the geodesic ray toward angle 0 through p1
    g = canonicalize(_frame_to(p0))
    w = upper_to_disk(apply_point(g.inverse(), p1))
    return g @ rotation_about_origin(math.atan2(w.imag, w.real))


def isometry_matching(p0: complex, p1: complex, q0: complex, q1: complex) -> ProjMatrix:
    """Unique orientation-preserving isometry with p0 -> q0 and p1 -> q1 (equal distances assumed)."""
    return _frame(q0, q1) @ _frame(p0, p1).inverse()


def commutator(A: ProjMatrix, B: ProjMatrix) -> ProjMatrix:
    """[A, B] = A B A^-1 B^-1."""
    return A @ B @ A.inverse() @ B.inverse()
