# euler_engine/lift.py
"""
lift.py

Elements of the universal cover of PSL(2,R), stored as lifted circle maps,
and the Euler class computed from a lifted surface relation.

A LiftedIsometry (base, u) is the unique increasing map f: R -> R with
f(x + 2*pi) = f(x) + 2*pi covering circle_map(base, .) and f(0) = u.
The central generator z is (I, 2*pi). For a representation sending the
surface relation to the identity, the lifted relation is z**e and e is the
Euler class.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np

from euler_engine.config import DEFAULT_CONFIG, ToleranceConfig
from euler_engine.errors import (
    DefectOutOfRange,
    InvalidInputError,
    NoBoundaryFixedPoint,
    NotElliptic,
    NotHyperbolicCommutator,
    RelationViolated,
    RoundingAmbiguous,
    SignAmbiguous,
)
from euler_engine.moebius import (
    IDENTITY,
    TWO_PI,
    IsometryClass,
    ProjMatrix,
    circle_map,
    classify,
    commutator,
    fixed_boundary_angles,
)

logger = logging.getLogger(__name__)

DEFAULT_BASEPOINTS = (0.0, 1.0, 2.5)


@dataclass(frozen=True)
class LiftedIsometry:
    base: ProjMatrix
    u: float

    def __call__(self, x: float) -> float:
        return lifted_apply(self, x)


@dataclass(frozen=True)
class Representation:
    """Images (A_i, B_i) of the standard generators a_i, b_i of the genus-g surface group."""

    genus: int
    pairs: Tuple[Tuple[ProjMatrix, ProjMatrix], ...]

    def __post_init__(self):
        pairs = tuple((A, B) for A, B in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if self.genus < 1:
            raise InvalidInputError(f"genus must be >= 1, got {self.genus}")
        if len(pairs) != self.genus:
            raise InvalidInputError(f"expected {self.genus} generator pairs, got {len(pairs)}")

    @classmethod
    def from_pairs(cls, pairs: Sequence[Tuple[ProjMatrix, ProjMatrix]]) -> "Representation":
        return cls(genus=len(pairs), pairs=tuple(pairs))

    def generators(self) -> Tuple[ProjMatrix, ...]:
        return tuple(M for pair in self.pairs for M in pair)


# -------------------------------
# Lifted maps
# -------------------------------
def displacement(M: ProjMatrix, x: float) -> float:
    """
    Continuous displacement D with x + D(x) covering circle_map(M, .).

    The canonical representative has no negative eigenvalue, so the angle from
    v(x) to M v(x) never crosses pi and the principal branch of atan2 is
    continuous. D is 2*pi-periodic with |D| < 2*pi.
    """
    c, s = math.cos(0.5 * x), math.sin(0.5 * x)
    mx, my = M.a * c + M.b * s, M.c * c + M.d * s
    return 2.0 * math.atan2(c * my - s * mx, c * mx + s * my)


def lifted_apply(L: LiftedIsometry, x: float) -> float:
    if x == 0.0:
        return L.u
    turns = round((L.u - displacement(L.base, 0.0)) / TWO_PI)
    return x + displacement(L.base, x) + TWO_PI * turns


def central(n: int = 1) -> LiftedIsometry:
    """z**n: the identity lifted to the translation by 2*pi*n."""
    return LiftedIsometry(IDENTITY, TWO_PI * n)


def lift_principal(M: ProjMatrix) -> LiftedIsometry:
    return LiftedIsometry(M, circle_map(M, 0.0))


def lift_positive_rotation(M: ProjMatrix, cfg: ToleranceConfig = DEFAULT_CONFIG) -> LiftedIsometry:
    """Lift of an elliptic element with displacement in (0, 2*pi) everywhere."""
    if classify(M, cfg) is not IsometryClass.ELLIPTIC:
        raise NotElliptic(f"{M.as_list()} is not elliptic")
    # an elliptic map has no fixed point, so the principal displacement never leaves (0, 2*pi)
    return lift_principal(M)


def lift_canonical(M: ProjMatrix, cfg: ToleranceConfig = DEFAULT_CONFIG) -> LiftedIsometry:
    """The lift fixing the lifts of a boundary fixed point of M."""
    cls = classify(M, cfg)
    if cls not in (IsometryClass.PARABOLIC, IsometryClass.HYPERBOLIC):
        raise NoBoundaryFixedPoint(f"{cls.value} element fixes no boundary point")
    phi0 = fixed_boundary_angles(M, cfg)[0]
    principal = lift_principal(M)
    shift = round((lifted_apply(principal, phi0) - phi0) / TWO_PI)
    return LiftedIsometry(M, principal.u - TWO_PI * shift)


def compose(L1: LiftedIsometry, L2: LiftedIsometry) -> LiftedIsometry:
    """L1 after L2."""
    return LiftedIsometry(L1.base @ L2.base, lifted_apply(L1, L2.u))


def inverse(L: LiftedIsometry) -> LiftedIsometry:
    base_inv = L.base.inverse()
    c = circle_map(base_inv, 0.0)
    return LiftedIsometry(base_inv, c - TWO_PI * round(lifted_apply(L, c) / TWO_PI))


def lifted_commutator(A: ProjMatrix, B: ProjMatrix) -> LiftedIsometry:
    """Commutator of lifts; independent of which lifts are chosen."""
    LA, LB = lift_principal(A), lift_principal(B)
    return compose(compose(compose(LA, LB), inverse(LA)), inverse(LB))


# -------------------------------
# Surface relation
# -------------------------------
def sl2_relation_product(rho: Representation) -> np.ndarray:
    """Product of commutators computed in SL(2,R); the sign of each representative cancels."""
    P = np.eye(2)
    for A, B in rho.pairs:
        a, b = A.array, B.array
        P = P @ a @ b @ np.linalg.inv(a) @ np.linalg.inv(b)
    return P


def relation_residual(rho: Representation) -> float:
    P = sl2_relation_product(rho)
    eye = np.eye(2)
    return float(min(np.max(np.abs(P - eye)), np.max(np.abs(P + eye))))


def check_relation(rho: Representation, cfg: ToleranceConfig) -> None:
    residual = relation_residual(rho)
    if residual > cfg.tau_rel:
        raise RelationViolated(f"surface relation residual {residual:.3e} exceeds {cfg.tau_rel:.1e}")


def lifted_relation(rho: Representation) -> LiftedIsometry:
    F = LiftedIsometry(IDENTITY, 0.0)
    for A, B in rho.pairs:
        F = compose(F, lifted_commutator(A, B))
    return F


def euler_class(
    rho: Representation,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
    basepoints: Iterable[float] = (0.0,),
) -> int:
    """
    Milnor's algorithm: the lifted relation is a translation by 2*pi*e.

    Args:
        rho: representation satisfying the relation within tau_rel
        cfg: tolerances
        basepoints: points at which the translation length is read off; all must agree

    Returns:
        the Euler class e
    """
    check_relation(rho, cfg)
    F = lifted_relation(rho)
    values = set()
    for x in basepoints:
        ratio = (lifted_apply(F, x) - x) / TWO_PI
        e = round(ratio)
        if abs(ratio - e) > cfg.tau_rnd:
            raise RoundingAmbiguous(f"lifted relation moves {x} by {ratio:.6f} turns")
        values.add(e)
    if len(values) != 1:
        raise RoundingAmbiguous(f"basepoints disagree: {sorted(values)}")
    e = values.pop()
    logger.debug("euler class %d for genus %d", e, rho.genus)
    return e


def parity(rho: Representation, cfg: ToleranceConfig = DEFAULT_CONFIG) -> int:
    """
    Sign s with prod [A_i, B_i] = s*I in SL(2,R).

    The relation is checked first, so a product near neither +I nor -I raises
    RelationViolated. Once it passes, exactly one sign lies within tau_rel, so
    the SignAmbiguous branch below is a guard that a valid input never reaches.
    """
    check_relation(rho, cfg)
    P = sl2_relation_product(rho)
    eye = np.eye(2)
    if np.max(np.abs(P - eye)) <= cfg.tau_rel:
        return 1
    if np.max(np.abs(P + eye)) <= cfg.tau_rel:
        return -1
    raise SignAmbiguous(f"SL(2,R) relation product {P.tolist()} is not near +I or -I")


def commutator_defect(A: ProjMatrix, B: ProjMatrix, cfg: ToleranceConfig = DEFAULT_CONFIG) -> int:
    """Integer eps with lifted_commutator(A, B) = lift_canonical([A, B]) * z**eps."""
    C = commutator(A, B)
    if classify(C, cfg) is not IsometryClass.HYPERBOLIC:
        raise NotHyperbolicCommutator(f"[A, B] is {classify(C, cfg).value}")
    ratio = (lifted_commutator(A, B).u - lift_canonical(C, cfg).u) / TWO_PI
    eps = round(ratio)
    if abs(ratio - eps) > cfg.tau_rnd or abs(eps) > 1:
        raise DefectOutOfRange(f"commutator defect {ratio:.6f} outside {{-1, 0, 1}}")
    return eps
