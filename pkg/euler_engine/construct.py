# euler_engine/construct.py
"""
construct.py

Explicit surface-group representations.

Responsibilities:
- every Euler class |k| <= 2g - 2 with discrete image (build_euler)
- hyperbolic elements written as commutators of two elliptics
- bookkeeping operations: flip, pad, concat, conjugate, mirror
- deformations along a one-parameter subgroup that keep [A_1, B_1] fixed
- snapping a deformation to a nearby non-faithful representation
- members of the set E (first pair elliptic-elliptic) for each admissible class
"""

import bisect
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from euler_engine.config import DEFAULT_CONFIG, ToleranceConfig
from euler_engine.errors import (
    EulerOutOfRange,
    FirstCommutatorNotHyperbolic,
    IdentityB1,
    InvalidInputError,
    NoRationalInRange,
    NotHyperbolic,
    NotInE,
    VerificationError,
)
from euler_engine.lift import Representation, check_relation, euler_class
from euler_engine.moebius import (
    IDENTITY,
    TWO_PI,
    IsometryClass,
    ProjMatrix,
    angle_to_vector,
    canonicalize,
    classify,
    commutator,
    elliptic_about,
    fixed_boundary_angles,
    mirror as mirror_matrix,
    one_param,
    rotation_about_origin,
    translation_along_axis,
)
from euler_engine.realize import realize_signature, realize_surface
from euler_engine.signature import Signature
from euler_engine.utils import farey_fractions

logger = logging.getLogger(__name__)

# boundary angle of the elliptic used to pad E-members
E_PAD_ANGLE = 1.0
FIRST_PAIR_RETRIES = 5
SNAP_GRID = np.linspace(-1.0, 1.0, 401)
SNAP_TOL = 1e-12
WITNESS_TOL = 1e-7
# Newton polish of the closing handle pair
CLOSE_ITERATIONS = 4
CLOSE_STEP = 1e-6
CLOSE_TOL = 1e-15


@dataclass(frozen=True)
class WitnessWord:
    """A word that is nontrivial in the surface group but maps (numerically) to the identity."""

    letters: Tuple[Tuple[str, int], ...]
    residual: float

    def __str__(self) -> str:
        return " ".join(f"{name}^{exp}" for name, exp in self.letters)


# -------------------------------
# Bookkeeping
# -------------------------------
def trivial(genus: int) -> Representation:
    return Representation(genus=genus, pairs=((IDENTITY, IDENTITY),) * genus)


def flip(rho: Representation, cfg: ToleranceConfig = DEFAULT_CONFIG) -> Representation:
    """rho'(a_i) = rho(b_{g+1-i}), rho'(b_i) = rho(a_{g+1-i}); negates the Euler class."""
    check_relation(rho, cfg)
    return Representation(genus=rho.genus, pairs=tuple((B, A) for A, B in reversed(rho.pairs)))


def pad(rho: Representation, extra: Sequence[ProjMatrix], cfg: ToleranceConfig = DEFAULT_CONFIG) -> Representation:
    """Append pairs (x, x); the image grows by <extra>, the Euler class is unchanged."""
    check_relation(rho, cfg)
    return Representation.from_pairs(list(rho.pairs) + [(x, x) for x in extra])


def concat(rho: Representation, other: Representation, cfg: ToleranceConfig = DEFAULT_CONFIG) -> Representation:
    check_relation(rho, cfg)
    check_relation(other, cfg)
    return Representation.from_pairs(list(rho.pairs) + list(other.pairs))


def conjugate(rho: Representation, g: ProjMatrix) -> Representation:
    return Representation(genus=rho.genus, pairs=tuple((A.conjugate_by(g), B.conjugate_by(g)) for A, B in rho.pairs))


def random_conjugator(rng: np.random.Generator, spread: float = 1.0) -> ProjMatrix:
    """Random isometry: a rotation, a translation by at most `spread`, another rotation."""
    theta, phi = rng.uniform(0.0, TWO_PI, size=2)
    length = float(rng.uniform(0.0, spread))
    return rotation_about_origin(float(theta)) @ translation_along_axis(length) @ rotation_about_origin(float(phi))


def random_conjugate(rho: Representation, cfg: ToleranceConfig = DEFAULT_CONFIG, spread: float = 1.0) -> Representation:
    """Conjugate by a conjugator drawn from cfg.seed; the Euler class and parity are unchanged."""
    return conjugate(rho, random_conjugator(np.random.default_rng(cfg.seed), spread))


def mirror(rho: Representation) -> Representation:
    """Conjugate by an orientation-reversing reflection; negates the Euler class."""
    return Representation(genus=rho.genus, pairs=tuple((mirror_matrix(A), mirror_matrix(B)) for A, B in rho.pairs))


def elementary_family(genus: int, ratio: float, center: complex = 1j) -> Representation:
    """
    Abelian representation a_1 -> rotation by 2*pi*ratio about `center`, every
    other generator -> identity. Rational ratios give finite cyclic images.
    """
    if not 0.0 < ratio < 1.0:
        raise InvalidInputError(f"rotation ratio must lie in (0, 1), got {ratio}")
    R = elliptic_about(center, TWO_PI * ratio)
    return Representation(genus=genus, pairs=((R, IDENTITY),) + ((IDENTITY, IDENTITY),) * (genus - 1))


def _pad_to(rho: Representation, genus: int) -> Representation:
    return Representation.from_pairs(list(rho.pairs) + [(IDENTITY, IDENTITY)] * (genus - rho.genus))


# -------------------------------
# Elliptic commutators
# -------------------------------
def _axis_frame(M: ProjMatrix, cfg: ToleranceConfig) -> np.ndarray:
    # columns: attracting and repelling directions, det normalized to 1
    attracting, repelling = fixed_boundary_angles(M, cfg)
    F = np.column_stack([angle_to_vector(attracting), angle_to_vector(repelling)])
    det = np.linalg.det(F)
    if det < 0:
        F[:, 1] = -F[:, 1]
        det = -det
    return F / math.sqrt(det)


def hyperbolic_as_elliptic_commutator(
    M: ProjMatrix, cfg: ToleranceConfig = DEFAULT_CONFIG
) -> Tuple[ProjMatrix, ProjMatrix]:
    """
    Elliptic A, B with [A, B] = M.

    A is the half-turn about i and B = U_t A U_-t with U_t = [[1, t], [0, 1]],
    so Tr[A, B] = 2 + 4t^2 + t^4; t is solved in closed form from Tr(M) and the
    pair is conjugated so the commutator matches M's axis.
    """
    if classify(M, cfg) is not IsometryClass.HYPERBOLIC:
        raise NotHyperbolic(f"{M.as_list()} is not hyperbolic")
    t = math.sqrt(math.sqrt(M.trace + 2.0) - 2.0)
    A = rotation_about_origin(math.pi)
    shear = canonicalize(np.array([[1.0, t], [0.0, 1.0]]))
    B = shear @ A @ shear.inverse()
    C = commutator(A, B)
    g = canonicalize(_axis_frame(M, cfg) @ np.linalg.inv(_axis_frame(C, cfg)))
    return A.conjugate_by(g), B.conjugate_by(g)


# -------------------------------
# Every Euler class
# -------------------------------
def _sl2_commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b @ np.linalg.inv(a) @ np.linalg.inv(b)


def _nudge(m: np.ndarray, x: np.ndarray) -> np.ndarray:
    # right multiplication by I + X, X traceless
    return m @ np.array([[1.0 + x[0], x[1]], [x[2], 1.0 - x[0]]])


def _close_relation(rho: Representation) -> Representation:
    """Newton-correct the last pair so the surface relation holds to rounding."""
    if rho.genus < 2:
        return rho
    head, (A, B) = list(rho.pairs[:-1]), rho.pairs[-1]
    Q = np.eye(2)
    for X, Y in head:
        Q = Q @ _sl2_commutator(X.array, Y.array)
    a0, b0 = A.array, B.array
    eye = np.eye(2)
    P = Q @ _sl2_commutator(a0, b0)
    sign = 1.0 if np.max(np.abs(P - eye)) <= np.max(np.abs(P + eye)) else -1.0

    def residual(p: np.ndarray) -> np.ndarray:
        return (Q @ _sl2_commutator(_nudge(a0, p[:3]), _nudge(b0, p[3:])) - sign * eye).ravel()

    p = np.zeros(6)
    r = residual(p)
    start = float(np.max(np.abs(r)))
    for _ in range(CLOSE_ITERATIONS):
        if np.max(np.abs(r)) <= CLOSE_TOL:
            break
        steps = np.eye(6) * CLOSE_STEP
        J = np.column_stack([(residual(p + h) - residual(p - h)) / (2.0 * CLOSE_STEP) for h in steps])
        delta, *_ = np.linalg.lstsq(J, -r, rcond=None)
        p = p + delta
        r = residual(p)
    logger.debug("closing pair residual %.3e -> %.3e", start, float(np.max(np.abs(r))))
    last = (canonicalize(_nudge(a0, p[:3])), canonicalize(_nudge(b0, p[3:])))
    return Representation.from_pairs(head + [last])
def _pin_orientation(rho: Representation, k: int, cfg: ToleranceConfig) -> Representation:
    e = euler_class(rho, cfg)
    if e == k:
        return rho
    if e == -k:
        logger.info("construction for e = %d came out reversed, flipping", k)
        return flip(rho, cfg)
    raise VerificationError(f"construction for e = {k} produced e = {e}")


def _odd_class(k: int, cfg: ToleranceConfig) -> Representation:
    g0 = (k + 3) // 2
    if g0 % 2 == 0:
        # (g'; 2): the handle pairs listed twice give c^2 with c^2 = z^(4g'-3)
        gens = realize_signature(Signature(genus=g0 // 2, periods=(2,)), cfg)
        return Representation.from_pairs(list(gens.handles) * 2)
    # (g'; 2, 2, 2): [q2^-1, q3^-1] (P^-1 c P) c with P = q2 q3
    gens = realize_signature(Signature(genus=(g0 - 1) // 2, periods=(2, 2, 2)), cfg)
    _, q2, q3 = gens.q
    P = q2 @ q3
    P_inv = P.inverse()
    pairs = [(q2.inverse(), q3.inverse())]
    pairs += [(P_inv @ A @ P, P_inv @ B @ P) for A, B in gens.handles]
    pairs += list(gens.handles)
    return Representation.from_pairs(pairs)


def build_euler(genus: int, k: int, cfg: ToleranceConfig = DEFAULT_CONFIG) -> Representation:
    """
    Representation of the genus-g surface group with Euler class k and discrete image.

    Args:
        genus: g >= 2
        k: Euler class, |k| <= 2g - 2
        cfg: tolerances

    Returns:
        Representation with euler_class == k
    """
    if genus < 2:
        raise InvalidInputError(f"genus must be >= 2, got {genus}")
    if abs(k) > 2 * genus - 2:
        raise EulerOutOfRange(f"|{k}| exceeds 2g - 2 = {2 * genus - 2}")
    if k < 0:
        return flip(build_euler(genus, -k, cfg), cfg)
    if k == 0:
        T = canonicalize(np.diag([2.0, 0.5]))
        return _pad_to(Representation.from_pairs([(T, T)]), genus)
    if k % 2 == 0:
        rho = realize_surface(k // 2 + 1, cfg)
    else:
        rho = _close_relation(_odd_class(k, cfg))
    return _pin_orientation(_pad_to(rho, genus), k, cfg)


# -------------------------------
# Deformations
# -------------------------------
def deform(rho: Representation, t: float, cfg: ToleranceConfig = DEFAULT_CONFIG) -> Representation:
    """A_1 -> A_1 B_1(t) along the one-parameter subgroup through B_1; [A_1, B_1] is unchanged."""
    A1, B1 = rho.pairs[0]
    if classify(B1, cfg) is IsometryClass.IDENTITY:
        raise IdentityB1("rho(b_1) is the identity")
    if t == 0:
        return rho
    return Representation(genus=rho.genus, pairs=((A1 @ one_param(B1, t, cfg), B1),) + rho.pairs[1:])


def _half_turn_angle(M: ProjMatrix) -> Optional[float]:
    # half the rotation angle, read from the representative with c > 0
    c = M.c
    if c == 0:
        return None
    h = 0.5 * M.trace * (1.0 if c > 0 else -1.0)
    if not -1.0 < h < 1.0:
        return None
    return math.acos(h)


def _snap_bisect(f, lo: float, hi: float, f_lo: float) -> float:
    while hi - lo > SNAP_TOL:
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def snap_nonfaithful(
    rho: Representation,
    qmax: int,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
) -> Tuple[Representation, WitnessWord]:
    """
    Deform rho until rho(a_1) is a rotation by 2*pi*p/q with q <= qmax, choosing
    the smallest |t| on [-1, 1] (ties go to the smaller q).

    Returns:
        (deformed representation, witness word a_1^q)
    """
    A1, B1 = rho.pairs[0]
    if classify(A1, cfg) is not IsometryClass.ELLIPTIC or classify(B1, cfg) is not IsometryClass.ELLIPTIC:
        raise NotInE("rho(a_1) and rho(b_1) must both be elliptic")
    if qmax < 2:
        raise InvalidInputError(f"qmax must be >= 2, got {qmax}")

    def beta(t: float) -> Optional[float]:
        return _half_turn_angle(A1 @ one_param(B1, t, cfg))

    fractions = farey_fractions(qmax)
    targets = [math.pi * float(f) for f in fractions]
    samples = [beta(float(t)) for t in SNAP_GRID]
    intervals = []
    for i in range(len(SNAP_GRID) - 1):
        if samples[i] is None or samples[i + 1] is None:
            continue
        t0, t1 = float(SNAP_GRID[i]), float(SNAP_GRID[i + 1])
        inner = 0.0 if t0 <= 0.0 <= t1 else min(abs(t0), abs(t1))
        intervals.append((inner, t0, t1, samples[i], samples[i + 1]))
    intervals.sort()

    best: Optional[Tuple[float, int, float, Fraction]] = None
    for inner, t0, t1, b0, b1 in intervals:
        if best is not None and inner > best[0]:
            break
        lo_b, hi_b = min(b0, b1), max(b0, b1)
        start = bisect.bisect_left(targets, lo_b)
        stop = bisect.bisect_right(targets, hi_b)
        for idx in range(start, stop):
            target, frac = targets[idx], fractions[idx]
            f0 = b0 - target
            if f0 == 0.0:
                t_star = t0
            else:
                t_star = _snap_bisect(lambda t: (beta(t) or 0.0) - target, t0, t1, f0)
            candidate = (abs(t_star), frac.denominator, t_star, frac)
            if best is None or candidate[:2] < best[:2]:
                best = candidate
    if best is None:
        raise NoRationalInRange(f"no rotation angle 2*pi*p/q with q <= {qmax} on t in [-1, 1]")

    _, q, t_star, frac = best
    snapped = deform(rho, t_star, cfg)
    residual = snapped.pairs[0][0].power(q).distance(IDENTITY)
    if residual > WITNESS_TOL:
        raise VerificationError(f"a_1^{q} is {residual:.3e} away from the identity")
    logger.info("snapped rotation angle to 2*pi*%s at t = %.12f", frac, t_star)
    return snapped, WitnessWord(letters=(("a1", q),), residual=residual)


# -------------------------------
# Members of E
# -------------------------------
def build_E_member(genus: int, k: int, cfg: ToleranceConfig = DEFAULT_CONFIG) -> Representation:
    """
    Representation with rho(a_1), rho(b_1) elliptic and Euler class k, |k| <= 2g - 3.
    """
    if genus < 2 or abs(k) > 2 * genus - 3:
        raise EulerOutOfRange(f"|{k}| exceeds 2g - 3 = {2 * genus - 3}")
    if abs(k) <= 2 * genus - 4:
        A = rotation_about_origin(E_PAD_ANGLE)
        rest = build_euler(genus - 1, k, cfg) if genus - 1 >= 2 else trivial(genus - 1)
        return Representation.from_pairs([(A, A)] + list(rest.pairs))

    maximal = realize_surface(genus, cfg)
    if k < 0:
        maximal = flip(maximal, cfg)
    pairs: List[Tuple[ProjMatrix, ProjMatrix]] = list(maximal.pairs)
    for attempt in range(FIRST_PAIR_RETRIES + 1):
        C = commutator(*pairs[0])
        if classify(C, cfg) is IsometryClass.HYPERBOLIC:
            break
        logger.info("first commutator is %s, rotating handles (attempt %d)", classify(C, cfg).value, attempt + 1)
        # cyclic rotation conjugates the relation, so it still holds
        pairs = pairs[1:] + pairs[:1]
    else:
        raise FirstCommutatorNotHyperbolic("no handle of the maximal representation has a hyperbolic commutator")

    E, F = hyperbolic_as_elliptic_commutator(C, cfg)
    rho = Representation.from_pairs([(E, F)] + pairs[1:])
    e = euler_class(rho, cfg)
    if e == -k:
        # mirroring keeps the first pair elliptic
        rho = mirror(rho)
        e = -e
    if e != k:
        raise VerificationError(f"E-member for e = {k} produced e = {e}")
    return rho
