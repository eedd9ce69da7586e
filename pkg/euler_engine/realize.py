# euler_engine/realize.py
"""
realize.py

Numerical Fuchsian groups from signatures.

Responsibilities:
- triangle groups (0; p, q, r) from a hyperbolic triangle placed by the
  angle form of the cosine rule
- the regular 4g-gon surface group in closed form
- general cocompact signatures from a star-shaped polygon centered at i:
  V-vertices u_0..u_{N-1} (N = 4g + r) on a common radius R at equal central
  angles, with a cone vertex W_i pushed out between u_{i-1} and u_i for each
  period. Cone vertices come first, then the handles u_b..u_{b+4}.
  The generators satisfy q_1 ... q_r [a_1, b_1] ... [a_g, b_g] = 1.
- certificates: relation residual, rotation angles, Gauss-Bonnet area,
  the lifted long relation exponent and the smallest Jorgensen value
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from euler_engine.config import DEFAULT_CONFIG, ToleranceConfig
from euler_engine.discreteness import jorgensen
from euler_engine.errors import (
    InvalidSignature,
    NotElliptic,
    NotHyperbolicTriple,
    SolverNoConvergence,
    VerificationError,
)
from euler_engine.lift import (
    LiftedIsometry,
    Representation,
    compose,
    euler_class,
    lift_positive_rotation,
    lifted_commutator,
)
from euler_engine.moebius import (
    IDENTITY,
    TWO_PI,
    ProjMatrix,
    apply_point,
    commutator,
    elliptic_about,
    hyperbolic_distance,
    isometry_matching,
    polar_point,
    rotation_about_origin,
    rotation_angle,
    translation_along_axis,
)
from euler_engine.signature import Signature, coarea, format_signature, require_cocompact, require_valid
from euler_engine.utils import make_cache_key, realization_cache

logger = logging.getLogger(__name__)

CENTER = 1j
AREA_TOL = 1e-6
SOLVER_TOL = 1e-12
SOLVER_MAX_ITER = 200
# pairs closer than this to commuting are skipped in the Jorgensen scan
COMMUTING_TOL = 1e-9


@dataclass(frozen=True)
class FuchsianGenerators:
    sig: Signature
    q: Tuple[ProjMatrix, ...]
    handles: Tuple[Tuple[ProjMatrix, ProjMatrix], ...]
    domain: Tuple[complex, ...] = field(default_factory=tuple)
    center: complex = CENTER

    def generators(self) -> List[ProjMatrix]:
        return list(self.q) + [M for pair in self.handles for M in pair]

    def conjugate_by(self, g: ProjMatrix) -> "FuchsianGenerators":
        return FuchsianGenerators(
            sig=self.sig,
            q=tuple(M.conjugate_by(g) for M in self.q),
            handles=tuple((A.conjugate_by(g), B.conjugate_by(g)) for A, B in self.handles),
            domain=tuple(apply_point(g, z) for z in self.domain),
            center=apply_point(g, self.center),
        )


@dataclass(frozen=True)
class RealizationCertificate:
    residual: float
    angle_errors: Tuple[float, ...]
    area_error: float
    lift_exponent: int
    expected_exponent: int
    jorgensen_min: float
    passed: bool


# -------------------------------
# Hyperbolic trigonometry
# -------------------------------
def _third_side(a: float, b: float, gamma: float) -> float:
    """Side opposite the angle gamma between sides a and b."""
    value = math.cosh(a) * math.cosh(b) - math.sinh(a) * math.sinh(b) * math.cos(gamma)
    return math.acosh(max(1.0, value))


def _angle_between(a: float, b: float, c: float) -> float:
    """Angle between sides a and b of a triangle with opposite side c."""
    value = (math.cosh(a) * math.cosh(b) - math.cosh(c)) / (math.sinh(a) * math.sinh(b))
    return math.acos(min(1.0, max(-1.0, value)))


def triangle_area(p0: complex, p1: complex, p2: complex) -> float:
    """Area of a geodesic triangle in the upper half-plane (angle defect)."""
    a = hyperbolic_distance(p1, p2)
    b = hyperbolic_distance(p0, p2)
    c = hyperbolic_distance(p0, p1)
    if min(a, b, c) < 1e-12:
        return 0.0
    return math.pi - _angle_between(b, c, a) - _angle_between(a, c, b) - _angle_between(a, b, c)


def polygon_area(vertices: Sequence[complex], center: complex) -> float:
    """Area of a polygon star-shaped about `center`, summed over the fan of triangles."""
    n = len(vertices)
    return sum(triangle_area(center, vertices[i], vertices[(i + 1) % n]) for i in range(n))


def _bisect_decreasing(
    f: Callable[[float], float],
    target: float,
    lo: float,
    hi: float,
    what: str,
) -> float:
    """Root of f(x) = target for decreasing f; lo is known to lie on the high side."""
    expansions = 0
    while f(hi) > target:
        lo, hi = hi, 2.0 * hi
        expansions += 1
        if expansions > 60:
            raise SolverNoConvergence(f"{what}: could not bracket the target {target!r}")
    mid = hi
    for iteration in range(SOLVER_MAX_ITER):
        mid = 0.5 * (lo + hi)
        value = f(mid)
        if abs(value - target) <= SOLVER_TOL or mid in (lo, hi):
            logger.debug("%s converged after %d iterations", what, iteration + 1)
            return mid
        if value > target:
            lo = mid
        else:
            hi = mid
    if abs(f(mid) - target) <= 100 * SOLVER_TOL:
        return mid
    raise SolverNoConvergence(f"{what}: no convergence after {SOLVER_MAX_ITER} iterations")


# -------------------------------
# Triangle groups
# -------------------------------
def realize_triangle(p: int, q: int, r: int, cfg: ToleranceConfig = DEFAULT_CONFIG) -> FuchsianGenerators:
    """
    Rotations by 2*pi/p, 2*pi/q, 2*pi/r about the vertices of a counterclockwise
    triangle with angles pi/p, pi/q, pi/r; their product is the identity.
    """
    if min(p, q, r) < 2 or q * r + p * r + p * q >= p * q * r:
        raise NotHyperbolicTriple(f"({p}, {q}, {r}) is not a hyperbolic triple")
    A, B, C = math.pi / p, math.pi / q, math.pi / r
    side_c = math.acosh((math.cos(C) + math.cos(A) * math.cos(B)) / (math.sin(A) * math.sin(B)))
    side_b = math.acosh((math.cos(B) + math.cos(A) * math.cos(C)) / (math.sin(A) * math.sin(C)))
    vertices = (CENTER, polar_point(side_c, 0.0), polar_point(side_b, A))
    gens = tuple(elliptic_about(v, TWO_PI / k, cfg) for v, k in zip(vertices, (p, q, r)))
    far = polar_point(side_c, 2.0 * A)
    return FuchsianGenerators(
        sig=Signature(genus=0, periods=(p, q, r)),
        q=gens,
        handles=(),
        domain=(vertices[0], vertices[1], vertices[2], far),
        center=vertices[0],
    )


# -------------------------------
# Surface groups
# -------------------------------
def _regular_polygon(genus: int) -> Tuple[List[ProjMatrix], Tuple[complex, ...]]:
    n = 4 * genus
    sigma = TWO_PI / n
    cot = 1.0 / math.tan(math.pi / n)
    to_side = math.acosh(cot)
    to_vertex = math.acosh(cot * cot)
    push = translation_along_axis(2.0 * to_side)

    def pairing(src: int, dst: int) -> ProjMatrix:
        # side s_k joins u_{k-1} and u_k; its midpoint lies at angle (k - 1/2) * sigma
        theta_src, theta_dst = (src - 0.5) * sigma, (dst - 0.5) * sigma
        return rotation_about_origin(theta_dst) @ push @ rotation_about_origin(math.pi - theta_src)

    gens = []
    for j in range(genus):
        A = pairing(4 * j + 3, 4 * j + 1)
        B = pairing(4 * j + 4, 4 * j + 2)
        gens.extend([A, B.inverse()])
    domain = tuple(polar_point(to_vertex, k * sigma) for k in range(n))
    return gens, domain


def surface_generators(genus: int) -> FuchsianGenerators:
    """Side pairings of the regular 4g-gon with angle sum 2*pi, as (g; -) generators."""
    if genus < 2:
        raise InvalidSignature(f"surface genus must be >= 2, got {genus}")
    gens, domain = _regular_polygon(genus)
    handles = tuple((gens[2 * j], gens[2 * j + 1]) for j in range(genus))
    return FuchsianGenerators(sig=Signature(genus=genus), q=(), handles=handles, domain=domain)


def realize_surface(genus: int, cfg: ToleranceConfig = DEFAULT_CONFIG) -> Representation:
    """Teichmueller representation of the genus-g surface group with Euler class 2g - 2."""
    key = make_cache_key("surface", genus, cfg.model_dump_json())
    cached = realization_cache.get(key)
    if cached is not None:
        return cached
    rho = Representation(genus=genus, pairs=surface_generators(genus).handles)
    e = euler_class(rho, cfg)
    if e == -(2 * genus - 2):
        logger.info("regular %d-gon realized with reversed orientation, flipping", 4 * genus)
        rho = Representation(
            genus=genus,
            pairs=tuple((B, A) for A, B in reversed(rho.pairs)),
        )
    elif e != 2 * genus - 2:
        raise VerificationError(f"regular {4 * genus}-gon produced Euler class {e}")
    realization_cache.set(key, rho)
    return rho


# -------------------------------
# General cocompact signatures
# -------------------------------
def _kite_half_angle(rho: float, radius: float, half_sector: float) -> float:
    c = _third_side(rho, radius, half_sector)
    return _angle_between(rho, c, radius)


def _kite_base_angle(rho: float, radius: float, half_sector: float) -> float:
    c = _third_side(rho, radius, half_sector)
    return _angle_between(radius, c, rho)


def _handle_base_angle(radius: float, sector: float) -> float:
    c = _third_side(radius, radius, sector)
    return _angle_between(radius, c, radius)


def _cone_radius(k: int, radius: float, half_sector: float) -> float:
    return _bisect_decreasing(
        lambda rho: _kite_half_angle(rho, radius, half_sector),
        math.pi / k,
        0.0,
        1.0,
        f"cone radius for period {k}",
    )


def _vertex_angle_sum(sig: Signature, radius: float, sigma: float) -> float:
    half = 0.5 * sigma
    total = 4 * sig.genus * 2.0 * _handle_base_angle(radius, sigma)
    for k in sig.periods:
        rho = _cone_radius(k, radius, half)
        total += 2.0 * _kite_base_angle(rho, radius, half)
    return total


def realize_signature(sig: Signature, cfg: ToleranceConfig = DEFAULT_CONFIG) -> FuchsianGenerators:
    """
    Generators of a cocompact Fuchsian group of the given signature, built on
    a star-shaped fundamental polygon.

    Args:
        sig: valid cocompact signature
        cfg: tolerances for the elliptic constructions

    Returns:
        FuchsianGenerators with the polygon attached
    """
    require_valid(sig)
    require_cocompact(sig)
    key = make_cache_key("signature", format_signature(sig), cfg.model_dump_json())
    cached = realization_cache.get(key)
    if cached is not None:
        return cached

    r = len(sig.periods)
    n_v = 4 * sig.genus + r
    sigma = TWO_PI / n_v
    radius = _bisect_decreasing(
        lambda R: _vertex_angle_sum(sig, R, sigma),
        TWO_PI,
        1e-6,
        1.0,
        f"vertex radius for {format_signature(sig)}",
    )
    u = [polar_point(radius, k * sigma) for k in range(n_v)] + [polar_point(radius, 0.0)]

    q, domain = [], []
    for i, k in enumerate(sig.periods, start=1):
        rho = _cone_radius(k, radius, 0.5 * sigma)
        w = polar_point(rho, (i - 0.5) * sigma)
        q.append(elliptic_about(w, TWO_PI / k, cfg))
        domain.extend([u[i - 1], w])

    handles = []
    for j in range(sig.genus):
        b = r + 4 * j
        A = isometry_matching(u[b + 2], u[b + 3], u[b + 1], u[b])
        B = isometry_matching(u[b + 3], u[b + 4], u[b + 2], u[b + 1])
        handles.append((A, B.inverse()))
    domain.extend(u[r:n_v])

    gens = FuchsianGenerators(sig=sig, q=tuple(q), handles=tuple(handles), domain=tuple(domain))
    logger.debug("realized %s with vertex radius %.12f", format_signature(sig), radius)
    realization_cache.set(key, gens)
    return gens


# -------------------------------
# Certificates
# -------------------------------
def long_relation_product(gens: FuchsianGenerators) -> np.ndarray:
    P = np.eye(2)
    for M in gens.q:
        P = P @ M.array
    for A, B in gens.handles:
        a, b = A.array, B.array
        P = P @ a @ b @ np.linalg.inv(a) @ np.linalg.inv(b)
    return P


def lifted_long_relation(gens: FuchsianGenerators, cfg: ToleranceConfig = DEFAULT_CONFIG) -> LiftedIsometry:
    F = LiftedIsometry(IDENTITY, 0.0)
    for M in gens.q:
        F = compose(F, lift_positive_rotation(M, cfg))
    for A, B in gens.handles:
        F = compose(F, lifted_commutator(A, B))
    return F


def _angle_error(M: ProjMatrix, k: int, cfg: ToleranceConfig) -> float:
    try:
        return abs(rotation_angle(M, cfg) - TWO_PI / k)
    except NotElliptic:
        return math.inf


def jorgensen_minimum(generators: Sequence[ProjMatrix]) -> float:
    """Smallest J over ordered pairs of generators that do not commute."""
    best: Optional[float] = None
    for i, X in enumerate(generators):
        for j, Y in enumerate(generators):
            if i == j or commutator(X, Y).distance(IDENTITY) <= COMMUTING_TOL:
                continue
            value = jorgensen(X, Y)
            best = value if best is None else min(best, value)
    return math.inf if best is None else best


def verify_realization(gens: FuchsianGenerators, cfg: ToleranceConfig = DEFAULT_CONFIG) -> RealizationCertificate:
    P = long_relation_product(gens)
    eye = np.eye(2)
    residual = float(min(np.max(np.abs(P - eye)), np.max(np.abs(P + eye))))
    angle_errors = tuple(_angle_error(M, k, cfg) for M, k in zip(gens.q, gens.sig.periods))
    if len(gens.q) != len(gens.sig.periods):
        angle_errors += (math.inf,)
    area_error = (
        polygon_area(gens.domain, gens.center) - TWO_PI * float(coarea(gens.sig))
        if gens.domain else math.inf
    )
    try:
        lift_exponent = round(lifted_long_relation(gens, cfg).u / TWO_PI)
    except NotElliptic:
        lift_exponent = 0
    expected = 2 * gens.sig.genus - 2 + gens.sig.r
    passed = (
        residual <= cfg.tau_real
        and max(angle_errors, default=0.0) <= cfg.tau_real
        and abs(area_error) <= AREA_TOL
        and abs(lift_exponent) == expected
    )
    return RealizationCertificate(
        residual=residual,
        angle_errors=angle_errors,
        area_error=area_error,
        lift_exponent=lift_exponent,
        expected_exponent=expected,
        jorgensen_min=jorgensen_minimum(gens.generators()),
        passed=passed,
    )
