# euler_engine/discreteness.py
"""
discreteness.py

Jorgensen's quantity J(A, B) = |Tr(A)^2 - 4| + |Tr[A, B] - 2| and a
bounded-depth search for pairs violating J >= 1, which certifies that the
image of a representation is not a discrete non-elementary group.

Not finding a certificate proves nothing.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from euler_engine.config import DEFAULT_CONFIG, ToleranceConfig
from euler_engine.errors import InvalidDepth, NotBoundaryFixing
from euler_engine.lift import Representation
from euler_engine.moebius import (
    IDENTITY,
    IsometryClass,
    ProjMatrix,
    angle_gap,
    classify,
    commutator,
    fixed_boundary_angles,
)

logger = logging.getLogger(__name__)

# J must fall below 1 by this margin to count
J_MARGIN = 1e-9
# matrices are identified after rounding entries to this grid
HASH_QUANTUM = 1e-10
NONCOMMUTING_TOL = 1e-6
SHARED_FIXED_POINT_TOL = 1e-8

Word = Tuple[Tuple[str, int], ...]


@dataclass(frozen=True)
class JorgensenReport:
    value: float
    pair: Tuple[str, str]
    elementary_flag: bool


def commutator_trace(A: ProjMatrix, B: ProjMatrix) -> float:
    """Trace of A B A^-1 B^-1 in SL(2,R); independent of the sign representatives."""
    a, b = A.array, B.array
    a_inv = np.array([[A.d, -A.b], [-A.c, A.a]])
    b_inv = np.array([[B.d, -B.b], [-B.c, B.a]])
    return float(np.trace(a @ b @ a_inv @ b_inv))


def jorgensen(A: ProjMatrix, B: ProjMatrix) -> float:
    return abs(A.trace ** 2 - 4.0) + abs(commutator_trace(A, B) - 2.0)


def _fixed_points(M: ProjMatrix, cfg: ToleranceConfig) -> List[float]:
    try:
        return fixed_boundary_angles(M, cfg)
    except NotBoundaryFixing:
        return []


def is_elementary_pair(A: ProjMatrix, B: ProjMatrix, cfg: ToleranceConfig = DEFAULT_CONFIG) -> bool:
    """Heuristic: commuting, or sharing a boundary fixed point."""
    if commutator(A, B).distance(IDENTITY) <= cfg.tau_cls:
        return True
    fa, fb = _fixed_points(A, cfg), _fixed_points(B, cfg)
    return any(angle_gap(x, y) <= SHARED_FIXED_POINT_TOL for x in fa for y in fb)


# -------------------------------
# Words in the generators
# -------------------------------
def generator_labels(genus: int) -> List[str]:
    return [f"{name}{i}" for i in range(1, genus + 1) for name in ("a", "b")]


def format_word(word: Word) -> str:
    if not word:
        return "1"
    return " ".join(name if exp == 1 else f"{name}^-1" for name, exp in word)


def _hash_key(M: ProjMatrix) -> Tuple[int, ...]:
    return tuple(int(round(x / HASH_QUANTUM)) for x in (M.a, M.b, M.c, M.d))


def enumerate_words(
    labels: Sequence[str],
    generators: Sequence[ProjMatrix],
    depth: int,
) -> List[Tuple[Word, ProjMatrix]]:
    """
    Reduced words of length 1..depth with their images, shortest first; words
    whose image was already produced are dropped.
    """
    letters = []
    for name, M in zip(labels, generators):
        letters.append(((name, 1), M))
        letters.append(((name, -1), M.inverse()))
    seen: Dict[Tuple[int, ...], Word] = {_hash_key(IDENTITY): ()}
    frontier: List[Tuple[Word, ProjMatrix]] = [((), IDENTITY)]
    out: List[Tuple[Word, ProjMatrix]] = []
    for _ in range(depth):
        nxt = []
        for word, M in frontier:
            for letter, L in letters:
                if word and word[-1][0] == letter[0] and word[-1][1] == -letter[1]:
                    continue
                image = M @ L
                key = _hash_key(image)
                if key in seen:
                    continue
                seen[key] = word + (letter,)
                nxt.append((word + (letter,), image))
        out.extend(nxt)
        frontier = nxt
    logger.debug("enumerated %d distinct elements up to length %d", len(out), depth)
    return out


def _jorgensen_against(s: ProjMatrix, stack: np.ndarray) -> np.ndarray:
    # Tr[S,T] = Tr(S)^2 + Tr(T)^2 + Tr(ST)^2 - Tr(S)Tr(T)Tr(ST) - 2
    ts = s.trace
    tt = stack[:, 0, 0] + stack[:, 1, 1]
    st = np.einsum("ij,njk->nik", s.array, stack)
    tst = st[:, 0, 0] + st[:, 1, 1]
    comm = ts ** 2 + tt ** 2 + tst ** 2 - ts * tt * tst - 2.0
    return abs(ts ** 2 - 4.0) + np.abs(comm - 2.0)


def nondiscreteness_certificate(
    rho: Representation,
    depth: Optional[int] = None,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
) -> Optional[Tuple[JorgensenReport, JorgensenReport]]:
    """
    Look for words s, t1, t2 with J(s, t1) < 1, J(s, t2) < 1 and [t1, t2] != 1.

    Args:
        rho: representation whose image is searched
        depth: maximal word length (defaults to cfg.jorgensen_depth)
        cfg: tolerances

    Returns:
        the two reports (s, t1) and (s, t2), or None when nothing was found
    """
    depth = cfg.jorgensen_depth if depth is None else depth
    if depth < 1:
        raise InvalidDepth(f"search depth must be >= 1, got {depth}")
    elements = [
        (w, M) for w, M in enumerate_words(generator_labels(rho.genus), rho.generators(), depth)
        if classify(M, cfg) is not IsometryClass.IDENTITY
    ]
    if not elements:
        return None
    stack = np.stack([M.array for _, M in elements])
    for word_s, s in elements:
        if abs(s.trace ** 2 - 4.0) >= 1.0 - J_MARGIN:
            continue
        values = _jorgensen_against(s, stack)
        small = np.flatnonzero(values < 1.0 - J_MARGIN)
        for pos, i in enumerate(small):
            t1 = elements[i][1]
            for j in small[pos + 1:]:
                t2 = elements[j][1]
                if commutator(t1, t2).distance(IDENTITY) <= NONCOMMUTING_TOL:
                    continue
                s_name = format_word(word_s)
                reports = tuple(
                    JorgensenReport(
                        value=float(values[k]),
                        pair=(s_name, format_word(elements[k][0])),
                        elementary_flag=is_elementary_pair(s, elements[k][1], cfg),
                    )
                    for k in (i, j)
                )
                logger.info("non-discreteness certificate with s = %s", s_name)
                return reports
    return None
