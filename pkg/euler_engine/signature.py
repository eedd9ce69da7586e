# euler_engine/signature.py
"""
signature.py

Exact arithmetic on Fuchsian signatures (g; k_1, ..., k_l, inf, ..., inf).

Everything here is Fraction / int arithmetic. The quantities:
- coarea: 2g - 2 + sum(1 - 1/k_i) + cusps (hyperbolic area over 2*pi)
- e_gamma: lcm(k_i) * coarea for cocompact groups, 0 otherwise
- two_power_data: (m, n) where 2**m is the largest power of 2 dividing a period
  and n counts the periods divisible by it
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

from euler_engine.errors import InvalidInputError, InvalidSignature, NotCocompact

logger = logging.getLogger(__name__)

CUSP_TOKENS = ("inf", "∞")


@dataclass(frozen=True)
class Signature:
    genus: int
    periods: Tuple[int, ...] = field(default_factory=tuple)
    cusps: int = 0

    def __post_init__(self):
        if not isinstance(self.genus, int) or self.genus < 0:
            raise InvalidSignature(f"genus must be a nonnegative integer, got {self.genus!r}")
        if not isinstance(self.cusps, int) or self.cusps < 0:
            raise InvalidSignature(f"cusp count must be a nonnegative integer, got {self.cusps!r}")
        periods = tuple(sorted(int(k) for k in self.periods))
        if any(k < 2 for k in periods):
            raise InvalidSignature(f"periods must be >= 2, got {list(periods)}")
        object.__setattr__(self, "periods", periods)

    @property
    def r(self) -> int:
        """Number of cone points and cusps."""
        return len(self.periods) + self.cusps

    def __str__(self) -> str:
        return format_signature(self)


def parse_signature(text: str) -> Signature:
    """
    Parse "g;k1,k2,...", with "inf" for cusps. "2", "2;" and "2;-" all mean (2;-).
    """
    raw = text.strip()
    genus_part, _, period_part = raw.partition(";")
    try:
        genus = int(genus_part.strip())
    except ValueError:
        raise InvalidSignature(f"bad genus in signature {text!r}") from None
    periods: List[int] = []
    cusps = 0
    period_part = period_part.strip()
    if period_part and period_part != "-":
        for token in period_part.split(","):
            token = token.strip().lower()
            if token in CUSP_TOKENS:
                cusps += 1
                continue
            try:
                periods.append(int(token))
            except ValueError:
                raise InvalidSignature(f"bad period {token!r} in signature {text!r}") from None
    return Signature(genus=genus, periods=tuple(periods), cusps=cusps)


def format_signature(sig: Signature) -> str:
    entries = [str(k) for k in sig.periods] + ["inf"] * sig.cusps
    return f"{sig.genus};{','.join(entries) if entries else '-'}"


def coarea(sig: Signature) -> Fraction:
    total = Fraction(2 * sig.genus - 2) + sig.cusps
    for k in sig.periods:
        total += 1 - Fraction(1, k)
    return total


def is_valid(sig: Signature) -> bool:
    return coarea(sig) > 0


def lcm_of_periods(sig: Signature) -> int:
    return math.lcm(*sig.periods) if sig.periods else 1


def require_valid(sig: Signature) -> None:
    if not is_valid(sig):
        raise InvalidSignature(f"{format_signature(sig)} has coarea {coarea(sig)} <= 0")


def require_cocompact(sig: Signature) -> None:
    if sig.cusps:
        raise NotCocompact(f"{format_signature(sig)} has {sig.cusps} cusp(s)")


def e_gamma(sig: Signature) -> int:
    require_valid(sig)
    if sig.cusps:
        return 0
    value = lcm_of_periods(sig) * coarea(sig)
    assert value.denominator == 1, f"non-integral e(Gamma) {value}"
    return int(value)


def _two_adic_valuation(k: int) -> int:
    return (k & -k).bit_length() - 1


def two_power_data(sig: Signature) -> Tuple[int, int]:
    require_cocompact(sig)
    m = max((_two_adic_valuation(k) for k in sig.periods), default=0)
    if m == 0:
        return 0, 0
    return m, sum(1 for k in sig.periods if k % (1 << m) == 0)


def admits_odd(sig: Signature) -> bool:
    """True when representations of odd Euler class factor through this group."""
    require_valid(sig)
    if sig.cusps:
        return False
    return two_power_data(sig)[1] % 2 == 1


def genus_bounds(sig: Signature, n: int) -> Tuple[int, int]:
    """
    Bounds on the least genus of a surface group mapping onto sig's group with
    Euler class n * e_gamma(sig).

    Returns:
        (lower, upper): lower = ceil(n*e/2) + 1, upper = n*d*g + r**(n*d) (exact int)
    """
    require_valid(sig)
    require_cocompact(sig)
    if n < 1:
        raise InvalidInputError(f"multiplier n must be >= 1, got {n}")
    ne = n * e_gamma(sig)
    lower = -(-ne // 2) + 1
    d = lcm_of_periods(sig)
    upper = n * d * sig.genus + len(sig.periods) ** (n * d)
    return lower, upper


def index_by_coarea(sub: Signature, sup: Signature) -> Fraction:
    """Index [sup : sub] a declared inclusion would need (ratio of coareas)."""
    require_valid(sub)
    require_valid(sup)
    return coarea(sub) / coarea(sup)


def divides_euler(sub: Signature, sup: Signature) -> bool:
    """For a finite-index inclusion sub <= sup, e(sup) must divide e(sub)."""
    e_sub, e_sup = e_gamma(sub), e_gamma(sup)
    if e_sup == 0:
        return e_sub == 0
    return e_sub % e_sup == 0


# -------------------------------
# Enumeration
# -------------------------------
def _extend(
    genus: int,
    length: int,
    prefix: List[int],
    partial: Fraction,
    d: int,
    kmax: int,
    kcap: int,
    out: List[Signature],
) -> None:
    remaining = length - len(prefix)
    if remaining == 0:
        if partial > 0 and d * partial <= kmax:
            out.append(Signature(genus=genus, periods=tuple(prefix)))
        return
    start = prefix[-1] if prefix else 2
    for k in range(start, kcap + 1):
        with_k = partial + 1 - Fraction(1, k)
        # later periods are >= k, each adds at least 1 - 1/k
        lower = with_k + (remaining - 1) * (1 - Fraction(1, k))
        if lower > 0 and d * lower > kmax:
            # lower only grows with k and the lcm never shrinks
            break
        d_next = math.lcm(d, k)
        if d_next > kcap or (lower > 0 and d_next * lower > kmax):
            continue
        prefix.append(k)
        _extend(genus, length, prefix, with_k, d_next, kmax, kcap, out)
        prefix.pop()


def enumerate_by_capacity(kmax: int) -> List[Signature]:
    """
    All cocompact signatures with 0 < e_gamma <= kmax, searched over 4g + r <= 2*kmax + 4
    and periods dividing an lcm <= 42*kmax; sorted by (e_gamma, genus, periods).
    """
    if kmax < 1:
        raise InvalidInputError(f"kmax must be >= 1, got {kmax}")
    kcap = 42 * kmax
    bound = 2 * kmax + 4
    found: List[Signature] = []
    for genus in range(bound // 4 + 1):
        for length in range(bound - 4 * genus + 1):
            _extend(genus, length, [], Fraction(2 * genus - 2), 1, kmax, kcap, found)
    unique = sorted(set(found), key=lambda s: (e_gamma(s), s.genus, s.periods))
    logger.info("enumerated %d signatures with e(Gamma) <= %d", len(unique), kmax)
    return unique