# euler_engine/reports.py
"""
Report builders shared by the command line and the HTTP routes.
Each returns a JSON-ready dict; callers add the config/version envelope.
"""

import logging
from typing import Any, Dict, Iterable, List, Optional, Tuple

from euler_engine.config import DEFAULT_CONFIG, ToleranceConfig
from euler_engine.construct import build_euler, random_conjugate, snap_nonfaithful
from euler_engine.discreteness import generator_labels, nondiscreteness_certificate
from euler_engine.homology import (
    h_order,
    order_in_cokernel,
    relation_matrix_h,
    relation_matrix_z,
)
from euler_engine.lift import (
    DEFAULT_BASEPOINTS,
    Representation,
    euler_class,
    parity,
    relation_residual,
)
from euler_engine.moebius import ProjMatrix, is_marginal
from euler_engine.realize import FuchsianGenerators, realize_signature, realize_triangle, verify_realization
from euler_engine.serialization import (
    GeneratorsModel,
    JorgensenReportModel,
    RepresentationModel,
    WitnessModel,
)
from euler_engine.signature import (
    Signature,
    admits_odd,
    coarea,
    e_gamma,
    enumerate_by_capacity,
    format_signature,
    genus_bounds,
    is_valid,
    lcm_of_periods,
    two_power_data,
)
from euler_engine.utils import enumeration_cache, make_cache_key

logger = logging.getLogger(__name__)


def _marginal(labelled: Iterable[Tuple[str, ProjMatrix]], cfg: ToleranceConfig) -> List[str]:
    """Labels of the generators classified Parabolic only within tolerance."""
    return [label for label, M in labelled if is_marginal(M, cfg)]


def representation_marginal(rho: Representation, cfg: ToleranceConfig = DEFAULT_CONFIG) -> List[str]:
    mats = [M for pair in rho.pairs for M in pair]
    return _marginal(zip(generator_labels(rho.genus), mats), cfg)


def generators_marginal(gens: FuchsianGenerators, cfg: ToleranceConfig = DEFAULT_CONFIG) -> List[str]:
    labelled = [(f"q{j}", M) for j, M in enumerate(gens.q, 1)]
    labelled += [(f"{name}{i}", M) for i, pair in enumerate(gens.handles, 1) for name, M in zip("ab", pair)]
    return _marginal(labelled, cfg)


def signature_info(sig: Signature, n: int = 1) -> Dict[str, Any]:
    info: Dict[str, Any] = {
        "signature": format_signature(sig),
        "coarea": str(coarea(sig)),
        "valid": is_valid(sig),
    }
    if not info["valid"]:
        return info
    info["e"] = e_gamma(sig)
    info["admits_odd"] = admits_odd(sig)
    if sig.cusps == 0:
        m, count = two_power_data(sig)
        lower, upper = genus_bounds(sig, n)
        info.update({
            "d": lcm_of_periods(sig),
            "m": m,
            "n": count,
            "genus_bounds": {"n": n, "lower": lower, "upper": str(upper)},
        })
    return info


def oracle_report(sig: Signature, central: str) -> Dict[str, Any]:
    """Order of z ("z") or h ("h") in H^1, with the relation matrix."""
    R = relation_matrix_z(sig) if central == "z" else relation_matrix_h(sig)
    order = order_in_cokernel(R, R.central_row)
    report = {
        "signature": format_signature(sig),
        "central": central,
        "order": order if order is not None else "infinite",
        "rows": R.row_labels,
        "matrix": R.entries,
    }
    if central == "z":
        report["oracle_e"] = 0 if order is None else order
        report["e_gamma"] = e_gamma(sig)
    else:
        report["h_trivial"] = h_order(sig) == 1
        report["admits_odd"] = admits_odd(sig)
    return report


def enumerate_report(kmax: int) -> Dict[str, Any]:
    key = make_cache_key("enumerate", kmax)
    cached = enumeration_cache.get(key)
    if cached is None:
        sigs = enumerate_by_capacity(kmax)
        cached = [{"signature": format_signature(s), "e": e_gamma(s)} for s in sigs]
        enumeration_cache.set(key, cached)
    return {"euler_max": kmax, "count": len(cached), "signatures": list(cached)}


def euler_report(rho: Representation, cfg: ToleranceConfig = DEFAULT_CONFIG) -> Dict[str, Any]:
    return {
        "genus": rho.genus,
        "euler": euler_class(rho, cfg, basepoints=DEFAULT_BASEPOINTS),
        "parity": parity(rho, cfg),
        "marginal": representation_marginal(rho, cfg),
    }


def verify_report(
    rho: Representation,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
    depth: Optional[int] = None,
) -> Dict[str, Any]:
    e = euler_class(rho, cfg, basepoints=DEFAULT_BASEPOINTS)
    sign = parity(rho, cfg)
    found = nondiscreteness_certificate(rho, depth, cfg)
    return {
        "genus": rho.genus,
        "residual": relation_residual(rho),
        "euler": e,
        "parity": sign,
        "parity_consistent": sign == (-1) ** (e % 2),
        "milnor_wood": abs(e) <= 2 * rho.genus - 2,
        "marginal": representation_marginal(rho, cfg),
        "jorgensen_depth": cfg.jorgensen_depth if depth is None else depth,
        "nondiscreteness_certificate": (
            [JorgensenReportModel.from_domain(r).model_dump() for r in found] if found else None
        ),
    }


def realize_report(sig: Signature, cfg: ToleranceConfig = DEFAULT_CONFIG) -> Dict[str, Any]:
    if sig.genus == 0 and len(sig.periods) == 3 and sig.cusps == 0:
        gens = realize_triangle(*sig.periods, cfg=cfg)
    else:
        gens = realize_signature(sig, cfg)
    cert = verify_realization(gens, cfg)
    logger.info("realized %s, certificate passed: %s", format_signature(sig), cert.passed)
    payload = GeneratorsModel.from_domain(gens, cert).model_dump()
    payload["marginal"] = generators_marginal(gens, cfg)
    return payload


def construct_report(
    genus: int, k: int, cfg: ToleranceConfig = DEFAULT_CONFIG, conjugated: bool = False
) -> Dict[str, Any]:
    rho = build_euler(genus, k, cfg)
    if conjugated:
        rho = random_conjugate(rho, cfg)
    return RepresentationModel.from_domain(rho).model_dump()


def snap_report(rho: Representation, qmax: int, cfg: ToleranceConfig = DEFAULT_CONFIG) -> Dict[str, Any]:
    snapped, witness = snap_nonfaithful(rho, qmax, cfg)
    return {
        "representation": RepresentationModel.from_domain(snapped).model_dump(),
        "witness": WitnessModel.from_domain(witness).model_dump(),
        "euler": euler_class(snapped, cfg),
    }