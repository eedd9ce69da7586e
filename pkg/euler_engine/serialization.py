# euler_engine/serialization.py
"""
JSON formats (pydantic models) for representations, signatures, realized
generators, certificates and witnesses.

Readers canonicalize every matrix and check the surface relation; writers emit
canonical matrices, so a file written here re-reads bit-exactly.
"""

import json
import math
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator

from euler_engine import __version__
from euler_engine.config import DEFAULT_CONFIG, ToleranceConfig
from euler_engine.construct import WitnessWord
from euler_engine.discreteness import JorgensenReport
from euler_engine.lift import Representation, check_relation
from euler_engine.moebius import ProjMatrix, canonicalize
from euler_engine.realize import FuchsianGenerators, RealizationCertificate
from euler_engine.signature import Signature, format_signature

Matrix = List[List[float]]


def _finite_or_none(x: float) -> Optional[float]:
    return x if math.isfinite(x) else None


def matrix_from_list(rows: Matrix, cfg: ToleranceConfig = DEFAULT_CONFIG) -> ProjMatrix:
    return canonicalize(rows, cfg)


class PairModel(BaseModel):
    A: Matrix
    B: Matrix

    @field_validator("A", "B")
    @classmethod
    def _two_by_two(cls, v: Matrix) -> Matrix:
        if len(v) != 2 or any(len(row) != 2 for row in v):
            raise ValueError("each matrix must be 2x2")
        return v


class RepresentationModel(BaseModel):
    genus: int = Field(..., ge=1)
    pairs: List[PairModel]

    @classmethod
    def from_domain(cls, rho: Representation) -> "RepresentationModel":
        return cls(genus=rho.genus, pairs=[PairModel(A=A.as_list(), B=B.as_list()) for A, B in rho.pairs])

    def to_domain(self, cfg: ToleranceConfig = DEFAULT_CONFIG, verify: bool = True) -> Representation:
        rho = Representation(
            genus=self.genus,
            pairs=tuple((matrix_from_list(p.A, cfg), matrix_from_list(p.B, cfg)) for p in self.pairs),
        )
        if verify:
            check_relation(rho, cfg)
        return rho


class SignatureModel(BaseModel):
    genus: int = Field(..., ge=0)
    periods: List[int] = Field(default_factory=list)
    cusps: int = Field(0, ge=0)

    @classmethod
    def from_domain(cls, sig: Signature) -> "SignatureModel":
        return cls(genus=sig.genus, periods=list(sig.periods), cusps=sig.cusps)

    def to_domain(self) -> Signature:
        return Signature(genus=self.genus, periods=tuple(self.periods), cusps=self.cusps)


class CertificateModel(BaseModel):
    residual: float
    angle_errors: List[Optional[float]]
    area_error: Optional[float]
    lift_exponent: int
    expected_exponent: int
    jorgensen_min: Optional[float]
    passed: bool

    @classmethod
    def from_domain(cls, cert: RealizationCertificate) -> "CertificateModel":
        return cls(
            residual=cert.residual,
            angle_errors=[_finite_or_none(x) for x in cert.angle_errors],
            area_error=_finite_or_none(cert.area_error),
            lift_exponent=cert.lift_exponent,
            expected_exponent=cert.expected_exponent,
            jorgensen_min=_finite_or_none(cert.jorgensen_min),
            passed=cert.passed,
        )


class GeneratorsModel(BaseModel):
    signature: str
    q: List[Matrix]
    handles: List[PairModel]
    domain: List[Tuple[float, float]] = Field(default_factory=list)
    center: Tuple[float, float] = (0.0, 1.0)
    certificate: Optional[CertificateModel] = None

    @classmethod
    def from_domain(
        cls, gens: FuchsianGenerators, certificate: Optional[RealizationCertificate] = None
    ) -> "GeneratorsModel":
        return cls(
            signature=format_signature(gens.sig),
            q=[M.as_list() for M in gens.q],
            handles=[PairModel(A=A.as_list(), B=B.as_list()) for A, B in gens.handles],
            domain=[(z.real, z.imag) for z in gens.domain],
            center=(gens.center.real, gens.center.imag),
            certificate=CertificateModel.from_domain(certificate) if certificate else None,
        )


class WitnessModel(BaseModel):
    letters: List[Tuple[str, int]]
    residual: float

    @classmethod
    def from_domain(cls, witness: WitnessWord) -> "WitnessModel":
        return cls(letters=[tuple(x) for x in witness.letters], residual=witness.residual)


class JorgensenReportModel(BaseModel):
    value: float
    pair: Tuple[str, str]
    elementary_flag: bool

    @classmethod
    def from_domain(cls, report: JorgensenReport) -> "JorgensenReportModel":
        return cls(value=report.value, pair=report.pair, elementary_flag=report.elementary_flag)


# -------------------------------
# Files and report envelopes
# -------------------------------
def envelope(payload: Dict[str, Any], cfg: ToleranceConfig) -> Dict[str, Any]:
    """Attach the effective configuration and library version to a report."""
    out = dict(payload)
    out["config"] = cfg.model_dump()
    out["version"] = __version__
    return out


def dumps(payload: Any) -> str:
    # json writes floats with repr, the shortest string that reads back bit-exactly
    if isinstance(payload, BaseModel):
        payload = payload.model_dump()
    return json.dumps(payload, indent=2, allow_nan=False)


def save_json(path: str, payload: Any) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(payload))
        f.write("\n")


def load_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def load_representation(path: str, cfg: ToleranceConfig = DEFAULT_CONFIG, verify: bool = True) -> Representation:
    return RepresentationModel(**load_json(path)).to_domain(cfg, verify=verify)


def save_representation(path: str, rho: Representation) -> None:
    save_json(path, RepresentationModel.from_domain(rho))
