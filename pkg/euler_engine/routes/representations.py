# euler_engine/routes/representations.py

from typing import Any, Dict, Optional

from fastapi import APIRouter
from pydantic import BaseModel, Field

from euler_engine.config import DEFAULT_CONFIG
from euler_engine.errors import EulerEngineError
from euler_engine.reports import construct_report, euler_report, verify_report
from euler_engine.routes import http_error
from euler_engine.serialization import RepresentationModel

router = APIRouter(prefix="/representations", tags=["representations"])


class ConstructRequest(BaseModel):
    genus: int = Field(..., ge=1)
    euler: int


class VerifyRequest(BaseModel):
    representation: RepresentationModel
    jorgensen_depth: Optional[int] = Field(None, ge=1, le=6)


@router.post("/euler")
def euler_endpoint(rep: RepresentationModel) -> Dict[str, Any]:
    try:
        return euler_report(rep.to_domain(DEFAULT_CONFIG), DEFAULT_CONFIG)
    except EulerEngineError as exc:
        raise http_error(exc)


@router.post("/verify")
def verify_endpoint(req: VerifyRequest) -> Dict[str, Any]:
    try:
        rho = req.representation.to_domain(DEFAULT_CONFIG)
        return verify_report(rho, DEFAULT_CONFIG, req.jorgensen_depth)
    except EulerEngineError as exc:
        raise http_error(exc)


@router.post("/construct")
def construct_endpoint(req: ConstructRequest) -> Dict[str, Any]:
    try:
        return construct_report(req.genus, req.euler, DEFAULT_CONFIG)
    except EulerEngineError as exc:
        raise http_error(exc)
