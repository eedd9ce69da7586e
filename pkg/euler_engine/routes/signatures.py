# euler_engine/routes/signatures.py

from typing import Any, Dict, Literal, Union

from fastapi import APIRouter, HTTPException, Query
from pydantic import BaseModel, Field

from euler_engine.errors import EulerEngineError
from euler_engine.reports import enumerate_report, oracle_report, signature_info
from euler_engine.routes import http_error
from euler_engine.serialization import SignatureModel
from euler_engine.signature import Signature, parse_signature

router = APIRouter(prefix="/signatures", tags=["signatures"])

# enumeration cost grows quickly with K
MAX_EULER = 12


# -------------------------------
# Pydantic Models
# -------------------------------
class SignatureRequest(BaseModel):
    # text form "g;k1,...,kr" or the structured JSON form
    signature: Union[str, SignatureModel]
    multiple: int = Field(1, ge=1)


class OracleRequest(BaseModel):
    signature: Union[str, SignatureModel]
    central: Literal["z", "h"] = "z"


def _parse(given: Union[str, SignatureModel]) -> Signature:
    if isinstance(given, SignatureModel):
        return given.to_domain()
    if not given.strip():
        raise HTTPException(
            status_code=400,
            detail={"error": "InvalidSignature", "message": "signature is empty"},
        )
    return parse_signature(given)


# -------------------------------
# Endpoints
# -------------------------------
@router.post("/info")
def info_endpoint(req: SignatureRequest) -> Dict[str, Any]:
    try:
        return signature_info(_parse(req.signature), req.multiple)
    except EulerEngineError as exc:
        raise http_error(exc)


@router.post("/oracle")
def oracle_endpoint(req: OracleRequest) -> Dict[str, Any]:
    try:
        return oracle_report(_parse(req.signature), req.central)
    except EulerEngineError as exc:
        raise http_error(exc)


@router.get("/enumerate")
def enumerate_endpoint(euler_max: int = Query(..., ge=1, le=MAX_EULER)) -> Dict[str, Any]:
    try:
        return enumerate_report(euler_max)
    except EulerEngineError as exc:
        raise http_error(exc)
