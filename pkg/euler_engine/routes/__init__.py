# euler_engine/routes/__init__.py

from fastapi import HTTPException

from euler_engine.errors import EulerEngineError, InvalidInputError


def http_error(exc: EulerEngineError) -> HTTPException:
    """Bad input maps to 400, a failed numerical check to 422."""
    status = 400 if isinstance(exc, InvalidInputError) else 422
    return HTTPException(status_code=status, detail={"error": type(exc).__name__, "message": str(exc)})
