"""Mapping of domain exceptions to HTTP responses."""

from fastapi import FastAPI, Request, status
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from app.core import exceptions as exc

STATUS_CODES: dict[type[exc.QuotaServiceError], int] = {
    exc.QuotaExceeded: status.HTTP_507_INSUFFICIENT_STORAGE,
    exc.StoreFull: status.HTTP_507_INSUFFICIENT_STORAGE,
    exc.NotFound: status.HTTP_404_NOT_FOUND,
    exc.AlreadyExists: status.HTTP_409_CONFLICT,
    exc.DirectoryNotEmpty: status.HTTP_409_CONFLICT,
    exc.ScanInProgress: status.HTTP_409_CONFLICT,
    exc.StaleReport: status.HTTP_409_CONFLICT,
    exc.NotAFile: status.HTTP_400_BAD_REQUEST,
    exc.InvalidPath: status.HTTP_400_BAD_REQUEST,
    exc.InvalidLimit: status.HTTP_400_BAD_REQUEST,
    exc.InvalidInterval: status.HTTP_400_BAD_REQUEST,
    exc.Unauthenticated: status.HTTP_401_UNAUTHORIZED,
    exc.Forbidden: status.HTTP_403_FORBIDDEN,
}


def status_for(error: exc.QuotaServiceError) -> int:
    for cls in type(error).__mro__:
        if cls in STATUS_CODES:
            return STATUS_CODES[cls]
    return status.HTTP_500_INTERNAL_SERVER_ERROR


async def service_error_handler(request: Request, error: Exception) -> JSONResponse:
    assert isinstance(error, exc.QuotaServiceError)
    headers = {"WWW-Authenticate": "Bearer"} if isinstance(error, exc.Unauthenticated) else None
    return JSONResponse(
        status_code=status_for(error), content={"error": error.message}, headers=headers
    )


async def validation_error_handler(request: Request, error: Exception) -> JSONResponse:
    assert isinstance(error, RequestValidationError)
    details = "; ".join(
        f"{'.'.join(str(p) for p in item['loc'])}: {item['msg']}" for item in error.errors()
    )
    return JSONResponse(
        status_code=status.HTTP_400_BAD_REQUEST,
        content={"error": f"Malformed request: {details}"},
    )


def register_exception_handlers(app: FastAPI) -> None:
    app.add_exception_handler(exc.QuotaServiceError, service_error_handler)
    app.add_exception_handler(RequestValidationError, validation_error_handler)
