"""HTTP front end: ``uvicorn conemetrics.service:app``."""

from __future__ import annotations

from typing import List

from fastapi import FastAPI, Request as HttpRequest
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from . import __version__
from .api import DOMAIN, OK, USAGE, handle
from .schemas import Request, Response

STATUS = {OK: 200, DOMAIN: 422, USAGE: 400}

app = FastAPI(title="conemetrics", version=__version__)


@app.exception_handler(RequestValidationError)
async def _bad_request(request: HttpRequest, exc: RequestValidationError):
    msg = "; ".join(f"{'.'.join(map(str, e['loc']))}: {e['msg']}" for e in exc.errors())
    body = {"options": {}, "error": {"code": "usage_error", "kind": "usage", "message": msg}}
    return JSONResponse(body, status_code=STATUS[USAGE])


@app.get("/health")
def health():
    return {"status": "ok", "version": __version__}


@app.post("/v1/run", response_model=Response, response_model_exclude_none=True)
def run(req: Request):
    body, code = handle(req.model_dump(exclude_none=True))
    return JSONResponse(body, status_code=STATUS[code])


@app.post("/v1/batch")
def batch(reqs: List[dict]):
    """Each item is validated on its own so one bad line does not sink the rest."""
    out = []
    for item in reqs:
        body, code = handle(item)
        body["exit_code"] = code
        out.append(body)
    return out
