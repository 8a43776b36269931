"""HTTP surface: one endpoint per interactive operation.

Long-running experiment sweeps are deliberately not exposed here; they run
through the CLI and write their outputs to disk.
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, HTTPException

from . import service

app = FastAPI(
    title="nonolab",
    description="Nonogram inference laboratory: boards, encodings, solving, gadgets",
    version="0.1.0",
)


def _run(handler, request):
    try:
        return handler(request)
    except service.ServiceError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/generate", response_model=service.GenerateResponse)
def generate(request: service.GenerateRequest):
    return _run(service.handle_generate, request)


@app.post("/extract", response_model=service.ExtractResponse)
def extract(request: service.ExtractRequest):
    return _run(service.handle_extract, request)


@app.post("/verify", response_model=service.VerifyResponse)
def verify(request: service.VerifyRequest):
    return _run(service.handle_verify, request)


@app.post("/automaton", response_model=service.AutomatonResponse)
def automaton(request: service.AutomatonRequest):
    return _run(service.handle_automaton, request)


@app.post("/encode", response_model=service.EncodeResponse)
def encode(request: service.EncodeRequest):
    return _run(service.handle_encode, request)


@app.post("/predict-size", response_model=service.PredictSizeResponse)
def predict_size(request: service.PredictSizeRequest):
    return _run(service.handle_predict_size, request)


@app.post("/solve", response_model=service.SolveResponse)
def solve(request: service.SolveRequest):
    return _run(service.handle_solve, request)


@app.post("/infer", response_model=service.InferResponse)
def infer(request: service.InferRequest):
    return _run(service.handle_infer, request)


@app.get("/gadgets/verify", response_model=service.GadgetVerifyResponse)
def gadgets_verify(gadget: Optional[str] = None):
    try:
        return service.handle_gadget_verify(gadget)
    except service.ServiceError as exc:
        raise HTTPException(status_code=404, detail=str(exc)) from exc
