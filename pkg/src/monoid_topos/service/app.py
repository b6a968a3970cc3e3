"""FastAPI service exposing the library; the CLI is a thin client of it."""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import __version__, registry, reports
from ..errors import GuardError, InputError
from ..families import parse_matrix2
from ..msets import SymbolicMSet, parse_mset, tensor
from ..ore import ALL, OreQuery
from ..points import DivisibilityPoset, parse_point
from ..primes import Character, localization_presentation
from .schemas import (FlatCheckRequest, LocalizeRequest, OreRequest,
                      PointsRequest, PrimesRequest, Report, SnfRequest,
                      SnRequest, SubtoposesRequest, TensorRequest, TkRequest)

app = FastAPI(title="monoid-topos", version=__version__)


@app.exception_handler(InputError)
async def _input_error(request, exc: InputError):
    return JSONResponse(status_code=400,
                        content={"error": {"kind": "input",
                                           "message": str(exc)}})


@app.exception_handler(GuardError)
async def _guard_error(request, exc: GuardError):
    return JSONResponse(status_code=400,
                        content={"error": {"kind": "guard",
                                           "message": str(exc)}})


@app.get("/health")
async def health():
    return {"status": "ok", "version": __version__}


def _monoid(spec: str):
    return registry.resolve_presentation(spec)


@app.post("/primes", response_model=Report)
async def primes(req: PrimesRequest):
    return reports.primes_report(_monoid(req.monoid), req.sample_len)


@app.post("/ore", response_model=Report)
async def ore(req: OreRequest):
    p = _monoid(req.monoid)
    subset = ALL if req.char is None else Character.from_bitstring(p, req.char)
    q = OreQuery(p, subset=subset, pair_len=req.pair_len,
                 witness_len=req.witness_len)
    return reports.ore_report(q, include_table=req.table)


@app.post("/localize", response_model=Report)
async def localize(req: LocalizeRequest):
    p = _monoid(req.monoid)
    loc = localization_presentation(p, Character.from_bitstring(p, req.char))
    return reports.localize_report(loc, req.sample_len)


@app.post("/subtoposes", response_model=Report)
async def subtoposes(req: SubtoposesRequest):
    return reports.subtoposes_report(
        _monoid(req.monoid), req.pair_len, req.witness_len,
        cross_validate=req.cross_validate, trunc=req.trunc)


@app.post("/flat-check", response_model=Report)
async def flat_check(req: FlatCheckRequest):
    p = _monoid(req.monoid)
    if req.mset is not None:
        a = parse_mset(req.mset, p, side="left")
        search_len = req.search_len if req.search_len is not None else 6
        return reports.flat_check_report(
            p, a, search_len, parameters={"module": "finite-left"}, bounds={})
    if req.char is not None:
        loc = localization_presentation(
            p, Character.from_bitstring(p, req.char))
        a = SymbolicMSet(loc, req.trunc)
        search_len = (req.search_len if req.search_len is not None
                      else 2 * req.trunc)
        return reports.flat_check_report(
            p, a, search_len,
            parameters={"module": "localization", "character": req.char},
            bounds={"trunc": req.trunc})
    raise InputError("flat-check needs either an mset text or a character")


@app.post("/tensor", response_model=Report)
async def tensor_endpoint(req: TensorRequest):
    p = _monoid(req.monoid)
    x = parse_mset(req.right_mset, p, side="right")
    parameters: dict = {"right": "finite-right"}
    bounds: dict = {}
    if req.left_mset is not None:
        a = parse_mset(req.left_mset, p, side="left")
        parameters["left"] = "finite-left"
    else:
        if req.char is not None:
            loc = localization_presentation(
                p, Character.from_bitstring(p, req.char))
            parameters["left"] = "localization"
            parameters["character"] = req.char
            a = SymbolicMSet(loc, req.trunc)
        else:
            parameters["left"] = "monoid"
            a = SymbolicMSet.of_monoid(p, req.trunc)
        bounds["trunc"] = req.trunc
    return reports.tensor_report(p, tensor(x, a), parameters, bounds)


@app.post("/points", response_model=Report)
async def points(req: PointsRequest):
    if req.point is not None:
        if req.monoid is None:
            raise InputError("point operations need a monoid")
        p = _monoid(req.monoid)
        pt = parse_point(req.point, p)
        if req.which not in ("A", "M", "both"):
            raise InputError(f"which must be A, M, or both, got {req.which!r}")
        return reports.point_report(p, pt, req.member, req.which,
                                    req.check_eq, req.bound)
    if req.divisors is not None:
        poset = DivisibilityPoset.from_divisors(req.divisors)
        return reports.poset_ideals_report(
            None, poset, parameters={"divisors": req.divisors}, bounds={})
    if req.monoid is None:
        raise InputError("points needs a monoid, a point, or --divisors")
    p = _monoid(req.monoid)
    poset = DivisibilityPoset.from_presentation(p, req.max_len)
    return reports.poset_ideals_report(
        p, poset, parameters={}, bounds={"max_len": req.max_len})


@app.post("/snf", response_model=Report)
async def snf(req: SnfRequest):
    if req.sigma is not None or req.e11:
        sigma = None
        if req.sigma is not None:
            try:
                sigma = [int(x) for x in req.sigma.split(",")]
            except ValueError:
                raise InputError(f"bad sigma {req.sigma!r}")
        return reports.mat_membership_report(req.matrix, sigma, req.e11)
    return reports.snf_report(parse_matrix2(req.matrix))


@app.post("/tk", response_model=Report)
async def tk(req: TkRequest):
    return reports.tk_report(req.k, req.l, req.op, req.words)


@app.post("/sn", response_model=Report)
async def sn(req: SnRequest):
    return reports.sn_report(req.primes, req.y, req.op, req.value)
