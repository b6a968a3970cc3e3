"""Request and response models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class PrimesRequest(BaseModel):
    monoid: str
    sample_len: int = 2


class OreRequest(BaseModel):
    monoid: str
    char: str | None = None  # bitstring; omitted = the whole monoid
    pair_len: int = 4
    witness_len: int = 8
    table: bool = False


class LocalizeRequest(BaseModel):
    monoid: str
    char: str
    sample_len: int = 2


class SubtoposesRequest(BaseModel):
    monoid: str
    pair_len: int = 4
    witness_len: int = 8
    cross_validate: bool = False
    trunc: int = 4


class FlatCheckRequest(BaseModel):
    monoid: str
    mset: str | None = None  # finite left action in text format, or ...
    char: str | None = None  # ... a localization carrier picked by character
    trunc: int = 4
    search_len: int | None = None


class TensorRequest(BaseModel):
    monoid: str
    right_mset: str
    left_mset: str | None = None  # finite left action; default: the monoid
    char: str | None = None       # localization carrier instead
    trunc: int = 4


class PointsRequest(BaseModel):
    monoid: str | None = None
    max_len: int = 3              # poset truncation for the ideal listing
    divisors: int | None = None   # use the divisor poset of n instead
    point: str | None = None      # "abba*", "ab(ba)^w", or "fib"
    member: str | None = None     # group word in the case convention
    which: str = "both"           # A | M | both
    check_eq: bool = False
    bound: int = 8


class SnfRequest(BaseModel):
    matrix: str
    sigma: str | None = None      # comma-separated primes
    e11: bool = False


class TkRequest(BaseModel):
    k: int
    l: int
    op: str                       # normal-form | equal | key
    words: list[str] = Field(default_factory=list)


class SnRequest(BaseModel):
    primes: str
    y: str | None = None
    op: str                       # describe | divides | in-A | in-M
    value: str | None = None


class Report(BaseModel):
    command: str
    input: dict
    parameters: dict
    results: dict
    bounds: dict
    provenance: dict
