"""Plain-JSON report builders shared by the HTTP service and the CLI.

Every report has the same envelope:

    {command, input, parameters, results, bounds, provenance}

All values are JSON scalars, arrays, or objects (no timestamps, no floats
unless a value is genuinely fractional), so canonical serialization is
byte-stable across runs.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import families, groupwords
from .errors import InputError
from .msets import FlatnessReport, TensorProduct, check_flat
from .ore import OreQuery, OreVerdict, is_right_ore, ore_witness_table
from .points import (DivisibilityPoset, PointDescriptor, endo_monoid_free,
                     ideal_enumerate, my_ay_disagreement, point_membership)
from .presentation import MonoidPresentation, UNKNOWN, enumerate_elements
from .primes import (Character, LocalizedPresentation, enumerate_prime_ideals)
from .subtoposes import (CrossValidation, cross_validate_flatness,
                         enumerate_monoid_subtoposes)

SCHEMA_VERSION = 1


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def make_report(command: str, input: dict, parameters: dict, results: dict,
                bounds: dict) -> dict:
    return {
        "command": command,
        "input": input,
        "parameters": parameters,
        "results": results,
        "bounds": bounds,
        "provenance": {"schema_version": SCHEMA_VERSION},
    }


def tri(value):
    """Three-valued verdict to JSON: UNKNOWN becomes null."""
    return None if value is UNKNOWN else value


def word_str(w) -> str | None:
    return None if w is None else str(w)


def presentation_summary(p: MonoidPresentation) -> dict:
    return {
        "name": p.name,
        "generators": list(p.generators),
        "relations": [str(rel) for rel in p.relations],
    }


def kb_summary(rs) -> dict:
    return {"status": rs.status, "rules": len(rs.rules),
            "note": rs.bound_note}


# -- primes ------------------------------------------------------------------


def primes_report(p: MonoidPresentation, sample_len: int = 2) -> dict:
    chars = enumerate_prime_ideals(p)
    rs = p.system()
    sample = enumerate_elements(rs, sample_len)
    characters = []
    for c in chars:
        characters.append({
            "bits": c.bitstring,
            "zero_generators": list(c.zero_generators),
            "unit_generators": list(c.unit_generators),
            "ideal_words": [str(w) for w in sample if c.value(w) == 0],
        })
    return make_report(
        "primes",
        input=presentation_summary(p),
        parameters={"sample_len": sample_len},
        results={"count": len(chars), "characters": characters},
        bounds={"rewriting": kb_summary(rs)},
    )


# -- ore ---------------------------------------------------------------------


def _verdict_json(v: OreVerdict, include_table: bool) -> dict:
    out = {
        "status": v.status,
        "method": v.method,
        "holds": tri(v.holds),
        "certificate": v.certificate,
    }
    if v.witness_m is not None:
        out["counterexample"] = {"m": str(v.witness_m), "s": str(v.witness_s)}
    if v.unresolved_m is not None:
        out["unresolved"] = {"m": str(v.unresolved_m),
                             "s": str(v.unresolved_s)}
    if include_table and v.witnesses is not None:
        out["table"] = [
            {"m": str(m), "s": str(s), "t": str(t), "n": str(n)}
            for (m, s), (t, n) in v.witnesses
        ]
    return out


def ore_report(q: OreQuery, include_table: bool = False) -> dict:
    verdict = is_right_ore(q)
    if include_table and verdict.status == "holds" and verdict.witnesses is None:
        table = ore_witness_table(q)
        verdict = OreVerdict(
            verdict.status, method=verdict.method, pair_len=verdict.pair_len,
            witness_len=verdict.witness_len, witnesses=table)
    subset = "ALL" if not isinstance(q.subset, Character) else q.subset.bitstring
    return make_report(
        "ore",
        input=presentation_summary(q.presentation),
        parameters={"subset": subset,
                    "subset_generators": list(q.subset_generators)},
        results=_verdict_json(verdict, include_table),
        bounds={"pair_len": q.pair_len, "witness_len": q.witness_len},
    )


# -- localize ----------------------------------------------------------------


def localize_report(loc: LocalizedPresentation, sample_len: int = 2) -> dict:
    rs = loc.result.system()
    return make_report(
        "localize",
        input=presentation_summary(loc.base),
        parameters={"character": loc.character.bitstring},
        results={
            "presentation": presentation_summary(loc.result),
            "identity_localization": loc.result is loc.base,
            "inverses": {g: inv for g, inv in loc.inverse_names},
            "sample_elements": [str(w) for w in
                                enumerate_elements(rs, sample_len)],
        },
        bounds={"sample_len": sample_len, "rewriting": kb_summary(rs)},
    )


# -- subtoposes --------------------------------------------------------------


def _cross_validation_json(cv: CrossValidation) -> dict:
    return {
        "rows": [
            {"bits": row.bits, "ore": row.ore_status,
             "flatness": row.flat_overall, "outcome": row.outcome}
            for row in cv.rows
        ],
        "compared": cv.compared,
        "skipped": cv.skipped,
        "disagreements": list(cv.disagreements),
        "consistent": cv.consistent,
    }


def subtoposes_report(p: MonoidPresentation, pair_len: int, witness_len: int,
                      cross_validate: bool = False, trunc: int = 4) -> dict:
    records = enumerate_monoid_subtoposes(p, pair_len, witness_len)
    counts = {"confirmed": 0, "excluded": 0, "undecided": 0}
    rows = []
    for rec in records:
        counts[rec.status] += 1
        rows.append({
            "bits": rec.bits,
            "status": rec.status,
            "method": rec.verdict.method,
            "localization": rec.localization.result.name,
        })
    results = {"records": rows, "counts": counts,
               "subtopos_count": len(records)}
    bounds = {"pair_len": pair_len, "witness_len": witness_len}
    if cross_validate:
        results["cross_validation"] = _cross_validation_json(
            cross_validate_flatness(records, trunc))
        bounds["trunc"] = trunc
        bounds["flat_search_len"] = 2 * trunc
    return make_report(
        "subtoposes",
        input=presentation_summary(p),
        parameters={"cross_validate": cross_validate},
        results=results,
        bounds=bounds,
    )


# -- flatness ----------------------------------------------------------------


def _criterion_json(c) -> dict:
    witness = c.witness
    if isinstance(witness, tuple):
        witness = [str(x) for x in witness]
    elif witness is not None:
        witness = str(witness)
    return {"status": c.status, "witness": witness, "detail": c.detail}


def flatness_json(rep: FlatnessReport) -> dict:
    out = {
        "kind": rep.kind,
        "overall": rep.overall,
        "f1": _criterion_json(rep.f1),
        "f2": _criterion_json(rep.f2),
        "f3": _criterion_json(rep.f3),
    }
    return out


def flat_check_report(p: MonoidPresentation, a, search_len: int,
                      parameters: dict, bounds: dict) -> dict:
    rep = check_flat(a, search_len=search_len)
    bounds = dict(bounds)
    bounds["search_len"] = search_len
    return make_report(
        "flat-check",
        input=presentation_summary(p),
        parameters=parameters,
        results=flatness_json(rep),
        bounds=bounds,
    )


# -- tensor ------------------------------------------------------------------


def tensor_report(p: MonoidPresentation, tp: TensorProduct,
                  parameters: dict, bounds: dict) -> dict:
    classes = [
        [[str(x), str(a)] for (x, a) in cls]
        for cls in tp.classes
    ]
    return make_report(
        "tensor",
        input=presentation_summary(p),
        parameters=parameters,
        results={"class_count": len(classes), "classes": classes,
                 "truncated": tp.truncated},
        bounds=bounds,
    )


# -- points ------------------------------------------------------------------


def poset_ideals_report(p: MonoidPresentation | None, poset: DivisibilityPoset,
                        parameters: dict, bounds: dict) -> dict:
    ideals = ideal_enumerate(poset)
    return make_report(
        "points",
        input=(presentation_summary(p) if p is not None
               else {"poset": poset.description}),
        parameters=parameters,
        results={
            "poset_size": len(poset),
            "poset": poset.description,
            "ideal_count": len(ideals),
            "ideals": [list(ideal.labels) for ideal in ideals],
        },
        bounds=bounds,
    )


def _endo_json(cls) -> dict:
    return {
        "kind": cls.kind,
        "conjugator": word_str(cls.conjugator),
        "generator": (None if cls.generator is None
                      else groupwords.format_group_word(cls.generator)),
    }


def point_report(p: MonoidPresentation, pt: PointDescriptor, member: str | None,
                 which: str, check_eq: bool, bound: int) -> dict:
    results = {
        "point": str(pt),
        "kind": pt.kind,
        "stream_prefix": "".join(pt.prefix(16)) if pt.is_infinite else None,
        "fixer_group": _endo_json(endo_monoid_free(pt, len(p.generators))),
    }
    if member is not None:
        g = groupwords.parse_group_word(member, p.generators)
        verdicts = {}
        for side in (("A", "M") if which == "both" else (which,)):
            verdicts[side] = tri(point_membership(g, pt, side, bound))
        results["membership"] = {
            "element": groupwords.format_group_word(g),
            **verdicts,
        }
    if check_eq:
        witness = my_ay_disagreement(pt, bound, k=len(p.generators))
        results["fixers_equal_stabilizers"] = {
            "equal": witness is None,
            "witness": (None if witness is None
                        else groupwords.format_group_word(witness)),
        }
    return make_report(
        "points",
        input=presentation_summary(p),
        parameters={"point": str(pt), "which": which},
        results=results,
        bounds={"bound": bound},
    )


# -- matrix family (snf) -----------------------------------------------------


def _mat_json(m) -> list[list]:
    return [[_num_json(x) for x in row] for row in m.rows()]


def _num_json(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    return int(x)


def snf_report(m: families.IntMatrix2) -> dict:
    u, d, v = families.smith_normal_form(m)
    return make_report(
        "snf",
        input={"matrix": str(m)},
        parameters={},
        results={
            "u": _mat_json(u),
            "d": _mat_json(d),
            "v": _mat_json(v),
            "diagonal": [d.a, d.d],
            "checks": {
                "u_unimodular": abs(u.det) == 1,
                "v_unimodular": abs(v.det) == 1,
                "divisibility": d.d % d.a == 0 if d.a != 0 else d.d == 0,
                "decomposition_ok": u * d * v == m,
                "det_preserved": abs(m.det) == abs(d.det),
                "adjugate_ok": families.adjugate_check(m),
            },
        },
        bounds={},
    )


def mat_membership_report(matrix_text: str, sigma, e11: bool) -> dict:
    results = {}
    parameters = {}
    if sigma is not None:
        m = families.parse_matrix2(matrix_text)
        parameters["sigma"] = list(sigma)
        results["in_prime_ideal"] = families.mat_prime_membership(m, sigma)
        results["det"] = m.det
    if e11:
        g = families.parse_matrix2(matrix_text, rational=True)
        parameters["point"] = "rank-one idempotent e11"
        results["fixes_e11_point"] = families.mat_in_M_y_e11(g)
        results["fixes_zero_point"] = families.mat_in_M_y_zero(g)
    return make_report(
        "snf",
        input={"matrix": matrix_text},
        parameters=parameters,
        results=results,
        bounds={},
    )


# -- torus family (tk) -------------------------------------------------------


def _expect_words(op: str, words: list[str], n: int) -> list[str]:
    if len(words) != n:
        raise InputError(f"tk op {op!r} needs exactly {n} word(s), "
                         f"got {len(words)}")
    return words


def tk_report(k: int, l: int, op: str, words: list[str]) -> dict:
    results: dict = {"op": op}
    if op == "normal-form":
        (w,) = _expect_words(op, words, 1)
        level, tail = families.tk_normal_form(w, k, l)
        results.update({
            "word": w, "level": level, "tail": str(tail),
            "central_generator": f"a^{k}",
        })
    elif op == "equal":
        w1, w2 = _expect_words(op, words, 2)
        results.update({"words": [w1, w2],
                        "equal": families.tk_words_equal(w1, w2, k, l)})
    elif op == "key":
        (w,) = _expect_words(op, words, 1)
        deg, cls = families.tk_element_key(w, k, l)
        results.update({
            "word": w, "degree": deg,
            "class": [[g, e] for g, e in cls],
            "delta": families.tk_delta(w, k, l),
        })
    else:
        raise InputError(f"unknown tk op {op!r}")
    return make_report(
        "tk",
        input={"k": k, "l": l},
        parameters={"op": op},
        results=results,
        bounds={},
    )


# -- supernatural family (sn) ------------------------------------------------


def sn_report(primes_text: str, y_text: str | None, op: str,
              value: str | None) -> dict:
    results: dict = {"op": op}
    parameters: dict = {"primes": primes_text}
    if op in ("in-A", "in-M", "divides", "describe"):
        if y_text is None:
            raise InputError(f"op {op!r} needs --y")
        y = families.parse_supernatural(primes_text, y_text)
        parameters["y"] = str(y)
        if op == "describe":
            results.update({
                "y": str(y),
                "sigma": list(y.sigma),
                "exponents": {str(p): ("inf" if e is None else e)
                              for p, e in zip(y.primes, y.exponents)},
            })
        elif op == "divides":
            if value is None:
                raise InputError("op 'divides' needs a positive integer")
            n = int(value)
            results.update({"n": n, "divides": families.sn_divides(n, y)})
        else:
            if value is None:
                raise InputError(f"op {op!r} needs a rational like 5/4")
            q = Fraction(value)
            member = (families.sn_in_A_y(q, y) if op == "in-A"
                      else families.sn_in_M_y(q, y))
            results.update({"q": str(q), "member": member})
    else:
        raise InputError(f"unknown sn op {op!r}")
    return make_report(
        "sn",
        input={"primes": primes_text, "y": y_text},
        parameters=parameters,
        results=results,
        bounds={},
    )
