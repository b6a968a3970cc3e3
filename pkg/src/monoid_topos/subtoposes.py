"""The complete list of subtoposes of monoid type.

Candidate subtoposes correspond to the characters of the monoid (one per
prime ideal of the presheaf topos).  A candidate is confirmed when the
right Ore condition holds for the character's denominator set, excluded
when it fails, and left undecided when the bounded search is inconclusive.

Cross-validation replays each decided verdict against the independent
flatness test on the truncated localization, reporting any disagreement.
"""

from __future__ import annotations

from dataclasses import dataclass

from .msets import FlatnessReport, SymbolicMSet, check_flat
from .ore import DEFAULT_PAIR_LEN, DEFAULT_WITNESS_LEN, OreQuery, OreVerdict, is_right_ore
from .presentation import MonoidPresentation, UNKNOWN
from .primes import Character, LocalizedPresentation, enumerate_prime_ideals, localization_presentation

CONFIRMED = "confirmed"
EXCLUDED = "excluded"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class SubtoposRecord:
    character: Character
    verdict: OreVerdict
    localization: LocalizedPresentation
    status: str  # confirmed | excluded | undecided

    @property
    def bits(self) -> str:
        return self.character.bitstring


def enumerate_monoid_subtoposes(p: MonoidPresentation,
                                pair_len: int = DEFAULT_PAIR_LEN,
                                witness_len: int = DEFAULT_WITNESS_LEN
                                ) -> list[SubtoposRecord]:
    """One record per character, in bitstring order."""
    records = []
    for char in enumerate_prime_ideals(p):
        verdict = is_right_ore(OreQuery(p, subset=char, pair_len=pair_len,
                                        witness_len=witness_len))
        holds = verdict.holds
        if holds is UNKNOWN:
            status = UNDECIDED
        elif holds:
            status = CONFIRMED
        else:
            status = EXCLUDED
        records.append(SubtoposRecord(
            char, verdict, localization_presentation(p, char), status))
    return records


def confirmed_subtoposes(records) -> list[SubtoposRecord]:
    return [r for r in records if r.status == CONFIRMED]


@dataclass(frozen=True)
class CrossValidationRow:
    bits: str
    ore_status: str
    flat_overall: str
    outcome: str  # "agree" | "skipped" | "DISAGREE"


@dataclass(frozen=True)
class CrossValidation:
    rows: tuple[CrossValidationRow, ...]
    compared: int
    skipped: int
    disagreements: tuple[str, ...]

    @property
    def consistent(self) -> bool:
        return not self.disagreements


def cross_validate_flatness(records, trunc: int = 4) -> CrossValidation:
    """Check each decided Ore verdict against the flatness of the truncated
    localization, viewed as a left module over the base monoid.

    The flatness search length is doubled relative to the carrier
    truncation so that common-denominator witnesses (products of the two
    elements being compared) fit inside the search window.
    """
    rows = []
    disagreements = []
    compared = skipped = 0
    for rec in records:
        if rec.status == UNDECIDED:
            rows.append(CrossValidationRow(rec.bits, rec.status, "-", "skipped"))
            skipped += 1
            continue
        sym = SymbolicMSet(rec.localization, trunc)
        report: FlatnessReport = check_flat(sym, search_len=2 * trunc)
        flat = report.overall
        if flat == "unknown":
            rows.append(CrossValidationRow(rec.bits, rec.status, flat, "skipped"))
            skipped += 1
            continue
        compared += 1
        expected = "flat" if rec.status == CONFIRMED else "not-flat"
        if flat == expected:
            rows.append(CrossValidationRow(rec.bits, rec.status, flat, "agree"))
        else:
            rows.append(CrossValidationRow(rec.bits, rec.status, flat, "DISAGREE"))
            disagreements.append(
                f"character {rec.bits}: Ore says {rec.status}, "
                f"flatness test says {flat}")
    return CrossValidation(tuple(rows), compared, skipped, tuple(disagreements))
