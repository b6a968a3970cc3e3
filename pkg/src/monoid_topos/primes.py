"""Prime ideals of a finitely presented monoid via characters.

A character assigns 0 or 1 to each generator such that every relation is
preserved (the value of a word is 0 iff it contains a 0-generator).  Its
zero set is a prime ideal, and all prime ideals arise this way, so
enumeration walks the 2^k bit assignments and keeps the valid ones.

Localization at a character freely inverts the 1-generators: each inverted
generator g gets a fresh partner g' with relations g g' = 1 and g' g = 1.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field

from .errors import GuardError, InputError
from .presentation import MonoidPresentation, Relation, Word

MAX_GENERATORS_DEFAULT = 24
MAX_GENERATORS_ENV = "MONOID_TOPOS_MAX_GENERATORS"


def _generator_guard() -> int:
    raw = os.environ.get(MAX_GENERATORS_ENV)
    if raw is None:
        return MAX_GENERATORS_DEFAULT
    try:
        return int(raw)
    except ValueError:
        raise GuardError(f"bad {MAX_GENERATORS_ENV} value {raw!r}")


@dataclass(frozen=True)
class Character:
    """A 0/1 generator assignment; serialized as a bitstring in generator
    order (e.g. "01" sends the first generator to 0, the second to 1)."""

    presentation: MonoidPresentation = field(compare=False)
    bits: tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.bits) != len(self.presentation.generators):
            raise InputError(
                f"character needs {len(self.presentation.generators)} bits, "
                f"got {len(self.bits)}")
        if any(b not in (0, 1) for b in self.bits):
            raise InputError("character bits must be 0 or 1")

    @staticmethod
    def from_bitstring(p: MonoidPresentation, s: str) -> "Character":
        if any(ch not in "01" for ch in s):
            raise InputError(f"bad character bitstring {s!r}")
        return Character(p, tuple(int(ch) for ch in s))

    @property
    def bitstring(self) -> str:
        return "".join(str(b) for b in self.bits)

    def value(self, w: Word) -> int:
        """Multiplicative value of a word: 0 iff some letter maps to 0."""
        idx = self.presentation._index
        for letter in w:
            if letter not in idx:
                raise InputError(f"unknown generator {letter!r}")
            if self.bits[idx[letter]] == 0:
                return 0
        return 1

    def is_valid(self) -> bool:
        """True iff every relation is preserved."""
        return all(self.value(rel.lhs) == self.value(rel.rhs)
                   for rel in self.presentation.relations)

    @property
    def zero_generators(self) -> tuple[str, ...]:
        """Generators in the prime ideal (value 0), in generator order."""
        return tuple(g for g, b in zip(self.presentation.generators, self.bits)
                     if b == 0)

    @property
    def unit_generators(self) -> tuple[str, ...]:
        """Generators outside the ideal (value 1), in generator order."""
        return tuple(g for g, b in zip(self.presentation.generators, self.bits)
                     if b == 1)

    def __str__(self):
        return self.bitstring


def enumerate_prime_ideals(p: MonoidPresentation) -> list[Character]:
    """All valid characters, sorted by bit pattern.

    The all-ones character is always valid (empty prime ideal).  Guarded at
    24 generators by default; MONOID_TOPOS_MAX_GENERATORS overrides.
    """
    k = len(p.generators)
    guard = _generator_guard()
    if k > guard:
        raise GuardError(
            f"{k} generators exceeds the enumeration guard of {guard} "
            f"(set {MAX_GENERATORS_ENV} to override)")
    out = []
    for bits in itertools.product((0, 1), repeat=k):
        c = Character(p, bits)
        if c.is_valid():
            out.append(c)
    return out


def in_prime_ideal(c: Character, w: Word) -> bool:
    """Membership of a word's element in the character's prime ideal.

    Well-defined on elements because valid characters respect relations.
    """
    return c.value(w) == 0


@dataclass(frozen=True)
class LocalizedPresentation:
    """A presentation of the localization M_p together with its provenance."""

    base: MonoidPresentation = field(compare=False)
    character: Character = field(compare=False)
    result: MonoidPresentation = field(compare=False)
    inverse_names: tuple[tuple[str, str], ...] = ()

    @property
    def inverted_generators(self) -> tuple[str, ...]:
        return tuple(g for g, _ in self.inverse_names)

    def inverse_of(self, g: str) -> str:
        for base_g, inv in self.inverse_names:
            if base_g == g:
                return inv
        raise InputError(f"generator {g!r} is not inverted here")


def localization_presentation(p: MonoidPresentation,
                              c: Character) -> LocalizedPresentation:
    """Present M_p: add a fresh primed partner for each 1-generator with the
    two-sided inverse relations.  With no 1-generators the result is the
    base presentation itself (identity localization)."""
    if c.presentation is not p:
        raise InputError("character belongs to a different presentation")
    if not c.is_valid():
        raise InputError(f"character {c.bitstring} does not respect relations")
    inverted = c.unit_generators
    if not inverted:
        return LocalizedPresentation(p, c, p, ())
    taken = set(p.generators)
    pairs = []
    for g in inverted:
        fresh = g + "'"
        while fresh in taken:
            fresh += "'"
        taken.add(fresh)
        pairs.append((g, fresh))
    gens = list(p.generators) + [inv for _, inv in pairs]
    rels = list(p.relations)
    for g, inv in pairs:
        rels.append(Relation(Word.of(g, inv), Word()))
        rels.append(Relation(Word.of(inv, g), Word()))
    name = f"{p.name or 'M'}[{c.bitstring}^-1]"
    result = MonoidPresentation(gens, rels, name=name)
    return LocalizedPresentation(p, c, result, tuple(pairs))


def groupification(p: MonoidPresentation) -> LocalizedPresentation:
    """Localization at the all-ones character (invert every generator)."""
    c = Character(p, (1,) * len(p.generators))
    return localization_presentation(p, c)
