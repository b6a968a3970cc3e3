"""The right Ore condition for a submonoid S of a presented monoid M:

    for every m in M and s in S there are t in S, n in M with m t = s n.

S is either all of M or the submonoid generated by a character's
1-generators.  The verdict is three-valued and every outcome carries its
evidence: Holds by a proof method (commutativity, the free-monoid prefix
criterion, or bounded exhaustive search with a full witness table), Fails
with an exact counterexample pair, or Unknown with the bound that ran out.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .presentation import MonoidPresentation, UNKNOWN, Word, words_equal
from .primes import Character

ALL = "ALL"

DEFAULT_PAIR_LEN = 4
DEFAULT_WITNESS_LEN = 8


@dataclass(frozen=True)
class OreQuery:
    presentation: MonoidPresentation
    subset: Character | str = ALL
    pair_len: int = DEFAULT_PAIR_LEN
    witness_len: int = DEFAULT_WITNESS_LEN

    def __post_init__(self):
        if self.subset is not ALL and not isinstance(self.subset, Character):
            raise InputError("subset must be ALL or a Character")
        if isinstance(self.subset, Character):
            if self.subset.presentation is not self.presentation:
                raise InputError("character belongs to a different presentation")
            if not self.subset.is_valid():
                raise InputError(
                    f"character {self.subset.bitstring} does not respect relations")
        if self.pair_len < 0 or self.witness_len < self.pair_len:
            raise InputError("need 0 <= pair_len <= witness_len")

    @property
    def subset_generators(self) -> tuple[str, ...]:
        if self.subset is ALL:
            return self.presentation.generators
        return self.subset.unit_generators


@dataclass(frozen=True)
class OreVerdict:
    status: str                      # "holds" | "fails" | "unknown"
    method: str | None = None        # "commutative" | "prefix-free-criterion"
    #                                | "exhaustive" (for holds)
    pair_len: int | None = None
    witness_len: int | None = None
    witness_m: Word | None = None    # fails: the pair with empty intersection
    witness_s: Word | None = None
    certificate: str | None = None   # fails: why the failure is exact
    unresolved_m: Word | None = None  # unknown: first pair the search lost
    unresolved_s: Word | None = None
    witnesses: tuple | None = None   # holds{exhaustive}: ((m,s),(t,n)) rows

    @property
    def holds(self):
        return {"holds": True, "fails": False}.get(self.status, UNKNOWN)


def _subset_words(rs, subset_gens, max_len):
    """Irreducible words over the subset alphabet, shortlex order.

    Normal forms of S-elements stay inside the subset alphabet (characters
    are multiplicative), so these represent every S-element reachable at
    this length.
    """
    p = rs.presentation
    allowed = {g for g in subset_gens}
    out = []
    for s in rs.iter_irreducible_internal(max_len):
        w = p.decode(s)
        if all(g in allowed for g in w):
            out.append(w)
    return out


def _element_keyer(rs):
    """A hashable key proving equality when it matches.

    Confluent system: the normal form decides.  Exact oracle: the injective
    invariant decides.  Otherwise the normal form still soundly proves
    equality on match (but may miss equalities, leading to Unknown)."""
    p = rs.presentation
    if not rs.is_confluent and p.element_key is not None:
        return lambda w: p.element_key(rs.normal_form(w))
    return lambda w: rs.reduce_internal(p.encode(w))


def _exhaustive_search(q: OreQuery, rs):
    """Try to witness every pair (m, s) within the bounds.

    Returns ("holds", witness_rows) or ("unknown", (m, s)) for the first
    pair whose witness search exhausted.  Never returns fails: absence of a
    bounded witness is not a disproof.
    """
    p = q.presentation
    key_of = _element_keyer(rs)
    m_words = [p.decode(s) for s in rs.iter_irreducible_internal(q.pair_len)]
    s_words = _subset_words(rs, q.subset_generators, q.pair_len)
    t_words = _subset_words(rs, q.subset_generators, q.witness_len)
    n_words = [p.decode(s) for s in rs.iter_irreducible_internal(q.witness_len)]
    rows = []
    for s in s_words:
        targets = {}
        for n in n_words:
            targets.setdefault(key_of(s * n), n)
        for m in m_words:
            hit = None
            for t in t_words:
                n = targets.get(key_of(m * t))
                if n is not None:
                    hit = (t, n)
                    break
            if hit is None:
                return "unknown", (m, s)
            rows.append(((m, s), hit))
    rows.sort(key=lambda row: (p.shortlex_key(row[0][0]), p.shortlex_key(row[0][1])))
    return "holds", tuple(rows)


def is_right_ore(q: OreQuery) -> OreVerdict:
    """Decide the right Ore condition by a cascade of exact criteria with a
    bounded exhaustive fallback."""
    p = q.presentation
    bounds = dict(pair_len=q.pair_len, witness_len=q.witness_len)
    if p.is_commutative:
        return OreVerdict("holds", method="commutative", **bounds)
    if p.is_relation_free:
        s_gens = q.subset_generators
        if not s_gens:
            # S = {1}: trivially Ore (take t = 1, n = m)
            return OreVerdict("holds", method="prefix-free-criterion", **bounds)
        s = s_gens[0]
        m = next(g for g in p.generators if g != s)
        return OreVerdict(
            "fails", method="prefix-free-criterion",
            witness_m=Word.of(m), witness_s=Word.of(s),
            certificate=(
                "in a free monoid u M and v M meet iff one of u, v is a "
                f"prefix of the other; {m} M and {s} M share no element"),
            **bounds)
    rs = p.system()
    outcome, payload = _exhaustive_search(q, rs)
    if outcome == "holds":
        return OreVerdict("holds", method="exhaustive", witnesses=payload,
                          **bounds)
    m, s = payload
    return OreVerdict("unknown", unresolved_m=m, unresolved_s=s, **bounds)


def ore_witness_table(q: OreQuery):
    """Witness rows ((m, s) -> (t, n)) for every pair within the bounds.

    Requires a Holds verdict (any method); the table itself always comes
    from the bounded search, so each row replays as m t = s n.
    """
    verdict = is_right_ore(q)
    if verdict.status != "holds":
        raise InputError(
            f"witness table requires a Holds verdict, got {verdict.status}")
    if verdict.witnesses is not None:
        return verdict.witnesses
    rs = q.presentation.system()
    outcome, payload = _exhaustive_search(q, rs)
    if outcome != "holds":
        m, s = payload
        raise InputError(
            f"witness search exhausted at bounds for pair ({m}, {s})")
    return payload


def replay_witness(q: OreQuery, m: Word, s: Word, t: Word, n: Word):
    """Check a table row: t uses only subset generators and m t = s n."""
    allowed = set(q.subset_generators)
    if any(g not in allowed for g in t):
        return False
    return words_equal(q.presentation.system(), m * t, s * n)
