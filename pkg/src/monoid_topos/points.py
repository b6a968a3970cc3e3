"""Points of the presheaf topos of a monoid, via the divisibility order.

The divisibility preorder on monoid elements is x <= y iff y = x m for some
m.  Ideals of this poset (nonempty, downward closed, upward directed
subsets) classify points.  On truncated posets every directed set has a
maximum, so ideals are exactly principal downsets; the brute-force oracle
over all downward-closed directed subsets lives in the tests.

For free monoids, points are finite words, eventually periodic infinite
words, or aperiodic infinite words; the stabilizer A_y / fixer M_y data of
a point has closed forms in each case (conjugate of the monoid / infinite
cyclic / trivial), implemented here with exact group-word arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import groupwords
from .errors import GuardError, InputError, ParseError
from .groupwords import GroupWord
from .presentation import MonoidPresentation, UNKNOWN, Word

POSET_GUARD = 2000


class DivisibilityPoset:
    """A finite poset with labelled elements and an explicit order relation."""

    def __init__(self, labels, leq_pairs, description=""):
        self.labels = tuple(labels)
        if len(self.labels) > POSET_GUARD:
            raise GuardError(
                f"poset has {len(self.labels)} elements; guard is {POSET_GUARD}")
        n = len(self.labels)
        self._leq = [[False] * n for _ in range(n)]
        for i in range(n):
            self._leq[i][i] = True
        for i, j in leq_pairs:
            self._leq[i][j] = True
        # transitive closure (small posets; guard keeps this sane)
        changed = True
        while changed:
            changed = False
            for i in range(n):
                row = self._leq[i]
                for j in range(n):
                    if row[j] and i != j:
                        rj = self._leq[j]
                        for m in range(n):
                            if rj[m] and not row[m]:
                                row[m] = True
                                changed = True
        for i in range(n):
            for j in range(i + 1, n):
                if self._leq[i][j] and self._leq[j][i]:
                    raise InputError(
                        f"order is not antisymmetric: {self.labels[i]} and "
                        f"{self.labels[j]} divide each other")
        self.description = description

    def __len__(self):
        return len(self.labels)

    def leq(self, i: int, j: int) -> bool:
        return self._leq[i][j]

    def downset(self, j: int) -> tuple[int, ...]:
        return tuple(i for i in range(len(self.labels)) if self._leq[i][j])

    @staticmethod
    def from_presentation(p: MonoidPresentation, max_len: int,
                          system=None) -> "DivisibilityPoset":
        """Irreducible words up to max_len ordered by x <= y iff y = x m,
        witnessed by single-generator right multiplications inside the
        truncation."""
        rs = system or p.system()
        carrier = list(rs.iter_irreducible_internal(max_len))
        if len(carrier) > POSET_GUARD:
            raise GuardError(
                f"truncated poset has {len(carrier)} elements; "
                f"guard is {POSET_GUARD}")
        index = {s: i for i, s in enumerate(carrier)}
        pairs = []
        gens = [p.encode(Word.of(g)) for g in p.generators]
        for s, i in index.items():
            for g in gens:
                t = rs.reduce_internal(s + g)
                j = index.get(t)
                if j is not None:
                    pairs.append((i, j))
        labels = [str(p.decode(s)) for s in carrier]
        return DivisibilityPoset(
            labels, pairs,
            description=f"irreducible words of length <= {max_len}")

    @staticmethod
    def from_divisors(n: int) -> "DivisibilityPoset":
        if n < 1:
            raise InputError(f"need a positive integer, got {n}")
        divs = [d for d in range(1, n + 1) if n % d == 0]
        pairs = [(i, j) for i, a in enumerate(divs)
                 for j, b in enumerate(divs) if b % a == 0]
        return DivisibilityPoset([str(d) for d in divs], pairs,
                                 description=f"divisors of {n}")


@dataclass(frozen=True)
class PosetIdeal:
    poset: DivisibilityPoset = field(compare=False)
    members: tuple[int, ...] = ()

    def is_nonempty(self) -> bool:
        return bool(self.members)

    def is_downward_closed(self) -> bool:
        mem = set(self.members)
        return all(i in mem
                   for j in self.members
                   for i in range(len(self.poset))
                   if self.poset.leq(i, j))

    def is_directed(self) -> bool:
        return all(
            any(self.poset.leq(i, u) and self.poset.leq(j, u)
                for u in self.members)
            for i in self.members for j in self.members)

    def satisfies_axioms(self) -> bool:
        return (self.is_nonempty() and self.is_downward_closed()
                and self.is_directed())

    @property
    def labels(self):
        return tuple(self.poset.labels[i] for i in self.members)

    def __str__(self):
        return "{" + ", ".join(self.labels) + "}"


def ideal_enumerate(poset: DivisibilityPoset) -> list[PosetIdeal]:
    """All poset ideals, sorted by size then member tuple.

    In a finite poset an upward-directed set has a maximum, so ideals are
    exactly the principal downsets; each result is still re-verified
    against the three axioms.
    """
    out = []
    for j in range(len(poset)):
        ideal = PosetIdeal(poset, poset.downset(j))
        if not ideal.satisfies_axioms():
            raise AssertionError(
                f"principal downset of {poset.labels[j]} fails the axioms")
        out.append(ideal)
    out.sort(key=lambda ideal: (len(ideal.members), ideal.members))
    return out


# -- infinite words over a free monoid --------------------------------------


def _primitive_root(v: tuple[str, ...]) -> tuple[str, ...]:
    n = len(v)
    for d in range(1, n + 1):
        if n % d == 0 and v[:d] * (n // d) == v:
            return v[:d]
    return v


@dataclass(frozen=True)
class EventuallyPeriodicWord:
    """u . v^infinity, canonicalized: v primitive, then trailing copies of
    the (rotated) period absorbed out of u."""

    preperiod: tuple[str, ...]
    period: tuple[str, ...]

    def __post_init__(self):
        if not self.period:
            raise InputError("period must be nonempty")
        pre = self.preperiod
        per = _primitive_root(self.period)
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = per[-1:] + per[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    def prefix(self, n: int) -> tuple[str, ...]:
        out = list(self.preperiod)
        while len(out) < n:
            out.extend(self.period)
        return tuple(out[:n])

    def __str__(self):
        return "".join(self.preperiod) + "(" + "".join(self.period) + ")^w"


def fibonacci_prefix(n: int) -> tuple[str, ...]:
    """Prefix of the aperiodic Fibonacci word over a, b: abaababa..."""
    prev, cur = "a", "ab"
    while len(cur) < n:
        prev, cur = cur, cur + prev
    return tuple(cur[:n])


_STREAMS = {"fib": (fibonacci_prefix, True)}  # name -> (prefix fn, aperiodic?)


@dataclass(frozen=True)
class PointDescriptor:
    """A point of the free-monoid topos: a finite word, an eventually
    periodic infinite word, or a named aperiodic stream (optionally with a
    finite word prepended, which base change produces)."""

    kind: str                      # "finite" | "eventually-periodic" | "aperiodic"
    word: Word | None = None
    epw: EventuallyPeriodicWord | None = None
    stream: str | None = None
    prepend: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind == "finite":
            if self.word is None:
                raise InputError("finite point needs a word")
        elif self.kind == "eventually-periodic":
            if self.epw is None:
                raise InputError("eventually periodic point needs (u, v)")
        elif self.kind == "aperiodic":
            if self.stream not in _STREAMS:
                raise InputError(f"unknown stream {self.stream!r}")
        else:
            raise InputError(f"bad point kind {self.kind!r}")

    @property
    def is_infinite(self) -> bool:
        return self.kind != "finite"

    def prefix(self, n: int) -> tuple[str, ...]:
        if self.kind == "finite":
            return tuple(self.word)[:n]
        if self.kind == "eventually-periodic":
            return self.epw.prefix(n)
        fn, _ = _STREAMS[self.stream]
        if n <= len(self.prepend):
            return self.prepend[:n]
        return self.prepend + fn(n - len(self.prepend))

    def has_prefix(self, t) -> bool:
        t = tuple(t)
        if self.kind == "finite" and len(t) > len(self.word):
            return False
        return self.prefix(len(t)) == t

    def base_change(self, h: Word) -> "PointDescriptor":
        """The point h . x (prepend a monoid word)."""
        hl = tuple(h)
        if self.kind == "finite":
            return PointDescriptor("finite", word=Word(hl + tuple(self.word)))
        if self.kind == "eventually-periodic":
            return PointDescriptor(
                "eventually-periodic",
                epw=EventuallyPeriodicWord(hl + self.epw.preperiod,
                                           self.epw.period))
        return PointDescriptor("aperiodic", stream=self.stream,
                               prepend=hl + self.prepend)

    def __str__(self):
        if self.kind == "finite":
            return ("".join(self.word) or "1") + "*"
        if self.kind == "eventually-periodic":
            return str(self.epw)
        pre = "".join(self.prepend)
        return f"{pre}{self.stream}" if pre else self.stream


def parse_point(text: str, p: MonoidPresentation) -> PointDescriptor:
    """Point syntax: "abba*" (finite), "ab(ba)^w" (eventually periodic),
    "fib" (the aperiodic Fibonacci stream; needs generators a and b)."""
    gens = set(p.generators)
    if any(len(g) != 1 for g in gens):
        raise ParseError("point syntax requires single-letter generators")
    text = text.strip()
    if text in _STREAMS:
        if not {"a", "b"} <= gens:
            raise ParseError(f"stream {text!r} needs generators a and b")
        return PointDescriptor("aperiodic", stream=text)
    if text.endswith("*"):
        body = text[:-1]
        if body == "1":  # the identity element as a point
            body = ""
        bad = next((ch for ch in body if ch not in gens), None)
        if bad is not None:
            raise ParseError(f"unknown generator {bad!r} in point")
        return PointDescriptor("finite", word=Word(tuple(body)))
    if text.endswith("^w") and "(" in text:
        head, _, rest = text[:-2].partition("(")
        if not rest.endswith(")"):
            raise ParseError(f"bad point syntax {text!r}")
        period = rest[:-1]
        if not period:
            raise ParseError("empty period")
        for ch in head + period:
            if ch not in gens:
                raise ParseError(f"unknown generator {ch!r} in point")
        return PointDescriptor(
            "eventually-periodic",
            epw=EventuallyPeriodicWord(tuple(head), tuple(period)))
    raise ParseError(
        f"bad point syntax {text!r}; want 'word*', 'u(v)^w', or a stream name")


# -- endomorphism monoids and membership ------------------------------------


@dataclass(frozen=True)
class EndoClassification:
    kind: str                        # "free-conjugate" | "infinite-cyclic" | "trivial"
    conjugator: Word | None = None   # finite point m: fixers are m M m^-1
    generator: GroupWord | None = None  # periodic point: fixers are <u v u^-1>


def endo_monoid_free(pt: PointDescriptor, k: int) -> EndoClassification:
    """Classify the fixer group M_y of a point of the free monoid on k
    generators: finite words give a conjugate of M, eventually periodic
    words give an infinite cyclic group, aperiodic streams give the
    trivial group."""
    if k < 1:
        raise InputError("need at least one generator")
    if pt.kind == "finite":
        return EndoClassification("free-conjugate", conjugator=pt.word)
    if pt.kind == "eventually-periodic":
        u = groupwords.from_positive(pt.epw.preperiod)
        v = groupwords.from_positive(pt.epw.period)
        gen = groupwords.multiply(u, v, groupwords.invert(u))
        return EndoClassification("infinite-cyclic", generator=gen)
    if pt.prepend:
        # base-changed stream: conjugate of the trivial group is trivial
        return EndoClassification("trivial")
    return EndoClassification("trivial")


def point_membership(g: GroupWord, pt: PointDescriptor, which: str,
                     bound: int = 64):
    """Membership of a group word in A_y (which="A": g y >= 1) or M_y
    (which="M": g y >= y).  Exact in every case except alignment checks on
    undeclared-aperiodicity streams, which return UNKNOWN past the bound."""
    g = groupwords.reduce_word(g)
    if which == "A":
        split = groupwords.positive_negative_split(g)
        if split is None:
            return False
        _m, t = split
        return pt.has_prefix(t)
    if which != "M":
        raise InputError(f"which must be 'A' or 'M', got {which!r}")
    if pt.kind == "finite":
        w = groupwords.from_positive(pt.word)
        conj = groupwords.multiply(groupwords.invert(w), g, w)
        return groupwords.is_positive(conj)
    if pt.kind == "eventually-periodic":
        u = groupwords.from_positive(pt.epw.preperiod)
        v = groupwords.from_positive(pt.epw.period)
        h = groupwords.multiply(u, v, groupwords.invert(u))
        if not g:
            return True
        limit = (len(g) + 2 * len(u)) // max(1, len(v)) + 2
        for n in range(1, limit + 1):
            hn = groupwords.power(h, n)
            if g == hn:
                return True
            if g == groupwords.invert(hn):
                return True
        return False
    # aperiodic stream: g fixes y iff g = p_r p_s^-1 with aligned tails
    if not g:
        return True
    split = groupwords.positive_negative_split(g)
    if split is None:
        return False
    m, t = split
    if not (pt.has_prefix(m) and pt.has_prefix(t)):
        return False
    r, s = len(m), len(t)
    if r == s:
        return g == ()  # equal prefixes reduce to the identity
    _, known_aperiodic = _STREAMS[pt.stream]
    if known_aperiodic:
        # eventual tail alignment would force eventual periodicity
        return False
    window = pt.prefix(max(r, s) + bound)
    for j in range(bound):
        if r + j >= len(window) or s + j >= len(window):
            break
        if window[r + j] != window[s + j]:
            return False
    return UNKNOWN


def my_ay_disagreement(pt: PointDescriptor, bound: int, k: int = 2):
    """First group word (length-graded search) whose A_y and M_y
    memberships differ, or None if all words up to the bound agree."""
    if k < 1:
        raise InputError("need at least one generator")
    gens = [chr(ord("a") + i) for i in range(k)]
    frontier: list[GroupWord] = [()]
    for _ in range(bound):
        nxt = []
        for w in frontier:
            for gsym in gens:
                for sign in (1, -1):
                    if w and w[-1] == (gsym, -sign):
                        continue
                    nxt.append(w + ((gsym, sign),))
        for w in nxt:
            in_a = point_membership(w, pt, "A")
            in_m = point_membership(w, pt, "M")
            if in_a is UNKNOWN or in_m is UNKNOWN:
                continue
            if in_a is not in_m:
                return w
        frontier = nxt
    return None


def check_My_equals_Ay(pt: PointDescriptor, bound: int, k: int = 2) -> bool:
    """True iff A_y and M_y membership agree on every group word of length
    <= bound (with the closed forms supplying exactness per word)."""
    return my_ay_disagreement(pt, bound, k) is None
