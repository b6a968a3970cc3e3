"""Finitely presented monoids and bounded string rewriting.

Words are finite sequences of named generators.  A presentation fixes the
generator order, which induces the shortlex order on words (length first,
then letter order).  Relations are oriented into rewrite rules that strictly
decrease shortlex order, so rewriting always terminates; bounded completion
then tries to make the rule set confluent.  When the bound is hit the system
stays usable: normal forms are still sound, and equality becomes
semi-decidable (``words_equal`` may return ``UNKNOWN``).

Internally each generator is mapped to a single unicode code point in
generator order, so words become plain strings, substring search is C-speed,
and lexicographic string comparison agrees with the declared generator order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError

_INTERNAL_BASE = 0x100

DEFAULT_MAX_RULES = 200
DEFAULT_MAX_LEN = 16


class _Unknown:
    """Three-valued logic sentinel: neither True nor False."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "unknown"

    def __bool__(self):
        raise TypeError("unknown truth value; compare with 'is UNKNOWN'")


UNKNOWN = _Unknown()


@dataclass(frozen=True)
class Word:
    """A word over named generators.  The empty word is the identity."""

    letters: tuple[str, ...] = ()

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other):
        return Word(self.letters + other.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self):
        if not self.letters:
            return "1"
        if all(len(g) == 1 for g in self.letters):
            return "".join(self.letters)
        return " ".join(self.letters)

    @staticmethod
    def of(*letters):
        return Word(tuple(letters))


EPSILON = Word()


def concat(w1: Word, w2: Word) -> Word:
    return w1 * w2


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Word

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"


_RESERVED_NAME_CHARS = set("#=:()^*;")


class MonoidPresentation:
    """Generators (ordered) and relations; the basis for every computation.

    ``element_key`` is an optional exact-equality oracle: an injective map
    from monoid elements to hashable keys, supplied for families whose word
    problem is solvable by other means even when completion stays partial.
    """

    def __init__(self, generators, relations, name=None, element_key=None):
        generators = tuple(generators)
        seen = set()
        for g in generators:
            if not g or g == "1":
                raise ParseError(f"invalid generator name {g!r}")
            if any(ch.isspace() or ch in _RESERVED_NAME_CHARS for ch in g):
                raise ParseError(f"invalid generator name {g!r}")
            if g in seen:
                raise ParseError(f"duplicate generator {g!r}")
            seen.add(g)
        self.generators = generators
        self._index = {g: i for i, g in enumerate(generators)}
        for rel in relations:
            for w in (rel.lhs, rel.rhs):
                for letter in w:
                    if letter not in self._index:
                        raise ParseError(
                            f"relation {rel} uses unknown generator {letter!r}")
        self.relations = tuple(relations)
        self.name = name
        self.element_key = element_key
        self._kb_cache = {}

    def __repr__(self):
        label = self.name or ",".join(self.generators)
        return f"MonoidPresentation({label!r}, {len(self.relations)} relations)"

    # -- internal word codec ------------------------------------------------

    def encode(self, word: Word) -> str:
        idx = self._index
        try:
            return "".join(chr(_INTERNAL_BASE + idx[g]) for g in word)
        except KeyError as exc:
            raise ParseError(f"unknown generator {exc.args[0]!r}") from exc

    def decode(self, s: str) -> Word:
        gens = self.generators
        return Word(tuple(gens[ord(ch) - _INTERNAL_BASE] for ch in s))

    def shortlex_key(self, word: Word):
        return (len(word), self.encode(word))

    def sort_words(self, words):
        return sorted(words, key=self.shortlex_key)

    # -- derived data -------------------------------------------------------

    def system(self, max_rules=DEFAULT_MAX_RULES, max_len=DEFAULT_MAX_LEN):
        """The (cached) bounded completion of this presentation."""
        key = (max_rules, max_len)
        if key not in self._kb_cache:
            self._kb_cache[key] = knuth_bendix(self, max_rules, max_len)
        return self._kb_cache[key]

    @property
    def is_relation_free(self) -> bool:
        """True when no nontrivial rule arises from the relations (free monoid)."""
        return not self.system().rules

    @property
    def is_commutative(self) -> bool:
        """True only when gh = hg is proven for every generator pair."""
        rs = self.system()
        for i, g in enumerate(self.generators):
            for h in self.generators[i + 1:]:
                gh = Word.of(g, h)
                hg = Word.of(h, g)
                if words_equal(rs, gh, hg) is not True:
                    return False
        return True


# -- parsing ----------------------------------------------------------------


def _tokenize_side(gens, text, line_no, col0):
    """Parse one side of a relation / a standalone word into letters.

    ``gens`` is the generator name set.  Multi-letter tokens are split into
    single-character generators when every character is one; the token ``1``
    is the empty word.
    """
    letters = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        j = i
        while j < len(text) and not text[j].isspace():
            j += 1
        token = text[i:j]
        tok_col = col0 + i
        if token == "1":
            pass
        elif token in gens:
            letters.append(token)
        elif all(ch in gens for ch in token):
            letters.extend(token)
        else:
            bad = next((ch for ch in token if ch not in gens), token)
            raise ParseError(
                f"unknown generator {bad!r} in {token!r}",
                line=line_no, col=tok_col + 1)
        i = j
    return letters


def parse_word(p: MonoidPresentation, text: str, line_no=None) -> Word:
    gens = set(p.generators)
    return Word(tuple(_tokenize_side(gens, text, line_no, 0)))


def parse_presentation(text: str, name=None, element_key=None) -> MonoidPresentation:
    """Parse the presentation file format::

        # comment
        gens: a b c
        rel: aab = ba

    Raises ParseError with line/column positions on bad input.
    """
    generators = None
    relations = []
    pending_rels = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        stripped = line.strip()
        indent = len(line) - len(line.lstrip())
        if stripped.startswith("gens:"):
            if generators is not None:
                raise ParseError("duplicate gens: line", line=line_no, col=indent + 1)
            generators = stripped[len("gens:"):].split()
        elif stripped.startswith("rel:"):
            body = stripped[len("rel:"):]
            body_col = indent + len("rel:")
            if body.count("=") != 1:
                raise ParseError(
                    "relation must contain exactly one '='", line=line_no, col=body_col + 1)
            lhs_text, rhs_text = body.split("=")
            pending_rels.append((line_no, body_col, lhs_text, rhs_text))
        else:
            raise ParseError(
                f"expected 'gens:' or 'rel:', got {stripped.split()[0]!r}",
                line=line_no, col=indent + 1)
    if generators is None:
        raise ParseError("missing gens: line")
    gens = set(generators)
    for line_no, body_col, lhs_text, rhs_text in pending_rels:
        lhs = _tokenize_side(gens, lhs_text, line_no, body_col)
        rhs = _tokenize_side(gens, rhs_text, line_no,
                             body_col + len(lhs_text) + 1)
        relations.append(Relation(Word(tuple(lhs)), Word(tuple(rhs))))
    return MonoidPresentation(generators, relations, name=name,
                              element_key=element_key)


def format_presentation(p: MonoidPresentation) -> str:
    """Render a presentation in the same file format parse_presentation reads."""
    lines = ["gens: " + " ".join(p.generators) if p.generators else "gens:"]
    for rel in p.relations:
        lines.append(f"rel: {rel.lhs} = {rel.rhs}")
    return "\n".join(lines) + "\n"


# -- rewriting --------------------------------------------------------------


def _shortlex_less(a: str, b: str) -> bool:
    return (len(a), a) < (len(b), b)


def _orient(u: str, v: str):
    """Orient a pair into a shortlex-decreasing rule, or None if trivial."""
    if u == v:
        return None
    if _shortlex_less(u, v):
        u, v = v, u
    return (u, v)


def _reduce_by_list(s: str, rules):
    """Deterministic leftmost reduction using an explicit rule list.

    Used where compiling a regex would dominate (interreduction); must agree
    with the compiled-pattern path in _reduce.
    """
    while True:
        best_i = -1
        best_idx = -1
        for idx, (l, _r) in enumerate(rules):
            i = s.find(l)
            if i >= 0 and (best_i < 0 or i < best_i):
                best_i = i
                best_idx = idx
        if best_idx < 0:
            return s
        l, r = rules[best_idx]
        s = s[:best_i] + r + s[best_i + len(l):]


class RewritingSystem:
    """A terminating rewrite system produced by bounded completion.

    status is "confluent" when all critical pairs resolve, else "partial";
    with a partial system normal forms are sound but equality of distinct
    normal forms is unknown (unless the presentation has an exact oracle).
    """

    def __init__(self, presentation, internal_rules, status, bound_note=None):
        self.presentation = presentation
        # deterministic rule order: shortlex on (lhs, rhs)
        self._internal = sorted(
            internal_rules, key=lambda lr: (len(lr[0]), lr[0], len(lr[1]), lr[1]))
        self.status = status
        self.bound_note = bound_note
        self._repl = dict(self._internal)
        self._max_lhs = max((len(l) for l, _ in self._internal), default=0)
        self._lhs_lens = sorted({len(l) for l, _ in self._internal})
        self._lhs_set = {l for l, _ in self._internal}
        if self._internal:
            self._pattern = re.compile(
                "|".join(re.escape(l) for l, _ in self._internal))
        else:
            self._pattern = None

    @property
    def rules(self):
        p = self.presentation
        return tuple((p.decode(l), p.decode(r)) for l, r in self._internal)

    @property
    def is_confluent(self):
        return self.status == "confluent"

    def reduce_internal(self, s: str) -> str:
        pat = self._pattern
        if pat is None:
            return s
        repl = self._repl
        max_lhs = self._max_lhs
        pos = 0
        while True:
            m = pat.search(s, pos)
            if m is None:
                return s
            i = m.start()
            lhs = m.group()
            s = s[:i] + repl[lhs] + s[i + len(lhs):]
            pos = max(0, i - max_lhs + 1)

    def normal_form(self, word: Word) -> Word:
        p = self.presentation
        return p.decode(self.reduce_internal(p.encode(word)))

    def is_irreducible_internal(self, s: str) -> bool:
        return self._pattern is None or self._pattern.search(s) is None

    def _extension_stays_irreducible(self, s: str) -> bool:
        """For s = w + g with w irreducible: check no LHS is a suffix of s."""
        for length in self._lhs_lens:
            if length <= len(s) and s[-length:] in self._lhs_set:
                return False
        return True

    def iter_irreducible_internal(self, max_len):
        """All irreducible internal strings of length <= max_len, shortlex order."""
        alphabet = [chr(_INTERNAL_BASE + i)
                    for i in range(len(self.presentation.generators))]
        level = [""]
        yield ""
        for _ in range(max_len):
            nxt = []
            for w in level:
                for ch in alphabet:
                    s = w + ch
                    if self._extension_stays_irreducible(s):
                        nxt.append(s)
            for s in nxt:
                yield s
            level = nxt
            if not level:
                return


def _critical_pair_words(r1, r2):
    """Superpositions of two rules (suffix of lhs1 = prefix of lhs2).

    Yields (overlap_word, resolution_1, resolution_2).  Containments are
    handled by interreduction, not here.
    """
    l1, rhs1 = r1
    l2, rhs2 = r2
    max_o = min(len(l1), len(l2))
    for o in range(1, max_o):
        if l1[-o:] == l2[:o]:
            # w = l1 + l2[o:] rewrites via r1 to rhs1 + l2[o:]
            #                 and via r2 to l1[:-o] + rhs2
            yield (l1 + l2[o:], rhs1 + l2[o:], l1[:len(l1) - o] + rhs2)
    if len(l1) == len(l2) and l1 == l2 and rhs1 != rhs2:
        yield (l1, rhs1, rhs2)


def _interreduce(rules):
    """Reduce every rule by the others; drop trivial; re-orient as needed."""
    work = sorted(set(rules), key=lambda lr: (len(lr[0]), lr[0], len(lr[1]), lr[1]))
    changed = True
    while changed:
        changed = False
        for idx in range(len(work)):
            l, r = work[idx]
            others = work[:idx] + work[idx + 1:]
            l2 = _reduce_by_list(l, others)
            r2 = _reduce_by_list(r, others)
            if l2 == l and r2 == r:
                continue
            new = _orient(l2, r2)
            work = others
            if new is not None and new not in work:
                work.append(new)
            work.sort(key=lambda lr: (len(lr[0]), lr[0], len(lr[1]), lr[1]))
            changed = True
            break
    return work


def knuth_bendix(p: MonoidPresentation, max_rules=DEFAULT_MAX_RULES,
                 max_len=DEFAULT_MAX_LEN) -> RewritingSystem:
    """Bounded Knuth-Bendix completion under shortlex.

    Every rule strictly decreases shortlex order (which is compatible with
    concatenation), so rewriting terminates regardless of confluence.  The
    completion stops when all critical pairs resolve ("confluent") or when a
    derived rule would exceed max_len or the rule count would exceed
    max_rules ("partial").
    """
    rules = []
    for rel in p.relations:
        oriented = _orient(p.encode(rel.lhs), p.encode(rel.rhs))
        if oriented is not None:
            rules.append(oriented)
    rules = _interreduce(rules)
    status = "confluent"
    bound_note = None
    while True:
        probe = RewritingSystem(p, rules, "partial")
        candidates = set()
        for r1 in rules:
            for r2 in rules:
                for _w, a, b in _critical_pair_words(r1, r2):
                    u = probe.reduce_internal(a)
                    v = probe.reduce_internal(b)
                    new = _orient(u, v)
                    if new is not None:
                        candidates.add(new)
        if not candidates:
            break
        added = False
        for new in sorted(candidates,
                          key=lambda lr: (len(lr[0]), lr[0], len(lr[1]), lr[1])):
            if len(new[0]) > max_len:
                status = "partial"
                bound_note = f"rule length bound {max_len} hit"
                continue
            if len(rules) >= max_rules:
                status = "partial"
                bound_note = f"rule count bound {max_rules} hit"
                break
            rules.append(new)
            added = True
        if not added:
            break
        rules = _interreduce(rules)
        if len(rules) >= max_rules:
            status = "partial"
            bound_note = f"rule count bound {max_rules} hit"
            break
    return RewritingSystem(p, rules, status, bound_note)


# -- public word operations -------------------------------------------------


def _as_system(obj) -> "RewritingSystem":
    return obj.system() if isinstance(obj, MonoidPresentation) else obj


def normal_form(rs, w: Word) -> Word:
    return _as_system(rs).normal_form(w)


def words_equal(rs, w1: Word, w2: Word):
    """True / False / UNKNOWN equality in the presented monoid.

    Matching normal forms always prove equality.  Distinct normal forms
    disprove it only under a confluent system; otherwise the presentation's
    exact oracle (if any) decides, else UNKNOWN.
    """
    rs = _as_system(rs)
    p = rs.presentation
    s1 = rs.reduce_internal(p.encode(w1))
    s2 = rs.reduce_internal(p.encode(w2))
    if s1 == s2:
        return True
    if rs.is_confluent:
        return False
    if p.element_key is not None:
        return p.element_key(p.decode(s1)) == p.element_key(p.decode(s2))
    return UNKNOWN


def enumerate_elements(rs, max_len: int):
    """All irreducible words of length <= max_len in shortlex order.

    With a confluent system these biject with monoid elements; with a
    partial system distinct listed words may still be equal in the monoid.
    """
    rs = _as_system(rs)
    p = rs.presentation
    return [p.decode(s) for s in rs.iter_irreducible_internal(max_len)]
