"""Finite and truncated M-sets, tensor products, and flatness checking.

A finite M-set stores one map per generator over a finite carrier and is
validated against the relations at construction (with a counterexample on
rejection).  A symbolic M-set is the length-truncated model of a
localization M_p (or of M itself) as a left M-set: its carrier is the set
of irreducible words up to a bound, and actions that land beyond the bound
are flagged rather than silently dropped.

Flatness of a left M-set A is tested by the three classical criteria:

    F1  A is nonempty.
    F2  any a, b admit a common ancestor: a = m c, b = n c.
    F3  if m a = n a then a = s b for some b with m s = n s in M.

Searches are bounded; a bounded miss yields "unknown" unless an exactness
argument applies (finite transformation-monoid closure for F2 on finite
carriers, cancellativity for F3 over relation-free presentations, and the
free-group factorization test for F2 over localizations of free monoids).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import groupwords
from .errors import InputError, ParseError
from .presentation import (MonoidPresentation, RewritingSystem, Word,
                           words_equal)
from .primes import Character, LocalizedPresentation, localization_presentation


# -- finite M-sets ----------------------------------------------------------


class _FiniteMSet:
    """Shared carrier/action-table plumbing for both sides."""

    side = "?"

    def __init__(self, presentation: MonoidPresentation, elements, actions):
        self.presentation = presentation
        self.elements = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise InputError("duplicate element names")
        self.actions = {}
        for g in presentation.generators:
            if g not in actions:
                raise InputError(f"missing action map for generator {g!r}")
            table = dict(actions[g])
            for e in self.elements:
                if e not in table:
                    raise InputError(
                        f"generator {g!r} has no image for element {e!r}")
                if table[e] not in self.elements:
                    raise InputError(
                        f"generator {g!r} maps {e!r} to unknown {table[e]!r}")
            extra = set(table) - set(self.elements)
            if extra:
                raise InputError(
                    f"generator {g!r} acts on unknown element "
                    f"{sorted(extra)[0]!r}")
            self.actions[g] = table
        extra_gens = set(actions) - set(presentation.generators)
        if extra_gens:
            raise InputError(f"action for unknown generator "
                             f"{sorted(extra_gens)[0]!r}")
        self._validate_relations()

    def act_letter(self, g: str, e: str) -> str:
        return self.actions[g][e]

    def _validate_relations(self):
        for rel in self.presentation.relations:
            for e in self.elements:
                u = self.act_word(rel.lhs, e)
                v = self.act_word(rel.rhs, e)
                if u != v:
                    raise InputError(
                        f"action violates relation {rel} on element {e!r} "
                        f"({u!r} != {v!r})")

    def act_word(self, w: Word, e: str) -> str:
        raise NotImplementedError


class FiniteLeftMSet(_FiniteMSet):
    """Letters apply right-to-left: (uv) . e = u . (v . e)."""

    side = "left"

    def act_word(self, w: Word, e: str) -> str:
        for g in reversed(tuple(w)):
            e = self.actions[g][e]
        return e


class FiniteRightMSet(_FiniteMSet):
    """Letters apply left-to-right: e . (uv) = (e . u) . v."""

    side = "right"

    def act_word(self, w: Word, e: str) -> str:
        for g in w:
            e = self.actions[g][e]
        return e


def parse_mset(text: str, p: MonoidPresentation, side: str):
    """Parse the M-set file format::

        elems: p q
        act a: p->q q->q

    One act line per generator; side is "left" or "right".  A ";" also
    separates lines, so inline one-liners work on a command line.
    """
    text = text.replace(";", "\n")
    if side not in ("left", "right"):
        raise InputError(f"side must be 'left' or 'right', got {side!r}")
    elements = None
    actions: dict[str, dict[str, str]] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("elems:"):
            if elements is not None:
                raise ParseError("duplicate elems: line", line=line_no)
            elements = line[len("elems:"):].split()
        elif line.startswith("act "):
            head, _, body = line.partition(":")
            g = head[len("act "):].strip()
            if not g:
                raise ParseError("act line missing generator", line=line_no)
            if g in actions:
                raise ParseError(f"duplicate act line for {g!r}", line=line_no)
            table = {}
            for entry in body.split():
                if "->" not in entry:
                    raise ParseError(
                        f"bad action entry {entry!r}; want src->dst",
                        line=line_no)
                src, _, dst = entry.partition("->")
                if not src or not dst:
                    raise ParseError(
                        f"bad action entry {entry!r}; want src->dst",
                        line=line_no)
                if src in table:
                    raise ParseError(
                        f"duplicate image for {src!r}", line=line_no)
                table[src] = dst
            actions[g] = table
        else:
            raise ParseError(
                f"expected 'elems:' or 'act g:', got {line.split()[0]!r}",
                line=line_no)
    if elements is None:
        raise ParseError("missing elems: line")
    cls = FiniteLeftMSet if side == "left" else FiniteRightMSet
    return cls(p, elements, actions)


# -- symbolic (truncated) M-sets --------------------------------------------


class SymbolicMSet:
    """The truncation of a localization M_p as a left M-set over the base.

    Carrier: irreducible words of the localized presentation up to trunc,
    in shortlex order.  The base monoid acts by left concatenation followed
    by normal form; actions leaving the carrier return None and set the
    truncated flag on whoever asked.
    """

    def __init__(self, loc: LocalizedPresentation, trunc: int):
        if trunc < 0:
            raise InputError("trunc must be >= 0")
        self.loc = loc
        self.base = loc.base
        self.trunc = trunc
        self.system: RewritingSystem = loc.result.system()
        self.carrier = list(self.system.iter_irreducible_internal(trunc))
        self._carrier_set = set(self.carrier)

    @staticmethod
    def of_monoid(p: MonoidPresentation, trunc: int) -> "SymbolicMSet":
        """M itself as a left M-set (identity localization)."""
        c = Character(p, (0,) * len(p.generators))
        return SymbolicMSet(localization_presentation(p, c), trunc)

    @property
    def presentation(self):
        """The acting monoid (the base presentation)."""
        return self.base

    @property
    def elements(self):
        return tuple(self.loc.result.decode(s) for s in self.carrier)

    def encode_base_word(self, w: Word) -> str:
        # base generators come first in the localized presentation, with the
        # same indices, so base words encode identically in both
        return self.loc.result.encode(w)

    def act_internal(self, m_internal: str, a_internal: str):
        """nf(m * a); None when the result leaves the carrier."""
        s = self.system.reduce_internal(m_internal + a_internal)
        return s if s in self._carrier_set else None

    def act_word(self, m: Word, a_internal: str):
        return self.act_internal(self.encode_base_word(m), a_internal)

    def label(self, a_internal: str) -> str:
        return str(self.loc.result.decode(a_internal))

    def as_group_word(self, a_internal: str):
        """Carrier word as a free-group word over the base generators
        (primed letters become inverses); only meaningful when every
        localized generator is a base generator or a formal inverse."""
        inverse_of = {inv: g for g, inv in self.loc.inverse_names}
        letters = []
        for g in self.loc.result.decode(a_internal):
            if g in inverse_of:
                letters.append((inverse_of[g], -1))
            else:
                letters.append((g, 1))
        return groupwords.reduce_word(letters)


# -- tensor products --------------------------------------------------------


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # deterministic: smaller key becomes the root
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx


@dataclass(frozen=True)
class TensorProduct:
    """X tensor_M A as a partition of the product carrier.

    Nodes are (x_element, a_label) pairs; classes are sorted tuples sorted
    by their least node.  truncated is True when some identification move
    left a symbolic carrier and was skipped.
    """

    classes: tuple
    truncated: bool

    def class_index(self, node):
        for i, cls in enumerate(self.classes):
            if node in cls:
                return i
        raise InputError(f"unknown node {node!r}")


def tensor(x: FiniteRightMSet, a) -> TensorProduct:
    """Quotient of X x A by (x g, a) ~ (x, g a) for every generator g."""
    p = x.presentation
    if a.presentation is not p:
        raise InputError("tensor factors live over different presentations")
    if isinstance(a, SymbolicMSet):
        a_items = list(a.carrier)
        a_act = {g: {} for g in p.generators}
        truncated = False
        for g in p.generators:
            g_int = a.encode_base_word(Word.of(g))
            for item in a_items:
                out = a.act_internal(g_int, item)
                if out is None:
                    truncated = True
                a_act[g][item] = out
        label = a.label
    elif isinstance(a, FiniteLeftMSet):
        a_items = list(a.elements)
        a_act = {g: {e: a.act_letter(g, e) for e in a_items}
                 for g in p.generators}
        truncated = False
        label = str
    else:
        raise InputError("second tensor factor must be a left M-set")
    nodes = [(xe, ai) for xe in x.elements for ai in a_items]
    uf = _UnionFind(nodes)
    for xe in x.elements:
        for ai in a_items:
            for g in p.generators:
                ga = a_act[g][ai]
                if ga is None:
                    continue
                uf.union((x.act_letter(g, xe), ai), (xe, ga))
    groups: dict = {}
    for node in nodes:
        groups.setdefault(uf.find(node), []).append(node)
    labelled = []
    for members in groups.values():
        labelled.append(tuple(sorted((xe, label(ai)) for xe, ai in members)))
    labelled.sort()
    return TensorProduct(tuple(labelled), truncated)


# -- flatness ---------------------------------------------------------------


@dataclass(frozen=True)
class CriterionResult:
    status: str                 # "holds" | "fails" | "unknown"
    witness: tuple | None = None
    detail: str | None = None


@dataclass(frozen=True)
class FlatnessReport:
    kind: str                   # "finite" | "symbolic"
    f1: CriterionResult
    f2: CriterionResult
    f3: CriterionResult
    search_len: int
    trunc: int | None = None

    @property
    def overall(self) -> str:
        statuses = (self.f1.status, self.f2.status, self.f3.status)
        if "fails" in statuses:
            return "not-flat"
        if all(s == "holds" for s in statuses):
            return "flat"
        return "unknown"


def check_flat(a, search_len: int) -> FlatnessReport:
    if isinstance(a, FiniteLeftMSet):
        return _check_flat_finite(a, search_len)
    if isinstance(a, SymbolicMSet):
        return _check_flat_symbolic(a, search_len)
    raise InputError("flatness applies to left M-sets")


def _transformation_closure(a: FiniteLeftMSet):
    """All maps carrier -> carrier realized by monoid elements, with a
    realizing word for each; finite, so F2's search space is exact."""
    elems = a.elements
    ident = tuple(range(len(elems)))
    index = {e: i for i, e in enumerate(elems)}
    gen_maps = {
        g: tuple(index[a.act_letter(g, e)] for e in elems)
        for g in a.presentation.generators}
    seen = {ident: Word()}
    frontier = [ident]
    while frontier:
        nxt = []
        for f in frontier:
            for g, gm in gen_maps.items():
                # left action: (g m) . e = g . (m . e)
                comp = tuple(gm[f[i]] for i in range(len(elems)))
                if comp not in seen:
                    seen[comp] = Word.of(g) * seen[f]
                    nxt.append(comp)
        frontier = nxt
    return seen


def _check_flat_finite(a: FiniteLeftMSet, search_len: int) -> FlatnessReport:
    p = a.presentation
    elems = a.elements
    f1 = CriterionResult("holds" if elems else "fails",
                         detail="carrier empty" if not elems else None)
    if not elems:
        return FlatnessReport("finite", f1,
                              CriterionResult("fails", detail="carrier empty"),
                              CriterionResult("holds"), search_len)

    closure = _transformation_closure(a)
    index = {e: i for i, e in enumerate(elems)}
    reach = {e: set() for e in elems}     # c -> {m . c over all m}
    for f in closure:
        for e in elems:
            reach[e].add(elems[f[index[e]]])
    f2 = CriterionResult("holds")
    for i, x in enumerate(elems):
        for y in elems[i:]:
            if not any(x in reach[c] and y in reach[c] for c in elems):
                f2 = CriterionResult(
                    "fails", witness=(x, y),
                    detail="no common ancestor: exact by finite closure "
                           "of the action")
                break
        if f2.status == "fails":
            break

    f3 = _f3_search(
        p, search_len,
        carrier=list(elems),
        act=lambda w, e: a.act_word(w, e),
        exact_fail=p.is_relation_free,
        partial_note=None)
    return FlatnessReport("finite", f1, f2, f3, search_len)


def _f3_search(p, search_len, carrier, act, exact_fail, partial_note,
               display=str):
    """Shared F3 scan: find premises m a = n a (m, n distinct words), then
    search for (b, s) with s b = a and m s = n s in M."""
    rs = p.system()
    words = [p.decode(s) for s in rs.iter_irreducible_internal(search_len)]
    # action table: act_tab[word index] = tuple of images over the carrier
    act_tab = [tuple(act(w, e) for e in carrier) for w in words]
    truncated = False
    for mi, m in enumerate(words):
        row_m = act_tab[mi]
        for nj in range(mi + 1, len(words)):
            n = words[nj]
            row_n = act_tab[nj]
            for ei, e in enumerate(carrier):
                u = row_m[ei]
                v = row_n[ei]
                if u is None or v is None:
                    truncated = True
                    continue
                if u != v:
                    continue
                if not _f3_conclude(p, rs, carrier, words, act_tab, m, n, e):
                    if exact_fail:
                        return CriterionResult(
                            "fails",
                            witness=(str(m), str(n), display(e)),
                            detail="m s = n s is impossible for distinct "
                                   "words in a free monoid")
                    return CriterionResult(
                        "unknown",
                        witness=(str(m), str(n), display(e)),
                        detail=f"no (b, s) found within length {search_len}")
    detail = partial_note
    if truncated:
        detail = ((detail + "; ") if detail else "") + \
            "some premise instances left the carrier"
    return CriterionResult("holds", detail=detail)


def _f3_conclude(p, rs, carrier, words, act_tab, m, n, e):
    for si, s in enumerate(words):
        if words_equal(rs, m * s, n * s) is not True:
            continue
        row = act_tab[si]
        for bi in range(len(carrier)):
            if row[bi] == e:
                return True
    return False


def _check_flat_symbolic(a: SymbolicMSet, search_len: int) -> FlatnessReport:
    base = a.base
    rs = base.system()
    carrier = a.carrier
    f1 = CriterionResult("holds" if carrier else "fails")
    if not carrier:
        return FlatnessReport("symbolic", f1,
                              CriterionResult("fails", detail="carrier empty"),
                              CriterionResult("holds"), search_len, a.trunc)

    # reach[t] = {c in carrier : exists m with m c = t}, with a witness m
    m_words = [base.decode(s) for s in rs.iter_irreducible_internal(search_len)]
    m_ints = [a.encode_base_word(m) for m in m_words]
    reach: dict[str, dict[str, Word]] = {c: {} for c in carrier}
    truncated_reach = False
    for m, m_int in zip(m_words, m_ints):
        for c in carrier:
            t = a.act_internal(m_int, c)
            if t is None:
                truncated_reach = True
            elif c not in reach[t]:
                reach[t][c] = m
    loc_free_base = base.is_relation_free and a.loc.inverse_names

    order = sorted(
        ((x, y) for x in carrier for y in carrier),
        key=lambda pair: (max(len(pair[0]), len(pair[1])),
                          len(pair[0]) + len(pair[1]), pair))
    f2 = CriterionResult("holds")
    first_unknown = None
    for x, y in order:
        common = reach[x].keys() & reach[y].keys()
        if common:
            continue
        if loc_free_base:
            w = groupwords.multiply(a.as_group_word(x),
                                    groupwords.invert(a.as_group_word(y)))
            if groupwords.positive_negative_split(w) is None:
                f2 = CriterionResult(
                    "fails",
                    witness=(str(a.loc.result.decode(x)),
                             str(a.loc.result.decode(y))),
                    detail="x y^-1 does not factor as m n^-1 with m, n in "
                           "the free base monoid: exact")
                break
        if first_unknown is None:
            first_unknown = (x, y)
    if f2.status == "holds" and first_unknown is not None:
        x, y = first_unknown
        f2 = CriterionResult(
            "unknown",
            witness=(str(a.loc.result.decode(x)), str(a.loc.result.decode(y))),
            detail=f"no common ancestor within length {search_len}"
                   + ("; some actions left the carrier" if truncated_reach
                      else ""))

    partial_note = None
    if not a.system.is_confluent:
        partial_note = "localized system is partial; premise detection is " \
                       "by normal-form match"
    f3 = _f3_search(
        base, search_len,
        carrier=carrier,
        act=lambda w, c: a.act_word(w, c),
        exact_fail=False,
        partial_note=partial_note,
        display=a.label)
    return FlatnessReport("symbolic", f1, f2, f3, search_len, a.trunc)
