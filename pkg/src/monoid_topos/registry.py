"""Builtin monoid catalog and presentation resolution.

Builtin specs (an optional ``builtin:`` prefix is accepted):

- ``trivial``            the one-element monoid
- ``free:k``             free monoid on k generators a, b, c, ...
- ``comm:k``             free commutative monoid on k generators
- ``torus:k,l``          two generators a, b with the single relation
                         a^k = b^l (exact word-problem oracle attached)
- ``arith:p1,p2,...``    free commutative monoid on the listed primes,
                         with the primes themselves as generator names

``matrices`` names the family of nonsingular 2x2 integer matrices; it is
handled by closed forms under the ``snf`` command group and deliberately
has no finite presentation here.
"""

from __future__ import annotations

from .errors import InputError
from .families import is_prime, tk_element_key
from .presentation import (MonoidPresentation, Relation, Word,
                           parse_presentation)

MAX_LETTER_GENERATORS = 24  # a .. x


def _letter_generators(k: int) -> tuple[str, ...]:
    if not 1 <= k <= MAX_LETTER_GENERATORS:
        raise InputError(
            f"generator count must be between 1 and {MAX_LETTER_GENERATORS}, "
            f"got {k}")
    return tuple(chr(ord("a") + i) for i in range(k))


def trivial_monoid() -> MonoidPresentation:
    return MonoidPresentation((), (), name="trivial")


def free_monoid(k: int) -> MonoidPresentation:
    return MonoidPresentation(_letter_generators(k), (), name=f"free:{k}")


def _commuting_relations(gens) -> tuple[Relation, ...]:
    return tuple(Relation(Word.of(h, g), Word.of(g, h))
                 for i, g in enumerate(gens) for h in gens[i + 1:])


def commutative_free_monoid(k: int) -> MonoidPresentation:
    gens = _letter_generators(k)
    return MonoidPresentation(gens, _commuting_relations(gens),
                              name=f"comm:{k}")


def torus_monoid(k: int, l: int) -> MonoidPresentation:
    if k < 2 or l < 2:
        raise InputError(
            f"torus parameters must be at least 2 (the attached word-problem "
            f"oracle needs both exponents nontrivial), got {k},{l}")
    rel = Relation(Word(("a",) * k), Word(("b",) * l))
    return MonoidPresentation(
        ("a", "b"), (rel,), name=f"torus:{k},{l}",
        element_key=lambda w: tk_element_key(w, k, l))


def arithmetic_monoid(primes) -> MonoidPresentation:
    primes = tuple(primes)
    if not primes:
        raise InputError("need at least one prime")
    for p in primes:
        if not is_prime(p):
            raise InputError(f"{p} is not prime")
    if list(primes) != sorted(set(primes)):
        raise InputError(f"primes must be strictly increasing, got {primes}")
    if len(primes) > MAX_LETTER_GENERATORS:
        raise InputError(f"at most {MAX_LETTER_GENERATORS} primes supported")
    gens = tuple(str(p) for p in primes)
    name = "arith:" + ",".join(gens)
    return MonoidPresentation(gens, _commuting_relations(gens), name=name)


BUILTIN_SUMMARY = (
    ("trivial", "one-element monoid"),
    ("free:k", "free monoid on k generators"),
    ("comm:k", "free commutative monoid on k generators"),
    ("torus:k,l", "generators a, b with a^k = b^l"),
    ("arith:p1,p2,...", "free commutative monoid on the listed primes"),
)


def _parse_ints(text: str, spec: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise InputError(f"bad builtin parameters in {spec!r}") from exc


def resolve_builtin(spec: str) -> MonoidPresentation:
    s = spec.strip()
    if s.startswith("builtin:"):
        s = s[len("builtin:"):]
    if s == "trivial":
        return trivial_monoid()
    if s == "matrices":
        raise InputError(
            "'matrices' is the closed-form family of nonsingular 2x2 integer "
            "matrices; use the snf commands instead of a presentation")
    head, sep, rest = s.partition(":")
    if sep:
        if head in ("free", "comm"):
            params = _parse_ints(rest, spec)
            if len(params) != 1:
                _fail_arity(spec, 1)
            maker = free_monoid if head == "free" else commutative_free_monoid
            return maker(params[0])
        if head == "torus":
            params = _parse_ints(rest, spec)
            if len(params) != 2:
                _fail_arity(spec, 2)
            return torus_monoid(*params)
        if head == "arith":
            return arithmetic_monoid(_parse_ints(rest, spec))
    known = ", ".join(pattern for pattern, _ in BUILTIN_SUMMARY)
    raise InputError(f"unknown builtin {spec!r}; known: {known}")


def _fail_arity(spec: str, n: int):
    raise InputError(f"builtin {spec!r} needs exactly {n} parameter(s)")


def is_builtin_spec(text: str) -> bool:
    s = text.strip()
    if s.startswith("builtin:"):
        return True
    if s in ("trivial", "matrices"):
        return True
    head, sep, _ = s.partition(":")
    return bool(sep) and head in ("free", "comm", "torus", "arith")


def resolve_presentation(text: str) -> MonoidPresentation:
    """A builtin spec, or inline presentation text (";" also separates
    lines, so one-liners work on a command line)."""
    if is_builtin_spec(text):
        return resolve_builtin(text)
    if "gens:" in text:
        return parse_presentation(text.replace(";", "\n"))
    raise InputError(
        f"cannot resolve monoid {text!r}: not a builtin spec and no 'gens:' "
        "line found (inline presentations use 'gens: ...; rel: lhs = rhs')")
