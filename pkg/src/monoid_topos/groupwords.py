"""Words in a free group over named generators.

A group word is a tuple of (generator, sign) pairs with sign +1 or -1.
Free reduction cancels adjacent inverse pairs.  For presentations whose
generators are single lowercase letters, the compact case convention is
supported: "aB" means a * b^-1 (uppercase = inverse).
"""

from __future__ import annotations

from .errors import ParseError

Letter = tuple[str, int]
GroupWord = tuple[Letter, ...]

IDENTITY: GroupWord = ()


def reduce_word(letters) -> GroupWord:
    """Freely reduce: cancel adjacent (g, s)(g, -s) pairs."""
    stack: list[Letter] = []
    for gen, sign in letters:
        if stack and stack[-1][0] == gen and stack[-1][1] == -sign:
            stack.pop()
        else:
            stack.append((gen, sign))
    return tuple(stack)


def invert(w: GroupWord) -> GroupWord:
    return tuple((g, -s) for g, s in reversed(w))


def multiply(*words) -> GroupWord:
    out: list[Letter] = []
    for w in words:
        out.extend(w)
    return reduce_word(out)


def power(w: GroupWord, n: int) -> GroupWord:
    if n < 0:
        return power(invert(w), -n)
    out: GroupWord = ()
    for _ in range(n):
        out = multiply(out, w)
    return out


def from_positive(letters) -> GroupWord:
    """Embed a monoid word (sequence of generator names) as a group word."""
    return tuple((g, 1) for g in letters)


def is_positive(w: GroupWord) -> bool:
    return all(s == 1 for _, s in w)


def positive_negative_split(w: GroupWord):
    """Split a reduced word as m * t^-1 with m, t positive, or None.

    A reduced word has this shape iff no inverse letter is followed by a
    plain letter.  Returns (m_letters, t_letters) with t in monoid order,
    i.e. w = m * reverse-inverse(t).
    """
    seen_negative = False
    pos: list[str] = []
    neg: list[str] = []
    for gen, sign in w:
        if sign == 1:
            if seen_negative:
                return None
            pos.append(gen)
        else:
            seen_negative = True
            neg.append(gen)
    return pos, list(reversed(neg))


def parse_group_word(text: str, generators) -> GroupWord:
    """Parse the case convention: lowercase = generator, uppercase = inverse.

    Only valid when every generator is a single lowercase letter.  The token
    "1" denotes the identity.  Whitespace is ignored.
    """
    gens = set(generators)
    if any(len(g) != 1 or not g.islower() for g in gens):
        raise ParseError(
            "group-word syntax requires single lowercase-letter generators")
    text = "".join(text.split())
    if text == "1" or text == "":
        return IDENTITY
    letters: list[Letter] = []
    for i, ch in enumerate(text):
        if ch in gens:
            letters.append((ch, 1))
        elif ch.lower() in gens:
            letters.append((ch.lower(), -1))
        else:
            raise ParseError(f"unknown group-word letter {ch!r}", col=i + 1)
    return reduce_word(letters)


def format_group_word(w: GroupWord) -> str:
    """Render in the case convention ("1" for the identity)."""
    if not w:
        return "1"
    return "".join(g if s == 1 else g.upper() for g, s in w)
