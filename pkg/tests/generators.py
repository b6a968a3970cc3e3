"""Seeded random-instance builders shared by the unit and acceptance tests.

Right M-sets over presentations with relations are built so the relations
hold by construction (idempotent maps as retracts, commuting pairs as
powers of one map) — rejection sampling would make seeds fragile.
"""

import random

from monoid_topos.msets import FiniteRightMSet
from monoid_topos.presentation import parse_presentation
from monoid_topos.registry import commutative_free_monoid, free_monoid

IDEMPOTENT = parse_presentation("gens: a\nrel: aa = a\n", name="idem")


def presentation_pool():
    """Presentations with at most two generators."""
    return [free_monoid(1), free_monoid(2), IDEMPOTENT,
            commutative_free_monoid(2)]


def _random_map(rng: random.Random, elems):
    return {e: rng.choice(elems) for e in elems}


def _random_retract(rng: random.Random, elems):
    """A random idempotent map: fix a nonempty image set, send everything
    into it, and fix the image pointwise."""
    image = rng.sample(list(elems), rng.randint(1, len(elems)))
    return {e: (e if e in image else rng.choice(image)) for e in elems}


def _power(table, elems, j):
    out = {}
    for e in elems:
        cur = e
        for _ in range(j):
            cur = table[cur]
        out[e] = cur
    return out


def random_right_mset(p, rng: random.Random, max_elems: int = 6):
    n = rng.randint(1, max_elems)
    elems = [f"e{i}" for i in range(n)]
    gens = p.generators
    if p is IDEMPOTENT or (p.name or "") == "idem":
        actions = {gens[0]: _random_retract(rng, elems)}
    elif len(p.relations) == 0:
        actions = {g: _random_map(rng, elems) for g in gens}
    else:
        # commuting pair: f and a power of f always commute
        f = _random_map(rng, elems)
        actions = {gens[0]: f,
                   gens[1]: _power(f, elems, rng.randint(0, n))}
    return FiniteRightMSet(p, elems, actions)
