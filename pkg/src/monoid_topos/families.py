"""Closed-form example families: supernatural numbers, 2x2 matrices, and
the two-generator one-relator monoids with a^k = b^l (torus-knot type).

These carry exact arithmetic (no floats): supernatural exponents are ints or
None (= infinity), rationals are fractions.Fraction, matrices are exact int /
Fraction entries, and the a^k = b^l family gets a decision procedure for its
word problem via the injective invariant (degree, free-product class).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .presentation import Word

# -- small number theory helpers (desk scale; no heavy deps) ----------------


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer as {prime: exponent}."""
    if n < 1:
        raise InputError(f"cannot factorize {n}; need a positive integer")
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# -- supernatural numbers ---------------------------------------------------


@dataclass(frozen=True)
class SupernaturalNumber:
    """Exponent vector over a declared finite prime list; None = infinity.

    Primes outside the declared list implicitly have exponent 0, and they
    always count as 'finite support' (they belong to sigma).
    """

    primes: tuple[int, ...]
    exponents: tuple[int | None, ...]

    def __post_init__(self):
        if len(self.primes) != len(set(self.primes)):
            raise InputError("duplicate primes in declaration")
        if tuple(sorted(self.primes)) != self.primes:
            raise InputError("declared primes must be sorted ascending")
        for p in self.primes:
            if not is_prime(p):
                raise InputError(f"{p} is not prime")
        if len(self.exponents) != len(self.primes):
            raise InputError("exponent list does not match prime list")
        for e in self.exponents:
            if e is not None and (not isinstance(e, int) or e < 0):
                raise InputError(f"bad exponent {e!r}")

    def exponent(self, p: int) -> int | None:
        """Exponent of p (None = infinity); 0 for undeclared primes."""
        try:
            return self.exponents[self.primes.index(p)]
        except ValueError:
            return 0

    @property
    def sigma(self) -> tuple[int, ...]:
        """Declared primes with finite exponent (undeclared ones are implicitly
        finite as well, handled by the membership predicates)."""
        return tuple(p for p, e in zip(self.primes, self.exponents)
                     if e is not None)

    def __str__(self):
        parts = [f"{p}:{'inf' if e is None else e}"
                 for p, e in zip(self.primes, self.exponents) if e != 0]
        return ",".join(parts) if parts else "1"


def parse_supernatural(primes_text: str, y_text: str) -> SupernaturalNumber:
    """Parse --primes "2,3,5" and --y "2:inf,3:1" into a supernatural number.

    Declared primes missing from the y string get exponent 0.
    """
    try:
        primes = tuple(sorted(int(t) for t in primes_text.split(",") if t.strip()))
    except ValueError as exc:
        raise InputError(f"bad prime list {primes_text!r}") from exc
    if not primes:
        raise InputError("empty prime list")
    exps: dict[int, int | None] = {p: 0 for p in primes}
    seen: set[int] = set()
    y_text = y_text.strip()
    if y_text and y_text != "1":
        for part in y_text.split(","):
            if ":" not in part:
                raise InputError(f"bad exponent entry {part!r}; want p:e or p:inf")
            p_str, e_str = part.split(":", 1)
            try:
                p = int(p_str)
            except ValueError as exc:
                raise InputError(f"bad prime {p_str!r}") from exc
            if p not in exps:
                raise InputError(f"prime {p} not in declared list")
            if p in seen:
                raise InputError(f"duplicate exponent entry for prime {p}")
            seen.add(p)
            e_str = e_str.strip().lower()
            if e_str == "inf":
                exps[p] = None
            else:
                try:
                    e = int(e_str)
                except ValueError as exc:
                    raise InputError(f"bad exponent {e_str!r}") from exc
                if e < 0:
                    raise InputError(f"negative exponent {e}")
                exps[p] = e
    return SupernaturalNumber(primes, tuple(exps[p] for p in primes))


def sn_divides(n: int, y: SupernaturalNumber) -> bool:
    """n | y: every prime power in n fits under y's exponent.

    Primes of n outside the declared list have implicit exponent 0 in y, so
    any such factor makes this false.
    """
    if n < 1:
        raise InputError(f"divisibility needs a positive integer, got {n}")
    for p, v in factorize(n).items():
        e = y.exponent(p)
        if e is not None and v > e:
            return False
    return True


def _check_positive_rational(q: Fraction) -> Fraction:
    if q <= 0:
        raise InputError(f"need a positive rational, got {q}")
    return q


def sn_in_A_y(q: Fraction, y: SupernaturalNumber) -> bool:
    """q = a/b (lowest terms) lies in A_y iff b divides y."""
    q = _check_positive_rational(Fraction(q))
    return sn_divides(q.denominator, y)


def sn_in_M_y(q: Fraction, y: SupernaturalNumber) -> bool:
    """q = a/b lies in M_y iff no prime of b has finite exponent in y.

    Undeclared primes are finite by convention, so b must factor entirely
    over declared primes with exponent infinity.
    """
    q = _check_positive_rational(Fraction(q))
    for p in factorize(q.denominator):
        if y.exponent(p) is not None:
            return False
    return True


# -- 2x2 matrices -----------------------------------------------------------


@dataclass(frozen=True)
class IntMatrix2:
    a: int
    b: int
    c: int
    d: int

    @staticmethod
    def identity():
        return IntMatrix2(1, 0, 0, 1)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def adjugate(self) -> "IntMatrix2":
        return IntMatrix2(self.d, -self.b, -self.c, self.a)

    def __mul__(self, o: "IntMatrix2") -> "IntMatrix2":
        return IntMatrix2(
            self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]

    def __str__(self):
        return f"{self.a} {self.b}; {self.c} {self.d}"


@dataclass(frozen=True)
class RatMatrix2:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def __str__(self):
        return f"{self.a} {self.b}; {self.c} {self.d}"


def parse_matrix2(text: str, rational=False):
    """Parse "a b; c d" with integer (or fraction, if rational) entries."""
    rows = [r for r in text.split(";")]
    if len(rows) != 2:
        raise InputError(f"matrix needs two ';'-separated rows, got {len(rows)}")
    entries = []
    for r in rows:
        parts = r.split()
        if len(parts) != 2:
            raise InputError(f"matrix row {r.strip()!r} needs two entries")
        for p in parts:
            try:
                entries.append(Fraction(p) if rational else int(p))
            except (ValueError, ZeroDivisionError) as exc:
                raise InputError(f"bad matrix entry {p!r}") from exc
    cls = RatMatrix2 if rational else IntMatrix2
    return cls(*entries)


def smith_normal_form(m: IntMatrix2):
    """Exact 2x2 Smith normal form: returns (u, d, v) with u*d*v = m,
    u and v unimodular, d = diag(d1, d2), d1 >= 0, d1 | d2, d1*d2 = |det|.
    """
    A = [[m.a, m.b], [m.c, m.d]]
    L = [[1, 0], [0, 1]]
    R = [[1, 0], [0, 1]]

    def row_op(i, j, q):  # row i -= q * row j
        for col in range(2):
            A[i][col] -= q * A[j][col]
            L[i][col] -= q * L[j][col]

    def col_op(i, j, q):  # col i -= q * col j (acts on R from the right too)
        for row in range(2):
            A[row][i] -= q * A[row][j]
            R[row][i] -= q * R[row][j]

    def swap_rows():
        A[0], A[1] = A[1], A[0]
        L[0], L[1] = L[1], L[0]

    def swap_cols():
        for row in range(2):
            A[row][0], A[row][1] = A[row][1], A[row][0]
            R[row][0], R[row][1] = R[row][1], R[row][0]

    while True:
        entries = [(abs(A[i][j]), i, j) for i in range(2) for j in range(2)
                   if A[i][j] != 0]
        if not entries:
            break
        _, pi, pj = min(entries)
        if pi == 1:
            swap_rows()
        if pj == 1:
            swap_cols()
        pivot = A[0][0]
        if A[1][0] % pivot != 0:
            row_op(1, 0, A[1][0] // pivot)
            continue
        if A[0][1] % pivot != 0:
            col_op(1, 0, A[0][1] // pivot)
            continue
        row_op(1, 0, A[1][0] // pivot)
        col_op(1, 0, A[0][1] // pivot)
        if A[1][1] % pivot != 0:
            # divisibility fixup: fold row 2 into row 1 and repeat
            row_op(0, 1, -1)
            continue
        break
    for i in range(2):
        if A[i][i] < 0:
            for col in range(2):
                A[i][col] = -A[i][col]
                L[i][col] = -L[i][col]

    def inv2(mat):
        det = mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
        assert det in (1, -1), "transform must be unimodular"
        return [[det * mat[1][1], -det * mat[0][1]],
                [-det * mat[1][0], det * mat[0][0]]]

    li = inv2(L)
    ri = inv2(R)
    u = IntMatrix2(li[0][0], li[0][1], li[1][0], li[1][1])
    d = IntMatrix2(A[0][0], A[0][1], A[1][0], A[1][1])
    v = IntMatrix2(ri[0][0], ri[0][1], ri[1][0], ri[1][1])
    return u, d, v


def adjugate_check(m: IntMatrix2) -> bool:
    """Verify m * adj(m) = adj(m) * m = det(m) * I."""
    det = m.det
    scaled = IntMatrix2(det, 0, 0, det)
    adj = m.adjugate
    return m * adj == scaled and adj * m == scaled


def mat_prime_membership(m: IntMatrix2, sigma) -> bool:
    """Membership of an invertible integer matrix in the det-divisibility
    prime: true iff some prime of sigma divides det(m)."""
    if m.det == 0:
        raise InputError("matrix must have nonzero determinant")
    sigma = sorted(set(sigma))
    for p in sigma:
        if not is_prime(p):
            raise InputError(f"{p} is not prime")
    return any(m.det % p == 0 for p in sigma)


def mat_in_M_y_e11(g: RatMatrix2) -> bool:
    """Stabilizer membership for the rank-one idempotent point: lower-left
    entry zero and upper-left entry integral (g must be invertible)."""
    if g.det == 0:
        raise InputError("matrix must be invertible")
    return g.c == 0 and Fraction(g.a).denominator == 1


def mat_in_M_y_zero(g: RatMatrix2) -> bool:
    """Stabilizer membership for the zero-matrix point: constant true on
    invertible matrices (the point is fixed by everything); recorded as a
    constant predicate because there is nothing computational to decide."""
    if g.det == 0:
        raise InputError("matrix must be invertible")
    return True


# -- the a^k = b^l family ---------------------------------------------------


def _tk_validate(k: int, l: int):
    if not (isinstance(k, int) and isinstance(l, int) and k >= 2 and l >= 2):
        raise InputError(f"need integer exponents k, l >= 2, got k={k}, l={l}")


def _tk_letters(word) -> list[str]:
    letters = list(word.letters if isinstance(word, Word) else word)
    for ch in letters:
        if ch not in ("a", "b"):
            raise InputError(f"word must be over generators a, b; got {ch!r}")
    return letters


def tk_degree(word, k: int, l: int) -> int:
    """Degree homomorphism: a has degree l, b has degree k."""
    _tk_validate(k, l)
    letters = _tk_letters(word)
    return sum(l if ch == "a" else k for ch in letters)


def tk_class(word, k: int, l: int) -> tuple[tuple[str, int], ...]:
    """Image in the free product of cyclic groups of orders k (for a) and l
    (for b), as alternating syllables (letter, exponent) with exponents in
    [1, k-1] resp. [1, l-1]."""
    _tk_validate(k, l)
    stack: list[list] = []
    for ch in _tk_letters(word):
        mod = k if ch == "a" else l
        if stack and stack[-1][0] == ch:
            stack[-1][1] = (stack[-1][1] + 1) % mod
            if stack[-1][1] == 0:
                stack.pop()
                # removing a syllable can expose two mergeable neighbours
                # only across future pushes, which this loop handles
        else:
            e = 1 % mod
            if e:
                stack.append([ch, e])
    return tuple((ch, e) for ch, e in stack)


def _delta_of_class(h, k: int, l: int) -> int:
    """Degree of the alternating representative of a free-product class."""
    total = 0
    for ch, e in h:
        mod = k if ch == "a" else l
        if not (1 <= e < mod):
            raise InputError(f"bad syllable ({ch}, {e})")
        total += e * (l if ch == "a" else k)
    return total


def tk_delta(word, k: int, l: int) -> int:
    """Niveau: the minimal degree over all words equal to this one."""
    _tk_validate(k, l)
    return _delta_of_class(tk_class(word, k, l), k, l)


def tk_element_key(word, k: int, l: int):
    """Injective invariant (degree, class); equal keys iff equal elements."""
    return (tk_degree(word, k, l), tk_class(word, k, l))


def tk_words_equal(w1, w2, k: int, l: int) -> bool:
    return tk_element_key(w1, k, l) == tk_element_key(w2, k, l)


def tk_normal_form(word, k: int, l: int):
    """Factor an element as (central level, alternating word): the element
    equals c^level * word(h) where c = a^k = b^l is central, h is the
    free-product class, and level = (degree - delta(h)) / (k*l)."""
    _tk_validate(k, l)
    deg = tk_degree(word, k, l)
    h = tk_class(word, k, l)
    delta = _delta_of_class(h, k, l)
    level, rem = divmod(deg - delta, k * l)
    if rem != 0 or level < 0:
        raise AssertionError(
            f"degree bookkeeping broken: deg={deg}, delta={delta}")
    letters: list[str] = []
    for ch, e in h:
        letters.extend(ch * e)
    return level, Word(tuple(letters))
