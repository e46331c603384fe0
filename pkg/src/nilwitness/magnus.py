"""The free group on a, b in truncated noncommutative power series.

a and b map to 1 + A and 1 + B in Z<<A, B>> truncated beyond a fixed total
degree K; the images are units with constant term 1 and the map is injective
on F/gamma_{K+1}(F).  Lower-central weight becomes visible as the lowest
degree of g - 1, which is what gamma_weight reads off.

Degree-d coefficients are stored densely: a list of 2^d integers indexed by
the monomial's bitmask (bit = 1 for B, most significant bit = leftmost
letter).  A degree with no nonzero coefficients is stored as None, which is
what keeps products of deep-weight elements cheap.
"""

from __future__ import annotations

import math

from .words import Comm, Gen, GroupWord, Pow, Prod, WordExpr, parse_word_expr

INFINITE_WEIGHT = math.inf


class MagnusElement:
    """Unit of the truncated series ring with constant term 1; immutable."""

    __slots__ = ("trunc", "_deg")

    def __init__(self, trunc: int, deg: list[list[int] | None]):
        self.trunc = trunc
        for d in range(1, trunc + 1):
            row = deg[d]
            if row is not None and not any(row):
                deg[d] = None
        self._deg = deg

    @staticmethod
    def one(trunc: int) -> "MagnusElement":
        if trunc < 1:
            raise ValueError("truncation weight must be >= 1")
        return MagnusElement(trunc, [None] * (trunc + 1))

    @staticmethod
    def generator(name: str, trunc: int) -> "MagnusElement":
        out = MagnusElement.one(trunc)
        row = [0, 0]
        row[0 if name == "a" else 1] = 1
        out._deg[1] = row
        return out

    def coefficient(self, monomial: str) -> int:
        """Coefficient of a monomial given as a string over {A, B}."""
        d = len(monomial)
        if d == 0:
            return 1
        if d > self.trunc:
            raise ValueError("monomial degree beyond truncation")
        row = self._deg[d]
        if row is None:
            return 0
        mask = 0
        for ch in monomial:
            mask = (mask << 1) | (1 if ch in "bB" else 0)
        return row[mask]

    def degree_terms(self, d: int) -> dict[str, int]:
        """Degree-d homogeneous part as a dict over words in a, b."""
        row = self._deg[d]
        if row is None:
            return {}
        out = {}
        for mask, c in enumerate(row):
            if c:
                word = "".join(
                    "b" if (mask >> (d - 1 - i)) & 1 else "a" for i in range(d)
                )
                out[word] = c
        return out

    def _check(self, other: "MagnusElement") -> None:
        if self.trunc != other.trunc:
            raise ValueError(
                f"mismatched truncation weights {self.trunc} != {other.trunc}"
            )

    def __mul__(self, other: "MagnusElement") -> "MagnusElement":
        self._check(other)
        T = self.trunc
        p, q = self._deg, other._deg
        out: list[list[int] | None] = [None] * (T + 1)
        for d in range(1, T + 1):
            acc: list[int] | None = None
            if p[d] is not None:
                acc = list(p[d])
            if q[d] is not None:
                if acc is None:
                    acc = list(q[d])
                else:
                    qd = q[d]
                    for m in range(len(qd)):
                        acc[m] += qd[m]
            for i in range(1, d):
                pi, qj = p[i], q[d - i]
                if pi is None or qj is None:
                    continue
                if acc is None:
                    acc = [0] * (1 << d)
                shift = d - i
                for m1 in range(len(pi)):
                    c1 = pi[m1]
                    if not c1:
                        continue
                    base = m1 << shift
                    for m2 in range(len(qj)):
                        c2 = qj[m2]
                        if c2:
                            acc[base | m2] += c1 * c2
            out[d] = acc
        return MagnusElement(T, out)

    def _weight(self) -> int:
        """Lowest degree with a nonzero row; trunc + 1 when trivial."""
        for d in range(1, self.trunc + 1):
            if self._deg[d] is not None:
                return d
        return self.trunc + 1

    def inverse(self) -> "MagnusElement":
        """(1 + u)^-1 = sum (-u)^j; only trunc // weight(u) terms survive."""
        return self.__pow__(-1)

    def __pow__(self, n: int) -> "MagnusElement":
        """Integer powers via the binomial series in u = self - 1.

        Works for negative n as well (the generalized binomial coefficients
        of an integer argument are integers); u^j vanishes beyond
        j * weight(u) > trunc, so deep elements have very short series.
        """
        T = self.trunc
        w = self._weight()
        if w > T or n == 0:
            return MagnusElement.one(T)
        acc: list[list[int] | None] = [None] * (T + 1)
        u_rows = self._deg
        power_rows: list[list[int] | None] = list(u_rows)
        j = 1
        while j * w <= T:
            coeff = _binomial_int(n, j)
            if coeff:
                for d in range(j * w, T + 1):
                    row = power_rows[d]
                    if row is None:
                        continue
                    if acc[d] is None:
                        acc[d] = [coeff * c for c in row]
                    else:
                        accd = acc[d]
                        for m, c in enumerate(row):
                            if c:
                                accd[m] += coeff * c
            j += 1
            if j * w <= T:
                power_rows = _rows_mul(power_rows, u_rows, T)
        return MagnusElement(T, acc)

    def mul_letter(self, letter: int) -> "MagnusElement":
        """Right multiplication by a generator or inverse generator
        (letter in +-1 for a, +-2 for b); linear-time in the table size."""
        T = self.trunc
        bit = 0 if abs(letter) == 1 else 1
        p = self._deg
        out: list[list[int] | None] = [None] * (T + 1)
        if letter > 0:
            for d in range(1, T + 1):
                acc = list(p[d]) if p[d] is not None else None
                prev = p[d - 1] if d > 1 else [1]
                if prev is not None:
                    if acc is None:
                        acc = [0] * (1 << d)
                    for m, c in enumerate(prev):
                        if c:
                            acc[(m << 1) | bit] += c
                out[d] = acc
            return MagnusElement(T, out)
        # right-divide: solve Q * (1 + X) = P degree by degree
        for d in range(1, T + 1):
            acc = list(p[d]) if p[d] is not None else None
            prev = out[d - 1] if d > 1 else [1]
            if prev is not None:
                if acc is None:
                    acc = [0] * (1 << d)
                for m, c in enumerate(prev):
                    if c:
                        acc[(m << 1) | bit] -= c
            out[d] = acc
        return MagnusElement(T, out)

    def conjugate_letter(self, letter: int) -> "MagnusElement":
        """x^-1 * self * x for a generator x (or inverse generator)."""
        T = self.trunc
        bit = 0 if abs(letter) == 1 else 1
        p = self._deg
        # left multiply / divide by (1 + X), then right the other way
        mid: list[list[int] | None] = [None] * (T + 1)
        if letter > 0:
            # (1 + X)^-1 * P: solve (1 + X) Q = P
            for d in range(1, T + 1):
                acc = list(p[d]) if p[d] is not None else None
                prev = mid[d - 1] if d > 1 else [1]
                if prev is not None:
                    if acc is None:
                        acc = [0] * (1 << d)
                    hi = bit << (d - 1)
                    for m, c in enumerate(prev):
                        if c:
                            acc[hi | m] -= c
                mid[d] = acc
        else:
            for d in range(1, T + 1):
                acc = list(p[d]) if p[d] is not None else None
                prev = p[d - 1] if d > 1 else [1]
                if prev is not None:
                    if acc is None:
                        acc = [0] * (1 << d)
                    hi = bit << (d - 1)
                    for m, c in enumerate(prev):
                        if c:
                            acc[hi | m] += c
                mid[d] = acc
        return MagnusElement(T, mid).mul_letter(letter)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MagnusElement):
            return NotImplemented
        if self.trunc != other.trunc:
            return False
        for d in range(1, self.trunc + 1):
            a, b = self._deg[d], other._deg[d]
            if a is None and b is None:
                continue
            if (a or [0] * (1 << d)) != (b or [0] * (1 << d)):
                return False
        return True

    def __hash__(self):
        return hash(
            (self.trunc, tuple(tuple(r) if r else None for r in self._deg[1:]))
        )

    def is_one(self) -> bool:
        return all(r is None for r in self._deg[1:])

    def truncate(self, trunc: int) -> "MagnusElement":
        if trunc > self.trunc:
            raise ValueError("cannot extend truncation")
        return MagnusElement(trunc, [r if r is None else list(r) for r in self._deg[: trunc + 1]])

    def __repr__(self) -> str:
        nz = [d for d in range(1, self.trunc + 1) if self._deg[d] is not None]
        return f"MagnusElement(trunc={self.trunc}, degrees={nz})"


def _rows_mul(
    p: list[list[int] | None], q: list[list[int] | None], T: int
) -> list[list[int] | None]:
    """Plain convolution of degree-row tables (no implicit constant term)."""
    out: list[list[int] | None] = [None] * (T + 1)
    for i in range(1, T):
        pi = p[i]
        if pi is None:
            continue
        for j in range(1, T + 1 - i):
            qj = q[j]
            if qj is None:
                continue
            d = i + j
            acc = out[d]
            if acc is None:
                acc = out[d] = [0] * (1 << d)
            for m1, c1 in enumerate(pi):
                if c1:
                    base = m1 << j
                    for m2, c2 in enumerate(qj):
                        if c2:
                            acc[base | m2] += c1 * c2
    return out


def _binomial_int(n: int, j: int) -> int:
    """Generalized binomial coefficient of an integer argument (exact)."""
    num = 1
    for t in range(j):
        num *= n - t
    return num // math.factorial(j)


def mul(g: MagnusElement, h: MagnusElement) -> MagnusElement:
    return g * h


def inv(g: MagnusElement) -> MagnusElement:
    return g.inverse()


def commutator(g: MagnusElement, h: MagnusElement) -> MagnusElement:
    """g^-1 h^-1 g h, computed as 1 + (hg)^-1 (gh - hg).

    The difference gh - hg starts at weight(g) + weight(h), so the final
    correction product only touches deep degrees.
    """
    g._check(h)
    T = g.trunc
    gh = g * h
    hg = h * g
    diff: list[list[int] | None] = [None] * (T + 1)
    lowest = None
    for d in range(1, T + 1):
        a, b = gh._deg[d], hg._deg[d]
        if a is None and b is None:
            continue
        if a is None:
            row = [-c for c in b]
        elif b is None:
            row = list(a)
        else:
            row = [x - y for x, y in zip(a, b)]
        if any(row):
            diff[d] = row
            if lowest is None:
                lowest = d
    if lowest is None:
        return MagnusElement.one(T)
    inv_rows = hg.truncate(T - lowest).inverse()._deg if lowest < T else []
    out: list[list[int] | None] = [
        None if r is None else list(r) for r in diff
    ]
    for i in range(1, T - lowest + 1):
        wi = inv_rows[i] if i < len(inv_rows) else None
        if wi is None:
            continue
        for j in range(lowest, T + 1 - i):
            cj = diff[j]
            if cj is None:
                continue
            d = i + j
            acc = out[d]
            if acc is None:
                acc = out[d] = [0] * (1 << d)
            for m1, c1 in enumerate(wi):
                if c1:
                    base = m1 << j
                    for m2, c2 in enumerate(cj):
                        if c2:
                            acc[base | m2] += c1 * c2
    return MagnusElement(T, out)


def eval_word(w: GroupWord | WordExpr | str, trunc: int) -> MagnusElement:
    """Image of a word under a -> 1 + A, b -> 1 + B at the given truncation.

    Plain words evaluate letter by letter; expressions evaluate bottom-up so
    commutators cost group operations instead of expanded word length.
    """
    if isinstance(w, str):
        w = parse_word_expr(w)
    if isinstance(w, WordExpr):
        return MagnusEvaluator(trunc).eval(w)
    out = MagnusElement.one(trunc)
    for letter in w.letters:
        out = out.mul_letter(letter)
    return out


class MagnusEvaluator:
    """Evaluates word expressions with a per-instance subexpression cache."""

    def __init__(self, trunc: int):
        self.trunc = trunc
        self._cache: dict[str, MagnusElement] = {}

    def eval(self, expr: WordExpr) -> MagnusElement:
        key = expr.key()
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if isinstance(expr, Gen):
            out = MagnusElement.generator(expr.name, self.trunc)
        elif isinstance(expr, Pow):
            out = self.eval(expr.base) ** expr.exp
        elif isinstance(expr, Comm):
            out = self._comm(expr)
        elif isinstance(expr, Prod):
            out = MagnusElement.one(self.trunc)
            for p in expr.parts:
                g = self.eval(p)
                out = out * g
        else:
            raise TypeError(f"cannot evaluate {expr!r}")
        self._cache[key] = out
        return out

    def _comm(self, expr: Comm) -> MagnusElement:
        if isinstance(expr.right, Gen):
            g = self.eval(expr.left)
            letter = 1 if expr.right.name == "a" else 2
            return g.inverse() * g.conjugate_letter(letter)
        g = self.eval(expr.left)
        h = self.eval(expr.right)
        return commutator(g, h)


def gamma_weight(g: MagnusElement) -> int | float:
    """Lower-central weight at truncation: the lowest degree with a nonzero
    coefficient in g - 1; INFINITE_WEIGHT when g is trivial at truncation."""
    for d in range(1, g.trunc + 1):
        if g._deg[d] is not None:
            return d
    return INFINITE_WEIGHT


def leading_lie(g: MagnusElement, basis):
    """Leading homogeneous part of g - 1 as a free Lie element.

    The lowest-degree part of the expansion of a group element is always a
    Lie element; a non-Lie leading term means corrupted data and raises.
    """
    from . import freelie

    k = gamma_weight(g)
    if k is INFINITE_WEIGHT:
        raise ValueError("identity element has no leading term")
    if k > basis.max_weight:
        raise ValueError("leading weight exceeds basis truncation")
    part = g.degree_terms(k)
    coords = freelie._decompose_homogeneous(part, k, verify=True)
    return basis.from_words(coords)


def check_group_identity(n: int, trunc: int | None = None) -> bool:
    """Group-word form of the weight-(2n + 2) alternating Engel identity.

    Checks that [[a,_2n b], a] and the alternating product of
    [[a,_{2n-1-i} b], [a,_i b]] bracketed with b agree modulo
    gamma_{2n+3}(F), by comparing images truncated at degree 2n + 2.
    """
    from .words import alternating_engel_product, commutator as wcomm, engel, A, B

    if n < 1:
        raise ValueError("n must be >= 1")
    T = trunc if trunc is not None else 2 * n + 2
    if T < 2 * n + 2:
        raise ValueError("truncation weight must be >= 2n + 2")
    ev = MagnusEvaluator(T)
    lhs = ev.eval(wcomm(engel(2 * n), A))
    rhs = ev.eval(wcomm(alternating_engel_product(n), B))
    return lhs == rhs
