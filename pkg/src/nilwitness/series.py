"""Truncated commutative power series R[x]/x^K and Laurent polynomials R[C].

Three coefficient rings: the integers, the rationals (exact fractions), and
the integers modulo an odd prime.  On top of the arithmetic this module
provides the substitution t -> 1 + x from the group ring of the infinite
cyclic group C = <t>, the antipode t -> t^-1 and the involution it induces on
series, rational powers of one-units, and a certified check that the
substitution identifies R[C] modulo powers of the augmentation ideal with
truncated series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg

RationalExponent = Fraction  # exact rational, stdlib keeps lowest terms


@dataclass(frozen=True)
class IntegerRing:
    tag: str = "Z"

    def coerce(self, v):
        if isinstance(v, Fraction):
            if v.denominator != 1:
                raise ValueError(f"{v} is not an integer")
            return int(v)
        return int(v)


@dataclass(frozen=True)
class RationalRing:
    tag: str = "Q"

    def coerce(self, v):
        return Fraction(v)


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if self.p == 2:
            raise ValueError("characteristic 2 is not supported (odd primes only)")
        if self.p < 3 or any(
            self.p % q == 0 for q in range(2, math.isqrt(self.p) + 1)
        ):
            raise ValueError(f"{self.p} is not an odd prime")

    @property
    def tag(self) -> str:
        return f"Z/{self.p}"

    def coerce(self, v):
        if isinstance(v, Fraction):
            num = v.numerator % self.p
            den = v.denominator % self.p
            if den == 0:
                raise ZeroDivisionError("denominator divisible by p")
            return num * pow(den, self.p - 2, self.p) % self.p
        return int(v) % self.p


ZZ = IntegerRing()
QQ = RationalRing()

Ring = IntegerRing | RationalRing | PrimeField


def ring_from_tag(tag: str) -> Ring:
    """'Z', 'Q', or 'Zp:<p>' (also accepts 'Z/<p>')."""
    if tag == "Z":
        return ZZ
    if tag == "Q":
        return QQ
    for prefix in ("Zp:", "Z/"):
        if tag.startswith(prefix):
            return PrimeField(int(tag[len(prefix):]))
    raise ValueError(f"unknown ring tag {tag!r}")


@dataclass(frozen=True)
class TruncatedSeries:
    """Element of R[x]/x^K; exactly K stored coefficients."""

    ring: Ring
    trunc: int
    coeffs: tuple

    @staticmethod
    def from_coeffs(ring: Ring, trunc: int, coeffs: Sequence) -> "TruncatedSeries":
        if trunc < 1:
            raise ValueError("truncation must be >= 1")
        vals = [ring.coerce(c) for c in coeffs[:trunc]]
        vals += [ring.coerce(0)] * (trunc - len(vals))
        return TruncatedSeries(ring, trunc, tuple(vals))

    @staticmethod
    def zero(ring: Ring, trunc: int) -> "TruncatedSeries":
        return TruncatedSeries.from_coeffs(ring, trunc, ())

    @staticmethod
    def one(ring: Ring, trunc: int) -> "TruncatedSeries":
        return TruncatedSeries.from_coeffs(ring, trunc, (1,))

    @staticmethod
    def x(ring: Ring, trunc: int) -> "TruncatedSeries":
        return TruncatedSeries.from_coeffs(ring, trunc, (0, 1))

    @staticmethod
    def monomial(ring: Ring, trunc: int, k: int, c=1) -> "TruncatedSeries":
        if not 0 <= k < trunc:
            raise ValueError("exponent out of range")
        return TruncatedSeries.from_coeffs(ring, trunc, (0,) * k + (c,))

    def _check(self, other: "TruncatedSeries") -> None:
        if self.ring != other.ring or self.trunc != other.trunc:
            raise ValueError("mismatched series rings or truncations")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        ring = self.ring
        return TruncatedSeries(
            ring,
            self.trunc,
            tuple(ring.coerce(u + v) for u, v in zip(self.coeffs, other.coeffs)),
        )

    def __neg__(self) -> "TruncatedSeries":
        ring = self.ring
        return TruncatedSeries(ring, self.trunc, tuple(ring.coerce(-u) for u in self.coeffs))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        K = self.trunc
        out = [0] * K
        for i, u in enumerate(self.coeffs):
            if u == 0:
                continue
            for j in range(K - i):
                v = other.coeffs[j]
                if v != 0:
                    out[i + j] += u * v
        ring = self.ring
        return TruncatedSeries(ring, K, tuple(ring.coerce(c) for c in out))

    def scale(self, c) -> "TruncatedSeries":
        ring = self.ring
        c = ring.coerce(c)
        return TruncatedSeries(ring, self.trunc, tuple(ring.coerce(c * u) for u in self.coeffs))

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; the constant term must be a unit."""
        c0 = self.coeffs[0]
        ring = self.ring
        if isinstance(ring, IntegerRing):
            if c0 not in (1, -1):
                raise ValueError("constant term is not a unit of Z")
            inv0 = c0
        elif isinstance(ring, RationalRing):
            if c0 == 0:
                raise ValueError("constant term is zero")
            inv0 = Fraction(1) / c0
        else:
            if c0 % ring.p == 0:
                raise ValueError("constant term is zero mod p")
            inv0 = pow(c0, ring.p - 2, ring.p)
        K = self.trunc
        out = [ring.coerce(inv0)] + [ring.coerce(0)] * (K - 1)
        for d in range(1, K):
            s = 0
            for i in range(1, d + 1):
                s += self.coeffs[i] * out[d - i]
            out[d] = ring.coerce(-inv0 * s)
        return TruncatedSeries(ring, K, tuple(out))

    def __pow__(self, n: int) -> "TruncatedSeries":
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncatedSeries.one(self.ring, self.trunc)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def valuation(self) -> int | float:
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return float("inf")

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @staticmethod
    def from_json(ring: Ring, data: Sequence[str]) -> "TruncatedSeries":
        return TruncatedSeries.from_coeffs(ring, len(data), [Fraction(s) for s in data])

    def __str__(self) -> str:
        terms = [f"{c}*x^{i}" for i, c in enumerate(self.coeffs) if c != 0]
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class LaurentPoly:
    """Element of the group ring R[C], C = <t>; exponent -> coefficient."""

    ring: Ring
    terms: Mapping[int, object]

    @staticmethod
    def from_terms(ring: Ring, terms: Mapping[int, object]) -> "LaurentPoly":
        clean = {}
        for e, c in terms.items():
            c = ring.coerce(c)
            if c != 0:
                clean[int(e)] = c
        return LaurentPoly(ring, clean)

    @staticmethod
    def t_power(ring: Ring, e: int) -> "LaurentPoly":
        return LaurentPoly.from_terms(ring, {e: 1})

    @staticmethod
    def one(ring: Ring) -> "LaurentPoly":
        return LaurentPoly.t_power(ring, 0)

    def _check(self, other: "LaurentPoly") -> None:
        if self.ring != other.ring:
            raise ValueError("mismatched rings")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly.from_terms(self.ring, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly.from_terms(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out: dict[int, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly.from_terms(self.ring, out)

    def augmentation(self):
        return self.ring.coerce(sum(self.terms.values()))

    def to_json(self) -> dict[str, str]:
        return {str(e): str(c) for e, c in sorted(self.terms.items())}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.ring == other.ring and dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items()))))


def antipode(p: LaurentPoly) -> LaurentPoly:
    """The group-ring involution t^i -> t^-i."""
    return LaurentPoly.from_terms(p.ring, {-e: c for e, c in p.terms.items()})


def one_plus_x_power(ring: Ring, e: int, trunc: int) -> TruncatedSeries:
    """(1 + x)^e for integer e, negative powers via the geometric inverse."""
    base = TruncatedSeries.from_coeffs(ring, trunc, (1, 1))
    if e >= 0:
        return base**e
    return base.inverse() ** (-e)


def tau(p: LaurentPoly, trunc: int) -> TruncatedSeries:
    """Ring homomorphism R[C] -> R[x]/x^K extending t -> 1 + x."""
    out = TruncatedSeries.zero(p.ring, trunc)
    for e, c in p.terms.items():
        out = out + one_plus_x_power(p.ring, e, trunc).scale(c)
    return out


def sigma_tilde(f: TruncatedSeries) -> TruncatedSeries:
    """Involution of R[x]/x^K induced by the antipode through tau.

    Substitutes x -> (1 + x)^-1 - 1 = -x + x^2 - x^3 + ...; applying it twice
    is the identity at truncation.
    """
    s = one_plus_x_power(f.ring, -1, f.trunc) - TruncatedSeries.one(f.ring, f.trunc)
    acc = TruncatedSeries.zero(f.ring, f.trunc)
    for c in reversed(f.coeffs):
        acc = acc * s + TruncatedSeries.from_coeffs(f.ring, f.trunc, (c,))
    return acc


def rat_pow(f: TruncatedSeries, r) -> TruncatedSeries:
    """f^r for rational r via the binomial series sum_n C(r, n) (f - 1)^n.

    Requires rational coefficients and constant term 1; the sum is finite at
    truncation because (f - 1)^n has valuation >= n.
    """
    if not isinstance(f.ring, RationalRing):
        raise ValueError("rational powers need the rational coefficient ring")
    if f.coeffs[0] != 1:
        raise ValueError("rational powers need constant term 1")
    r = Fraction(r)
    u = f - TruncatedSeries.one(f.ring, f.trunc)
    acc = TruncatedSeries.one(f.ring, f.trunc)
    term = TruncatedSeries.one(f.ring, f.trunc)
    binom = Fraction(1)
    for n in range(1, f.trunc):
        term = term * u
        if term.is_zero():
            break
        binom = binom * (r - n + 1) / n
        acc = acc + term.scale(binom)
    return acc


def tau_q(r, trunc: int) -> TruncatedSeries:
    """Image of the group element t^r, rational r: (1 + x)^r over Q."""
    r = Fraction(r)
    if r.denominator == 1:
        return one_plus_x_power(QQ, r.numerator, trunc)
    return rat_pow(TruncatedSeries.from_coeffs(QQ, trunc, (1, 1)), r)


# --- the augmentation-filtration isomorphism certificate


def _tau_row(ring: Ring, e: int, n: int) -> list:
    return list(one_plus_x_power(ring, e, n).coeffs)


def augmentation_iso_report(ring: Ring, n: int, span_pad: int = 2) -> dict:
    """Certificates that tau identifies R[C]/I^n with R[x]/x^n.

    I is the augmentation ideal (kernel of t -> 1).  Working over the
    spanning set {t^-N, ..., t^N}, N = n + span_pad, the report certifies:

    * surjectivity - the rows tau(t^j) mod x^n span R^n (over Z: with all
      elementary divisors 1, so the row lattice is the full lattice);
    * kernel containment - tau((t-1)^n t^j) has valuation >= n;
    * kernel exactness - the relation lattice of the rows equals the lattice
      spanned by the coefficient vectors of (t-1)^n t^j (over a field, equal
      dimensions plus containment);
    * stability - the same certificates hold after growing N by one.

    R[C] has infinite rank, so a finite check is only honest together with
    the stability certificate; that is what the span_pad growth re-run is.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    results = {}
    for pad in (span_pad, span_pad + 1):
        N = n + pad
        exps = list(range(-N, N + 1))
        rows = [_tau_row(ring, e, n) for e in exps]
        # coefficient vectors of (t-1)^n t^j over the t-power basis
        binom = [_binomial_signed(n, k) for k in range(n + 1)]
        ideal_rows = []
        for j in range(-N, N - n + 1):
            vec = [0] * len(exps)
            for k in range(n + 1):
                vec[j + k + N] = ring.coerce(binom[k])
            ideal_rows.append(vec)
        if isinstance(ring, IntegerRing):
            surj = linalg.row_lattice_is_full(rows, n)
            kernel_rows = linalg.integer_row_nullspace(rows)
            exact = linalg.lattices_equal(kernel_rows, ideal_rows)
        else:
            p = ring.p if isinstance(ring, PrimeField) else None
            rank = linalg.field_rank(rows, p)
            surj = rank == n
            null_rank = len(rows) - rank
            ideal_rank = linalg.field_rank(ideal_rows, p)
            # containment: each ideal row maps to valuation >= n
            exact = ideal_rank == null_rank
        contain = all(
            tau(
                LaurentPoly.from_terms(ring, {j + k: binom[k] for k in range(n + 1)}),
                n,
            ).is_zero()
            for j in range(-N, N - n + 1)
        )
        results[f"N={N}"] = {
            "surjective": bool(surj),
            "kernel_contained": bool(contain),
            "kernel_exact": bool(exact),
        }
    flat = [v for r in results.values() for v in r.values()]
    return {"ring": ring.tag, "n": n, "ok": all(flat), "certificates": results}


def _binomial_signed(n: int, k: int) -> int:
    return (-1) ** (n - k) * math.comb(n, k)


def check_augmentation_iso(ring: Ring, n: int) -> bool:
    """True iff all certificates of augmentation_iso_report pass."""
    return augmentation_iso_report(ring, n)["ok"]
