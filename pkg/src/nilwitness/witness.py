"""Inductive construction of relation witnesses in the free nilpotent tower.

Given a finite integer sequence q (entries usually 0/1) and a truncation
weight K, build_witness produces group words r^(3), ..., r^(K) and
s^(3), ..., s^(K) over a, b such that, writing R and S for the ordered
products of the factors:

(0) the k-indexed factors lie in gamma_k of the free group;
(1) after appending the k-indexed factors the relation defect
    [R, a][S, b] lies in gamma_{k+2}, so at full depth the relation
    [R, a][S, b] = 1 holds modulo gamma_{K+2};
(2) every s-factor maps to the identity in the completed lamplighter group;
(3) the lamplighter image of R is (f, 0) with f = sum n_i x^{i-1}, where the
    odd-slot exponents are forced to the input sequence: n_{2i+1} = q_i.

Each inductive step reads the leading term of the current defect through the
Magnus embedding, splits it as [alpha, a] + [beta, b] in the free Lie ring,
and appends the inverse lifts; on even steps an iterated-commutator power
[a,_k b]^m fixes the controlled lamplighter coefficient and the matching
alternating product on the s-side repairs the relation. Exponents of the
sequence beyond its stored length are taken to be zero.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, replace

from .freelie import FreeLieElement, HallBasis, hall_basis, present_with_generators
from .lamplighter import LampEvaluator, variant_from_tag
from .magnus import (
    INFINITE_WEIGHT,
    MagnusElement,
    MagnusEvaluator,
    gamma_weight,
    leading_lie,
)
from .series import TruncatedSeries, ZZ
from .words import (
    IDENTITY,
    WordExpr,
    alternating_engel_product,
    basis_word_expr,
    commutator,
    engel,
    parse_word_expr,
    power,
    product,
    A,
    B,
)

__all__ = [
    "WitnessPair",
    "Report",
    "PropertyResult",
    "build_witness",
    "verify_witness",
    "witness_series",
    "alternating_engel_product",
]


@dataclass(frozen=True)
class PropertyResult:
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class Report:
    p0: PropertyResult
    p1: PropertyResult
    p2: PropertyResult
    p3: PropertyResult

    @property
    def ok(self) -> bool:
        return self.p0.ok and self.p1.ok and self.p2.ok and self.p3.ok

    def to_json(self) -> dict:
        out: dict = {}
        details = {}
        for name in ("p0", "p1", "p2", "p3"):
            res: PropertyResult = getattr(self, name)
            out[name] = res.ok
            if res.detail:
                details[name] = res.detail
        if details:
            out["details"] = details
        return out


@dataclass(frozen=True)
class WitnessPair:
    """The sequence q, the factor words indexed 3..K, and the realized
    exponent sequence n_3..n_K of the lamplighter image."""

    q: tuple[int, ...]
    K: int
    r_factors: tuple[WordExpr, ...]
    s_factors: tuple[WordExpr, ...]
    n: tuple[int, ...]
    report: Report | None = None

    def factor_indices(self) -> range:
        return range(3, 3 + len(self.r_factors))

    def r_word(self) -> WordExpr:
        return product(*self.r_factors)

    def s_word(self) -> WordExpr:
        return product(*self.s_factors)

    def to_json(self) -> dict:
        out = {
            "q": list(self.q),
            "K": self.K,
            "r_factors": [str(w) for w in self.r_factors],
            "s_factors": [str(w) for w in self.s_factors],
            "n": list(self.n),
        }
        if self.report is not None:
            out["report"] = self.report.to_json()
        return out

    @staticmethod
    def from_json(data: dict) -> "WitnessPair":
        return WitnessPair(
            q=tuple(int(v) for v in data["q"]),
            K=int(data["K"]),
            r_factors=tuple(parse_word_expr(t) for t in data["r_factors"]),
            s_factors=tuple(parse_word_expr(t) for t in data["s_factors"]),
            n=tuple(int(v) for v in data["n"]),
        )


@functools.lru_cache(maxsize=None)
def _magnus_evaluator(trunc: int) -> MagnusEvaluator:
    return MagnusEvaluator(trunc)


@functools.lru_cache(maxsize=None)
def _lamp_evaluator(tag: str, trunc: int) -> LampEvaluator:
    return LampEvaluator(variant_from_tag(tag), trunc)


@functools.lru_cache(maxsize=None)
def _basis(max_weight: int) -> HallBasis:
    return hall_basis(max_weight)


def _commutator_with_letter(g: MagnusElement, letter: int) -> MagnusElement:
    return g.inverse() * g.conjugate_letter(letter)


def _defect(R: MagnusElement, S: MagnusElement) -> MagnusElement:
    """[R, a] [S, b] at the truncation of the inputs."""
    return _commutator_with_letter(R, 1) * _commutator_with_letter(S, 2)


def _lift_inverse(elt: FreeLieElement) -> WordExpr:
    """Word whose leading Lie term is -elt: reversed product of basis bracket
    words with negated exponents.  Deterministic: factors in basis order."""
    parts = [power(basis_word_expr(w), -c) for w, c in elt.terms()]
    return product(*reversed(parts))


def build_witness(q, K: int) -> WitnessPair:
    """Run the inductive construction; the returned pair carries a report
    from the independent verifier.

    Deterministic: the same (q, K) always yields the same factor words, and
    growing K extends the factor list without changing earlier factors.
    """
    if K < 3:
        raise ValueError("K must be >= 3")
    q = tuple(int(v) for v in q)
    T = K + 1
    basis = _basis(T)
    ev = _magnus_evaluator(T)
    lamp = _lamp_evaluator("Z", K)

    def q_at(i: int) -> int:
        return q[i - 1] if i - 1 < len(q) else 0

    r3 = power(engel(2), q_at(1))
    s3 = power(commutator(commutator(A, B), A), -q_at(1))
    r_factors: list[WordExpr] = [r3]
    s_factors: list[WordExpr] = [s3]
    R = ev.eval(r3)
    S = ev.eval(s3)
    lamp_r = lamp.eval(r3)

    for k in range(3, K):
        Tk = k + 2
        D = _defect(R.truncate(Tk), S.truncate(Tk))
        gw = gamma_weight(D)
        if gw < k + 2:
            raise RuntimeError(
                f"internal error: defect after step {k} has weight {gw} < {k + 2}"
            )
        if gw is INFINITE_WEIGHT:
            a_inv = b_inv = IDENTITY
        else:
            t = leading_lie(D, basis)
            alpha, beta = present_with_generators(t)
            a_inv = _lift_inverse(alpha)
            b_inv = _lift_inverse(beta)
        if k % 2 == 1:
            r_new, s_new = a_inv, b_inv
        else:
            half = k // 2
            partial = lamp_r * lamp.eval(a_inv)
            m = q_at(half) - partial.f.coeffs[k]
            r_new = product(a_inv, power(engel(k), m))
            s_new = product(b_inv, power(alternating_engel_product(half), -m))
        r_factors.append(r_new)
        s_factors.append(s_new)
        R = R * ev.eval(r_new)
        S = S * ev.eval(s_new)
        lamp_r = lamp_r * lamp.eval(r_new)

    if lamp_r.e != 0:
        raise RuntimeError("internal error: r-product has a nontrivial shift")
    n = tuple(int(lamp_r.f.coeffs[i - 1]) for i in range(3, K + 1))
    pair = WitnessPair(
        q=q,
        K=K,
        r_factors=tuple(r_factors),
        s_factors=tuple(s_factors),
        n=n,
    )
    return replace(pair, report=verify_witness(pair))


def verify_witness(pair: WitnessPair) -> Report:
    """Re-check properties (0)-(3) from the stored factor words alone.

    Failures are recorded with the first failing weight or factor index;
    they are data, not exceptions.
    """
    K = pair.K
    T = K + 1
    ev = _magnus_evaluator(T)
    lamp = _lamp_evaluator("Z", max(K, 1))
    indexed = list(zip(pair.factor_indices(), pair.r_factors, pair.s_factors))

    fails: list[str] = []
    for k, r, s in indexed:
        for name, expr in (("r", r), ("s", s)):
            gw = gamma_weight(ev.eval(expr))
            if gw < k:
                fails.append(f"{name}^({k}) has weight {gw} < {k}")
    p0 = PropertyResult(not fails, "; ".join(fails))

    fails = []
    R = MagnusElement.one(T)
    S = MagnusElement.one(T)
    for k, r, s in indexed:
        R = R * ev.eval(r)
        S = S * ev.eval(s)
        Tk = min(k + 1, T)
        defect = _defect(R.truncate(Tk), S.truncate(Tk))
        if not defect.is_one():
            fails.append(f"step {k}: defect has weight {gamma_weight(defect)}")
    p1 = PropertyResult(not fails, "; ".join(fails))

    fails = []
    for k, _, s in indexed:
        img = lamp.eval(s)
        if not img.is_identity():
            fails.append(f"s^({k}) maps to {img}")
    p2 = PropertyResult(not fails, "; ".join(fails))

    fails = []
    lamp_r = lamp.eval(pair.r_word())
    if lamp_r.e != 0:
        fails.append(f"r-product has shift exponent {lamp_r.e}")
    expected = witness_series(pair)
    actual = TruncatedSeries.from_coeffs(ZZ, max(K, 1), lamp_r.f.coeffs)
    if actual != expected:
        fails.append("series of the r-product disagrees with the exponent data")
    for i in range(1, (K - 1) // 2 + 1):
        slot = 2 * i + 1
        want = pair.q[i - 1] if i - 1 < len(pair.q) else 0
        got = pair.n[slot - 3] if slot - 3 < len(pair.n) else 0
        if got != want:
            fails.append(f"controlled exponent n_{slot} = {got}, expected {want}")
    p3 = PropertyResult(not fails, "; ".join(fails))

    return Report(p0=p0, p1=p1, p2=p2, p3=p3)


def witness_series(pair: WitnessPair) -> TruncatedSeries:
    """The series sum n_i x^{i-1} over the integers, truncated at x^K."""
    K = max(pair.K, 1)
    coeffs = [0] * K
    for i, value in zip(pair.factor_indices(), pair.n):
        if i - 1 < K:
            coeffs[i - 1] = value
    return TruncatedSeries.from_coeffs(ZZ, K, coeffs)
