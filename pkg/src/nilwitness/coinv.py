"""Truncated exterior-square coinvariants and an involutive-field exactness
tester.

The coinvariant model: the exterior square of R[x]/x^K has basis
x^i ^ x^j for i < j (dimension K(K-1)/2); the cyclic shift acts diagonally
through multiplication by (1 + x) (by (1 + x)^r for rational r in the
divisible variant), and the coinvariant space is the quotient by the span of
g.v ^ g.w - v ^ w.  Ranks come from exact elimination, over the rationals or
over Z/p, and can be cross-checked by re-eliminating in a different order.

The second half models a field K with a nontrivial involution acting
semilinearly on a vector space V, the subspace D spanned by the tensors
v (x) conj(v), and checks exactness of

    0 -> K --(. v0)--> V --(- (x) v0)--> (V (x)_K V) / D

by brute-force kernel computation over the rationals.  The tensor product is
the conjugate-balanced one (scalars move across the tensor sign through the
involution), which is the reading under which D is an honest K-subspace; in
coordinates v (x) u is the matrix (v_j * conj(u)_k) and D becomes the
symmetric matrices.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .series import (
    PrimeField,
    QQ,
    RationalRing,
    Ring,
    TruncatedSeries,
    one_plus_x_power,
    rat_pow,
)


# --- exterior-square coinvariants


@dataclass(frozen=True)
class CoinvariantSpace:
    """Quotient presentation of the truncated exterior square by the diagonal
    action of the chosen shift powers."""

    ring: Ring
    trunc: int
    exponents: tuple
    pairs: tuple[tuple[int, int], ...]
    rank: int
    rel_rank: int
    _rref_rows: tuple
    _rref_pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.pairs)

    def reduce(self, vec) -> tuple:
        """Canonical representative of a wedge-coordinate vector modulo the
        relation row space."""
        p = self.ring.p if isinstance(self.ring, PrimeField) else None
        out = linalg.reduce_mod_rowspace(
            list(vec), [list(r) for r in self._rref_rows], list(self._rref_pivots), p
        )
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "ring": self.ring.tag,
            "K": self.trunc,
            "lambda2_dim": self.dim,
            "relation_rank": self.rel_rank,
            "rank": self.rank,
        }


def wedge_coords(
    v: TruncatedSeries, w: TruncatedSeries, pairs: tuple[tuple[int, int], ...]
) -> list:
    """Coordinates of v ^ w in the x^i ^ x^j (i < j) basis."""
    ring = v.ring
    return [
        ring.coerce(v.coeffs[i] * w.coeffs[j] - v.coeffs[j] * w.coeffs[i])
        for i, j in pairs
    ]


def _shift_series(f: TruncatedSeries, r) -> TruncatedSeries:
    r = Fraction(r)
    if r.denominator == 1:
        return one_plus_x_power(f.ring, int(r), f.trunc) * f
    if not isinstance(f.ring, RationalRing):
        raise ValueError("fractional shift exponents need the rational ring")
    return rat_pow(TruncatedSeries.from_coeffs(QQ, f.trunc, (1, 1)), r) * f


def build_coinvariants(ring: Ring, trunc: int, exponents=None) -> CoinvariantSpace:
    """Quotient of the truncated exterior square by the diagonal action of
    the shift powers t^r, r in `exponents`.

    Default generating exponents are 1..K: the matrix entries of the t^r
    action depend polynomially on r with degree below K, so K distinct
    integer values span the same relation space as all powers; the tests
    re-check that empirically by adding more exponents and watching the rank.
    """
    if trunc < 2:
        raise ValueError("need truncation >= 2 for a nonzero exterior square")
    if exponents is None:
        exponents = tuple(range(1, trunc + 1))
    exponents = tuple(Fraction(e) for e in exponents)
    pairs = tuple((i, j) for i in range(trunc) for j in range(i + 1, trunc))
    basis_series = [
        TruncatedSeries.monomial(ring, trunc, k) for k in range(trunc)
    ]
    rows = []
    for r in exponents:
        shifted = [_shift_series(f, r) for f in basis_series]
        for i, j in pairs:
            rel = wedge_coords(shifted[i], shifted[j], pairs)
            base = wedge_coords(basis_series[i], basis_series[j], pairs)
            rows.append([ring.coerce(u - v) for u, v in zip(rel, base)])
    p = ring.p if isinstance(ring, PrimeField) else None
    rel_rank, pivots, rref_rows = linalg.rref(rows, p)
    return CoinvariantSpace(
        ring=ring,
        trunc=trunc,
        exponents=exponents,
        pairs=pairs,
        rank=len(pairs) - rel_rank,
        rel_rank=rel_rank,
        _rref_rows=tuple(tuple(r) for r in rref_rows),
        _rref_pivots=tuple(pivots),
    )


def theta(f: TruncatedSeries, space: CoinvariantSpace) -> tuple:
    """Class of f ^ 1 in the coinvariant quotient (canonical representative).

    Linear in f; the constant term contributes nothing since 1 ^ 1 = 0.
    """
    if f.ring != space.ring or f.trunc != space.trunc:
        raise ValueError("series does not match the space")
    one = TruncatedSeries.one(space.ring, space.trunc)
    return space.reduce(wedge_coords(f, one, space.pairs))


def coinvariant_rank_oracle(ring: Ring, trunc: int, exponents=None) -> int:
    """Independent re-elimination: same relation set, different pivoting.

    Relations are regenerated, ordered differently, and eliminated with the
    wedge coordinates reversed; the resulting rank must match the primary
    computation.
    """
    space = build_coinvariants(ring, trunc, exponents)
    pairs = space.pairs
    basis_series = [TruncatedSeries.monomial(ring, trunc, k) for k in range(trunc)]
    rows = []
    for r in reversed(space.exponents):
        shifted = [_shift_series(f, r) for f in basis_series]
        for i, j in reversed(pairs):
            rel = wedge_coords(shifted[i], shifted[j], pairs)
            base = wedge_coords(basis_series[i], basis_series[j], pairs)
            rows.append(list(reversed([ring.coerce(u - v) for u, v in zip(rel, base)])))
    p = ring.p if isinstance(ring, PrimeField) else None
    return len(pairs) - linalg.field_rank(rows, p)


# --- quadratic extension fields with conjugation


@dataclass(frozen=True)
class QuadExt:
    """Element u + v * sqrt(d) of the quadratic field Q(sqrt(d))."""

    u: Fraction
    v: Fraction

    def __add__(self, o: "QuadExt") -> "QuadExt":
        return QuadExt(self.u + o.u, self.v + o.v)

    def __sub__(self, o: "QuadExt") -> "QuadExt":
        return QuadExt(self.u - o.u, self.v - o.v)

    def __neg__(self) -> "QuadExt":
        return QuadExt(-self.u, -self.v)

    def mul(self, o: "QuadExt", d: int) -> "QuadExt":
        return QuadExt(self.u * o.u + d * self.v * o.v, self.u * o.v + self.v * o.u)

    def conj(self) -> "QuadExt":
        return QuadExt(self.u, -self.v)

    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    @staticmethod
    def of(u, v=0) -> "QuadExt":
        return QuadExt(Fraction(u), Fraction(v))


@dataclass(frozen=True)
class InvolutiveField:
    """Q(sqrt(d)) with conjugation, acting coordinatewise on V = K^dim, with
    the fixed vector v0 = e_1."""

    d: int
    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("V must be nonzero")
        r = math.isqrt(abs(self.d))
        if self.d == 0 or (self.d > 0 and r * r == self.d):
            raise ValueError(
                f"d = {self.d} gives a trivial involution (not a field extension)"
            )

    # vectors are tuples of QuadExt of length dim
    def zero_vec(self):
        return tuple(QuadExt.of(0) for _ in range(self.dim))

    def basis_vec(self, i: int):
        return tuple(QuadExt.of(int(j == i)) for j in range(self.dim))

    @property
    def v0(self):
        return self.basis_vec(0)

    def sigma_v(self, vec):
        return tuple(c.conj() for c in vec)

    def scale_vec(self, alpha: QuadExt, vec):
        return tuple(alpha.mul(c, self.d) for c in vec)

    def add_vec(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def plus_part(self, vec):
        return tuple(QuadExt(c.u, Fraction(0)) for c in vec)

    def minus_part(self, vec):
        return tuple(QuadExt(Fraction(0), c.v) for c in vec)

    def random_scalar(self, rng) -> QuadExt:
        return QuadExt.of(
            Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
            Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
        )

    def random_vec(self, rng):
        return tuple(self.random_scalar(rng) for _ in range(self.dim))


def _tensor_coords(F: InvolutiveField, v, u) -> list[Fraction]:
    """Rational coordinates of v (x) u in the conjugate-balanced tensor:
    the dim x dim matrix of entries v_j * conj(u_k), flattened over the
    rational basis (1, sqrt(d)) of each entry."""
    out: list[Fraction] = []
    for vj in v:
        for uk in u:
            e = vj.mul(uk.conj(), F.d)
            out.extend((e.u, e.v))
    return out


def _pure_tensor(F: InvolutiveField, w) -> list[Fraction]:
    return _tensor_coords(F, w, F.sigma_v(w))


def _diagonal_span_rows(F: InvolutiveField) -> list[list[Fraction]]:
    """Rational spanning set of D = span_K { w (x) sigma(w) }.

    Pure tensors at enough vectors w rationally span the whole K-line of each
    generator (scaling by sqrt(d) is recovered through polarization with
    (1 + sqrt(d)) w), so no explicit scalar closure is needed.
    """
    sd = QuadExt.of(0, 1)
    one_plus_sd = QuadExt.of(1, 1)
    vecs = []
    for i in range(F.dim):
        e = F.basis_vec(i)
        vecs.append(e)
        vecs.append(F.scale_vec(one_plus_sd, e))
    for i, j in itertools.combinations(range(F.dim), 2):
        ei, ej = F.basis_vec(i), F.basis_vec(j)
        for coef in (QuadExt.of(1), QuadExt.of(-1), sd, one_plus_sd):
            vecs.append(F.add_vec(ei, F.scale_vec(coef, ej)))
            vecs.append(
                F.add_vec(F.scale_vec(one_plus_sd, ei), F.scale_vec(coef, ej))
            )
    return [_pure_tensor(F, w) for w in vecs]


def psi_value(F: InvolutiveField, v, u) -> list[Fraction]:
    """The half-exterior pairing psi(v (x) u) = v+ ^ u+ + v- ^ u-.

    Values live in the K-exterior square of V; coordinates are rational pairs
    over the wedge basis e_i ^ e_j, i < j.  psi kills additive combinations
    of the tensors w (x) sigma(w), which is its well-definedness certificate.
    """
    out: list[Fraction] = []
    vp, vm = F.plus_part(v), F.minus_part(v)
    up, um = F.plus_part(u), F.minus_part(u)
    for i, j in itertools.combinations(range(F.dim), 2):
        coeff = (
            vp[i].mul(up[j], F.d)
            - vp[j].mul(up[i], F.d)
            + vm[i].mul(um[j], F.d)
            - vm[j].mul(um[i], F.d)
        )
        out.extend((coeff.u, coeff.v))
    return out


def involution_exactness_report(
    F: InvolutiveField, trials: int = 20, seed: int = 0
) -> dict:
    """Brute-force check of the exactness statement for (F, V, v0).

    * scalar line: alpha * v0 (x) v0 lies in D for `trials` random alpha;
    * kernel: { v : v (x) v0 in D } computed by rational elimination equals
      exactly the K-line through v0;
    * psi kills `trials` random additive combinations of pure tensors;
    * the plus/minus decomposition identities hold on random vectors.
    """
    import random

    if F.dim < 1:
        raise ValueError("degenerate space")
    rng = random.Random(seed)
    d_rows = _diagonal_span_rows(F)
    rel_rank, pivots, rref_rows = linalg.rref(d_rows)

    def in_d(vec) -> bool:
        return all(
            c == 0 for c in linalg.reduce_mod_rowspace(vec, rref_rows, pivots)
        )

    scalar_ok = all(
        in_d(_tensor_coords(F, F.scale_vec(F.random_scalar(rng), F.v0), F.v0))
        for _ in range(trials)
    )

    # kernel of v -> v (x) v0 mod D over the rationals (dim_Q V = 2 dim)
    qdim = 2 * F.dim
    images = []
    for idx in range(qdim):
        coords = [QuadExt.of(0)] * F.dim
        coords[idx // 2] = QuadExt.of(1) if idx % 2 == 0 else QuadExt.of(0, 1)
        images.append(
            linalg.reduce_mod_rowspace(
                _tensor_coords(F, tuple(coords), F.v0), rref_rows, pivots
            )
        )
    # kernel vectors c with sum_idx c_idx * images[idx] = 0
    kernel = linalg.field_nullspace(list(map(list, zip(*images))))
    expected = [
        [Fraction(1)] + [Fraction(0)] * (qdim - 1),
        [Fraction(0), Fraction(1)] + [Fraction(0)] * (qdim - 2),
    ]
    kernel_ok = linalg.rref(kernel)[2] == linalg.rref(expected)[2] if kernel else False

    psi_ok = True
    for _ in range(trials):
        total = None
        terms = []
        for _ in range(rng.randint(1, 4)):
            w = F.random_vec(rng)
            c = Fraction(rng.randint(-3, 3))
            terms.append((c, w))
        vals = [
            [c * x for x in psi_value(F, w, F.sigma_v(w))] for c, w in terms
        ]
        total = [sum(col) for col in zip(*vals)]
        psi_ok &= all(x == 0 for x in total)

    decomp_ok = True
    for _ in range(trials):
        v = F.random_vec(rng)
        vp, vm = F.plus_part(v), F.minus_part(v)
        decomp_ok &= F.add_vec(vp, vm) == v
        decomp_ok &= F.sigma_v(vp) == vp
        decomp_ok &= F.sigma_v(vm) == tuple(-c for c in vm)

    return {
        "field": f"Q(sqrt({F.d}))",
        "dim": F.dim,
        "scalar_line_in_D": bool(scalar_ok),
        "kernel_is_K_v0": bool(kernel_ok),
        "psi_kills_D": bool(psi_ok),
        "plus_minus_split": bool(decomp_ok),
        "ok": bool(scalar_ok and kernel_ok and psi_ok and decomp_ok),
    }


def check_involution_exactness(F: InvolutiveField, trials: int = 20, seed: int = 0) -> bool:
    return involution_exactness_report(F, trials, seed)["ok"]
