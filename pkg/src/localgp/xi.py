"""Families of norm-one elements in quadratic algebras over Q_p.

A family xi is a list of entries (F_i, y_i) where F_i is either a quadratic
field Q_p(sqrt(delta_i)) or the split algebra Q_p + Q_p, and y_i has norm 1.
All coordinates are rational, so every computation is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import DomainError
from .padic import (
    Rational,
    SquareClass,
    canonical_non_norm,
    one,
    sgn_ext,
    square_class,
)


@dataclass(frozen=True)
class QuadAlgebraElement:
    """x + y sqrt(delta) when ``delta`` is set, else the pair (x, y) in F + F."""

    delta: Fraction | None
    x: Fraction
    y: Fraction

    @classmethod
    def field_elt(cls, delta: Rational, x: Rational, y: Rational = 0) -> QuadAlgebraElement:
        return cls(Fraction(delta), Fraction(x), Fraction(y))

    @classmethod
    def split_elt(cls, x: Rational, y: Rational) -> QuadAlgebraElement:
        return cls(None, Fraction(x), Fraction(y))

    @property
    def is_split(self) -> bool:
        return self.delta is None

    def scalar(self, c: Rational) -> QuadAlgebraElement:
        """The image of the rational c in the same algebra."""
        c = Fraction(c)
        if self.is_split:
            return QuadAlgebraElement(None, c, c)
        return QuadAlgebraElement(self.delta, c, Fraction(0))

    def _coerce(self, other: QuadAlgebraElement | Rational) -> QuadAlgebraElement:
        if isinstance(other, QuadAlgebraElement):
            if other.delta != self.delta:
                raise DomainError("arithmetic between different quadratic algebras")
            return other
        return self.scalar(other)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadAlgebraElement(self.delta, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return QuadAlgebraElement(self.delta, -self.x, -self.y)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if self.is_split:
            return QuadAlgebraElement(None, self.x * o.x, self.y * o.y)
        return QuadAlgebraElement(
            self.delta,
            self.x * o.x + self.delta * self.y * o.y,
            self.x * o.y + self.y * o.x,
        )

    __rmul__ = __mul__

    def conj(self) -> QuadAlgebraElement:
        """The non-trivial automorphism tau."""
        if self.is_split:
            return QuadAlgebraElement(None, self.y, self.x)
        return QuadAlgebraElement(self.delta, self.x, -self.y)

    def norm(self) -> Fraction:
        if self.is_split:
            return self.x * self.y
        return self.x * self.x - self.delta * self.y * self.y

    def trace(self) -> Fraction:
        if self.is_split:
            return self.x + self.y
        return 2 * self.x

    def inverse(self) -> QuadAlgebraElement:
        n = self.norm()
        if n == 0:
            raise DomainError("element is not invertible")
        c = self.conj()
        return QuadAlgebraElement(self.delta, c.x / n, c.y / n)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> QuadAlgebraElement:
        base = self if k >= 0 else self.inverse()
        out = self.scalar(1)
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_rational(self) -> bool:
        """Fixed by tau, i.e. lies in the base field."""
        return self.x == self.y if self.is_split else self.y == 0

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise AssertionError(f"{self} is not tau-invariant")
        return self.x

    def to_json(self) -> list[str]:
        return [str(self.x), str(self.y)]

    def __str__(self) -> str:
        if self.is_split:
            return f"({self.x}, {self.y})"
        return f"{self.x} + {self.y}*sqrt({self.delta})"


@dataclass(frozen=True)
class XiEntry:
    """One index i: the algebra (radicand or split) and the norm-one y_i."""

    y: QuadAlgebraElement

    @property
    def delta(self) -> Fraction | None:
        return self.y.delta

    @property
    def is_split(self) -> bool:
        return self.y.is_split

    def delta_class(self, p: int) -> SquareClass:
        return one(p) if self.is_split else square_class(self.delta, p)


def field_entry(delta: Rational, x: Rational, y: Rational) -> XiEntry:
    return XiEntry(QuadAlgebraElement.field_elt(delta, x, y))


def split_entry(t: Rational) -> XiEntry:
    t = Fraction(t)
    return XiEntry(QuadAlgebraElement.split_elt(t, 1 / t))


def norm_one_from(delta: Rational, a: Rational, b: Rational) -> XiEntry:
    """The entry y = g / tau(g) for g = a + b sqrt(delta) (Hilbert 90)."""
    g = QuadAlgebraElement.field_elt(delta, a, b)
    return XiEntry(g / g.conj())


@dataclass(frozen=True)
class XiFamily:
    p: int
    entries: tuple[XiEntry, ...] = ()

    def __post_init__(self) -> None:
        for e in self.entries:
            if e.y.norm() != 1:
                raise DomainError(f"y = {e.y} does not have norm 1")
            if not e.is_split and e.delta_class(self.p).is_trivial():
                raise DomainError(
                    f"Q_{self.p}(sqrt({e.delta})) is split; use a split entry instead"
                )

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def d(self) -> int:
        return 2 * len(self.entries)

    @property
    def delta(self) -> SquareClass:
        acc = one(self.p)
        for e in self.entries:
            acc = acc * e.delta_class(self.p)
        return acc

    @property
    def istar(self) -> tuple[int, ...]:
        """Indices of the field entries."""
        return tuple(i for i, e in enumerate(self.entries) if not e.is_split)

    def delta_i(self, i: int) -> SquareClass:
        return self.entries[i].delta_class(self.p)

    def __add__(self, other: XiFamily) -> XiFamily:
        """Disjoint union; the entries of ``other`` follow those of ``self``."""
        if other.p != self.p:
            raise DomainError("union of families over different primes")
        return XiFamily(self.p, self.entries + other.entries)

    def is_regular(self) -> bool:
        return is_regular(self)

    def to_json(self) -> list[dict]:
        out = []
        for e in self.entries:
            kind = "split" if e.is_split else {"field": str(e.delta)}
            y = e.y
            out.append({
                "kind": kind,
                "y": [y.x.numerator, y.x.denominator, y.y.numerator, y.y.denominator],
            })
        return out


def d_xi(xi: XiFamily) -> int:
    return xi.d


def delta_xi(xi: XiFamily) -> SquareClass:
    return xi.delta


def _isomorphic_entries(a: XiEntry, b: XiEntry, p: int) -> bool:
    """Some algebra isomorphism carries y_a to y_b."""
    if a.is_split != b.is_split:
        return False
    if not a.is_split and a.delta_class(p) != b.delta_class(p):
        return False
    # norm-one elements of one algebra with equal trace are y or tau(y)
    return a.y.trace() == b.y.trace()


def is_regular(xi: XiFamily) -> bool:
    """True iff the identity is the only automorphism of the family."""
    for e in xi.entries:
        if e.y.is_rational() and e.y.rational() in (1, -1):
            return False
    for a, b in itertools.combinations(xi.entries, 2):
        if _isomorphic_entries(a, b, xi.p):
            return False
    return True


# -- C(xi): sign vectors on the field entries ------------------------------


@dataclass(frozen=True)
class CosetElement:
    """Signs sgn(c_i) for i in I*, stored as sorted (index, sign) pairs."""

    signs: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_map(cls, m: Mapping[int, int]) -> CosetElement:
        return cls(tuple(sorted((int(i), int(s)) for i, s in m.items())))

    def as_map(self) -> dict[int, int]:
        return dict(self.signs)

    def product(self) -> int:
        out = 1
        for _, s in self.signs:
            out *= s
        return out

    def __mul__(self, other: CosetElement) -> CosetElement:
        a, b = self.as_map(), other.as_map()
        if a.keys() != b.keys():
            raise DomainError("sign vectors over different index sets")
        return CosetElement.from_map({i: a[i] * b[i] for i in a})

    def reps(self, xi: XiFamily) -> dict[int, Fraction]:
        """Rational representatives: 1 for sign +1, the canonical non-norm for -1."""
        out = {}
        for i, s in self.signs:
            out[i] = Fraction(1) if s == 1 else Fraction(canonical_non_norm(xi.delta_i(i)).rep)
        return out

    def to_json(self) -> dict[str, int]:
        return {str(i): s for i, s in self.signs}


CLike = Union[CosetElement, Mapping[int, Rational]]


def coset_reps(c: CLike, xi: XiFamily) -> dict[int, Fraction]:
    """Representatives c_i for every entry (1 on split entries)."""
    if isinstance(c, CosetElement):
        given = c.reps(xi)
    else:
        given = {int(i): Fraction(v) for i, v in c.items()}
    missing = set(xi.istar) - given.keys()
    if missing:
        raise DomainError(f"c is missing indices {sorted(missing)}")
    return {i: given.get(i, Fraction(1)) for i in range(len(xi))}


def coset_signs(c: CLike, xi: XiFamily) -> CosetElement:
    reps = coset_reps(c, xi)
    return CosetElement.from_map({i: sgn_ext(xi.delta_i(i), reps[i]) for i in xi.istar})


def enumerate_c(xi: XiFamily) -> list[CosetElement]:
    """All of C(xi) = {+1, -1}^{I*}, in lexicographic order (+1 first)."""
    idx = xi.istar
    return [
        CosetElement(tuple(zip(idx, signs)))
        for signs in itertools.product((1, -1), repeat=len(idx))
    ]


def c_one(xi: XiFamily) -> list[CosetElement]:
    """The even-product subgroup C(xi)^1."""
    return [c for c in enumerate_c(xi) if c.product() == 1]


def c_minus(xi: XiFamily) -> list[CosetElement]:
    return [c for c in enumerate_c(xi) if c.product() == -1]


# -- Gamma(y): solutions of gamma / tau(gamma) = y -------------------------


def solve_gamma(entry: XiEntry, p: int) -> tuple[QuadAlgebraElement, QuadAlgebraElement]:
    """Representatives of the two norm cosets of Gamma(y) in a field entry."""
    if entry.is_split:
        raise DomainError("solve_gamma needs a field entry")
    y = entry.y
    if y == y.scalar(-1):
        g0 = QuadAlgebraElement(y.delta, Fraction(0), Fraction(1))
    else:
        g0 = (y + 1) * Fraction(1, 2)
    n = canonical_non_norm(entry.delta_class(p)).rep
    return g0, g0 * n


def gamma_split(entry: XiEntry) -> QuadAlgebraElement:
    """The unique class for a split entry y = (t, 1/t): gamma = (t, 1)."""
    return QuadAlgebraElement.split_elt(entry.y.x, 1)


@dataclass(frozen=True)
class GammaElement:
    """gamma_i for i in I*, and gamma_D (odd twisted case) when present."""

    gammas: tuple[tuple[int, QuadAlgebraElement], ...]
    gamma_d: SquareClass | None = None

    def as_map(self) -> dict[int, QuadAlgebraElement]:
        return dict(self.gammas)

    @property
    def is_imp(self) -> bool:
        return self.gamma_d is not None

    def tags(self, xi: XiFamily) -> dict[int, int]:
        """0 for the canonical norm coset, 1 for the other one."""
        out = {}
        for i, g in self.gammas:
            g0, _ = solve_gamma(xi.entries[i], xi.p)
            out[i] = 0 if sgn_ext(xi.delta_i(i), (g / g0).rational()) == 1 else 1
        return out

    def check(self, xi: XiFamily) -> None:
        got = self.as_map()
        if set(got) != set(xi.istar):
            raise DomainError("gamma must be given exactly on the field entries")
        for i, g in got.items():
            if g / g.conj() != xi.entries[i].y:
                raise DomainError(f"gamma_{i} / tau(gamma_{i}) != y_{i}")


def enumerate_gamma(xi: XiFamily, gamma_d: SquareClass | None = None) -> list[GammaElement]:
    """One representative per element of Gamma_pair (or Gamma_imp with fixed gamma_D)."""
    sols = [solve_gamma(xi.entries[i], xi.p) for i in xi.istar]
    out = []
    for choice in itertools.product((0, 1), repeat=len(sols)):
        out.append(GammaElement(
            tuple((i, s[b]) for i, s, b in zip(xi.istar, sols, choice)), gamma_d
        ))
    return out


# -- exact arithmetic in Q(sqrt(d_1), ..., sqrt(d_m)) ---------------------


@dataclass(frozen=True)
class MultiQuad:
    """Element of Q[s_1..s_m]/(s_k^2 - d_k); keys are bitmasks of the s_k."""

    radicands: tuple[Fraction, ...]
    coeffs: tuple[tuple[int, Fraction], ...] = field(default=())

    @classmethod
    def const(cls, radicands: Sequence[Fraction], c: Rational) -> MultiQuad:
        return cls(tuple(radicands), ((0, Fraction(c)),) if c else ())

    @classmethod
    def embed(cls, radicands: Sequence[Fraction], slot: int, a: Rational, b: Rational) -> MultiQuad:
        """a + b s_slot."""
        terms = {0: Fraction(a), 1 << slot: Fraction(b)}
        return cls(tuple(radicands), tuple((k, v) for k, v in sorted(terms.items()) if v))

    def _dict(self) -> dict[int, Fraction]:
        return dict(self.coeffs)

    @staticmethod
    def _pack(radicands, d: dict[int, Fraction]) -> MultiQuad:
        return MultiQuad(radicands, tuple((k, v) for k, v in sorted(d.items()) if v))

    def __add__(self, other: MultiQuad) -> MultiQuad:
        d = self._dict()
        for k, v in other.coeffs:
            d[k] = d.get(k, Fraction(0)) + v
        return self._pack(self.radicands, d)

    def __neg__(self) -> MultiQuad:
        return MultiQuad(self.radicands, tuple((k, -v) for k, v in self.coeffs))

    def __sub__(self, other: MultiQuad) -> MultiQuad:
        return self + (-other)

    def __mul__(self, other: MultiQuad) -> MultiQuad:
        out: dict[int, Fraction] = {}
        for k1, v1 in self.coeffs:
            for k2, v2 in other.coeffs:
                c = v1 * v2
                both = k1 & k2
                slot = 0
                while both:
                    if both & 1:
                        c *= self.radicands[slot]
                    both >>= 1
                    slot += 1
                k = k1 ^ k2
                out[k] = out.get(k, Fraction(0)) + c
        return self._pack(self.radicands, out)

    def is_rational(self) -> bool:
        return all(k == 0 for k, _ in self.coeffs)

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise AssertionError("multiquadratic product is not rational")
        return self._dict().get(0, Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs


def compositum_product(values: Iterable[MultiQuad]) -> Fraction:
    """Exact product of a Galois-stable multiset; the result must be rational."""
    acc = None
    for v in values:
        acc = v if acc is None else acc * v
    if acc is None:
        return Fraction(1)
    return acc.rational()


def eigenvalues(xi: XiFamily) -> list[MultiQuad]:
    """The multiset {y_i, tau(y_i)} embedded in the common multiquadratic algebra."""
    rad = tuple(Fraction(e.delta) if not e.is_split else Fraction(1) for e in xi.entries)
    out = []
    for slot, e in enumerate(xi.entries):
        y = e.y
        if e.is_split:
            out.append(MultiQuad.const(rad, y.x))
            out.append(MultiQuad.const(rad, y.y))
        else:
            out.append(MultiQuad.embed(rad, slot, y.x, y.y))
            out.append(MultiQuad.embed(rad, slot, y.x, -y.y))
    return out
