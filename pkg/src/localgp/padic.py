"""Square classes, Hilbert symbols and quadratic sign characters over Q_p."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Union

from .errors import DomainError

Rational = Union[int, Fraction]


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise DomainError(f"p must be a prime integer, got {p!r}")
    return p


def valuation(x: Rational, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise DomainError("valuation of zero")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def unit_part(x: Rational, p: int) -> Fraction:
    x = Fraction(x)
    return x / Fraction(p) ** valuation(x, p)


@lru_cache(maxsize=None)
def least_nonresidue(p: int) -> int:
    for u in range(2, p):
        if pow(u, (p - 1) // 2, p) == p - 1:
            return u
    raise DomainError(f"no non-residue mod {p}")


def _unit_class(num: int, p: int) -> int:
    """Canonical unit representative of the unit num (coprime to p)."""
    if p == 2:
        return num % 8
    if pow(num % p, (p - 1) // 2, p) == 1:
        return 1
    return least_nonresidue(p)


@dataclass(frozen=True, order=True)
class SquareClass:
    """An element of Q_p^x / (Q_p^x)^2 in canonical form.

    ``rep`` is the integer unit_class * p**val_parity, which lies in the class.
    """

    p: int
    val_parity: int
    unit_class: int

    @property
    def rep(self) -> int:
        return self.unit_class * self.p**self.val_parity

    def is_trivial(self) -> bool:
        return self.val_parity == 0 and self.unit_class == 1

    def __mul__(self, other: SquareClass | Rational) -> SquareClass:
        if isinstance(other, SquareClass):
            _same_prime(self, other)
            return square_class(self.rep * other.rep, self.p)
        return square_class(self.rep * Fraction(other), self.p)

    __rmul__ = __mul__

    def __neg__(self) -> SquareClass:
        return square_class(-self.rep, self.p)

    def __str__(self) -> str:
        return str(self.rep)

    def sort_key(self) -> tuple[int, int]:
        return (self.val_parity, self.unit_class)


def _same_prime(a: SquareClass, b: SquareClass) -> None:
    if a.p != b.p:
        raise DomainError(f"square classes over different primes {a.p} and {b.p}")


def square_class(x: Rational | SquareClass, p: int) -> SquareClass:
    """Reduce a nonzero rational to its canonical square class in Q_p."""
    if isinstance(x, SquareClass):
        if x.p != p:
            raise DomainError(f"square class over {x.p} used at p={p}")
        return x
    x = Fraction(x)
    if x == 0:
        raise DomainError("zero has no square class")
    v = valuation(x, p)
    u = unit_part(x, p)
    # a/b and a*b differ by the square b^2
    return SquareClass(p, v % 2, _unit_class(u.numerator * u.denominator, p))


def all_square_classes(p: int) -> list[SquareClass]:
    """All 4 (odd p) or 8 (p = 2) classes, trivial class first."""
    units = [1, 3, 5, 7] if p == 2 else [1, least_nonresidue(p)]
    return [SquareClass(p, e, u) for e in (0, 1) for u in units]


def one(p: int) -> SquareClass:
    return SquareClass(p, 0, 1)


def hilbert(a: SquareClass | Rational, b: SquareClass | Rational, p: int | None = None) -> int:
    """The quadratic Hilbert symbol (a, b) over Q_p, by the closed formulas."""
    if p is None:
        if isinstance(a, SquareClass):
            p = a.p
        elif isinstance(b, SquareClass):
            p = b.p
        else:
            raise DomainError("prime required when both arguments are rationals")
    a = square_class(a, p)
    b = square_class(b, p)
    _same_prime(a, b)
    alpha, u = a.val_parity, a.unit_class
    beta, v = b.val_parity, b.unit_class
    if p == 2:
        def eps(w: int) -> int:
            return ((w - 1) // 2) % 2

        def omega(w: int) -> int:
            return ((w * w - 1) // 8) % 2

        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta and u != 1:
        sign = -sign
    if alpha and v != 1:
        sign = -sign
    return sign


def sgn_ext(delta: SquareClass, x: SquareClass | Rational) -> int:
    """Sign character of Q_p(sqrt(delta))/Q_p: +1 exactly on norms."""
    if delta.is_trivial():
        raise DomainError("sgn_ext needs a non-trivial delta (a field extension)")
    return hilbert(delta, square_class(x, delta.p))


@lru_cache(maxsize=None)
def canonical_non_norm(delta: SquareClass) -> SquareClass:
    """First square class (in canonical order) that is not a norm from Q_p(sqrt(delta))."""
    for c in all_square_classes(delta.p):
        if sgn_ext(delta, c) == -1:
            return c
    raise AssertionError("non-degeneracy of the Hilbert symbol failed")


def norm_classes(delta: SquareClass) -> list[SquareClass]:
    return [c for c in all_square_classes(delta.p) if sgn_ext(delta, c) == 1]


@dataclass(frozen=True)
class QuadExtension:
    """The field Q_p(sqrt(delta)) for a non-trivial class delta."""

    delta: SquareClass

    def __post_init__(self) -> None:
        if self.delta.is_trivial():
            raise DomainError("trivial delta gives the split algebra, not a field")

    @property
    def p(self) -> int:
        return self.delta.p

    def sgn(self, x: SquareClass | Rational) -> int:
        return sgn_ext(self.delta, x)

    def is_norm(self, x: SquareClass | Rational) -> bool:
        return self.sgn(x) == 1

    def non_norm(self) -> SquareClass:
        return canonical_non_norm(self.delta)


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse '3', '-2/5' or an int into a Fraction."""
    if isinstance(text, bool):
        raise DomainError("booleans are not rationals")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, str):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational: {text!r}") from exc
    raise DomainError(f"not a rational: {text!r}")


def iter_pairs(p: int) -> Iterator[tuple[SquareClass, SquareClass]]:
    classes = all_square_classes(p)
    for a in classes:
        for b in classes:
            yield a, b
