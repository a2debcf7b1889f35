"""Quadratic spaces over Q_p stored as diagonal forms.

Isomorphism classes are determined by (dim, discriminant, Hasse invariant).
Witt indices are read off from the classification of anisotropic kernels,
which have dimension at most 4 over a p-adic field.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DomainError, ValidationError
from .padic import (
    Rational,
    SquareClass,
    all_square_classes,
    hilbert,
    one,
    sgn_ext,
    square_class,
)


def _prod(classes: Iterable[SquareClass], p: int) -> SquareClass:
    acc = one(p)
    for c in classes:
        acc = acc * c
    return acc


def _sign_power(d: int, p: int) -> SquareClass:
    return square_class((-1) ** (d // 2), p)


@dataclass(frozen=True)
class Invariants:
    dim: int
    det: SquareClass
    disc: SquareClass
    hasse: int
    witt_index: int


def _is_isotropic(d: int, det: SquareClass, hasse: int) -> bool:
    p = det.p
    if d <= 1:
        return False
    if d == 2:
        return (-det).is_trivial()
    if d == 3:
        return hilbert(-1, -det, p) == hasse
    if d == 4:
        return not det.is_trivial() or hasse == hilbert(-1, -1, p)
    return True


def witt_index_from_invariants(d: int, det: SquareClass, hasse: int) -> int:
    """Number of hyperbolic planes split off a form with the given invariants."""
    w = 0
    while _is_isotropic(d, det, hasse):
        # q = H + q1: det(q1) = -det(q), hasse(q1) = hasse(q) * (-1, det(q1))
        det = -det
        hasse = hasse * hilbert(-1, det)
        d -= 2
        w += 1
    return w


def realizable(d: int, det: SquareClass, hasse: int) -> bool:
    """Whether some form of this dimension has the given det and Hasse invariant."""
    if d == 0:
        return det.is_trivial() and hasse == 1
    if d == 1:
        return hasse == 1
    if d == 2 and (-det).is_trivial():
        return hasse == 1
    return True


@dataclass(frozen=True)
class QuadraticSpace:
    """A diagonal quadratic form <a_1, ..., a_d> over Q_p."""

    p: int
    diag: tuple[SquareClass, ...] = ()

    def __post_init__(self) -> None:
        for a in self.diag:
            if a.p != self.p:
                raise DomainError("diagonal entry over the wrong prime")

    @classmethod
    def from_rationals(cls, entries: Sequence[Rational | SquareClass], p: int) -> QuadraticSpace:
        return cls(p, tuple(square_class(a, p) for a in entries))

    @classmethod
    def from_gram(cls, gram: Sequence[Sequence[Rational]], p: int) -> QuadraticSpace:
        return cls.from_rationals(diagonalize(gram), p)

    @property
    def dim(self) -> int:
        return len(self.diag)

    @cached_property
    def det(self) -> SquareClass:
        return _prod(self.diag, self.p)

    @cached_property
    def disc(self) -> SquareClass:
        return _sign_power(self.dim, self.p) * self.det

    @cached_property
    def hasse(self) -> int:
        h = 1
        for a, b in itertools.combinations(self.diag, 2):
            h *= hilbert(a, b)
        return h

    @cached_property
    def witt_index(self) -> int:
        return witt_index_from_invariants(self.dim, self.det, self.hasse)

    def invariants(self) -> Invariants:
        return Invariants(self.dim, self.det, self.disc, self.hasse, self.witt_index)

    def key(self) -> tuple[int, SquareClass, int]:
        return (self.dim, self.disc, self.hasse)

    def __add__(self, other: QuadraticSpace) -> QuadraticSpace:
        if other.p != self.p:
            raise DomainError("orthogonal sum over different primes")
        return QuadraticSpace(self.p, self.diag + other.diag)

    def scale(self, alpha: SquareClass | Rational) -> QuadraticSpace:
        alpha = square_class(alpha, self.p)
        return QuadraticSpace(self.p, tuple(alpha * a for a in self.diag))

    def is_isotropic(self) -> bool:
        return self.witt_index > 0

    def is_split(self) -> bool:
        """SO(q) split: maximal Witt index."""
        return self.witt_index == self.dim // 2

    def is_quasi_split(self) -> bool:
        if self.dim % 2:
            return self.is_split()
        return self.witt_index >= self.dim // 2 - 1

    def to_json(self) -> dict:
        return {
            "diag": [str(a) for a in self.diag],
            "dim": self.dim,
            "disc": str(self.disc),
            "hasse": self.hasse,
            "witt_index": self.witt_index,
        }

    def __str__(self) -> str:
        return "<" + ", ".join(str(a) for a in self.diag) + ">"


def invariants(diag: Sequence[Rational | SquareClass], p: int) -> Invariants:
    return QuadraticSpace.from_rationals(diag, p).invariants()


def is_isomorphic(q1: QuadraticSpace, q2: QuadraticSpace) -> bool:
    if q1.p != q2.p:
        raise DomainError("comparing forms over different primes")
    return q1.key() == q2.key()


def diagonalize(gram: Sequence[Sequence[Rational]]) -> list[Fraction]:
    """Diagonalize a nondegenerate symmetric rational Gram matrix by congruence."""
    m = [[Fraction(x) for x in row] for row in gram]
    n = len(m)
    if any(len(row) != n for row in m):
        raise DomainError("Gram matrix must be square")
    if any(m[i][j] != m[j][i] for i in range(n) for j in range(n)):
        raise DomainError("Gram matrix must be symmetric")

    def add(dst: int, src: int, f: Fraction) -> None:
        # basis change e_dst <- e_dst + f e_src, applied on both sides
        for c in range(n):
            m[dst][c] += f * m[src][c]
        for r in range(n):
            m[r][dst] += f * m[r][src]

    out = []
    for k in range(n):
        if m[k][k] == 0:
            j = next((j for j in range(k + 1, n) if m[j][j] != 0), None)
            if j is not None:
                add(k, j, Fraction(1))
                if m[k][k] == 0:
                    add(k, j, Fraction(1))
            else:
                j = next((j for j in range(k + 1, n) if m[k][j] != 0), None)
                if j is None:
                    raise DomainError("degenerate Gram matrix")
                add(k, j, Fraction(1))
        a = m[k][k]
        for r in range(k + 1, n):
            if m[r][k]:
                add(r, k, -m[r][k] / a)
        out.append(a)
    return out


def hyperbolic(r: int, p: int) -> QuadraticSpace:
    return QuadraticSpace.from_rationals([1, -1] * r, p)


def zero_space(p: int) -> QuadraticSpace:
    return QuadraticSpace(p, ())


def realize(d: int, det: SquareClass, hasse: int) -> QuadraticSpace:
    """Canonical diagonal representative with the given invariants."""
    p = det.p
    if not realizable(d, det, hasse):
        raise DomainError(f"no form with dim={d}, det={det}, hasse={hasse}")
    if d == 0:
        return zero_space(p)
    k = min(d, 3)
    head = (one(p),) * (d - k)
    classes = all_square_classes(p)
    for tail in itertools.product(classes, repeat=k):
        q = QuadraticSpace(p, head + tail)
        if q.det == det and q.hasse == hasse:
            return q
    raise AssertionError("realizable invariants without a representative")


def classify(d: int, delta: SquareClass | Rational, p: int) -> list[QuadraticSpace]:
    """One canonical representative per isomorphism class of dim d and disc delta."""
    if d < 0:
        raise DomainError("dimension must be non-negative")
    delta = square_class(delta, p)
    det = _sign_power(d, p) * delta
    return [realize(d, det, h) for h in (1, -1) if realizable(d, det, h)]


def other_class(q: QuadraticSpace) -> QuadraticSpace | None:
    """The form with the same (dim, disc) and opposite Hasse invariant, if any."""
    for c in classify(q.dim, q.disc, q.p):
        if not is_isomorphic(c, q):
            return c
    return None


def complement(ambient: QuadraticSpace, w: QuadraticSpace) -> QuadraticSpace | None:
    """The form V1 with W + V1 isomorphic to the ambient space, if it exists."""
    d1 = ambient.dim - w.dim
    if d1 < 0:
        return None
    det1 = ambient.det * w.det
    # hasse(W + V1) = hasse(W) hasse(V1) (det W, det V1)
    h1 = ambient.hasse * w.hasse * hilbert(w.det, det1)
    if not realizable(d1, det1, h1):
        return None
    return realize(d1, det1, h1)


def so_is_split_odd(q: QuadraticSpace) -> bool:
    if q.dim % 2 == 0:
        raise DomainError("so_is_split_odd needs an odd-dimensional space")
    return q.witt_index == (q.dim - 1) // 2


def mu(q_prime: QuadraticSpace) -> int:
    return 1 if so_is_split_odd(q_prime) else -1


def _require_even(q: QuadraticSpace) -> None:
    if q.dim % 2:
        raise DomainError("an even-dimensional space is required")


def extract_eta(q: QuadraticSpace) -> SquareClass:
    """A class eta with q = (hyperbolic planes) + <2 eta, -2 eta delta>."""
    _require_even(q)
    delta = q.disc
    if delta.is_trivial() or q.dim == 0:
        raise DomainError("extract_eta needs a non-trivial discriminant")
    h = hyperbolic(q.dim // 2 - 1, q.p)
    for eta in all_square_classes(q.p):
        cand = h + QuadraticSpace.from_rationals([2 * eta, -2 * eta * delta], q.p)
        if is_isomorphic(cand, q):
            return eta
    raise AssertionError("no eta found for an even form with non-trivial discriminant")


def qd_condition(q: QuadraticSpace, nu0: SquareClass | Rational) -> bool:
    """Whether SO(q + <-2 nu0>) is split."""
    _require_even(q)
    nu0 = square_class(nu0, q.p)
    if q.disc.is_trivial():
        return q.witt_index == q.dim // 2
    return sgn_ext(q.disc, extract_eta(q) * nu0) == 1


def nilpotent_param_set(q: QuadraticSpace) -> list[SquareClass]:
    """Square classes indexing the regular nilpotent orbits of SO(q)."""
    _require_even(q)
    if q.disc.is_trivial():
        if q.witt_index != q.dim // 2:
            raise DomainError("(QD) fails: q is not hyperbolic")
        return all_square_classes(q.p)
    eta = extract_eta(q)
    return sorted(
        {eta * c for c in all_square_classes(q.p) if sgn_ext(q.disc, c) == 1},
        key=SquareClass.sort_key,
    )


def build_z_form(r: int, nu: SquareClass | Rational, p: int) -> QuadraticSpace:
    """The form 2 nu x^2 plus r hyperbolic planes."""
    if r < 0:
        raise DomainError("r must be non-negative")
    nu = square_class(nu, p)
    return QuadraticSpace.from_rationals([2 * nu], p) + hyperbolic(r, p)


@dataclass(frozen=True)
class GpPairConfig:
    q: QuadraticSpace
    q_prime: QuadraticSpace
    nu0: SquareClass
    r: int

    @property
    def d(self) -> int:
        return self.q.dim

    @property
    def d_prime(self) -> int:
        return self.q_prime.dim


def _mismatch(a: QuadraticSpace, b: QuadraticSpace) -> str:
    if a.dim != b.dim:
        return "dim"
    if a.disc != b.disc:
        return "disc"
    return "hasse"


def validate_gp_pair(q: QuadraticSpace, q_prime: QuadraticSpace, nu0: SquareClass | Rational) -> GpPairConfig:
    """Check that the even space q and odd space q' differ by the Z-form."""
    if q.p != q_prime.p:
        raise ValidationError("q and q_prime live over different primes", "q_prime")
    if q.dim % 2:
        raise ValidationError("q must have even dimension", "q")
    if q_prime.dim % 2 == 0:
        raise ValidationError("q_prime must have odd dimension", "q_prime")
    p = q.p
    nu0 = square_class(nu0, p)
    r = (abs(q.dim - q_prime.dim) - 1) // 2
    if q.dim < q_prime.dim:
        target, built = q_prime, q + build_z_form(r, -nu0, p)
        field = "q_prime"
    else:
        target, built = q, q_prime + build_z_form(r, nu0, p)
        field = "q"
    if not is_isomorphic(target, built):
        raise ValidationError(
            f"incompatible GP pair: {_mismatch(target, built)} of {field} "
            f"differs from the required orthogonal sum",
            field,
        )
    return GpPairConfig(q, q_prime, nu0, r)


def dset(q: QuadraticSpace, q_prime: QuadraticSpace) -> list[tuple[int, SquareClass]]:
    """Admissible (dimension, discriminant) pairs for the spaces W."""
    p = q.p
    both_qs = q.is_quasi_split() and q_prime.is_quasi_split()
    lo = min(q.dim, q_prime.dim)
    out = []
    for dd in range(0, lo + 1, 2):
        for delta in all_square_classes(p):
            if not both_qs and dd < 2:
                continue
            if dd == 0 and not delta.is_trivial():
                continue
            if dd == lo and delta != q.disc:
                continue
            if dd == 2 and delta.is_trivial():
                continue
            out.append((dd, delta))
    return out


def _passes_h(
    w: QuadraticSpace, ambient: QuadraticSpace, z: QuadraticSpace
) -> bool:
    v1 = complement(ambient, w)
    if v1 is None:
        return False
    return v1.is_quasi_split() and (v1 + z).is_quasi_split()


def w_space_candidates(
    q: QuadraticSpace, q_prime: QuadraticSpace, dd: int, delta: SquareClass, nu0: SquareClass | Rational
) -> list[QuadraticSpace]:
    """All classes of dim dd and disc delta satisfying the splitting condition."""
    cfg = validate_gp_pair(q, q_prime, nu0)
    p = q.p
    if q.dim < q_prime.dim:
        ambient, z = q, build_z_form(cfg.r, -cfg.nu0, p)
    else:
        ambient, z = q_prime, build_z_form(cfg.r, cfg.nu0, p)
    return [w for w in classify(dd, delta, p) if _passes_h(w, ambient, z)]


def w_space(
    q: QuadraticSpace, q_prime: QuadraticSpace, dd: int, delta: SquareClass | Rational, nu0: SquareClass | Rational
) -> QuadraticSpace:
    delta = square_class(delta, q.p)
    if (dd, delta) not in dset(q, q_prime):
        raise DomainError(f"({dd}, {delta}) is not an admissible pair")
    found = w_space_candidates(q, q_prime, dd, delta, nu0)
    if len(found) != 1:
        raise AssertionError(f"expected a unique W, found {len(found)}")
    return found[0]
