"""From parameters (xi, c) or (xi, gamma) to quadratic and bilinear data."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .padic import SquareClass, sgn_ext, square_class
from .quadspace import QuadraticSpace, hyperbolic, is_isomorphic
from .xi import (
    CLike,
    CosetElement,
    GammaElement,
    QuadAlgebraElement,
    XiEntry,
    XiFamily,
    coset_reps,
    enumerate_c,
    gamma_split,
)


def build_qxic(xi: XiFamily, c: CLike) -> QuadraticSpace:
    """Diagonal model of the trace form sum_i trace(c_i tau(v_i) v'_i)."""
    p = xi.p
    reps = coset_reps(c, xi)
    q = QuadraticSpace(p, ())
    for i, e in enumerate(xi.entries):
        if e.is_split:
            q = q + hyperbolic(1, p)
        else:
            ci = reps[i]
            q = q + QuadraticSpace.from_rationals([2 * ci, -2 * ci * e.delta], p)
    return q


def coset_of(c: CLike, xi: XiFamily) -> CosetElement:
    reps = coset_reps(c, xi)
    return CosetElement.from_map({i: sgn_ext(xi.delta_i(i), reps[i]) for i in xi.istar})


def _assert_c1_coset(found: list[CosetElement], xi: XiFamily) -> None:
    if not found:
        return
    size = 2 ** max(len(xi.istar) - 1, 0)
    signs = {c.product() for c in found}
    if len(found) != size or len(signs) != 1:
        raise AssertionError("admissible set is not a single C(xi)^1-coset")


def admissible_coset_odd(q_prime: QuadraticSpace, xi: XiFamily) -> tuple[list[CosetElement], QuadraticSpace]:
    """All c with q' = D + q_{xi,c} for a line D, and that line."""
    if q_prime.dim != xi.d + 1:
        raise DomainError("dim q' must equal d_xi + 1")
    p = xi.p
    found, line = [], None
    for c in enumerate_c(xi):
        qc = build_qxic(xi, c)
        d_line = QuadraticSpace(p, (q_prime.det * qc.det,))
        if is_isomorphic(d_line + qc, q_prime):
            found.append(c)
            line = d_line
    if not found:
        raise DomainError("no c realizes q'; the inputs are inconsistent")
    _assert_c1_coset(found, xi)
    return found, line


def admissible_coset_even(q: QuadraticSpace, xi: XiFamily) -> list[CosetElement]:
    """All c with q isomorphic to q_{xi,c}."""
    if q.dim != xi.d:
        raise DomainError("dim q must equal d_xi")
    if q.disc != xi.delta:
        raise DomainError("disc q must equal delta_xi")
    found = [c for c in enumerate_c(xi) if is_isomorphic(build_qxic(xi, c), q)]
    if not found:
        raise DomainError("no c realizes q; the inputs are inconsistent")
    _assert_c1_coset(found, xi)
    return found


def neg_xi(xi: XiFamily) -> XiFamily:
    return XiFamily(xi.p, tuple(XiEntry(-e.y) for e in xi.entries))


@dataclass(frozen=True)
class GLForm:
    """Gram blocks of the bilinear form x~(u, u') = sum trace(tau(u_i) u'_i gamma_i)."""

    blocks: tuple[tuple[tuple[Fraction, ...], ...], ...]

    def matrix(self) -> list[list[Fraction]]:
        n = sum(len(b) for b in self.blocks)
        out = [[Fraction(0)] * n for _ in range(n)]
        k = 0
        for b in self.blocks:
            for r, row in enumerate(b):
                for s, v in enumerate(row):
                    out[k + r][k + s] = v
            k += len(b)
        return out

    def to_json(self) -> list[list[list[str]]]:
        return [[[str(v) for v in row] for row in b] for b in self.blocks]


def _basis(e: XiEntry) -> tuple[QuadAlgebraElement, QuadAlgebraElement]:
    if e.is_split:
        return QuadAlgebraElement.split_elt(1, 0), QuadAlgebraElement.split_elt(0, 1)
    return QuadAlgebraElement.field_elt(e.delta, 1, 0), QuadAlgebraElement.field_elt(e.delta, 0, 1)


def build_gl_form(xi: XiFamily, gamma: GammaElement) -> GLForm:
    """Block Gram data; an odd twisted class adds the 1x1 block gamma_D."""
    gamma.check(xi)
    gmap = gamma.as_map()
    blocks = []
    for i, e in enumerate(xi.entries):
        g = gmap[i] if i in gmap else gamma_split(e)
        basis = _basis(e)
        blocks.append(tuple(
            tuple((u.conj() * v * g).trace() for v in basis) for u in basis
        ))
    if gamma.is_imp:
        blocks.append(((Fraction(gamma.gamma_d.rep),),))
    return GLForm(tuple(blocks))


def other_coset(coset: list[CosetElement], xi: XiFamily) -> list[CosetElement]:
    return [c for c in enumerate_c(xi) if c not in coset]


def coset_label(coset: list[CosetElement]) -> int:
    """Common sign product of a C(xi)^1-coset."""
    return coset[0].product()


def scale_c(c: CLike, xi: XiFamily, alpha: SquareClass | Fraction) -> dict[int, Fraction]:
    """Representatives alpha * c_i (the parameter of alpha q for class c of q)."""
    a = Fraction(square_class(alpha, xi.p).rep)
    return {i: a * v for i, v in coset_reps(c, xi).items() if i in xi.istar}
