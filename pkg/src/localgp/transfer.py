"""Characteristic polynomials, Weyl-type discriminants and explicit transfer factors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError
from .padic import Rational, SquareClass, sgn_ext, square_class, valuation
from .quadspace import QuadraticSpace, is_isomorphic
from .xi import (
    CLike,
    GammaElement,
    MultiQuad,
    QuadAlgebraElement,
    XiFamily,
    coset_reps,
    eigenvalues,
)


@dataclass(frozen=True)
class XiPolynomial:
    """A rational polynomial; ``coeffs[k]`` multiplies T^k."""

    coeffs: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: XiPolynomial) -> XiPolynomial:
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return XiPolynomial(tuple(out))

    def derivative(self) -> XiPolynomial:
        d = tuple(k * c for k, c in enumerate(self.coeffs))[1:]
        return XiPolynomial(d or (Fraction(0),))

    def __call__(self, t):
        """Horner evaluation at a rational or a quadratic-algebra element."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * t + c
        if isinstance(t, QuadAlgebraElement) and not isinstance(acc, QuadAlgebraElement):
            acc = t.scalar(acc)
        return acc


@dataclass(frozen=True, order=True)
class AbsValue:
    """|x|_p stored through v = v_p(x), so that |x| = p^(-v)."""

    p: int
    exponent: int

    @classmethod
    def of(cls, x: Rational, p: int) -> AbsValue:
        return cls(p, valuation(x, p))

    def __mul__(self, other: AbsValue) -> AbsValue:
        return AbsValue(self.p, self.exponent + other.exponent)

    def __pow__(self, k: int) -> AbsValue:
        return AbsValue(self.p, self.exponent * k)

    @property
    def value(self) -> Fraction:
        return Fraction(self.p) ** (-self.exponent)


def poly_P(xi: XiFamily) -> XiPolynomial:
    out = XiPolynomial((Fraction(1),))
    for e in xi.entries:
        out = out * XiPolynomial((Fraction(1), -e.y.trace(), Fraction(1)))
    return out


def delta_element(xi: XiFamily) -> Fraction:
    """P_xi(1) as a rational number."""
    return poly_P(xi)(Fraction(1))


def delta_abs(xi: XiFamily) -> AbsValue:
    """|P_xi(1)|."""
    v = delta_element(xi)
    if v == 0:
        raise DomainError("1 is an eigenvalue; Delta(xi) is undefined")
    return AbsValue.of(v, xi.p)


def _weyl_product(lams: Sequence[MultiQuad]) -> Fraction:
    acc = MultiQuad.const(lams[0].radicands, 1) if lams else None
    for a in range(len(lams)):
        for b in range(a + 1, len(lams)):
            prod = lams[a] * lams[b]
            f = MultiQuad.const(prod.radicands, 1) - prod
            if f.is_zero():
                continue  # centralizer direction
            acc = acc * f
    return Fraction(1) if acc is None else acc.rational()


def capital_D_element(xi: XiFamily, n: int | None = None) -> Fraction:
    """prod_{a<b, l_a l_b != 1} (1 - l_a l_b) on the adjoint action for SO(n).

    The eigenvalues are y_i, tau(y_i) and n - d_xi copies of 1.
    """
    n = xi.d if n is None else n
    if n < xi.d:
        raise DomainError("n must be at least d_xi")
    lams = eigenvalues(xi)
    rad = lams[0].radicands if lams else ()
    lams += [MultiQuad.const(rad, 1)] * (n - xi.d)
    value = _weyl_product(lams)
    if value == 0:
        raise DomainError("vanishing discriminant; xi is not regular")
    return value


def capital_D(xi: XiFamily) -> AbsValue:
    return AbsValue.of(capital_D_element(xi), xi.p)


def capital_D_n(xi: XiFamily, n: int) -> AbsValue:
    return AbsValue.of(capital_D_element(xi, n), xi.p)


def _check_pole(y: QuadAlgebraElement) -> None:
    if y == y.scalar(1):
        raise DomainError("pole at y = 1")


def c_terms_even(xi: XiFamily, c: CLike) -> dict[int, Fraction]:
    """C_i = (-1)^{d/2} c_i P'(y_i) P(-1) y_i^{1-d/2} (y_i - 1)^{-1} (y_i + 1)."""
    P = poly_P(xi)
    dP = P.derivative()
    half = xi.d // 2
    p_minus = P(Fraction(-1))
    reps = coset_reps(c, xi)
    out = {}
    for i, e in enumerate(xi.entries):
        y = e.y
        _check_pole(y)
        val = dP(y) * (reps[i] * p_minus * (-1) ** half)
        val = val * y ** (1 - half) / (y - 1) * (y + 1)
        out[i] = val.rational()
    return out


def delta_nu(
    xi_plus: XiFamily, xi_minus: XiFamily, c: CLike, nu: SquareClass | Rational
) -> int:
    """Product over field entries of xi_minus of sgn(nu C_i); c is indexed on the union."""
    xi = xi_plus + xi_minus
    nu = square_class(nu, xi.p)
    cs = c_terms_even(xi, c)
    out = 1
    offset = len(xi_plus)
    for i in xi.istar:
        if i >= offset:
            out *= sgn_ext(xi.delta_i(i), nu * cs[i])
    return out


def c_terms_gl(xi: XiFamily, gamma: GammaElement) -> dict[int, Fraction]:
    """C_i for the twisted linear group, on the field entries."""
    gamma.check(xi)
    P = poly_P(xi)
    dP = P.derivative()
    half = xi.d // 2
    p_one = P(Fraction(1))
    out = {}
    for i, g in gamma.as_map().items():
        y = xi.entries[i].y
        _check_pole(y)
        lead = Fraction(gamma.gamma_d.rep) if gamma.is_imp else Fraction(-1)
        val = g.inverse() * (lead * p_one) * dP(y) * y ** (1 - half) * (y - 1)
        out[i] = val.rational()
    return out


def delta_gl(xi: XiFamily, gamma: GammaElement) -> int:
    out = 1
    for i, ci in c_terms_gl(xi, gamma).items():
        out *= sgn_ext(xi.delta_i(i), ci)
    return out


# -- facades for the endoscopic groups ------------------------------------


def _split_check(xi_plus: XiFamily, xi_minus: XiFamily, q_plus, q_minus, odd: bool) -> None:
    for name, q, x in (("q_plus", q_plus, xi_plus), ("q_minus", q_minus, xi_minus)):
        if q is None:
            continue
        want = x.d + (1 if odd else 0)
        if q.dim != want:
            raise DomainError(f"{name} has dim {q.dim}, expected {want}")
        if not q.is_quasi_split():
            raise DomainError(f"{name} must be (quasi-)split")
        if not odd and q.disc != x.delta:
            raise DomainError(f"disc of {name} does not match its parameter")


def tf_odd(
    q_prime: QuadraticSpace,
    xi_plus: XiFamily,
    xi_minus: XiFamily,
    c: CLike,
    q_plus: QuadraticSpace | None = None,
    q_minus: QuadraticSpace | None = None,
) -> int:
    """Transfer factor for SO(q'_+) x SO(q'_-) -> SO(q'), q' odd."""
    from .classparam import admissible_coset_odd, coset_of

    xi = xi_plus + xi_minus
    if not xi.is_regular():
        raise DomainError("xi_plus + xi_minus must be regular")
    if q_prime.dim != xi.d + 1:
        raise DomainError("dim q' must equal d_xi + 1")
    _split_check(xi_plus, xi_minus, q_plus, q_minus, odd=True)
    if q_plus is not None and q_minus is not None and q_plus.dim + q_minus.dim != q_prime.dim + 1:
        raise DomainError("dim q'_+ + dim q'_- must be dim q' + 1")
    coset, _ = admissible_coset_odd(q_prime, xi)
    if coset_of(c, xi) not in coset:
        raise DomainError("c is not in the coset admissible for q'")
    return delta_nu(xi_plus, xi_minus, c, -2 * q_prime.disc)


def tf_even(
    q: QuadraticSpace,
    xi_plus: XiFamily,
    xi_minus: XiFamily,
    c: CLike,
    nu0: SquareClass | Rational,
    q_plus: QuadraticSpace | None = None,
    q_minus: QuadraticSpace | None = None,
) -> int:
    """Transfer factor for SO(q_+) x SO(q_-) -> SO(q), q even."""
    from .classparam import admissible_coset_even, coset_of

    xi = xi_plus + xi_minus
    if not xi.is_regular():
        raise DomainError("xi_plus + xi_minus must be regular")
    _split_check(xi_plus, xi_minus, q_plus, q_minus, odd=False)
    if q_plus is not None and q_minus is not None and q_plus.dim + q_minus.dim != q.dim:
        raise DomainError("dim q_+ + dim q_- must be dim q")
    coset = admissible_coset_even(q, xi)
    if coset_of(c, xi) not in coset:
        raise DomainError("c is not in the coset admissible for q")
    nu = square_class(nu0, q.p) * q.disc
    return delta_nu(xi_plus, xi_minus, c, nu)


def tf_twisted(q: QuadraticSpace, y_xi: XiFamily, xi: XiFamily, gamma: GammaElement) -> int:
    """Transfer factor between SO(q) and the twisted GL(n), n = dim q.

    ``y_xi`` is the parameter of the class in SO(q); it must equal xi when n is
    odd and -xi when n is even.
    """
    from .classparam import neg_xi

    n = q.dim
    if not q.is_quasi_split():
        raise DomainError("SO(q) must be quasi-split")
    if n % 2:
        if y_xi != xi:
            raise DomainError("odd case: the parameters must coincide")
        if xi.d != n - 1 or not gamma.is_imp:
            raise DomainError("odd case needs d_xi = n - 1 and gamma in Gamma_imp")
    else:
        if y_xi != neg_xi(xi):
            raise DomainError("even case: the SO parameter must be -xi")
        if xi.d != n or gamma.is_imp or y_xi.delta != q.disc:
            raise DomainError("even case needs d_xi = n, delta_xi = disc q and gamma in Gamma_pair")
    return delta_gl(xi, gamma)


def theta_point_base(n: int) -> list[list[int]]:
    """Matrix of the pinning-preserving involution theta_n on the standard basis."""
    return [
        [(-1) ** (k + (n + 1) // 2) if j == n + 1 - k else 0 for k in range(1, n + 1)]
        for j in range(1, n + 1)
    ]
