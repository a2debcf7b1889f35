"""Local root numbers of characters of Q_p^x and tables of pair root numbers.

Conventions: the additive character of conductor exponent c is
psi_c(x) = exp(2 pi i {p^-c x}_p), so psi_0 is trivial on Z_p and not on
p^-1 Z_p. For a character chi of conductor exponent a >= 1,

    eps(1/2, chi, psi_0) = chi(p)^a p^{-a/2} sum_{u mod p^a} chi(u)^-1 psi_0(u / p^a),

and eps(1/2, chi, psi_0) = 1 when chi is unramified. The Weil-Deligne
correction for chi (x) sp(n) uses the uniformizer <-> geometric Frobenius
normalization: for unramified chi it contributes (-chi(p))^{n-1}.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import DomainError, ValidationError
from .padic import Rational, SquareClass, hilbert, square_class, unit_part, valuation
from .wdparam import ORTH, SYMP, IrredDescriptor

SNAP_TOL = 1e-9


def _turn(t: Fraction) -> Fraction:
    return t - math.floor(t)


@lru_cache(maxsize=None)
def _primitive_root(p: int) -> int:
    """Least g generating (Z/p^2)^x, hence every (Z/p^a)^x."""
    phi = p * (p - 1)
    primes = [q for q in range(2, phi + 1) if phi % q == 0 and all(q % r for r in range(2, q))]
    for g in range(2, p * p):
        if g % p and all(pow(g, phi // q, p * p) != 1 for q in primes):
            return g
    raise AssertionError("no primitive root")


def generators(p: int) -> tuple[int, ...]:
    """Fixed topological generators of Z_p^x."""
    return (-1, 5) if p == 2 else (_primitive_root(p),)


def _gen_orders(p: int, a: int) -> tuple[int, ...]:
    """Orders of the fixed generators in (Z/p^a)^x."""
    if p == 2:
        return (1 if a <= 1 else 2, 1 if a <= 2 else 2 ** (a - 2))
    return (1 if a == 0 else (p - 1) * p ** (a - 1),)


@lru_cache(maxsize=None)
def _dlog_table(p: int, a: int) -> dict[int, tuple[int, ...]]:
    """residue mod p^a -> exponents of the fixed generators."""
    m = p**a
    table: dict[int, tuple[int, ...]] = {}
    for exps in itertools.product(*(range(o) for o in _gen_orders(p, a))):
        v = 1
        for g, e in zip(generators(p), exps):
            v = v * pow(g % m, e, m) % m
        table.setdefault(v, exps)
    return table


@dataclass(frozen=True)
class MultChar:
    """A finite-order character of Q_p^x.

    ``unit_turns[k]`` is t with chi(g_k) = exp(2 pi i t) for the fixed
    generators g_k of Z_p^x; ``unram_turn`` gives chi(p) likewise.
    """

    p: int
    unit_turns: tuple[Fraction, ...]
    unram_turn: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if len(self.unit_turns) != len(generators(self.p)):
            raise DomainError("wrong number of generator values")
        object.__setattr__(self, "unit_turns", tuple(_turn(Fraction(t)) for t in self.unit_turns))
        object.__setattr__(self, "unram_turn", _turn(Fraction(self.unram_turn)))
        self.conductor  # validates finiteness

    @classmethod
    def trivial(cls, p: int) -> MultChar:
        return cls(p, (Fraction(0),) * len(generators(p)))

    @classmethod
    def unramified(cls, p: int, turn: Rational) -> MultChar:
        return cls(p, (Fraction(0),) * len(generators(p)), Fraction(turn))

    @classmethod
    def quadratic(cls, d: SquareClass) -> MultChar:
        """x -> (d, x)."""
        p = d.p
        turns = tuple(Fraction(0) if hilbert(d, g, p) == 1 else Fraction(1, 2) for g in generators(p))
        unram = Fraction(0) if hilbert(d, p, p) == 1 else Fraction(1, 2)
        return cls(p, turns, unram)

    @property
    def conductor(self) -> int:
        for a in range(0, 64):
            if all((t * o).denominator == 1 for t, o in zip(self.unit_turns, _gen_orders(self.p, a))):
                return a
        raise DomainError("character of infinite order on units")

    @property
    def order(self) -> int:
        return math.lcm(*(t.denominator for t in self.unit_turns), self.unram_turn.denominator)

    def is_quadratic(self) -> bool:
        return self.order <= 2

    def unit_turn(self, u: Rational) -> Fraction:
        u = Fraction(u)
        if valuation(u, self.p) != 0:
            raise DomainError("not a unit")
        a = self.conductor
        if a == 0:
            return Fraction(0)
        m = self.p**a
        r = u.numerator * pow(u.denominator, -1, m) % m
        exps = _dlog_table(self.p, a)[r]
        return _turn(sum((e * t for e, t in zip(exps, self.unit_turns)), Fraction(0)))

    def turn(self, x: Rational) -> Fraction:
        """t with chi(x) = exp(2 pi i t)."""
        v = valuation(x, self.p)
        return _turn(v * self.unram_turn + self.unit_turn(unit_part(x, self.p)))

    def __call__(self, x: Rational) -> complex:
        return cmath.exp(2j * cmath.pi * float(self.turn(x)))

    def sign(self, x: Rational) -> int:
        t = self.turn(x)
        if t == 0:
            return 1
        if t == Fraction(1, 2):
            return -1
        raise DomainError("value is not +-1")

    def __mul__(self, other: MultChar) -> MultChar:
        if other.p != self.p:
            raise DomainError("characters over different primes")
        return MultChar(
            self.p,
            tuple(a + b for a, b in zip(self.unit_turns, other.unit_turns)),
            self.unram_turn + other.unram_turn,
        )

    def inverse(self) -> MultChar:
        return MultChar(self.p, tuple(-t for t in self.unit_turns), -self.unram_turn)

    def square_class(self) -> SquareClass:
        """The class d with chi = (d, .), for quadratic chi."""
        from .padic import all_square_classes

        for d in all_square_classes(self.p):
            if MultChar.quadratic(d) == self:
                return d
        raise DomainError("character is not quadratic")

    def to_json(self) -> dict:
        return {
            "conductor": self.conductor,
            "unit_turns": [str(t) for t in self.unit_turns],
            "unram_turn": str(self.unram_turn),
        }


def characters_of_level(p: int, a: int, unram_turn: Rational = 0) -> list[MultChar]:
    """All characters trivial on 1 + p^a Z_p with given chi(p)."""
    orders = _gen_orders(p, a)
    out = []
    for ks in itertools.product(*(range(o) for o in orders)):
        out.append(MultChar(p, tuple(Fraction(k, o) for k, o in zip(ks, orders)), Fraction(unram_turn)))
    return out


@dataclass(frozen=True)
class EpsValue:
    """A unit complex number, exact as a root of unity when ``turn`` is set."""

    approx: complex
    turn: Fraction | None = None

    @classmethod
    def exact(cls, turn: Rational) -> EpsValue:
        t = _turn(Fraction(turn))
        return cls(cmath.exp(2j * cmath.pi * float(t)), t)

    @classmethod
    def snapped(cls, z: complex, max_order: int = 64) -> EpsValue:
        t = snap(z, max_order)
        return cls.exact(t) if t is not None else cls(z)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EpsValue):
            return NotImplemented
        if self.turn is not None and other.turn is not None:
            return self.turn == other.turn
        return abs(self.approx - other.approx) < SNAP_TOL

    def __hash__(self) -> int:
        return hash(self.turn)

    def __mul__(self, other: EpsValue) -> EpsValue:
        if self.turn is not None and other.turn is not None:
            return EpsValue.exact(self.turn + other.turn)
        return EpsValue.snapped(self.approx * other.approx)

    def __pow__(self, n: int) -> EpsValue:
        if self.turn is not None:
            return EpsValue.exact(self.turn * n)
        return EpsValue.snapped(self.approx**n)

    def inverse(self) -> EpsValue:
        if self.turn is not None:
            return EpsValue.exact(-self.turn)
        return EpsValue.snapped(1 / self.approx)

    def is_sign(self) -> bool:
        return self.turn is not None and self.turn in (0, Fraction(1, 2))

    @property
    def sign(self) -> int:
        if not self.is_sign():
            raise DomainError(f"root number {self.approx} is not +-1")
        return 1 if self.turn == 0 else -1

    def to_json(self):
        if self.is_sign():
            return self.sign
        return [round(self.approx.real, 12), round(self.approx.imag, 12)]


def snap(z: complex, max_order: int = 64) -> Fraction | None:
    """t with |z - exp(2 pi i t)| < SNAP_TOL and denominator <= max_order, if any."""
    if abs(abs(z) - 1) > SNAP_TOL:
        return None
    t = Fraction(cmath.phase(z) / (2 * math.pi)).limit_denominator(max_order)
    if abs(cmath.exp(2j * cmath.pi * float(t)) - z) < SNAP_TOL:
        return _turn(t)
    return None


def gauss_sum(chi: MultChar, alpha: int = 1) -> complex:
    """sum over u in (Z/p^a)^x of chi(u)^-1 psi_0(alpha u / p^a)."""
    a = chi.conductor
    m = chi.p**a
    total = 0j
    for u in range(1, m + 1):
        if u % chi.p == 0:
            continue
        t = -chi.unit_turn(u) + Fraction(alpha * u, m)
        total += cmath.exp(2j * cmath.pi * float(_turn(t)))
    return total


def gauss_eps(chi: MultChar, psi_conductor: int = 0, alpha: int = 1) -> EpsValue:
    """eps(1/2, chi, psi) for psi(x) = psi_0(alpha p^-c x), alpha a unit."""
    p = chi.p
    if valuation(alpha, p) != 0:
        raise DomainError("alpha must be a p-adic unit")
    shift = chi.unram_turn * (-psi_conductor)
    a = chi.conductor
    if a == 0:
        return EpsValue.exact(shift)
    g = gauss_sum(chi, alpha)
    z = cmath.exp(2j * cmath.pi * float(chi.unram_turn * a)) * g / p ** (a / 2)
    base = EpsValue.snapped(z, max_order=8 * chi.order * p**a)
    return base * EpsValue.exact(shift)


def sp_correction(sigma: MultChar, n: int, psi_conductor: int = 0) -> EpsValue:
    """eps(1/2, sigma (x) sp(n), psi)."""
    if n < 1:
        raise DomainError("n must be >= 1")
    eps = gauss_eps(sigma, psi_conductor) ** n
    if sigma.conductor == 0 and n > 1:
        eps = eps * EpsValue.exact((Fraction(1, 2) + sigma.unram_turn) * (n - 1))
    return eps


def pair_eps(chi1: MultChar, chi2: MultChar, psi_conductor: int = 0, sp: int = 1) -> EpsValue:
    """eps of chi1 x (chi2 (x) sp(sp)), i.e. of the product character twisted by sp."""
    return sp_correction(chi1 * chi2, sp, psi_conductor)


@dataclass(frozen=True)
class AbelianIrred:
    """chi (x) sp(n) with chi quadratic: orthogonal for odd n, symplectic for even n."""

    id: str
    chi: MultChar
    n: int = 1

    def __post_init__(self) -> None:
        if not self.chi.is_quadratic():
            raise DomainError("abelian constituents must use quadratic characters")

    def descriptor(self) -> IrredDescriptor:
        if self.n % 2:
            return IrredDescriptor.orth(self.id, self.n, self.chi.square_class())
        return IrredDescriptor.symp(self.id, self.n)


def abelian_pair_eps(a: AbelianIrred, b: AbelianIrred, psi_conductor: int = 0) -> EpsValue:
    """eps(1/2, a (x) b) through sp(m) (x) sp(n) = sum_k sp(m + n - 1 - 2k)."""
    chi = a.chi * b.chi
    out = EpsValue.exact(0)
    for k in range(min(a.n, b.n)):
        out = out * sp_correction(chi, a.n + b.n - 1 - 2 * k, psi_conductor)
    return out


@dataclass(frozen=True)
class RootNumberTable:
    """eps(1/2, phi_i x phi'_i', psi) for pairs of constituent ids."""

    psi_conductor: int = 0
    entries: Mapping[tuple[str, str], EpsValue] = field(default_factory=dict)

    def get(self, i: str, iprime: str) -> EpsValue:
        try:
            return self.entries[(i, iprime)]
        except KeyError:
            raise ValidationError(f"missing table entry for pair ({i}, {iprime})", "table") from None

    def restricted(self, ids: Iterable[str], ids_prime: Iterable[str]) -> RootNumberTable:
        keep_a, keep_b = set(ids), set(ids_prime)
        return RootNumberTable(
            self.psi_conductor,
            {k: v for k, v in self.entries.items() if k[0] in keep_a and k[1] in keep_b},
        )

    def to_json(self) -> dict:
        return {
            "psi_conductor": self.psi_conductor,
            "entries": [
                {"i": i, "iprime": ip, "eps": v.to_json()}
                for (i, ip), v in sorted(self.entries.items())
            ],
        }


def parse_eps(value) -> EpsValue:
    if isinstance(value, bool):
        raise ValidationError("eps must be a number", "eps")
    if isinstance(value, (int, float)):
        return EpsValue.snapped(complex(value))
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return EpsValue.snapped(complex(float(value[0]), float(value[1])))
    raise ValidationError(f"cannot read eps value {value!r}", "eps")


def table_from_json(data: Mapping) -> RootNumberTable:
    if not isinstance(data, Mapping):
        raise ValidationError("table must be an object", "table")
    psi = data.get("psi_conductor", 0)
    if not isinstance(psi, int) or isinstance(psi, bool):
        raise ValidationError("psi_conductor must be an integer", "table.psi_conductor")
    entries: dict[tuple[str, str], EpsValue] = {}
    for k, e in enumerate(data.get("entries", [])):
        where = f"table.entries[{k}]"
        if not isinstance(e, Mapping) or "i" not in e or "iprime" not in e or "eps" not in e:
            raise ValidationError("entry needs i, iprime and eps", where)
        if e.get("psi_conductor", psi) != psi:
            raise ValidationError("entry declares a different psi convention", where + ".psi_conductor")
        key = (str(e["i"]), str(e["iprime"]))
        val = parse_eps(e["eps"])
        if key in entries and entries[key] != val:
            raise ValidationError(f"conflicting entries for {key}", where)
        entries[key] = val
    return RootNumberTable(psi, entries)


def validate_table(
    table: RootNumberTable,
    descs: Iterable[IrredDescriptor],
    descs_prime: Iterable[IrredDescriptor],
) -> list[str]:
    """Violations of the sign and self-duality constraints; empty when valid."""
    a = {d.id: d for d in descs}
    b = {d.id: d for d in descs_prime}
    out = []
    for (i, ip), eps in sorted(table.entries.items()):
        if i not in a or ip not in b:
            out.append(f"({i}, {ip}): unknown constituent id")
            continue
        d, dp = a[i], b[ip]
        if d.selfdual != "none" and dp.selfdual != "none":
            # eps(rho) eps(rho^dual) = det(rho)(-1) and rho is self-dual
            want = d.central_sign**dp.N * dp.central_sign**d.N
            sq = eps * eps
            if not sq.is_sign() or sq.sign != want:
                out.append(f"({i}, {ip}): eps^2 must equal {want}")
        if d.selfdual == ORTH and dp.selfdual == SYMP:
            factor = hilbert(d.disc, -1) ** (dp.N // 2)
            e = eps * EpsValue.exact(0 if factor == 1 else Fraction(1, 2))
            if not e.is_sign():
                out.append(f"({i}, {ip}): E-normalized value is not +-1")
    return out


def oracle_table(
    phi_side: Iterable[AbelianIrred], phi_prime_side: Iterable[AbelianIrred], psi_conductor: int = 0
) -> RootNumberTable:
    """Table computed from Gauss sums for abelian constituents."""
    entries = {}
    for a in phi_side:
        for b in phi_prime_side:
            entries[(a.id, b.id)] = abelian_pair_eps(a, b, psi_conductor)
    return RootNumberTable(psi_conductor, entries)
