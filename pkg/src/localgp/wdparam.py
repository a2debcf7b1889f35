"""Formal tempered parameters: constituents, component groups and packet characters."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .errors import DomainError, ValidationError
from .padic import SquareClass, hilbert, one, square_class

ORTH, SYMP, NONE = "orth", "symp", "none"
TRIVIAL_ID = "1"


@dataclass(frozen=True)
class IrredDescriptor:
    """An opaque irreducible constituent, known through (N, type, disc, central sign)."""

    id: str
    N: int
    selfdual: str
    disc: SquareClass | None = None
    central_sign: int = 1

    def __post_init__(self) -> None:
        if self.N < 1:
            raise ValidationError(f"descriptor {self.id}: N must be >= 1", "N")
        if self.selfdual not in (ORTH, SYMP, NONE):
            raise ValidationError(f"descriptor {self.id}: unknown type {self.selfdual!r}", "type")
        if self.central_sign not in (1, -1):
            raise ValidationError(f"descriptor {self.id}: central_sign must be +-1", "central_sign")
        if self.selfdual == SYMP and self.N % 2:
            raise ValidationError(f"descriptor {self.id}: symplectic needs even N", "N")
        if self.selfdual == ORTH:
            if self.disc is None:
                raise ValidationError(f"descriptor {self.id}: orthogonal needs disc", "disc")
            # the central character is the determinant, attached to disc
            if self.central_sign != hilbert(self.disc, -1):
                raise ValidationError(
                    f"descriptor {self.id}: central_sign must be (disc, -1)", "central_sign"
                )
        elif self.disc is not None:
            raise ValidationError(f"descriptor {self.id}: disc only for orthogonal", "disc")
        if self.selfdual == SYMP and self.central_sign != 1:
            raise ValidationError(f"descriptor {self.id}: symplectic has trivial central sign", "central_sign")

    @classmethod
    def orth(cls, id: str, N: int, disc: SquareClass) -> IrredDescriptor:
        return cls(id, N, ORTH, disc, hilbert(disc, -1))

    @classmethod
    def symp(cls, id: str, N: int) -> IrredDescriptor:
        return cls(id, N, SYMP)

    @classmethod
    def trivial(cls, p: int) -> IrredDescriptor:
        return cls.orth(TRIVIAL_ID, 1, one(p))

    def to_json(self) -> dict:
        out = {"id": self.id, "N": self.N, "type": self.selfdual, "central_sign": self.central_sign}
        if self.disc is not None:
            out["disc"] = str(self.disc)
        return out


@dataclass(frozen=True)
class WDParameter:
    """(+ l_i phi_i) + (+ l_j (phi_j + phi_j^theta))."""

    items: tuple[tuple[IrredDescriptor, int], ...] = ()
    theta_pairs: tuple[tuple[IrredDescriptor, int], ...] = ()

    @classmethod
    def of(cls, items: Iterable[tuple[IrredDescriptor, int]] = (), theta_pairs: Iterable[tuple[IrredDescriptor, int]] = ()) -> WDParameter:
        return cls(_merge(items), _merge(theta_pairs))

    @property
    def N(self) -> int:
        return sum(l * d.N for d, l in self.items) + 2 * sum(l * d.N for d, l in self.theta_pairs)

    def ids(self) -> list[str]:
        return [d.id for d, _ in self.items]

    def mult(self, id: str) -> int:
        return next((l for d, l in self.items if d.id == id), 0)

    def descriptor(self, id: str) -> IrredDescriptor:
        for d, _ in self.items + self.theta_pairs:
            if d.id == id:
                return d
        raise KeyError(id)

    def of_type(self, kind: str) -> list[tuple[IrredDescriptor, int]]:
        return [(d, l) for d, l in self.items if d.selfdual == kind]

    def __add__(self, other: WDParameter) -> WDParameter:
        return WDParameter(_merge(self.items + other.items), _merge(self.theta_pairs + other.theta_pairs))

    def single(self, id: str) -> WDParameter:
        """The irreducible constituent phi_i as a parameter by itself."""
        return WDParameter(((self.descriptor(id), 1),))

    def to_json(self) -> dict:
        return {
            "items": [[d.id, l] for d, l in self.items],
            "theta_pairs": [[d.id, l] for d, l in self.theta_pairs],
        }


def _merge(pairs: Iterable[tuple[IrredDescriptor, int]]) -> tuple[tuple[IrredDescriptor, int], ...]:
    acc: dict[str, tuple[IrredDescriptor, int]] = {}
    for d, l in pairs:
        if d.id in acc:
            if acc[d.id][0] != d:
                raise ValidationError(f"two different descriptors share id {d.id!r}", "id")
            acc[d.id] = (d, acc[d.id][1] + l)
        else:
            acc[d.id] = (d, l)
    return tuple(sorted(acc.values(), key=lambda t: t[0].id))


@dataclass(frozen=True)
class Violation:
    code: str
    message: str

    def to_json(self) -> dict:
        return {"code": self.code, "message": self.message}


def validate(
    phi: WDParameter, kind: str, N_target: int | None = None, delta_target: SquareClass | None = None
) -> list[Violation]:
    """Structured list of reasons why phi is not a valid parameter of the given kind."""
    out: list[Violation] = []
    if kind not in (ORTH, SYMP):
        return [Violation("kind", f"kind must be orth or symp, got {kind!r}")]
    for d, l in phi.items:
        if l < 1:
            out.append(Violation("multiplicity", f"{d.id}: multiplicity must be >= 1"))
        if d.selfdual == NONE:
            out.append(Violation("item-type", f"{d.id}: non-self-dual constituents must come in theta-pairs"))
    for d, l in phi.theta_pairs:
        if l < 1:
            out.append(Violation("multiplicity", f"{d.id}: multiplicity must be >= 1"))
        if d.selfdual != NONE:
            out.append(Violation("theta-type", f"{d.id}: theta-pairs must use non-self-dual descriptors"))
    ids = [d.id for d, _ in phi.items + phi.theta_pairs]
    if len(set(ids)) != len(ids):
        out.append(Violation("duplicate", "a descriptor id appears twice"))
    wrong = SYMP if kind == ORTH else ORTH
    for d, l in phi.items:
        if d.selfdual == wrong and l % 2:
            out.append(Violation("parity", f"{d.id}: {wrong} constituent needs even multiplicity in a {kind} parameter"))
    if N_target is not None and phi.N != N_target:
        out.append(Violation("dimension", f"dimension {phi.N} != {N_target}"))
    if kind == ORTH and delta_target is not None and not out and delta_of(phi, delta_target.p) != delta_target:
        out.append(Violation("delta", f"delta(phi) = {delta_of(phi, delta_target.p)} != {delta_target}"))
    return out


def require_valid(phi: WDParameter, kind: str, N_target=None, delta_target=None, field: str = "phi") -> None:
    bad = validate(phi, kind, N_target, delta_target)
    if bad:
        raise ValidationError("; ".join(v.message for v in bad), field)


def delta_of(phi: WDParameter, p: int | None = None) -> SquareClass:
    """prod disc_i^{l_i} over orthogonal constituents."""
    orth = phi.of_type(ORTH)
    if p is None:
        if not orth:
            raise DomainError("prime needed for a parameter without orthogonal constituents")
        p = orth[0][0].disc.p
    acc = one(p)
    for d, l in orth:
        if l % 2:
            acc = acc * d.disc
    return acc


@dataclass(frozen=True)
class ComponentGroup:
    """A subgroup of (Z/2)^basis, optionally cut out by an even-sum condition."""

    basis: tuple[str, ...]
    constrained: tuple[str, ...]
    z: tuple[int, ...]

    @property
    def order(self) -> int:
        return 2 ** (len(self.basis) - (1 if self.constrained else 0))

    def contains(self, e: tuple[int, ...]) -> bool:
        idx = [self.basis.index(i) for i in self.constrained]
        return sum(e[k] for k in idx) % 2 == 0

    def elements(self) -> list[tuple[int, ...]]:
        return [e for e in itertools.product((0, 1), repeat=len(self.basis)) if self.contains(e)]

    def characters(self) -> list[PacketCharacter]:
        """The dual group, one canonical representative per character."""
        seen = {}
        for bits in itertools.product((0, 1), repeat=len(self.basis)):
            ch = PacketCharacter(self, bits).canonical()
            seen[ch.bits] = ch
        return [seen[k] for k in sorted(seen)]

    def to_json(self) -> dict:
        return {
            "basis": list(self.basis),
            "constrained": list(self.constrained),
            "order": self.order,
            "z": list(self.z),
        }


@dataclass(frozen=True)
class PacketCharacter:
    """e -> (-1)^{bits . e} restricted to the component group."""

    group: ComponentGroup
    bits: tuple[int, ...]

    def __call__(self, e: tuple[int, ...]) -> int:
        return -1 if sum(b * x for b, x in zip(self.bits, e)) % 2 else 1

    def canonical(self) -> PacketCharacter:
        """Representative modulo the annihilator of the group."""
        g = self.group
        if not g.constrained:
            return self
        first = g.basis.index(g.constrained[0])
        if self.bits[first] == 0:
            return self
        flip = [1 if i in g.constrained else 0 for i in g.basis]
        return PacketCharacter(g, tuple((b + f) % 2 for b, f in zip(self.bits, flip)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PacketCharacter):
            return NotImplemented
        return self.group == other.group and self.canonical().bits == other.canonical().bits

    def __hash__(self) -> int:
        return hash((self.group, self.canonical().bits))

    def to_json(self) -> dict[str, int]:
        c = self.canonical()
        return {i: b for i, b in zip(self.group.basis, c.bits)}


def component_group(phi: WDParameter, kind: str) -> ComponentGroup:
    if kind == ORTH:
        basis = phi.of_type(ORTH)
        constrained = tuple(d.id for d, _ in basis if d.N % 2)
    elif kind == SYMP:
        basis = phi.of_type(SYMP)
        constrained = ()
    else:
        raise DomainError(f"kind must be orth or symp, got {kind!r}")
    return ComponentGroup(
        tuple(d.id for d, _ in basis), constrained, tuple(l % 2 for _, l in basis)
    )


def epsilon_set(phi: WDParameter, kind: str, mu: int) -> list[PacketCharacter]:
    """Characters with value mu on z_phi."""
    g = component_group(phi, kind)
    return [ch for ch in g.characters() if ch(g.z) == mu]


def eps_alpha(phi: WDParameter, alpha: SquareClass) -> tuple[PacketCharacter, int]:
    """The twisting character e -> prod (disc_i, alpha)^{e_i}, and its value at z."""
    g = component_group(phi, ORTH)
    bits = tuple(
        0 if hilbert(phi.descriptor(i).disc, alpha) == 1 else 1 for i in g.basis
    )
    ch = PacketCharacter(g, bits)
    return ch, ch(g.z)


def endoscopic_s(phi_plus: WDParameter, phi_minus: WDParameter, kind: str) -> tuple[tuple[int, ...], ComponentGroup]:
    """s = (l_{i,-} mod 2) on the basis of phi = phi_+ + phi_-."""
    phi = phi_plus + phi_minus
    g = component_group(phi, kind)
    s = tuple(phi_minus.mult(i) % 2 for i in g.basis)
    return s, g


def augment(phi_prime: WDParameter, p: int) -> WDParameter:
    """phi' + 1, an orthogonal parameter of dimension N + 1."""
    return phi_prime + WDParameter(((IrredDescriptor.trivial(p), 1),))


def quadratic_descriptor(id: str, disc: SquareClass | int, p: int) -> IrredDescriptor:
    return IrredDescriptor.orth(id, 1, square_class(disc, p))
