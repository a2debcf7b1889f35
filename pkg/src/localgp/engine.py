"""The multiplicity prediction for pairs (SO(even), SO(odd)) from root numbers.

All outputs are conditional on the local Langlands correspondence for the
groups involved and the properties of packets it is expected to satisfy;
emitted JSON carries a ``conditional`` label saying so.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError
from .padic import SquareClass, hilbert, square_class
from .quadspace import QuadraticSpace, mu, qd_condition, validate_gp_pair
from .rootnumbers import RootNumberTable
from .wdparam import (
    NONE,
    ORTH,
    SYMP,
    ComponentGroup,
    PacketCharacter,
    WDParameter,
    component_group,
    delta_of,
    epsilon_set,
    require_valid,
)

CONDITIONAL_LABEL = "conditional on the local Langlands parametrization and its expected packet properties"

# Normalizing constants of the packet parametrizations; fixed values, metadata only.
NORMALIZED_CONSTANTS = {
    "c_Gprime": "1",
    "gamma_Gprime": "mu(G')",
    "gamma_G": "1",
    "c_G": "zeta(phi) * eps(1/2, pi(phi), psi)^-1",
}


def _minus_one_det(a, b) -> int:
    """det(a (x) b)(-1) = omega_a(-1)^{N_b} omega_b(-1)^{N_a}."""
    return a.central_sign**b.N * b.central_sign**a.N


def big_E(phi: WDParameter, phi_prime: WDParameter, table: RootNumberTable, p: int) -> int:
    """(delta(phi), -1)^{N'/2} eps(1/2, phi x phi').

    Pairs of constituents entering with odd total multiplicity are read from
    the table; the others only need eps(rho)^2 = det(rho)(-1) for self-dual
    rho, and theta-pairs contribute eps(rho) eps(rho^dual) = det(rho)(-1).
    """
    if phi_prime.N % 2:
        raise ValidationError("phi' must have even dimension", "phi_prime")
    sign = hilbert(delta_of(phi, p), -1) ** (phi_prime.N // 2)
    for d, l in phi.items:
        for dp, lp in phi_prime.items:
            m = l * lp
            if m % 2:
                sign *= table.get(d.id, dp.id).sign
            else:
                sign *= _minus_one_det(d, dp) ** (m // 2)
        for dp, lp in phi_prime.theta_pairs:
            sign *= _minus_one_det(d, dp) ** (l * lp)
    for d, l in phi.theta_pairs:
        for dp, lp in phi_prime.items:
            sign *= _minus_one_det(d, dp) ** (l * lp)
    return sign


def distinguished_chars(
    phi: WDParameter, phi_prime: WDParameter, table: RootNumberTable, p: int
) -> tuple[PacketCharacter, PacketCharacter]:
    """eps_i = E(phi_i, phi') on I^orth and eps'_i' = E(phi, phi'_i') on I'^symp."""
    g = component_group(phi, ORTH)
    gp = component_group(phi_prime, SYMP)
    bits = tuple(0 if big_E(phi.single(i), phi_prime, table, p) == 1 else 1 for i in g.basis)
    bits_p = tuple(0 if big_E(phi, phi_prime.single(i), table, p) == 1 else 1 for i in gp.basis)
    return PacketCharacter(g, bits), PacketCharacter(gp, bits_p)


@dataclass(frozen=True)
class Prediction:
    E: int
    mu_gprime: int
    mu_g: int
    group: ComponentGroup
    group_prime: ComponentGroup
    eps: PacketCharacter
    eps_prime: PacketCharacter
    empty_packet: str | None = None

    @property
    def vanishing(self) -> bool:
        return self.E != self.mu_gprime

    @property
    def distinguished(self) -> tuple[PacketCharacter, PacketCharacter] | None:
        return None if self.vanishing else (self.eps, self.eps_prime)

    def multiplicity(self, eps: PacketCharacter, eps_prime: PacketCharacter) -> int:
        d = self.distinguished
        return int(d is not None and d == (eps, eps_prime))

    def matrix(self) -> dict[tuple[PacketCharacter, PacketCharacter], int]:
        """m(sigma(eps), sigma'(eps')) over both packets."""
        return {
            (e, ep): self.multiplicity(e, ep)
            for e in _packet(self.group, self.mu_g)
            for ep in _packet(self.group_prime, self.mu_gprime)
        }

    def to_json(self) -> dict:
        return {
            "E": self.E,
            "mu": self.mu_gprime,
            "vanishing": self.vanishing,
            "eps": None if self.vanishing else self.eps.to_json(),
            "eps_prime": None if self.vanishing else self.eps_prime.to_json(),
            "empty_packet": self.empty_packet,
            "conditional": CONDITIONAL_LABEL,
        }


def _packet(g: ComponentGroup, mu_value: int) -> list[PacketCharacter]:
    return [ch for ch in g.characters() if ch(g.z) == mu_value]


def predict(
    phi: WDParameter,
    phi_prime: WDParameter,
    q: QuadraticSpace,
    q_prime: QuadraticSpace,
    nu0: SquareClass | Fraction | int,
    table: RootNumberTable,
) -> Prediction:
    cfg = validate_gp_pair(q, q_prime, nu0)
    p = q.p
    require_valid(phi, ORTH, q.dim, q.disc, field="phi")
    require_valid(phi_prime, SYMP, q_prime.dim - 1, field="phi_prime")
    mu_gp = mu(q_prime)
    mu_g = 1 if qd_condition(q, cfg.nu0) else -1
    if mu_g != mu_gp:
        raise AssertionError("(QD) for q must agree with the splitting of SO(q')")
    E = big_E(phi, phi_prime, table, p)
    eps, eps_p = distinguished_chars(phi, phi_prime, table, p)
    g, gp = eps.group, eps_p.group
    if eps(g.z) != E or eps_p(gp.z) != E:
        raise AssertionError("distinguished characters do not evaluate to E on z")
    empty = None
    if not any(g.z) and mu_g == -1:
        empty = "G"
    elif not any(gp.z) and mu_gp == -1:
        empty = "G'"
    pred = Prediction(E, mu_gp, mu_g, g, gp, eps, eps_p, empty)
    if not pred.vanishing:
        if eps not in epsilon_set(phi, ORTH, mu_g) or eps_p not in epsilon_set(phi_prime, SYMP, mu_gp):
            raise AssertionError("distinguished pair outside the packets")
    return pred


def m_pairing(s: tuple[int, ...], s_prime: tuple[int, ...], pred: Prediction) -> Fraction:
    """m(phi, s; phi', s') from the closed form for the sign of mu(G')."""
    if len(s) != len(pred.group.basis) or len(s_prime) != len(pred.group_prime.basis):
        raise ValidationError("s or s' has the wrong length", "s")
    if not pred.group.contains(s) or not pred.group_prime.contains(s_prime):
        raise ValidationError("s or s' is not in the component group", "s")
    sign = pred.eps(s) * pred.eps_prime(s_prime)
    if pred.mu_gprime == 1:
        return Fraction(sign * (pred.E + 1), 2)
    return -Fraction(sign * (pred.E - 1), 2)


def m_pairing_sum(s: tuple[int, ...], s_prime: tuple[int, ...], pred: Prediction) -> Fraction:
    """The same quantity as an explicit sum over both packets."""
    total = Fraction(0)
    for (e, ep), m in pred.matrix().items():
        total += e(s) * ep(s_prime) * m
    return total
