"""Run the brute-force oracles against the closed formulas."""

from __future__ import annotations

import itertools

from .oracles import (
    classes_by_enumeration,
    component_group_bruteforce,
    hilbert_bruteforce,
    isotropic_bruteforce,
)
from .padic import all_square_classes, hilbert
from .quadspace import QuadraticSpace, classify
from .rootnumbers import MultChar, characters_of_level, gauss_eps, gauss_sum
from .wdparam import ORTH, SYMP, IrredDescriptor, WDParameter, component_group


def _suite_hilbert(p: int) -> tuple[int, int]:
    cases = fails = 0
    for a, b in itertools.product(all_square_classes(p), repeat=2):
        cases += 1
        fails += hilbert(a, b) != hilbert_bruteforce(a, b)
    return cases, fails


def _suite_isotropy(p: int, max_dim: int = 3) -> tuple[int, int]:
    cases = fails = 0
    classes = all_square_classes(p)
    for d in range(1, max_dim + 1):
        for diag in itertools.combinations_with_replacement(classes, d):
            cases += 1
            q = QuadraticSpace(p, diag)
            fails += q.is_isotropic() != isotropic_bruteforce([c.rep for c in diag], p)
    return cases, fails


def _suite_classify(p: int, max_dim: int = 4) -> tuple[int, int]:
    cases = fails = 0
    for d in range(1, max_dim + 1):
        seen = classes_by_enumeration(d, p)
        for delta in all_square_classes(p):
            cases += 1
            fails += len(classify(d, delta, p)) != len(seen.get(delta, ()))
    return cases, fails


def component_grid(p: int, max_items: int = 3):
    """Small parameters of both kinds, for checking component groups."""
    shapes = [(ORTH, 1), (ORTH, 2), (ORTH, 3), (SYMP, 2)]
    disc = all_square_classes(p)[1]
    for k in range(max_items + 1):
        for combo in itertools.product(shapes, repeat=k):
            for mults in itertools.product((1, 2, 3), repeat=k):
                items = []
                for j, ((kind, n), l) in enumerate(zip(combo, mults)):
                    ident = f"c{j}"
                    d = IrredDescriptor.orth(ident, n, disc) if kind == ORTH else IrredDescriptor.symp(ident, n)
                    items.append((d, l))
                yield WDParameter.of(items)


def check_component_group(phi: WDParameter, kind: str) -> bool:
    g = component_group(phi, kind)
    basis = phi.of_type(kind)
    order, z = component_group_bruteforce([d.N for d, _ in basis], [l for _, l in basis], kind)
    return g.order == order and g.z == z


def _suite_compgroup(p: int) -> tuple[int, int]:
    cases = fails = 0
    for phi in component_grid(p, 2):
        for kind in (ORTH, SYMP):
            cases += 1
            fails += not check_component_group(phi, kind)
    return cases, fails


def _suite_gauss(p: int) -> tuple[int, int]:
    if p == 2:
        levels = [(2, 0), (3, 0)]
    else:
        levels = [(1, 0), (2, 0)]
    cases = fails = 0
    for a, _ in levels:
        for chi in characters_of_level(p, a):
            if chi.conductor == 0:
                continue
            cases += 1
            ok = abs(abs(gauss_sum(chi)) - p ** (chi.conductor / 2)) < 1e-9
            prod = gauss_eps(chi) * gauss_eps(chi.inverse())
            ok = ok and prod.turn is not None and prod.is_sign() and prod.sign == chi.sign(-1)
            fails += not ok
    return cases, fails


SUITES = {
    "hilbert": _suite_hilbert,
    "isotropy": _suite_isotropy,
    "classify": _suite_classify,
    "compgroup": _suite_compgroup,
    "gauss": _suite_gauss,
}


def run_selftest(primes: list[int]) -> dict:
    report = {}
    total_cases = total_fails = 0
    for name, fn in SUITES.items():
        for p in primes:
            cases, fails = fn(p)
            report[f"{name}/p={p}"] = {"cases": cases, "failures": fails}
            total_cases += cases
            total_fails += fails
    return {"primes": primes, "suites": report, "cases": total_cases, "failures": total_fails}
