"""Brute-force oracles used by the test-suite and the ``selftest`` command.

These deliberately avoid the closed formulas of the production modules:
Hilbert symbols and isotropy are decided by counting primitive solutions of
congruences modulo p^k at a precision where Hensel's lemma applies.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .padic import SquareClass, all_square_classes, valuation


def hensel_precision(p: int) -> int:
    """k = 2 v_p(4) + 3; covers coefficients of valuation <= 1."""
    return 2 * valuation(4, p) + 3


@lru_cache(maxsize=None)
def _square_tables(p: int, k: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    m = p**k
    x = np.arange(m, dtype=np.int64)
    sq = (x * x) % m
    unit = (x % p) != 0
    any_sq = np.zeros(m, dtype=bool)
    any_sq[sq] = True
    unit_sq = np.zeros(m, dtype=bool)
    unit_sq[sq[unit]] = True
    return sq, unit, np.stack([any_sq, unit_sq])


def _value_flags(coef: int, p: int, k: int) -> dict[int, set[bool]]:
    """Map residue of coef*x^2 mod p^k to the set of 'x is a unit' flags."""
    m = p**k
    sq, unit, _ = _square_tables(p, k)
    vals = (coef % m) * sq % m
    out: dict[int, set[bool]] = {}
    for v, u in zip(vals.tolist(), unit.tolist()):
        out.setdefault(v, set()).add(u)
    return out


def isotropic_bruteforce(coefs: list[int], p: int) -> bool:
    """Whether sum coef_i x_i^2 = 0 has a primitive solution mod p^k.

    The coefficients must be p-integral of valuation at most 1; at the
    Hensel precision such a solution lifts to Z_p.
    """
    k = hensel_precision(p)
    m = p**k
    reach: dict[int, set[bool]] = {0: {False}}
    for c in coefs:
        vf = _value_flags(c, p, k)
        nxt: dict[int, set[bool]] = {}
        for s, flags in reach.items():
            for v, uflags in vf.items():
                t = (s + v) % m
                bucket = nxt.setdefault(t, set())
                for f in flags:
                    for g in uflags:
                        bucket.add(f or g)
        reach = nxt
    return True in reach.get(0, set())


def hilbert_bruteforce(a: SquareClass, b: SquareClass) -> int:
    """+1 iff z^2 = a x^2 + b y^2 has a primitive solution mod p^k."""
    p = a.p
    k = hensel_precision(p)
    m = p**k
    sq, unit, tables = _square_tables(p, k)
    any_sq, unit_sq = tables
    ax = (a.rep % m) * sq % m
    by = (b.rep % m) * sq % m
    s = (ax[:, None] + by[None, :]) % m
    xy_unit = unit[:, None] | unit[None, :]
    ok = (any_sq[s] & xy_unit) | unit_sq[s]
    return 1 if bool(ok.any()) else -1


def classes_by_enumeration(d: int, p: int) -> dict[SquareClass, set[int]]:
    """Enumerate every diagonal form of dim d; group Hasse values by discriminant.

    Invariants are recomputed here with the brute-force Hilbert symbol so the
    count is independent of the closed formulas.
    """
    classes = all_square_classes(p)
    hil = {(a, b): hilbert_bruteforce(a, b) for a in classes for b in classes}
    out: dict[SquareClass, set[int]] = {}
    one = classes[0]
    minus_one_pow = _reduce((-1) ** (d // 2), p)
    for diag in itertools.combinations_with_replacement(classes, d):
        det = one
        for a in diag:
            det = det * a
        h = 1
        for a, b in itertools.combinations(diag, 2):
            h *= hil[a, b]
        out.setdefault(minus_one_pow * det, set()).add(h)
    return out


def _reduce(x: int, p: int) -> SquareClass:
    from .padic import square_class

    return square_class(x, p)


def component_group_bruteforce(
    dims: list[int], mults: list[int], ambient: str
) -> tuple[int, tuple[int, ...]]:
    """Order of the sign group of the centralizer and the image of -1.

    ``dims``/``mults`` describe the self-dual constituents U_l (x) V_N whose
    centralizer factor carries a determinant sign (orthogonal multiplicity
    spaces). An element picks a determinant sign per constituent and is
    realised by a diagonal matrix; it lies in the special group iff the
    determinant of the assembled matrix is 1 (for the orthogonal ambient).
    """
    n = len(dims)
    members = []
    for signs in itertools.product((1, -1), repeat=n):
        blocks = []
        for s, dim, l in zip(signs, dims, mults):
            x = np.eye(l)
            x[0, 0] = s
            blocks.append(np.kron(x, np.eye(dim)))
        total = _block_diag(blocks)
        if ambient == "symp" or round(np.linalg.det(total)) == 1:
            members.append(tuple(0 if s == 1 else 1 for s in signs))
    minus_one = []
    for dim, l in zip(dims, mults):
        # -1 acts on U_l by -1, whose determinant is (-1)^l
        minus_one.append(int(round(np.linalg.det(-np.eye(l)))) == -1)
    return len(members), tuple(int(b) for b in minus_one)


def _block_diag(blocks: list[np.ndarray]) -> np.ndarray:
    if not blocks:
        return np.eye(0)
    size = sum(b.shape[0] for b in blocks)
    out = np.zeros((size, size))
    i = 0
    for b in blocks:
        k = b.shape[0]
        out[i : i + k, i : i + k] = b
        i += k
    return out
