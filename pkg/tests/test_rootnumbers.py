import cmath
import math
from fractions import Fraction

import pytest

from localgp.errors import DomainError, ValidationError
from localgp.padic import all_square_classes, hilbert, square_class
from localgp.rootnumbers import (
    AbelianIrred,
    EpsValue,
    MultChar,
    RootNumberTable,
    abelian_pair_eps,
    characters_of_level,
    gauss_eps,
    gauss_sum,
    oracle_table,
    pair_eps,
    snap,
    sp_correction,
    table_from_json,
    validate_table,
)
from localgp.wdparam import IrredDescriptor


def ramified(p, a):
    return [chi for chi in characters_of_level(p, a) if chi.conductor == a]


def test_character_counts():
    assert len(characters_of_level(3, 1)) == 2
    assert len(characters_of_level(5, 2)) == 20
    assert len(characters_of_level(2, 3)) == 4
    assert len(ramified(5, 1)) == 3


def test_quadratic_character_is_hilbert_symbol():
    for p in (2, 3, 5):
        for d in all_square_classes(p):
            chi = MultChar.quadratic(d)
            assert chi.square_class() == d
            for x in (-1, 2, 3, 5, 6, 7, Fraction(1, 10), 12):
                if x % p or isinstance(x, Fraction):
                    assert chi.sign(x) == hilbert(d, x, p)
    assert MultChar.quadratic(square_class(1, 5)) == MultChar.trivial(5)


def test_character_is_multiplicative():
    for chi in characters_of_level(5, 2, Fraction(1, 3)):
        for x, y in ((2, 3), (7, 11), (5, Fraction(1, 3)), (-1, -1)):
            assert chi.turn(x * y) == (chi.turn(x) + chi.turn(y)) % 1


@pytest.mark.parametrize("p,a", [(3, 1), (3, 2), (5, 1), (5, 2), (2, 2), (2, 3)])
def test_gauss_sum_magnitude(p, a):
    for chi in ramified(p, a):
        assert abs(abs(gauss_sum(chi)) - p ** (a / 2)) < 1e-9


@pytest.mark.parametrize("p,a", [(3, 1), (3, 2), (5, 1), (5, 2), (2, 2), (2, 3)])
def test_eps_times_inverse_is_chi_of_minus_one(p, a):
    for chi in ramified(p, a):
        prod = gauss_eps(chi) * gauss_eps(chi.inverse())
        assert prod.turn is not None and prod.turn == chi.turn(-1)


def test_quadratic_eps_examples():
    # Legendre symbol mod 3: the Gauss sum is +-i sqrt(3)
    chi = MultChar.quadratic(square_class(3, 3))
    assert chi.conductor == 1
    g = gauss_sum(chi)
    assert abs(g - 1j * math.sqrt(3)) < 1e-9 or abs(g + 1j * math.sqrt(3)) < 1e-9
    chi5 = MultChar.quadratic(square_class(5, 5))
    assert gauss_eps(chi5).sign == 1
    assert gauss_eps(MultChar.unramified(5, Fraction(1, 2))).sign == 1


def test_change_of_additive_character():
    # eps(chi, psi(alpha .)) = chi(alpha) eps(chi, psi)
    for chi in ramified(5, 1) + ramified(3, 2):
        base = gauss_eps(chi)
        for alpha in (2, 7, 11):
            twisted = gauss_eps(chi, alpha=alpha)
            assert twisted == base * EpsValue.exact(chi.turn(alpha))
    # conductor shift: eps(chi, psi_c) = chi(p)^c eps(chi, psi_0) for unramified chi
    chi = MultChar.unramified(3, Fraction(1, 4))
    assert gauss_eps(chi, psi_conductor=2) == EpsValue.exact(Fraction(-1, 2))
    with pytest.raises(DomainError):
        gauss_eps(chi, alpha=3)


def test_sp_examples():
    triv = MultChar.trivial(5)
    assert sp_correction(triv, 1).sign == 1
    assert sp_correction(triv, 2).sign == -1
    assert sp_correction(triv, 3).sign == 1
    unr = MultChar.unramified(5, Fraction(1, 2))
    assert sp_correction(unr, 2).sign == 1
    ram = MultChar.quadratic(square_class(2, 5))
    assert sp_correction(ram, 3) == gauss_eps(ram) ** 3
    with pytest.raises(DomainError):
        sp_correction(triv, 0)


def test_pair_symmetry():
    for p in (3, 5):
        chars = characters_of_level(p, 1)
        for a in chars:
            for b in chars:
                assert pair_eps(a, b) == pair_eps(b, a)
    classes = all_square_classes(3)
    for da in classes:
        for db in classes:
            a = AbelianIrred("a", MultChar.quadratic(da), 1)
            b = AbelianIrred("b", MultChar.quadratic(db), 2)
            assert abelian_pair_eps(a, b) == abelian_pair_eps(b, a)


def test_snap():
    assert snap(cmath.exp(2j * math.pi / 8)) == Fraction(1, 8)
    assert snap(2.0) is None
    assert snap(cmath.exp(2j * math.pi * 0.123456789)) is None
    v = EpsValue.snapped(complex(-1, 1e-12))
    assert v.is_sign() and v.sign == -1


def descs(p):
    classes = all_square_classes(p)
    side = [AbelianIrred(f"a{k}", MultChar.quadratic(d), 1) for k, d in enumerate(classes)]
    side_p = [AbelianIrred(f"b{k}", MultChar.quadratic(d), 2) for k, d in enumerate(classes)]
    return side, side_p


@pytest.mark.parametrize("p", [2, 3, 5])
def test_oracle_table_validates(p):
    side, side_p = descs(p)
    table = oracle_table(side, side_p)
    assert len(table.entries) == len(side) * len(side_p)
    assert validate_table(table, [a.descriptor() for a in side], [b.descriptor() for b in side_p]) == []


def test_validate_table_rejects():
    side, side_p = descs(3)
    d, dp = [a.descriptor() for a in side], [b.descriptor() for b in side_p]
    assert validate_table(RootNumberTable(), d, dp) == []
    bad = RootNumberTable(0, {("a0", "b0"): EpsValue.exact(Fraction(1, 4))})
    assert validate_table(bad, d, dp)
    unknown = RootNumberTable(0, {("zz", "b0"): EpsValue.exact(0)})
    assert "unknown" in validate_table(unknown, d, dp)[0]
    # E-normalization for an orthogonal constituent with (disc, -1) = -1
    o = IrredDescriptor.orth("o", 1, square_class(-1, 2))
    s = IrredDescriptor.symp("s", 2)
    t = RootNumberTable(0, {("o", "s"): EpsValue.exact(0)})
    assert validate_table(t, [o], [s]) == []


def test_flipped_table_changes_entry_only():
    side, side_p = descs(5)
    table = oracle_table(side, side_p)
    flipped = dict(table.entries)
    flipped[("a1", "b1")] = flipped[("a1", "b1")] * EpsValue.exact(Fraction(1, 2))
    t2 = RootNumberTable(0, flipped)
    assert t2.get("a1", "b1") != table.get("a1", "b1")
    assert validate_table(t2, [a.descriptor() for a in side], [b.descriptor() for b in side_p]) == []


def test_table_json_round_trip():
    side, side_p = descs(3)
    table = oracle_table(side, side_p, psi_conductor=1)
    back = table_from_json(table.to_json())
    assert back == table


def test_table_from_json_errors():
    with pytest.raises(ValidationError) as err:
        table_from_json([])
    assert err.value.field == "table"
    with pytest.raises(ValidationError) as err:
        table_from_json({"entries": [{"i": "a"}]})
    assert err.value.field == "table.entries[0]"
    with pytest.raises(ValidationError) as err:
        table_from_json({"psi_conductor": 0, "entries": [{"i": "a", "iprime": "b", "eps": 1, "psi_conductor": 2}]})
    assert err.value.field.endswith("psi_conductor")
    with pytest.raises(ValidationError):
        table_from_json({"entries": [{"i": "a", "iprime": "b", "eps": 1}, {"i": "a", "iprime": "b", "eps": -1}]})
    with pytest.raises(ValidationError):
        table_from_json({"entries": [{"i": "a", "iprime": "b", "eps": True}]})
    with pytest.raises(ValidationError) as err:
        RootNumberTable().get("a", "b")
    assert err.value.field == "table"
