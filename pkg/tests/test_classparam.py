import random
from fractions import Fraction

import pytest

from instances import rand_regular_xi
from localgp.classparam import (
    admissible_coset_even,
    admissible_coset_odd,
    build_gl_form,
    build_qxic,
    coset_label,
    neg_xi,
    other_coset,
)
from localgp.errors import DomainError
from localgp.padic import all_square_classes, square_class
from localgp.quadspace import QuadraticSpace, classify, hyperbolic, is_isomorphic
from localgp.xi import (
    GammaElement,
    QuadAlgebraElement,
    XiFamily,
    c_one,
    coset_reps,
    enumerate_c,
    enumerate_gamma,
    norm_one_from,
    split_entry,
)


def test_build_qxic_examples():
    p = 5
    xi = XiFamily(p, (split_entry(3),))
    assert is_isomorphic(build_qxic(xi, {}), hyperbolic(1, p))
    xi = XiFamily(p, (norm_one_from(2, 1, 1),))
    assert build_qxic(xi, {0: 1}) == QuadraticSpace.from_rationals([2, -4], p)


def test_qxic_disc_is_delta_xi():
    rng = random.Random(1)
    for _ in range(50):
        p = rng.choice((2, 3, 5))
        xi = rand_regular_xi(rng, p)
        for c in enumerate_c(xi):
            assert build_qxic(xi, c).disc == xi.delta


def test_qxic_depends_only_on_signs():
    rng = random.Random(2)
    for _ in range(50):
        p = rng.choice((2, 3, 5))
        xi = rand_regular_xi(rng, p)
        for c in enumerate_c(xi):
            reps = coset_reps(c, xi)
            moved = dict(reps)
            for i in xi.istar:
                z = QuadAlgebraElement.field_elt(xi.entries[i].delta, rng.randint(1, 5), rng.randint(0, 5))
                moved[i] *= z.norm()
            assert is_isomorphic(build_qxic(xi, moved), build_qxic(xi, c))


def test_empty_field_set():
    p = 3
    xi = XiFamily(p, (split_entry(2),))
    assert admissible_coset_even(hyperbolic(1, p), xi) == enumerate_c(xi)
    qp = hyperbolic(1, p) + QuadraticSpace.from_rationals([2], p)
    coset, line = admissible_coset_odd(qp, xi)
    assert coset == enumerate_c(xi) and line.diag == (square_class(2, p),)
    with pytest.raises(DomainError):
        admissible_coset_odd(classify(3, qp.disc, p)[1], xi)


def test_two_field_entries_at_p3():
    p = 3
    xi = XiFamily(p, (norm_one_from(2, 1, 1), norm_one_from(3, 1, 1)))
    assert xi.is_regular() and len(xi.istar) == 2
    for delta in all_square_classes(p):
        forms = classify(5, delta, p)
        cosets = [admissible_coset_odd(q, xi)[0] for q in forms]
        assert all(len(c) == 2 for c in cosets)
        assert set(cosets[0]).isdisjoint(cosets[1])
        assert sorted(map(str, cosets[0] + cosets[1])) == sorted(map(str, enumerate_c(xi)))


def test_coset_law_even_and_odd():
    rng = random.Random(3)
    checked = 0
    while checked < 40:
        p = rng.choice((2, 3, 5))
        xi = rand_regular_xi(rng, p, 3, min_field=1)
        forms = classify(xi.d, xi.delta, p)
        cosets = [admissible_coset_even(q, xi) for q in forms]
        assert len(cosets) == 2
        assert other_coset(cosets[0], xi) == cosets[1]
        assert coset_label(cosets[0]) == -coset_label(cosets[1])
        c1 = c_one(xi)
        assert sorted(map(str, [a * cosets[0][0] for a in c1])) == sorted(map(str, cosets[0]))
        checked += 1


def test_neg_xi():
    rng = random.Random(4)
    for _ in range(30):
        p = rng.choice((2, 3, 5))
        xi = rand_regular_xi(rng, p)
        n = neg_xi(xi)
        assert neg_xi(n) == xi
        assert n.delta == xi.delta
        assert n.is_regular() == xi.is_regular()


def test_gl_form_blocks():
    p = 5
    t = Fraction(3)
    xi = XiFamily(p, (split_entry(t),))
    form = build_gl_form(xi, GammaElement(()))
    assert form.blocks == (((0, 1), (t, 0)),)
    e = norm_one_from(2, 1, 1)
    xi = XiFamily(p, (e, split_entry(t)))
    for g in enumerate_gamma(xi, square_class(3, p)):
        form = build_gl_form(xi, g)
        assert len(form.blocks) == 3 and form.blocks[-1] == ((square_class(3, p).rep,),)
        assert len(form.matrix()) == 5
    # gamma with tau(gamma) = gamma gives a symmetric block
    xi = XiFamily(p, (norm_one_from(2, 0, 1),))
    g = GammaElement(((0, QuadAlgebraElement.field_elt(2, 0, 1)),))
    g.check(xi)
    blk = build_gl_form(xi, g).blocks[0]
    assert blk[0][1] == -blk[1][0] or blk[0][1] == blk[1][0]
