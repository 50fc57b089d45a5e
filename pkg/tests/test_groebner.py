import random

import pytest
from hypothesis import given, strategies as st

from monadlab import (GF, FreeModule, GradedMatrix, Ideal, Ring, empty_projective_support,
                      groebner_basis, ideal_quotient, jacobian_singular_ideal, maximal_minors,
                      normal_form)
from monadlab.groebner import HomogeneityError, groebner_basis_any
from monadlab.ring import monomials_of_degree, parse_polynomial

import oracles


def P(R, text):
    return parse_polynomial(text, R)


def test_normal_form_examples(Rq):
    B = groebner_basis(Ideal(Rq, [P(Rq, "x0")]))
    assert normal_form(P(Rq, "x0^2"), B) == Rq.zero()
    assert normal_form(P(Rq, "x1"), B) == P(Rq, "x1")
    assert normal_form(P(Rq, "x0*x1 + x2^2"), B) == P(Rq, "x2^2")


def test_monomial_ideal_is_its_own_basis(Rq):
    B = groebner_basis(Ideal(Rq, [P(Rq, "x0"), P(Rq, "x1")]))
    assert sorted(g.to_string() for g in B) == ["x0", "x1"]


def test_one_buchberger_step(Rq):
    B = groebner_basis(Ideal(Rq, [P(Rq, "x0^2 - x1^2"), P(Rq, "x0^2 + x1^2")]))
    assert sorted(str(m) for m in B.leading_terms) == ["x0^2", "x1^2"]
    assert all(g.leading_coefficient() == 1 for g in B)


def test_unit_ideal_through_internal_path(Rq):
    B = groebner_basis_any(Rq, [P(Rq, "x0"), P(Rq, "x0 + 1")])
    assert B.is_unit()
    assert [g.to_string() for g in B] == ["1"]


def test_public_path_rejects_inhomogeneous(Rq):
    with pytest.raises(HomogeneityError):
        Ideal(Rq, [P(Rq, "x0 + 1")])


def test_zero_ideal_has_empty_basis(Rq):
    assert len(groebner_basis(Ideal(Rq, [Rq.zero()]))) == 0


def test_glex_order_changes_the_basis(Rq):
    I = Ideal(Rq, [P(Rq, "x1^2 - x0*x2"), P(Rq, "x0*x1 - x2^2")])
    a = groebner_basis(I)
    b = groebner_basis(I, order="glex")
    assert a.s_pairs_reduce_to_zero() and b.s_pairs_reduce_to_zero()
    assert [str(m) for m in a.leading_terms] != [str(m) for m in b.leading_terms]


def test_quotient_examples(Rq):
    I = Ideal(Rq, [P(Rq, "x0*x1")])
    Q = ideal_quotient(I, P(Rq, "x0"))
    assert [g.to_string() for g in groebner_basis(Q)] == ["x1"]
    Q = ideal_quotient(Ideal(Rq, [P(Rq, "x0"), P(Rq, "x1^2")]), P(Rq, "x0*x2"))
    assert groebner_basis(Q).is_unit()
    with pytest.raises(ValueError):
        ideal_quotient(I, Rq.zero())


def test_minors(Rq):
    x = Rq.gens()
    M = GradedMatrix(Rq, FreeModule([1, 1, 1]), FreeModule([0, 0]),
                     [[x[0], x[1], x[2]], [x[1], x[2], x[3]]])
    I = maximal_minors(M, 2)
    assert len(I) == 3
    assert sorted(g.to_string() for g in I) == sorted(
        (P(Rq, a)).to_string() for a in ("x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"))
    with pytest.raises(ValueError):
        maximal_minors(M, 3)


def test_empty_support_examples(Rp):
    assert empty_projective_support(Ideal(Rp, Rp.gens()))
    assert not empty_projective_support(Ideal(Rp, Rp.gens()[:4]))
    assert empty_projective_support(Ideal(Rp, [g ** 3 for g in Rp.gens()]))
    # a complete intersection of 5 general quadrics is empty; 4 of them are not
    rng = random.Random(1)
    quads = [sum((Rp.monomial(e).scale(rng.randrange(31991)) for e in monomials_of_degree(5, 2)),
                 Rp.zero()) for _ in range(5)]
    assert empty_projective_support(Ideal(Rp, quads))
    assert not empty_projective_support(Ideal(Rp, quads[:4]))


def test_jacobian_criterion(Rp):
    smooth = Ideal(Rp, [P(Rp, "x0^2 + x1^2 + x2^2 + x3^2 + x4^2")])
    assert empty_projective_support(jacobian_singular_ideal(smooth, 1))
    cone = Ideal(Rp, [P(Rp, "x0^2 + x1^2 + x2^2")])
    assert not empty_projective_support(jacobian_singular_ideal(cone, 1))
    # the rational normal quartic in P^4 is smooth of codimension 3
    x = Rp.gens()
    M = GradedMatrix(Rp, FreeModule([1] * 4), FreeModule([0, 0]), [x[:4], x[1:]])
    assert empty_projective_support(jacobian_singular_ideal(maximal_minors(M, 2), 3))
    with pytest.raises(ValueError):
        jacobian_singular_ideal(cone, 0)


exps3 = st.tuples(*[st.integers(0, 3)] * 3)


@given(st.lists(exps3.filter(any), min_size=1, max_size=5))
def test_support_of_monomial_ideals_matches_brute_force(gens):
    R = Ring(3, GF())
    I = Ideal(R, [R.monomial(e) for e in gens])
    brute = not oracles.monomial_ideal_zero_set_01(gens, 3)
    assert empty_projective_support(I) == brute
    assert brute == oracles.monomial_ideal_vanishes_only_at_origin(gens, 3)


def random_form(R, d, rng, density=0.6):
    f = R.zero()
    for e in monomials_of_degree(R.nvars, d):
        if rng.random() < density:
            f = f + R.monomial(e).scale(rng.randrange(-3, 4))
    return f


ideal_seeds = st.tuples(st.integers(0, 10 ** 6), st.integers(1, 4))


@given(ideal_seeds)
def test_basis_properties(args):
    seed, k = args
    rng = random.Random(seed)
    R = Ring(4, GF())
    gens = [random_form(R, rng.randint(1, 3), rng) for _ in range(k)]
    I = Ideal(R, gens)
    B = groebner_basis(I)
    assert B.s_pairs_reduce_to_zero()
    assert all(normal_form(g, B) == R.zero() for g in I)
    assert all(g.leading_coefficient() == 1 for g in B)
    lts = B.leading_terms
    assert not any(a.divides(b) for i, a in enumerate(lts) for j, b in enumerate(lts) if i != j)
    assert [g.to_string() for g in groebner_basis(I)] == [g.to_string() for g in B]


def dim_in_degree(B, d):
    """dim of the ideal with Groebner basis B in degree d, via standard monomials."""
    n = B.ring.nvars
    mons = monomials_of_degree(n, d)
    standard = [e for e in mons if not any(m.divides(type(m)(e)) for m in B.leading_terms)]
    return len(mons) - len(standard)


@given(ideal_seeds)
def test_quotient_matches_linear_algebra(args):
    seed, k = args
    rng = random.Random(seed)
    R = Ring(3, GF())
    gens = [g for g in (random_form(R, rng.randint(1, 3), rng) for _ in range(k)) if g]
    f = random_form(R, rng.randint(1, 2), rng, density=1.0)
    if not gens or not f:
        return
    I = Ideal(R, gens)
    Q = ideal_quotient(I, f)
    BI, BQ = groebner_basis(I), groebner_basis(Q)
    assert all(normal_form(g, BQ) == R.zero() for g in I)
    assert all(normal_form(g * f, BI) == R.zero() for g in Q)
    e = f.homogeneous_degree()
    for d in range(0, 4):
        idx = {m: i for i, m in enumerate(oracles.monomials(3, d + e))}
        I_rows = []
        for g in gens:
            for m in oracles.monomials(3, d + e - g.homogeneous_degree()):
                I_rows.append({idx[tuple(a + b for a, b in zip(x, m))]: c for x, c in g.terms.items()})
        images = [{idx[tuple(a + b for a, b in zip(x, m))]: c for x, c in f.terms.items()}
                  for m in oracles.monomials(3, d)]
        kernel = len(images) - (oracles.rank_mod_p(images + I_rows) - oracles.rank_mod_p(I_rows))
        assert dim_in_degree(BQ, d) == kernel
