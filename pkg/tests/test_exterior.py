import random

import pytest
from hypothesis import given, settings, strategies as st

from monadlab import (GF, QQ, BettiTable, DiffSummand, ExteriorElement, ExteriorMatrix, Monad, Ring,
                      betti_table, compose_maps, expand_to_modules, fiberwise_check, koszul_matrix,
                      minimal_free_resolution, syzygies, verify_monad, wedge)
from monadlab import corpus
from monadlab.exterior import Realizer, adjoin_sections, is_zero_map, parse_exterior

F = GF()


def E(text, field=F):
    return parse_exterior(text, field)


def test_wedge_examples():
    e4 = E("e4")
    w = E("e0^e2 + e1^e3")
    assert not wedge(e4, e4)
    assert wedge(w, e4) - wedge(e4, w) == ExteriorElement.zero(F)
    top = wedge(wedge(wedge(wedge(E("e0"), E("e1")), E("e2")), E("e3")), e4)
    assert top.terms == {(0, 1, 2, 3, 4): 1}
    assert wedge(w, w) == E("-2*e0^e1^e2^e3")
    assert E("e1") ^ E("e0") == -E("e0^e1")


def test_parse_exterior():
    assert E("e2^e0") == -E("e0^e2")
    assert E("-2*e4").terms == {(4,): F.convert(-2)}
    assert E("3") == ExteriorElement(F, {(): 3})
    assert E("e0^e0") == ExteriorElement.zero(F)
    assert E("0").to_string() == "0"
    assert E("e1^e3 + e0^e2").to_string() == "e0^e2 + e1^e3"
    for bad in ("e0 e1", "x0", "e0^"):
        with pytest.raises(ValueError):
            E(bad)
    with pytest.raises(ValueError):
        ExteriorElement(F, {(5,): 1})


def test_top_power_is_one_dimensional():
    from itertools import combinations
    assert len(list(combinations(range(5), 5))) == 1
    rng = random.Random(3)
    vecs = [ExteriorElement(F, {(i,): rng.randrange(31991) for i in range(5)}) for _ in range(5)]
    acc = vecs[0]
    for v in vecs[1:]:
        acc = wedge(acc, v)
    assert set(acc.terms) <= {(0, 1, 2, 3, 4)}


subsets_st = st.sets(st.integers(0, 4), max_size=5).map(lambda s: tuple(sorted(s)))


def homogeneous(k):
    return st.dictionaries(st.sets(st.integers(0, 4), min_size=k, max_size=k).map(
        lambda s: tuple(sorted(s))), st.integers(-5, 5), max_size=4).map(
        lambda t: ExteriorElement(F, t))


@given(st.integers(0, 3).flatmap(lambda k: st.tuples(st.just(k), homogeneous(k))),
       st.integers(0, 3).flatmap(lambda k: st.tuples(st.just(k), homogeneous(k))))
def test_graded_anticommutativity(a, b):
    (p, x), (q, y) = a, b
    lhs = wedge(x, y)
    rhs = wedge(y, x)
    assert lhs == (rhs if (p * q) % 2 == 0 else -rhs)


@given(homogeneous(1), homogeneous(2), homogeneous(1))
def test_wedge_associative_and_bilinear(a, b, c):
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))
    assert wedge(a, b + b) == wedge(a, b) + wedge(a, b)
    assert not wedge(a, a)


def summands(*idx):
    return [DiffSummand(i) for i in idx]


def test_diff_summand():
    assert [DiffSummand(i).rank() for i in range(5)] == [1, 4, 6, 4, 1]
    assert DiffSummand(2, 1, 3).rank() == 18
    assert str(DiffSummand(2, 1, 3)) == "3Omega^2(3)"
    with pytest.raises(ValueError):
        DiffSummand(5)


def test_exterior_matrix_validation():
    with pytest.raises(ValueError):
        ExteriorMatrix(F, summands(2), summands(1), [[E("e0^e1")]])
    with pytest.raises(ValueError):
        ExteriorMatrix(F, [DiffSummand(2, 1)], summands(1), [[E("e0")]])
    with pytest.raises(ValueError):
        ExteriorMatrix(F, summands(2), summands(1), [[E("e0"), E("e1")]])


def test_compose_examples():
    m = corpus.monad_g(F)
    comp = compose_maps(m.B, m.A)
    assert comp.shape == (1, 1) and is_zero_map(comp)
    I = ExteriorMatrix.identity(F, m.middle)
    assert compose_maps(I, m.A) == m.A
    A = ExteriorMatrix(F, summands(2), summands(1), [[E("e1")]])
    B = ExteriorMatrix(F, summands(1), summands(0), [[E("e0")]])
    assert compose_maps(B, A).entries[0][0] == E("e0^e1")
    with pytest.raises(ValueError):
        compose_maps(A, A)


def random_map(rng, src, tgt):
    rows = []
    for t in tgt:
        row = []
        for s in src:
            k = s - t
            if k < 0:
                row.append(ExteriorElement.zero(F))
                continue
            from itertools import combinations
            terms = {c: rng.randrange(-3, 4) for c in combinations(range(5), k) if rng.random() < 0.5}
            row.append(ExteriorElement(F, terms))
        rows.append(row)
    return ExteriorMatrix(F, summands(*src), summands(*tgt), rows)


@settings(max_examples=25)
@given(st.integers(0, 10 ** 6))
def test_composition_is_realized_by_matrix_product(seed):
    rng = random.Random(seed)
    idx = lambda: sorted(rng.choices(range(5), k=rng.randint(1, 2)), reverse=True)
    a, b, c = idx(), idx(), idx()
    A, B = random_map(rng, a, b), random_map(rng, b, c)
    rz = Realizer(Ring(5, F))
    assert rz.constant(compose_maps(B, A)) == rz.constant(B) @ rz.constant(A)


def test_koszul_matrices(Rp):
    k1 = koszul_matrix(1, 4, Rp)
    assert k1.shape == (1, 5) and k1.entries[0] == Rp.gens()
    for i in range(1, 5):
        a, b = koszul_matrix(i, 4, Rp), koszul_matrix(i + 1, 4, Rp)
        assert (a @ b).is_zero()
        # exactness: the kernel of kappa_i is generated by the columns of kappa_{i+1}
        from math import comb
        assert syzygies(a).ncols == comb(5, i + 1)
    assert koszul_matrix(5, 4, Rp).shape == (5, 1)
    R3 = Ring(4, F)
    assert (koszul_matrix(2, 3, R3) @ koszul_matrix(3, 3, R3)).is_zero()
    with pytest.raises(ValueError):
        koszul_matrix(0, 4, Rp)
    with pytest.raises(ValueError):
        koszul_matrix(1, 3, Rp)


def test_fiberwise_checks(Rp):
    m = corpus.monad_g(F)
    assert fiberwise_check(m.A, "injective", Rp)
    assert fiberwise_check(m.B, "surjective", Rp)
    e4 = ExteriorMatrix(F, summands(1), summands(0), [[E("e4")]])
    assert not fiberwise_check(e4, "surjective", Rp)
    half = ExteriorMatrix(F, summands(3), summands(2, 1), [[E("e4")], [E("0")]])
    assert not fiberwise_check(half, "injective", Rp)
    omega = ExteriorMatrix(F, summands(2), summands(0), [[E("e0^e2 + e1^e3")]])
    assert fiberwise_check(omega, "surjective", Rp)
    with pytest.raises(ValueError):
        fiberwise_check(e4, "bijective", Rp)


def test_exact_certificate_decides_without_samples(Rp):
    e4 = ExteriorMatrix(F, summands(1), summands(0), [[E("e4")]])
    assert not fiberwise_check(e4, "surjective", Rp, samples=0)
    m = corpus.monad_g(F)
    assert fiberwise_check(m.A, "injective", Rp, samples=0)


def test_verify_monad_failures(Rp):
    m = corpus.monad_g(F)
    good = verify_monad(m, Rp)
    assert good.ok and good.rank == 5
    no_e4 = Monad(m.A, ExteriorMatrix(F, m.middle, m.right, [[E("e0^e2 + e1^e3"), E("0")]]))
    rep = verify_monad(no_e4, Rp)
    assert not rep.composition_zero and not rep.ok and rep.chern is None
    bad = Monad(ExteriorMatrix(F, m.left, m.middle, [[E("e4")], [E("e0^e1")]]), m.B)
    rep = verify_monad(bad, Rp)
    assert not rep.composition_zero and "B o A is nonzero" in rep.notes
    assert rep.to_dict()["composition_zero"] is False


def test_expand_trivial_monads(Rp):
    O = Monad(ExteriorMatrix(F, [], summands(0)), ExteriorMatrix(F, summands(0), []))
    assert betti_table(minimal_free_resolution(expand_to_modules(O, Rp))) == BettiTable({(0, 0): 1})
    W = Monad(ExteriorMatrix(F, [], summands(1)), ExteriorMatrix(F, summands(1), []))
    B = betti_table(minimal_free_resolution(expand_to_modules(W, Rp)))
    assert B.summary() == "10(-1) | 10(-2) | 5(-3) | 1(-4)"
    assert B.alternating_rank() == 4


def test_expand_rejects_non_monads(Rp):
    m = corpus.monad_g(F)
    bad = Monad(ExteriorMatrix(F, m.left, m.middle, [[E("e4")], [E("e0^e1")]]), m.B)
    with pytest.raises(ValueError):
        expand_to_modules(bad, Rp)


def test_monad_text_round_trip():
    for m in (corpus.monad_g(F), corpus.example_3_4_monad(F)):
        again = Monad.from_text(m.to_text(), F)
        assert again.to_text() == m.to_text()
        assert again.A == m.A and again.B == m.B
    with pytest.raises(ValueError):
        Monad.from_text("monad X\nleft\nomega 3 twist 0\n", F)


def test_monad_over_the_rationals():
    m = corpus.monad_g(QQ)
    rep = verify_monad(m, Ring(5, QQ))
    assert rep.ok and rep.chern.classes() == (-1, 2, -2, -3)


def test_adjoin_sections_shape():
    m = corpus.monad_g(F)
    S = corpus.sigma_pair(F)
    E1 = adjoin_sections(m, S, "E(-1)")
    assert E1.expected_rank() == 3
    with pytest.raises(ValueError):
        adjoin_sections(m, ExteriorMatrix(F, summands(4), summands(2), [[E("e0^e1")]]))
