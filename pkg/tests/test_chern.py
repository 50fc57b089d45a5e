import json

import pytest
from hypothesis import given, strategies as st

from monadlab import (GF, BettiTable, ChernPolynomial, CohomologyTable, DiffSummand, ExteriorMatrix,
                      Monad, SurfaceInvariants, betti_table, chern_diff_bundle, chern_from_betti,
                      chern_of_monad, chern_twist, cohomology_table, double_point_residual,
                      expand_to_modules, minimal_free_resolution, riemann_roch_chi)
from monadlab import corpus
from monadlab.chern import (COMPUTED, FORCED, RESIDUAL, UNKNOWN, CohomologyTableError, chi_line,
                            solve_k2)
from monadlab.exterior import parse_exterior

F = GF()
CONIC = SurfaceInvariants(d=8, pi=5, q=1, pg=0, K2=-8)


def series_inverse_of_one_plus_h():
    # (1 + h)^(-1) = 1 - h + h^2 - h^3 + h^4 in Z[h]/(h^5)
    return [1, -1, 1, -1, 1]


def test_diff_bundle_classes():
    assert chern_diff_bundle(0) == ChernPolynomial(1)
    assert chern_diff_bundle(4) == ChernPolynomial.line(-1)
    c1 = chern_diff_bundle(1)
    assert c1.rank == 4 and c1.total == series_inverse_of_one_plus_h()
    assert c1.to_string() == "1 - h + h^2 - h^3 + h^4"
    assert [chern_diff_bundle(i).rank for i in range(5)] == [1, 4, 6, 4, 1]
    with pytest.raises(ValueError):
        chern_diff_bundle(5)


def test_diff_bundle_classes_from_koszul_resolutions(Rp):
    # H^0_* Omega^i(i) is resolved by the tail of the Koszul complex
    from monadlab import ModulePresentation, koszul_matrix, syzygies
    for i in range(1, 4):
        K = koszul_matrix(i + 1, 4, Rp)
        P = ModulePresentation(syzygies(K), saturated=True)
        B = betti_table(minimal_free_resolution(P)).shift(-i)
        assert chern_from_betti(B) == chern_diff_bundle(i)


def test_twist_examples():
    G = ChernPolynomial(5, [-1, 2, -2, -3])
    assert chern_twist(G, 0) == G
    assert chern_twist(ChernPolynomial.line(-1), 1) == ChernPolynomial(1)
    assert chern_twist(G, 1).classes() == (4, 8, 8, 0)
    assert chern_twist(chern_twist(G, 1), -1) == G


def test_betti_examples():
    assert chern_from_betti(BettiTable({(0, 1): 1})) == ChernPolynomial(1, [-1])
    E = corpus.example_bundle("3.4", F).expected["E"]
    assert chern_from_betti(E) == ChernPolynomial(3, [4, 8, 8, 0])
    assert chern_from_betti(corpus.expected_table("G")) == ChernPolynomial(5, [-1, 2, -2, -3])


def test_monad_classes():
    m = corpus.monad_g(F)
    assert chern_of_monad(m) == ChernPolynomial(5, [-1, 2, -2, -3])
    W = Monad(ExteriorMatrix(F, [], [DiffSummand(1)]),
              ExteriorMatrix(F, [DiffSummand(1)], [DiffSummand(0)], [[parse_exterior("e4", F)]]))
    c = chern_of_monad(W)
    assert c.rank == 3 and c.total == chern_diff_bundle(1).total
    O = Monad(ExteriorMatrix(F, [], [DiffSummand(0)]), ExteriorMatrix(F, [DiffSummand(0)], []))
    assert chern_of_monad(O) == ChernPolynomial(1)
    bad = Monad(ExteriorMatrix(F, m.left, m.middle, [[parse_exterior("e4", F)],
                                                     [parse_exterior("e0^e1", F)]]), m.B)
    with pytest.raises(ValueError):
        chern_of_monad(bad)


def test_monad_class_matches_resolution(Rp):
    m = corpus.example_3_4_monad(F)
    B = betti_table(minimal_free_resolution(expand_to_modules(m, Rp)))
    assert chern_from_betti(B) == chern_of_monad(m)


twists = st.lists(st.integers(-4, 4), min_size=1, max_size=4)


@given(twists, twists)
def test_whitney_on_split_resolutions(a, b):
    # 0 <- F0 <- F1 with F0 = sum O(-a), F1 = sum O(-b)
    data = {}
    for t in a:
        data[(0, t)] = data.get((0, t), 0) + 1
    for t in b:
        data[(1, t)] = data.get((1, t), 0) + 1
    c = chern_from_betti(BettiTable(data))
    num = ChernPolynomial(0)
    for t in a:
        num = num * ChernPolynomial.line(-t)
    den = ChernPolynomial(0)
    for t in b:
        den = den * ChernPolynomial.line(-t)
    assert c == num / den
    assert c * den == num


@given(twists, st.integers(-3, 3))
def test_twist_agrees_with_shifting_betti_numbers(a, t):
    B = BettiTable({(0, s): a.count(s) for s in set(a)})
    assert chern_twist(chern_from_betti(B), t) == chern_from_betti(B.shift(-t))


@given(st.lists(st.integers(-5, 5), min_size=4, max_size=4), st.integers(1, 6))
def test_inverse_is_a_two_sided_inverse(cs, r):
    c = ChernPolynomial(r, cs)
    assert c * c.inverse() == ChernPolynomial(0)
    assert c ** 2 == c * c and c ** -1 == c.inverse()


def test_riemann_roch_values():
    assert [riemann_roch_chi(CONIC, m) for m in range(-1, 5)] == [-4, 1, 1, -1, -1, 6]
    assert [chi_line(m) for m in (-5, -4, -1, 0, 1, 2)] == [1, 0, 0, 1, 5, 15]


def test_surface_invariants():
    assert CONIC.HK == 0 and CONIC.chi == 0 and CONIC.N == 3
    with pytest.raises(ValueError):
        SurfaceInvariants(d=8, pi=5, q=1, pg=0, HK=2)


def test_double_point_residuals():
    assert double_point_residual(CONIC) == 0
    assert (CONIC.d + CONIC.HK) // 2 + 1 == CONIC.pi
    assert solve_k2(CONIC) == -8
    veronese = SurfaceInvariants(d=4, pi=0, q=0, pg=0, K2=9)
    assert veronese.HK == -6 and double_point_residual(veronese) == 0
    plane = SurfaceInvariants(d=1, pi=0, q=0, pg=0)
    assert plane.HK == -3 and double_point_residual(plane, K2=9) == 0
    with pytest.raises(ValueError):
        double_point_residual(plane)


def test_conic_bundle_scaffold():
    T = cohomology_table(CONIC)
    assert T.complete()
    nonzero = {k: v for k, v in T.values().items() if v}
    assert nonzero == {(3, -1): 4, (2, 0): 1, (2, 1): 1, (1, 2): 1, (1, 3): 1, (0, 4): 6}
    assert [T.column_chi(m) for m in T.twists()] == [riemann_roch_chi(CONIC, m) for m in T.twists()]
    assert T.tag(3, -1) == FORCED and T.tag(2, 1) == RESIDUAL and T.tag(0, 4) == RESIDUAL
    assert T.tag(1, 4) == FORCED


def test_regular_variant_scaffold():
    inv = SurfaceInvariants(d=8, pi=5, q=0, pg=0)
    T = cohomology_table(inv)
    assert T.value(2, 0) == 0 and T.value(3, -1) == inv.N + 1 == 5
    assert not T.complete() and T.tag(0, 4) == UNKNOWN
    assert "*" in T.render()


def test_scaffold_rejects_impossible_invariants():
    # a surface that is not linearly normal violates the scaffold's forced zeros
    with pytest.raises(CohomologyTableError) as err:
        cohomology_table(SurfaceInvariants(d=10, pi=6, q=0, pg=0))
    assert err.value.cell == (2, 1) and err.value.value < 0


def test_render_uses_empty_boxes():
    T = cohomology_table(CONIC)
    lines = T.render().splitlines()
    row3 = next(l for l in lines if l.startswith("3 |"))
    assert row3.split("|")[1].strip() == "4"
    assert all(cell.strip() == "" for cell in row3.split("|")[2:-1])
    assert "0" not in row3.split("|", 1)[1]


def test_table_json():
    T = cohomology_table(CONIC)
    obj = json.loads(T.to_json())
    assert obj["cells"]["0,4"] == {"value": 6, "tag": RESIDUAL}
    assert obj["window"] == [-1, 4]
    C = CohomologyTable.from_values({(0, 0): 1}, (0, 0))
    assert C.tag(0, 0) == COMPUTED and C.tag(1, 0) == UNKNOWN
    with pytest.raises(CohomologyTableError):
        C.set(1, 0, -1, COMPUTED)
