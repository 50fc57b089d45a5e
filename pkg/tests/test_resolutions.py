import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from monadlab import (GF, QQ, BettiTable, FreeModule, GradedMatrix, ModulePresentation, Ring,
                      betti_table, maximal_minors, ext_dual_module, free_resolution, graded_piece_dim,
                      hilbert_polynomial, minimal_free_resolution, minimize_resolution,
                      sheaf_cohomology_dim, syzygies)
from monadlab.modules import Lifter
from monadlab.resolutions import (LocalDuality, NotMinimalError, ResolutionChain,
                                  hilbert_function_from_betti)
from monadlab.ring import monomials_of_degree

import oracles


def maximal_ideal(R):
    return ModulePresentation.quotient_ring(R, R.gens())


def test_syzygies_of_a_row(Rq):
    x = Rq.gens()
    M = GradedMatrix(Rq, FreeModule([1, 1]), FreeModule([0]), [[x[0], x[1]]])
    S = syzygies(M)
    assert S.shape == (2, 1) and list(S.source.twists) == [2]
    assert (M @ S).is_zero()
    assert {S.entry(0, 0), S.entry(1, 0)} in ({x[1], -x[0]}, {-x[1], x[0]})


def test_syzygies_of_identity_are_zero(Rq):
    I = GradedMatrix.identity(Rq, FreeModule([0, 1, 3]))
    assert syzygies(I).ncols == 0


def test_lifter(Rq):
    x = Rq.gens()
    M = GradedMatrix(Rq, FreeModule([1, 1]), FreeModule([0]), [[x[0], x[1]]])
    L = Lifter(M)
    y = L.lift([x[0] * x[2] + x[1] ** 2])
    assert y is not None and x[0] * y[0] + x[1] * y[1] == x[0] * x[2] + x[1] ** 2
    assert L.lift([x[2]]) is None


def test_koszul_resolution_of_the_residue_field(Rp):
    C = minimal_free_resolution(maximal_ideal(Rp))
    assert C.ranks() == [1, 5, 10, 10, 5, 1]
    B = betti_table(C)
    assert all(B[(i, i)] == comb(5, i) for i in range(6))
    assert B.summary() == "1 | 5(-1) | 10(-2) | 10(-3) | 5(-4) | 1(-5)"
    assert C.composites_vanish() and C.length == 5


def test_minimize_cancels_a_trivial_summand(Rp):
    C = minimal_free_resolution(maximal_ideal(Rp))
    d1, d2, d3 = C.maps[:3]
    pad = FreeModule([2])
    e1 = d1.hstack(GradedMatrix.zero(Rp, pad, d1.target))
    e2 = d2.direct_sum(GradedMatrix.identity(Rp, pad).scale(Rp.field(3)))
    e3 = d3.vstack(GradedMatrix.zero(Rp, d3.source, pad))
    padded = ResolutionChain(Rp, [e1, e2, e3] + C.maps[3:])
    assert padded.composites_vanish() and not padded.is_minimal()
    with pytest.raises(NotMinimalError):
        betti_table(padded)
    M = minimize_resolution(padded)
    assert M.is_minimal() and M.composites_vanish()
    assert betti_table(M) == betti_table(C)


def test_hilbert_polynomials(Rq):
    hp = hilbert_polynomial(BettiTable({(0, 0): 1}))
    assert [hp(m) for m in range(6)] == [comb(m + 4, 4) for m in range(6)]
    B = betti_table(minimal_free_resolution(ModulePresentation.quotient_ring(Rq, [Rq.var(0)])))
    hp = hilbert_polynomial(B)
    assert [hp(m) for m in range(6)] == [comb(m + 3, 3) for m in range(6)]
    assert str(hilbert_polynomial(betti_table(minimal_free_resolution(maximal_ideal(Rq))))) == "0"


def test_graded_piece_dim(Rq):
    R_free = ModulePresentation.free(Rq, FreeModule([0]))
    assert graded_piece_dim(R_free, 2) == 15
    assert graded_piece_dim(R_free, -1) == 0
    assert graded_piece_dim(ModulePresentation.quotient_ring(Rq, [Rq.var(0)]), 1) == 4
    assert graded_piece_dim(maximal_ideal(Rq), 0) == 1
    assert graded_piece_dim(maximal_ideal(Rq), 1) == 0


def test_ext_of_free_and_residue_field(Rp):
    E0 = ext_dual_module(ModulePresentation.free(Rp, FreeModule([0])), 0)
    assert list(E0.generators.twists) == [5] and E0.matrix.ncols == 0
    k = maximal_ideal(Rp)
    for j in range(5):
        assert all(graded_piece_dim(ext_dual_module(k, j), d) == 0 for d in range(-6, 3))
    E5 = ext_dual_module(k, 5)
    assert [graded_piece_dim(E5, d) for d in range(-2, 3)] == [0, 0, 1, 0, 0]
    with pytest.raises(ValueError):
        ext_dual_module(k, -1)


def test_line_bundle_cohomology(Rp):
    O = ModulePresentation.free(Rp, FreeModule([0]), saturated=True)
    ld = LocalDuality(O)
    assert ld.h(0, 1) == 5
    assert ld.h(4, -5) == 1
    assert ld.h(4, -6) == 5
    assert all(ld.h(i, m) == 0 for i in (1, 2, 3) for m in range(-7, 3))
    assert sheaf_cohomology_dim(O, 0, 2, cache=ld) == 15
    with pytest.raises(ValueError):
        ld.h(5, 0)
    with pytest.raises(ValueError):
        LocalDuality(ModulePresentation.free(Rp, FreeModule([0]), saturated=False)).h(0, 0)


def test_twisted_cubic_cohomology():
    # the twisted cubic in P^3: h^0(O_C(m)) = 3m + 1, h^1 = 0 for m >= 0
    R = Ring(4, GF())
    x = R.gens()
    M = GradedMatrix(R, FreeModule([1] * 3), FreeModule([0, 0]), [x[:3], x[1:]])
    I = maximal_minors(M, 2)
    P = ModulePresentation.quotient_ring(R, I.generators)
    B = betti_table(minimal_free_resolution(P))
    assert B.summary() == "1 | 3(-2) | 2(-3)"
    hp = hilbert_polynomial(B, nvars=4)
    assert [hp(m) for m in range(5)] == [3 * m + 1 for m in range(5)]
    assert [hilbert_function_from_betti(B, d, nvars=4) for d in range(4)] == [1, 4, 7, 10]


def test_betti_table_text_and_json():
    B = BettiTable.from_spec([[(1, 0)], [(3, 2)], [(2, 3)]])
    assert B.alternating_rank() == 0
    assert BettiTable.from_json(B.to_json()) == B
    text = B.to_ascii()
    assert "total:" in text and "3" in text
    assert B.shift(1)[(1, 3)] == 3
    with pytest.raises(ValueError):
        BettiTable({(0, 0): -1})


def test_field_does_not_change_betti_numbers():
    tables = []
    for F in (QQ, GF()):
        R = Ring(5, F)
        x = R.gens()
        gens = [x[0] * x[1] - x[2] ** 2, x[1] * x[3] - x[4] ** 2, x[0] ** 2 + x[3] * x[4]]
        tables.append(betti_table(minimal_free_resolution(ModulePresentation.quotient_ring(R, gens))))
    assert tables[0] == tables[1]


def random_presentation(rng, n):
    R = Ring(n, GF())
    twists = [rng.choice((0, 0, 1)) for _ in range(rng.randint(1, 2))]
    cols, degs = [], []
    for _ in range(rng.randint(1, 4)):
        D = max(twists) + rng.randint(1, 2)
        col = []
        for t in twists:
            f = R.zero()
            for e in monomials_of_degree(n, D - t):
                if rng.random() < 0.4:
                    f = f + R.monomial(e).scale(rng.randrange(1, 7))
            col.append(f)
        if any(col):
            cols.append(col)
            degs.append(D)
    if not cols:
        return None
    M = GradedMatrix.from_columns(R, FreeModule(twists), cols, source_twists=degs)
    return ModulePresentation(M)


def to_oracle(P):
    M = P.matrix
    cols = [(M.source.twist(j), [dict(e.terms) for e in M.column(j)]) for j in range(M.ncols)]
    return oracles.Presentation(M.ring.nvars, M.target.twists, cols)


@settings(max_examples=15)
@given(st.integers(0, 10 ** 6))
def test_betti_numbers_match_koszul_homology(seed):
    rng = random.Random(seed)
    P = random_presentation(rng, 3)
    if P is None:
        return
    C = minimal_free_resolution(P)
    B = betti_table(C)
    O = to_oracle(P)
    top = max(j for _, j in B.data) + 1
    for i in range(4):
        for j in range(top + 1):
            assert B[(i, j)] == O.tor(i, j), (i, j)
    for d in range(8):
        assert graded_piece_dim(P, d) == O.hilbert(d) == hilbert_function_from_betti(B, d, nvars=3)


@settings(max_examples=20)
@given(st.integers(0, 10 ** 6), st.integers(3, 5))
def test_resolution_properties(seed, n):
    rng = random.Random(seed)
    P = random_presentation(rng, n)
    if P is None:
        return
    C = free_resolution(P, cap=n + 2)
    assert C.composites_vanish()
    assert C.length <= n
    Cm = minimize_resolution(C)
    assert Cm.composites_vanish() and Cm.is_minimal() and Cm.length <= n
    B = betti_table(Cm)
    # the alternating sum of ranks is the rank of the module
    rank_generic = len(P.generators.twists) - _generic_rank(P, rng)
    assert B.alternating_rank() == rank_generic


def _generic_rank(P, rng):
    from monadlab.linalg import rank
    M = P.matrix
    F = P.ring.field
    pt = [rng.randrange(31991) for _ in range(P.ring.nvars)]
    rows = []
    for i in range(M.nrows):
        rows.append({j: F.convert(int(M.entry(i, j).evaluate(pt))) for j in range(M.ncols)})
    return rank(F, rows, M.ncols)


def test_free_module_resolves_to_itself(Rp):
    P = ModulePresentation.free(Rp, FreeModule([0, 2]))
    C = minimal_free_resolution(P)
    assert betti_table(C) == BettiTable({(0, 0): 1, (0, 2): 1})
    assert C.length == 0
