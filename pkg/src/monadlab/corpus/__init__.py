"""Golden fixtures: the explicit monads, matrices and polynomials used by the
verification pipelines, stored as text files and parsed on load."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from importlib import resources

from ..exterior import DiffSummand, ExteriorMatrix, Monad, parse_exterior
from ..field import DEFAULT_PRIME, GF, Field
from ..groebner import Ideal
from ..modules import GradedMatrix
from ..resolutions import BettiTable
from ..ring import Polynomial, Ring, parse_polynomial

CORPUS_VERSION = "v1"
EXAMPLE_IDS = ("3.1", "3.2", "3.3", "3.4")


def read_text(name: str) -> str:
    return resources.files(__package__).joinpath("data", CORPUS_VERSION, name).read_text()


def _field(field: Field | None) -> Field:
    return field if field is not None else GF(DEFAULT_PRIME)


def monad_g(field: Field | None = None) -> Monad:
    """The rank-5 monad with alpha = (e4 ; w), beta = (w, -e4), w = e0^e2 + e1^e3."""
    return Monad.from_text(read_text("monad_g.monad"), _field(field))


def example_3_4_monad(field: Field | None = None) -> Monad:
    """Monad whose cohomology bundle is the rank-3 bundle of example 3.4 twisted by -1."""
    return Monad.from_text(read_text("example_3_4_twisted.monad"), _field(field))


def phi_matrix(ring: Ring | None = None) -> GradedMatrix:
    return GradedMatrix.from_text(read_text("phi.matrix"), ring or Ring(5, _field(None)))


def hm_quintics(ring: Ring | None = None) -> list:
    I = Ideal.from_text(read_text("hm_quintics.ideal"), ring)
    return I.generators


def sigma_elements(field: Field | None = None) -> list:
    """[(s1a, s1b), (s2a, s2b)]: components in Lambda^2 V and Lambda^3 V."""
    F = _field(field)
    out, cur = [], None
    for raw in read_text("sigma.monad").splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "sigma":
            cur = []
            out.append(cur)
            continue
        cur.append(parse_exterior(line, F))
    return [tuple(c) for c in out]


def sigma_pair(field: Field | None = None) -> ExteriorMatrix:
    """sigma = (sigma_1, sigma_2): 2 O(-1) -> Omega^2(2) + Omega^1(1), with O(-1) = Omega^4(4)."""
    F = _field(field)
    (a1, b1), (a2, b2) = sigma_elements(F)
    src = [DiffSummand(4, 0, 2)]
    tgt = [DiffSummand(2), DiffSummand(1)]
    return ExteriorMatrix(F, src, tgt, [[a1, a2], [b1, b2]])


@dataclass
class ExampleSpec:
    """A bundle given by a generator matrix T: L -> r O(c1)."""

    id: str
    title: str
    ambient: int
    rank: int
    c1: int
    f_red: Polynomial
    T: GradedMatrix
    blocks: dict
    expected: dict
    chern: tuple | None = None
    ring: Ring = dc_field(default=None)

    @property
    def f(self) -> Polynomial:
        return self.f_red ** (self.rank - 1)

    def block(self, name: str) -> GradedMatrix:
        return self.blocks[name]


def _parse_betti(tokens) -> BettiTable:
    data = {}
    for tok in tokens:
        key, val = tok.split("=")
        i, j = key.split(",")
        data[(int(i), int(j))] = int(val)
    return BettiTable(data)


def parse_example(text: str, field: Field | None = None) -> ExampleSpec:
    F = _field(field)
    meta: dict = {}
    expected: dict = {}
    lines = text.splitlines()
    k = 0
    while k < len(lines):
        line = lines[k].split("#", 1)[0].strip()
        if line.startswith("matrix"):
            break
        k += 1
        if not line:
            continue
        key, _, rest = line.partition(" ")
        if key == "betti":
            name, *toks = rest.split()
            expected[name] = _parse_betti(toks)
        else:
            meta[key] = rest.strip()
    ring = Ring(int(meta["ambient"]) + 1, F)
    T = GradedMatrix.from_text("\n".join(lines[k:]), ring)
    blocks, col = {}, 0
    for part in meta.get("blocks", "").split(","):
        if not part.strip():
            continue
        name, width = part.split()
        blocks[name] = T.submatrix(range(T.nrows), range(col, col + int(width)))
        col += int(width)
    if blocks and col != T.ncols:
        raise ValueError("block widths do not cover the matrix")
    chern = tuple(int(c) for c in meta["chern"].split()) if "chern" in meta else None
    return ExampleSpec(meta["example"], meta.get("title", ""), int(meta["ambient"]),
                       int(meta["rank"]), int(meta["c1"]), parse_polynomial(meta["fred"], ring),
                       T, blocks, expected, chern, ring)


def example_bundle(id: str, field: Field | None = None) -> ExampleSpec:
    if id not in EXAMPLE_IDS:
        raise KeyError(f"unknown example {id!r}; expected one of {', '.join(EXAMPLE_IDS)}")
    return parse_example(read_text(f"example_{id.replace('.', '_')}.example"), field)


# Betti tables of the bundles around the monad G, keyed by a short name.
EXPECTED_TABLES = {
    "G": {(0, 1): 10, (1, 2): 4, (1, 3): 5, (2, 3): 1, (2, 4): 4, (3, 5): 1},
    "K": {(0, 1): 15, (1, 2): 5, (1, 3): 5, (2, 3): 1, (2, 4): 4, (3, 5): 1},
    "J_X": {(0, 4): 6, (1, 5): 4, (1, 6): 5, (2, 6): 1, (2, 7): 4, (3, 8): 1},
}


@lru_cache(maxsize=None)
def expected_table(name: str) -> BettiTable:
    return BettiTable(dict(EXPECTED_TABLES[name]))
