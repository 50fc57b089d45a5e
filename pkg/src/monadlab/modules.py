"""Graded free modules, graded matrices and module presentations.

Also the Groebner-backed primitives every higher layer uses: syzygies,
minimal generators of a submodule and lifting through a matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from . import engine
from .engine import Buchberger, ModuleOrder
from .ring import ANY_DEGREE, Polynomial, Ring, parse_polynomial


class DegreeError(ValueError):
    """An entry of a graded matrix has the wrong degree."""


class Cancelled(RuntimeError):
    """Raised when a progress hook asks a long computation to stop."""


@dataclass(frozen=True)
class FreeModule:
    """A graded free module; a summand R(-j) contributes twist j."""

    twists: tuple = ()

    def __init__(self, twists: Iterable[int] = ()):
        object.__setattr__(self, "twists", tuple(int(t) for t in twists))

    @property
    def rank(self) -> int:
        return len(self.twists)

    def twist(self, i: int) -> int:
        return self.twists[i]

    def __add__(self, other: "FreeModule") -> "FreeModule":
        return FreeModule(self.twists + other.twists)

    def shift(self, k: int) -> "FreeModule":
        """F(-k): every generator degree goes up by k."""
        return FreeModule(t + k for t in self.twists)

    def dual(self) -> "FreeModule":
        return FreeModule(-t for t in self.twists)

    def dim(self, ring: Ring, d: int) -> int:
        return sum(ring.dim(d - t) for t in self.twists)

    def __repr__(self):
        if not self.twists:
            return "0"
        counts: dict = {}
        for t in self.twists:
            counts[t] = counts.get(t, 0) + 1
        parts = []
        for t in sorted(counts):
            s = "R" if t == 0 else f"R({-t})"
            parts.append(s if counts[t] == 1 else f"{counts[t]}{s}")
        return "+".join(parts)


class GradedMatrix:
    """A degree-zero map ``source -> target`` of graded free modules.

    ``entries[i][j]`` is homogeneous of degree
    ``source.twist(j) - target.twist(i)`` or zero.
    """

    def __init__(self, ring: Ring, source: FreeModule, target: FreeModule,
                 entries: Sequence[Sequence[Polynomial]] | None = None, check: bool = True):
        self.ring = ring
        self.source = source if isinstance(source, FreeModule) else FreeModule(source)
        self.target = target if isinstance(target, FreeModule) else FreeModule(target)
        r, c = self.target.rank, self.source.rank
        if entries is None:
            entries = [[ring.zero() for _ in range(c)] for _ in range(r)]
        rows = [list(row) for row in entries]
        if len(rows) != r or any(len(row) != c for row in rows):
            raise ValueError(f"entries do not have shape {r}x{c}")
        self.entries = [[e if isinstance(e, Polynomial) else ring(e) for e in row] for row in rows]
        if check:
            self.check_degrees()

    # -- shape ---------------------------------------------------------------
    @property
    def nrows(self) -> int:
        return self.target.rank

    @property
    def ncols(self) -> int:
        return self.source.rank

    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    def entry(self, i: int, j: int) -> Polynomial:
        return self.entries[i][j]

    def column(self, j: int) -> list:
        return [row[j] for row in self.entries]

    def expected_degree(self, i: int, j: int) -> int:
        return self.source.twist(j) - self.target.twist(i)

    def check_degrees(self):
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                d = e.homogeneous_degree()
                if d is ANY_DEGREE:
                    continue
                if d is None:
                    raise DegreeError(f"entry ({i},{j}) is not homogeneous")
                if d != self.expected_degree(i, j):
                    raise DegreeError(
                        f"entry ({i},{j}) has degree {d}, expected {self.expected_degree(i, j)}")

    # -- constructors --------------------------------------------------------
    @classmethod
    def from_columns(cls, ring: Ring, target: FreeModule, columns, source_twists=None,
                     check: bool = True) -> "GradedMatrix":
        columns = [list(c) for c in columns]
        if source_twists is None:
            source_twists = [column_degree(ring, target, c) for c in columns]
        entries = [[columns[j][i] for j in range(len(columns))] for i in range(target.rank)]
        return cls(ring, FreeModule(source_twists), target, entries, check=check)

    @classmethod
    def identity(cls, ring: Ring, F: FreeModule) -> "GradedMatrix":
        e = [[ring.one() if i == j else ring.zero() for j in range(F.rank)] for i in range(F.rank)]
        return cls(ring, F, F, e, check=False)

    @classmethod
    def zero(cls, ring: Ring, source: FreeModule, target: FreeModule) -> "GradedMatrix":
        return cls(ring, source, target, None, check=False)

    # -- algebra -------------------------------------------------------------
    def __matmul__(self, other: "GradedMatrix") -> "GradedMatrix":
        """self o other (apply ``other`` first)."""
        if self.source.rank != other.target.rank:
            raise ValueError("shape mismatch in composition")
        if self.source.twists != other.target.twists:
            raise DegreeError("twists do not match in composition")
        R = self.ring
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = R.zero()
                for k in range(self.ncols):
                    a = self.entries[i][k]
                    if a:
                        b = other.entries[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return GradedMatrix(R, other.source, self.target, out, check=False)

    def is_zero(self) -> bool:
        return all(not e for row in self.entries for e in row)

    def transpose(self) -> "GradedMatrix":
        """Hom(-, R): the dual map target^* -> source^*."""
        e = [[self.entries[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return GradedMatrix(self.ring, self.target.dual(), self.source.dual(), e, check=False)

    def shift(self, k: int) -> "GradedMatrix":
        """The same map between F(-k) and G(-k)."""
        return GradedMatrix(self.ring, self.source.shift(k), self.target.shift(k),
                            self.entries, check=False)

    def hstack(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.target.twists != other.target.twists:
            raise DegreeError("targets differ")
        e = [a + b for a, b in zip(self.entries, other.entries)]
        return GradedMatrix(self.ring, self.source + other.source, self.target, e, check=False)

    def vstack(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.source.twists != other.source.twists:
            raise DegreeError("sources differ")
        return GradedMatrix(self.ring, self.source, self.target + other.target,
                            self.entries + other.entries, check=False)

    def direct_sum(self, other: "GradedMatrix") -> "GradedMatrix":
        R = self.ring
        top = [row + [R.zero()] * other.ncols for row in self.entries]
        bot = [[R.zero()] * self.ncols + row for row in other.entries]
        return GradedMatrix(R, self.source + other.source, self.target + other.target,
                            top + bot, check=False)

    def submatrix(self, rows=None, cols=None) -> "GradedMatrix":
        rows = range(self.nrows) if rows is None else list(rows)
        cols = range(self.ncols) if cols is None else list(cols)
        e = [[self.entries[i][j] for j in cols] for i in rows]
        return GradedMatrix(self.ring, FreeModule(self.source.twist(j) for j in cols),
                            FreeModule(self.target.twist(i) for i in rows), e, check=False)

    def scale(self, c) -> "GradedMatrix":
        return GradedMatrix(self.ring, self.source, self.target,
                            [[e.scale(c) for e in row] for row in self.entries], check=False)

    def __add__(self, other: "GradedMatrix") -> "GradedMatrix":
        e = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        return GradedMatrix(self.ring, self.source, self.target, e)

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other):
        return (isinstance(other, GradedMatrix) and self.source == other.source
                and self.target == other.target and self.entries == other.entries)

    def has_unit_entry(self) -> bool:
        return any(e and e.is_constant() for row in self.entries for e in row)

    def change_ring(self, ring: Ring) -> "GradedMatrix":
        e = [[x.change_ring(ring) for x in row] for row in self.entries]
        return GradedMatrix(ring, self.source, self.target, e, check=False)

    # -- engine bridge -------------------------------------------------------
    def engine_columns(self, order: ModuleOrder, offset: int = 0) -> list:
        cols = []
        for j in range(self.ncols):
            cols.append(column_to_dict(order, self.column(j), offset))
        return cols

    # -- text format -----------------------------------------------------------
    def to_text(self) -> str:
        lines = [f"matrix {self.nrows} {self.ncols}",
                 " ".join(str(t) for t in self.target.twists),
                 " ".join(str(t) for t in self.source.twists)]
        for row in self.entries:
            lines.append(", ".join(e.to_string() for e in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, ring: Ring) -> "GradedMatrix":
        lines = [ln for ln in (l.split("#", 1)[0].strip() for l in text.splitlines()) if ln]
        head = lines[0].split()
        if len(head) != 3 or head[0] != "matrix":
            raise ValueError("expected header 'matrix <rows> <cols>'")
        r, c = int(head[1]), int(head[2])
        tt = [int(x) for x in lines[1].split()] if r else []
        st = [int(x) for x in lines[2].split()] if c else []
        body = lines[3:] if (r and c) else []
        if len(tt) != r or len(st) != c or len(body) != (r if c else 0):
            raise ValueError("malformed matrix block")
        entries = []
        for ln in body:
            cells = [x.strip() for x in ln.split(",")]
            if len(cells) != c:
                raise ValueError(f"row has {len(cells)} entries, expected {c}")
            entries.append([parse_polynomial(x, ring) for x in cells])
        if not c:
            entries = [[] for _ in range(r)]
        return cls(ring, FreeModule(st), FreeModule(tt), entries)

    def __repr__(self):
        return f"GradedMatrix({self.target!r} <- {self.source!r})"


@dataclass
class ModulePresentation:
    """The cokernel of ``matrix``; ``saturated`` asserts M = H^0_* of its sheaf."""

    matrix: GradedMatrix
    saturated: bool = False
    note: str = ""

    @property
    def ring(self) -> Ring:
        return self.matrix.ring

    @property
    def generators(self) -> FreeModule:
        return self.matrix.target

    @classmethod
    def free(cls, ring: Ring, F: FreeModule, saturated: bool = True) -> "ModulePresentation":
        return cls(GradedMatrix.zero(ring, FreeModule(), F), saturated)

    @classmethod
    def quotient_ring(cls, ring: Ring, gens: Sequence[Polynomial]) -> "ModulePresentation":
        """R / <gens> as a cokernel of a row matrix."""
        gens = [g for g in gens if g]
        degs = [g.homogeneous_degree() for g in gens]
        return cls(GradedMatrix(ring, FreeModule(degs), FreeModule([0]), [gens]))


# ---------------------------------------------------------------------------
# engine conversions

def column_degree(ring: Ring, target: FreeModule, col) -> int:
    for i, e in enumerate(col):
        if e:
            d = e.homogeneous_degree()
            if d is None:
                raise DegreeError("inhomogeneous column entry")
            return d + target.twist(i)
    raise DegreeError("cannot infer the degree of a zero column")


def column_to_dict(order: ModuleOrder, col, offset: int = 0) -> dict:
    out = {}
    key = order.key
    for i, e in enumerate(col):
        for ex, c in e.terms.items():
            out[key(i + offset, ex)] = c
    return out


def dict_to_column(ring: Ring, order: ModuleOrder, f: dict, nrows: int, offset: int = 0) -> list:
    terms = [dict() for _ in range(nrows)]
    for k, c in f.items():
        i, e = order.decode(k)
        terms[i - offset][e] = c
    return [Polynomial(ring, t, _clean=True) for t in terms]


def split_dict(order: ModuleOrder, f: dict, cut: int):
    """Split an element of a graph module into (target part, source part)."""
    hi, lo = {}, {}
    im = order.imask
    for k, c in f.items():
        (hi if (k & im) < cut else lo)[k] = c
    return hi, lo


def _prime(ring: Ring) -> int:
    return ring.field.characteristic


def _order_tag(ring: Ring) -> str:
    return ring.order.tag


ProgressHook = Callable[[int, int, int], object]


def _hook(progress):
    if progress is None:
        return None

    def h(d, npairs, nbasis):
        if progress(d, npairs, nbasis) is False:
            raise Cancelled(f"cancelled in degree {d}")
    return h


# ---------------------------------------------------------------------------
# primitives

def submodule_groebner(M: GradedMatrix, progress=None):
    """Groebner basis (as GBElem list, order) of the image of M under the TOP order."""
    R = M.ring
    order = ModuleOrder.top(R.nvars, _order_tag(R), M.target.twists)
    gb, _ = engine.groebner(order, M.engine_columns(order), _prime(R), progress=_hook(progress))
    return gb, order


def graph_groebner(M: GradedMatrix, progress=None):
    """Groebner basis of the graph {(M c, c)} with target terms above source terms."""
    R = M.ring
    r0 = M.nrows
    order = ModuleOrder.graph(R.nvars, _order_tag(R), M.target.twists, M.source.twists)
    gens = []
    for j in range(M.ncols):
        f = column_to_dict(order, M.column(j))
        f[order.key(r0 + j, (0,) * R.nvars)] = R.field.one()
        gens.append(f)
    bb = Buchberger(order, _prime(R), progress=_hook(progress))
    bb.run(gens)
    return bb, order


def minimal_generator_indices(ring: Ring, target: FreeModule, columns: list, order=None) -> list:
    """Indices of a minimal generating subset of homogeneous engine columns."""
    if order is None:
        order = ModuleOrder.top(ring.nvars, _order_tag(ring), target.twists)
    bb = Buchberger(order, _prime(ring))
    bb.run(columns)
    return sorted(bb.kept_gens)


def minimal_generators(M: GradedMatrix) -> GradedMatrix:
    """A minimal set of columns of M generating the same image."""
    R = M.ring
    order = ModuleOrder.top(R.nvars, _order_tag(R), M.target.twists)
    keep = minimal_generator_indices(R, M.target, M.engine_columns(order), order)
    return M.submatrix(cols=keep)


def syzygies(M: GradedMatrix, minimal: bool = True, progress=None) -> GradedMatrix:
    """Generators of ker(M), as a graded matrix into ``M.source``."""
    R = M.ring
    r0 = M.nrows
    bb, order = graph_groebner(M, progress)
    syz = []
    for g in bb.reduced_basis():
        if g.comp >= r0:
            _, lo = split_dict(order, g.f, r0)
            syz.append(lo)
    if not syz:
        return GradedMatrix.zero(R, FreeModule(), M.source)
    if minimal:
        sub = ModuleOrder.top(R.nvars, _order_tag(R), M.source.twists)
        cols = [{sub.key(*_shift_comp(order.decode(k), r0)): c for k, c in f.items()} for f in syz]
        keep = minimal_generator_indices(R, M.source, cols, sub)
        syz = [syz[i] for i in keep]
    cols = [dict_to_column(R, order, f, M.ncols, offset=r0) for f in syz]
    return GradedMatrix.from_columns(R, M.source, cols)


def _shift_comp(ie, r0):
    i, e = ie
    return i - r0, e


class Lifter:
    """Solves M y = v for v in the image of M (graph-module reduction)."""

    def __init__(self, M: GradedMatrix, progress=None):
        self.M = M
        bb, order = graph_groebner(M, progress)
        self.order = order
        self.red = engine.Reducer(order, _prime(M.ring))
        for g in bb.reduced_basis():
            if g.comp < M.nrows:
                self.red.add(g)

    def lift(self, v: Sequence[Polynomial]) -> list | None:
        """A solution y, or None when v is not in the image."""
        M, order = self.M, self.order
        r0 = M.nrows
        f = column_to_dict(order, v)
        rem = self.red.reduce(f, full=False)
        hi, lo = split_dict(order, rem, r0)
        if hi:
            return None
        R = M.ring
        y = dict_to_column(R, order, lo, M.ncols, offset=r0)
        return [-e for e in y]

    def lift_matrix(self, V: GradedMatrix) -> GradedMatrix:
        cols = []
        for j in range(V.ncols):
            y = self.lift(V.column(j))
            if y is None:
                raise ValueError(f"column {j} is not in the image")
            cols.append(y)
        return GradedMatrix.from_columns(self.M.ring, self.M.source, cols,
                                         source_twists=V.source.twists)


def is_finite_length(M: GradedMatrix) -> bool:
    """True iff coker(M) has finite length (its sheaf is zero).

    Decided on leading terms: every component of the target needs a pure
    power of every variable among the leading terms of the image.
    """
    R = M.ring
    if M.nrows == 0:
        return True
    gb, _ = submodule_groebner(M)
    covered = [[False] * R.nvars for _ in range(M.nrows)]
    unit = [False] * M.nrows
    for g in gb:
        support = [k for k, x in enumerate(g.exps) if x]
        if not support:
            unit[g.comp] = True
        elif len(support) == 1:
            covered[g.comp][support[0]] = True
    return all(u or all(c) for u, c in zip(unit, covered))
