"""Free resolutions, Betti tables, Hilbert polynomials and sheaf cohomology.

Sheaf cohomology of the sheaf attached to a graded module M over
R = k[x_0..x_n] uses graded local duality: for 1 <= i <= n,
``h^i(F(m)) = dim Ext^{n-i}(M, R(-n-1))_{-m}``, and ``h^0(F(m)) = dim M_m``
when M is saturated.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from . import linalg
from .modules import FreeModule, GradedMatrix, Lifter, ModulePresentation, syzygies
from .ring import Ring


class NotMinimalError(ValueError):
    pass


@dataclass
class ResolutionChain:
    """F_0 <- F_1 <- ... <- F_l with ``maps[i-1] = d_i : F_i -> F_{i-1}``."""

    ring: Ring
    maps: list

    @property
    def modules(self) -> list:
        if not self.maps:
            return []
        return [self.maps[0].target] + [d.source for d in self.maps]

    @property
    def length(self) -> int:
        n = len(self.maps)
        while n and self.maps[n - 1].source.rank == 0:
            n -= 1
        return n

    def ranks(self) -> list:
        return [F.rank for F in self.modules]

    def composites_vanish(self) -> bool:
        return all((self.maps[i] @ self.maps[i + 1]).is_zero() for i in range(len(self.maps) - 1))

    def is_minimal(self) -> bool:
        return not any(d.has_unit_entry() for d in self.maps)

    def alternating_rank(self) -> int:
        return sum((-1) ** i * r for i, r in enumerate(self.ranks()))


class BettiTable:
    """Graded Betti numbers beta_{i,j}: copies of R(-j) in homological position i."""

    def __init__(self, data: dict | None = None):
        self.data = {(int(i), int(j)): int(b) for (i, j), b in (data or {}).items() if b}
        if any(b < 0 for b in self.data.values()):
            raise ValueError("negative Betti number")

    @classmethod
    def from_modules(cls, modules) -> "BettiTable":
        data: dict = {}
        for i, F in enumerate(modules):
            for t in F.twists:
                data[(i, t)] = data.get((i, t), 0) + 1
        return cls(data)

    @classmethod
    def from_spec(cls, spec) -> "BettiTable":
        """From ``[[(count, twist), ...], ...]`` indexed by homological degree."""
        data: dict = {}
        for i, terms in enumerate(spec):
            for count, twist in terms:
                data[(i, twist)] = data.get((i, twist), 0) + count
        return cls(data)

    def __getitem__(self, ij) -> int:
        return self.data.get(tuple(ij), 0)

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.data == other.data

    def __hash__(self):
        return hash(frozenset(self.data.items()))

    @property
    def length(self) -> int:
        return max((i for i, _ in self.data), default=0)

    def total(self, i: int) -> int:
        return sum(b for (k, _), b in self.data.items() if k == i)

    def totals(self) -> list:
        return [self.total(i) for i in range(self.length + 1)]

    def alternating_rank(self) -> int:
        return sum((-1) ** i * b for (i, _), b in self.data.items())

    def shift(self, k: int) -> "BettiTable":
        """Table of M(-k)."""
        return BettiTable({(i, j + k): b for (i, j), b in self.data.items()})

    def to_json(self) -> str:
        items = sorted(self.data.items())
        return json.dumps({f"{i},{j}": b for (i, j), b in items}, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "BettiTable":
        obj = json.loads(text) if isinstance(text, str) else text
        return cls({tuple(int(x) for x in k.split(",")): v for k, v in obj.items()})

    def summary(self) -> str:
        """One line per homological degree, e.g. ``4(-2)+5(-3)``."""
        parts = []
        for i in range(self.length + 1):
            terms = [(j, b) for (k, j), b in sorted(self.data.items()) if k == i]
            parts.append("+".join(f"{b}" if j == 0 else f"{b}({-j})" for j, b in terms) or "0")
        return " | ".join(parts)

    def to_ascii(self) -> str:
        if not self.data:
            return "total: 0\n"
        L = self.length
        rows = sorted({j - i for i, j in self.data})
        cols = list(range(L + 1))
        cells = [[str(self[(i, r + i)] or ".") for i in cols] for r in rows]
        tot = [str(self.total(i)) for i in cols]
        width = max(len(s) for s in tot + [c for row in cells for c in row] + [str(L)])
        head_w = max(len("total:"), max(len(f"{r}:") for r in rows))
        lines = [" " * head_w + " " + " ".join(str(i).rjust(width) for i in cols),
                 "total:".rjust(head_w) + " " + " ".join(s.rjust(width) for s in tot)]
        for r, row in zip(rows, cells):
            lines.append(f"{r}:".rjust(head_w) + " " + " ".join(s.rjust(width) for s in row))
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"BettiTable({self.summary()})"


# ---------------------------------------------------------------------------

def free_resolution(P: ModulePresentation, cap: int = 6, progress=None) -> ResolutionChain:
    """Resolve coker(P.matrix): each step takes minimal generators of the kernel."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    R = P.ring
    maps = [P.matrix]
    while len(maps) < cap:
        d = maps[-1]
        if d.ncols == 0:
            break
        k = syzygies(d, minimal=True, progress=progress)
        if k.ncols == 0:
            break
        maps.append(k)
    return ResolutionChain(R, maps)


def minimize_resolution(C: ResolutionChain) -> ResolutionChain:
    """Cancel unit entries pairwise until every differential is minimal."""
    R = C.ring
    field = R.field
    maps = [[[e for e in row] for row in d.entries] for d in C.maps]
    tw = [list(F.twists) for F in C.modules]  # tw[k] twists of F_k

    def find_pivot():
        for k, d in enumerate(maps):
            src, tgt = tw[k + 1], tw[k]
            for c in range(len(src)):
                for r in range(len(tgt)):
                    if src[c] != tgt[r]:
                        continue
                    e = d[r][c]
                    if e and e.is_constant():
                        return k, r, c
        return None

    while True:
        piv = find_pivot()
        if piv is None:
            break
        k, r, c = piv
        d = maps[k]
        a = d[r][c].constant_value()
        ainv = field.inv(a)
        col_c = [row[c] for row in d]
        for j in range(len(tw[k + 1])):
            if j == c or not d[r][j]:
                continue
            q = d[r][j].scale(ainv)
            for i in range(len(d)):
                if col_c[i]:
                    d[i][j] = d[i][j] - q * col_c[i]
        # drop row r, column c of d_k
        del d[r]
        for row in d:
            del row[c]
        if k + 1 < len(maps):
            del maps[k + 1][c]
        if k > 0:
            for row in maps[k - 1]:
                del row[r]
        del tw[k][r]
        del tw[k + 1][c]

    out = []
    for k, d in enumerate(maps):
        out.append(GradedMatrix(R, FreeModule(tw[k + 1]), FreeModule(tw[k]), d, check=False))
    # keep d_1 even when it is zero so that F_0 survives for free modules
    while len(out) > 1 and out[-1].ncols == 0:
        out.pop()
    return ResolutionChain(R, out)


def minimal_free_resolution(P: ModulePresentation, cap: int = 6, progress=None) -> ResolutionChain:
    return minimize_resolution(free_resolution(P, cap, progress))


def betti_table(C: ResolutionChain) -> BettiTable:
    if not C.is_minimal():
        raise NotMinimalError("resolution has unit entries; minimize it first")
    return BettiTable.from_modules(C.modules)


# ---------------------------------------------------------------------------

def linear_vector_blocks(C: ResolutionChain, size: int = 4) -> list:
    """Blocks of a differential that are a single row or column of ``size`` linear forms.

    Blocks are the submatrices between summands of one twist in the source and
    one twist in the target. Returns (position, entries) pairs.
    """
    out = []
    for k, M in enumerate(C.maps):
        src: dict = {}
        tgt: dict = {}
        for j, t in enumerate(M.source.twists):
            src.setdefault(t, []).append(j)
        for i, t in enumerate(M.target.twists):
            tgt.setdefault(t, []).append(i)
        for ts in sorted(src):
            for tt in sorted(tgt):
                if ts - tt != 1:
                    continue
                rows, cols = tgt[tt], src[ts]
                if sorted((len(rows), len(cols))) != [1, size]:
                    continue
                entries = [M.entries[i][j] for i in rows for j in cols]
                if all(entries):
                    out.append((k + 1, entries))
    return out


class NumericPolynomial:
    """A polynomial in one variable m with rational coefficients (low degree first)."""

    def __init__(self, coeffs):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = c

    def __call__(self, m):
        acc = Fraction(0)
        for a in reversed(self.coeffs):
            acc = acc * m + a
        return acc

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + [Fraction(0)] * (n - len(self.coeffs))
        b = other.coeffs + [Fraction(0)] * (n - len(other.coeffs))
        return NumericPolynomial([x + y for x, y in zip(a, b)])

    def __neg__(self):
        return NumericPolynomial([-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, NumericPolynomial):
            return NumericPolynomial([x * other for x in self.coeffs])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs))
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return NumericPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, NumericPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[k]
            if not a:
                continue
            mono = "" if k == 0 else ("m" if k == 1 else f"m^{k}")
            mag = abs(a)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if a < 0 else "+"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"NumericPolynomial({self})"


def binomial_in_m(shift: int, k: int) -> NumericPolynomial:
    """C(m + shift, k) as a polynomial in m."""
    p = NumericPolynomial([1])
    for t in range(k):
        p = p * NumericPolynomial([shift - t, 1])
    return p * Fraction(1, factorial(k))


def hilbert_polynomial(B: BettiTable, nvars: int = 5) -> NumericPolynomial:
    acc = NumericPolynomial([])
    for (i, j), b in B.data.items():
        acc = acc + binomial_in_m(nvars - 1 - j, nvars - 1) * ((-1) ** i * b)
    return acc


def hilbert_function_from_betti(B: BettiTable, d: int, nvars: int = 5) -> int:
    return sum((-1) ** i * b * comb(d - j + nvars - 1, nvars - 1)
               for (i, j), b in B.data.items() if d - j >= 0)


# ---------------------------------------------------------------------------

def strip_rows(M: GradedMatrix, d: int):
    """The degree-d strip of the image of M as sparse rows over a basis of target_d."""
    R = M.ring
    index = {}
    for i, t in enumerate(M.target.twists):
        for e in R.monomials(d - t):
            index[(i, e)] = len(index)
    rows = []
    for j, s in enumerate(M.source.twists):
        col = M.column(j)
        if not any(col):
            continue
        for u in R.monomials(d - s):
            row = {}
            for i, f in enumerate(col):
                for e, c in f.terms.items():
                    row[index[(i, tuple(a + b for a, b in zip(e, u)))]] = c
            if row:
                rows.append(row)
    return rows, len(index), index


def graded_piece_dim(P: ModulePresentation, d: int) -> int:
    rows, n, _ = strip_rows(P.matrix, d)
    if not n:
        return 0
    return n - linalg.rank(P.ring.field, rows, n)


def ext_dual_module(P: ModulePresentation, j: int, resolution: ResolutionChain | None = None,
                    progress=None) -> ModulePresentation:
    """Ext^j(M, R(-n)) for n the number of variables, as a cokernel."""
    if j < 0:
        raise ValueError("Ext index must be non-negative")
    R = P.ring
    n = R.nvars
    C = resolution if resolution is not None else free_resolution(P, cap=n + 2, progress=progress)
    maps = C.maps
    mods = C.modules if maps else [P.matrix.target]

    def dual_map(i):  # d_i^T : F_{i-1}^*(-n) -> F_i^*(-n)
        return maps[i - 1].transpose().shift(n)

    if j >= len(mods):
        return ModulePresentation(GradedMatrix.zero(R, FreeModule(), FreeModule()))
    Fj = mods[j].dual().shift(n)
    if j + 1 <= len(maps) and maps[j].ncols:
        Z = syzygies(dual_map(j + 1), progress=progress)
    else:
        Z = GradedMatrix.identity(R, Fj)
    rel = syzygies(Z, progress=progress) if Z.ncols else GradedMatrix.zero(R, FreeModule(), Z.source)
    if j >= 1 and Z.ncols:
        L = Lifter(Z).lift_matrix(dual_map(j))
        pres = rel.hstack(L)
    else:
        pres = rel
    return ModulePresentation(pres, note=f"Ext^{j}(M, R(-{n}))")


class LocalDuality:
    """Caches the resolution and Ext modules of one presentation."""

    def __init__(self, P: ModulePresentation, progress=None):
        self.P = P
        self.progress = progress
        self.n = P.ring.nvars
        self._res = None
        self._ext: dict = {}

    @property
    def resolution(self) -> ResolutionChain:
        if self._res is None:
            self._res = minimal_free_resolution(self.P, cap=self.n + 2, progress=self.progress)
        return self._res

    def ext(self, j: int) -> ModulePresentation:
        if j not in self._ext:
            self._ext[j] = ext_dual_module(self.P, j, self.resolution, self.progress)
        return self._ext[j]

    def h(self, i: int, m: int) -> int:
        top = self.n - 1
        if not 0 <= i <= top:
            raise ValueError(f"cohomological index {i} outside 0..{top}")
        if i == 0:
            if not self.P.saturated:
                raise ValueError("h^0 needs a presentation flagged as saturated")
            return graded_piece_dim(self.P, m)
        return graded_piece_dim(self.ext(top - i), -m)


def sheaf_cohomology_dim(P: ModulePresentation, i: int, m: int, cache: LocalDuality | None = None) -> int:
    ld = cache if cache is not None else LocalDuality(P)
    return ld.h(i, m)
