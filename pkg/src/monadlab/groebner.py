"""Ideals, Groebner bases and the certificates built on them."""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from . import engine
from .engine import ModuleOrder
from .field import Field
from .modules import FreeModule, GradedMatrix, syzygies
from .ring import Monomial, MonomialOrder, Polynomial, Ring, parse_polynomial


class HomogeneityError(ValueError):
    pass


class Ideal:
    """An ideal given by homogeneous generators (zeros are dropped)."""

    def __init__(self, ring: Ring, generators: Iterable, _allow_inhomogeneous: bool = False):
        self.ring = ring
        gens = []
        for g in generators:
            g = ring(g)
            if not g:
                continue
            if not _allow_inhomogeneous and g.homogeneous_degree() is None:
                raise HomogeneityError(f"inhomogeneous generator {g}")
            gens.append(g)
        self.generators = gens

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.generators + other.generators)

    def degrees(self) -> list:
        return [g.homogeneous_degree() for g in self.generators]

    def to_text(self) -> str:
        d = self.ring.descriptor()
        lines = [f"ring nvars={d['nvars']} field={d['field']} order={d['order']}"]
        lines += [g.to_string() for g in self.generators]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, ring: Ring | None = None) -> "Ideal":
        lines = [ln for ln in (l.split("#", 1)[0].strip() for l in text.splitlines()) if ln]
        if not lines or not lines[0].startswith("ring"):
            raise ValueError("ideal file must start with a 'ring' line")
        parsed = parse_ring_line(lines[0])
        ring = ring or parsed
        return cls(ring, [parse_polynomial(ln, ring) for ln in lines[1:]])

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.generators[:4]))}{', ...' if len(self) > 4 else ''})"


def parse_ring_line(line: str) -> Ring:
    """``ring nvars=5 field=fp:31991 order=grevlex`` (all keys optional)."""
    parts = line.split()
    if not parts or parts[0] != "ring":
        raise ValueError(f"not a ring line: {line!r}")
    kv = dict(p.split("=", 1) for p in parts[1:])
    return Ring(int(kv.get("nvars", 5)), Field.parse(kv.get("field", "fp:31991")),
                kv.get("order", "grevlex"))


class GroebnerBasis:
    """Reduced, monic Groebner basis with respect to ``order``."""

    def __init__(self, ring: Ring, order: MonomialOrder, elements: list, leading: list,
                 _eorder: ModuleOrder, _gb: list):
        self.ring = ring
        self.order = order
        self.elements = elements
        self.leading_terms = leading
        self._eorder = _eorder
        self._reducer = engine.Reducer(_eorder, ring.field.characteristic)
        for g in _gb:
            self._reducer.add(g)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def is_unit(self) -> bool:
        return any(not any(m.exponents) for m in self.leading_terms)

    def _to_dict(self, f: Polynomial) -> dict:
        key = self._eorder.key
        return {key(0, e): c for e, c in f.terms.items()}

    def _from_dict(self, d: dict) -> Polynomial:
        dec = self._eorder.decode
        return Polynomial(self.ring, {dec(k)[1]: c for k, c in d.items()}, _clean=True)

    def reduce(self, f: Polynomial) -> Polynomial:
        return self._from_dict(self._reducer.reduce(self._to_dict(f), full=True))

    def contains(self, f: Polynomial) -> bool:
        return not self.reduce(f)

    def s_pairs_reduce_to_zero(self) -> bool:
        gb = self._reducer.elems
        p = self.ring.field.characteristic
        for a, b in itertools.combinations(gb, 2):
            l = engine.lcm_exps(a.exps, b.exps)
            s = engine.spoly(a, b, l, self._eorder, p)
            if self._reducer.reduce(s, full=True):
                return False
        return True


def _engine_order(ring: Ring, order) -> tuple:
    if order is None:
        mo = ring.order
    elif isinstance(order, MonomialOrder):
        mo = order
    else:
        mo = MonomialOrder(order)
    return mo, ModuleOrder.top(ring.nvars, mo.tag, [0])


def _basis(ring: Ring, gens: Sequence[Polynomial], order=None, progress=None) -> GroebnerBasis:
    mo, eo = _engine_order(ring, order)
    dicts = [{eo.key(0, e): c for e, c in g.terms.items()} for g in gens if g]
    gb, _ = engine.groebner(eo, dicts, ring.field.characteristic, progress=progress)
    elems, leads = [], []
    for g in gb:
        elems.append(Polynomial(ring, {eo.decode(k)[1]: c for k, c in g.f.items()}, _clean=True))
        leads.append(Monomial(g.exps))
    return GroebnerBasis(ring, mo, elems, leads, eo, gb)


def groebner_basis(I: Ideal, order=None, progress=None) -> GroebnerBasis:
    for g in I.generators:
        if g.homogeneous_degree() is None:
            raise HomogeneityError("public Groebner basis input must be homogeneous")
    return _basis(I.ring, I.generators, order, progress)


def groebner_basis_any(ring: Ring, gens: Sequence[Polynomial], order=None) -> GroebnerBasis:
    """Internal path accepting inhomogeneous input (unit-ideal detection)."""
    return _basis(ring, [ring(g) for g in gens], order)


def normal_form(f: Polynomial, B: GroebnerBasis) -> Polynomial:
    if f.ring.field != B.ring.field or f.ring.nvars != B.ring.nvars:
        raise ValueError("polynomial and basis live in different rings")
    return B.reduce(f)


def ideal_quotient(I: Ideal, f: Polynomial, progress=None) -> Ideal:
    """(I : f), read off the last coordinate of the syzygies of [gens | f]."""
    R = I.ring
    f = R(f)
    if not f:
        raise ValueError("cannot take the quotient by zero")
    d = f.homogeneous_degree()
    if d is None:
        raise HomogeneityError("f must be homogeneous")
    row = I.generators + [f]
    M = GradedMatrix(R, FreeModule([g.homogeneous_degree() for g in row]), FreeModule([0]), [row])
    S = syzygies(M, minimal=True, progress=progress)
    last = M.ncols - 1
    return Ideal(R, [S.entry(last, j) for j in range(S.ncols)])


def maximal_minors(M: GradedMatrix, r: int) -> Ideal:
    """The ideal of all r x r minors of M."""
    if r < 1 or r > min(M.nrows, M.ncols):
        raise ValueError(f"minor size {r} out of range for a {M.nrows}x{M.ncols} matrix")
    return Ideal(M.ring, minors(M, r))


def minors(M: GradedMatrix, r: int) -> list:
    R = M.ring
    memo: dict = {}

    def det(rows: tuple, cols: tuple) -> Polynomial:
        key = (rows, cols)
        v = memo.get(key)
        if v is not None:
            return v
        if len(rows) == 1:
            v = M.entries[rows[0]][cols[0]]
        else:
            v = R.zero()
            top = rows[0]
            rest = rows[1:]
            for k, c in enumerate(cols):
                a = M.entries[top][c]
                if not a:
                    continue
                sub = det(rest, cols[:k] + cols[k + 1:])
                if sub:
                    v = v + a * sub if k % 2 == 0 else v - a * sub
        memo[key] = v
        return v

    out = []
    for rows in itertools.combinations(range(M.nrows), r):
        for cols in itertools.combinations(range(M.ncols), r):
            out.append(det(rows, cols))
    return out


def empty_projective_support(I: Ideal | GroebnerBasis) -> bool:
    """True iff V(I) is empty in projective space (pure-power leading terms)."""
    B = I if isinstance(I, GroebnerBasis) else groebner_basis(I)
    n = B.ring.nvars
    covered = [False] * n
    for m in B.leading_terms:
        e = m.exponents
        support = [k for k, x in enumerate(e) if x]
        if not support:
            return True
        if len(support) == 1:
            covered[support[0]] = True
    return all(covered)


def jacobian_matrix(I: Ideal) -> GradedMatrix:
    R = I.ring
    rows = [[g.derivative(j) for j in range(R.nvars)] for g in I.generators]
    tgt = FreeModule([1 - g.homogeneous_degree() for g in I.generators])
    return GradedMatrix(R, FreeModule([0] * R.nvars), tgt, rows)


def jacobian_singular_ideal(I: Ideal, codim: int) -> Ideal:
    """I plus the codim x codim minors of the Jacobian matrix."""
    if codim < 1:
        raise ValueError("codimension must be positive")
    J = jacobian_matrix(I)
    if codim > min(J.nrows, J.ncols):
        raise ValueError("codimension exceeds the Jacobian size")
    return Ideal(I.ring, I.generators + minors(J, codim))
