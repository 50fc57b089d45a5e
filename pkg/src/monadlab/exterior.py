"""Exterior algebra, maps between twisted differential bundles, and monads.

Conventions (fixed once, tested against each other):

* e_0..e_4 is a basis of V, dual to the coordinates x_0..x_4 of P(V).
* Omega^i(i) is the kernel of the Koszul map
  ``kappa_i : Lambda^i V* (x) O -> Lambda^{i-1} V* (x) O(1)``,
  ``kappa(e*_A) = sum_k (-1)^(|A|-1-k) x_{a_k} e*_{A - a_k}``.
* An entry ``a`` in Lambda^k V of a map Omega^i(i) -> Omega^{i-k}(i-k) acts on
  the ambient Lambda^i V* by the contraction ``iota_a``, where
  ``iota_{e_l}`` is the same signed deletion as in kappa and
  ``iota_{a1^...^am} = iota_{a1} o ... o iota_{am}``.  Hence
  ``iota_{b^a} = iota_b o iota_a``: composing maps is left wedge
  multiplication, ``(B o A)_{rc} = sum_k B_{rk} ^ A_{kc}``.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Sequence

from . import linalg
from .field import Field, FieldElement
from .modules import (FreeModule, GradedMatrix, Lifter, ModulePresentation, is_finite_length,
                      syzygies)
from .ring import Ring

NVARS = 5


def _sort_sign(seq) -> int:
    """Sign of the permutation sorting ``seq`` (0 when an index repeats)."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


class ExteriorElement:
    """An element of Lambda V: sorted index tuples -> raw field coefficients."""

    __slots__ = ("field", "terms", "n")

    def __init__(self, field: Field, terms=None, n: int = NVARS):
        self.field = field
        self.n = n
        t = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            if any(not 0 <= k < n for k in key):
                raise ValueError(f"index out of range in {key}")
            s = _sort_sign(key)
            if not s:
                continue
            key = tuple(sorted(key))
            v = field.convert(c)
            if s < 0:
                v = field.neg(v)
            v = field.add(t.get(key, field.zero()), v)
            if v:
                t[key] = v
            else:
                t.pop(key, None)
        self.terms = t

    @classmethod
    def basis(cls, field: Field, *idx, n: int = NVARS) -> "ExteriorElement":
        return cls(field, {tuple(idx): 1}, n)

    @classmethod
    def zero(cls, field: Field, n: int = NVARS) -> "ExteriorElement":
        return cls(field, {}, n)

    def __bool__(self):
        return bool(self.terms)

    def degrees(self) -> set:
        return {len(k) for k in self.terms}

    @property
    def degree(self):
        """Exterior degree if homogeneous, None otherwise (None also for 0)."""
        d = self.degrees()
        return d.pop() if len(d) == 1 else None

    def _check(self, other):
        if not isinstance(other, ExteriorElement):
            return NotImplemented
        if other.field != self.field or other.n != self.n:
            raise ValueError("exterior elements over different spaces")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        t = dict(self.terms)
        f = self.field
        for k, v in other.terms.items():
            t[k] = f.add(t.get(k, f.zero()), v)
        return ExteriorElement(f, {k: v for k, v in t.items() if v}, self.n)

    def __neg__(self):
        f = self.field
        return ExteriorElement(f, {k: f.neg(v) for k, v in self.terms.items()}, self.n)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ExteriorElement":
        f = self.field
        c = c.value if isinstance(c, FieldElement) else f.convert(c)
        return ExteriorElement(f, {k: f.mul(v, c) for k, v in self.terms.items()}, self.n)

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        return isinstance(other, ExteriorElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coefficient(self, idx) -> FieldElement:
        return FieldElement(self.field, self.terms.get(tuple(idx), 0))

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for k in sorted(self.terms, key=lambda k: (len(k), k)):
            c = self.field.signed(self.terms[k])
            mono = "^".join(f"e{i}" for i in k) or "1"
            a = abs(c)
            body = mono if a == 1 else f"{a}*{mono}" if k else f"{a}"
            if not out:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"ExteriorElement({self.to_string()!r})"


def wedge(a: ExteriorElement, b: ExteriorElement) -> ExteriorElement:
    if a.field != b.field or a.n != b.n:
        raise ValueError("exterior elements over different spaces")
    f = a.field
    out: dict = {}
    for ka, va in a.terms.items():
        for kb, vb in b.terms.items():
            s = _sort_sign(ka + kb)
            if not s:
                continue
            key = tuple(sorted(ka + kb))
            v = f.mul(va, vb)
            if s < 0:
                v = f.neg(v)
            out[key] = f.add(out.get(key, f.zero()), v)
    return ExteriorElement(f, {k: v for k, v in out.items() if v}, a.n)


_EXT_TERM = re.compile(r"^(\d+)?\s*\*?\s*(e\d+(?:\s*\^\s*e\d+)*)?$")


def parse_exterior(text: str, field: Field, n: int = NVARS) -> ExteriorElement:
    """Parse sums like ``e0^e2 + e1^e3`` or ``-2*e4`` (a bare integer is a scalar)."""
    s = text.replace(" ", "")
    acc = ExteriorElement.zero(field, n)
    if s in ("", "0"):
        return acc
    if s[0] not in "+-":
        s = "+" + s
    pieces = re.findall(r"([+-])([^+-]+)", s)
    if "".join(a + b for a, b in pieces) != s:
        raise ValueError(f"cannot parse exterior element {text!r}")
    for sign, body in pieces:
        m = _EXT_TERM.match(body)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ValueError(f"cannot parse exterior term {body!r}")
        c = int(m.group(1)) if m.group(1) else 1
        idx = tuple(int(x[1:]) for x in m.group(2).split("^")) if m.group(2) else ()
        acc = acc + ExteriorElement(field, {idx: -c if sign == "-" else c}, n)
    return acc


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiffSummand:
    """``mult`` copies of Omega^i(i + t)."""

    i: int
    t: int = 0
    mult: int = 1

    def __post_init__(self):
        if not 0 <= self.i <= NVARS - 1:
            raise ValueError(f"differential index {self.i} outside 0..{NVARS - 1}")
        if self.mult < 0:
            raise ValueError("negative multiplicity")

    def rank(self, n: int = NVARS - 1) -> int:
        """Rank of Omega^i on P^n."""
        return comb(n, self.i) * self.mult

    def __str__(self):
        base = f"Omega^{self.i}({self.i + self.t})"
        return base if self.mult == 1 else f"{self.mult}{base}"


def expand_summands(summands: Sequence[DiffSummand]) -> list:
    out = []
    for s in summands:
        out.extend([DiffSummand(s.i, s.t, 1)] * s.mult)
    return out


def total_rank(summands: Sequence[DiffSummand]) -> int:
    return sum(s.rank() for s in summands)


class ExteriorMatrix:
    """A map between sums of Omega^i(i+t), entries in Lambda^{i_src - i_tgt} V.

    ``entries`` is indexed by the expanded (multiplicity one) summands.
    """

    def __init__(self, field: Field, source: Sequence[DiffSummand], target: Sequence[DiffSummand],
                 entries=None):
        self.field = field
        self.source = list(source)
        self.target = list(target)
        self.src = expand_summands(self.source)
        self.tgt = expand_summands(self.target)
        r, c = len(self.tgt), len(self.src)
        if entries is None:
            entries = [[ExteriorElement.zero(field) for _ in range(c)] for _ in range(r)]
        rows = [list(row) for row in entries]
        if len(rows) != r or any(len(row) != c for row in rows):
            raise ValueError(f"exterior matrix entries do not have shape {r}x{c}")
        self.entries = [[e if isinstance(e, ExteriorElement) else parse_exterior(str(e), field)
                         for e in row] for row in rows]
        self.validate()

    @property
    def shape(self):
        return (len(self.tgt), len(self.src))

    def validate(self):
        for r, row in enumerate(self.entries):
            for c, a in enumerate(row):
                if not a:
                    continue
                k = self.src[c].i - self.tgt[r].i
                if k < 0 or a.degree != k:
                    raise ValueError(
                        f"entry ({r},{c}) must lie in Lambda^{max(k, 0)} V, got {a.to_string()}")
                if self.src[c].t != self.tgt[r].t:
                    raise ValueError(f"entry ({r},{c}) joins summands with different twists")

    @classmethod
    def identity(cls, field: Field, summands: Sequence[DiffSummand]) -> "ExteriorMatrix":
        ex = expand_summands(summands)
        one = ExteriorElement(field, {(): 1})
        e = [[one if i == j else ExteriorElement.zero(field) for j in range(len(ex))]
             for i in range(len(ex))]
        return cls(field, summands, summands, e)

    def __eq__(self, other):
        return (isinstance(other, ExteriorMatrix) and self.src == other.src
                and self.tgt == other.tgt and self.entries == other.entries)

    def to_text_rows(self) -> list:
        return [", ".join(a.to_string() for a in row) for row in self.entries]


def compose_maps(B: ExteriorMatrix, A: ExteriorMatrix) -> ExteriorMatrix:
    """B o A with entries sum_k B[r][k] ^ A[k][c]."""
    if B.src != A.tgt:
        raise ValueError("middle terms do not match")
    f = A.field
    out = []
    for r in range(len(B.tgt)):
        row = []
        for c in range(len(A.src)):
            acc = ExteriorElement.zero(f)
            for k in range(len(A.tgt)):
                b, a = B.entries[r][k], A.entries[k][c]
                if b and a:
                    acc = acc + wedge(b, a)
            row.append(acc)
        out.append(row)
    # the composite can skip index levels, so bypass per-entry degree checks
    M = ExteriorMatrix.__new__(ExteriorMatrix)
    M.field, M.source, M.target = f, A.source, B.target
    M.src, M.tgt, M.entries = A.src, B.tgt, out
    return M


def is_zero_map(M: ExteriorMatrix) -> bool:
    return all(not a for row in M.entries for a in row)


# ---------------------------------------------------------------------------
# realization on Koszul presentations

def subsets(n: int, k: int) -> list:
    return list(itertools.combinations(range(n), k))


def koszul_matrix(i: int, n: int, ring: Ring) -> GradedMatrix:
    """kappa_i : Lambda^i V* (x) O(-i) -> Lambda^{i-1} V* (x) O(-i+1) on P^n."""
    if not 1 <= i <= n + 1:
        raise ValueError(f"Koszul index {i} outside 1..{n + 1}")
    if ring.nvars != n + 1:
        raise ValueError("ring does not match the ambient dimension")
    src = subsets(n + 1, i)
    tgt = subsets(n + 1, i - 1)
    row_of = {s: r for r, s in enumerate(tgt)}
    entries = [[ring.zero() for _ in src] for _ in tgt]
    for c, A in enumerate(src):
        for k, a in enumerate(A):
            sign = 1 if (i - 1 - k) % 2 == 0 else -1
            rest = A[:k] + A[k + 1:]
            entries[row_of[rest]][c] = ring.var(a) if sign > 0 else -ring.var(a)
    return GradedMatrix(ring, FreeModule([i] * len(src)), FreeModule([i - 1] * len(tgt)), entries)


def contract(a: ExteriorElement, A: tuple):
    """iota_a(e*_A) as a dict subset -> raw coefficient."""
    f = a.field
    out: dict = {}
    for key, c in a.terms.items():
        cur = {A: f.one()}
        for l in reversed(key):
            nxt: dict = {}
            for B, v in cur.items():
                if l not in B:
                    continue
                k = B.index(l)
                s = v if (len(B) - 1 - k) % 2 == 0 else f.neg(v)
                Bl = B[:k] + B[k + 1:]
                nxt[Bl] = f.add(nxt.get(Bl, f.zero()), s)
            cur = nxt
        for B, v in cur.items():
            out[B] = f.add(out.get(B, f.zero()), f.mul(v, c))
    return {k: v for k, v in out.items() if v}


class Realizer:
    """Polynomial realizations of sums of Omega^i(i+t) inside Lambda V* (x) R."""

    def __init__(self, ring: Ring):
        if ring.nvars != NVARS:
            raise ValueError(f"monads live on P^{NVARS - 1}")
        self.ring = ring
        self.n = ring.nvars

    def ambient(self, summands) -> FreeModule:
        tw = []
        for s in expand_summands(summands):
            tw += [-s.t] * comb(self.n, s.i)
        return FreeModule(tw)

    def _blockdiag(self, blocks, src_default, tgt_default) -> GradedMatrix:
        R = self.ring
        M = None
        for b in blocks:
            M = b if M is None else M.direct_sum(b)
        if M is None:
            return GradedMatrix.zero(R, FreeModule(src_default), FreeModule(tgt_default))
        return M

    def kappa(self, i: int, t: int) -> GradedMatrix:
        """kappa_i on Lambda^i V* (x) O(t)."""
        K = koszul_matrix(i, self.n - 1, self.ring)
        return K.shift(-t - i)

    def condition(self, summands) -> GradedMatrix:
        """The map whose kernel is H^0_* of the sum (kappa_i blockwise, nothing for i = 0)."""
        R = self.ring
        blocks = []
        for s in expand_summands(summands):
            if s.i == 0:
                blocks.append(GradedMatrix.zero(R, FreeModule([-s.t]), FreeModule()))
            else:
                blocks.append(self.kappa(s.i, s.t))
        return self._blockdiag(blocks, [], [])

    def generators(self, summands) -> GradedMatrix:
        """Columns generating H^0_* of the sum inside its ambient module."""
        R = self.ring
        blocks = []
        for s in expand_summands(summands):
            if s.i == 0:
                blocks.append(GradedMatrix.identity(R, FreeModule([-s.t])))
            else:
                blocks.append(self.kappa(s.i + 1, s.t - 1))
        return self._blockdiag(blocks, [], [])

    def dual_presentation(self, summands) -> GradedMatrix:
        """Relations of the dual sheaf: kappa_i^T blockwise on Lambda^i V (x) O(-t)."""
        R = self.ring
        blocks = []
        for s in expand_summands(summands):
            if s.i == 0:
                blocks.append(GradedMatrix.zero(R, FreeModule(), FreeModule([s.t])))
            else:
                blocks.append(self.kappa(s.i, s.t).transpose())
        return self._blockdiag(blocks, [], [])

    def constant(self, M: ExteriorMatrix) -> GradedMatrix:
        """The contraction matrix of M between ambient modules."""
        R = self.ring
        src_off, tgt_off = [], []
        acc = 0
        for s in M.src:
            src_off.append(acc)
            acc += comb(self.n, s.i)
        acc = 0
        for s in M.tgt:
            tgt_off.append(acc)
            acc += comb(self.n, s.i)
        S = self.ambient(M.source)
        T = self.ambient(M.target)
        entries = [[R.zero() for _ in range(S.rank)] for _ in range(T.rank)]
        for r, row in enumerate(M.entries):
            tsub = {B: k for k, B in enumerate(subsets(self.n, M.tgt[r].i))}
            for c, a in enumerate(row):
                if not a:
                    continue
                for k, A in enumerate(subsets(self.n, M.src[c].i)):
                    for B, v in contract(a, A).items():
                        rr, cc = tgt_off[r] + tsub[B], src_off[c] + k
                        entries[rr][cc] = entries[rr][cc] + R.const(v)
        return GradedMatrix(R, S, T, entries)


# ---------------------------------------------------------------------------

@dataclass
class Monad:
    """left --A--> middle --B--> right."""

    A: ExteriorMatrix
    B: ExteriorMatrix
    name: str = ""

    def __post_init__(self):
        if self.A.tgt != self.B.src:
            raise ValueError("the middle terms of A and B differ")

    @property
    def field(self) -> Field:
        return self.A.field

    @property
    def left(self):
        return self.A.source

    @property
    def middle(self):
        return self.A.target

    @property
    def right(self):
        return self.B.target

    def expected_rank(self) -> int:
        return total_rank(self.middle) - total_rank(self.left) - total_rank(self.right)

    def to_text(self) -> str:
        lines = ["monad" + (f" {self.name}" if self.name else "")]
        for label, part in (("left", self.left), ("middle", self.middle), ("right", self.right)):
            lines.append(label)
            lines += [f"omega {s.i} twist {s.t} mult {s.mult}" for s in part]
        lines.append("alpha")
        lines += self.A.to_text_rows()
        lines.append("beta")
        lines += self.B.to_text_rows()
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, field: Field) -> "Monad":
        sections: dict = {}
        name = ""
        cur = None
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head = line.split()[0]
            if head == "monad":
                name = line[len("monad"):].strip()
                continue
            if head in ("left", "middle", "right", "alpha", "beta") and len(line.split()) == 1:
                cur = head
                sections[cur] = []
                continue
            if cur is None:
                raise ValueError(f"content before any section: {line!r}")
            sections[cur].append(line)

        def summands(key):
            out = []
            for ln in sections.get(key, []):
                m = re.fullmatch(r"omega\s+(\d+)\s+twist\s+(-?\d+)\s+mult\s+(\d+)", ln)
                if not m:
                    raise ValueError(f"bad summand line {ln!r}")
                out.append(DiffSummand(int(m.group(1)), int(m.group(2)), int(m.group(3))))
            return out

        left, middle, right = summands("left"), summands("middle"), summands("right")

        def matrix(key, src, tgt):
            rows = [[parse_exterior(x, field) for x in ln.split(",")] for ln in sections.get(key, [])]
            if not expand_summands(tgt) or not expand_summands(src):
                rows = [[] for _ in expand_summands(tgt)] if not expand_summands(src) else []
            return ExteriorMatrix(field, src, tgt, rows)

        return cls(matrix("alpha", left, middle), matrix("beta", middle, right), name)


@dataclass
class MonadReport:
    composition_zero: bool
    alpha_fiberwise_injective: bool
    beta_fiberwise_surjective: bool
    rank: int | None = None
    chern: object = None
    notes: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.composition_zero and self.alpha_fiberwise_injective and self.beta_fiberwise_surjective

    def to_dict(self) -> dict:
        return {
            "composition_zero": self.composition_zero,
            "alpha_fiberwise_injective": self.alpha_fiberwise_injective,
            "beta_fiberwise_surjective": self.beta_fiberwise_surjective,
            "rank": self.rank,
            "chern": None if self.chern is None else list(self.chern.classes()),
            "notes": list(self.notes),
        }


def _random_point(ring: Ring, rng: random.Random) -> list:
    p = ring.field.characteristic
    while True:
        pt = [rng.randrange(p) if p else rng.randint(-50, 50) for _ in range(ring.nvars)]
        if any(pt):
            return pt


def _eval_rank(M: GradedMatrix, pt) -> int:
    f = M.ring.field
    rows = []
    for row in M.entries:
        r = {}
        for j, e in enumerate(row):
            if e:
                v = e.evaluate(pt)
                if v:
                    r[j] = v
        rows.append(r)
    return linalg.rank(f, rows, M.ncols)


def fiberwise_check(A: ExteriorMatrix, mode: str, ring: Ring | None = None,
                    rng: random.Random | None = None, samples: int = 50) -> bool:
    """Is the bundle map pointwise injective / surjective on all of P(V)?

    Random fibers fail fast; the answer comes from a finite-length certificate
    (for a one-generator cokernel: empty support of its Fitting ideal).
    """
    if mode not in ("injective", "surjective"):
        raise ValueError(f"unknown mode {mode!r}")
    ring = ring or Ring(NVARS, A.field)
    rz = Realizer(ring)
    C = rz.constant(A)
    rng = rng or random.Random(0)
    if mode == "surjective":
        if not A.tgt:
            return True
        gens_src = rz.generators(A.source)
        gens_tgt = rz.generators(A.target)
        image = C @ gens_src
        target_rank = total_rank(A.target)
        for _ in range(samples):
            if _eval_rank(image, _random_point(ring, rng)) < target_rank:
                return False
        Y = Lifter(gens_tgt).lift_matrix(image)
        pres = syzygies(gens_tgt).hstack(Y) if gens_tgt.ncols else Y
        return _zero_sheaf(pres)
    # injective: the dual map must be surjective
    if not A.src:
        return True
    gens_src = rz.generators(A.source)
    image = C @ gens_src
    source_rank = total_rank(A.source)
    for _ in range(samples):
        if _eval_rank(image, _random_point(ring, rng)) < source_rank:
            return False
    rel = rz.dual_presentation(A.source)
    Ct = C.transpose()
    # both must present quotients of the same dual ambient module
    Ct = GradedMatrix(ring, Ct.source, rel.target, Ct.entries, check=False)
    return _zero_sheaf(rel.hstack(Ct))


def _zero_sheaf(P: GradedMatrix) -> bool:
    if P.nrows == 1:
        from .groebner import Ideal, empty_projective_support
        return empty_projective_support(Ideal(P.ring, P.entries[0]))
    return is_finite_length(P)


def expand_to_modules(m: Monad, ring: Ring | None = None, progress=None) -> ModulePresentation:
    """H^0_* of the cohomology sheaf of m, as a cokernel."""
    comp = compose_maps(m.B, m.A)
    if not is_zero_map(comp):
        raise ValueError("B o A is not zero; not a monad")
    ring = ring or Ring(NVARS, m.field)
    rz = Realizer(ring)
    cond = rz.condition(m.middle)
    CB = rz.constant(m.B)
    stacked = cond.vstack(CB) if CB.nrows else cond
    if stacked.nrows:
        Z = syzygies(stacked, progress=progress)
    else:
        Z = GradedMatrix.identity(ring, rz.ambient(m.middle))
    rel = syzygies(Z, progress=progress)
    if m.A.src:
        images = rz.constant(m.A) @ rz.generators(m.left)
        L = Lifter(Z, progress).lift_matrix(images)
        pres = rel.hstack(L) if rel.ncols else L
    else:
        pres = rel
    # H^1_* of Omega^i vanishes unless i = 1, so the quotient is saturated otherwise
    saturated = all(s.i != 1 for s in m.left)
    return ModulePresentation(pres, saturated=saturated,
                              note="kernel of the right map modulo the left term")


def adjoin_sections(m: Monad, S: ExteriorMatrix, name: str = "") -> Monad:
    """The monad whose cohomology is coker(S) for S mapping into the middle term of m."""
    if [str(s) for s in S.tgt] != [str(s) for s in m.A.tgt]:
        raise ValueError("sections must map into the middle term")
    rows = [list(a) + list(b) for a, b in zip(S.entries, m.A.entries)]
    A = ExteriorMatrix(m.field, list(S.source) + list(m.left), m.middle, rows)
    return Monad(A, m.B, name or m.name)


def realized_kernel_map(m: Monad, ring: Ring | None = None) -> GradedMatrix:
    """kappa restricted to U = ker(constant right map): the phi-style matrix."""
    ring = ring or Ring(NVARS, m.field)
    rz = Realizer(ring)
    CB = rz.constant(m.B)
    amb = rz.ambient(m.middle)
    rows = []
    for row in CB.entries:
        rows.append({j: e.constant_value() for j, e in enumerate(row) if e})
    U = linalg.nullspace(ring.field, rows, amb.rank)
    cols = []
    for v in U:
        cols.append([ring.const(v.get(i, 0)) for i in range(amb.rank)])
    Umat = GradedMatrix.from_columns(ring, amb, cols, source_twists=[amb.twist(0)] * len(cols))
    return rz.condition(m.middle) @ Umat


def verify_monad(m: Monad, ring: Ring | None = None, seed: int = 0, samples: int = 50) -> MonadReport:
    from .chern import chern_of_monad

    comp = compose_maps(m.B, m.A)
    zero = is_zero_map(comp)
    rng = random.Random(seed)
    inj = fiberwise_check(m.A, "injective", ring, rng, samples)
    surj = fiberwise_check(m.B, "surjective", ring, rng, samples)
    rep = MonadReport(zero, inj, surj)
    if rep.ok:
        c = chern_of_monad(m)
        rep.rank = c.rank
        rep.chern = c
    else:
        if not zero:
            rep.notes.append("B o A is nonzero")
        if not inj:
            rep.notes.append("left map drops rank somewhere")
        if not surj:
            rep.notes.append("right map is not onto somewhere")
    return rep
