"""Chern classes on P^4, Riemann-Roch for ideal sheaves of surfaces, and
cohomology-table scaffolds for ideal sheaves of surfaces in P^4.

Classes live in Z[h]/(h^5); a :class:`ChernPolynomial` is a rank together
with the total class 1 + c1 h + ... + c4 h^4.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable

TOP = 4  # dimension of P^4


def _gbinom(r: int, k: int) -> int:
    """Generalized binomial coefficient, valid for negative r."""
    if k < 0:
        return 0
    num = 1
    for t in range(k):
        num *= r - t
    den = 1
    for t in range(1, k + 1):
        den *= t
    return num // den


def _mul(a: list, b: list) -> list:
    out = [0] * (TOP + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(TOP + 1 - i):
                out[i + j] += x * b[j]
    return out


def _inv(a: list) -> list:
    if a[0] != 1:
        raise ValueError("total Chern class must start with 1")
    out = [1] + [0] * TOP
    for k in range(1, TOP + 1):
        out[k] = -sum(a[j] * out[k - j] for j in range(1, k + 1))
    return out


class ChernPolynomial:
    """Rank and total Chern class of a (virtual) bundle on P^4."""

    __slots__ = ("rank", "total")

    def __init__(self, rank: int, classes: Iterable[int] = ()):
        cs = list(classes)[:TOP]
        self.rank = int(rank)
        self.total = [1] + [int(c) for c in cs] + [0] * (TOP - len(cs))

    @classmethod
    def trivial(cls, rank: int = 0) -> "ChernPolynomial":
        return cls(rank)

    @classmethod
    def line(cls, a: int) -> "ChernPolynomial":
        """c(O(a))."""
        return cls(1, [a])

    def classes(self) -> tuple:
        return tuple(self.total[1:])

    def __mul__(self, other: "ChernPolynomial") -> "ChernPolynomial":
        """Class of a direct sum (Whitney)."""
        return ChernPolynomial(self.rank + other.rank, _mul(self.total, other.total)[1:])

    def __truediv__(self, other: "ChernPolynomial") -> "ChernPolynomial":
        """Class of the kernel/cokernel complement in an exact sequence."""
        return ChernPolynomial(self.rank - other.rank, _mul(self.total, _inv(other.total))[1:])

    def inverse(self) -> "ChernPolynomial":
        return ChernPolynomial(-self.rank, _inv(self.total)[1:])

    def __pow__(self, k: int) -> "ChernPolynomial":
        base = self if k >= 0 else self.inverse()
        out = ChernPolynomial(0)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other):
        return (isinstance(other, ChernPolynomial) and self.rank == other.rank
                and self.total == other.total)

    def __hash__(self):
        return hash((self.rank, tuple(self.total)))

    def __repr__(self):
        return f"ChernPolynomial(rank={self.rank}, c={self.classes()})"

    def to_string(self) -> str:
        parts = []
        for k, c in enumerate(self.total):
            if not c:
                continue
            mono = "" if k == 0 else ("h" if k == 1 else f"h^{k}")
            body = str(abs(c)) if not mono else (mono if abs(c) == 1 else f"{abs(c)}{mono}")
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def chern_twist(c: ChernPolynomial, t: int) -> ChernPolynomial:
    """c(F(t)) from c(F): c_k(F(t)) = sum_j C(r - j, k - j) t^(k-j) c_j(F)."""
    r = c.rank
    out = []
    for k in range(1, TOP + 1):
        out.append(sum(_gbinom(r - j, k - j) * t ** (k - j) * c.total[j] for j in range(k + 1)))
    return ChernPolynomial(r, out)


def chern_diff_bundle(i: int) -> ChernPolynomial:
    """c(Omega^i(i)) on P^4 via 0 -> Omega^i(i) -> Lambda^i V* (x) O -> Omega^{i-1}(i) -> 0."""
    if not 0 <= i <= TOP:
        raise ValueError(f"differential index {i} outside 0..{TOP}")
    c = ChernPolynomial(1)
    for k in range(1, i + 1):
        prev = chern_twist(c, 1)
        c = ChernPolynomial(comb(TOP + 1, k), [0] * TOP) / prev
    return c


def chern_from_betti(B) -> ChernPolynomial:
    out = ChernPolynomial(0)
    for (i, j), b in sorted(B.data.items()):
        out = out * ChernPolynomial.line(-j) ** (b if i % 2 == 0 else -b)
    return out


def summand_class(summands) -> ChernPolynomial:
    out = ChernPolynomial(0)
    for s in summands:
        out = out * chern_twist(chern_diff_bundle(s.i), s.t) ** s.mult
    return out


def chern_of_monad(m) -> ChernPolynomial:
    from .exterior import compose_maps, is_zero_map

    if not is_zero_map(compose_maps(m.B, m.A)):
        raise ValueError("not a monad: the composite is nonzero")
    return summand_class(m.middle) / (summand_class(m.left) * summand_class(m.right))


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SurfaceInvariants:
    """Numerical invariants of a smooth surface X in P^4."""

    d: int
    pi: int
    q: int
    pg: int
    HK: int | None = None
    K2: int | None = None

    def __post_init__(self):
        hk = 2 * self.pi - 2 - self.d
        if self.HK is None:
            object.__setattr__(self, "HK", hk)
        elif self.HK != hk:
            raise ValueError(f"H.K = {self.HK} contradicts the sectional genus (expected {hk})")

    @property
    def chi(self) -> int:
        return 1 - self.q + self.pg

    @property
    def N(self) -> int:
        return self.pi - self.q + self.pg - 1


def chi_line(m: int) -> int:
    """chi(O_{P^4}(m)) = C(m+4, 4) as a polynomial in m."""
    return (m + 4) * (m + 3) * (m + 2) * (m + 1) // 24


def riemann_roch_chi(inv: SurfaceInvariants, m: int) -> int:
    return (chi_line(m) - (m + 1) * m // 2 * inv.d + m * (inv.pi - 1) - 1 + inv.q - inv.pg)


def double_point_residual(inv: SurfaceInvariants, K2: int | None = None) -> int:
    K2 = inv.K2 if K2 is None else K2
    if K2 is None:
        raise ValueError("K^2 is required")
    return inv.d ** 2 - 10 * inv.d - 5 * inv.HK - 2 * K2 + 12 * inv.chi


def solve_k2(inv: SurfaceInvariants) -> Fraction:
    """The K^2 that makes the double-point residual vanish."""
    return Fraction(inv.d ** 2 - 10 * inv.d - 5 * inv.HK + 12 * inv.chi, 2)


# ---------------------------------------------------------------------------

FORCED = "forced-zero"
COMPUTED = "computed"
RESIDUAL = "riemann-roch-residual"
UNKNOWN = "unknown"


class CohomologyTableError(ValueError):
    def __init__(self, cell, value, reason):
        super().__init__(f"cell h^{cell[0]}({cell[1]}) = {value}: {reason}")
        self.cell = cell
        self.value = value
        self.reason = reason


class CohomologyTable:
    """Cells (i, m) -> (value or None, provenance tag) over a twist window."""

    def __init__(self, window=(-1, 4), cells: dict | None = None, top: int = TOP, label: str = ""):
        self.window = tuple(window)
        self.top = top
        self.cells = dict(cells or {})
        self.label = label

    def twists(self) -> range:
        return range(self.window[0], self.window[1] + 1)

    def value(self, i: int, m: int):
        return self.cells.get((i, m), (None, UNKNOWN))[0]

    def tag(self, i: int, m: int) -> str:
        return self.cells.get((i, m), (None, UNKNOWN))[1]

    def set(self, i: int, m: int, v, tag: str):
        if v is not None and v < 0:
            raise CohomologyTableError((i, m), v, "negative dimension")
        self.cells[(i, m)] = (v, tag)

    def complete(self) -> bool:
        return all(self.value(i, m) is not None for i in range(self.top + 1) for m in self.twists())

    def column_chi(self, m: int):
        vals = [self.value(i, m) for i in range(self.top + 1)]
        if any(v is None for v in vals):
            return None
        return sum((-1) ** i * v for i, v in enumerate(vals))

    def values(self) -> dict:
        return {(i, m): self.value(i, m) for i in range(self.top + 1) for m in self.twists()}

    def render(self) -> str:
        """Rows i = top..0 (i increasing upward), twists m rightward; zeros are empty boxes."""
        cols = list(self.twists())
        cell = []
        for i in range(self.top, -1, -1):
            row = []
            for m in cols:
                v = self.value(i, m)
                row.append("*" if v is None else ("" if v == 0 else str(v)))
            cell.append(row)
        w = max([len(s) for r in cell for s in r] + [len(str(m)) for m in cols] + [1])
        lines = []
        sep = "  +" + "+".join("-" * (w + 2) for _ in cols) + "+"
        lines.append(sep)
        for i, row in zip(range(self.top, -1, -1), cell):
            lines.append(f"{i} |" + "|".join(f" {s.center(w)} " for s in row) + "|")
            lines.append(sep)
        lines.append("   " + " ".join(f" {str(m).center(w)} " for m in cols) + "  m ->")
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> dict:
        cells = {}
        for i in range(self.top + 1):
            for m in self.twists():
                v, t = self.cells.get((i, m), (None, UNKNOWN))
                cells[f"{i},{m}"] = {"value": v, "tag": t}
        return {"label": self.label, "window": list(self.window), "cells": cells}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_values(cls, values: dict, window, tag: str = COMPUTED, label: str = "") -> "CohomologyTable":
        T = cls(window, label=label)
        for (i, m), v in values.items():
            T.set(i, m, v, tag)
        return T


def cohomology_table(inv: SurfaceInvariants, window=(-1, 4)) -> CohomologyTable:
    """Scaffold for h^i(J_X(m)) of a smooth non-general-type surface off every cubic.

    Fills the forced zeros and the known entries (N + 1, p_g, q), then alternates
    two rules until nothing changes: a Riemann-Roch residual for a column with a
    single unknown cell, and the Beilinson vanishing: h^q(m) = 0 when the only
    possible source killing it in the Beilinson spectral sequence of J_X(m) is
    d_1 from h^q(m-1) copies of Omega^1(1), with h^q(m-1) <= 1 (a surjection
    t Omega^1(1) -> O needs every row span to have dimension >= 2).
    """
    T = CohomologyTable(window, label="J_X scaffold")
    lo, hi = window
    for m in range(lo, hi + 1):
        T.set(4, m, 0, FORCED)
        if m == -1:
            T.set(3, m, inv.N + 1, FORCED)
        elif m == 0:
            T.set(3, m, inv.pg, FORCED)
        elif m > 0:
            T.set(3, m, 0, FORCED)
        if m <= -1:
            T.set(2, m, 0, FORCED)
        elif m == 0:
            T.set(2, m, inv.q, FORCED)
        if m <= 1:
            T.set(1, m, 0, FORCED)
        if m <= 3:
            T.set(0, m, 0, FORCED)

    def known(i, m):
        if i > TOP or i < 0:
            return 0
        if lo <= m <= hi:
            return T.value(i, m)
        return _outside(inv, i, m)

    changed = True
    while changed:
        changed = False
        for m in range(lo, hi + 1):
            unknown = [i for i in range(TOP + 1) if T.value(i, m) is None]
            if len(unknown) == 1:
                i = unknown[0]
                rest = sum((-1) ** k * T.value(k, m) for k in range(TOP + 1) if k != i)
                v = (riemann_roch_chi(inv, m) - rest) * (-1) ** i
                if v < 0:
                    raise CohomologyTableError((i, m), v, "Riemann-Roch residual is negative")
                T.set(i, m, v, RESIDUAL)
                changed = True
        for q in (1, 2, 3):
            for m in range(lo, hi + 1):
                if T.value(q, m) is not None:
                    continue
                t = known(q, m - 1)
                if t is None or t > 1:
                    continue
                if all(known(q + r - 1, m - r) == 0 for r in range(2, TOP + 1)):
                    T.set(q, m, 0, FORCED)
                    changed = True
    return T


def _outside(inv: SurfaceInvariants, i: int, m: int):
    """Scaffold values just left of the window (only the cells the rules need)."""
    if m < -1:
        if i == 3:
            return None
        return 0 if i != 4 else None
    return None
