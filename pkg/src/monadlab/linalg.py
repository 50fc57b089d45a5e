"""Exact dense linear algebra over QQ and F_p (python-flint backed).

Matrices come in as lists of sparse rows ``{col: raw coeff}``.
"""

from __future__ import annotations

from fractions import Fraction

import flint

from .field import Field


def _dense(field: Field, rows: list, ncols: int):
    p = field.characteristic
    nr = len(rows)
    if p:
        flat = [0] * (nr * ncols)
        for i, r in enumerate(rows):
            base = i * ncols
            for j, v in r.items():
                flat[base + j] = int(v)
        return flint.nmod_mat(nr, ncols, flat, p)
    M = flint.fmpq_mat(nr, ncols)
    for i, r in enumerate(rows):
        for j, v in r.items():
            v = Fraction(v)
            M[i, j] = flint.fmpq(v.numerator, v.denominator)
    return M


def rank(field: Field, rows: list, ncols: int) -> int:
    if not rows or not ncols:
        return 0
    return _dense(field, rows, ncols).rank()


def _to_raw(field: Field, x):
    if field.characteristic:
        return int(x)
    x = flint.fmpq(x)
    return Fraction(int(x.p), int(x.q))


def rref(field: Field, rows: list, ncols: int):
    """(list of nonzero sparse rows in reduced echelon form, pivot columns)."""
    if not rows or not ncols:
        return [], []
    M, r = _dense(field, rows, ncols).rref()
    out, piv = [], []
    for i in range(r):
        row = {}
        lead = None
        for j in range(ncols):
            v = M[i, j]
            if v != 0:
                row[j] = _to_raw(field, v)
                if lead is None:
                    lead = j
        out.append(row)
        piv.append(lead)
    return out, piv


def nullspace(field: Field, rows: list, ncols: int) -> list:
    """Basis of {x : A x = 0} as sparse dicts, A given by its rows."""
    if not ncols:
        return []
    if not rows:
        return [{j: field.one()} for j in range(ncols)]
    red, piv = rref(field, rows, ncols)
    pivset = set(piv)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = {free: field.one()}
        for r, pc in zip(red, piv):
            c = r.get(free)
            if c:
                v[pc] = field.neg(c)
        basis.append(v)
    return basis


def solve_in_span(field: Field, rows: list, ncols: int, target: dict):
    """Coefficients y with sum y_i rows[i] = target, or None."""
    # transpose: columns are the given rows
    nr = len(rows)
    T = [dict() for _ in range(ncols)]
    for i, r in enumerate(rows):
        for j, v in r.items():
            T[j][i] = v
    aug = [dict(T[j]) for j in range(ncols)]
    for j in range(ncols):
        v = target.get(j)
        if v:
            aug[j][nr] = v
    red, piv = rref(field, aug, nr + 1)
    if nr in piv:
        return None
    y = {}
    for r, pc in zip(red, piv):
        c = r.get(nr)
        if c:
            y[pc] = c
    return y
