"""Monomials, monomial orders and sparse polynomials over k[x0..x_{n-1}]."""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb
from typing import Mapping

from .field import DEFAULT_PRIME, Field, FieldElement, FieldError, GF

GREVLEX = "grevlex"
GLEX = "glex"


class AnyDegree:
    """Sentinel returned as the degree of the zero polynomial."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "ANY_DEGREE"


ANY_DEGREE = AnyDegree()


@dataclass(frozen=True, order=False)
class Monomial:
    exponents: tuple

    def __post_init__(self):
        if any(e < 0 for e in self.exponents):
            raise ValueError("negative exponent")

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __repr__(self):
        return mono_str(self.exponents) or "1"


class MonomialOrder:
    """Degree-compatible orders with x0 > x1 > ... ."""

    def __init__(self, tag: str = GREVLEX):
        if tag not in (GREVLEX, GLEX):
            raise ValueError(f"unknown monomial order {tag!r}")
        self.tag = tag

    def key(self, e: tuple) -> tuple:
        """Sort key; a larger key is a larger monomial."""
        if self.tag == GREVLEX:
            return (sum(e),) + tuple(-x for x in reversed(e))
        return (sum(e),) + tuple(e)

    def compare(self, a, b) -> int:
        a = a.exponents if isinstance(a, Monomial) else a
        b = b.exponents if isinstance(b, Monomial) else b
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other.tag == self.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return f"MonomialOrder({self.tag!r})"


def mono_compare(a: Monomial, b: Monomial, order: MonomialOrder) -> str:
    c = order.compare(a, b)
    return "greater" if c > 0 else "less" if c < 0 else "equal"


def mono_str(e: tuple, names=None) -> str:
    parts = []
    for i, x in enumerate(e):
        if x:
            v = names[i] if names else f"x{i}"
            parts.append(v if x == 1 else f"{v}^{x}")
    return "*".join(parts)


def monomials_of_degree(n: int, d: int) -> list:
    """All exponent tuples of total degree d in n variables, descending in lex."""
    if d < 0:
        return []
    if n == 1:
        return [(d,)]
    out = []
    for a in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - a):
            out.append((a,) + rest)
    return out


class Ring:
    """The graded ring k[x0..x_{n-1}] with a fixed monomial order."""

    def __init__(self, nvars: int = 5, field: Field | None = None, order: str = GREVLEX):
        if nvars < 1:
            raise ValueError("need at least one variable")
        self.nvars = nvars
        self.field = field if field is not None else GF(DEFAULT_PRIME)
        self.order = MonomialOrder(order)
        self._mono_cache: dict = {}

    def __eq__(self, other):
        return (isinstance(other, Ring) and other.nvars == self.nvars
                and other.field == self.field and other.order == self.order)

    def __hash__(self):
        return hash((self.nvars, self.field, self.order.tag))

    def __repr__(self):
        return f"Ring({self.nvars}, {self.field!r}, {self.order.tag!r})"

    def descriptor(self) -> dict:
        return {"nvars": self.nvars, "field": self.field.tag(), "order": self.order.tag}

    def with_field(self, field: Field) -> "Ring":
        return Ring(self.nvars, field, self.order.tag)

    def with_order(self, order: str) -> "Ring":
        return Ring(self.nvars, self.field, order)

    def dim(self, d: int) -> int:
        """dim_k R_d."""
        return comb(d + self.nvars - 1, self.nvars - 1) if d >= 0 else 0

    def monomials(self, d: int) -> list:
        """Exponent tuples of degree d, sorted descending in the ring order."""
        m = self._mono_cache.get(d)
        if m is None:
            m = sorted(monomials_of_degree(self.nvars, d), key=self.order.key, reverse=True)
            self._mono_cache[d] = m
        return m

    # constructors -------------------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field.convert(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, i: int) -> "Polynomial":
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one()})

    def gens(self) -> list:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, e) -> "Polynomial":
        e = e.exponents if isinstance(e, Monomial) else tuple(e)
        return Polynomial(self, {e: self.field.one()})

    def __call__(self, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            return x.change_ring(self) if x.ring != self else x
        if isinstance(x, str):
            return parse_polynomial(x, self)
        if isinstance(x, FieldElement):
            return self.const(x.value)
        return self.const(x)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to raw coefficients."""

    __slots__ = ("ring", "terms", "_hdeg")

    def __init__(self, ring: Ring, terms: Mapping, _clean: bool = False):
        self.ring = ring
        if _clean:
            self.terms = terms
        else:
            conv = ring.field.convert
            t = {}
            for e, c in terms.items():
                e = e.exponents if isinstance(e, Monomial) else tuple(e)
                if len(e) != ring.nvars:
                    raise ValueError("exponent length does not match ring")
                c = conv(c)
                if c:
                    t[e] = c
            self.terms = t
        self._hdeg = None

    # structure -----------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def monomials(self) -> list:
        return [Monomial(e) for e in self.sorted_exponents()]

    def sorted_exponents(self) -> list:
        return sorted(self.terms, key=self.ring.order.key, reverse=True)

    def coefficient(self, m) -> FieldElement:
        e = m.exponents if isinstance(m, Monomial) else tuple(m)
        return FieldElement(self.ring.field, self.terms.get(e, 0))

    def term_map(self) -> dict:
        """Monomial -> FieldElement view of the terms."""
        f = self.ring.field
        return {Monomial(e): FieldElement(f, c) for e, c in self.terms.items()}

    def homogeneous_degree(self):
        """d if every term has degree d; None if inhomogeneous; ANY_DEGREE for 0."""
        if self._hdeg is None:
            if not self.terms:
                self._hdeg = ANY_DEGREE
            else:
                degs = {sum(e) for e in self.terms}
                self._hdeg = degs.pop() if len(degs) == 1 else False
        return None if self._hdeg is False else self._hdeg

    def is_homogeneous(self) -> bool:
        return self.homogeneous_degree() is not None

    @property
    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def leading_exponent(self) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=self.ring.order.key)

    def leading_coefficient(self):
        return self.terms[self.leading_exponent()]

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero())

    # arithmetic ------------------------------------------------------------
    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.ring.field != self.ring.field:
                raise FieldError(f"mixed fields {self.ring.field} and {other.ring.field}")
            if other.ring.nvars != self.ring.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, FieldElement):
            if other.field != self.ring.field:
                raise FieldError("mixed fields")
            return self.ring.const(other.value)
        if isinstance(other, int) or hasattr(other, "denominator"):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        p = self.ring.field.characteristic
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e)
            if v is None:
                t[e] = c
            else:
                v = (v + c) % p if p else v + c
                if v:
                    t[e] = v
                else:
                    del t[e]
        return Polynomial(self.ring, t, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return Polynomial(self.ring, {e: f.neg(c) for e, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "Polynomial":
        f = self.ring.field
        c = c.value if isinstance(c, FieldElement) else f.convert(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: f.mul(v, c) for e, v in self.terms.items()}, _clean=True)

    def __mul__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        p = self.ring.field.characteristic
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e)
                v = c1 * c2 if v is None else v + c1 * c2
                t[e] = v
        if p:
            t = {e: c % p for e, c in t.items() if c % p}
        else:
            t = {e: c for e, c in t.items() if c}
        return Polynomial(self.ring, t, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, e: tuple, c=None) -> "Polynomial":
        f = self.ring.field
        if c is None:
            t = {tuple(a + b for a, b in zip(x, e)): v for x, v in self.terms.items()}
        else:
            t = {tuple(a + b for a, b in zip(x, e)): f.mul(v, c) for x, v in self.terms.items()}
            t = {k: v for k, v in t.items() if v}
        return Polynomial(self.ring, t, _clean=True)

    def derivative(self, i: int) -> "Polynomial":
        f = self.ring.field
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                v = f.mul(c, f.convert(e[i]))
                if v:
                    ne = list(e)
                    ne[i] -= 1
                    t[tuple(ne)] = v
        return Polynomial(self.ring, t, _clean=True)

    def evaluate(self, point) -> object:
        f = self.ring.field
        acc = f.zero()
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = f.mul(v, f.convert(x) ** k if not f.characteristic else pow(int(x), k, f.characteristic))
            acc = f.add(acc, v)
        return acc

    def change_ring(self, ring: Ring) -> "Polynomial":
        if ring.nvars != self.ring.nvars:
            raise ValueError("variable count mismatch")
        if ring.field == self.ring.field:
            return Polynomial(ring, self.terms, _clean=True)
        src = self.ring.field
        return Polynomial(ring, {e: src.signed(c) for e, c in self.terms.items()})

    def monic(self) -> "Polynomial":
        return self.scale(self.ring.field.inv(self.leading_coefficient()))

    # comparison / display -------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring.field == other.ring.field and self.terms == other.terms
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def to_string(self, names=None) -> str:
        if not self.terms:
            return "0"
        f = self.ring.field
        out = []
        for e in self.sorted_exponents():
            c = f.signed(self.terms[e])
            neg = c < 0
            a = -c if neg else c
            m = mono_str(e, names)
            if not m:
                body = str(a)
            elif a == 1:
                body = m
            else:
                body = f"{a}*{m}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.to_string()!r})"


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.ring.field != g.ring.field:
        raise FieldError("mixed-field operands")
    return f * g


def poly_homogeneous_degree(f: Polynomial):
    return f.homogeneous_degree()


# ---------------------------------------------------------------------------
# text grammar: integers, x0.. (y0.. as aliases), + - * ^, parentheses
_TOKEN = re.compile(r"\s*(?:(\d+)|([xy])(\d+)|(\^|\*\*)|([-+*()]))")


class ParseError(ValueError):
    pass


def _tokenize(text: str) -> list:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at {text[pos:pos + 10]!r}")
        num, _, idx, powop, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif idx is not None:
            out.append(("var", int(idx)))
        elif powop is not None:
            out.append(("op", "^"))
        else:
            out.append(("op", op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take():
        nonlocal pos
        t = peek()
        pos += 1
        return t

    def expr():
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        elif peek() == ("op", "+"):
            take()
        acc = term()
        if sign < 0:
            acc = -acc
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = factor()
        while peek() == ("op", "*"):
            take()
            acc = acc * factor()
        return acc

    def factor():
        b = atom()
        if peek() == ("op", "^"):
            take()
            kind, k = take()
            if kind != "num":
                raise ParseError("exponent must be an integer")
            b = b ** k
        return b

    def atom():
        kind, val = take()
        if kind == "num":
            return ring.const(val)
        if kind == "var":
            if val >= ring.nvars:
                raise ParseError(f"variable index {val} out of range")
            return ring.var(val)
        if (kind, val) == ("op", "("):
            e = expr()
            if take() != ("op", ")"):
                raise ParseError("unbalanced parenthesis")
            return e
        if (kind, val) == ("op", "-"):
            return -factor()
        raise ParseError(f"unexpected token {val!r}")

    if not toks:
        raise ParseError("empty polynomial")
    result = expr()
    if pos != len(toks):
        raise ParseError(f"trailing input near token {pos}")
    return result

