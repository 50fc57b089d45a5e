"""Sparse module Groebner engine.

Terms of a free module F = R e_0 + ... + R e_{r-1} are encoded as Python ints
whose integer order *is* the module term order and for which multiplying by a
monomial is adding a constant.  An element is a dict ``key -> coeff``; its
leading term is ``max(d)``.  Reducing by ``q * g`` is then
``for u, c in g.items(): f[u + shift] -= ...``.

Layout of a key for the term ``m e_i``::

    key = (block_i << BLOCK_BITS) + (base_i << ib) + i + (lin(m) << s)

``lin(m)`` is a linear form in the exponents of m packing the ring order into
fixed-width fields, ``base_i`` carries the twist (or, for Schreyer orders, the
parent key of the leading term of the i-th generator) and ``i`` occupies the
low ``ib`` bits as the final tie-break.
"""

from __future__ import annotations

from .ring import GLEX, GREVLEX

W = 10  # bits per exponent field
FMASK = (1 << W) - 1
OFF = 1 << (W - 1)
BLOCK_BITS = 1024
GUARD_UNIT = 0x80  # packed-exponent fields are 8 bits with a guard bit


class GroebnerError(ArithmeticError):
    pass


class ModuleOrder:
    """A term order on a free module of rank ``len(twists)`` over k[x_0..x_{n-1}].

    ``twists[i]`` is the degree of the basis vector e_i (a summand R(-a)
    has twist a).  ``kind`` is ``"top"`` (module degree, then monomial, then
    index), or built by :meth:`schreyer` / :meth:`graph`.
    """

    def __init__(self, nvars: int, mono: str, twists, bases=None, blocks=None, s_base: int = 0):
        self.n = n = nvars
        self.mono = mono
        self.twists = list(twists)
        r = len(self.twists)
        self.rank = r
        self.ib = max(1, r.bit_length())
        self.s = s_base + self.ib
        if mono == GREVLEX:
            self.k1 = sum(OFF << (k * W) for k in range(1, n))
            w = [1 + (1 << (n * W))] + [(1 << (n * W)) - (1 << (k * W)) for k in range(1, n)]
        elif mono == GLEX:
            self.k1 = 0
            w = [(1 << ((n - 1 - k) * W)) + (1 << (n * W)) for k in range(n)]
        else:
            raise ValueError(mono)
        self.w = w
        self.ws = [x << self.s for x in w]
        if bases is None:
            bases = [self.k1 + (a << (n * W)) for a in self.twists]
        self.bases = list(bases)
        self.blocks = list(blocks) if blocks is not None else [0] * r
        self.B = [(bl << BLOCK_BITS) + (b << self.ib) + i
                  for i, (b, bl) in enumerate(zip(self.bases, self.blocks))]
        self.imask = (1 << self.ib) - 1

    # -- construction ---------------------------------------------------------
    @classmethod
    def top(cls, nvars, mono, twists):
        return cls(nvars, mono, twists)

    @classmethod
    def schreyer(cls, parent: "ModuleOrder", lead_keys, twists):
        """Order on a free module mapping e_j to an element with leading key lead_keys[j]."""
        return cls(parent.n, parent.mono, twists, bases=list(lead_keys), s_base=parent.s)

    @classmethod
    def graph(cls, nvars, mono, target_twists, source_twists):
        """Block order on target (+) source with every target term above every source term."""
        tw = list(target_twists) + list(source_twists)
        blocks = [1] * len(target_twists) + [0] * len(source_twists)
        return cls(nvars, mono, tw, blocks=blocks)

    # -- encoding ---------------------------------------------------------------
    def key(self, i: int, e) -> int:
        k = self.B[i]
        for x, w in zip(e, self.ws):
            if x:
                k += x * w
        return k

    def mono_shift(self, e) -> int:
        """Additive shift implementing multiplication by the monomial e."""
        k = 0
        for x, w in zip(e, self.ws):
            if x:
                k += x * w
        return k

    def comp(self, key: int) -> int:
        return key & self.imask

    def decode(self, key: int):
        i = key & self.imask
        lin = (key - self.B[i]) >> self.s
        return i, self.lin_to_exps(lin)

    def lin_to_exps(self, lin: int) -> tuple:
        K = lin + self.k1
        n = self.n
        if self.mono == GREVLEX:
            return (K & FMASK,) + tuple(OFF - ((K >> (k * W)) & FMASK) for k in range(1, n))
        return tuple((K >> ((n - 1 - k) * W)) & FMASK for k in range(n))

    def shift_to_exps(self, shift: int) -> tuple:
        return self.lin_to_exps(shift >> self.s)

    def term_degree(self, key: int) -> int:
        i, e = self.decode(key)
        return sum(e) + self.twists[i]


def pack(e) -> int:
    E = 0
    for k, x in enumerate(e):
        if x > 127:
            raise GroebnerError("exponent too large for packed divisibility test")
        E |= x << (8 * k)
    return E


def guard_mask(n: int) -> int:
    return sum(GUARD_UNIT << (8 * k) for k in range(n))


def lcm_exps(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


class GBElem:
    __slots__ = ("f", "lt", "comp", "exps", "E", "deg", "idx", "alive")

    def __init__(self, f: dict, order: ModuleOrder, lt=None, idx=0):
        self.f = f
        self.lt = max(f) if lt is None else lt
        self.comp, self.exps = order.decode(self.lt)
        self.E = pack(self.exps)
        self.deg = sum(self.exps) + order.twists[self.comp]
        self.idx = idx
        self.alive = True


class Reducer:
    """Leading-term index of a list of monic elements, grouped by component."""

    def __init__(self, order: ModuleOrder, p: int):
        self.order = order
        self.p = p
        self.G = guard_mask(order.n)
        self.by_comp: dict = {}
        self.elems: list = []

    def add(self, g: GBElem):
        self.elems.append(g)
        self.by_comp.setdefault(g.comp, []).append(g)

    def find(self, key: int):
        order = self.order
        i = key & order.imask
        cands = self.by_comp.get(i)
        if not cands:
            return None
        E = pack(order.lin_to_exps((key - order.B[i]) >> order.s))
        EG = E | self.G
        G = self.G
        for g in cands:
            if ((EG - g.E) & G) == G:
                return g
        return None

    def reduce(self, f: dict, full: bool = True, track=None) -> dict:
        """Reduce f in place; returns the remainder (f itself when ``full`` is False).

        With ``track`` a list, appends (elem, shift, coeff) for each step so that
        original f = remainder + sum coeff * (shift . elem).
        """
        p = self.p
        rem = {} if full else None
        find = self.find
        while f:
            t = max(f)
            g = find(t)
            if g is None:
                if not full:
                    return f
                rem[t] = f.pop(t)
                continue
            c = f[t]
            shift = t - g.lt
            if track is not None:
                track.append((g, shift, c))
            if p:
                for u, cu in g.f.items():
                    k = u + shift
                    v = (f.get(k, 0) - c * cu) % p
                    if v:
                        f[k] = v
                    else:
                        del f[k]
            else:
                for u, cu in g.f.items():
                    k = u + shift
                    v = f.get(k, 0) - c * cu
                    if v:
                        f[k] = v
                    else:
                        del f[k]
        return rem if full else f


def make_monic(f: dict, p: int) -> dict:
    lt = max(f)
    c = f[lt]
    if p:
        if c == 1:
            return f
        inv = pow(c, -1, p)
        return {k: v * inv % p for k, v in f.items()}
    if c == 1:
        return f
    return {k: v / c for k, v in f.items()}


def add_scaled(f: dict, g: dict, c, shift: int, p: int):
    """f += c * (shift . g) in place."""
    if p:
        for u, cu in g.items():
            k = u + shift
            v = (f.get(k, 0) + c * cu) % p
            if v:
                f[k] = v
            else:
                del f[k]
    else:
        for u, cu in g.items():
            k = u + shift
            v = f.get(k, 0) + c * cu
            if v:
                f[k] = v
            else:
                del f[k]


def spoly(a: GBElem, b: GBElem, lcm, order: ModuleOrder, p: int) -> dict:
    """lcm/LT(a) * a - lcm/LT(b) * b for monic a, b."""
    sa = order.mono_shift(tuple(x - y for x, y in zip(lcm, a.exps)))
    sb = order.mono_shift(tuple(x - y for x, y in zip(lcm, b.exps)))
    f = {u + sa: c for u, c in a.f.items()}
    add_scaled(f, b.f, (p - 1) if p else -1, sb, p)
    return f


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _coprime(a, b) -> bool:
    return not any(x and y for x, y in zip(a, b))


class Buchberger:
    """Homogeneous-friendly Buchberger with Gebauer-Moeller pair pruning.

    Pairs are processed in order of (degree, creation index); the normal
    selection strategy for degree-compatible orders.
    """

    def __init__(self, order: ModuleOrder, p: int, max_degree=None, progress=None):
        self.order = order
        self.p = p
        self.max_degree = max_degree
        self.progress = progress
        self.red = Reducer(order, p)
        self.pairs: list = []
        self.counter = 0
        self.truncated = False
        self.kept_gens: list = []

    def _update(self, h: GBElem):
        # Gebauer-Moeller installation of h (Becker-Weispfenning UPDATE).
        # The product criterion only holds for ideals, not for module elements.
        tw = self.order.twists[h.comp]
        ideal = self.order.rank == 1
        olds = [g for g in self.red.by_comp.get(h.comp, []) if g.alive]
        C = [(g, lcm_exps(g.exps, h.exps)) for g in olds]
        D = []
        while C:
            g1, l1 = C.pop()
            if ideal and _coprime(g1.exps, h.exps):
                D.append((g1, l1))
                continue
            redundant = False
            for _, l2 in C:
                if _divides(l2, l1):
                    redundant = True
                    break
            if not redundant:
                for _, l2 in D:
                    if _divides(l2, l1):
                        redundant = True
                        break
            if not redundant:
                D.append((g1, l1))
        E = [(g, l) for g, l in D if not (ideal and _coprime(g.exps, h.exps))]
        kept = []
        for pr in self.pairs:
            _, _, a, b, l = pr
            if a.comp == h.comp and _divides(h.exps, l):
                if lcm_exps(a.exps, h.exps) != l and lcm_exps(b.exps, h.exps) != l:
                    continue
            kept.append(pr)
        for g, l in E:
            self.counter += 1
            kept.append((sum(l) + tw, self.counter, g, h, l))
        kept.sort(key=lambda t: (t[0], t[1]))
        self.pairs = kept
        for g in olds:
            if _divides(h.exps, g.exps):
                g.alive = False
        self.red.add(h)

    def _insert(self, f: dict):
        f = make_monic(f, self.p)
        h = GBElem(f, self.order, idx=len(self.red.elems))
        self._update(h)
        return h

    def run(self, gens) -> list:
        p = self.p
        pending = []
        for gi, f in enumerate(gens):
            if f:
                g = GBElem(dict(f), self.order)
                pending.append((g.deg, gi, g.f))
        pending.sort(key=lambda t: (t[0], t[1]))
        while pending or self.pairs:
            d = min(pending[0][0] if pending else 1 << 60,
                    self.pairs[0][0] if self.pairs else 1 << 60)
            if self.max_degree is not None and d > self.max_degree:
                self.truncated = True
                break
            batch_gens = [(gi, f) for dd, gi, f in pending if dd == d]
            pending = [t for t in pending if t[0] != d]
            batch_pairs = [pr for pr in self.pairs if pr[0] == d]
            self.pairs = [pr for pr in self.pairs if pr[0] != d]
            if self.progress is not None:
                self.progress(d, len(batch_pairs) + len(batch_gens), len(self.red.elems))
            for _, _, a, b, l in batch_pairs:
                r = self.red.reduce(spoly(a, b, l, self.order, p), full=False)
                if r:
                    self._insert(r)
            # generators after pairs so that a surviving generator is a minimal one
            for gi, f in batch_gens:
                r = self.red.reduce(dict(f), full=False)
                if r:
                    self._insert(r)
                    self.kept_gens.append(gi)
        return self.red.elems

    def reduced_basis(self) -> list:
        """Inter-reduce the alive elements into the reduced basis."""
        alive = [g for g in self.red.elems if g.alive]
        # drop elements whose LT is divisible by another's
        keep = []
        for g in alive:
            if not any(h is not g and h.comp == g.comp and _divides(h.exps, g.exps)
                       and (h.exps != g.exps or h.idx < g.idx) for h in alive):
                keep.append(g)
        red = Reducer(self.order, self.p)
        for g in keep:
            red.add(g)
        out = []
        for g in keep:
            tail = dict(g.f)
            lt = tail.pop(g.lt)
            r = _reduce_excluding(red, tail, g)
            r[g.lt] = lt
            out.append(GBElem(r, self.order, lt=g.lt))
        out.sort(key=lambda g: g.lt)
        return out


def _reduce_excluding(red: Reducer, f: dict, skip: GBElem) -> dict:
    # tails can only be divisible by other elements' LTs (reduced basis property)
    return red.reduce(f, full=True)


def groebner(order: ModuleOrder, gens, p: int, max_degree=None, progress=None):
    bb = Buchberger(order, p, max_degree=max_degree, progress=progress)
    bb.run(gens)
    return bb.reduced_basis(), bb.truncated
