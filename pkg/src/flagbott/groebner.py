"""Buchberger Gröbner bases over Q and F_p, ideal membership and equality,
elimination, and Hilbert series of graded quotients.

Monomials are packed into single Python integers so that comparison in the
chosen order, multiplication and divisibility are integer operations.  Each
order is a sequence of blocks; a block contributes a weighted-degree field
followed (for blocks of two or more variables) by one field per variable
holding ``CAP - exponent``, smallest variable most significant.  Integer
comparison of packed monomials is then exactly block-wise weighted grevlex,
and pure lex is the special case of singleton blocks.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2

from .errors import BudgetExceeded, RingMismatch
from .polykernel import QQ, CoefficientRing, Polynomial, Variable, monomial, variables_of
from .series import GradedSeries, int_poly_mul

DEFAULT_PAIR_BUDGET = 10**6

_WIDTH = 16
_GUARD = 1 << (_WIDTH - 1)
_CAP = 1 << (_WIDTH - 2)
_MASK = (1 << _WIDTH) - 1

_GB_FAMILY = {"c": 0, "u": 1, "y": 2, "z": 2, "x": 3}


def default_budget() -> int:
    env = os.environ.get("FLAGBOTT_BUDGET")
    return int(env) if env else DEFAULT_PAIR_BUDGET


def groebner_rank(v: Variable):
    """Default variable order: c < u[1,*] < ... < u[m,*] < y/z by stage < x."""
    return (_GB_FAMILY[v.family], v.stage, v.family == "z", v.index)


def default_variable_order(variables: Iterable[Variable]) -> tuple[Variable, ...]:
    """Biggest variable first."""
    return tuple(sorted(set(variables), key=groebner_rank, reverse=True))


@dataclass(frozen=True)
class MonomialOrder:
    kind: str  # "grevlex", "lex" or "elimination"
    variables: tuple[Variable, ...]  # biggest first
    split: int = 0  # elimination: the first ``split`` variables are eliminated

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elimination"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("repeated variable in monomial order")

    @classmethod
    def for_polys(cls, polys: Iterable[Polynomial], kind: str = "grevlex", extra: Iterable[Variable] = ()) -> "MonomialOrder":
        vs = variables_of(polys) | set(extra)
        return cls(kind, default_variable_order(vs))

    @classmethod
    def elimination(cls, eliminate: Iterable[Variable], keep: Iterable[Variable]) -> "MonomialOrder":
        elim = default_variable_order(eliminate)
        rest = default_variable_order(set(keep) - set(elim))
        return cls("elimination", elim + rest, len(elim))

    def blocks(self) -> list[tuple[int, ...]]:
        n = len(self.variables)
        if self.kind == "grevlex":
            return [tuple(range(n))] if n else []
        if self.kind == "lex":
            return [(i,) for i in range(n)]
        out = []
        if self.split:
            out.append(tuple(range(self.split)))
        if n > self.split:
            out.append(tuple(range(self.split, n)))
        return out


class _Packer:
    """Encodes exponent vectors (index 0 = biggest variable) as ordered integers."""

    def __init__(self, order: MonomialOrder):
        self.order = order
        self.variables = order.variables
        self.index = {v: i for i, v in enumerate(self.variables)}
        self.weights = [v.weight for v in self.variables]
        n = len(self.variables)
        fields = []  # most significant first: ("deg", block) or ("var", i)
        for block in order.blocks():
            fields.append(("deg", block))
            if len(block) > 1:
                for i in reversed(block):
                    fields.append(("var", i))
        nf = len(fields)
        self.fields = fields
        self.shift = {}
        self.deg_fields = []
        self.var_shift = [None] * n
        K = DEG = COMP = DEG_GUARD = COMP_GUARD = 0
        for pos, f in enumerate(fields):
            sh = _WIDTH * (nf - 1 - pos)
            if f[0] == "deg":
                self.deg_fields.append((sh, f[1]))
                DEG |= _MASK << sh
                DEG_GUARD |= _GUARD << sh
            else:
                self.var_shift[f[1]] = sh
                K += _CAP << sh
                COMP |= _MASK << sh
                COMP_GUARD |= _GUARD << sh
        self.K, self.DEG, self.COMP = K, DEG, COMP
        self.DEG_GUARD, self.COMP_GUARD = DEG_GUARD, COMP_GUARD
        self.n = n

    def pack(self, exps: Sequence[int]) -> int:
        out = 0
        for sh, block in self.deg_fields:
            out |= sum(self.weights[i] * exps[i] for i in block) << sh
        for i, sh in enumerate(self.var_shift):
            if sh is not None:
                out |= (_CAP - exps[i]) << sh
        return out

    def unpack(self, m: int) -> tuple[int, ...]:
        exps = [0] * self.n
        for sh, block in self.deg_fields:
            if len(block) == 1:
                i = block[0]
                exps[i] = ((m >> sh) & _MASK) // self.weights[i]
        for i, sh in enumerate(self.var_shift):
            if sh is not None:
                exps[i] = _CAP - ((m >> sh) & _MASK)
        return tuple(exps)

    def divides(self, a: int, b: int) -> bool:
        """a | b."""
        if self.DEG and (((b & self.DEG) | self.DEG_GUARD) - (a & self.DEG)) & self.DEG_GUARD != self.DEG_GUARD:
            return False
        if self.COMP and (((a & self.COMP) | self.COMP_GUARD) - (b & self.COMP)) & self.COMP_GUARD != self.COMP_GUARD:
            return False
        return True

    def weight(self, m: int) -> int:
        return sum((m >> sh) & _MASK for sh, _ in self.deg_fields)

    def from_monomial(self, mono) -> int:
        exps = [0] * self.n
        for v, e in mono:
            try:
                exps[self.index[v]] = e
            except KeyError:
                raise ValueError(f"variable {v} is not in the monomial order") from None
        return self.pack(exps)

    def to_monomial(self, m: int):
        exps = self.unpack(m)
        return monomial({self.variables[i]: e for i, e in enumerate(exps) if e})


class _Field:
    def __init__(self, ring: CoefficientRing):
        if ring.kind == "Z":
            ring = QQ
        self.ring = ring
        self.mod = ring.p if ring.kind == "Fp" else 0

    def conv(self, c):
        if self.mod:
            return int(c) % self.mod
        c = Fraction(c)
        return gmpy2.mpq(c.numerator, c.denominator)

    def inv(self, c):
        if self.mod:
            return pow(c, -1, self.mod)
        return 1 / c

    def back(self, c):
        if self.mod:
            return c
        return Fraction(int(c.numerator), int(c.denominator))


@dataclass
class _Elem:
    lm: int
    exps: tuple[int, ...]
    tail: list  # [(packed, coeff)] excluding the (monic) leading term, descending
    weight: int


def _make_elem(poly: dict, packer: _Packer, fld: _Field) -> _Elem:
    lm = max(poly)
    lc = poly[lm]
    inv = fld.inv(lc)
    mod = fld.mod
    tail = []
    for m in sorted(poly, reverse=True):
        if m == lm:
            continue
        co = poly[m] * inv
        if mod:
            co %= mod
        tail.append((m, co))
    return _Elem(lm, packer.unpack(lm), tail, packer.weight(lm))


@dataclass
class GroebnerBasis:
    order: MonomialOrder
    ring: CoefficientRing
    elements: list[Polynomial]
    pairs_processed: int = 0
    _packer: _Packer = field(default=None, repr=False)
    _field: _Field = field(default=None, repr=False)
    _elems: list = field(default=None, repr=False)

    def _to_packed(self, p: Polynomial) -> dict:
        out = {}
        for mono, co in p.terms.items():
            c = self._field.conv(co)
            if c:
                out[self._packer.from_monomial(mono)] = c
        return out

    def _from_packed(self, d: dict) -> Polynomial:
        return Polynomial.from_terms(self.ring, [(self._packer.to_monomial(m), self._field.back(co)) for m, co in d.items()])

    def normal_form(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self)

    def contains(self, p: Polynomial) -> bool:
        return normal_form(p, self).is_zero()

    def leading_exponents(self) -> list[tuple[int, ...]]:
        return [e.exps for e in self._elems]

    def leading_monomials(self):
        return [self._packer.to_monomial(e.lm) for e in self._elems]

    def is_groebner(self) -> bool:
        """Buchberger's criterion: every S-polynomial reduces to zero."""
        els = self._elems
        for i in range(len(els)):
            for j in range(i + 1, len(els)):
                s = _spoly(els[i], els[j], self._packer, self._field)
                if s and _reduce(s, els, self._packer, self._field):
                    return False
        return True

    def is_reduced(self) -> bool:
        pk = self._packer
        for i, a in enumerate(self._elems):
            for j, b in enumerate(self._elems):
                if i == j:
                    continue
                if pk.divides(b.lm, a.lm) or any(pk.divides(b.lm, m) for m, _ in a.tail):
                    return False
        return True


def _lcm(a: _Elem, b: _Elem, packer: _Packer) -> int:
    return packer.pack([max(x, y) for x, y in zip(a.exps, b.exps)])


def _coprime(a: _Elem, b: _Elem) -> bool:
    return all(not (x and y) for x, y in zip(a.exps, b.exps))


def _spoly(f: _Elem, g: _Elem, packer: _Packer, fld: _Field) -> dict:
    lcm = _lcm(f, g, packer)
    sf = lcm - f.lm
    sg = lcm - g.lm
    mod = fld.mod
    out = {}
    for m, co in f.tail:
        out[m + sf] = co
    for m, co in g.tail:
        mm = m + sg
        v = out.get(mm, 0) - co
        if mod:
            v %= mod
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def _find_divisor(m: int, basis, packer: _Packer):
    divides = packer.divides
    for g in basis:
        if divides(g.lm, m):
            return g
    return None


def _reduce(poly: dict, basis, packer: _Packer, fld: _Field, full: bool = True) -> dict:
    """Remainder of ``poly`` on division by ``basis`` (monic elements)."""
    p = dict(poly)
    heap = [-m for m in p]
    heapq.heapify(heap)
    result = {}
    mod = fld.mod
    pop = heapq.heappop
    push = heapq.heappush
    while heap:
        m = -pop(heap)
        co = p.pop(m, None)
        if co is None:
            continue
        g = _find_divisor(m, basis, packer)
        if g is None:
            result[m] = co
            if not full:
                for mm, cc in p.items():
                    result[mm] = cc
                break
            continue
        shift = m - g.lm
        for gm, gc in g.tail:
            mm = gm + shift
            old = p.get(mm)
            if old is None:
                v = -co * gc
                if mod:
                    v %= mod
                p[mm] = v
                push(heap, -mm)
            else:
                v = old - co * gc
                if mod:
                    v %= mod
                if v:
                    p[mm] = v
                else:
                    del p[mm]
    return result


def _update(G: list, B: list, h: _Elem, packer: _Packer) -> tuple[list, list]:
    """Gebauer–Möller installation of a new basis element."""
    C = [(h, g, _lcm(h, g, packer)) for g in G]
    D = []
    while C:
        pair = C.pop(0)
        _, g1, l1 = pair
        if _coprime(h, g1):
            D.append(pair)
            continue
        redundant = any(packer.divides(l2, l1) for _, _, l2 in C) or any(packer.divides(l2, l1) for _, _, l2 in D)
        if not redundant:
            D.append(pair)
    E = [(a, b, l) for a, b, l in D if not _coprime(a, b)]
    B_new = []
    for g1, g2, l in B:
        if (
            packer.divides(h.lm, l)
            and _lcm(g1, h, packer) != l
            and _lcm(g2, h, packer) != l
        ):
            continue
        B_new.append((g1, g2, l))
    B_new.extend(E)
    G_new = [g for g in G if not packer.divides(h.lm, g.lm)]
    G_new.append(h)
    return G_new, B_new


def _field_ring(ring: CoefficientRing) -> CoefficientRing:
    return QQ if ring.kind == "Z" else ring


def buchberger(
    relations: Sequence[Polynomial],
    order: MonomialOrder | None = None,
    budget: int | None = None,
    degree_cap: int | None = None,
) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``relations``.

    Integer input is treated over Q.  ``budget`` bounds the number of S-pairs
    reduced; ``degree_cap`` bounds the topological degree of S-pairs.  Both
    raise :class:`BudgetExceeded` when hit.
    """
    relations = [r for r in relations]
    rings = {r.ring for r in relations}
    if len(rings) > 1:
        raise RingMismatch(f"relations over several rings: {rings}")
    ring = _field_ring(rings.pop()) if rings else QQ
    if order is None:
        order = MonomialOrder.for_polys(relations)
    if budget is None:
        budget = default_budget()
    packer = _Packer(order)
    fld = _Field(ring)
    gb = GroebnerBasis(order, ring, [], 0, packer, fld, [])
    G: list[_Elem] = []
    B: list = []
    for r in relations:
        d = gb._to_packed(r)
        if not d:
            continue
        h = _reduce(d, G, packer, fld)
        if h:
            G, B = _update(G, B, _make_elem(h, packer, fld), packer)
    processed = 0
    heap = []
    counter = 0

    def refill():
        nonlocal counter, B
        for pair in B:
            counter += 1
            heapq.heappush(heap, (packer.weight(pair[2]), pair[2], counter, pair))
        B = []

    refill()
    live = set()
    while heap or B:
        refill()
        _, l, _, pair = heapq.heappop(heap)
        f, g, _ = pair
        processed += 1
        if processed > budget:
            raise BudgetExceeded(f"S-pair budget of {budget} exhausted")
        if degree_cap is not None and 2 * packer.weight(l) > degree_cap:
            raise BudgetExceeded(f"S-pair of degree {2 * packer.weight(l)} exceeds cap {degree_cap}")
        s = _spoly(f, g, packer, fld)
        if not s:
            continue
        h = _reduce(s, G, packer, fld)
        if not h:
            continue
        # pairs still queued must be re-examined against the new element
        pending = [item[3] for item in heap]
        heap = []
        G, B = _update(G, pending, _make_elem(h, packer, fld), packer)
    del live
    gb._elems = _interreduce(G, packer, fld)
    gb.elements = [gb._from_packed({e.lm: 1, **dict(e.tail)}) for e in gb._elems]
    gb.pairs_processed = processed
    return gb


def _interreduce(G: list, packer: _Packer, fld: _Field) -> list:
    G = sorted(G, key=lambda e: e.lm)
    minimal = []
    for e in G:
        if not any(packer.divides(o.lm, e.lm) for o in minimal):
            minimal.append(e)
    out = []
    for i, e in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        tail = _reduce(dict(e.tail), others, packer, fld)
        tail[e.lm] = fld.conv(1)
        out.append(_make_elem(tail, packer, fld))
    return sorted(out, key=lambda e: e.lm, reverse=True)


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Fully reduced remainder of ``p`` modulo ``gb``."""
    if _field_ring(p.ring) != gb.ring:
        raise RingMismatch(f"polynomial over {p.ring}, basis over {gb.ring}")
    d = gb._to_packed(p)
    if not d:
        return Polynomial.zero(gb.ring)
    return gb._from_packed(_reduce(d, gb._elems, gb._packer, gb._field))


def ideal_equal(
    a: Sequence[Polynomial],
    b: Sequence[Polynomial],
    order: MonomialOrder | None = None,
    budget: int | None = None,
) -> bool:
    """Two-sided membership test: each generator of each side reduces to 0 modulo the other."""
    if order is None:
        order = MonomialOrder.for_polys(list(a) + list(b))
    gb_a = buchberger(a, order, budget)
    if not all(gb_a.contains(g) for g in b):
        return False
    gb_b = buchberger(b, order, budget)
    return all(gb_b.contains(g) for g in a)


# ---------------------------------------------------------------------------
# Hilbert series


def _minimalize(gens: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def _hilbert_numerator(gens: list[tuple[int, ...]], weights: Sequence[int]) -> tuple[int, ...]:
    """Numerator K(T) of the Hilbert series of k[x]/(gens), T counting weight."""
    gens = _minimalize(gens)
    if not gens:
        return (1,)
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    if all(not (supports[i] & supports[j]) for i in range(len(gens)) for j in range(i + 1, len(gens))):
        out: tuple[int, ...] = (1,)
        for g in gens:
            d = sum(w * e for w, e in zip(weights, g))
            out = int_poly_mul(out, tuple([1] + [0] * (d - 1) + [-1]))
        return out
    counts: dict[int, int] = {}
    for s, g in zip(supports, gens):
        if len(s) > 1:
            for i in s:
                counts[i] = counts.get(i, 0) + 1
    var = max(sorted(counts), key=lambda i: counts[i])
    exps = sorted(g[var] for g in gens if g[var])
    e = exps[(len(exps) - 1) // 2]
    pivot = tuple(e if i == var else 0 for i in range(len(weights)))
    # K(I) = K(I + pivot) + T^deg(pivot) K(I : pivot)
    plus = _hilbert_numerator(gens + [pivot], weights)
    colon = [tuple(max(a - b, 0) for a, b in zip(g, pivot)) for g in gens]
    quot = _hilbert_numerator(colon, weights)
    shift = weights[var] * e
    shifted = (0,) * shift + quot
    n = max(len(plus), len(shifted))
    return tuple(
        (plus[i] if i < len(plus) else 0) + (shifted[i] if i < len(shifted) else 0) for i in range(n)
    )


def monomial_hilbert_series(gens: list[tuple[int, ...]], weights: Sequence[int]) -> GradedSeries:
    """Hilbert series (t = topological degree) of k[x]/(monomials)."""
    num_w = _hilbert_numerator(gens, weights)
    num = [0] * (2 * len(num_w))
    for i, v in enumerate(num_w):
        num[2 * i] = v
    return GradedSeries(tuple(num), tuple(sorted(2 * w for w in weights))).normalized()


def hilbert_series(
    generators: Sequence[Variable],
    relations: Sequence[Polynomial],
    kind: str = "grevlex",
    budget: int | None = None,
    ring: CoefficientRing | None = None,
) -> GradedSeries:
    """Hilbert series of k[generators]/(relations); relations must be homogeneous."""
    for r in relations:
        if not r.is_homogeneous():
            raise ValueError(f"relation {r.render()} is not homogeneous")
    rels = [r for r in relations if r]
    if ring is not None:
        from .polykernel import reduce_coefficients

        rels = [reduce_coefficients(r, ring) for r in rels]
    extra = set(generators)
    missing = variables_of(rels) - extra
    if missing:
        raise ValueError(f"relations use non-generators: {sorted(map(str, missing))}")
    order = MonomialOrder(kind, default_variable_order(extra))
    gb = buchberger(rels, order, budget) if rels else None
    weights = [v.weight for v in order.variables]
    lead = gb.leading_exponents() if gb else []
    return monomial_hilbert_series(lead, weights)


def eliminate(
    relations: Sequence[Polynomial],
    eliminate_vars: Iterable[Variable],
    keep: Iterable[Variable],
    budget: int | None = None,
) -> list[Polynomial]:
    """Generators of the elimination ideal (relations) ∩ k[keep]."""
    order = MonomialOrder.elimination(eliminate_vars, set(keep) | variables_of(relations))
    gb = buchberger(relations, order, budget)
    drop = set(order.variables[: order.split])
    return [g for g in gb.elements if not (g.variables() & drop)]
