"""Shared helpers: an independent Hilbert-function oracle built on sympy."""

from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import HealthCheck, settings

from flagbott.groebner import default_variable_order

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def to_sympy(polys, variables=None):
    """Convert polynomials to sympy expressions; returns (exprs, symbols), symbols biggest first."""
    if variables is None:
        variables = default_variable_order({v for p in polys for v in p.variables()})
    syms = [sympy.Symbol(v.token.replace("[", "_").replace("]", "").replace(",", "_")) for v in variables]
    table = dict(zip(variables, syms))
    exprs = []
    for p in polys:
        e = 0
        for mono, co in p.terms.items():
            term = sympy.Rational(Fraction(co).numerator, Fraction(co).denominator)
            for v, k in mono:
                term *= table[v] ** k
            e += term
        exprs.append(sympy.expand(e))
    return exprs, syms


def sympy_hilbert_function(polys, variables, max_weight: int, modulus: int | None = None) -> list[int]:
    """Ranks of k[variables]/(polys) in weights 0..max_weight, by counting standard monomials
    of a sympy Gröbner basis (a different implementation and a different order: lex)."""
    exprs, syms = to_sympy(polys, variables)
    weights = [v.weight for v in variables]
    lead = []
    if exprs:
        opts = {"modulus": modulus} if modulus else {}
        gb = sympy.groebner(exprs, *syms, order="lex", **opts)
        for g in gb.exprs:
            lm = sympy.Poly(g, *syms).monoms(order="lex")[0]
            lead.append(lm)
    counts = [0] * (max_weight + 1)
    ranges = [range(max_weight // w + 1) for w in weights]
    for exps in itertools.product(*ranges):
        wt = sum(e * w for e, w in zip(exps, weights))
        if wt > max_weight:
            continue
        if any(all(a >= b for a, b in zip(exps, m)) for m in lead):
            continue
        counts[wt] += 1
    return counts


@pytest.fixture
def sympy_oracle():
    return sympy_hilbert_function
