import itertools

import pytest

from flagbott.errors import InadmissibleCoefficients, NotInvariant, UnsupportedCentralizer
from flagbott.groebner import MonomialOrder, buchberger
from flagbott.polykernel import GF, QQ, ZZ, Polynomial, elementary_symmetric_all, y, z
from flagbott.rootdata import (
    G2,
    SU,
    Block,
    CentralizerSpec,
    Sp,
    U,
    act,
    admissible_coefficients,
    all_cocharacters_supported,
    centralizer_weyl,
    degree_poincare,
    express_in_invariants,
    fundamental_invariants,
    invariant_generators,
    mat_mul,
    reflection_matrix,
    root_datum,
    stage_variables,
    torsion_primes,
    weyl_elements,
    weyl_poincare,
)

GROUPS = [U(1), U(2), U(3), U(4), SU(2), SU(3), SU(4), Sp(1), Sp(2), Sp(3), G2]


def P(v, ring=QQ):
    return Polynomial.var(ring, v)


def test_torsion_primes_table():
    assert torsion_primes(U(4)) == set()
    assert torsion_primes(Sp(3)) == set()
    assert torsion_primes(G2) == {2}


def test_admissibility():
    assert admissible_coefficients([Sp(3), Sp(3), Sp(2)], ZZ)
    assert admissible_coefficients([SU(4), Sp(3), G2], GF(3))
    assert not admissible_coefficients([G2], ZZ)
    assert not admissible_coefficients([G2], GF(2))
    assert admissible_coefficients([G2], QQ)


@pytest.mark.parametrize("g", GROUPS, ids=lambda g: g.name)
def test_reflections_are_involutions_preserving_roots(g):
    rd = root_datum(g)
    roots = set(rd.roots)
    n = g.ncoords
    eye = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    for s in rd.simple_reflections:
        assert mat_mul(s, s) == eye
        assert {tuple(sum(s[i][k] * a[k] for k in range(n)) for i in range(n)) for a in roots} == roots


def _order_by_brute_force(g):
    """|W| from the classical formulas, independent of the enumeration."""
    if g.lie_type in ("U", "SU"):
        return len(list(itertools.permutations(range(g.ncoords))))
    if g.lie_type == "Sp":
        return len(list(itertools.permutations(range(g.size)))) * 2**g.size
    return 12


@pytest.mark.parametrize("g", GROUPS, ids=lambda g: g.name)
def test_weyl_group_order(g):
    rd = root_datum(g)
    n = len(weyl_elements(rd))
    prod = 1
    for d in rd.weyl_degrees:
        prod *= d
    assert n == prod == _order_by_brute_force(g)


@pytest.mark.parametrize("g", GROUPS, ids=lambda g: g.name)
def test_length_polynomial_matches_degrees(g):
    rd = root_datum(g)
    s = weyl_poincare(rd)
    assert s == degree_poincare(rd.weyl_degrees)
    assert s.is_palindromic()
    assert s.at_one() == len(weyl_elements(rd))


def test_length_polynomial_examples():
    assert weyl_poincare(root_datum(U(2))).coefficients() == (1, 0, 1)
    assert weyl_poincare(root_datum(U(3))).coefficients() == (1, 0, 2, 0, 2, 0, 1)
    assert weyl_poincare(root_datum(G2)).coefficients() == (1, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2, 0, 1)


@pytest.mark.parametrize("g", [gg for gg in GROUPS if gg.rank <= 4], ids=lambda g: g.name)
def test_fundamental_invariants_are_invariant(g):
    vs = stage_variables(g)
    for h in fundamental_invariants(g, QQ):
        for w in weyl_elements(root_datum(g)):
            assert act(w, h, vs) == h


def test_fundamental_invariant_shapes():
    y1, y2 = P(y(1, 1)), P(y(1, 2))
    assert fundamental_invariants(Sp(2), QQ) == [y1**2 + y2**2, y1**2 * y2**2]
    assert [h.degree() for h in fundamental_invariants(U(3), QQ)] == [2, 4, 6]
    assert [h.degree() for h in fundamental_invariants(SU(4), QQ)] == [4, 6, 8]
    f3 = GF(3)
    a, b = P(y(1, 1), f3), P(y(1, 2), f3)
    assert fundamental_invariants(G2, f3) == [(a - b) ** 2, (a * b * (a + b)) ** 2]


def test_g2_difference_square_needs_characteristic_three():
    vs = stage_variables(G2)
    h = (P(y(1, 1)) - P(y(1, 2))) ** 2
    assert not all(act(w, h, vs) == h for w in weyl_elements(root_datum(G2)))


def test_inadmissible_invariants():
    with pytest.raises(InadmissibleCoefficients):
        fundamental_invariants(G2, ZZ)


def test_centralizer_examples():
    w = centralizer_weyl(CentralizerSpec(U(3), (1, 0, 0)))
    assert w.order == 2
    y1, y2, y3 = (P(y(1, k)) for k in (1, 2, 3))
    assert invariant_generators(w, QQ) == [y1, y2 + y3, y2 * y3]
    assert centralizer_weyl(CentralizerSpec(U(4), (1, 2, 3, 4))).order == 1
    w = centralizer_weyl(CentralizerSpec(U(4), (1, 1, 2, 2)))
    assert w.order == 4
    y4 = P(y(1, 4))
    assert invariant_generators(w, QQ) == [y1 + y2, y1 * y2, y3 + y4, y3 * y4]


def test_trivial_centralizer_generators():
    w = centralizer_weyl(CentralizerSpec.torus(U(2)))
    assert invariant_generators(w, QQ) == [P(y(1, 1)), P(y(1, 2))]


def test_type_c_block():
    w = centralizer_weyl(CentralizerSpec(Sp(3), (1, 1, 0)))
    assert w.factor_structure == (Block("A", (0, 1)), Block("C", (2,)))


@pytest.mark.parametrize("g", [U(3), U(4), Sp(2), Sp(3), G2, SU(3)], ids=lambda g: g.name)
def test_centralizers_fix_cocharacter_and_generators_are_invariant(g):
    full = set(weyl_elements(root_datum(g)))
    vs = stage_variables(g)
    for cs in all_cocharacters_supported(g, bound=1):
        w = centralizer_weyl(cs)
        lam = cs.cocharacter
        for e in w.element_list:
            assert e in full
            assert tuple(sum(lam[i] * e[i][j] for i in range(len(lam))) for j in range(len(lam))) == lam
            for p in invariant_generators(w, QQ):
                assert act(e, p, vs) == p


def test_unsupported_centralizers():
    with pytest.raises(UnsupportedCentralizer):
        invariant_generators(centralizer_weyl(CentralizerSpec(G2, (1, 0))), QQ)
    with pytest.raises(UnsupportedCentralizer):
        invariant_generators(centralizer_weyl(CentralizerSpec(Sp(2), (1, -1))), QQ)


def test_full_invariants_lie_in_the_block_subalgebra():
    """e_k(y) lies in Q[y1, z1, z2] with z1 = y2 + y3, z2 = y2 y3 (membership via elimination)."""
    w = centralizer_weyl(CentralizerSpec(U(3), (1, 0, 0)))
    blocks = w.factor_structure
    syms = [(), (z(1, 1, 1), z(1, 2, 2))]
    ys = [P(y(1, k)) for k in (1, 2, 3)]
    defs = [P(z(1, 1, 1)) - (ys[1] + ys[2]), P(z(1, 2, 2)) - ys[1] * ys[2]]
    for h in elementary_symmetric_all(ys, QQ):
        r = express_in_invariants(h, blocks, syms, 1)
        assert y(1, 2) not in r.variables() and y(1, 3) not in r.variables()
        gb = buchberger(defs, MonomialOrder.elimination([y(1, 2), y(1, 3)], [y(1, 1), z(1, 1, 1), z(1, 2, 2)]))
        assert gb.normal_form(h - r).is_zero()


def test_rewriting_rejects_non_invariants():
    w = centralizer_weyl(CentralizerSpec(U(3), (1, 0, 0)))
    with pytest.raises(NotInvariant):
        express_in_invariants(P(y(1, 2)), w.factor_structure, [(), (z(1, 1, 1), z(1, 2, 2))], 1)


def test_reflection_formula():
    gram = ((1, 0), (0, 1))
    assert reflection_matrix((1, -1), gram) == ((0, 1), (1, 0))
