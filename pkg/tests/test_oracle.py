import pytest

from flagbott.cases import TYPE_C_MATRICES, type_c_spec
from flagbott.oracle import (
    check_invariance,
    cross_check,
    euler_characteristic,
    fiber_poincare,
    fiber_poincare_by_cosets,
    fiber_poincare_by_division,
    full_weyl_group,
    positive_roots_outside_centralizer,
    tower_poincare,
)
from flagbott.polykernel import GF, QQ, Polynomial, elementary_symmetric, y
from flagbott.rootdata import G2, SU, CentralizerSpec, Sp, U, all_cocharacters_supported, centralizer_weyl
from flagbott.series import GradedSeries, product
from flagbott.tower import Presentation, TowerSpec, ordinary_presentation


def P(v, ring=QQ):
    return Polynomial.var(ring, v)


def poly(*coeffs):
    return GradedSeries.polynomial(list(coeffs))


def test_fiber_examples():
    assert fiber_poincare(U(3), CentralizerSpec(U(3), (1, 1, 2))) == poly(1, 0, 1, 0, 1)
    assert fiber_poincare(Sp(2), CentralizerSpec.torus(Sp(2))) == product([poly(1, 0, 1), poly(1, 0, 1, 0, 1, 0, 1)])
    g2 = product([poly(1, 0, 1), GradedSeries.polynomial([1, 0] * 5 + [1])])
    assert fiber_poincare(G2, CentralizerSpec.torus(G2)) == g2


def test_non_dominant_cocharacter():
    # Sp(3)/(Sp(2) x U(1)) is CP^5 whichever coordinate carries the circle
    cp5 = GradedSeries.polynomial([1, 0] * 5 + [1])
    for lam in [(0, 0, -1), (0, 1, 0), (-1, 0, 0)]:
        assert fiber_poincare_by_cosets(Sp(3), CentralizerSpec(Sp(3), lam)) == cp5


SUPPORTED = [
    (g, z)
    for g in [U(1), U(2), U(3), U(4), SU(2), SU(3), Sp(1), Sp(2), Sp(3), G2]
    for z in all_cocharacters_supported(g, bound=1)
]


@pytest.mark.parametrize("g,z", SUPPORTED, ids=lambda v: getattr(v, "name", None) or str(getattr(v, "cocharacter", v)))
def test_both_routes_agree(g, z):
    a = fiber_poincare_by_division(g, z)
    assert a == fiber_poincare_by_cosets(g, z)
    w = full_weyl_group(g)
    assert a.at_one() == w.order // centralizer_weyl(z).order
    assert a.is_palindromic()
    assert a.top_degree() == 2 * positive_roots_outside_centralizer(g, z)


def test_tower_poincare_examples():
    assert tower_poincare(TowerSpec.build([])) == GradedSeries.one()
    spec = TowerSpec.build([(SU(2), None), (SU(2), None)], {(2, 1): [[1, 0], [-1, 0]]})
    assert tower_poincare(spec) == poly(1, 0, 2, 0, 1)
    typec = type_c_spec(TYPE_C_MATRICES["sample"])
    sp3 = fiber_poincare(Sp(3), CentralizerSpec.torus(Sp(3)))
    sp2 = fiber_poincare(Sp(2), CentralizerSpec.torus(Sp(2)))
    assert tower_poincare(typec) == product([sp3, sp3, sp2])


def test_euler_characteristics():
    assert euler_characteristic(TowerSpec.build([(U(3), None)])) == 6
    assert euler_characteristic(TowerSpec.build([(U(3), (1, 1, 2))])) == 3
    assert euler_characteristic(type_c_spec({})) == 48 * 48 * 8 == 18432


def test_invariance_examples():
    f3 = GF(3)
    a, b = P(y(1, 1), f3), P(y(1, 2), f3)
    assert check_invariance((a - b) ** 2, full_weyl_group(G2))
    squares = [P(y(1, k)) ** 2 for k in (1, 2, 3)]
    w = full_weyl_group(Sp(3))
    assert w.order == 48
    assert check_invariance(elementary_symmetric(2, squares), w)
    swap = [((1, 0), (0, 1)), ((0, 1), (1, 0))]
    assert not check_invariance(P(y(1, 1)), swap)
    assert check_invariance(P(y(1, 1)) + P(y(1, 2)), swap)


def test_cross_check_su2():
    spec = TowerSpec.build([(SU(2), None)])
    report = cross_check(spec)
    assert report.passed
    assert report.expected == poly(1, 0, 1)
    assert "all checks passed" in report.render()


def test_cross_check_u3_torus():
    report = cross_check(TowerSpec.build([(U(3), None)]))
    assert report.passed and report.expected == poly(1, 0, 2, 0, 2, 0, 1)


def test_dropped_relation_is_caught():
    spec = TowerSpec.build([(U(3), None)])
    p = ordinary_presentation(spec)
    mutated = Presentation(p.ring, p.generators, p.relations[:-1], "mutated")
    report = cross_check(spec, ordinary=mutated)
    ordinary = report.results[0]
    assert not ordinary.passed
    # dropping e_3 first shows up in degree 6, where y1*y2*y3 survives
    assert ordinary.first_divergence == 6
    assert not report.passed
    assert "first divergence in degree 6" in report.render()
    data = report.to_data()
    assert data["schema"] == 1 and data["results"][0]["first_divergence"] == 6


def test_failures_are_report_entries():
    a, b = P(y(1, 1)), P(y(1, 2))
    needs_pairs = Presentation(QQ, [y(1, 1), y(1, 2)], [a * b + a**2, b**2 - a * b], "needs S-pairs")
    report = cross_check(TowerSpec.build([(U(2), None)]), ordinary=needs_pairs, budget=0)
    assert not report.results[0].passed and report.results[2].passed
    assert report.results[0].detail.startswith("BudgetExceeded")


@pytest.mark.parametrize("kind", ["grevlex", "lex"])
def test_cross_check_mixed_tower(kind):
    spec = TowerSpec.build(
        [(U(3), (1, 0, 0)), (G2, None), (SU(3), None)],
        {(2, 1): [[1, 2, 2], [0, -1, -1]], (3, 1): [[1, 0, 0], [2, 1, 1], [-3, -1, -1]], (3, 2): [[1, 1], [0, 0], [-1, -1]]},
        QQ,
    )
    report = cross_check(spec, kind)
    assert report.passed, report.render()
