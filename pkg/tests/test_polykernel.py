import pytest
from hypothesis import given, strategies as st

from flagbott.errors import InhomogeneousSubstitution, RingMismatch
from flagbott.polykernel import (
    GF,
    QQ,
    ZZ,
    Polynomial,
    c,
    elementary_symmetric,
    elementary_symmetric_all,
    elementary_symmetric_bruteforce,
    monomial,
    parse_ring,
    parse_token,
    poly_from_data,
    poly_to_data,
    reduce_coefficients,
    substitute,
    u,
    x,
    y,
    z,
)

VARS = [y(1, 1), y(1, 2), u(1, 1), y(2, 1)]


def polys(ring=ZZ, max_terms=5):
    mono = st.dictionaries(st.sampled_from(VARS), st.integers(0, 3), max_size=3).map(monomial)
    return st.lists(st.tuples(mono, st.integers(-5, 5)), max_size=max_terms).map(
        lambda items: Polynomial.from_terms(ring, items)
    )


def P(v, ring=ZZ):
    return Polynomial.var(ring, v)


def test_ring_tags():
    assert parse_ring("Z") == ZZ
    assert parse_ring("Fp:3") == GF(3)
    assert GF(3).inverts(2) and not GF(2).inverts(2)
    assert not ZZ.inverts(2) and QQ.inverts(2)
    with pytest.raises(ValueError):
        GF(4)
    with pytest.raises(ValueError):
        parse_ring("R")


def test_golden_renderings():
    xs = P(x())
    c1, c2, c3 = P(c(1)), P(c(2)), P(c(3))
    assert (xs**3 - xs**2 * c1 + xs * c2 - c3).render() == "x^3 - x^2*c[1] + x*c[2] - c[3]"
    assert (P(u(1, 1)) ** 2 - P(y(1, 1)) ** 2).render() == "u[1,1]^2 - y[1,1]^2"
    assert Polynomial.zero(ZZ).render() == "0"


def test_variable_order_within_family():
    assert u(1, 1) > u(1, 2) > u(2, 1)
    assert x() > u(1, 1) > y(1, 1) > z(1, 1, 1) > c(1)


def test_add_mul_examples():
    y1, y2 = P(y(1, 1)), P(y(1, 2))
    assert (y1 + y2) * (y1 - y2) == y1**2 - y2**2
    assert (y1 + y2) ** 2 == y1**2 + 2 * y1 * y2 + y2**2
    assert y1 - y1 == Polynomial.zero(ZZ)


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        P(y(1, 1)) + P(y(1, 1), QQ)


def test_prime_field_reduction():
    a = 3 * P(y(1, 1), GF(3)) + P(y(1, 2), GF(3))
    assert a == P(y(1, 2), GF(3))
    h = P(y(1, 1)) ** 2 + P(y(1, 1)) * P(y(1, 2)) + P(y(1, 2)) ** 2
    assert reduce_coefficients(h, GF(3)) == reduce_coefficients((P(y(1, 1)) - P(y(1, 2))) ** 2, GF(3))


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, cc):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + cc == a + (b + cc)
    assert (a * b) * cc == a * (b * cc)
    assert a * (b + cc) == a * b + a * cc
    assert a - a == Polynomial.zero(ZZ)


@given(polys(), polys())
def test_reduction_is_a_homomorphism(a, b):
    f = GF(5)
    assert reduce_coefficients(a * b, f) == reduce_coefficients(a, f) * reduce_coefficients(b, f)
    assert reduce_coefficients(a + b, f) == reduce_coefficients(a, f) + reduce_coefficients(b, f)


linear = st.lists(st.integers(-3, 3), min_size=4, max_size=4).map(
    lambda cs: Polynomial.from_terms(ZZ, [(((v, 1),), a) for v, a in zip(VARS, cs)])
)


@given(polys(), polys(), linear, linear)
def test_substitution_is_a_homomorphism(a, b, f1, f2):
    images = {y(1, 1): f1, y(1, 2): f2}
    assert substitute(a * b, images) == substitute(a, images) * substitute(b, images)
    assert substitute(a + b, images) == substitute(a, images) + substitute(b, images)


def test_substitution_rejects_inhomogeneous_images():
    with pytest.raises(InhomogeneousSubstitution):
        substitute(P(y(1, 1)), {y(1, 1): P(y(1, 2)) ** 2})
    with pytest.raises(InhomogeneousSubstitution):
        substitute(P(y(1, 1)), {y(1, 1): P(y(1, 2)) + 1})
    # a weight-2 symbol may go to a quadratic form
    assert substitute(P(c(2)), {c(2): P(y(1, 1)) ** 2}) == P(y(1, 1)) ** 2


@given(st.integers(1, 5), st.data())
def test_elementary_symmetric_matches_subsets(n, data):
    forms = [P(y(1, k)) for k in range(1, n + 1)]
    k = data.draw(st.integers(0, n))
    assert elementary_symmetric(k, forms) == elementary_symmetric_bruteforce(k, forms, ZZ)


@given(st.integers(1, 5))
def test_newton_identities(n):
    forms = [P(y(1, k)) for k in range(1, n + 1)]
    es = [Polynomial.const(ZZ, 1)] + elementary_symmetric_all(forms, ZZ)
    power = [sum((f**k for f in forms), Polynomial.zero(ZZ)) for k in range(n + 1)]
    for k in range(1, n + 1):
        total = Polynomial.const(ZZ, k) * es[k]
        for i in range(1, k + 1):
            total = total - (-1) ** (i - 1) * es[k - i] * power[i]
        assert total == Polynomial.zero(ZZ)


def test_elementary_symmetric_small():
    y1, y2 = P(y(1, 1)), P(y(1, 2))
    assert elementary_symmetric_all([y1, y2], ZZ) == [y1 + y2, y1 * y2]
    assert elementary_symmetric(0, [y1, y2]) == Polynomial.const(ZZ, 1)


def test_homogeneity():
    p = P(y(1, 1)) ** 2 + P(c(2))
    assert p.is_homogeneous() and p.degrees() == {4}
    assert not (P(y(1, 1)) + P(c(2))).is_homogeneous()


@given(polys(QQ))
def test_machine_form_round_trip(p):
    assert poly_from_data(QQ, poly_to_data(p)) == p


def test_z_tokens_need_weights():
    assert parse_token("z[2,3]", {"z[2,3]": 2}) == z(2, 3, 2)
    with pytest.raises(ValueError):
        parse_token("z[2,3]")
    assert parse_token("x") == x() and parse_token("c[4]") == c(4)
