from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sullivan_inv.algebra import (
    FreeAlgebra,
    Generator,
    ModelMismatchError,
    Polynomial,
    PolynomialParseError,
    basis,
    multiply,
    parse_polynomial,
    word_components,
)

import oracles
from strategies import polynomials

A = FreeAlgebra([Generator("x", 2), Generator("y", 3)])
B = FreeAlgebra([Generator("a", 2), Generator("u", 3), Generator("v", 3), Generator("w", 5), Generator("b", 4)])


def P(alg, s):
    return parse_polynomial(alg, s)


def test_odd_square_vanishes():
    y = A.gen("y")
    assert multiply(y, y) == A.zero()


def test_even_powers_add():
    x = A.gen("x")
    assert multiply(x**3, x**4) == x**7


def test_koszul_sign_even_odd():
    assert multiply(A.gen("y"), A.gen("x")) == multiply(A.gen("x"), A.gen("y"))


def test_koszul_sign_two_odd():
    u, v = B.gen("u"), B.gen("v")
    assert v * u == -(u * v)


def test_mismatched_algebras_rejected():
    with pytest.raises(ModelMismatchError):
        multiply(A.gen("x"), B.gen("a"))


def test_basis_examples():
    assert [A.format_monomial(m) for m in basis(A, 4)] == ["x^2"]
    assert [A.format_monomial(m) for m in basis(A, 5)] == ["x*y"]
    assert list(basis(A, 1)) == []
    assert list(basis(A, 0)) == [A.unit]


def test_basis_order_is_stable():
    first = [B.format_monomial(m) for m in basis(B, 12)]
    again = [B.format_monomial(m) for m in FreeAlgebra(B.generators).basis(12)]
    assert first == again
    assert len(set(first)) == len(first)


def test_word_components():
    x = A.gen("x")
    assert word_components(x**2 + x**3) == [(2, x**2), (3, x**3)]
    assert word_components(A.zero()) == []
    assert word_components(x * A.gen("y")) == [(2, x * A.gen("y"))]


def test_parse_rational_merge():
    assert P(A, "x^2 + 1/2 x^2") == A.gen("x") ** 2 * Fraction(3, 2)


def test_parse_optional_star_and_signs():
    assert P(B, "2 a u - a*v + 3/4*w*a^0") == P(B, "2*a*u - a v + 3/4 w")


@pytest.mark.parametrize(
    "text,col",
    [("x^2 +", 6), ("x^2 + q", 7), ("x^ y", 4), ("x $ y", 3), ("* x", 1), ("x *", 4)],
)
def test_parse_errors_are_positioned(text, col):
    with pytest.raises(PolynomialParseError) as exc:
        P(A, text)
    assert exc.value.column == col


def test_str_round_trip():
    p = P(B, "3/2*a^2*u - u*v*w + b")
    assert P(B, str(p)) == p


def test_divided_power_product():
    G = FreeAlgebra([Generator("g", 2, divided=True)])
    g = G.gen("g")
    # g * g = 2 g^[2]
    assert g * g == G.monomial((2,), 2)
    assert P(G, "g^[3]") * g == G.monomial((4,), 4)


@given(st.data())
def test_graded_commutativity(data):
    da, db = data.draw(st.integers(0, 12)), data.draw(st.integers(0, 12))
    p = data.draw(polynomials(B, da))
    q = data.draw(polynomials(B, db))
    sign = -1 if (da * db) % 2 else 1
    assert p * q == (q * p) * sign


@given(st.data())
def test_associativity(data):
    p, q, r = (data.draw(polynomials(B, data.draw(st.integers(0, 9)))) for _ in range(3))
    assert (p * q) * r == p * (q * r)


@given(st.data())
def test_product_matches_word_oracle(data):
    p = data.draw(polynomials(B, data.draw(st.integers(0, 12))))
    q = data.draw(polynomials(B, data.draw(st.integers(0, 12))))
    assert p * q == oracles.multiply(B, p, q)


@given(st.data())
def test_divided_product_matches_oracle(data):
    G = FreeAlgebra([Generator("s", 1), Generator("g", 2, divided=True), Generator("h", 4, divided=True)])
    p = data.draw(polynomials(G, data.draw(st.integers(0, 10))))
    q = data.draw(polynomials(G, data.draw(st.integers(0, 10))))
    assert p * q == oracles.multiply(G, p, q)


@pytest.mark.parametrize("n", range(0, 16))
def test_word_length_decomposes_basis(n):
    total = sum(len(B.monomials(n, min_length=i, max_length=i)) for i in range(n + 1))
    assert total == len(B.monomials(n))
