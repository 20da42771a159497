import pytest
from hypothesis import assume, given

from qdesing.derivatives import (
    WeightedMarkedSum, coefficient_ideal, coefficient_ideal_normal_variant, derivative_ideal,
    derivative_ideal_log, derivative_tower, maximal_contact, restrict_to_hypersurface,
)
from qdesing.errors import MarkUnderflowError, NoTriangularContactError, UnsupportedError
from qdesing.kernel import Ideal, Ring
from qdesing.marked import Hypersurface, MarkedIdeal, order_at

from conftest import R2, nonzero_polys


def I2(*gens):
    return Ideal(R2, [R2.parse(g) for g in gens])


def M2(gens, d, E=()):
    return MarkedIdeal.from_strings(["x", "y"], gens, d, E=E)


# ----- derivative ideals -----------------------------------------------------

def test_derivative_ideal_examples():
    assert derivative_ideal(I2("x^2 + y^3")) == I2("x", "y^2")
    assert derivative_ideal(I2("x*y")) == I2("x", "y")
    assert derivative_ideal(I2("1")).is_unit()


def test_log_derivative_examples():
    E = [Hypersurface(R2.parse("x"))]
    assert derivative_ideal_log(I2("x^2*y"), E) == I2("x^2")
    assert derivative_ideal_log(I2("x"), E) == I2("x")
    assert derivative_ideal_log(I2("x^2 + y^3"), []) == derivative_ideal(I2("x^2 + y^3"))


def test_log_derivative_rejects_curved_divisor():
    with pytest.raises(UnsupportedError):
        derivative_ideal_log(I2("x*y"), [Hypersurface(R2.parse("x + y^2"))])


def test_tower_composes():
    I = I2("x^3 + y^4")
    assert derivative_tower(I, (), 2) == derivative_ideal(derivative_ideal(I))


@given(nonzero_polys(max_deg=4))
def test_derivative_ideal_contains_ideal(f):
    I = Ideal(R2, [f])
    D = derivative_ideal(I)
    assert D.contains(f)
    assert derivative_tower(I, (), 2).contains_ideal(D)


@given(nonzero_polys(max_deg=4))
def test_derivative_drops_order_by_one(f):
    o = f.order()
    assume(o >= 1)
    assert order_at(derivative_ideal(Ideal(R2, [f])), [0, 0]) == o - 1


@given(nonzero_polys(max_deg=3), nonzero_polys(max_deg=3))
def test_derivative_is_monotone(f, g):
    small = Ideal(R2, [f * g])
    big = Ideal(R2, [f])
    assert derivative_ideal(big).contains_ideal(derivative_ideal(small))


# ----- weighted sums and coefficient ideals ----------------------------------

def test_weighted_sum_mark():
    W = WeightedMarkedSum(R2, ((I2("x^2 + y^3"), 2), (I2("x", "y^2"), 1)))
    assert W.mark == 2
    assert W.ideal() == I2("x^2 + y^3", "x^2", "x*y^2", "y^4")
    W = WeightedMarkedSum(R2, ((I2("x"), 2), (I2("y"), 3)))
    assert W.mark == 6
    assert W.ideal() == I2("x^3", "y^2")


def test_coefficient_ideal_examples():
    M = M2(["x^2 + y^3"], 2)
    C = coefficient_ideal(M, 1)
    assert C.d == 2 and C.ideal == I2("x^2", "y^3", "x*y^2")
    assert coefficient_ideal(M, 0).ideal == M.ideal
    with pytest.raises(MarkUnderflowError):
        coefficient_ideal(M2(["x"], 1), 1)


def test_restriction_examples():
    R1 = Ring(R2.field, ["y"])
    assert restrict_to_hypersurface(I2("x^2 + y^3", "x^2", "x*y^2", "y^4"), "x") == Ideal(R1, [R1.parse("y^3")])
    assert restrict_to_hypersurface(I2("x"), "x").is_zero()
    assert restrict_to_hypersurface(I2("y"), "x") == Ideal(R1, [R1.parse("y")])


def test_normal_variant_examples():
    R1 = Ring(R2.field, ["y"])
    C = coefficient_ideal_normal_variant(M2(["x^2 + y^3"], 2), "x")
    assert C.d == 2 and C.ideal == Ideal(R1, [R1.parse("y^3")])
    assert coefficient_ideal_normal_variant(M2(["x^2"], 2), "x").ideal.is_zero()
    C = coefficient_ideal_normal_variant(M2(["x^2 + x*y + y^2"], 2), "x")
    assert C.d == 2 and C.ideal == Ideal(R1, [R1.parse("y^2")])


def test_normal_variant_drops_matching_divisor():
    C = coefficient_ideal_normal_variant(M2(["x^2 + y^3"], 2, E=["x", "y"]), "x")
    assert [str(H.gen) for H in C.E] == ["y"]


# ----- maximal contact -----------------------------------------------------------

def test_maximal_contact_examples():
    c = maximal_contact(M2(["x^2 + y^3"], 2))
    assert c.var == "x" and c.is_identity
    c = maximal_contact(M2(["(x + y^2)^2"], 2))
    assert c.var == "x" and not c.is_identity
    assert c.substitution["x"] == R2.parse("x - y^2")
    c = maximal_contact(M2(["x*y"], 2))
    assert c.var == "x"


def test_maximal_contact_respects_protected_divisor():
    # moving x would bend the divisor V(x); no other triangular element exists
    with pytest.raises(NoTriangularContactError):
        maximal_contact(M2(["(x + y^2)^2"], 2, E=["x"]), protect=["x"])
    c = maximal_contact(M2(["x^2 + y^3"], 2, E=["x"]), protect=["x"])
    assert c.var == "x" and c.is_identity


def test_no_triangular_contact():
    M = M2(["x + x^2 + y^3"], 1)
    with pytest.raises(NoTriangularContactError):
        maximal_contact(M)
