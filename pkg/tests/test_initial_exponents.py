import pytest
from hypothesis import given, strategies as st

from qdesing.errors import CapacityError, PointNotOnVariety, UnsupportedError
from qdesing.initial_exponents import (
    Diagram, HSFunction, compare_hs, diagram_of_ideal, h_of_diagram, hilbert_samuel_at_point,
    hs_at_nonclosed_point, initial_exponent, lambda_iterate, lambda_sequence, min_embedding_dim,
    minimal_elements, product_h_identity_check,
)
from qdesing.kernel import INF, Ideal, Ring, truncated_length

from conftest import QT, R2, R3, exponents, nonzero_polys


def I2(*gens):
    return Ideal(R2, [R2.parse(g) for g in gens])


def count_outside(D: Diagram, k: int) -> int:
    """Brute force: monomials of degree <= k outside the staircase."""
    import itertools
    return sum(1 for a in itertools.product(range(k + 1), repeat=D.n) if sum(a) <= k and not D.contains(a))


# ----- initial exponents -------------------------------------------------

def test_initial_exponent_examples():
    assert initial_exponent(R2.zero()) == INF
    R = Ring(R2.field, ["x1", "x2"])
    assert initial_exponent(R.parse("x1*x2 + x1^3")) == (1, 1)
    assert initial_exponent(R2.parse("y^2 - x^3")) == (0, 2)


@given(nonzero_polys(), nonzero_polys())
def test_initial_exponent_is_multiplicative(f, g):
    a, b = initial_exponent(f), initial_exponent(g)
    assert initial_exponent(f * g) == tuple(x + y for x, y in zip(a, b))


def test_minimal_elements():
    assert sorted(minimal_elements([(2, 0), (1, 1), (2, 1), (3, 0)])) == [(1, 1), (2, 0)]


# ----- diagrams and H -----------------------------------------------------

def test_diagram_examples():
    D = diagram_of_ideal(I2("x^2", "x*y"), 4)
    assert set(D.vertices) == {(1, 1), (2, 0)} and D.stable
    D = diagram_of_ideal(I2("y^2 - x^3"), 5)
    assert D.vertices == ((0, 2),) and D.stable
    assert diagram_of_ideal(I2("1"), 3).vertices == ((0, 0),)


def test_diagram_capacity():
    with pytest.raises(CapacityError):
        diagram_of_ideal(I2("x"), 10_000)


def test_h_examples():
    assert [h_of_diagram(Diagram(1, ()), k) for k in range(5)] == [1, 2, 3, 4, 5]
    assert [h_of_diagram(Diagram(2, ((0, 2),)), k) for k in range(5)] == [1, 3, 5, 7, 9]
    assert h_of_diagram(Diagram(2, ((1, 1), (2, 0))), 2) == 4


@given(st.lists(exponents(3, 3).map(tuple), max_size=4), st.integers(0, 6))
def test_h_matches_brute_force(verts, k):
    D = Diagram(3, tuple(verts))
    assert h_of_diagram(D, k) == count_outside(D, k)


@given(st.lists(exponents(2, 4).map(tuple), max_size=3), st.integers(0, 8))
def test_h_is_monotone(verts, k):
    D = Diagram(2, tuple(verts))
    assert h_of_diagram(D, k) <= h_of_diagram(D, k + 1)


@given(st.lists(exponents(5, 2).map(tuple), min_size=1, max_size=3), st.integers(0, 4))
def test_inclusion_exclusion_in_many_variables(verts, k):
    D = Diagram(5, tuple(verts))
    assert h_of_diagram(D, k) == count_outside(D, k)


def test_lambda_examples():
    assert lambda_sequence([1, 1, 1, 1]) == [1, 2, 3, 4]
    H = HSFunction(diagram=Diagram(1, ((2,),)))
    assert H.values(4) == [1, 2, 2, 2, 2]
    assert lambda_iterate(H, 1).values(4) == [1, 3, 5, 7, 9]


@given(st.lists(st.integers(0, 9), min_size=4, max_size=8), st.lists(st.integers(0, 9), min_size=4, max_size=8))
def test_lambda_preserves_order(a, b):
    n = min(len(a), len(b))
    a, b = a[:n], b[:n]
    if a <= b:
        assert lambda_sequence(a) <= lambda_sequence(b)


def test_product_identity_examples():
    assert product_h_identity_check(Diagram(1, ((2,),)), 1, 6)
    assert product_h_identity_check(Diagram(2, ()), 2, 6)


@given(st.lists(exponents(2, 3).map(tuple), max_size=3), st.integers(1, 2))
def test_product_identity_property(verts, p):
    assert product_h_identity_check(Diagram(2, tuple(verts)), p, 8)


def test_diagram_order_is_total_on_examples():
    a, b = Diagram(2, ((0, 2),)), Diagram(2, ((1, 1), (2, 0)))
    assert (a < b) != (b < a)


# ----- Hilbert-Samuel functions --------------------------------------------

def test_hs_at_points():
    assert hilbert_samuel_at_point(I2("y - x^2"), [0, 0], 4).values(4) == [1, 2, 3, 4, 5]
    assert hilbert_samuel_at_point(I2("y^2 - x^3"), [0, 0], 4).values(4) == [1, 3, 5, 7, 9]
    with pytest.raises(PointNotOnVariety):
        hilbert_samuel_at_point(I2("x"), [1, 0], 4)


@pytest.mark.parametrize("gens", [["y^2 - x^3"], ["x^2", "x*y"], ["x*y"], ["y^2 - x^2 - x^3"]])
@pytest.mark.parametrize("point", [[0, 0], [1, 1]])
def test_hs_equals_translated_length(gens, point):
    I = I2(*gens)
    if any(g.evaluate(point) for g in I.gens):
        return
    moved = Ideal(R2, [g.translate(point) for g in I.gens])
    H = hilbert_samuel_at_point(I, point, 6)
    assert H.values(6) == [truncated_length(moved, k) for k in range(7)]


def test_hs_at_nonclosed_points():
    assert hs_at_nonclosed_point(I2("y^2 - x^3"), [R2.parse("y^2 - x^3")], 5).values(5) == [1, 2, 3, 4, 5, 6]
    assert hs_at_nonclosed_point(I2("x*y"), [R2.parse("y")], 5).values(5) == [1, 2, 3, 4, 5, 6]
    closed = hs_at_nonclosed_point(I2("y^2 - x^3"), [R2.parse("x"), R2.parse("y")], 5)
    assert closed.values(5) == hilbert_samuel_at_point(I2("y^2 - x^3"), [0, 0], 5).values(5)


def test_hs_nonclosed_errors():
    with pytest.raises(PointNotOnVariety):
        hs_at_nonclosed_point(I2("y^2 - x^3"), [R2.parse("y")], 4)
    with pytest.raises(UnsupportedError):
        hs_at_nonclosed_point(I2("x*y*(x + y - 1)"), [R2.parse("x + y - 1"), R2.parse("x*y")], 4)


def test_hs_over_parameter_field():
    R = Ring(QT, ["v", "y"])
    I = Ideal(R, [R.parse("y^2 - t*v^3")])
    assert hilbert_samuel_at_point(I, [0, 0], 5).values(5) == [1, 3, 5, 7, 9, 11]


def test_embedding_dimension():
    H = lambda *v: HSFunction(prefix=tuple(v))
    assert min_embedding_dim(H(1, 2, 3)) == 1
    assert min_embedding_dim(H(1, 3, 5)) == 2
    assert min_embedding_dim(H(1, 1, 1)) == 0


def test_compare_hs_bounded():
    cusp = hilbert_samuel_at_point(I2("y^2 - x^3"), [0, 0], 8)
    smooth = hilbert_samuel_at_point(I2("y - x^2"), [0, 0], 8)
    assert compare_hs(smooth, cusp) == -1
    assert compare_hs(cusp, cusp) == 0


def test_hs_in_three_variables_matches_oracle():
    I = Ideal(R3, [R3.parse("x^2 + y^2 - z^2")])
    H = hilbert_samuel_at_point(I, [0, 0, 0], 6)
    assert H.values(6) == [truncated_length(I, k) for k in range(7)]
