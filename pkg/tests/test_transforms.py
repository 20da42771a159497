import pytest
from hypothesis import given, strategies as st

from qdesing.errors import CapacityError, NotAdmissibleError, ValidationError
from qdesing.marked import MarkedIdeal, cosupport, is_maximal_order
from qdesing.transforms import (
    BlowupCenter, blowup_charts, controlled_transform, coordinate_centers, enumerate_test_sequences,
    equivalence_check, exceptional_blowup, is_admissible, product_with_line,
)

from conftest import R2, R3


def M(vars, gens, d, E=()):
    return MarkedIdeal.from_strings(vars, gens, d, E=E)


XY = ["x", "y"]


# ----- charts -------------------------------------------------------------------

def test_quadratic_transform_charts():
    charts = blowup_charts(R2, BlowupCenter(("x", "y")))
    assert [c.chart_var for c in charts] == ["x", "y"]
    assert [str(p) for p in charts[0].images] == ["x", "x*y"]
    assert [str(p) for p in charts[1].images] == ["x*y", "y"]


def test_charts_leave_other_variables():
    charts = blowup_charts(R3, BlowupCenter(("x", "y")))
    assert len(charts) == 2
    assert all(str(c.images[2]) == "z" for c in charts)


def test_translated_center():
    (cx, cy) = blowup_charts(R2, BlowupCenter(("x", "y"), (1, 2)))
    assert [str(p) for p in cx.images] == ["x + 1", "x*y + 2"]


def test_degenerate_center():
    with pytest.raises(ValidationError):
        blowup_charts(R2, BlowupCenter(("x",)))
    assert len(blowup_charts(R2, BlowupCenter(("x",)), allow_divisorial=True)) == 1


# ----- controlled transform --------------------------------------------------

def test_controlled_transform_example():
    out = controlled_transform(M(XY, ["x^2 + y^3"], 2), BlowupCenter(("x", "y")))
    x_chart, y_chart = out
    assert y_chart.gens[0] == y_chart.ring.parse("x^2 + y") and y_chart.d == 2
    assert [str(H.gen) for H in y_chart.E] == ["y"]
    assert x_chart.gens[0] == x_chart.ring.parse("1 + x*y^3")
    assert cosupport(x_chart).is_unit()


def test_not_admissible():
    with pytest.raises(NotAdmissibleError):
        controlled_transform(M(XY, ["x"], 2), BlowupCenter(("x", "y")))
    assert not is_admissible(M(XY, ["x"], 2), BlowupCenter(("x", "y")))


def test_exceptional_divisor_is_last():
    out = controlled_transform(M(XY, ["x^2*y^2"], 2, E=["x"]), BlowupCenter(("x", "y")))
    for R in out:
        assert R.E[-1].origin == "exceptional"
        assert len(R.E) == 2


def test_chart_history_composes():
    out = controlled_transform(M(XY, ["x^2 + y^5"], 2), BlowupCenter(("x", "y")))
    y_chart = out[1]
    again = controlled_transform(y_chart, BlowupCenter(("x", "y")))
    assert again[1].chart.label == "y/y"
    assert [str(p) for p in again[1].chart.original_images()] == ["x*y^2", "y"]


@given(st.integers(0, 3), st.integers(0, 3), st.integers(2, 3))
def test_monomial_transform_exponents(a, b, d):
    if a + b < d:
        return
    out = controlled_transform(M(XY, [f"x^{a}*y^{b}"], d), BlowupCenter(("x", "y")))
    x_chart = out[0]
    assert x_chart.gens[0] == x_chart.ring.parse(f"x^{a + b - d}*y^{b}")


@pytest.mark.parametrize("gens,d", [(["x^2 + y^3"], 2), (["y^2 - x^3"], 2), (["x^3 + y^4"], 3), (["x*y"], 2)])
def test_pullback_equals_exc_power_times_transform(gens, d):
    start = M(XY, gens, d)
    C = BlowupCenter(("x", "y"))
    for bc, R in zip(blowup_charts(R2, C), controlled_transform(start, C)):
        exc = bc.exceptional
        for g, h in zip(start.gens, R.gens):
            assert g.compose(list(bc.images), bc.ring) == (exc ** d) * h


# ----- product with a line and exceptional blow-ups ------------------------------

def test_product_with_line():
    P = product_with_line(M(["x"], ["x"], 1))
    assert P.ring.vars == ("x", "w") and P.d == 1
    assert [str(H.gen) for H in P.E] == ["w"]
    P = product_with_line(M(["x"], ["x"], 1, E=["x"]))
    assert [str(H.gen) for H in P.E] == ["x", "w"]


def test_exceptional_blowup():
    out = exceptional_blowup(M(XY, ["x + y"], 1, E=["x", "y"]), 0, 1)
    assert out[0].gens[0] == out[0].ring.parse("x + x*y")
    with pytest.raises(ValidationError):
        exceptional_blowup(M(XY, ["x + y"], 1, E=["x", "y"]), 1, 1)
    with pytest.raises((IndexError, ValidationError)):
        exceptional_blowup(M(XY, ["x + y"], 1, E=["x", "y"]), 0, 5)


# ----- test sequences ---------------------------------------------------------------

def test_enumeration_examples():
    tree = enumerate_test_sequences(M(["x"], ["x"], 1), 1, centers=[BlowupCenter(("x",))])
    assert [c.step for c in tree.children] == [("blowup V(x)", 0), ("product", 0)]
    assert enumerate_test_sequences(M(XY, ["x^2 + y^3"], 2), 0).size() == 1
    tree = enumerate_test_sequences(M(["x"], ["1"], 1), 1)
    assert [c.step for c in tree.children] == [("product", 0)]
    with pytest.raises(CapacityError):
        enumerate_test_sequences(M(["x"], ["x"], 1), 50)


def test_coordinate_centers():
    assert [C.label() for C in coordinate_centers(["x", "y"])] == ["V(x, y)"]
    assert len(coordinate_centers(["x", "y", "z"], min_codim=1)) == 7


# ----- equivalence -------------------------------------------------------------------

def test_equivalence_examples():
    from qdesing.derivatives import coefficient_ideal

    A = M(XY, ["x^2 + y^3"], 2)
    assert equivalence_check(A, A, 2).verdict == "equivalent-to-depth"
    assert equivalence_check(A, coefficient_ideal(A, 1), 2).verdict == "equivalent-to-depth"
    rep = equivalence_check(M(XY, ["x"], 1), M(XY, ["y"], 1), 2)
    assert rep.verdict == "not-equivalent" and rep.mismatch is not None


def test_equivalence_needs_same_ambient():
    with pytest.raises(ValidationError):
        equivalence_check(M(XY, ["x"], 1), M(["x", "y", "z"], ["x"], 1))


def test_transforms_keep_maximal_order():
    start = M(XY, ["x^2 + y^5"], 2)
    for R in controlled_transform(start, BlowupCenter(("x", "y"))):
        assert is_maximal_order(R)
