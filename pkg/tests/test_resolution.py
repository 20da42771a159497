from fractions import Fraction

import pytest

from qdesing import corpus as C
from qdesing.descent import DescentModel
from qdesing.errors import CapacityError, NotMaximalOrderError, UnsupportedError, ValidationError
from qdesing.kernel import QQ, Ideal, Ring
from qdesing.marked import Chart, MarkedIdeal, cosupport, order_at
from qdesing.resolution import (
    bennett_checks, center_image, check_pullback_generic_fibre, check_pullback_product_line, choose_center,
    components_of, inv_sharp_first_term, minimal_primes_monomial, resolve_maximal_order, univariate_roots,
)
from qdesing.transforms import BlowupCenter, is_admissible

from conftest import QT, R2, R3


def M2(gens, d, E=()):
    return MarkedIdeal.from_strings(["x", "y"], gens, d, E=E)


def I3(*gens):
    return Ideal(R3, [R3.parse(g) for g in gens])


# ----- roots and centers ------------------------------------------------------------

def test_univariate_roots():
    R = Ring(QQ, ["x"])
    assert sorted(univariate_roots(R.parse("x^3 - x"))) == [-1, 0, 1]
    assert univariate_roots(R.parse("x^2 + 1")) == []
    assert univariate_roots(R.parse("2*x - 3")) == [Fraction(3, 2)]
    Rt = Ring(QT, ["x"])
    (root,) = univariate_roots(Rt.parse("x^2 - t^2*x"))[1:]
    assert root == QT.param("t") ** 2


def test_dim_one_center_order():
    M = MarkedIdeal.from_strings(["x"], ["(x - 2)^2*(x + 1)^2*x^2"], 2)
    run = resolve_maximal_order(M)
    images = [str(center_image(s.marked.chart, s.center).gens[0]) for s in run.steps]
    assert images == ["x", "x + 1", "x - 2"]  # (height, value) order in original coordinates


def test_choose_center_examples():
    assert choose_center(M2(["x^2 + y^3"], 2)).center.label() == "V(x, y)"
    choice = choose_center(M2(["(x + y^2)^2"], 2))
    assert choice.center.label() == "V(x)"
    assert choice.substitutions == [{"x": R2.parse("x - y^2")}]
    assert choice.marked.gens == [R2.parse("x^2")]


# ----- driver ---------------------------------------------------------------------------

def test_resolution_examples():
    run = resolve_maximal_order(M2(["x^2 + y^3"], 2))
    assert run.count == 1 and run.terminal
    run = resolve_maximal_order(M2(["x^2 + y^5"], 2))
    assert run.count == 2 and run.terminal


def test_resolution_errors():
    with pytest.raises(NotMaximalOrderError):
        resolve_maximal_order(M2(["y^2 - x^3"], 1))
    with pytest.raises(CapacityError):
        resolve_maximal_order(M2(["x^2 + y^9"], 2), step_cap=2)


@pytest.mark.parametrize("entry", C.MARKED, ids=[e[0] for e in C.MARKED])
def test_driver_soundness_on_corpus(entry):
    name, field, vars, gens, d, E = entry
    run = resolve_maximal_order(MarkedIdeal.from_strings(vars, gens, d, field, E))
    assert run.terminal
    for step in run.steps:
        assert is_admissible(step.marked, step.center)
        pt = [dict(zip(step.center.vars, step.center.values)).get(v, 0) for v in step.marked.ring.vars]
        assert order_at(step.marked.ideal, pt) == d
    assert all(cosupport(leaf).is_unit() for leaf in run.leaves)


def test_center_image_in_original_coordinates():
    run = resolve_maximal_order(M2(["x^2 + y^5"], 2))
    images = [center_image(s.marked.chart, s.center) for s in run.steps]
    assert all(I == Ideal(R2, [R2.parse("x"), R2.parse("y")]) for I in images)


def test_run_serializes():
    data = resolve_maximal_order(M2(["x^2 + y^3"], 2)).to_json()
    assert data["blowups"] == 1 and data["terminal"] is True
    assert data["steps"][0]["center"] == "V(x, y)"


# ----- functoriality ---------------------------------------------------------------------

@pytest.mark.parametrize("k", [0, 1, 2])
def test_product_line_cusp(k):
    rep = check_pullback_product_line(M2(["y^2 - x^3"], 2), k)
    assert rep.ok
    assert len(rep.instances) == 1


def test_product_line_two_steps():
    rep = check_pullback_product_line(M2(["x^2 + y^5"], 2), 1)
    assert rep.ok and len(rep.instances) == 2


def test_generic_fibre_cusp_family_skips_vertical_centers():
    m = DescentModel.over_affine_space(["x1"], ["v", "y"], ["y^2 - x1*v^3"])
    rep = check_pullback_generic_fibre(MarkedIdeal(Chart(m.z_ring), m.z_ideal(), 2), m)
    assert rep.ok
    assert rep.instances[0]["skipped"] > 0


def test_generic_fibre_over_a_point_is_literal():
    m = DescentModel.over_affine_space([], ["x", "y"], ["y^2 - x^3"])
    rep = check_pullback_generic_fibre(MarkedIdeal(Chart(m.z_ring), m.z_ideal(), 2), m)
    inst = rep.instances[0]
    assert rep.ok and inst["skipped"] == 0
    assert inst["localizedCenters"] == inst["fibreCenters"]


# ----- Bennett -----------------------------------------------------------------------------

def test_bennett_examples():
    rep = bennett_checks(Ideal(R2, [R2.parse("y^2 - x^3")]), BlowupCenter(("x", "y")))
    assert rep.ok
    assert all(i["H"][:3] == [1, 2, 3] for i in rep.instances)
    smooth = bennett_checks(Ideal(R2, [R2.parse("y - x^2")]), BlowupCenter(("x", "y")))
    assert smooth.ok


def test_bennett_precondition():
    with pytest.raises(ValidationError):
        bennett_checks(Ideal(R2, [R2.parse("x*y")]), BlowupCenter(("y",)))
    with pytest.raises(ValidationError):
        bennett_checks(Ideal(R2, [R2.parse("y - 1")]), BlowupCenter(("x", "y")))


def test_bennett_needs_rational_points():
    ring = Ring(QT, ["x", "y"])
    with pytest.raises(UnsupportedError):
        bennett_checks(Ideal(ring, [ring.parse("y^2 - t*x^3")]), BlowupCenter(("x", "y")))


# ----- first term of inv# ------------------------------------------------------------------

def test_minimal_primes_monomial():
    assert minimal_primes_monomial(I3("z*x", "z*y")) == [("z",), ("x", "y")]
    assert [len(P.gens) for P in components_of(I3("z*x", "z*y"))] == [1, 2]
    with pytest.raises(ValidationError):
        components_of(I3("x^2 + y^2 - z^2"))


def test_inv_sharp_examples():
    X = I3("z*x", "z*y")
    at_origin = inv_sharp_first_term(X, [0, 0, 0])
    assert (at_origin.count, at_origin.d, at_origin.q, at_origin.shift) == (2, 2, 1, 1)
    on_plane = inv_sharp_first_term(X, [1, 0, 0])
    assert on_plane.count == 1 and on_plane.shift == 0
    smooth = inv_sharp_first_term(I3("z"), [1, 2, 0])
    assert smooth.count == 1 and smooth.shift == 0


def test_inv_sharp_argmax_stable_under_product():
    X = I3("z*x", "z*y")
    R4 = Ring(QQ, ["x", "y", "z", "w"])
    XW = Ideal(R4, [g.to_ring(R4) for g in X.gens])
    points = [[a, b, c] for a in (-1, 0, 1) for b in (-1, 0, 1) for c in (0, 1)
              if all(not g.evaluate([a, b, c]) for g in X.gens)]
    key = lambda T: T.key(8)
    down = {tuple(p): key(inv_sharp_first_term(X, p)) for p in points}
    up = {tuple(p): key(inv_sharp_first_term(XW, p + [0])) for p in points}
    best_down = {p for p, v in down.items() if v == max(down.values())}
    best_up = {p for p, v in up.items() if v == max(up.values())}
    assert best_down == best_up == {(0, 0, 0)}
