import pytest
from hypothesis import given, strategies as st

from qdesing.derivatives import coefficient_ideal_normal_variant
from qdesing.descent import (
    DescentModel, FactorizationRecord, GenericFibre, base_change, build_model, clear_denominators,
    coefficient_embedding, collect_coefficients, generic_fibre, kernel_prime, move_to_field, order_invariance_report,
    symbol_names,
)
from qdesing.errors import InvalidEmbeddingError
from qdesing.kernel import QQ, Ideal, Ring
from qdesing.marked import Chart, MarkedIdeal, pullback_smooth

from conftest import QS, QT


def ideal(field, vars, gens):
    ring = Ring(field, vars)
    return Ideal(ring, [ring.parse(g) for g in gens])


CUSP = ideal(QT, ["v", "y"], ["y^2 - t*v^3"])


def test_collect_coefficients():
    c = collect_coefficients(CUSP)
    assert c.symbols == ("x1",) and c.values == (QT.param("t"),)
    assert [str(g) for g in c.rewritten] == ["-x1*v^3 + y^2"]
    c = collect_coefficients(ideal(QQ, ["x", "y"], ["y^2 - 2*x"]))
    assert c.symbols == () and [str(g) for g in c.rewritten] == ["y^2 - 2*x"]


def test_clear_denominators():
    g = ideal(QT, ["x", "y"], ["y - t/(t+1)*x"]).gens[0]
    cleared = clear_denominators(g)
    assert cleared == cleared.ring.parse("(t + 1)*y - t*x")


def test_symbol_names_avoid_collisions():
    assert symbol_names(2, set()) == ("x1", "x2")
    assert symbol_names(1, {"x1"}) == ("c1",)


def test_kernel_prime_examples():
    assert kernel_prime(["x1"], [QT.param("t")], QT) == []
    assert [str(p) for p in kernel_prime(["x1"], [QS.param("s")], QS)] == ["x1^2 - 2"]
    assert [str(p) for p in kernel_prime(["x1"], [1], QQ)] == ["x1 - 1"]


def test_build_model_examples():
    m = build_model(CUSP)
    assert m.prime == () and m.dim_T == 1
    assert [str(g) for g in m.z_ideal().gens] == ["-x1*v^3 + y^2"]
    m = build_model(ideal(QQ, ["x", "y"], ["y^2 - 2*x"]))
    assert m.symbols == () and m.dim_T == 0
    m = build_model(ideal(QS, ["x", "y"], ["y - s*x"]))
    assert [str(p) for p in m.prime] == ["x1^2 - 2"] and m.dim_T == 0


def test_dependent_symbols_give_nonzero_prime():
    m = build_model(ideal(QT, ["x", "y"], ["y - t/(t+1)*x"]))
    assert [str(p) for p in m.prime] == ["x1 - x2 + 1"]
    assert m.dim_T == 1


def test_generic_fibre_recovers_input():
    m = build_model(CUSP)
    fib = generic_fibre(m)
    assert fib.ring.field.params == ("x1",)
    back = base_change(fib, QT, {"x1": QT.param("t")})
    assert [str(g) for g in back.gens] == [str(g) for g in CUSP.gens]


def test_base_change_from_rationals():
    I = ideal(QQ, ["x", "y"], ["y^2 - 2*x"])
    assert [str(g) for g in base_change(I, QT).gens] == ["y^2 - 2*x"]


def test_invalid_embedding():
    m = build_model(ideal(QS, ["x", "y"], ["y - s*x"]))
    with pytest.raises(InvalidEmbeddingError):
        coefficient_embedding(m.fibre_field(), QQ, {"x1": 1})


@pytest.mark.parametrize("field,vars,gens", [
    (QT, ["v", "y"], ["y^2 - t*v^3"]),
    (QT, ["x", "y"], ["t^2*x + 1/t*y", "x*y - t"]),
    (QS, ["x", "y"], ["x^2 - s*y^3"]),
    (QQ, ["x", "y"], ["x*y - 3"]),
])
def test_factorization_record_round_trip(field, vars, gens):
    assert FactorizationRecord(build_model(ideal(field, vars, gens))).verify()


@given(st.integers(-3, 3), st.integers(1, 3), st.integers(0, 3))
def test_round_trip_property(a, b, e):
    g = f"y^{b + 1} + ({a}*t^{e} + 1)/(t + 2)*x^2 - t*x*y"
    I = ideal(QT, ["x", "y"], [g])
    m = build_model(I)
    assert FactorizationRecord(m).verify()


def test_order_invariance_examples():
    m = build_model(CUSP)
    rep = order_invariance_report(m, [0, 0])
    assert rep.fibre_order == rep.upstairs_order == 2
    m = build_model(ideal(QT, ["x", "y"], ["1 + t*x"]))
    rep = order_invariance_report(m)
    assert rep.fibre_order == rep.upstairs_order == 0
    m = build_model(ideal(QT, ["v", "y"], ["t*v"]))
    rep = order_invariance_report(m, [0, 0])
    assert rep.fibre_order == rep.upstairs_order == 1


def test_over_affine_space():
    m = DescentModel.over_affine_space(["x1"], ["v", "y"], ["y^2 - x1*v^3"])
    assert m.dim_T == 1 and m.z_ring.vars == ("x1", "v", "y")
    assert [str(g) for g in generic_fibre(m).gens] == ["-x1*v^3 + y^2"]


def test_normal_variant_commutes_with_generic_fibre():
    m = DescentModel.over_affine_space(["x1"], ["v", "y"], ["y^2 - x1*v^3"])
    phi = GenericFibre(m)
    Z = MarkedIdeal(Chart(m.z_ring), m.z_ideal(), 2)
    down = coefficient_ideal_normal_variant(pullback_smooth(Z, phi), "y")
    up = coefficient_ideal_normal_variant(Z, "y")
    pulled = Ideal(down.ring, [move_to_field(g, down.ring) for g in up.gens])
    assert down.d == up.d
    assert down.ideal == pulled
