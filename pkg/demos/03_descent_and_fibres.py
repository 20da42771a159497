"""Spreading an ideal over a finitely generated field into a family over Q."""
from qdesing.kernel import FractionField, Ideal, Ring
from qdesing.descent import (
    DescentModel, FactorizationRecord, build_model, generic_fibre, order_invariance_report,
)
from qdesing.marked import Chart, MarkedIdeal
from qdesing.resolution import check_pullback_generic_fibre

Qt = FractionField(["t"])
R = Ring(Qt, ["v", "y"])
I = Ideal(R, [R.parse("y^2 - t*v^3")])

# Each coefficient becomes a new symbol; here t is transcendental so the prime is zero
m = build_model(I)
print("symbols:", m.symbols, "prime:", m.prime, "dim T:", m.dim_T)
print("upstairs:", [str(g) for g in m.z_ideal().gens])
print("generic fibre:", [str(g) for g in generic_fibre(m).gens])
print("round trip ok:", FactorizationRecord(m).verify())

# Algebraic coefficients give a nonzero prime
Qs = FractionField(["s"], ["s^2 - 2"])
Rs = Ring(Qs, ["x", "y"])
m2 = build_model(Ideal(Rs, [Rs.parse("y - s*x")]))
print("sqrt 2 model prime:", [str(p) for p in m2.prime], "dim T:", m2.dim_T)

# Order at a point is the same downstairs and upstairs
rep = order_invariance_report(m, [0, 0])
print("orders (fibre, upstairs):", rep.fibre_order, rep.upstairs_order)

# Resolving the family and restricting to the generic fibre gives the fibre resolution
fam = DescentModel.over_affine_space(["x1"], ["v", "y"], ["y^2 - x1*v^3"])
report = check_pullback_generic_fibre(MarkedIdeal(Chart(fam.z_ring), fam.z_ideal(), 2), fam)
inst = report.instances[0]
print("correspondence holds:", report.ok)
print("family centers dominating the base:", inst["localizedCenters"])
print("fibre centers:", inst["fibreCenters"], "| vertical centers skipped:", inst["skipped"])
