"""Resolving marked ideals of maximal order by admissible blow-ups."""
from qdesing.marked import MarkedIdeal, cosupport
from qdesing.resolution import center_image, choose_center, resolve_maximal_order

# (x^2 + y^(2k+1), 2) needs exactly k point blow-ups
for k in range(1, 5):
    M = MarkedIdeal.from_strings(["x", "y"], [f"x^2 + y^{2 * k + 1}"], 2)
    run = resolve_maximal_order(M)
    print(f"x^2 + y^{2 * k + 1}: {run.count} blow-ups, terminal={run.terminal}")

# Follow one run chart by chart
run = resolve_maximal_order(MarkedIdeal.from_strings(["x", "y"], ["x^2 + y^5"], 2))
for step in run.steps:
    print(step.index, step.chart or "root", step.center.label(), "->", [str(g) for g in step.image().gens])
    for R in step.results:
        print("   ", R.chart.label, [str(g) for g in R.gens], "empty" if cosupport(R).is_unit() else "")

# A tangent parabola is straightened before the center is read off
choice = choose_center(MarkedIdeal.from_strings(["x", "y"], ["(x + y^2)^2"], 2))
print("center:", choice.center.label(), "after x ->", str(choice.substitutions[0]["x"]))

# In one variable every root of high enough multiplicity is a center
run = resolve_maximal_order(MarkedIdeal.from_strings(["x"], ["(x - 2)^2*(x + 1)^2*x^2"], 2))
print("points blown up:", [str(center_image(s.marked.chart, s.center).gens[0]) for s in run.steps])

# Surfaces go through maximal contact and the coefficient ideal
run = resolve_maximal_order(MarkedIdeal.from_strings(["x", "y", "z"], ["z^2 - x^2*y^2"], 2))
print("z^2 - x^2*y^2:", run.count, "blow-ups")
