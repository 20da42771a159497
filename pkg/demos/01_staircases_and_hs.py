"""Staircases, Hilbert-Samuel functions and the Λ shift."""
from qdesing.kernel import QQ, FractionField, Ideal, Ring
from qdesing.initial_exponents import (
    Diagram, HSFunction, diagram_of_ideal, hilbert_samuel_at_point, lambda_iterate, lambda_sequence,
    product_h_identity_check,
)

R = Ring(QQ, ["x", "y"])
cusp = Ideal(R, [R.parse("y^2 - x^3")])

# The diagram is read off the deglex-smallest terms of the ideal near the origin
D = diagram_of_ideal(cusp, 8)
print("vertices:", D.vertices)        # one vertex, from y^2
print("H:", D.h_prefix(8))            # cumulative length: 1, 3, 5, ...

# At a smooth point the staircase starts at degree one
print("H at (1, 1):", hilbert_samuel_at_point(cusp, [1, 1], 6).values(6))

# Λ is a running sum, so Λ(H) of a line is the count of monomials in two variables
line = HSFunction(diagram=Diagram(1, ((1,),)))
print("Λ of a point on a line:", lambda_iterate(line, 1).values(6))
print("partial sums by hand:", lambda_sequence([1, 1, 1, 1, 1, 1, 1]))

# Multiplying by an affine line shifts H by one Λ
print("N x D agrees with Λ(H_D):", product_h_identity_check(D, 1, 10))
print("N^2 x D agrees with Λ^2(H_D):", product_h_identity_check(D, 2, 10))

# Over a parameter field the same computation runs with rational-function coefficients
Rt = Ring(FractionField(["t"]), ["v", "y"])
family = Ideal(Rt, [Rt.parse("y^2 - t*v^3")])
print("H over Q(t):", hilbert_samuel_at_point(family, [0, 0], 6).values(6))
