"""
The Bernstein-approximation submodel, its polytope, and the gap.

The submodel contains exactly the polynomials whose h-coefficients are
nonnegative (on top of the two endpoint caps). A valid Pickands polynomial
can sit outside it at its own degree and join only after degree elevation;
the joining degree is the Lorentz degree of h, and it is infinite exactly
when h vanishes somewhere inside (0,1).
"""
import math

from pickpoly import (
    BernsteinPoly,
    elevate_degree,
    in_submodel_a,
    in_submodel_h,
    lorentz_degree,
    validate_pickands,
)

print("== a Pickands quartic outside the degree-4 submodel ==")
A = BernsteinPoly([1.0, 0.75, 1.0, 0.75, 1.0])  # 1 - t(1-t){1 - 2t(1-t)}
print("  valid Pickands:", validate_pickands(A)["valid"])
print("  Bernstein approximation of some Pickands function:", in_submodel_a(A))
print("  (the coefficient polyline has slopes -1, +1, -1, +1: not convex)")

print()
print("== the quartic model joins the submodel at degree 6 ==")
h = BernsteinPoly([2.0, -1.0 / 3.0, 0.2])
print("  h coefficients:", h.coeffs, "-> member at degree 2:",
      in_submodel_h(h.coeffs)["member"])
for M in (5, 6):
    lifted = elevate_degree(h, M)
    print(f"  degree {M}: min coefficient {lifted.coeffs.min():+.5f} "
          f"member = {in_submodel_h(lifted.coeffs)['member']}")
print("  lorentz_degree(h) =", lorentz_degree(h))

print()
print("== the symmetric family A = 1 - a t(1-t){1 - b t(1-t)} ==")
print("  h = 2a{(1+b) - 6b t(1-t)}; the joining degree grows as b -> 2")
print(f"  {'b':>6} {'lorentz degree':>16}   closed form 2*ceil((1+b)/(2-b))")
for b in (-1.0, -0.5, 0.1, 0.5, 1.0, 1.2, 1.5, 1.9, 2.0):
    hb = BernsteinPoly([2 * ((1 + b) - 6 * b * k * (2 - k) / 2) for k in range(3)])
    got = lorentz_degree(hb)
    closed = 2 * math.ceil((1 + b) / (2 - b)) if 0 < b < 2 else ("2" if b < 0 else "inf")
    print(f"  {b:>6} {str(got):>16}   {closed}")
print("  (at b = 1, 1.5, 1.9 the odd degree just below the closed form already")
print("   has nonnegative coefficients, so the minimal degree is one less)")

print()
print("== b = 2 touches zero at t = 1/2, so no degree ever works ==")
h2 = BernsteinPoly([6.0, -6.0, 6.0])
print("  h(1/2) =", float(h2(0.5)), "-> lorentz_degree:", lorentz_degree(h2))
