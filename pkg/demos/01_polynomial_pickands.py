"""
Which polynomials are Pickands dependence functions?

Walks the degree-2/3 spaces, the classical quartic counterexample whose
power-basis coefficient conditions look fine but whose second derivative
dips negative, and a genuine quartic model.
"""
import numpy as np

from pickpoly import (
    BernsteinPoly,
    PowerPoly,
    power_to_bernstein,
    validate_pickands,
)

print("== degree 2: A = 1 - psi t + psi t^2 is Pickands exactly for psi in [0,1] ==")
for psi in (0.0, 0.5, 1.0, 1.4):
    A = power_to_bernstein(PowerPoly([1.0, -psi, psi]), 2)
    verdict = validate_pickands(A)
    print(f"  psi = {psi:>4}: coeffs {np.round(A.coeffs, 3)}  valid = {verdict['valid']}")

print()
print("== the counterexample 1 - t^3 + t^4 ==")
P = power_to_bernstein(PowerPoly([1.0, 0.0, 0.0, -1.0, 1.0]))
report = validate_pickands(P)
print("  Bernstein coefficients:", np.round(P.coeffs, 4))
print("  valid:", report["valid"])
for v in report["violations"]:
    print(f"  violated rule: {v['rule']} (witness t = {v['witness']})")
print("  (its second derivative 12 t (t - 1/2) is negative on (0, 1/2))")

print()
print("== a genuine quartic: A(t) = 1 - (83/180) t + t^2 - (7/9) t^3 + (43/180) t^4 ==")
A = power_to_bernstein(PowerPoly([1.0, -83 / 180, 1.0, -7 / 9, 43 / 180]))
print("  Bernstein coefficients:", np.round(A.coeffs, 6))
print("  valid:", validate_pickands(A)["valid"])

print()
print("== endpoint conditions bite on the second and second-to-last coefficient ==")
bad = BernsteinPoly([1.0, 0.4, 1.0])
print("  [1, 0.4, 1] ->", validate_pickands(bad)["violations"])
print("  (degree 2 needs c(1) >= 1/2)")
