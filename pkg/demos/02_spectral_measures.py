"""
From the second derivative h to the Pickands function A and back.

A polynomial Pickands function is determined by the nonnegative polynomial
h = A'' plus atom masses at 0 and 1; the masses are one minus the two
endpoint-derivative integrals. The maps between Bernstein coefficient
vectors are exact.
"""
import numpy as np

from pickpoly import (
    BernsteinPoly,
    PickandsPoly,
    a_from_h,
    bernstein_to_power,
    copula_cdf,
    copula_density,
    h_from_a,
    spectral_measure,
)

h = BernsteinPoly([2.0, -1.0 / 3.0, 0.2])
print("h in Bernstein coordinates:", h.coeffs)

A = a_from_h(h)
print("A Bernstein coefficients:  ", np.round(A.coeffs, 6))
print("A power coefficients:      ", np.round(bernstein_to_power(A).coeffs, 6))
print("  (the linear coefficient -83/180 =", -83 / 180, ")")

back = h_from_a(A)
print("round trip h_from_a(a_from_h(h)):", back.coeffs)

sd = spectral_measure(h)
print()
print("spectral measure:")
print(f"  -A'(0) = int (1-w) h = {sd.left_deriv:.6f}  (83/180 = {83/180:.6f})")
print(f"   A'(1) = int w h     = {sd.right_deriv:.6f}  (29/180 = {29/180:.6f})")
print(f"  atom at 0: {sd.mass0:.6f}   atom at 1: {sd.mass1:.6f}")

print()
print("copula evaluation under this model:")
pick = PickandsPoly(A)
for u, v in [(0.5, 0.5), (0.3, 0.7), (0.9, 0.2)]:
    print(f"  C({u}, {v}) = {copula_cdf(pick, u, v):.6f}   density = {copula_density(pick, u, v):.6f}")
print("  C(u, 1) returns u:", copula_cdf(pick, 0.42, 1.0))
