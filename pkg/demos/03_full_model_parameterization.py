"""
The theta parameterization of all polynomial Pickands functions.

theta concatenates the Bernstein coefficients of P and Q in the
nonnegativity factorization h = P^2 + t(1-t) Q^2 (even degree) or
t P^2 + (1-t) Q^2 (odd degree). Feasibility is the intersection of two
ellipsoids: both endpoint-derivative integrals of h_theta stay <= 1.
"""
import numpy as np

from pickpoly import (
    FullModelParam,
    feasibility,
    sample_feasible,
    theta_to_h,
    theta_to_pickands,
    validate_pickands,
)

print("== m = 2: theta = (p0, p1, q0) ==")
param = FullModelParam(2, [1.0, -0.5, 0.3])
h = theta_to_h(param)
print("  h coefficients:", np.round(h.coeffs, 6))
print("  (h(0) = p0^2 =", 1.0**2, ", h(1) = p1^2 =", 0.5**2, ")")
feas = feasibility(param)
print(f"  feasible: {feas.feasible}  q0 = {feas.q0:.4f}  q1 = {feas.q1:.4f}")
A = theta_to_pickands(param)
print("  A coefficients:", np.round(A.poly.coeffs, 6), " valid:", validate_pickands(A.poly)["valid"])

print()
print("== the boundary of Theta_0 = [0, 2] ==")
for value in (0.0, 1.8, 2.0, 2.4):
    feas = feasibility(FullModelParam(0, [value]))
    print(f"  theta = [{value}]: feasible = {feas.feasible}  (q0 = q1 = {feas.q0:.3f})")

print()
print("== random draws from Theta_m always give genuine Pickands functions ==")
rng = np.random.default_rng(7)
for m in (1, 4, 9):
    thetas = sample_feasible(m, rng, 200)
    all_valid = all(
        validate_pickands(theta_to_pickands(FullModelParam(m, th)).poly)["valid"]
        for th in thetas
    )
    qmax = max(max(feasibility(FullModelParam(m, th)).q0,
                   feasibility(FullModelParam(m, th)).q1) for th in thetas)
    print(f"  m = {m}: 200 draws, all valid = {all_valid}, largest functional = {qmax:.4f}")

print()
print("== sign flips of the (P, Q) blocks do not change h (identifiability) ==")
theta = np.array([0.8, -0.2, 0.5, 0.1])
base = theta_to_h(FullModelParam(3, theta)).coeffs
flipped = theta_to_h(FullModelParam(3, np.array([-0.8, 0.2, 0.5, 0.1]))).coeffs
print("  max coefficient difference:", np.max(np.abs(base - flipped)))
