"""
Dependence measures and how well Bernstein approximations track a Pickands
function.

tau1 looks at A(1/2), tau2 integrates A; both are 0 at independence and 1 at
perfect dependence. Over the degree-m submodel their ranges stop short of 1,
with the gap closing like 1/m; pointwise, the Bernstein operator over-
estimates A by at most a binomial-pmf factor of order m^(-1/2).
"""
import numpy as np

from pickpoly import (
    BernsteinPoly,
    PickandsPoly,
    approx_error_bound,
    comonotone,
    submodel_tau_range,
    tau_measures,
)

print("== tau measures of a few models ==")
for name, coeffs in [
    ("independence", [1.0, 1.0, 1.0]),
    ("mixed psi=0.9", [1.0, 0.55, 1.0]),
    ("B_4(V, .)", [1.0, 0.75, 0.5, 0.75, 1.0]),
]:
    rep = tau_measures(PickandsPoly(BernsteinPoly(coeffs)))
    print(f"  {name:>14}: tau1 = {rep.tau1:.4f}  tau2 = {rep.tau2:.4f}")

print()
print("== submodel ranges approach [0, 1] like 1/m ==")
print(f"  {'m':>4} {'tau1 max':>10} {'tau2 max':>10} {'m*(1 - tau2 max)':>18}")
for m in (1, 2, 4, 8, 16, 32, 64):
    r1 = submodel_tau_range(m, 1)
    r2 = submodel_tau_range(m, 2)
    print(f"  {m:>4} {r1:>10.5f} {r2:>10.5f} {m * (1 - r2):>18.4f}")

print()
print("== Bernstein approximation error of the comonotone function V at t = 1/2 ==")
print("  the refined bound {1 - V(t)} P(S_{m-1} = floor(m/2)) is attained there")
print(f"  {'m':>6} {'error':>12} {'refined bound':>14} {'error * sqrt(m)':>16}")
for m in (4, 16, 64, 256, 1024):
    b = approx_error_bound(comonotone(), m, 0.5)
    print(f"  {m:>6} {b.error:>12.6f} {b.v_bound:>14.6f} {b.error * np.sqrt(m):>16.5f}")
print("  (the scaled error climbs toward sqrt(1/(2 pi)) ~ 0.39894)")

print()
print("== the generic bound 2t(1-t) P_t(S_{m-1} = floor(mt)) holds everywhere ==")
for t in (0.1, 0.3, 0.5, 0.7):
    b = approx_error_bound(comonotone(), 16, t)
    print(f"  t = {t}: error = {b.error:.5f} <= bound = {b.bound:.5f}")
