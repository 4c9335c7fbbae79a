#!/usr/bin/env python3
"""Symbolic oracle for the weight-algebra identities used by the C++ tests.

Everything here is derived from first principles with sympy, independently of
the C++ implementation: the piecewise weight w(v), its derivatives, the
quantities H1, H2 built from them, their closed polynomial forms, the lower
bound H1+H2 > 2*um^4, and the Poincare prefactor bound > 1/6.

Run:  python3 tools/oracles/weight_algebra_oracle.py
The printed constants are frozen into tests/test_weight.cpp.
"""

import sympy as sp

v, um, mu = sp.symbols("v u_m mu", real=True)
u_minus = -2 * um
u_star = um / 2
sigma = 3 * um**2

# Piecewise weight (regions: A = (u_-,0), B = [0,u_*), C = [u_*,u_m)).
wA = sp.Rational(5, 2) * um * (um - v)
wB = sp.Rational(5, 2) / um**2 * (um - v) * (4 * v**3 + um**3)
wC = sp.Rational(15, 8) * um**2

regions = {"A": wA, "B": wB, "C": wC}

print("== junction continuity (values of w, w', w'' at v=0 and v=u_*/um=1/2) ==")
for name, expr in regions.items():
    d1 = sp.diff(expr, v)
    d2 = sp.diff(expr, v, 2)
    print(
        f"  region {name}: w(0)={sp.simplify(expr.subs(v, 0))},"
        f" w'(0)={sp.simplify(d1.subs(v, 0))}, w''(0)={sp.simplify(d2.subs(v, 0))},"
        f" w(u*)={sp.simplify(expr.subs(v, u_star))},"
        f" w'(u*)={sp.simplify(d1.subs(v, u_star))},"
        f" w''(u*)={sp.simplify(d2.subs(v, u_star))}"
    )

# Profile ODE gives mu*U' = (v - u_minus)(v - um)^2 pointwise; H1, H2 are the
# two brace groups multiplying the localized energy density.
muUxi = (v - u_minus) * (v - um) ** 2


def h1_h2(w):
    d1 = sp.diff(w, v)
    d2 = sp.diff(w, v, 2)
    h1 = ((sigma - 3 * v**2) * d1 + 3 * v * w - sp.Rational(1, 2) * d2 * muUxi) * (
        u_star - u_minus
    )
    h2 = w * d2 * (u_star - v) * (v + 2 * um) + 2 * w**2 + w * d1 * (
        u_star + u_minus - 2 * v
    )
    return sp.expand(h1), sp.expand(h2)


print("\n== H1, H2 expanded per region ==")
sums = {}
for name, expr in regions.items():
    h1, h2 = h1_h2(expr)
    s = sp.expand(h1 + h2)
    sums[name] = s
    print(f"  region {name}: H1 = {h1}")
    print(f"  region {name}: H2 = {h2}")
    print(f"  region {name}: H1+H2 = {s}")
    print(f"  region {name}: (H1+H2)/um^4 factored = {sp.factor(s)}")

print("\n== junction values of H1+H2 ==")
print("  at v=0 (A,B):", sums["A"].subs(v, 0), sums["B"].subs(v, 0))
print(
    "  at v=u_* (B,C):",
    sp.simplify(sums["B"].subs(v, u_star)),
    sp.simplify(sums["C"].subs(v, u_star)),
)

print("\n== minimum of (H1+H2)/um^4 over [-2,1/2] for um=1 (claim: > 2) ==")
sA = sums["A"].subs(um, 1)
sB = sums["B"].subs(um, 1)
critB = [
    r
    for r in sp.real_roots(sp.diff(sB, v))
    if 0 <= r <= sp.Rational(1, 2)
]
cands = [(sp.Rational(-2), sA.subs(v, -2)), (sp.Rational(0), sA.subs(v, 0))]
cands += [(r, sB.subs(v, r)) for r in critB]
cands.append((sp.Rational(1, 2), sB.subs(v, sp.Rational(1, 2))))
for loc, val in cands:
    print(f"  candidate v={sp.nsimplify(loc)}: {sp.N(val, 20)}")
vmin = min(cands, key=lambda c: sp.N(c[1]))
print(f"  minimum = {sp.N(vmin[1], 20)} at v = {sp.N(vmin[0], 20)}")

print("\n== Poincare prefactor 1 - w*(u_*-v)*2/(5*um*(um-v)^2), min over (u_-,u_*) ==")
for name, expr in [("A", wA), ("B", wB)]:
    fac = sp.cancel(sp.together(1 - expr * (u_star - v) * 2 / (5 * um * (um - v) ** 2)))
    print(f"  region {name}: factor = {fac}")
    fac1 = sp.cancel(fac.subs(um, 1))
    dnum = sp.numer(sp.cancel(sp.together(sp.diff(fac1, v))))
    lo, hi = (-2, 0) if name == "A" else (0, sp.Rational(1, 2))
    crit = []
    if dnum.has(v):
        crit = [r for r in sp.real_roots(sp.Poly(dnum, v)) if lo < r < hi]
    pts = [lo, hi] + crit
    vals = [(p, sp.N(fac1.subs(v, p), 20)) for p in pts]
    for p, val in vals:
        print(f"    v={sp.N(p, 8)}: {val}")

print("\n== bounds of w, w', w'' over [u_-, u_m) for um=1 ==")
for name, expr in regions.items():
    d1 = sp.diff(expr, v)
    d2 = sp.diff(expr, v, 2)
    print(
        f"  region {name}: w={expr.subs(um,1)}, w'={sp.expand(d1.subs(um,1))},"
        f" w''={sp.expand(d2.subs(um,1))}"
    )
peak = sp.solve(sp.diff(regions["B"], v, 2).subs(um, 1).diff(v), v)
print("  w'' critical points in B (um=1):", peak)
for p in peak:
    print(f"    w''({p}) = {sp.diff(regions['B'], v, 2).subs(um, 1).subs(v, p)}")

print("\n== Poincare test-function integrals (variance bound, weight y(1-y)) ==")
y = sp.symbols("y", positive=True)
for f in [y, y**2]:
    lhs = sp.integrate(f**2, (y, 0, 1)) - sp.integrate(f, (y, 0, 1)) ** 2
    rhs = sp.Rational(1, 2) * sp.integrate(y * (1 - y) * sp.diff(f, y) ** 2, (y, 0, 1))
    print(f"  f={f}: lhs={lhs}, rhs={rhs}, lhs<=rhs: {sp.simplify(rhs-lhs) >= 0}")
