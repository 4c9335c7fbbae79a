"""High-precision reference values for the shock profile and the rarefaction.

The profile solves mu U' = (U - u_minus)(U - u_mid)^2 with U(0) = 0. Its
implicit integral is

    G(U) = ln((U - u_minus)/(u_mid - U)) / d^2 + 1/(d (u_mid - U)),
    d = u_mid - u_minus,          G(U(xi)) - G(U(0)) = xi / mu,

inverted here by bisection at 40 digits, independently of the C++
implementation. The rarefaction foot point solves x0 + w0(x0) t = x for the
tanh speed field w0. Run from the repo root:

    python3 tools/oracles/profile_oracle.py
"""

from mpmath import mp, mpf, log, tanh, sqrt

mp.dps = 40

U_MINUS = mpf(-2)
U_MID = mpf(1)
MU = mpf(1)
D = U_MID - U_MINUS  # 3


def g(u):
    return log((u - U_MINUS) / (U_MID - u)) / D**2 + 1 / (D * (U_MID - u))


G0 = g(mpf(0))


def profile(xi):
    """U(xi) for U(0) = 0, by bisection on the strictly increasing G."""
    target = G0 + mpf(xi) / MU
    lo, hi = U_MINUS + mpf("1e-30"), U_MID - mpf("1e-30")
    for _ in range(200):
        mid = (lo + hi) / 2
        if g(mid) < target:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def main():
    print("# profile states U(xi), (u_minus, u_mid, mu) = (-2, 1, 1), U(0) = 0")
    for xi in ["-8", "-5", "-1", "0.5", "1", "5", "20", "100", "1000"]:
        print(f"U({xi}) = {mp.nstr(profile(mpf(xi)), 25)}")

    print("# left-tail gaps U(xi) - u_minus (the state itself underflows)")
    for xi in ["-8", "-5", "-3"]:
        gap = profile(mpf(xi)) - U_MINUS
        print(f"gap({xi}) = {mp.nstr(gap, 20)}, ln gap = {mp.nstr(log(gap), 20)}")

    xi_star = MU * (g(mpf("0.5")) - G0)
    print(f"xi_star (U = 1/2) = {mp.nstr(xi_star, 25)}")
    xi_of_09 = MU * (g(mpf("0.9")) - G0)
    print(f"xi at U = 0.9     = {mp.nstr(xi_of_09, 25)}")

    # Rarefaction foot points for the composite (-2, 1.2, 1): the speed field
    # is w0(x) = mean + half*tanh(x) with mean = (wp+wm)/2, half = (wp-wm)/2,
    # wm = 3 u_mid^2 = 3, wp = 3 u_plus^2 = 4.32.
    wm, wp = mpf(3), 3 * mpf("1.2") ** 2
    mean, half = (wp + wm) / 2, (wp - wm) / 2

    def w0(x0):
        return mean + half * tanh(x0)

    print("# rarefaction foot points x0 with x0 + w0(x0) t = x, u_plus = 1.2")
    for t, x in [("10", "36"), ("1351", "4054.40625"), ("10000", "36600")]:
        tt, xx = mpf(t), mpf(x)
        lo, hi = xx - wp * tt - 1, xx - wm * tt + 1
        for _ in range(220):  # bisection: tanh saturation defeats Newton here
            mid = (lo + hi) / 2
            if mid + w0(mid) * tt < xx:
                lo = mid
            else:
                hi = mid
        x0 = (lo + hi) / 2
        u = sqrt(w0(x0) / 3)
        print(f"t = {t}, x = {x}: x0 = {mp.nstr(x0, 25)}, u = {mp.nstr(u, 25)}")


if __name__ == "__main__":
    main()
