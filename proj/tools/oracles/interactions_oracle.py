"""Independent reference values for the six wave-interaction integrals.

Everything is rebuilt from scratch at 25 digits: the shock profile by
bisection of its implicit integral, the smooth rarefaction by bisection of
the characteristic fixed point, the sharp fan from its self-similar formula,
and the integrals with mpmath's quad. Conventions match the library: in the
shock frame xi = x - sigma t, the rarefaction is evaluated at time 1 + t and
position xi + sigma t, the fan at speed (xi + sigma (1 + t))/(1 + t), and the
split point is L = (f'(u_plus) - sigma)(1 + t). Run from the repo root:

    python3 tools/oracles/interactions_oracle.py
"""

from mpmath import mp, mpf, log, tanh, cosh, sqrt, quad

mp.dps = 25

U_MINUS = mpf(-2)
U_MID = mpf(1)
U_PLUS = mpf("1.2")
MU = mpf(1)
D = U_MID - U_MINUS
SIGMA = 3 * U_MID**2
DELTA_R = U_PLUS - U_MID

WM = 3 * U_MID**2
WP = 3 * U_PLUS**2
MEAN, HALF = (WP + WM) / 2, (WP - WM) / 2


def g(u):
    return log((u - U_MINUS) / (U_MID - u)) / D**2 + 1 / (D * (U_MID - u))


G0 = g(mpf(0))


def profile(xi):
    target = G0 + mpf(xi) / MU
    lo, hi = U_MINUS + mpf("1e-24"), U_MID - mpf("1e-24")
    for _ in range(120):
        mid = (lo + hi) / 2
        if g(mid) < target:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def profile_deriv(xi):
    u = profile(xi)
    return (u - U_MINUS) * (u - U_MID) ** 2 / MU


def w0(x0):
    return MEAN + HALF * tanh(x0)


def w0p(x0):
    return HALF / cosh(x0) ** 2


def foot(t, x):
    lo, hi = x - WP * t - 1, x - WM * t + 1
    for _ in range(140):
        mid = (lo + hi) / 2
        if mid + w0(mid) * t < x:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def rar_u(t, x):
    return sqrt(w0(foot(t, x)) / 3)


def rar_ux(t, x):
    x0 = foot(t, x)
    wx = w0p(x0) / (1 + w0p(x0) * t)
    return wx / (6 * sqrt(w0(x0) / 3))


def fan_u(speed):
    if speed <= WM:
        return U_MID
    if speed >= WP:
        return U_PLUS
    return sqrt(speed / 3)


def entries(t):
    t1 = 1 + t
    L = (3 * U_PLUS**2 - SIGMA) * t1

    def uR(xi):
        return rar_u(t1, xi + SIGMA * t)

    def uRx(xi):
        return rar_ux(t1, xi + SIGMA * t)

    def ur(xi):
        return fan_u((xi + SIGMA * t1) / t1)

    e0 = quad(lambda xi: abs(profile(xi) - U_MID) * uRx(xi), [-60, -20, -5, 0])
    e1 = quad(lambda xi: abs(profile(xi) - U_MID) * uRx(xi),
              [0, 10, 100, 1000, L, L + 45])
    e2 = quad(lambda xi: abs(uR(xi) - U_MID) * profile_deriv(xi),
              [-60, -20, -5, 0])
    e3 = quad(lambda xi: abs(uR(xi) - ur(xi)) * profile_deriv(xi),
              [0, 1, 10, 100, 1000, L])
    e4 = quad(lambda xi: abs(ur(xi) - U_MID) * profile_deriv(xi),
              [0, 1, 10, 100, 1000, L])
    body = quad(lambda xi: abs(uR(xi) - U_MID) * profile_deriv(xi),
                [L, L + 45])
    e5 = body + DELTA_R * (U_MID - profile(L + 45))
    return [e0, e1, e2, e3, e4, e5]


def main():
    for t in ["1250"]:
        print(f"# interaction integrals at t = {t}, "
              f"(u_minus, u_plus, mu) = (-2, 1.2, 1)")
        for k, v in enumerate(entries(mpf(t))):
            print(f"entry[{k}] = {mp.nstr(v, 17)}")


if __name__ == "__main__":
    main()
