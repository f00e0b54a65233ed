"""High-precision reference values for the closed-form wall profiles.

Run directly to regenerate the constants frozen in tests/_refs.py.
Everything here is computed from the closed-form expressions with
mpmath quadrature or arbitrary-precision derivatives; nothing imports
the package under test.
"""

import mpmath as mp

mp.mp.dps = 30


def ode_wall(x, gamma):
    """Decreasing 1D wall profile, tails pi (left) and 0 (right)."""
    return 2 * mp.atan(mp.exp(-2 * mp.sqrt(gamma) * x))


def strip_kernel(x):
    return mp.pi * mp.cosh(mp.pi * x) / mp.sinh(mp.pi * x) ** 2


print("== ODE exactness: theta'' - 2 gamma sin(2 theta) ==")
worst = mp.mpf(0)
for gamma in (mp.mpf("0.25"), mp.mpf(1), mp.mpf(4)):
    for x0 in (-2, -0.5, 0, 0.7, 1.3):
        res = mp.diff(lambda t: ode_wall(t, gamma), mp.mpf(x0), 2) \
            - 2 * gamma * mp.sin(2 * ode_wall(mp.mpf(x0), gamma))
        worst = max(worst, abs(res))
print("sup residual over samples:", mp.nstr(worst, 3))

print()
print("== strip energy of the y-independent wall profile ==")
# density: 1/2 theta'^2 through the bulk plus gamma sin^2 theta on the
# two horizontal edges
for gamma in (mp.mpf("0.25"), mp.mpf(1), mp.mpf(4)):
    def density(x, g=gamma):
        dth = mp.diff(lambda t: ode_wall(t, g), x)
        return dth**2 / 2 + 2 * g * mp.sin(ode_wall(x, g)) ** 2
    total = mp.quad(density, [-mp.inf, 0, mp.inf])
    print("gamma=%s  energy=%s  4*sqrt(gamma)=%s  diff=%s" % (
        mp.nstr(gamma, 5), mp.nstr(total, 17),
        mp.nstr(4 * mp.sqrt(gamma), 17),
        mp.nstr(total - 4 * mp.sqrt(gamma), 3)))

print()
print("== nonlocal line-equation residual of the vortex-pair profile ==")
# residual(x) = int_0^inf (2 th(x) - th(x-u) - th(x+u)) W(u) du
#               + gamma sin(2 th(x))
# for th = pi/2 - atan(2 gamma x), with W either the inverse-square
# weight 1/(pi u^2) (the profile is exact there) or the strip kernel.
# The residual is odd in x, so x >= 0 suffices.
#
# The symmetric difference cancels to O(u^2); computed naively it
# drowns in roundoff that the 1/u^2 weight then amplifies without
# bound at the quadrature nodes clustering at u = 0.  Below u_cut we
# therefore switch to the even-order Taylor series of atan, using
# d^n/dX^n atan(X) = (n-1)! cos^n(t) sin(n (t + pi/2)), t = atan(X).


def sym_diff(x, u, w):
    """2 th(x) - th(x-u) - th(x+u) = f(x+u) + f(x-u) - 2 f(x),
    f = atan(./w), stable down to u = 0."""
    rho = mp.sqrt(w * w + x * x)
    if u > rho / 10:
        f = lambda t: mp.atan(t / w)
        return f(x + u) + f(x - u) - 2 * f(x)
    t = mp.atan(x / w)
    c = mp.cos(t)
    total = mp.mpf(0)
    for n in (2, 4, 6, 8, 10):
        dn = mp.factorial(n - 1) * c**n * mp.sin(n * (t + mp.pi / 2)) / w**n
        total += dn * u**n / mp.factorial(n)
    return 2 * total


def line_residual(x, gamma, kernel):
    w = 1 / (2 * gamma)

    def integrand(u):
        wgt = 1 / (mp.pi * u**2) if kernel == "inverse_square" \
            else strip_kernel(u)
        return sym_diff(x, u, w) * wgt

    pts = {w / 4, w / 2, w, 2 * w, 4 * w, 8 * w,
           x / 2, x - 2 * w, x - w, x, x + w, x + 2 * w,
           2 * x, mp.mpf(1), mp.mpf(2), mp.mpf(5), mp.mpf(10)}
    pts = sorted(p for p in pts if p > 0)
    nl, err = mp.quad(integrand, [mp.mpf(0)] + pts + [mp.inf],
                      maxdegree=8, error=True)
    if err > mp.mpf("1e-10"):
        raise RuntimeError("quadrature did not converge")
    return nl + gamma * mp.sin(2 * (mp.pi / 2 - mp.atan(x / w)))


gamma = mp.mpf(10)
wall = 1 / (2 * gamma)
print("x/w     inverse_square      strip      strip/(2 gamma)")
sup_sq = sup_K = mp.mpf(0)
for s in (0.25, 0.5, 1, 2, 4, 8, 12, 16, 20, 24, 40):
    x0 = mp.mpf(s) * wall
    r_sq = line_residual(x0, gamma, "inverse_square")
    r_K = line_residual(x0, gamma, "strip")
    sup_sq = max(sup_sq, abs(r_sq))
    sup_K = max(sup_K, abs(r_K))
    print("%6s  %12s  %12s  %12s" % (
        mp.nstr(mp.mpf(s), 4), mp.nstr(r_sq, 5), mp.nstr(r_K, 5),
        mp.nstr(r_K / (2 * gamma), 5)))
print("sup over samples: inverse_square = %s (exact solution),"
      % mp.nstr(sup_sq, 3))
print("   strip = %s, strip/(2 gamma) = %s" % (
    mp.nstr(sup_K, 6), mp.nstr(sup_K / (2 * gamma), 6)))
print("anchors: r_strip(0.1) = %s   r_strip(0.8) = %s" % (
    mp.nstr(line_residual(mp.mpf("0.1"), gamma, "strip"), 12),
    mp.nstr(line_residual(mp.mpf("0.8"), gamma, "strip"), 12)))

print()
print("== quintic-step trace: frozen integrals (w=2) ==")
w = mp.mpf(2)


def step_trace(x):
    if x <= -w:
        return mp.pi
    if x >= w:
        return mp.mpf(0)
    t = (w - x) / (2 * w)
    return mp.pi * t**3 * (10 - 15 * t + 6 * t**2)


def step_trace_d(x):
    if abs(x) >= w:
        return mp.mpf(0)
    t = (w - x) / (2 * w)
    return -mp.pi * (30 * t**2 - 60 * t**3 + 30 * t**4) / (2 * w)


I_sin2 = mp.quad(lambda x: mp.sin(step_trace(x)) ** 2, [-w, 0, w])
I_dir = mp.quad(lambda x: step_trace_d(x) ** 2, [-w, 0, w])
print("int sin^2(trace) dx       =", mp.nstr(I_sin2, 17))
print("int trace'^2 dx           =", mp.nstr(I_dir, 17))
print("charge target 4*int sin^2 =", mp.nstr(4 * I_sin2, 17))


def pair_defect(u):
    """g(u) = int (trace(x) - trace(x-u))^2 dx for u > 0."""
    pts = sorted({-w, mp.mpf(0), w, u - w, u + w}, key=float)
    pts = [p for p in pts if -w <= p <= u + w]
    return mp.quad(lambda x: (step_trace(x) - step_trace(x - u)) ** 2, pts)


def nl_integrand(u):
    if u < mp.mpf("1e-7"):
        return I_dir / mp.pi
    return strip_kernel(u) * pair_defect(u)


F_nl, err = mp.quad(nl_integrand, [0, mp.mpf("0.5"), 1, 2, 4, 8, 16],
                    maxdegree=7, error=True)
F_nl /= 2
print("quarter-double-sum term   =", mp.nstr(F_nl, 17),
      " (err %s)" % mp.nstr(err, 2))
Fbar = F_nl + I_sin2
print("line energy at gamma=1    =", mp.nstr(Fbar, 17))
print("strip energy (2x)         =", mp.nstr(2 * Fbar, 17))
