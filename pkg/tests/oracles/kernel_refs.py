"""High-precision reference values for the kernels and Fourier symbols.

Run directly to regenerate the constants frozen in tests/_refs.py.
Nothing here imports the package under test.
"""

import mpmath as mp

mp.mp.dps = 30


def kernel(x):
    return mp.pi * mp.cosh(mp.pi * x) / mp.sinh(mp.pi * x) ** 2


def kernel_reg(x, eps):
    num = 2 * mp.pi * mp.cos(mp.pi * eps) * mp.cosh(mp.pi * x) \
        * (mp.cos(2 * mp.pi * eps) + mp.cosh(2 * mp.pi * x) - 2)
    return num / (mp.cos(2 * mp.pi * eps) - mp.cosh(2 * mp.pi * x)) ** 2


def symbol(k):
    return -k * mp.tanh(k / 2)


def symbol_reg(k, eps):
    return k * (mp.sinh(k * eps) - mp.tanh(k / 2) * mp.cosh(k * eps))


def poisson(x, y):
    return 2 * mp.cosh(mp.pi * x) * mp.sin(mp.pi * y) \
        / (mp.cosh(2 * mp.pi * x) - mp.cos(2 * mp.pi * y))


print("== pointwise kernel and symbol values ==")
print("K(1)           =", mp.nstr(kernel(mp.mpf(1)), 17))
print("K(0.5)         =", mp.nstr(kernel(mp.mpf("0.5")), 17))
print("K(2)           =", mp.nstr(kernel(mp.mpf(2)), 17))
print("x^2 K - 1/pi at x=1e-4:",
      mp.nstr(mp.mpf("1e-8") * kernel(mp.mpf("1e-4")) - 1 / mp.pi, 3))
print("Khat(2)        =", mp.nstr(symbol(mp.mpf(2)), 17))
print("K_eps(1,1e-6)-K(1):",
      mp.nstr(kernel_reg(mp.mpf(1), mp.mpf("1e-6")) - kernel(mp.mpf(1)), 3))
print("K_eps(0.7,0.1) =", mp.nstr(kernel_reg(mp.mpf("0.7"), mp.mpf("0.1")), 17))
print("K_eps(0,0.1)   =", mp.nstr(kernel_reg(mp.mpf(0), mp.mpf("0.1")), 17))
print("  closed form 2 pi cos(pi eps)/(cos(2 pi eps) - 1):",
      mp.nstr(2 * mp.pi * mp.cos(mp.pi / 10)
              / (mp.cos(mp.pi / 5) - 1), 17))

print()
print("== bound |K_eps| <= K and symbol ordering ==")
worst_ratio = mp.mpf(0)
for eps in ("0.05", "0.1", "0.25", "0.4"):
    for xs in (0.05, 0.2, 0.5, 1, 2, 3):
        r = abs(kernel_reg(mp.mpf(xs), mp.mpf(eps))) / kernel(mp.mpf(xs))
        worst_ratio = max(worst_ratio, r)
print("max |K_eps|/K over grid:", mp.nstr(worst_ratio, 6))
worst_hi = mp.mpf("-inf")
worst_lo = mp.mpf("inf")
for eps in ("0.05", "0.1", "0.25", "0.4"):
    for ks in (0.1, 0.5, 1, 2, 5, 10, 20):
        se = symbol_reg(mp.mpf(ks), mp.mpf(eps))
        worst_hi = max(worst_hi, se)          # must stay < 0
        worst_lo = min(worst_lo, se - symbol(mp.mpf(ks)))  # must stay >= 0
print("max K_eps-hat over grid (must be < 0):  ", mp.nstr(worst_hi, 4))
print("min (K_eps-hat - K-hat) (must be >= 0): ", mp.nstr(worst_lo, 4))

print()
print("== transform convention: (1/pi) int_0^inf Khat_eps cos(kx) dk ==")
for xs, eps in (("0.3", "0.1"), ("1.0", "0.1"), ("0.6", "0.25")):
    x0, e0 = mp.mpf(xs), mp.mpf(eps)
    back = mp.quad(lambda k: symbol_reg(k, e0) * mp.cos(k * x0),
                   [0, 1, 5, 20, mp.inf]) / mp.pi
    print("x=%s eps=%s: inverse-transform - closed form = %s" % (
        xs, eps, mp.nstr(back - kernel_reg(x0, e0), 3)))

print()
print("== Poisson kernel ==")
print("P(0, 1/2)      =", mp.nstr(poisson(mp.mpf(0), mp.mpf("0.5")), 17))
for ys in ("0.1", "0.5"):
    y0 = mp.mpf(ys)
    mass = mp.quad(lambda x: poisson(x, y0), [-mp.inf, -1, 0, 1, mp.inf])
    print("mass at y=%s: 1 - int P dx = %s" % (ys, mp.nstr(1 - mass, 3)))
# primitive: int_{-inf}^{x} P(s,y) ds = 1/2 + atan(sinh(pi x)/sin(pi y))/pi
for xs, ys in (("0.3", "0.25"), ("-1.2", "0.7")):
    x0, y0 = mp.mpf(xs), mp.mpf(ys)
    cdf = mp.quad(lambda s: poisson(s, y0), [-mp.inf, -2, 0, x0])
    closed = mp.mpf("0.5") + mp.atan(mp.sinh(mp.pi * x0)
                                     / mp.sin(mp.pi * y0)) / mp.pi
    print("x=%s y=%s: quadrature - closed primitive = %s" % (
        xs, ys, mp.nstr(cdf - closed, 3)))
# x-transform at fixed depth: int P(x,y) e^{-ikx} dx
for ks, ys in ((2, "0.2"), (5, "0.35")):
    k0, y0 = mp.mpf(ks), mp.mpf(ys)
    hat = mp.quad(lambda x: poisson(x, y0) * mp.cos(k0 * x),
                  [-mp.inf, 0, mp.inf])
    mult = mp.cosh(k0 * (mp.mpf("0.5") - y0)) / mp.cosh(k0 / 2)
    print("k=%s y=%s: transform - cosh multiplier = %s" % (
        ks, ys, mp.nstr(hat - mult, 3)))
