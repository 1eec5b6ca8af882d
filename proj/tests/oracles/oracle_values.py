"""Independent reference values for the C++ unit tests.

Uses mpmath (arbitrary precision quadrature and Bessel functions) and a
2^20-point trapezoid sum; nothing here calls into the library under test.
Run: python3 tests/oracles/oracle_values.py
"""
import math

import mpmath as mp

mp.mp.dps = 30
PI = mp.pi


def vm(kappa):
    return lambda x: mp.exp(kappa * mp.cos(x)) / (2 * PI * mp.besseli(0, kappa))


def vm_score(kappa):
    return lambda x: kappa * mp.sin(x)


def cardioid(ell):
    return lambda x: (1 + ell * mp.cos(x)) / (2 * PI)


def cardioid_score(ell):
    return lambda x: ell * mp.sin(x) / (1 + ell * mp.cos(x))


def wc(rho):
    return lambda x: (1 - rho**2) / (2 * PI) / (1 + rho**2 - 2 * rho * mp.cos(x))


def wc_score(rho):
    return lambda x: 2 * rho * mp.sin(x) / (1 + rho**2 - 2 * rho * mp.cos(x))


def integrate(f):
    return mp.quad(f, mp.linspace(-PI, PI, 9))


def trapezoid(f, points=2**20):
    h = 2 * math.pi / points
    return h * math.fsum(f(-math.pi + i * h) for i in range(points))


def fisher(f, phi, k):
    g11 = integrate(lambda x: phi(x) ** 2 * f(x))
    g12 = integrate(lambda x: mp.sin(k * x) * phi(x) * f(x))
    g22 = integrate(lambda x: mp.sin(k * x) ** 2 * f(x))
    return g11, g12, g22


def norm_cdf(x):
    return mp.ncdf(x)


def local_power(g22, c, tau, alpha):
    z = -mp.sqrt(2) * mp.erfinv(2 * (alpha / 2) - 1)  # upper alpha/2 quantile
    shift = c * tau / mp.sqrt(g22)
    return 1 - norm_cdf(z - shift) + norm_cdf(-z - shift)


def main():
    print("vm1 pdf(0)            =", mp.nstr(vm(1)(0), 20))
    f = vm(1)
    print("vm1 trapezoid 2^20    =", repr(trapezoid(lambda x: math.exp(math.cos(x)) / (2 * math.pi * float(mp.besseli(0, 1))))))

    g = fisher(vm(1), vm_score(1), 2)
    print("vm1 k=2 g22           =", mp.nstr(g[2], 20),
          " closed form:", mp.nstr((1 - mp.besseli(4, 1) / mp.besseli(0, 1)) / 2, 20))
    c21 = integrate(lambda x: mp.sin(2 * x) * mp.sin(x) * f(x))
    c23 = integrate(lambda x: mp.sin(2 * x) * mp.sin(3 * x) * f(x))
    fv = lambda x: math.exp(math.cos(x)) / (2 * math.pi * float(mp.besseli(0, 1)))
    print("vm1 C(2,1)            =", mp.nstr(c21, 20),
          " trapezoid:", repr(trapezoid(lambda x: math.sin(2 * x) * math.sin(x) * fv(x))))
    print("vm1 C(2,3)            =", mp.nstr(c23, 20))
    for kp, c in ((1, c21), (2, g[2]), (3, c23)):
        for tau in (1, 2, 3):
            print(f"local_power vm1 k=2 k'={kp} tau={tau} =", mp.nstr(local_power(g[2], c, tau, 0.05), 16))

    for kappa in (0.5, 1, 2, 10):
        g = fisher(vm(kappa), vm_score(kappa), 1)
        print(f"vm{kappa} k=1 gap        =", mp.nstr((g[0] * g[2] - g[1] ** 2) / (g[0] * g[2]), 5))
    for k in (2, 3):
        g = fisher(vm(1), vm_score(1), k)
        print(f"vm1 k={k} g=", [mp.nstr(v, 16) for v in g], "gap", mp.nstr((g[0] * g[2] - g[1] ** 2) / (g[0] * g[2]), 16))
    g = fisher(wc(0.5), wc_score(0.5), 1)
    print("wc0.5 k=1 g=", [mp.nstr(v, 16) for v in g], "gap", mp.nstr((g[0] * g[2] - g[1] ** 2) / (g[0] * g[2]), 16))
    g = fisher(cardioid(0.5), cardioid_score(0.5), 1)
    print("ca0.5 k=1 g=", [mp.nstr(v, 16) for v in g], "gap", mp.nstr((g[0] * g[2] - g[1] ** 2) / (g[0] * g[2]), 16))
    g = fisher(cardioid(0.5), cardioid_score(0.5), 2)
    ecs = mp.sin(mp.pi / 2) - g[1] / g[0] * cardioid_score(0.5)(PI / 4)
    print("ca0.5 k=2 g=", [mp.nstr(v, 16) for v in g], "ecs(theta+pi/4, n=1) =", mp.nstr(ecs, 16))

    print("wc0.5 E[cos X]        =", mp.nstr(integrate(lambda x: mp.cos(x) * wc(0.5)(x)), 16))
    print("vm10 P(|X|>pi/2)      =", mp.nstr(2 * mp.quad(vm(10), [PI / 2, PI]), 16))
    g = fisher(vm(1), vm_score(1), 1)
    print("vm1 k=1 g22 (0.6*g22) =", mp.nstr(g[2], 16), mp.nstr(0.6 * g[2], 16))


if __name__ == "__main__":
    main()
