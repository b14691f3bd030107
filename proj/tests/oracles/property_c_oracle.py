#!/usr/bin/env python3
"""High-precision reference values for the property_c tests.

Independent of the C++ code: the Dirichlet-seed derivatives are written in
closed form and all linear algebra runs in mpmath at 60 significant digits.

1. Completeness residual for target x(1-x), a1 = a2 = 1, 40 log-spaced
   lambdas in [0.25, 25], 2049-point grid. For a = 1 the seed is
   v = sinh(sqrt(l) x) / sqrt(l), so each column is cosh(sqrt(l) x)^2 scaled
   to unit max-norm. Residuals use the discrete L2 norm sqrt(dx * sum y^2).

2. J(1) = int_0^1 p v2' psi' dx for a1 = 1, a2 = 1 + x, p = -x.
   psi' = cosh(x). For a2, with s = 1 + x, s v'' + v' - l v = 0 has
   v = A I0(2 sqrt(l s)) + B K0(2 sqrt(l s)); v(s=1) = 0 and (a v')(0) = 1
   fix A and B, and v'(x) = sqrt(l / s) (A I1 - B K1)(2 sqrt(l s)).

Run: python3 tests/oracles/property_c_oracle.py
"""
import mpmath as mp

mp.mp.dps = 60


def log_spaced(lo, hi, n):
    step = mp.log(mp.mpf(hi) / lo) / (n - 1)
    out = [mp.mpf(lo) * mp.exp(step * i) for i in range(n)]
    out[-1] = mp.mpf(hi)
    return out


def residual_curve(points=2049, count=40):
    xs = [mp.mpf(i) / (points - 1) for i in range(points)]
    target = [x * (1 - x) for x in xs]
    weight = mp.sqrt(mp.mpf(1) / (points - 1))
    basis = []
    r = list(target)
    curve = []
    for lam in log_spaced(0.25, 25, count):
        k = mp.sqrt(lam)
        col = [mp.cosh(k * x) ** 2 for x in xs]
        scale = max(abs(c) for c in col)
        q = [c / scale for c in col]
        for _ in range(2):
            for e in basis:
                d = mp.fsum(ei * qi for ei, qi in zip(e, q))
                q = [qi - d * ei for qi, ei in zip(q, e)]
        nrm = mp.sqrt(mp.fsum(qi * qi for qi in q))
        q = [qi / nrm for qi in q]
        d = mp.fsum(qi * ri for qi, ri in zip(q, r))
        r = [ri - d * qi for ri, qi in zip(r, q)]
        basis.append(q)
        curve.append(weight * mp.sqrt(mp.fsum(ri * ri for ri in r)))
    return weight * mp.sqrt(mp.fsum(t * t for t in target)), curve


def orthogonality_value(lam=1):
    lam = mp.mpf(lam)
    z1 = 2 * mp.sqrt(lam)
    # A I0(z1) + B K0(z1) = 0 ; sqrt(lam) (A I1(z1) - B K1(z1)) = 1
    m = mp.matrix([[mp.besseli(0, z1), mp.besselk(0, z1)],
                   [mp.sqrt(lam) * mp.besseli(1, z1), -mp.sqrt(lam) * mp.besselk(1, z1)]])
    A, B = mp.lu_solve(m, mp.matrix([0, 1]))

    def dv2(x):
        s = 1 + x
        z = 2 * mp.sqrt(lam * s)
        return mp.sqrt(lam / s) * (A * mp.besseli(1, z) - B * mp.besselk(1, z))

    def dpsi(x):
        return mp.cosh(mp.sqrt(lam) * x)

    return mp.quad(lambda x: -x * dv2(x) * dpsi(x), [0, 1])


if __name__ == "__main__":
    print("J(1) =", mp.nstr(orthogonality_value(1), 20))
    norm, curve = residual_curve()
    print("target norm =", mp.nstr(norm, 20))
    for n, r in enumerate(curve, 1):
        print(f"r_{n} = {mp.nstr(r, 12)}")
