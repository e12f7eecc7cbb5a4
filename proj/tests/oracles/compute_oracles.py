"""Independent high-precision oracles for frozen test values.

Run with: python3 tests/oracles/compute_oracles.py
Values printed here are pasted into the C++ tests.
"""
import mpmath as mp

mp.mp.dps = 40


def sound(A, B, n, al, r):
    return mp.sqrt(A * n * r ** (n - 1) + al * B * r ** (-al - 1))


def jump(A, B, n, al, a, b):
    return mp.quad(lambda r: sound(A, B, n, al, r) / r, [a, b])


def hugoniot(A, B, n, al, a, b):
    P = lambda r: A * r ** n - B * r ** (-al)
    return (a - b) * (P(a) - P(b)) / (a * b)


# rarefaction_u(A=1,B=1,n=2,alpha=.5, One, from=(1,0), rho=0.5)
print("rarefaction_u R1 (1,1,2,.5) (1,0)->0.5:", mp.nstr(jump(1, 1, 2, 0.5, 0.5, 1), 20))

# symmetric S1S2, A=B=0.1, n=2, alpha=.5: sqrt(Q(rho,1)) = 1
A, B, n, al = mp.mpf("0.1"), mp.mpf("0.1"), 2, mp.mpf("0.5")
r = mp.findroot(lambda x: hugoniot(A, B, n, al, x, 1) - 1, 3)
print("S1S2 rho*:", mp.nstr(r, 20))
# sigma1 = u- + rho*(u*-u-)/(rho*-rho-)
print("S1S2 sigma1:", mp.nstr(1 + r * (0 - 1) / (r - 1), 20))

# symmetric R1R2 left=(1,0) right=(1,5): J(rho*,1) = 2.5
r = mp.findroot(lambda x: jump(A, B, n, al, x, 1) - mp.mpf("2.5"), 0.05)
print("R1R2 rho*:", mp.nstr(r, 20))

# ECG R1S2 FV problem: A=.5,B=.5,n=2,alpha=.5, left=(2,0), right=(1,0)
A, B, n, al = mp.mpf("0.5"), mp.mpf("0.5"), 2, mp.mpf("0.5")
f = lambda x: (0 + jump(A, B, n, al, x, 2)) - (0 + mp.sqrt(hugoniot(A, B, n, al, x, 1)))
r = mp.findroot(f, 1.4)
print("R1S2 rho*:", mp.nstr(r, 20), "u*:", mp.nstr(jump(A, B, n, al, r, 2), 20))

# GCG asymmetric region V (2,1),(1,-1), B=0.001, alpha=1
B, al = mp.mpf("0.001"), 1
rm, um, rp, up = 2, 1, 1, -1
w = mp.sqrt(rp * rm * ((up - um) ** 2 - (mp.mpf(1) / rp - mp.mpf(1) / rm) * (B / rp ** al - B / rm ** al)))
s = (rp * up - rm * um + w) / (rp - rm)
print("GCG delta sigmaB:", mp.nstr(s, 20), "w:", mp.nstr(w, 20))

# threshold A0 for (1,1) vs (2,-1), B=0.01, alpha=1, n=2
B, al, n = mp.mpf("0.01"), 1, 2
rm, um, rp, up = 1, 1, 2, -1
A0 = rp * rm / ((rp - rm) * (rp ** n - rm ** n)) * ((up - um) ** 2 - B * (mp.mpf(1) / rp - mp.mpf(1) / rm) * (mp.mpf(1) / rp ** al - mp.mpf(1) / rm ** al))
print("A0:", mp.nstr(A0, 20))
