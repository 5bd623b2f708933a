"""Independent brute-force oracle for frozen test fixtures.

Uses 60-digit decimal arithmetic for floors, sympy for primality and
fractions.Fraction for exact sums. Shares no code with the C++ library.
"""
import math
import sys
from decimal import Decimal, getcontext, ROUND_FLOOR
from fractions import Fraction
from sympy import isprime, primerange, factorint

getcontext().prec = 60
SQRT2 = Decimal(2).sqrt()
SQRT3 = Decimal(3).sqrt()
PHI = (1 + Decimal(5).sqrt()) / 2


def dfloor(v):
    return int(v.to_integral_value(rounding=ROUND_FLOOR))


def pi_star(alpha, beta, x, listing=False):
    pairs = []
    for p in primerange(2, x + 1):
        q = dfloor(alpha * p + beta)
        if q >= 2 and isprime(q):
            pairs.append((p, q))
    return pairs if listing else len(pairs)


def squarefree(d):
    return all(e == 1 for e in factorint(d).values())


def main_term(x, d):
    r = Fraction(x, d)
    for p in factorint(d):
        r *= Fraction(2 * p - 1, p)
    return r


def deviation(alpha, beta, x, dmax):
    floors = [dfloor(alpha * n + beta) for n in range(1, x + 1)]
    rows = []
    for d in range(1, dmax + 1):
        if not squarefree(d):
            continue
        c = sum(1 for n, f in zip(range(1, x + 1), floors) if (n * f) % d == 0)
        m = main_term(x, d)
        err = abs(c - m)
        rows.append((d, c, m, err, float(err * d / x)))
    return rows


def sifted(alpha, beta, x, z):
    P = 1
    for p in primerange(2, z):
        P *= p
    return sum(1 for n in range(1, x + 1)
               if math.gcd(n * dfloor(alpha * n + beta), P) == 1)


def integral_exact(x, c1, c2, beta):
    total = Fraction(0)
    for p in primerange(2, x + 1):
        lo_q = math.floor(c1 * p + beta - 1)
        for q in range(max(lo_q, 2), math.floor(c2 * p + beta) + 1):
            if not (c1 * p + beta - 1 < q <= c2 * p + beta) or not isprime(q):
                continue
            lo = max(Fraction(q) - beta, Fraction(c1 * p)) / p
            hi = min(Fraction(q + 1) - beta, Fraction(c2 * p)) / p
            if hi > lo:
                total += hi - lo
    return total


if __name__ == "__main__":
    what = sys.argv[1]
    if what == "pairs":
        print("pi*(sqrt2,0,2) =", pi_star(SQRT2, 0, 2))
        print("pairs(sqrt2,0,100) =", pi_star(SQRT2, 0, 100, True))
        print("pi*(sqrt2,0,100) =", pi_star(SQRT2, 0, 100))
        print("pi*(sqrt2,0,1e4) =", pi_star(SQRT2, 0, 10**4))
        print("pi*(phi,0,1e4) =", pi_star(PHI, 0, 10**4))
        print("pi*(sqrt3,1/2,1e4) =", pi_star(SQRT3, Decimal(1) / 2, 10**4))
        print("pi*(sqrt2,0,1e6) =", pi_star(SQRT2, 0, 10**6))
    elif what == "lemma2":
        print("count(sqrt2,0,x=20,d=2) =",
              sum(1 for n in range(1, 21) if (n * dfloor(SQRT2 * n)) % 2 == 0))
        for x in (10**4, 10**5, 10**6):
            rows = deviation(SQRT2, 0, x, 50)
            print("sqrt2 x=%d maxnorm=%.6f d2=%s" % (x, max(r[4] for r in rows),
                  [r for r in rows if r[0] == 2][0][:2]))
    elif what == "phi_table":
        print("d,count,main_term_num,main_term_den,abs_error_num,abs_error_den")
        for d, c, m, e, _ in deviation(PHI, 0, 10**6, 50):
            print("%d,%d,%d,%d,%d,%d" % (d, c, m.numerator, m.denominator,
                                         e.numerator, e.denominator))
    elif what == "sieve":
        print("sifted(sqrt2,0,1e3,z=5) =", sifted(SQRT2, 0, 1000, 5))
        print("sifted(sqrt2,0,1e3,z=7) =", sifted(SQRT2, 0, 1000, 7))
        print("sifted(sqrt2,0,1e3,z=11) =", sifted(SQRT2, 0, 1000, 11))
    elif what == "counts":
        def count(alpha, beta, x, d):
            return sum(1 for n in range(1, x + 1) if (n * dfloor(alpha * n + beta)) % d == 0)
        half = Decimal(1) / 2
        print("count(sqrt3,1/2,1e4,30) =", count(SQRT3, half, 10**4, 30))
        print("count(phi,0,1e3,6) =", count(PHI, 0, 10**3, 6))
        print("count(7/5,1/2,1e3,21) =", count(Decimal(7) / 5, half, 10**3, 21))
        print("count(sqrt2,0,1e4,29) =", count(SQRT2, 0, 10**4, 29))
        print("sifted(phi,0,1e4,z=10) =", sifted(PHI, 0, 10**4, 10))
        print("sifted(sqrt2,1/2,1e4,z=20) =", sifted(SQRT2, half, 10**4, 20))
        print("isprime:", [(n, isprime(n)) for n in (2**61 - 1, 561, 3215031751, 2**64 - 59,
                                                   1000000007, 999999999999999989, 4759123141)])
    elif what == "integral":
        print("I(x=2) =", integral_exact(2, 1, 2, 0))
        v = integral_exact(1000, 1, 2, 0)
        print("I(x=1e3) =", v.numerator, "/", v.denominator, float(v))
        v = integral_exact(1000, 1, 2, Fraction(1, 2))
        print("I(x=1e3,beta=1/2) =", v.numerator, "/", v.denominator, float(v))
