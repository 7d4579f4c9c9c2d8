#!/usr/bin/env python3
"""Independent reference computations used to freeze expected values in the
C++ unit tests. Nothing here shares code with the library: digits come from
exact rational / quadratic-field arithmetic, languages from brute-force
suffix comparison, measures from explicit enumeration or transfer matrices.

Run: python3 tests/oracle/oracle.py
"""
from fractions import Fraction
from itertools import product
import math


# --- exact digit expansion -------------------------------------------------

def digits_rational(beta: Fraction, n: int):
    r, out = Fraction(1), []
    for _ in range(n):
        t = beta * r
        c = math.ceil(t) - 1
        out.append(c)
        r = t - c
    return out


class QSqrt5:
    """a + b*phi with phi^2 = phi + 1, exact."""

    def __init__(self, a, b):
        self.a, self.b = Fraction(a), Fraction(b)

    def times_phi(self):
        return QSqrt5(self.b, self.a + self.b)

    def minus(self, k):
        return QSqrt5(self.a - k, self.b)

    def value(self):
        phi = (1 + math.sqrt(5)) / 2
        return float(self.a) + float(self.b) * phi

    def is_integer(self):
        return self.b == 0 and self.a.denominator == 1


def ceil_qsqrt5(t: QSqrt5):
    if t.is_integer():
        return int(t.a)
    return math.floor(t.value()) + 1


def digits_golden(n):
    r, out = QSqrt5(1, 0), []
    for _ in range(n):
        t = r.times_phi()
        c = ceil_qsqrt5(t) - 1
        out.append(c)
        r = t.minus(c)
    return out


# --- brute-force language --------------------------------------------------

def admissible(w, c):
    for i in range(len(w)):
        s = w[i:]
        if tuple(s) > tuple(c[: len(s)]):
            return False
    return True


def s_len(w, c):
    for i in range(len(w)):
        s = w[i:]
        if tuple(s) == tuple(c[: len(s)]):
            return len(s)
    return 0


def words(n, c):
    b = c[0] + 1
    return [w for w in product(range(b), repeat=n) if admissible(w, c)]


def main():
    gold = digits_golden(40)
    five_halves = digits_rational(Fraction(5, 2), 40)
    print("golden digits", gold[:20])
    print("5/2 digits", five_halves[:20])
    print("golden counts", [len(words(n, gold)) for n in range(15)])
    print("5/2 counts", [len(words(n, five_halves)) for n in range(11)])
    print("golden L3", ["".join(map(str, w)) for w in words(3, gold)])
    print("golden state 010", s_len((0, 1, 0), gold), "00", s_len((0, 0), gold))
    # restricted partition (state zero) at n = 3, golden
    print("golden Xi0 n=3", sum(1 for w in words(3, gold) if s_len(w, gold) == 0))
    # kernel two-point example
    e = math.e
    print("kernel weights", 1 / (1 + e), e / (1 + e))
    # hat multiplicities
    for name, c in (("golden", gold), ("5/2", five_halves)):
        mult = []
        for n in (8, 12):
            img = {}
            for w in words(n, c):
                k = s_len(w, c)
                if k == 0:
                    h = w
                else:
                    v, u = list(w[: len(w) - k]), list(w[len(w) - k:])
                    j = max(i for i, a in enumerate(u) if a != 0)
                    u[j] -= 1
                    h = tuple(v + u)
                img[h] = img.get(h, 0) + 1
            mult.append(max(img.values()))
        print(name, "hat multiplicity n=8,12", mult)
    # Parry measure of golden mean shift
    phi = (1 + math.sqrt(5)) / 2
    print("parry nu[1]", 1 / (1 + phi * phi), "log phi", math.log(phi))
    # finite-volume pressure f = 0 for golden from Fibonacci numbers
    fib = [0, 1]
    while len(fib) < 40:
        fib.append(fib[-1] + fib[-2])
    print("golden P_[-12,12](0)", math.log(fib[27]) / 25)
    # single-site partition function, golden, f = coord:0 on a singleton
    print("golden logXi singleton coord0", math.log(1 + e))


if __name__ == "__main__":
    main()
