"""Smoke test for the compiled `greenring` extension module.

Build and run:

    cargo build -p greenring-py --release
    cp target/release/libgreenring.so python/greenring.so
    python3 python/smoke_test.py
"""

import math
import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import greenring as g  # noqa: E402


def check(name, ok, detail=""):
    print(f"{'ok  ' if ok else 'FAIL'} {name} {detail}")
    return ok


def fusion_rule(p, i, j):
    lo = abs(i - j) + 1
    hi = min(i + j - 1, 2 * p - i - j - 1)
    return [(k, 1) for k in range(lo, hi + 1, 2)]


def main():
    results = []

    results.append(check("ssmul u99 u53", g.ssmul(2, 7, 99, 53) == [(87, 1)]))
    results.append(check("factorize u1023", g.factorize(5, 5, 1023) == (3, [4, 0, 1, 1])))
    results.append(check("reconstruct", g.reconstruct(2, 7, 1, [0, 1, 1, 1, 1, 1]) == 87))

    fuse_ok = all(
        g.fuse(p, i, j) == fusion_rule(p, i, j)
        for p in (5, 7, 11)
        for i in range(1, p)
        for j in range(1, p)
    )
    results.append(check("fusion rule", fuse_ok))

    d = [dn for _, dn, _ in g.dn_sequence(5, [(2, 1)], 10)]
    fib = [1, 2]
    while len(fib) < 10:
        fib.append(fib[-1] + fib[-2])
    results.append(check("Fibonacci dimensions", d == fib, str(d)))

    value, err = g.delta(7, [(2, 1)])
    results.append(check("delta(L2) in Ver7", abs(value - 2 * math.cos(math.pi / 7)) <= err + 1e-15))

    k3 = g.kp_table(3)
    results.append(check("K3 X1^2", k3[1][1] == [(0, 1), (1, 1), (2, 1)]))

    jt = g.jordan_type(3, 4, 5)
    results.append(check("Jordan J4 x J5 mod 3", sum(jt) == 20 and jt == sorted(jt), str(jt)))

    results.append(check("E7 at 23", g.g_decomp("E7", 23) == [3, 15]))
    results.append(check("gauss_d", [g.gauss_d(r) for r in range(5, 18, 2)] == [0, 1, 1, 1, 2, 2, 2]))

    exact, ln = g.dns("A1", "L1", 10, 0.0)
    results.append(check("A1 d_10", Fraction(exact) == math.comb(10, 5), exact))
    exact, _ = g.dns("G2", "7-dim", 5, 1.0)
    results.append(check("G2 s=1 counts dimension", Fraction(exact) == 7**5))
    results.append(check("C_L1(0)", abs(g.cvs("A1", "L1", 0.0) - math.sqrt(2 / math.pi)) < 1e-12))

    exact, value = g.group_cn("D4", "0,0,0,0,1", 2)
    results.append(check("D4 c_2", Fraction(exact) == 1 and value == 1.0))

    try:
        g.fuse(4, 1, 1)
        results.append(check("non-prime raises", False))
    except ValueError:
        results.append(check("non-prime raises", True))

    failed = results.count(False)
    print(f"{len(results) - failed}/{len(results)} passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
