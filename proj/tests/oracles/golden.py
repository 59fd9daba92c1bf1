#!/usr/bin/env python3
"""Independent big-integer oracle for the golden constants frozen into the C++ tests.

Uses only Python integers (schoolbook arithmetic, extended Euclid, affine
curve formulas), never the library under test. Run it to regenerate values:

    python3 tests/oracles/golden.py
    python3 tests/oracles/golden.py --multiples tests/oracles/base_multiples.inc
"""

import argparse

P = 2**255 - 19
Q = 2**252 + 27742317777372353535851937790883648493
D = 37095705934669439343138083508754565189542113879843219016388785533085940283555
X0 = 15112221349535400772501151409588531511454012693041857206046113283949847762202
Y0 = 46316835694926478169428394003475163141307993866256225615783033603165251855960

# fixed odd 1024-bit modulus used by the mod_pow golden value
M1024 = 2**1024 - 105


def egcd_inv(a, m):
    r0, r1, s0, s1 = m, a % m, 0, 1
    while r1:
        qt = r0 // r1
        r0, r1 = r1, r0 - qt * r1
        s0, s1 = s1, s0 - qt * s1
    assert r0 == 1
    return s0 % m


def on_curve(x, y):
    return (-x * x + y * y - 1 - D * x * x * y * y) % P == 0


def affine_add(p1, p2):
    (x1, y1), (x2, y2) = p1, p2
    t = D * x1 * x2 * y1 * y2 % P
    x3 = (x1 * y2 + y1 * x2) * egcd_inv((1 + t) % P, P) % P
    y3 = (y1 * y2 + x1 * x2) * egcd_inv((1 - t) % P, P) % P
    return x3, y3


def affine_double(pt):
    x, y = pt
    x3 = 2 * x * y * egcd_inv((-x * x + y * y) % P, P) % P
    y3 = (y * y + x * x) * egcd_inv((2 - (-x * x + y * y)) % P, P) % P
    return x3, y3


def affine_mul(k, pt):
    acc = (0, 1)
    for _ in range(k):
        acc = affine_add(acc, pt)
    return acc


def hx(v, width=64):
    return format(v, "0{}x".format(width))


def main():
    assert on_curve(X0, Y0)
    assert not on_curve(X0, Y0 + 1)
    print("fe_mul(x0, y0)      =", hx(X0 * Y0 % P))
    print("x0 hex              =", hx(X0))
    print("y0 hex              =", hx(Y0))
    dx, dy = affine_double((X0, Y0))
    print("2B.x                =", hx(dx))
    print("2B.y                =", hx(dy))
    assert affine_add((X0, Y0), (X0, Y0)) == (dx, dy)
    fx, fy = affine_mul(5, (X0, Y0))
    print("5B.x                =", hx(fx))
    print("5B.y                =", hx(fy))
    acc = 1
    for _ in range(200):
        acc = acc * 3 % M1024
    print("3^200 mod (2^1024-105) =", hx(acc, 256))
    print("inv(12345) mod p    =", hx(egcd_inv(12345, P)))
    # full-width exponent; square-and-multiply written out independently
    base, exp, r = 7, M1024 - 2, 1
    for bit in bin(exp)[2:]:
        r = r * r % M1024
        if bit == "1":
            r = r * base % M1024
    assert r == pow(7, M1024 - 2, M1024)
    print("7^(m-2) mod m       =", hx(r, 256))


def write_multiples(path, count=257):
    acc = (0, 1)
    lines = ["// kB for k = 1..{} as affine (x, y), generated by golden.py".format(count)]
    for _ in range(count):
        acc = affine_add(acc, (X0, Y0))
        lines.append('{{"{}", "{}"}},'.format(hx(acc[0]), hx(acc[1])))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--multiples", metavar="PATH")
    args = ap.parse_args()
    if args.multiples:
        write_multiples(args.multiples)
    else:
        main()
