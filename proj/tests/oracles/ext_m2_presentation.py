#!/usr/bin/env python3
"""Monomial basis of M2[h0,h1,alpha,beta]/(h0 h1, tau h1^3, h1 alpha, alpha^2 = h0^2 beta).

Writes s, t, w, dim for every nonzero cell with s <= smax, t <= tmax, w >= wmin.
"""
import argparse
import collections
import sys

TAU = (0, 0, -1)
H0 = (1, 1, 0)
H1 = (1, 2, 1)
ALPHA = (3, 7, 2)
BETA = (4, 12, 4)


def scale(d, n):
    return tuple(n * x for x in d)


def add(*ds):
    return tuple(sum(x) for x in zip(*ds))


def monomials(smax, tmax):
    # beta^e times one of: h0^a, h1^b (b >= 1), alpha h0^a; tau^k on top
    for e in range(smax // 4 + 1):
        for a in range(smax + 1):
            yield add(scale(BETA, e), scale(H0, a)), True
            yield add(scale(BETA, e), ALPHA, scale(H0, a)), True
        for b in range(1, smax + 1):
            yield add(scale(BETA, e), scale(H1, b)), b < 3


def table(smax, tmax, wmin):
    dims = collections.Counter()
    for (s, t, w), tau_free in monomials(smax, tmax):
        if s > smax or t > tmax:
            continue
        k = 0
        while w - k >= wmin:
            dims[(s, t, w - k)] += 1
            if not tau_free:
                break
            k += 1
    return dims


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--smax", type=int, default=8)
    p.add_argument("--tmax", type=int, default=20)
    p.add_argument("--wmin", type=int, default=-4)
    args = p.parse_args()
    out = sys.stdout
    out.write("s\tt\tw\tdim\n")
    for (s, t, w), d in sorted(table(args.smax, args.tmax, args.wmin).items()):
        out.write(f"{s}\t{t}\t{w}\t{d}\n")


if __name__ == "__main__":
    main()
