"""
Jantzen levels of a rational matrix family
==========================================

Take a family of Gram matrices $L(t)$ with rational-function entries,
regular at $t = t_0$ in the sense that every entry is finite there, and
read off the Jantzen filtration: which part of the space degenerates to
which order, and what signature each layer carries.  All arithmetic is in
$\\mathbb{Q}(t)$.
"""

from fractions import Fraction

from sigzero import (
    RatFn,
    frac_str,
    jantzen_levels,
    level_signatures,
    oracle_signature,
    sl2_intertwining,
)


def vec(v):
    return "(" + ", ".join(frac_str(x) for x in v) + ")"

##############################################################################
# A small planted example
# -----------------------
#
# Start from a diagonal family with orders 0, 1, 2 at $t_0 = 1$ and mix it
# with unimodular row and column operations; the filtration must recover
# the planted orders whatever the mixing.

t = RatFn((0, 1))
one = RatFn((1,))
tm1 = RatFn((-1, 1))

L = [
    [one, RatFn((0,)), RatFn((0,))],
    [RatFn((0,)), tm1, RatFn((0,))],
    [RatFn((0,)), RatFn((0,)), tm1 * tm1],
]
# mix: row_2 += t row_0, then col_2 += t col_0
for k in range(3):
    L[2][k] = L[2][k] + t * L[0][k]
for k in range(3):
    L[k][2] = L[k][2] + t * L[k][0]

print("levels of the mixed family at t0 = 1:")
for r, dim, basis in jantzen_levels(L, 1):
    print("  order %d  dim %d  basis %s"
          % (r, dim, " ".join(vec(v) for v in basis)))
print("D = sum r dim =", sum(r * d for r, d, _ in jantzen_levels(L, 1)))

##############################################################################
# The family above is symmetric, so each layer also carries a signature:
# the residual form on the order-r layer, evaluated at t_0, diagonalized
# over W.

print("\nlayer signatures:")
for r, sig in level_signatures(L, 1):
    print("  order %d  signature %s" % (r, sig))

##############################################################################
# The intertwining family
# -----------------------
#
# The same machinery applied K-type by K-type to the spherical
# intertwining family of SL(2,R) reads the deformed signatures straight
# off the closed-form c-functions.  At the wall nu = 3 the K-types
# |n| >= 4 vanish to order one; the limit from below flips their sign.

fam = sl2_intertwining(1, 6)
print("\nintertwining diagonal at the wall nu = 3 (even parity, |n| <= 6):")
levels = jantzen_levels(fam, 3)
for r, dim, _ in levels:
    print("  order %d  dim %d" % (r, dim))

print("\nsignatures just below the wall:")
for n, w in sorted(oracle_signature(1, Fraction(3), 6).items()):
    print("  n = %+d   %s" % (n, w))
