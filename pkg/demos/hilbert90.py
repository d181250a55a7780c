"""Hilbert's theorem 90 for finite fields, checked exactly.

For the extension F_{q^n} / F_q with cyclic Galois group of order n, the
first cohomology of the unit group vanishes, and the Herbrand quotient
of a finite module is 1, so H^0 and H^1 have the same order.

The unit groups here are genuine multiplicative groups of small finite
fields, built from an irreducible polynomial and acted on by Frobenius.
"""

from tateform.gcomplexes import concentrate
from tateform.gmodules import finite_field_units
from tateform.resolutions import complete_resolution, periodic_resolution
from tateform.tate import tate_hypercohomology

cases = [
    (2, 1, 2, "F4 / F2"),
    (3, 1, 2, "F9 / F3"),
    (2, 1, 3, "F8 / F2"),
]

for p, f, n, label in cases:
    M = finite_field_units(p, f, n)
    G = M.group
    X = complete_resolution(periodic_resolution(G, 6))
    T = tate_hypercohomology(X, concentrate(M, 0), -2, 2)
    h1 = T.invariants(1)
    assert h1 == (), (label, h1)
    assert T.order(0) == T.order(1), label
    print("%-8s  H^1 = 0  (H^0 has order %d, matching H^1's %d)"
          % (label, T.order(0), T.order(1)))

print("Hilbert 90 and the Herbrand identity hold in all three cases")
