"""Multiplication by m on coefficients, measured by its mapping cone.

For the complex C = Z[0] over Z/4, multiplication by m is a chain map
C -> C, and the hypercohomology of its cone fits in a long exact
sequence between the Tate groups of the two copies of C.  Exactness
forces the order of each cone group to be

    |coker(m on H^i)| * |ker(m on H^{i+1})|

and the built-in checker verifies both the orders and the two maps of
the sequence (inclusion of the shifted copy, projection onto the
original) on canonical coordinates.
"""

from tateform.gcomplexes import concentrate
from tateform.gmodules import zmodule
from tateform.groups import make_cyclic
from tateform.resolutions import complete_resolution, resolution_for
from tateform.tate import cone_les_check

G = make_cyclic(4)
C = concentrate(zmodule(G), 0)
X = complete_resolution(resolution_for(G, 6))

for m in (1, 2, 3, 4):
    report = cone_les_check(X, C, m, -2, 2)
    assert report.passed, m
    print("m = %d:" % m)
    for i, lhs, quot, tors, ok in report.rows:
        assert ok
        print("  |H^%+d(cone)| = %-3d = %d * %d   (coker at %+d, ker at %+d)"
              % (i, lhs, quot, tors, i, i + 1))

print("long exact sequence orders and maps verified for m = 1, 2, 3, 4")
