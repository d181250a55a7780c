"""The classical even/odd pattern for cyclic groups.

Tate cohomology of Z/n with trivial integer coefficients is Z/n in every
even degree and zero in every odd degree.  Two independently constructed
resolutions (the minimal periodic one and the bar resolution) must give
the same invariant factors degree by degree.
"""

from tateform.gcomplexes import concentrate
from tateform.gmodules import zmodule
from tateform.groups import make_cyclic
from tateform.resolutions import (
    bar_resolution,
    complete_resolution,
    periodic_resolution,
)
from tateform.tate import tate_hypercohomology

for n in (2, 3, 4):
    G = make_cyclic(n)
    C = concentrate(zmodule(G), 0)
    periodic = tate_hypercohomology(
        complete_resolution(periodic_resolution(G, 6)), C, -4, 4)
    bar = tate_hypercohomology(
        complete_resolution(bar_resolution(G, 5)), C, -4, 4)
    print("Z/%d:" % n)
    for q in range(-4, 5):
        a = periodic.invariants(q)
        b = bar.invariants(q)
        assert a == b, (n, q, a, b)
        assert a == ((n,) if q % 2 == 0 else ())
        print("  H^%+d = %s" % (q, a or "0"))

print("pattern confirmed on both engines")
