"""Cup product with a degree-2 generator is periodicity for cyclic groups.

Pick the generator u of H^2(Z/4, Z) = Z/4.  Cupping with u shifts every
Tate group two degrees up, and for a cyclic group this map is an
isomorphism in every degree: the well known 2-periodicity, realised here
as an explicit matrix on canonical coordinates.
"""

from tateform.gcomplexes import concentrate
from tateform.gmodules import zmodule
from tateform.groups import make_cyclic
from tateform.resolutions import complete_resolution, periodic_resolution
from tateform.tate import cup_with, tate_hypercohomology

G = make_cyclic(4)
C = concentrate(zmodule(G), 0)
X = complete_resolution(periodic_resolution(G, 6))

T = tate_hypercohomology(X, C, -4, 4)
u = T.class_at(2, (1,))
assert u.order == 4

for q in (-2, -1, 0, 1, 2):
    cup = cup_with(X, C, u, q)
    src = T.invariants(q - 2)
    dst = T.invariants(q)
    assert cup.is_isomorphism(), q
    print("cup with u : H^%+d = %-6s ->  H^%+d = %-6s  iso, matrix %s"
          % (q - 2, src or "0", q, dst or "0",
             cup.matrix.tolist()))

print("cup with the degree-2 generator is an isomorphism in all degrees")
