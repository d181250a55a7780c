"""Tensor powers of a unit module: twisting the Galois action.

Take M = F4* / F2*, the multiplicative group of F4 as a module over its
Galois group Z/2 (Frobenius squares, so it acts on Z/3 as multiplication
by 2).  Tensoring M with itself doubles the weight of the action:

  M          Frobenius acts by 2      no invariants
  M (x) M    Frobenius acts by 4 = 1  everything invariant

The complex tensor_power_shifted(M, n) places the n-th power at degree
n, so its Tate group in degree q is that of the module in degree q - n.
For n = 1 this turns Hilbert 90 into the vanishing of H^2 of the
complex, and for n = 2 every Tate group dies because the twisted action
is trivial and |M| is coprime to |G|.
"""

from tateform.gcomplexes import tensor_power_shifted
from tateform.gmodules import finite_field_units, fixed_points, tensor
from tateform.resolutions import complete_resolution, periodic_resolution
from tateform.tate import tate_hypercohomology

M = finite_field_units(2, 1, 2)
G = M.group
X = complete_resolution(periodic_resolution(G, 6))

inv1 = fixed_points(M).invariants()
inv2 = fixed_points(tensor(M, M)).invariants()
print("fixed points of M        : %s" % (inv1 or "0",))
print("fixed points of M (x) M  : %s" % (inv2 or "0",))
assert inv1 == ()
assert inv2 == (3,)

C1 = tensor_power_shifted(M, 1)
T1 = tate_hypercohomology(X, C1, 0, 3)
assert T1.invariants(2) == ()
print("H^2 of the once-shifted power = 0   (Hilbert 90, one degree up)")

C2 = tensor_power_shifted(M, 2)
T2 = tate_hypercohomology(X, C2, 0, 3)
for q in range(0, 4):
    assert T2.invariants(q) == (), q
print("all Tate groups of the square vanish (trivial twisted action, "
      "order coprime to |G|)")
