"""Finite groups by multiplication table.

A group of order n is a full n x n table over element ids 0..n-1.  At the
orders this package works with (24 by default, see DEFAULT_ORDER_CAP)
tables make validation, subgroup enumeration, cosets and abelianization
all cheap exact computations, and they remove any dependence on how a
group happens to be presented.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

from .errors import CapExceeded, ValidationError
from .intlinalg import AbGroup, cokernel_structure, zeros

DEFAULT_ORDER_CAP = 24


class FiniteGroup:
    """A finite group given by its multiplication table.

    ``table[a][b]`` is the product ab.  Construction validates the table:
    identity, then inverses, then associativity, each failure with its own
    message.

    >>> G = make_cyclic(3)
    >>> G.mul(1, 2)
    0
    >>> G.inv(2)
    1
    >>> G.element_order(2)
    3
    """

    __slots__ = ("order", "table", "identity", "name", "_inverse", "_subgroup_memo")

    def __init__(self, table: Sequence[Sequence[int]], name: str = "G"):
        n = len(table)
        if n == 0:
            raise ValidationError("empty multiplication table")
        rows = []
        for i, row in enumerate(table):
            row = [int(x) for x in row]
            if len(row) != n:
                raise ValidationError(
                    f"table is not square: row {i} has length {len(row)}, expected {n}"
                )
            for j, x in enumerate(row):
                if not 0 <= x < n:
                    raise ValidationError(f"entry out of range at ({i}, {j}): {x}")
            rows.append(tuple(row))
        self.table = tuple(rows)
        self.order = n
        self.name = name

        identity = None
        for e in range(n):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n)):
                identity = e
                break
        if identity is None:
            raise ValidationError("no identity element")
        self.identity = identity

        inverse = []
        for a in range(n):
            inv_a = None
            for b in range(n):
                if self.table[a][b] == identity and self.table[b][a] == identity:
                    inv_a = b
                    break
            if inv_a is None:
                raise ValidationError(f"element {a} has no inverse")
            inverse.append(inv_a)
        self._inverse = tuple(inverse)

        for a in range(n):
            ta = self.table[a]
            for b in range(n):
                tab = self.table[ta[b]]
                tb = self.table[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise ValidationError(f"associativity fails at ({a}, {b}, {c})")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inverse[a]

    def conjugate(self, g: int, h: int) -> int:
        """g h g^{-1}."""
        return self.mul(self.mul(g, h), self.inv(g))

    @property
    def elements(self) -> range:
        return range(self.order)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def is_abelian(self) -> bool:
        return all(
            self.table[a][b] == self.table[b][a]
            for a in range(self.order)
            for b in range(a + 1, self.order)
        )

    def cyclic_generator(self) -> int | None:
        """An element of full order, smallest id first; None if not cyclic."""
        for a in range(self.order):
            if self.element_order(a) == self.order:
                return a
        return None

    def is_cyclic(self) -> bool:
        return self.cyclic_generator() is not None

    def closure(self, seed: Iterable[int]) -> frozenset:
        """Subgroup generated by ``seed`` (finite, so products suffice)."""
        cur = {self.identity, *seed}
        frontier = list(cur)
        while frontier:
            new = []
            for a in list(cur):
                for b in frontier:
                    for x in (self.table[a][b], self.table[b][a]):
                        if x not in cur:
                            cur.add(x)
                            new.append(x)
            frontier = new
        return frozenset(cur)

    def is_normal_subset(self, elements: Iterable[int]) -> bool:
        elems = set(elements)
        return all(
            self.conjugate(g, h) in elems for g in range(self.order) for h in elems
        )

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    """A subgroup as a sorted tuple of parent element ids."""

    parent: FiniteGroup
    elements: tuple
    is_normal: bool

    def __post_init__(self):
        if self.parent.order % len(self.elements) != 0:
            raise ValidationError("subgroup order does not divide group order")

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def is_whole_group(self) -> bool:
        return self.order == self.parent.order

    def as_group(self) -> tuple[FiniteGroup, tuple]:
        """The subgroup as a standalone FiniteGroup plus the embedding.

        The second component lists, for each new element id, the parent id
        it came from.  Results are memoized on the parent so repeated calls
        hand back the identical FiniteGroup object; downstream identity
        checks (module and complex validation) rely on that.
        """
        memo = getattr(self.parent, "_subgroup_memo", None)
        if memo is None:
            memo = {}
            self.parent._subgroup_memo = memo
        if self.elements in memo:
            return memo[self.elements]
        pos = {g: i for i, g in enumerate(self.elements)}
        table = [
            [pos[self.parent.mul(a, b)] for b in self.elements] for a in self.elements
        ]
        name = f"{self.parent.name}|sub{list(self.elements)}"
        result = (FiniteGroup(table, name=name), self.elements)
        memo[self.elements] = result
        return result

    def __repr__(self) -> str:
        tag = "normal" if self.is_normal else "not normal"
        return f"Subgroup({list(self.elements)} of {self.parent.name}, {tag})"


def subgroup(G: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    """Wrap a subset as a Subgroup, validating closure."""
    elems = tuple(sorted(set(elements) | {G.identity}))
    for a in elems:
        for b in elems:
            if G.mul(a, b) not in elems:
                raise ValidationError(f"subset not closed: {a}*{b} falls outside")
    return Subgroup(G, elems, G.is_normal_subset(elems))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (G.identity,), True)


def whole_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)), True)


def make_cyclic(n: int) -> FiniteGroup:
    """Cyclic group of order n with i*j = (i+j) mod n."""
    if n < 1:
        raise ValidationError("order must be at least 1")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(table, name=f"Z/{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """Componentwise product on pairs (a, b) -> a*|H| + b."""
    nH = H.order
    table = [
        [
            G.table[a1][a2] * nH + H.table[b1][b2]
            for a2 in range(G.order)
            for b2 in range(nH)
        ]
        for a1 in range(G.order)
        for b1 in range(nH)
    ]
    return FiniteGroup(table, name=f"{G.name}x{H.name}")


def from_table(table: Sequence[Sequence[int]], name: str = "G") -> FiniteGroup:
    """Validate an explicit multiplication table."""
    return FiniteGroup(table, name=name)


def symmetric_group(n: int) -> FiniteGroup:
    """S_n on ids given by lexicographic order of permutation tuples.

    Composition convention: (p * q)(x) = p(q(x)).  Requires n <= 4 so the
    order stays within the default cap.
    """
    if not 1 <= n <= 4:
        raise CapExceeded("symmetric_group supports 1 <= n <= 4")
    perms = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms
    ]
    return FiniteGroup(table, name=f"S_{n}")


def all_subgroups(G: FiniteGroup, cap: int = DEFAULT_ORDER_CAP) -> list:
    """Every subgroup, each exactly once, sorted by (order, elements).

    Enumeration is by closure saturation: grow each known subgroup by one
    outside element at a time.  Every subgroup arises this way because its
    own generating chain is walked.
    """
    if G.order > cap:
        raise CapExceeded(f"group order {G.order} exceeds cap {cap}")
    found = {frozenset([G.identity])}
    queue = [frozenset([G.identity])]
    while queue:
        H = queue.pop()
        for g in range(G.order):
            if g in H:
                continue
            K = G.closure(H | {g})
            if K not in found:
                found.add(K)
                queue.append(K)
    subs = [
        Subgroup(G, tuple(sorted(H)), G.is_normal_subset(H)) for H in found
    ]
    subs.sort(key=lambda s: (s.order, s.elements))
    return subs


def coset_representatives(G: FiniteGroup, H: Subgroup) -> list:
    """One id per left coset gH, identity first, then by ascending id."""
    covered = set()
    reps = []
    for g in [G.identity, *range(G.order)]:
        if g in covered:
            continue
        reps.append(g)
        covered.update(G.mul(g, h) for h in H.elements)
    return reps


def right_transversal(G: FiniteGroup, H: Subgroup) -> list:
    """One id per right coset Hg: inverses of the left representatives."""
    return [G.inv(r) for r in coset_representatives(G, H)]


def quotient_group(G: FiniteGroup, V: Subgroup) -> tuple[FiniteGroup, tuple]:
    """G/V for normal V, with the projection id map (identity coset = 0)."""
    if not V.is_normal:
        raise ValidationError("quotient by a non-normal subgroup")
    reps = coset_representatives(G, V)
    proj = [None] * G.order
    for k, r in enumerate(reps):
        for h in V.elements:
            proj[G.mul(r, h)] = k
    table = [[proj[G.mul(a, b)] for b in reps] for a in reps]
    return FiniteGroup(table, name=f"{G.name}/V"), tuple(proj)


def commutator_subgroup(G: FiniteGroup) -> Subgroup:
    comms = {
        G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b)))
        for a in range(G.order)
        for b in range(G.order)
    }
    elems = tuple(sorted(G.closure(comms)))
    return Subgroup(G, elems, True)


def abelianization(G: FiniteGroup) -> tuple[AbGroup, tuple]:
    """G/[G,G] in invariant-factor form, plus per-element coordinates.

    The quotient group Q = G/[G,G] is presented as an abelian group on one
    generator e_x per element x of Q with relators e_x + e_y - e_{xy}; the
    cokernel of that relator matrix is exactly Q.  The second return value
    maps each element id of G to the canonical coordinates of its class.
    """
    D = commutator_subgroup(G)
    Q, proj_q = quotient_group(G, D)
    m = Q.order
    rel = zeros(m, m * m)
    col = 0
    for i in range(m):
        for j in range(m):
            rel[i, col] += 1
            rel[j, col] += 1
            rel[Q.mul(i, j), col] -= 1
            col += 1
    ab = cokernel_structure(rel)
    coords = []
    for g in range(G.order):
        v = zeros(m, 1)[:, 0]
        v[proj_q[g]] = 1
        coords.append(ab.classify(v))
    return ab, tuple(coords)
