"""Free resolutions of Z over the integral group ring, and complete
resolutions obtained by splicing a resolution with its Z-linear dual.

Free modules here are always Z[G]^r with Z-basis indexed by pairs
(a, sigma) -> a*|G| + sigma, on which G acts by left translation in the
second slot.  A G-equivariant map out of a free module is stored as a
*generator matrix*: the column for generator a is the image of the basis
element (a, e).  Columns for the remaining basis vectors are recovered by
acting, which keeps the stored data |G| times smaller than the full
Z-matrix and makes equivariance automatic.
"""

from typing import Dict, List, Optional, Tuple

import numpy as np

from .errors import CapExceeded, ValidationError
from .groups import FiniteGroup
from .intlinalg import (
    IntMatrix,
    LatticeSolver,
    hstack,
    is_zero,
    kernel_basis,
    lattice_basis,
    zeros,
)

BAR_CAP = 20000
PEEL_RANK_CAP = 64


def free_full_matrix(G: FiniteGroup, rank_target: int, gen: IntMatrix) -> IntMatrix:
    """Materialize the full Z-matrix of a map Z[G]^r -> Z[G]^s from its
    generator matrix (shape (s*|G|, r)).

    Column (b, sigma) is obtained from column (b, e) by the target action,
    which for a free target is the block permutation (a, tau) -> (a, sigma*tau).
    """
    n = G.order
    rows, r = gen.shape
    if rows != rank_target * n:
        raise ValidationError(
            "generator matrix has %d rows, expected %d" % (rows, rank_target * n)
        )
    out = zeros(rows, r * n)
    base = np.arange(rank_target) * n
    for sigma in range(n):
        row = np.asarray(G.table[sigma], dtype=np.intp)
        perm = np.repeat(base, n) + np.tile(row, rank_target)
        for b in range(r):
            out[perm, b * n + sigma] = gen[:, b]
    return out


class FreeResolution:
    """A finite-length free resolution P_N -> ... -> P_1 -> P_0 -> Z -> 0.

    ranks[i] is the Z[G]-rank of P_i; dgens[i] (i >= 1) is the generator
    matrix of d_i: P_i -> P_{i-1}; aug is the full 1 x (ranks[0]*|G|) row
    of the augmentation P_0 -> Z.  Validation of d o d = 0 and exactness
    is deliberately deferred to exactness_audit, because full-matrix
    composites are quadratically larger than the stored data.
    """

    def __init__(self, G: FiniteGroup, ranks: List[int], dgens: List[Optional[IntMatrix]],
                 aug: IntMatrix, engine: str = "custom"):
        n = G.order
        if len(ranks) != len(dgens):
            raise ValidationError("ranks and differentials disagree in length")
        if len(ranks) < 1:
            raise ValidationError("resolution needs at least degree 0")
        if aug.shape != (1, ranks[0] * n):
            raise ValidationError("augmentation row has wrong shape")
        for i in range(1, len(ranks)):
            d = dgens[i]
            if d is None or d.shape != (ranks[i - 1] * n, ranks[i]):
                raise ValidationError("differential %d has wrong shape" % i)
        self.group = G
        self.ranks = list(ranks)
        self.dgens = dgens
        self.aug = aug
        self.engine = engine

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def d_gen(self, i: int) -> IntMatrix:
        return self.dgens[i]

    def full(self, i: int) -> IntMatrix:
        """Full Z-matrix of d_i on the induced bases."""
        return free_full_matrix(self.group, self.ranks[i - 1], self.dgens[i])

    def exactness_audit(self, max_zdim: int = 1200) -> List[Tuple[int, str]]:
        """Check ker = im at every degree where the matrices fit under
        max_zdim.  Returns (degree, verdict) pairs; verdicts are 'exact',
        'FAIL: ...' or 'skipped (size)'.
        """
        verdicts = []
        n = self.group.order
        prev_kernel = kernel_basis(self.aug)
        for i in range(1, self.length + 1):
            if self.ranks[i] * n > max_zdim or self.ranks[i - 1] * n > max_zdim:
                verdicts.append((i - 1, "skipped (size)"))
                prev_kernel = None
                continue
            d = self.full(i)
            if prev_kernel is not None:
                image = lattice_basis(d)
                verdict = "exact"
                if not _same_lattice(image, prev_kernel):
                    verdict = "FAIL: ker != im at degree %d" % (i - 1)
                verdicts.append((i - 1, verdict))
            else:
                verdicts.append((i - 1, "skipped (size)"))
            prev_kernel = kernel_basis(d)
        return verdicts


def _same_lattice(A: IntMatrix, B: IntMatrix) -> bool:
    if A.shape[0] != B.shape[0]:
        return False
    sa = LatticeSolver(A)
    if sa.solve_matrix(B) is None:
        return False
    sb = LatticeSolver(B)
    return sb.solve_matrix(A) is not None


def bar_resolution(G: FiniteGroup, length: int, cap: int = BAR_CAP) -> FreeResolution:
    """The normalized-free (bar) resolution: P_i = Z[G]^(|G|^i), generators
    written [g_1|...|g_i].

    d[g_1|...|g_i] = g_1 [g_2|...|g_i]
                     + sum_j (-1)^j [g_1|...|g_j g_{j+1}|...|g_i]
                     + (-1)^i [g_1|...|g_{i-1}]
    """
    n = G.order
    ranks = [n ** i for i in range(length + 1)]
    total = sum(r * n for r in ranks)
    if total > cap:
        raise CapExceeded(
            "bar resolution needs %d Z-generators, cap is %d" % (total, cap)
        )
    e = G.identity
    dgens: List[Optional[IntMatrix]] = [None]
    for i in range(1, length + 1):
        d = zeros(ranks[i - 1] * n, ranks[i])
        for b in range(ranks[i]):
            # unrank b as (g_1, ..., g_i), big-endian
            g = []
            rem = b
            for k in range(i):
                g.append(rem // n ** (i - 1 - k))
                rem %= n ** (i - 1 - k)
            # leading face: g_1 . [g_2|...|g_i]
            tail = b % n ** (i - 1)
            d[tail * n + g[0], b] += 1
            # middle faces
            sign = -1
            for j in range(i - 1):
                merged = 0
                for k in range(i):
                    if k == j:
                        digit = G.mul(g[j], g[j + 1])
                    elif k == j + 1:
                        continue
                    else:
                        digit = g[k]
                    merged = merged * n + digit
                d[merged * n + e, b] += sign
                sign = -sign
            # trailing face: [g_1|...|g_{i-1}]
            prefix = b // n
            d[prefix * n + e, b] += sign
        dgens.append(d)
    aug = np.full((1, n), 1, dtype=object)
    return FreeResolution(G, ranks, dgens, aug, engine="bar")


def periodic_resolution(G: FiniteGroup, length: int) -> FreeResolution:
    """Rank-1 resolution for a cyclic group: differentials alternate
    multiplication by (sigma - 1) and by the norm.  For the trivial group
    this degenerates to alternating zero and identity maps.
    """
    sigma = G.cyclic_generator()
    if sigma is None:
        raise ValidationError("periodic resolution needs a cyclic group")
    n = G.order
    e = G.identity
    minus = zeros(n, 1)
    minus[sigma, 0] += 1
    minus[e, 0] += -1
    norm = np.full((n, 1), 1, dtype=object)
    dgens: List[Optional[IntMatrix]] = [None]
    for i in range(1, length + 1):
        dgens.append(minus.copy() if i % 2 == 1 else norm.copy())
    aug = np.full((1, n), 1, dtype=object)
    return FreeResolution(G, [1] * (length + 1), dgens, aug, engine="periodic")


def peeled_resolution(G: FiniteGroup, length: int,
                      rank_cap: int = PEEL_RANK_CAP) -> FreeResolution:
    """Resolution built by repeatedly peeling kernels.

    At each step the kernel of the previous differential (a G-stable
    sublattice, so a Z[G]-submodule) is covered greedily by the orbits of
    its own lattice basis vectors; the chosen vectors become the images of
    the next free term's generators.  Exactness holds by construction and
    ranks stay near-minimal, which keeps noncyclic groups tractable where
    the bar resolution's |G|^i growth does not.
    """
    n = G.order
    ranks = [1]
    dgens: List[Optional[IntMatrix]] = [None]
    aug = np.full((1, n), 1, dtype=object)
    kernel = kernel_basis(aug)
    prev_rank = 1
    for i in range(1, length + 1):
        chosen: List[IntMatrix] = []
        span: Optional[IntMatrix] = None
        solver: Optional[LatticeSolver] = None
        for j in range(kernel.shape[1]):
            v = kernel[:, j:j + 1]
            if solver is not None and solver.solve(v[:, 0]) is not None:
                continue
            chosen.append(v)
            orbit = free_full_matrix(G, prev_rank, v)
            span = orbit if span is None else hstack([span, orbit])
            span = lattice_basis(span)
            solver = LatticeSolver(span)
        r = max(len(chosen), 1)
        if r > rank_cap:
            raise CapExceeded("peeled rank %d exceeds cap %d" % (r, rank_cap))
        d = hstack(chosen) if chosen else zeros(prev_rank * n, 1)
        ranks.append(r)
        dgens.append(d)
        kernel = kernel_basis(free_full_matrix(G, prev_rank, d))
        prev_rank = r
    return FreeResolution(G, ranks, dgens, aug, engine="peeled")


def resolution_for(G: FiniteGroup, length: int, engine: str = "auto",
                   cap: int = BAR_CAP) -> FreeResolution:
    """Engine dispatch: periodic for cyclic groups, peeled otherwise.
    The bar resolution is available by explicit request."""
    if engine == "auto":
        engine = "periodic" if G.is_cyclic() else "peeled"
    if engine == "periodic":
        return periodic_resolution(G, length)
    if engine == "bar":
        return bar_resolution(G, length, cap=cap)
    if engine == "peeled":
        return peeled_resolution(G, length)
    raise ValidationError("unknown resolution engine %r" % engine)


class CompleteResolution:
    """A doubly infinite exact sequence of free modules, materialized on
    the window [-N, N].

    X^{-i} = P_i for i >= 0 and X^i = dual(P_{i-1}) for i >= 1, where the
    Z-linear dual of a free module is free on the dual basis with the
    contragredient action (for permutation actions this is again the
    translation action, so every term uses the same (a, sigma) indexing).
    The two halves are spliced through Z: d^0 = (dual of aug) o aug, so
    the composite X^0 -> X^1 factors through Z by construction.
    """

    def __init__(self, res: FreeResolution):
        self.res = res
        self.group = res.group
        self.window = res.length
        self._full_cache: Dict[int, IntMatrix] = {}
        self._gen_cache: Dict[int, IntMatrix] = {}

    @property
    def eps(self) -> IntMatrix:
        return self.res.aug

    def rank(self, q: int) -> int:
        if abs(q) > self.window:
            raise ValidationError("degree %d outside window [-%d, %d]"
                                  % (q, self.window, self.window))
        return self.res.ranks[-q] if q <= 0 else self.res.ranks[q - 1]

    def zdim(self, q: int) -> int:
        return self.rank(q) * self.group.order

    def diff_gen(self, q: int) -> IntMatrix:
        """Generator matrix of d^q: X^q -> X^{q+1}, for q in [-N, N-1]."""
        if q < -self.window or q >= self.window:
            raise ValidationError("no differential at degree %d in window %d"
                                  % (q, self.window))
        if q in self._gen_cache:
            return self._gen_cache[q]
        n = self.group.order
        e = self.group.identity
        if q <= -1:
            gen = self.res.d_gen(-q)
        elif q == 0:
            aug = self.res.aug
            full0 = aug.T @ aug
            cols = [b * n + e for b in range(self.res.ranks[0])]
            gen = full0[:, cols]
        else:
            fullT = self.res.full(q).T
            cols = [b * n + e for b in range(self.res.ranks[q - 1])]
            gen = fullT[:, cols]
        self._gen_cache[q] = gen
        return gen

    def full_diff(self, q: int) -> IntMatrix:
        if q not in self._full_cache:
            self._full_cache[q] = free_full_matrix(
                self.group, self.rank(q + 1), self.diff_gen(q))
        return self._full_cache[q]


def complete_resolution(res: FreeResolution) -> CompleteResolution:
    return CompleteResolution(res)


class ResolutionAudit:
    """Per-degree exactness report for a complete resolution window."""

    def __init__(self, window: int):
        self.window = window
        self.entries: List[Tuple[int, int, str]] = []  # (degree, zdim, verdict)
        self.augmented_segment: str = "unchecked"
        self.splice: str = "unchecked"

    def add(self, q: int, zdim: int, verdict: str) -> None:
        self.entries.append((q, zdim, verdict))

    @property
    def passed(self) -> bool:
        if self.augmented_segment.startswith("FAIL") or self.splice.startswith("FAIL"):
            return False
        return not any(v.startswith("FAIL") for _, _, v in self.entries)

    def lines(self) -> List[str]:
        out = ["complete resolution window [-%d, %d]" % (self.window, self.window)]
        for q, zdim, verdict in self.entries:
            out.append("  degree %+d  Z-rank %d  %s" % (q, zdim, verdict))
        out.append("  augmented segment: %s" % self.augmented_segment)
        out.append("  splice through Z: %s" % self.splice)
        return out


def validate_complete_resolution(X: CompleteResolution,
                                 max_zdim: int = 1200) -> ResolutionAudit:
    """Exactness audit: ker(d^q) = im(d^{q-1}) at every interior degree,
    the augmented segment ... -> X^{-1} -> X^0 -> Z -> 0, and the splice
    factorization.  Degrees whose matrices exceed max_zdim are reported as
    skipped rather than silently trusted.
    """
    N = X.window
    audit = ResolutionAudit(N)

    # augmented segment: eps surjective and ker(eps) = im(d^{-1})
    eps = X.eps
    eps_image = lattice_basis(eps)
    if eps_image.shape[1] != 1 or eps_image[0, 0] != 1:
        audit.augmented_segment = "FAIL: augmentation not surjective"
    elif not _same_lattice(lattice_basis(X.full_diff(-1)), kernel_basis(eps)):
        audit.augmented_segment = "FAIL: im(d^-1) != ker(aug)"
    else:
        audit.augmented_segment = "exact"

    # splice: d^0 recomputed from the augmentation, and im(eta) = ker(d^1)
    eta = eps.T
    if not np.array_equal(X.full_diff(0), eta @ eps):
        audit.splice = "FAIL: d^0 is not (dual aug) o aug"
    elif N >= 2 and not _same_lattice(lattice_basis(eta), kernel_basis(X.full_diff(1))):
        audit.splice = "FAIL: im(Z -> X^1) != ker(d^1)"
    else:
        audit.splice = "exact"

    for q in range(-N + 1, N - 1):
        zq = X.zdim(q)
        if zq > max_zdim or X.zdim(q - 1) > max_zdim or X.zdim(q + 1) > max_zdim:
            audit.add(q, zq, "skipped (size)")
            continue
        dprev = X.full_diff(q - 1)
        dhere = X.full_diff(q)
        prod = dhere @ dprev
        if not is_zero(prod):
            audit.add(q, zq, "FAIL: d o d != 0")
            continue
        if _same_lattice(lattice_basis(dprev), kernel_basis(dhere)):
            audit.add(q, zq, "exact")
        else:
            audit.add(q, zq, "FAIL: ker != im")
    return audit
