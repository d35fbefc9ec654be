"""Fixed-point combinatorics of a Bott-Samelson tower.

A word I = (i_1, ..., i_l) of simple indices determines an iterated
P^1-bundle whose 2^l torus-fixed points are indexed by subsets of
positions, encoded here as bitmasks (bit j-1 set means position j is
"reflected").  The cohomology has two coordinate systems:

* the eta basis coming from the bundle sections (one class per subset),
* the values at the fixed points (one series per subset).

This module computes the change of basis in both directions, the
quadratic relations among the section classes, products through the
fixed-point embedding, divisibility (GKM) checks on fixed-point data,
and the restriction of characteristic classes.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .demazure import theta_apply
from .errors import NotDivisible, PrecisionExhausted
from .fga import FormalGroupAlgebra, Series
from .rootdata import LatticeVector, WeylElement, vneg


def subset_order(l: int) -> list[int]:
    """All masks over [l], sorted by (cardinality, binary value)."""
    return sorted(range(1 << l), key=lambda m: (m.bit_count(), m))


def mask_positions(mask: int) -> list[int]:
    """1-based positions selected by a mask, increasing."""
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


def mask_from_positions(positions: Iterable[int]) -> int:
    mask = 0
    for j in positions:
        mask |= 1 << (j - 1)
    return mask


def _proper_submasks(mask: int):
    sub = (mask - 1) & mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


class GKMElement:
    """A function from the 2^l fixed points to the formal group algebra."""

    __slots__ = ("bs", "values")

    def __init__(self, bs: "BottSamelson", values: dict[int, Series]):
        if set(values) != set(range(1 << bs.length)):
            raise ValueError("need a value at every fixed point")
        prec = min(s.precision for s in values.values())
        self.bs = bs
        self.values = {m: s.truncate(prec) for m, s in values.items()}

    @property
    def precision(self) -> int:
        return min(s.precision for s in self.values.values())

    def pointwise_mul(self, other: "GKMElement") -> "GKMElement":
        return GKMElement(self.bs, {m: self.values[m] * other.values[m]
                                    for m in self.values})

    def pointwise_add(self, other: "GKMElement") -> "GKMElement":
        return GKMElement(self.bs, {m: self.values[m] + other.values[m]
                                    for m in self.values})

    def scale(self, s: Series) -> "GKMElement":
        return GKMElement(self.bs, {m: self.values[m] * s for m in self.values})

    def __eq__(self, other) -> bool:
        if not isinstance(other, GKMElement):
            return NotImplemented
        return self.bs.seq == other.bs.seq and \
            all(self.values[m] == other.values[m] for m in self.values)

    __hash__ = None

    def __repr__(self):
        return "GKMElement(seq=%s)" % (list(self.bs.seq),)


class EtaVector:
    """Coefficients of an element in the eta basis, one per subset."""

    __slots__ = ("bs", "coeffs")

    def __init__(self, bs: "BottSamelson", coeffs: dict[int, Series]):
        if set(coeffs) != set(range(1 << bs.length)):
            raise ValueError("need a coefficient at every basis element")
        prec = min(s.precision for s in coeffs.values())
        self.bs = bs
        self.coeffs = {m: s.truncate(prec) for m, s in coeffs.items()}

    @property
    def precision(self) -> int:
        return min(s.precision for s in self.coeffs.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, EtaVector):
            return NotImplemented
        return self.bs.seq == other.bs.seq and \
            all(self.coeffs[m] == other.coeffs[m] for m in self.coeffs)

    __hash__ = None

    def __repr__(self):
        support = [m for m, s in sorted(self.coeffs.items()) if not s.is_zero()]
        return "EtaVector(seq=%s, support=%s)" % (list(self.bs.seq), support)


class BottSamelson:
    """The fixed-point calculus of one word in simple reflections."""

    def __init__(self, algebra: FormalGroupAlgebra, seq: Sequence[int]):
        self.algebra = algebra
        self.datum = algebra.datum
        self.seq = tuple(int(i) for i in seq)
        for i in self.seq:
            if not 1 <= i <= self.datum.rank:
                raise ValueError("sequence index %d out of range 1..%d"
                                 % (i, self.datum.rank))
        self.length = len(self.seq)
        self._prefix_cache: dict[tuple[int, int], WeylElement] = {}

    # -- subset combinatorics ------------------------------------------------

    def subsets(self) -> list[int]:
        return subset_order(self.length)

    def full_mask(self) -> int:
        return (1 << self.length) - 1

    def prefix_weyl(self, mask: int, j: int) -> WeylElement:
        """Ordered product of the reflections chosen by ``mask`` among the
        first j positions (increasing position order)."""
        if not 0 <= j <= self.length:
            raise ValueError("prefix bound %d out of range 0..%d" % (j, self.length))
        key = (mask & ((1 << j) - 1), j)
        w = self._prefix_cache.get(key)
        if w is None:
            if j == 0:
                w = self.datum.identity()
            else:
                w = self.prefix_weyl(mask, j - 1)
                if mask >> (j - 1) & 1:
                    w = w * self.datum.simple_reflection(self.seq[j - 1])
            self._prefix_cache[key] = w
        return w

    def point_weyl(self, mask: int) -> WeylElement:
        """The Weyl element a fixed point maps to in the flag variety."""
        return self.prefix_weyl(mask, self.length)

    def tangent_weights(self, mask: int) -> list[LatticeVector]:
        """Weights of the torus action on the tangent space at a fixed point."""
        out = []
        for j in range(1, self.length + 1):
            root = self.datum.simple_root(self.seq[j - 1])
            out.append(vneg(self.prefix_weyl(mask, j).apply(root)))
        return out

    def distinct_weights(self, mask: int) -> bool:
        """Whether the skew-diagonal factors at this fixed point are distinct."""
        seen = []
        for j in range(1, self.length + 1):
            if mask >> (j - 1) & 1:
                continue
            root = vneg(self.datum.simple_root(self.seq[j - 1]))
            seen.append(self.prefix_weyl(mask, j - 1).apply(root))
        return len(set(seen)) == len(seen)

    # -- restriction of the eta basis ----------------------------------------

    def _coeff_roots(self, L: int, M: int) -> list[LatticeVector]:
        roots = []
        for k in range(1, self.length + 1):
            if L >> (k - 1) & 1:
                root = vneg(self.datum.simple_root(self.seq[k - 1]))
                roots.append(self.prefix_weyl(M, k - 1).apply(root))
        return roots

    def restriction_coeff(self, L: int, M: int) -> Series:
        """The product of reflected root classes restricting eta_L to M."""
        return self.algebra.root_product(self._coeff_roots(L, M))

    def euler_at(self, mask: int) -> Series:
        """Product of the tangent-weight classes at a fixed point: the
        eigenvalue of restriction-after-pushforward on that point class."""
        return self.algebra.root_product(self.tangent_weights(mask))

    def restrict_eta(self, L: int) -> GKMElement:
        """Fixed-point values of the basis class eta_L: the coefficient
        product at points disjoint from L, zero elsewhere."""
        zero = self.algebra.zero()
        values = {}
        for M in self.subsets():
            values[M] = self.restriction_coeff(L, M) if M & L == 0 else zero
        return GKMElement(self, values)

    def restriction_matrix(self) -> list[list[Series]]:
        """Rows = eta labels, columns = fixed points, both in
        (cardinality, value) order."""
        order = self.subsets()
        return [[self.restrict_eta(L).values[M] for M in order] for L in order]

    # -- change of basis -------------------------------------------------------

    def unit_eta(self, L: int) -> EtaVector:
        zero = self.algebra.zero()
        coeffs = {m: zero for m in self.subsets()}
        coeffs[L] = self.algebra.one()
        return EtaVector(self, coeffs)

    def eta_to_gkm(self, v: EtaVector) -> GKMElement:
        """Evaluate an eta-basis combination at all fixed points."""
        zero = self.algebra.zero()
        values = {M: zero for M in self.subsets()}
        for L, c in v.coeffs.items():
            if c.is_zero():
                continue
            for M in self.subsets():
                if M & L:
                    continue
                values[M] = values[M] + c * self.restriction_coeff(L, M)
        return GKMElement(self, values)

    def gkm_to_eta(self, g: GKMElement) -> EtaVector:
        """Invert the restriction by skew-triangular back-substitution.

        Fixed points are eliminated from the largest supports down; each
        step divides exactly by the skew-diagonal entry.  NotDivisible
        means the input is not a restriction (for words with repeated
        letters it may also be a membership gap; callers decide).
        """
        residual = dict(g.values)
        coeffs: dict[int, Series] = {}
        for M in sorted(self.subsets(), key=lambda m: (-m.bit_count(), m)):
            L = self.full_mask() & ~M
            value = residual[M]
            if value.is_zero():
                # same precision the division would have produced
                qprec = min(value.precision,
                            self.restriction_coeff(L, M).precision) - L.bit_count()
                if qprec < 0:
                    raise PrecisionExhausted(
                        "eliminating fixed point %d at precision %d" %
                        (M, value.precision))
                coeffs[L] = value.truncate(qprec)
                continue
            c = self.algebra.exact_divide(value, self.restriction_coeff(L, M))
            coeffs[L] = c
            for M2 in _proper_submasks(M):
                residual[M2] = residual[M2] - c * self.restriction_coeff(L, M2)
        return EtaVector(self, coeffs)

    def gkm_check(self, g: GKMElement):
        """Divisibility of differences along the 2^(l-1) * l edge pairs.

        Returns (True, None) or (False, witness) where the witness
        records (larger mask, smaller mask, position, obstructing
        monomial or None).
        """
        for k in range(1, self.length + 1):
            bit = 1 << (k - 1)
            root = vneg(self.datum.simple_root(self.seq[k - 1]))
            for L2 in self.subsets():
                if L2 & bit:
                    continue
                L1 = L2 | bit
                divisor = self.algebra.x_of(self.prefix_weyl(L1, k - 1).apply(root))
                diff = g.values[L1] - g.values[L2]
                if diff.is_zero():
                    continue
                try:
                    self.algebra.exact_divide(diff, divisor)
                except NotDivisible as err:
                    return False, (L1, L2, k, err.monomial)
        return True, None

    # -- ring structure in the eta basis ----------------------------------------

    def quadratic_relation(self, j: int) -> EtaVector:
        """The square of the j-th section class expanded in the basis.

        The expansion is supported on subsets containing j; the
        coefficient at L + {j} is the mixed chain of the first j-1
        letters, selected by L, applied to the class of -alpha_{i_j}.
        """
        if not 1 <= j <= self.length:
            raise ValueError("position %d out of range 1..%d" % (j, self.length))
        zero = self.algebra.zero()
        coeffs = {m: zero for m in self.subsets()}
        u = self.algebra.x_of(vneg(self.datum.simple_root(self.seq[j - 1])))
        word = self.seq[:j - 1]
        for L in range(1 << (j - 1)):
            coeffs[L | (1 << (j - 1))] = theta_apply(self.algebra, word, L, u)
        return EtaVector(self, coeffs)

    def eta_multiply(self, v: EtaVector, w: EtaVector) -> EtaVector:
        """Product in the eta basis, computed through the fixed points."""
        g = self.eta_to_gkm(v).pointwise_mul(self.eta_to_gkm(w))
        return self.gkm_to_eta(g)

    # -- characteristic classes ----------------------------------------------

    def char_restrict(self, u: Series) -> GKMElement:
        """Fixed-point values of the characteristic class of u."""
        return GKMElement(self, {
            M: self.algebra.weyl_act(self.point_weyl(M), u) for M in self.subsets()})

    def char_in_eta(self, u: Series) -> EtaVector:
        """Eta-basis expansion of the characteristic class of u."""
        return EtaVector(self, {
            L: theta_apply(self.algebra, self.seq, L, u) for L in self.subsets()})

    def __repr__(self):
        return "BottSamelson(%s, seq=%s)" % (self.algebra, list(self.seq))
