"""Fixed-point model of the flag variety and push-forwards into it.

Values live on the Weyl group; each value is a series divided by a
multiset of root classes (all denominators in this calculus are products
of x_alpha).  Cancellation is greedy and exact, so "integral" is a
decidable property: the denominator multiset is empty after
canonicalization.

The push-pull operator along the i-th minimal parabolic acts on a
function a by

    (A_i a)(w) = a(w)/x_{-w(alpha_i)} + a(w s_i)/x_{w(alpha_i)},

the two fixed points of the fiber through w weighted by the tangent
classes.  Folding these operators over a word, starting from the class
of the base point, builds the Bott-Samelson classes; the module also
evaluates the closed push-forward formula for every basis class and the
Chevalley-type expansion of a characteristic class times such a class.
"""

from __future__ import annotations

from collections import Counter
from typing import Sequence

from .bscomb import BottSamelson
from .errors import NotDivisible, PrecisionExhausted, ResidualDenominator
from .fga import FormalGroupAlgebra, Series
from .demazure import theta_apply
from .rootdata import WeylElement, vneg


class Localized:
    """numerator / product of x_alpha over the denominator multiset."""

    __slots__ = ("algebra", "numerator", "denominator")

    def __init__(self, algebra: FormalGroupAlgebra, numerator: Series,
                 denominator: Counter | None = None, canonical: bool = False):
        self.algebra = algebra
        self.numerator = numerator
        den = Counter()
        if denominator:
            for root, mult in denominator.items():
                root = tuple(root)
                if not algebra.datum.is_root(root):
                    raise ValueError("denominator entry %s is not a root" % (root,))
                if mult:
                    den[root] += mult
        self.denominator = den
        if not canonical:
            self._cancel()

    def _cancel(self):
        num, den = self.numerator, self.denominator
        progress = True
        while progress and den:
            progress = False
            for root in sorted(den):
                while den[root] > 0:
                    try:
                        num = self.algebra.exact_divide(num, self.algebra.x_of(root))
                    except (NotDivisible, PrecisionExhausted):
                        break
                    den[root] -= 1
                    progress = True
                if den[root] == 0:
                    del den[root]
        self.numerator = num
        self.denominator = den

    @classmethod
    def integral(cls, s: Series) -> "Localized":
        return cls(s.algebra, s, None, canonical=True)

    def is_integral(self) -> bool:
        return not self.denominator

    def as_series(self) -> Series:
        if self.denominator:
            raise ResidualDenominator(
                "value retains denominator %s" % (sorted(self.denominator.items()),))
        return self.numerator

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __add__(self, other: "Localized") -> "Localized":
        common = self.denominator | other.denominator
        left = self.numerator * self.algebra.root_product(
            (common - self.denominator).elements())
        right = other.numerator * self.algebra.root_product(
            (common - other.denominator).elements())
        return Localized(self.algebra, left + right, common)

    def __neg__(self) -> "Localized":
        return Localized(self.algebra, -self.numerator, self.denominator,
                         canonical=True)

    def __sub__(self, other: "Localized") -> "Localized":
        return self + (-other)

    def __mul__(self, other: "Localized") -> "Localized":
        return Localized(self.algebra, self.numerator * other.numerator,
                         self.denominator + other.denominator)

    def mul_series(self, s: Series) -> "Localized":
        return Localized(self.algebra, self.numerator * s, self.denominator)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Localized):
            return NotImplemented
        if self.denominator == other.denominator:
            return self.numerator == other.numerator
        common = self.denominator & other.denominator
        left = self.numerator * self.algebra.root_product(
            (other.denominator - common).elements())
        right = other.numerator * self.algebra.root_product(
            (self.denominator - common).elements())
        return left == right

    __hash__ = None

    def __repr__(self):
        if not self.denominator:
            return "Localized(%r)" % (self.numerator,)
        return "Localized(%r / %s)" % (self.numerator,
                                       sorted(self.denominator.elements()))


class WFunction:
    """A function from the Weyl group to the localized algebra."""

    __slots__ = ("algebra", "values")

    def __init__(self, algebra: FormalGroupAlgebra,
                 values: dict[WeylElement, Localized]):
        group = algebra.datum.weyl_group()
        if set(values) != set(group):
            raise ValueError("need a value at every Weyl element")
        self.algebra = algebra
        self.values = values

    @classmethod
    def zero(cls, algebra: FormalGroupAlgebra) -> "WFunction":
        z = Localized.integral(algebra.zero())
        return cls(algebra, {w: z for w in algebra.datum.weyl_group()})

    def is_integral(self) -> bool:
        return all(v.is_integral() for v in self.values.values())

    def residual_points(self) -> list[WeylElement]:
        return [w for w, v in self.values.items() if not v.is_integral()]

    def pointwise_add(self, other: "WFunction") -> "WFunction":
        return WFunction(self.algebra, {w: self.values[w] + other.values[w]
                                        for w in self.values})

    def pointwise_mul(self, other: "WFunction") -> "WFunction":
        return WFunction(self.algebra, {w: self.values[w] * other.values[w]
                                        for w in self.values})

    def scale_series(self, s: Series) -> "WFunction":
        return WFunction(self.algebra, {w: v.mul_series(s)
                                        for w, v in self.values.items()})

    def support(self) -> list[WeylElement]:
        return [w for w, v in self.values.items() if not v.is_zero()]

    def __eq__(self, other) -> bool:
        if not isinstance(other, WFunction):
            return NotImplemented
        return all(self.values[w] == other.values[w] for w in self.values)

    __hash__ = None

    def __repr__(self):
        return "WFunction(support=%d of %d)" % (len(self.support()),
                                                len(self.values))


def negative_product(alg: FormalGroupAlgebra, w: WeylElement) -> Series:
    """w applied to the product of all negative root classes."""
    return alg.root_product([w.apply(a) for a in alg.datum.negative_roots])


def point_class(alg: FormalGroupAlgebra) -> WFunction:
    """The class of the base point: the full negative Euler factor at the
    identity, zero everywhere else."""
    out = WFunction.zero(alg)
    e = alg.datum.identity()
    values = dict(out.values)
    values[_canon(alg, e)] = Localized.integral(negative_product(alg, e))
    return WFunction(alg, values)


def _canon(alg: FormalGroupAlgebra, w: WeylElement) -> WeylElement:
    """The group-list representative with the same matrix (for dict keys)."""
    for u in alg.datum.weyl_group():
        if u == w:
            return u
    raise ValueError("element does not belong to the Weyl group")


def push_pull(alg: FormalGroupAlgebra, i: int, a: WFunction) -> WFunction:
    """The operator A_i on Weyl-group functions (two-point fiber sum)."""
    alg.datum._check_index(i)
    s_i = alg.datum.simple_reflection(i)
    alpha = alg.datum.simple_root(i)
    values = {}
    for w in a.values:
        down = a.values[w]
        up = a.values[_canon(alg, w * s_i)]
        t1 = Localized(alg, down.numerator,
                       down.denominator + Counter([vneg(w.apply(alpha))]))
        t2 = Localized(alg, up.numerator,
                       up.denominator + Counter([w.apply(alpha)]))
        values[w] = t1 + t2
    return WFunction(alg, values)


def bott_samelson_class(alg: FormalGroupAlgebra, seq: Sequence[int]) -> WFunction:
    """Fold the push-pull operators over the word, starting from the point."""
    out = point_class(alg)
    for i in seq:
        out = push_pull(alg, int(i), out)
    return out


def _pushforward_sum(bs: BottSamelson, L: int) -> WFunction:
    """Closed-formula push-forward: sum the localized fixed-point terms
    over subsets disjoint from L into their Weyl slots, then demand the
    totals are denominator-free."""
    alg = bs.algebra
    acc: dict[WeylElement, Localized] = {}
    for L1 in bs.subsets():
        if L1 & L:
            continue
        v = _canon(alg, bs.point_weyl(L1))
        num = alg.root_product(bs._coeff_roots(L, L1)
                               + [v.apply(a) for a in alg.datum.negative_roots])
        term = Localized(alg, num, Counter(bs.tangent_weights(L1)))
        acc[v] = acc[v] + term if v in acc else term
    values = {}
    for w in alg.datum.weyl_group():
        val = acc.get(w, Localized.integral(alg.zero()))
        if not val.is_integral():
            raise ResidualDenominator(
                "push-forward value at %r kept denominator %s"
                % (w.word, sorted(val.denominator.elements())))
        values[w] = val
    return WFunction(alg, values)


def pushforward_eta(bs: BottSamelson, L: int) -> WFunction:
    """Push-forward of the basis class eta_L to the flag variety."""
    return _pushforward_sum(bs, L)


def bott_class_direct(alg: FormalGroupAlgebra, seq: Sequence[int]) -> WFunction:
    """Direct evaluation of the fundamental-class push-forward formula."""
    return _pushforward_sum(BottSamelson(alg, seq), 0)


def pushforward_localized(bs: BottSamelson, L: int) -> WFunction:
    """Second route: reduce each basis coefficient against its Euler
    factor first, transport, then scale by the negative product."""
    alg = bs.algebra
    acc: dict[WeylElement, Localized] = {}
    for L1 in bs.subsets():
        if L1 & L:
            continue
        v = _canon(alg, bs.point_weyl(L1))
        coeff = Localized(alg, bs.restriction_coeff(L, L1),
                          Counter(bs.tangent_weights(L1)))
        term = coeff.mul_series(negative_product(alg, v))
        acc[v] = acc[v] + term if v in acc else term
    values = {}
    for w in alg.datum.weyl_group():
        val = acc.get(w, Localized.integral(alg.zero()))
        if not val.is_integral():
            raise ResidualDenominator(
                "push-forward value at %r kept denominator %s"
                % (w.word, sorted(val.denominator.elements())))
        values[w] = val
    return WFunction(alg, values)


def char_function(alg: FormalGroupAlgebra, u: Series) -> WFunction:
    """Fixed-point values of the characteristic class of u on the flag
    variety: w maps to w(u)."""
    return WFunction(alg, {w: Localized.integral(alg.weyl_act(w, u))
                           for w in alg.datum.weyl_group()})


def subsequence(seq: Sequence[int], mask_complement_of: int) -> tuple[int, ...]:
    """The positions of ``seq`` not selected by the mask, in order."""
    return tuple(seq[j] for j in range(len(seq))
                 if not mask_complement_of >> j & 1)


def chevalley_expand(alg: FormalGroupAlgebra, seq: Sequence[int],
                     u: Series) -> dict[int, Series]:
    """Coefficients of the product of a characteristic class with the
    Bott-Samelson class of a word, one per subset of positions."""
    seq = tuple(seq)
    return {L: theta_apply(alg, seq, L, u) for L in range(1 << len(seq))}


def chevalley_check(alg: FormalGroupAlgebra, seq: Sequence[int], u: Series):
    """Verify the expansion pointwise on the Weyl group.

    Returns (True, None) or (False, offending Weyl element).
    """
    seq = tuple(seq)
    lhs = char_function(alg, u).pointwise_mul(bott_samelson_class(alg, seq))
    rhs = WFunction.zero(alg)
    for L, coeff in chevalley_expand(alg, seq, u).items():
        if coeff.is_zero():
            continue
        rhs = rhs.pointwise_add(
            bott_samelson_class(alg, subsequence(seq, L)).scale_series(coeff))
    for w in lhs.values:
        if lhs.values[w] != rhs.values[w]:
            return False, w
    return True, None
