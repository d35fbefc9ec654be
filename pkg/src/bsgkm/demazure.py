"""Difference-quotient (Demazure) operators on the formal group algebra.

The operator attached to a root alpha sends p to (p - s_alpha(p))/x_alpha;
the division is always exact, so a NotDivisible escaping from here means
either an engine bug or exhausted working precision, never a genuine
mathematical failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .fga import FormalGroupAlgebra, Series
from .rootdata import LatticeVector, WeylElement, vneg


@dataclass(frozen=True)
class ThetaWord:
    """A word of simple indices plus the subset of positions that act by
    difference quotients (as a bitmask, bit j-1 for position j)."""

    word: tuple[int, ...]
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> len(self.word):
            raise ValueError("subset mask %d does not fit the word of length %d"
                             % (self.mask, len(self.word)))


def demazure(alg: FormalGroupAlgebra, root: LatticeVector, p: Series) -> Series:
    """(p - s_root(p)) / x_root; drops one unit of precision."""
    s = alg.datum.reflection(root)
    return alg.exact_divide(p - alg.weyl_act(s, p), alg.x_of(root))


def theta_apply(alg: FormalGroupAlgebra, word: Sequence[int], mask: int,
                u: Series) -> Series:
    """Apply the mixed reflection/difference-quotient chain of a word.

    Position j acts by the quotient against -alpha_{word[j-1]} when bit
    j-1 of ``mask`` is set and by the plain reflection otherwise.  The
    last position acts first, so chains compose the way the tower of
    projective bundles is peeled off.
    """
    word = tuple(word)
    tw = ThetaWord(word, mask)  # validates the mask
    key = None
    if u.character is not None:
        key = (word, mask, u.character, u.precision)
        cached = alg._theta_cache.get(key)
        if cached is not None:
            return cached
    out = u
    for j in range(len(word), 0, -1):
        root = alg.datum.simple_root(word[j - 1])
        if tw.mask >> (j - 1) & 1:
            out = demazure(alg, vneg(root), out)
        else:
            out = alg.weyl_act(alg.datum.simple_reflection(word[j - 1]), out)
    if key is not None:
        alg._theta_cache[key] = out
    return out


def reflection_quotient(alg: FormalGroupAlgebra, v: WeylElement, w: WeylElement,
                        root: LatticeVector, p: Series) -> Series:
    """(v s_root w (p) - v w (p)) / x_{v(root)}, which is always exact."""
    s = alg.datum.reflection(root)
    wp = alg.weyl_act(w, p)
    num = alg.weyl_act(v, alg.weyl_act(s, wp)) - alg.weyl_act(v, wp)
    return alg.exact_divide(num, alg.x_of(v.apply(root)))
