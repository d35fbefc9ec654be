"""Independent additive-law oracle over exact untruncated polynomials.

For the additive formal group law the class of a character is just the\
character itself, so the whole calculus collapses to polynomial algebra
in the fundamental-weight coordinates.  This module implements that
picture from scratch -- plain ``{exponent: Fraction}`` dicts, no
truncation, no shared code with the series engine -- so it can serve as
a second, independent route for cross-checking the engine's additive
outputs (restriction coefficients, Euler factors, difference-quotient
operators, push-forward coefficients).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NotDivisible
from .rootdata import RootDatum, WeylElement, vneg

Poly = dict  # exponent tuple -> nonzero Fraction


def _deg(exp) -> int:
    return sum(exp)


def p_zero() -> Poly:
    return {}


def p_const(rank: int, c) -> Poly:
    c = Fraction(c)
    return {} if c == 0 else {(0,) * rank: c}


def p_add(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, _F0) + c
        if s == 0:
            out.pop(e, None)
        else:
            out[e] = s
    return out


def p_neg(a: Poly) -> Poly:
    return {e: -c for e, c in a.items()}


def p_sub(a: Poly, b: Poly) -> Poly:
    return p_add(a, p_neg(b))


def p_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(e, _F0) + ca * cb
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
    return out


def p_scale(c, a: Poly) -> Poly:
    c = Fraction(c)
    if c == 0:
        return {}
    return {e: c * x for e, x in a.items()}


def p_max_degree(a: Poly) -> int:
    return max((_deg(e) for e in a), default=-1)


def p_exact_div(s: Poly, d: Poly) -> Poly:
    """Exact polynomial quotient by graded-lexicographic elimination."""
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    if not s:
        return {}
    delta = min(_deg(e) for e in d)
    lead = min((e for e in d.items() if _deg(e[0]) == delta), key=lambda kv: kv[0])
    lead_exp, lead_c = lead
    bound = p_max_degree(s) - p_max_degree(d)
    if bound < 0:
        raise NotDivisible("degree of divisor exceeds degree of dividend",
                           monomial=min(s, key=lambda e: (_deg(e), e)))
    rem = dict(s)
    quot: Poly = {}
    while rem:
        e = min(rem, key=lambda e: (_deg(e), e))
        q_exp = tuple(x - y for x, y in zip(e, lead_exp))
        if any(x < 0 for x in q_exp) or _deg(q_exp) > bound:
            raise NotDivisible("polynomial division leaves a remainder at %s" % (e,),
                               monomial=e)
        q_c = rem[e] / lead_c
        quot[q_exp] = q_c
        for e2, c2 in d.items():
            ne = tuple(x + y for x, y in zip(q_exp, e2))
            v = rem.get(ne, _F0) - q_c * c2
            if v == 0:
                rem.pop(ne, None)
            else:
                rem[ne] = v
    return quot


def p_truncate(a: Poly, precision: int) -> Poly:
    return {e: c for e, c in a.items() if _deg(e) <= precision}


_F0 = Fraction(0)


class AdditiveOracle:
    """Polynomial model of the additive-law calculus on a root datum."""

    def __init__(self, datum: RootDatum):
        self.datum = datum
        self.rank = datum.rank

    def x_of(self, lam) -> Poly:
        """x_lambda is the character itself, as a linear polynomial."""
        out: Poly = {}
        for i, m in enumerate(lam):
            if m:
                e = tuple(1 if c == i else 0 for c in range(self.rank))
                out[e] = Fraction(m)
        return out

    def weyl(self, w: WeylElement, p: Poly) -> Poly:
        """Substitute each weight variable by its image character."""
        images = [self.x_of(w.apply(self.datum.fundamental_weight(i)))
                  for i in range(1, self.rank + 1)]
        out: Poly = {}
        for exp, c in p.items():
            term = p_const(self.rank, c)
            for i, e in enumerate(exp):
                for _ in range(e):
                    term = p_mul(term, images[i])
            out = p_add(out, term)
        return out

    def demazure(self, root, p: Poly) -> Poly:
        """(p - s_root(p)) / x_root, exactly."""
        s = self.datum.reflection(root)
        return p_exact_div(p_sub(p, self.weyl(s, p)), self.x_of(root))

    def theta(self, word, mask: int, p: Poly) -> Poly:
        """The selected mix of reflections and difference quotients.

        Position j acts by the quotient against -alpha_{word[j-1]} when
        the j-th bit of mask is set and by the plain reflection
        otherwise; position len(word) acts first.
        """
        out = p
        for j in range(len(word), 0, -1):
            root = self.datum.simple_root(word[j - 1])
            if mask >> (j - 1) & 1:
                out = self.demazure(vneg(root), out)
            else:
                out = self.weyl(self.datum.simple_reflection(word[j - 1]), out)
        return out

    # -- fixed-point combinatorics, recomputed from the defining products --

    def _prefix(self, seq, mask: int, j: int) -> WeylElement:
        w = self.datum.identity()
        for k in range(1, j + 1):
            if mask >> (k - 1) & 1:
                w = w * self.datum.simple_reflection(seq[k - 1])
        return w

    def restriction_coeff(self, seq, L: int, M: int) -> Poly:
        out = p_const(self.rank, 1)
        for k in range(1, len(seq) + 1):
            if L >> (k - 1) & 1:
                root = vneg(self.datum.simple_root(seq[k - 1]))
                out = p_mul(out, self.x_of(self._prefix(seq, M, k - 1).apply(root)))
        return out

    def euler_at(self, seq, L: int) -> Poly:
        out = p_const(self.rank, 1)
        for j in range(1, len(seq) + 1):
            root = vneg(self.datum.simple_root(seq[j - 1]))
            out = p_mul(out, self.x_of(self._prefix(seq, L, j).apply(root)))
        return out

    def negative_product(self, w: WeylElement) -> Poly:
        out = p_const(self.rank, 1)
        for a in self.datum.negative_roots:
            out = p_mul(out, self.x_of(w.apply(a)))
        return out

    def pushforward_coeffs(self, seq, L: int):
        """Coefficients of the push-forward at each Weyl element.

        Sums the localized terms over subsets disjoint from L with a
        common denominator per Weyl element and performs one exact
        division at the end; integrality of the total is part of what
        the caller wants to check.
        """
        l = len(seq)
        per_w: dict = {}
        for L1 in range(1 << l):
            if L1 & L:
                continue
            v = self._prefix(seq, L1, l)
            num = p_mul(self.restriction_coeff(seq, L, L1), self.negative_product(v))
            den = self.euler_at(seq, L1)
            cur = per_w.get(v.matrix)
            if cur is None:
                per_w[v.matrix] = (v, num, den)
            else:
                _, cnum, cden = cur
                per_w[v.matrix] = (v, p_add(p_mul(cnum, den), p_mul(num, cden)),
                                   p_mul(cden, den))
        out = {}
        for v, num, den in per_w.values():
            out[v.matrix] = p_exact_div(num, den)
        return out
