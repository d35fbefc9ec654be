"""The formal group algebra: exact truncated series on the weight lattice.

The algebra S attached to a root datum and a formal group law F is the
ring of formal power series in the classes x_lambda of characters,
subject to x_0 = 0 and x_{lambda+mu} = F(x_lambda, x_mu).  Concretely we
work in the quotient R[[x_{w_1}, ..., x_{w_n}]] / (degree > N), with one
variable per fundamental weight: every operation is a genuine ring
operation of that quotient, so all power series identities hold exactly
at working precision.

Every series carries its precision N (all terms of total degree <= N are
correct, higher terms are absent).  Divisions lower precision by the
valuation of the divisor; attempting to cross below precision 0 raises
PrecisionExhausted rather than returning vacuous values.

Series values are immutable; all operations are pure; caches inside the
algebra only ever store finished immutable values, so sharing across
threads is safe.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .coeffring import LaurentRing, RationalRing
from .errors import NotDivisible, PrecisionExhausted
from .rootdata import LatticeVector, RootDatum, WeylElement, build_root_datum

DEFAULT_PRECISION = 8


class FormalGroupLaw:
    """A one-dimensional commutative formal group law F(x, y).

    Only the coefficients a_ij (i, j >= 1) of the expansion
    F(x, y) = x + y + sum a_ij x^i y^j are stored.  ``degree_cap`` is
    None when the law is known exactly in all degrees (additive,
    multiplicative) and the file's cap for laws read from coefficients.
    """

    def __init__(self, kind, ring, coeffs, degree_cap=None):
        self.kind = kind
        self.ring = ring
        self.coeffs = {k: v for k, v in coeffs.items() if not ring.is_zero(v)}
        self.degree_cap = degree_cap

    @classmethod
    def additive(cls) -> "FormalGroupLaw":
        """F(x, y) = x + y over the rationals."""
        return cls("additive", RationalRing, {})

    @classmethod
    def multiplicative(cls) -> "FormalGroupLaw":
        """F(x, y) = x + y - beta*x*y over Q[beta, beta^-1]."""
        return cls("multiplicative", LaurentRing, {(1, 1): {1: Fraction(-1)}})

    @classmethod
    def generic(cls, coeffs, degree_cap, ring=RationalRing) -> "FormalGroupLaw":
        """A law given by finitely many coefficients, validated up to the cap.

        ``coeffs`` maps (i, j) with i, j >= 1 to ring values.  Unit and
        commutativity are checked on the stored coefficients and
        associativity is checked modulo degrees above the cap.
        """
        clean = {}
        for (i, j), c in coeffs.items():
            c = ring.coerce(c)
            if ring.is_zero(c):
                continue
            if i < 1 or j < 1:
                raise ValueError(
                    "coefficient a_%d%d violates F(x,0)=x; only i,j>=1 allowed" % (i, j))
            if i + j > degree_cap:
                raise ValueError(
                    "coefficient a_%d%d exceeds the degree cap %d" % (i, j, degree_cap))
            clean[(i, j)] = c
        for (i, j), c in clean.items():
            mirror = clean.get((j, i), ring.zero)
            if not ring.is_zero(ring.sub(c, mirror)):
                raise ValueError("law is not commutative: a_%d%d != a_%d%d" % (i, j, j, i))
        law = cls("generic", ring, clean, degree_cap)
        fail = law._associativity_defect()
        if fail is not None:
            raise ValueError("law is not associative modulo degree %d: "
                             "defect at %s" % (degree_cap, fail))
        return law

    def a(self, i: int, j: int):
        return self.coeffs.get((i, j), self.ring.zero)

    def specialize_beta(self, value) -> "FormalGroupLaw":
        """Substitute an exact rational for beta, landing over the rationals."""
        if self.ring is not LaurentRing:
            raise ValueError("only laws over Q[beta, beta^-1] can be specialized")
        value = Fraction(value)
        coeffs = {}
        for key, c in self.coeffs.items():
            v = LaurentRing.subs_beta(c, value)
            if v != 0:
                coeffs[key] = v
        return FormalGroupLaw("generic", RationalRing, coeffs, self.degree_cap)

    def _associativity_defect(self):
        """First obstruction of F(F(x,y),z) - F(x,F(y,z)) mod the cap, if any."""
        cap = self.degree_cap
        dummy = build_root_datum([[2, 0, 0], [0, 2, 0], [0, 0, 2]])
        alg = FormalGroupAlgebra(dummy, self, precision=cap)
        x, y, z = alg.gen(1), alg.gen(2), alg.gen(3)
        lhs = alg.formal_sum(alg.formal_sum(x, y), z)
        rhs = alg.formal_sum(x, alg.formal_sum(y, z))
        diff = lhs - rhs
        if diff.is_zero():
            return None
        return min(diff.terms, key=lambda e: (sum(e), e))

    def __repr__(self):
        return "FormalGroupLaw(%s)" % self.kind


def _deg(exp) -> int:
    return sum(exp)


class Series:
    """An element of the formal group algebra, truncated at ``precision``.

    ``terms`` maps exponent tuples over the fundamental-weight variables
    to nonzero ring coefficients; no stored term exceeds the precision,
    so equality of terms is structural.  ``character`` remembers, when
    set, that this series is the class x_lambda of that character, which
    lets the Weyl action work by relabeling.
    """

    __slots__ = ("algebra", "terms", "precision", "character")

    def __init__(self, algebra, terms, precision, character=None):
        self.algebra = algebra
        self.terms = terms
        self.precision = precision
        self.character = character

    # -- ring structure ---------------------------------------------------

    def __add__(self, other: "Series") -> "Series":
        alg = self.algebra
        prec = min(self.precision, other.precision)
        ring = alg.ring
        out = {e: c for e, c in self.terms.items() if _deg(e) <= prec}
        for e, c in other.terms.items():
            if _deg(e) > prec:
                continue
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = ring.add(s, c)
                if ring.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
        return Series(alg, out, prec)

    def __neg__(self) -> "Series":
        ring = self.algebra.ring
        return Series(self.algebra, {e: ring.neg(c) for e, c in self.terms.items()},
                      self.precision)

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def __mul__(self, other: "Series") -> "Series":
        alg = self.algebra
        prec = min(self.precision, other.precision)
        ring = alg.ring
        a = sorted(((_deg(e), e, c) for e, c in self.terms.items()))
        b = sorted(((_deg(e), e, c) for e, c in other.terms.items()))
        rmul, radd, rzero = ring.mul, ring.add, ring.is_zero
        out: dict = {}
        for da, ea, ca in a:
            if da > prec:
                break
            for db, eb, cb in b:
                if da + db > prec:
                    break
                e = tuple(x + y for x, y in zip(ea, eb))
                v = rmul(ca, cb)
                s = out.get(e)
                if s is None:
                    if not rzero(v):
                        out[e] = v
                else:
                    s = radd(s, v)
                    if rzero(s):
                        del out[e]
                    else:
                        out[e] = s
        return Series(alg, out, prec)

    def __pow__(self, k: int) -> "Series":
        if k < 0:
            raise ValueError("negative powers need invert_unit")
        result = self.algebra.one().truncate(self.precision)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def scale(self, c) -> "Series":
        """Multiply by a coefficient (int, Fraction, or ring value)."""
        ring = self.algebra.ring
        c = ring.coerce(c)
        if ring.is_zero(c):
            return Series(self.algebra, {}, self.precision)
        return Series(self.algebra,
                      {e: ring.mul(x, c) for e, x in self.terms.items()},
                      self.precision)

    # -- structure queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self):
        return self.terms.get((0,) * self.algebra.datum.rank, self.algebra.ring.zero)

    def lowest_degree(self) -> int | None:
        """Valuation of the series, or None for the zero series."""
        if not self.terms:
            return None
        return min(_deg(e) for e in self.terms)

    def truncate(self, precision: int) -> "Series":
        if precision >= self.precision:
            return self
        return Series(self.algebra,
                      {e: c for e, c in self.terms.items() if _deg(e) <= precision},
                      precision, self.character)

    def __eq__(self, other) -> bool:
        """Structural equality at the lower of the two precisions."""
        if not isinstance(other, Series):
            return NotImplemented
        prec = min(self.precision, other.precision)
        mine = {e: c for e, c in self.terms.items() if _deg(e) <= prec}
        theirs = {e: c for e, c in other.terms.items() if _deg(e) <= prec}
        return mine == theirs

    __hash__ = None

    # -- derived operations -------------------------------------------------

    def exact_div(self, divisor: "Series") -> "Series":
        return self.algebra.exact_divide(self, divisor)

    def invert(self) -> "Series":
        return self.algebra.invert_unit(self)

    def sorted_terms(self):
        """Terms in graded-lexicographic order (deterministic output)."""
        return sorted(self.terms.items(), key=lambda kv: (_deg(kv[0]), kv[0]))

    def __repr__(self):
        n = len(self.terms)
        return "Series(<%d terms>, precision=%d)" % (n, self.precision)


class FormalGroupAlgebra:
    """Working context: root datum + formal group law + precision.

    All series produced by one algebra instance share these three and may
    be combined freely.  The instance memoizes character classes, products
    of root classes, and monomial images under Weyl elements; nothing in
    the caches is ever mutated after creation.
    """

    def __init__(self, datum: RootDatum, fgl: FormalGroupLaw,
                 precision: int = DEFAULT_PRECISION):
        if precision < 0:
            raise ValueError("precision must be >= 0")
        self.datum = datum
        self.fgl = fgl
        self.ring = fgl.ring
        self.precision = precision
        self._zero_exp = (0,) * datum.rank
        self._x_cache: dict[LatticeVector, Series] = {}
        self._prod_cache: dict[tuple, Series] = {}
        self._mono_image: dict[tuple, dict] = {}
        self._theta_cache: dict = {}

    # -- constants ---------------------------------------------------------

    def zero(self) -> Series:
        return Series(self, {}, self.precision)

    def one(self) -> Series:
        return self.constant(1)

    def constant(self, c) -> Series:
        c = self.ring.coerce(c)
        if self.ring.is_zero(c):
            return self.zero()
        return Series(self, {self._zero_exp: c}, self.precision)

    def gen(self, i: int) -> Series:
        """The variable x_{w_i} attached to the i-th fundamental weight."""
        return self.x_of(self.datum.fundamental_weight(i))

    # -- the formal group law on series -------------------------------------

    def _law_precision(self, *series: Series) -> int:
        prec = min(s.precision for s in series)
        if self.fgl.degree_cap is not None:
            prec = min(prec, self.fgl.degree_cap)
        return prec

    def formal_sum(self, s: Series, t: Series) -> Series:
        """F(s, t) for series with zero constant term."""
        for arg in (s, t):
            if not self.ring.is_zero(arg.constant_term()):
                raise ValueError("formal_sum needs arguments in the augmentation ideal")
        prec = self._law_precision(s, t)
        s, t = s.truncate(prec), t.truncate(prec)
        acc = s + t
        if not self.fgl.coeffs:
            return acc
        spow: dict[int, Series] = {1: s}
        tpow: dict[int, Series] = {1: t}
        for (i, j) in sorted(self.fgl.coeffs):
            # terms of degree i+j above the precision contribute nothing
            if i + j > prec:
                continue
            a = self.fgl.coeffs[(i, j)]
            si = spow.get(i)
            if si is None:
                si = spow[i - 1] * s if i - 1 in spow else s ** i
                spow[i] = si
            tj = tpow.get(j)
            if tj is None:
                tj = tpow[j - 1] * t if j - 1 in tpow else t ** j
                tpow[j] = tj
            acc = acc + (si * tj).scale(a)
        return acc

    def formal_inverse(self, s: Series) -> Series:
        """The series i(s) with F(s, i(s)) = 0, found degree by degree."""
        if not self.ring.is_zero(s.constant_term()):
            raise ValueError("formal_inverse needs a series in the augmentation ideal")
        prec = self._law_precision(s)
        s = s.truncate(prec)
        inv = -s
        for _ in range(prec):
            defect = self.formal_sum(s, inv)
            if defect.is_zero():
                break
            inv = inv - defect
        return inv

    def formal_multiple(self, s: Series, m: int) -> Series:
        """The m-fold formal sum [m](s); negative m via the formal inverse."""
        if m == 0:
            return self.zero().truncate(self._law_precision(s))
        if m < 0:
            return self.formal_inverse(self.formal_multiple(s, -m))
        acc = s
        for _ in range(m - 1):
            acc = self.formal_sum(acc, s)
        return acc

    def x_of(self, lam: Sequence[int]) -> Series:
        """The class x_lambda of a character, memoized.

        lambda = sum m_i w_i is assembled as the iterated formal sum of
        the multiples [m_i] x_{w_i}.
        """
        lam = tuple(int(x) for x in lam)
        if len(lam) != self.datum.rank:
            raise ValueError("character has wrong rank")
        cached = self._x_cache.get(lam)
        if cached is not None:
            return cached
        prec = self.precision if self.fgl.degree_cap is None \
            else min(self.precision, self.fgl.degree_cap)
        if all(m == 0 for m in lam):
            out = Series(self, {}, prec, character=lam)
        else:
            nonzero = [i for i, m in enumerate(lam) if m != 0]
            i0 = nonzero[0]
            if len(nonzero) == 1 and lam[i0] == 1:
                exp = tuple(1 if c == i0 else 0 for c in range(self.datum.rank))
                out = Series(self, {exp: self.ring.one}, prec, character=lam)
            else:
                acc = None
                for i in nonzero:
                    unit = self.x_of(self.datum.fundamental_weight(i + 1))
                    part = self.formal_multiple(unit, lam[i])
                    acc = part if acc is None else self.formal_sum(acc, part)
                out = Series(self, acc.terms, acc.precision, character=lam)
        self._x_cache[lam] = out
        return out

    def root_product(self, roots: Iterable[Sequence[int]]) -> Series:
        """Product of x_alpha over a multiset of characters, memoized."""
        key = tuple(sorted(tuple(int(x) for x in r) for r in roots))
        cached = self._prod_cache.get(key)
        if cached is not None:
            return cached
        out = self.one()
        for r in key:
            out = out * self.x_of(r)
        self._prod_cache[key] = out
        return out

    # -- Weyl action ---------------------------------------------------------

    def _gen_image(self, w: WeylElement, i: int) -> Series:
        return self.x_of(w.apply(self.datum.fundamental_weight(i)))

    def _monomial_image(self, w: WeylElement, exp: tuple) -> Series:
        per = self._mono_image.get(w.matrix)
        if per is None:
            per = self._mono_image[w.matrix] = {}
        s = per.get(exp)
        if s is not None:
            return s
        i = next((k for k, e in enumerate(exp) if e), None)
        if i is None:
            s = self.one()
        else:
            prev = tuple(e - 1 if k == i else e for k, e in enumerate(exp))
            s = self._monomial_image(w, prev) * self._gen_image(w, i + 1)
        per[exp] = s
        return s

    def weyl_act(self, w: WeylElement, s: Series) -> Series:
        """The ring endomorphism x_lambda -> x_{w(lambda)} applied to s."""
        if s.character is not None:
            return self.x_of(w.apply(s.character)).truncate(s.precision)
        prec = self._law_precision(s)
        ring = self.ring
        radd, rmul, rzero = ring.add, ring.mul, ring.is_zero
        out: dict = {}
        for exp, c in s.terms.items():
            img = self._monomial_image(w, exp)
            for e2, c2 in img.terms.items():
                if _deg(e2) > prec:
                    continue
                v = rmul(c, c2)
                acc = out.get(e2)
                if acc is None:
                    if not rzero(v):
                        out[e2] = v
                else:
                    acc = radd(acc, v)
                    if rzero(acc):
                        del out[e2]
                    else:
                        out[e2] = acc
        return Series(self, out, prec)

    # -- division and units ---------------------------------------------------

    def exact_divide(self, s: Series, d: Series) -> Series:
        """Exact quotient q with s = q*d, by graded-lexicographic elimination.

        Raises NotDivisible (with the first obstructing monomial) when no
        exact quotient exists, and PrecisionExhausted when the quotient
        precision would drop below zero.
        """
        if d.is_zero():
            raise ZeroDivisionError("division by the zero series")
        prec = min(s.precision, d.precision)
        delta = d.lowest_degree()
        out_prec = prec - delta
        if out_prec < 0:
            raise PrecisionExhausted(
                "dividing at precision %d by a series of valuation %d" % (prec, delta))
        ring = self.ring
        lead_exp = min((e for e in d.terms if _deg(e) == delta),
                       key=lambda e: (_deg(e), e))
        lead_coeff = d.terms[lead_exp]
        d_terms = sorted(((_deg(e), e, c) for e, c in d.terms.items()))
        rem = {e: c for e, c in s.terms.items() if _deg(e) <= prec}
        quot: dict = {}
        while rem:
            e = min(rem, key=lambda e: (_deg(e), e))
            de = _deg(e)
            if de > prec:
                break
            q_exp = tuple(x - y for x, y in zip(e, lead_exp))
            if any(x < 0 for x in q_exp):
                raise NotDivisible(
                    "monomial %s is not divisible by the divisor's lead %s"
                    % (e, lead_exp), monomial=e, reason="monomial")
            q_c = ring.divide_exact(rem[e], lead_coeff)
            if q_c is None:
                raise NotDivisible(
                    "coefficient at %s does not divide exactly" % (e,),
                    monomial=e, reason="coefficient")
            quot[q_exp] = q_c
            for dd, de2, dc in d_terms:
                ne = tuple(x + y for x, y in zip(q_exp, de2))
                if _deg(ne) > prec:
                    continue
                v = ring.mul(q_c, dc)
                acc = rem.get(ne)
                if acc is None:
                    rem[ne] = ring.neg(v)
                else:
                    acc = ring.sub(acc, v)
                    if ring.is_zero(acc):
                        del rem[ne]
                    else:
                        rem[ne] = acc
        return Series(self, quot, out_prec)

    def invert_unit(self, s: Series) -> Series:
        """Multiplicative inverse of a series whose constant term is a unit."""
        c0 = s.constant_term()
        if not self.ring.is_unit(c0):
            raise ValueError("constant term %r is not a unit of the coefficient ring"
                             % (c0,))
        u = self.constant(self.ring.invert_unit(c0)).truncate(s.precision)
        one = self.one().truncate(s.precision)
        t = one - s.scale(self.ring.invert_unit(c0))
        acc = one
        for _ in range(s.precision):
            acc = one + t * acc
        return acc * u

    def __repr__(self):
        return "FormalGroupAlgebra(%s, %s, N=%d)" % (
            self.datum.name or "custom", self.fgl.kind, self.precision)
