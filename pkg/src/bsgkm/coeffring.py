"""Exact coefficient rings for the formal group algebra.

Two rings are supported:

* ``RationalRing`` -- plain ``fractions.Fraction`` values (additive and
  generic formal group laws);
* ``LaurentRing`` -- Laurent polynomials in one parameter ``beta`` with
  rational coefficients, stored as canonical ``{power: Fraction}`` dicts
  with no zero entries (the multiplicative law lives over this ring).

No floating point anywhere.  Ring values are treated as immutable; all
functions return fresh objects.
"""

from __future__ import annotations

from fractions import Fraction


class RationalRing:
    """The field of exact rationals."""

    name = "rational"

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def coerce(x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError("cannot coerce %r into the rational ring" % (x,))

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def is_zero(a):
        return a == 0

    @staticmethod
    def divide_exact(a, b):
        """a/b, or None when b does not divide a (only b = 0 here)."""
        if b == 0:
            return None
        return a / b

    @staticmethod
    def is_unit(a):
        return a != 0

    @staticmethod
    def invert_unit(a):
        if a == 0:
            raise ZeroDivisionError("0 is not a unit")
        return 1 / a

    @staticmethod
    def render(a):
        return str(a)

    @staticmethod
    def to_json(a):
        return str(a)

    @staticmethod
    def from_json(obj):
        if isinstance(obj, (int, str)):
            return Fraction(obj)
        raise ValueError("expected a rational string, got %r" % (obj,))


class LaurentRing:
    """Laurent polynomials Q[beta, beta^-1].

    Values are dicts mapping integer powers of beta to nonzero Fractions;
    the zero element is the empty dict.  Units are exactly the monomials.
    """

    name = "laurent-beta"

    zero: dict = {}
    one = {0: Fraction(1)}

    @staticmethod
    def coerce(x):
        if isinstance(x, dict):
            return {p: Fraction(c) for p, c in x.items() if c != 0}
        if isinstance(x, (int, str)):
            x = Fraction(x)
        if isinstance(x, Fraction):
            return {0: x} if x != 0 else {}
        raise TypeError("cannot coerce %r into Q[beta, beta^-1]" % (x,))

    @staticmethod
    def add(a, b):
        out = dict(a)
        for p, c in b.items():
            s = out.get(p)
            if s is None:
                out[p] = c
            else:
                s = s + c
                if s == 0:
                    del out[p]
                else:
                    out[p] = s
        return out

    @staticmethod
    def sub(a, b):
        out = dict(a)
        for p, c in b.items():
            s = out.get(p, _F0) - c
            if s == 0:
                out.pop(p, None)
            else:
                out[p] = s
        return out

    @staticmethod
    def mul(a, b):
        if not a or not b:
            return {}
        out: dict = {}
        for pa, ca in a.items():
            for pb, cb in b.items():
                p = pa + pb
                s = out.get(p)
                v = ca * cb
                if s is None:
                    out[p] = v
                else:
                    s = s + v
                    if s == 0:
                        del out[p]
                    else:
                        out[p] = s
        return out

    @staticmethod
    def neg(a):
        return {p: -c for p, c in a.items()}

    @staticmethod
    def is_zero(a):
        return not a

    @staticmethod
    def divide_exact(a, b):
        """Exact quotient a/b in Q[beta, beta^-1], or None."""
        if not b:
            return None
        if not a:
            return {}
        if len(b) == 1:
            (p, c), = b.items()
            return {q - p: x / c for q, x in a.items()}
        # shift both to ordinary polynomials and long-divide
        amin, amax = min(a), max(a)
        bmin, bmax = min(b), max(b)
        da, db = amax - amin, bmax - bmin
        if da < db:
            return None
        num = [a.get(amin + k, _F0) for k in range(da + 1)]
        den = [b.get(bmin + k, _F0) for k in range(db + 1)]
        lead = den[-1]
        quot = [_F0] * (da - db + 1)
        for k in range(da - db, -1, -1):
            c = num[db + k] / lead
            quot[k] = c
            if c != 0:
                for j in range(db + 1):
                    num[k + j] -= c * den[j]
        if any(x != 0 for x in num):
            return None
        shift = amin - bmin
        return {k + shift: c for k, c in enumerate(quot) if c != 0}

    @staticmethod
    def is_unit(a):
        return len(a) == 1

    @staticmethod
    def invert_unit(a):
        if len(a) != 1:
            raise ZeroDivisionError("%r is not a unit of Q[beta, beta^-1]" % (a,))
        (p, c), = a.items()
        return {-p: 1 / c}

    @staticmethod
    def subs_beta(a, value) -> Fraction:
        """Specialize beta to an exact rational (power -1 needs value != 0)."""
        value = Fraction(value)
        total = Fraction(0)
        for p, c in a.items():
            total += c * value ** p
        return total

    @staticmethod
    def render(a):
        if not a:
            return "0"
        parts = []
        for p in sorted(a):
            c = a[p]
            if p == 0:
                parts.append(str(c))
                continue
            power = "β" if p == 1 else "β^%d" % p
            if c == 1:
                parts.append(power)
            elif c == -1:
                parts.append("-" + power)
            else:
                parts.append("%s*%s" % (c, power))
        out = parts[0]
        for part in parts[1:]:
            out += " - " + part[1:] if part.startswith("-") else " + " + part
        return out

    @staticmethod
    def to_json(a):
        return {"beta_terms": [[p, str(a[p])] for p in sorted(a)]}

    @staticmethod
    def from_json(obj):
        if isinstance(obj, dict) and "beta_terms" in obj:
            out = {}
            for p, c in obj["beta_terms"]:
                c = Fraction(c)
                if c != 0:
                    out[int(p)] = c
            return out
        if isinstance(obj, (int, str)):
            return LaurentRing.coerce(Fraction(obj))
        raise ValueError("expected beta_terms object, got %r" % (obj,))


_F0 = Fraction(0)


def coefficient_from_json(ring, obj):
    return ring.from_json(obj)


def coefficient_to_json(ring, value):
    return ring.to_json(value)
