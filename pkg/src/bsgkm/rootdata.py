"""Root systems, weight lattice, and Weyl groups from a Cartan matrix.

Characters of the torus live in the weight lattice and are represented
throughout as integer tuples in fundamental-weight coordinates, so the
pairing of a character with the i-th simple coroot is plain coordinate
extraction.  With that convention the j-th simple root is the j-th
*column* of the Cartan matrix.

Everything here is exact integer arithmetic; Weyl elements are compared
and hashed by their matrix (words are only kept as a witness, since the
braid relations make them non-canonical).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

# A character in fundamental-weight coordinates.
LatticeVector = tuple[int, ...]

ROOT_CLOSURE_BOUND = 10000
WEYL_SIZE_BOUND = 1152


def vadd(a: LatticeVector, b: LatticeVector) -> LatticeVector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: LatticeVector, b: LatticeVector) -> LatticeVector:
    return tuple(x - y for x, y in zip(a, b))


def vneg(a: LatticeVector) -> LatticeVector:
    return tuple(-x for x in a)


def vscale(c: int, a: LatticeVector) -> LatticeVector:
    return tuple(c * x for x in a)


class WeylElement:
    """An element of the Weyl group, canonically a lattice automorphism.

    `word` is an optional witness (1-based simple indices) recording how
    the element was produced; it plays no role in equality or hashing.
    """

    __slots__ = ("matrix", "word")

    def __init__(self, matrix: tuple[tuple[int, ...], ...], word: tuple[int, ...] | None = None):
        self.matrix = matrix
        self.word = word

    def apply(self, v: LatticeVector) -> LatticeVector:
        m = self.matrix
        if len(v) != len(m):
            raise ValueError("dimension mismatch")
        return tuple(sum(row[c] * v[c] for c in range(len(v))) for row in m)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        a, b = self.matrix, other.matrix
        n = len(a)
        prod = tuple(
            tuple(sum(a[r][k] * b[k][c] for k in range(n)) for c in range(n))
            for r in range(n)
        )
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return WeylElement(prod, word)

    def inverse(self) -> "WeylElement":
        # Integer matrix with integer inverse; solve by Gauss over Q and
        # check integrality, which also guards against corrupt input.
        n = len(self.matrix)
        aug = [[Fraction(self.matrix[r][c]) for c in range(n)]
               + [Fraction(1 if c == r else 0) for c in range(n)]
               for r in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if aug[r][col] != 0)
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [x * inv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        inv_rows = []
        for r in range(n):
            row = []
            for c in range(n):
                x = aug[r][n + c]
                if x.denominator != 1:
                    raise ValueError("matrix is not invertible over the integers")
                row.append(int(x))
            inv_rows.append(tuple(row))
        word = tuple(reversed(self.word)) if self.word is not None else None
        return WeylElement(tuple(inv_rows), word)

    def is_identity(self) -> bool:
        n = len(self.matrix)
        return all(self.matrix[r][c] == (1 if r == c else 0)
                   for r in range(n) for c in range(n))

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        if self.word is not None:
            return "WeylElement(word=%s)" % (list(self.word),)
        return "WeylElement(matrix=%s)" % (self.matrix,)


class _Root:
    """Internal per-root record.

    weight:  the root in fundamental-weight coordinates
    coords:  the root in simple-root coordinates (all >=0 or all <=0)
    coroot:  row vector of the functional <., alpha^vee> on weight coords
    """

    __slots__ = ("weight", "coords", "coroot")

    def __init__(self, weight, coords, coroot):
        self.weight = weight
        self.coords = coords
        self.coroot = coroot


class RootDatum:
    """A finite root system with its Weyl group action on characters.

    Use :func:`build_root_datum` or :func:`named_root_datum` instead of
    constructing this directly.
    """

    def __init__(self, cartan: tuple[tuple[int, ...], ...], name: str | None = None):
        self.cartan = cartan
        self.rank = len(cartan)
        self.name = name
        self.simple_roots: list[LatticeVector] = [
            tuple(cartan[r][j] for r in range(self.rank)) for j in range(self.rank)
        ]
        self._roots: dict[LatticeVector, _Root] = {}
        self._enumerate_roots()
        self.positive_roots: list[LatticeVector] = sorted(
            r.weight for r in self._roots.values() if all(c >= 0 for c in r.coords)
        )
        self.negative_roots: list[LatticeVector] = [vneg(a) for a in self.positive_roots]
        self._simple_refl = [self._reflection_matrix(self._roots[a]) for a in self.simple_roots]
        self._weyl: list[WeylElement] | None = None
        self._weyl_index: dict[tuple, WeylElement] = {}

    # -- construction ---------------------------------------------------

    def _enumerate_roots(self):
        n = self.rank
        frontier = []
        for j in range(n):
            rec = _Root(
                self.simple_roots[j],
                tuple(1 if c == j else 0 for c in range(n)),
                tuple(1 if c == j else 0 for c in range(n)),
            )
            self._roots[rec.weight] = rec
            frontier.append(rec)
        while frontier:
            nxt = []
            for rec in frontier:
                for i in range(n):
                    m = rec.weight[i]
                    w = vsub(rec.weight, vscale(m, self.simple_roots[i]))
                    if w in self._roots:
                        continue
                    coords = tuple(
                        rec.coords[c] - (m if c == i else 0) for c in range(n)
                    )
                    # <., (s_i a)^vee> = <s_i(.), a^vee>
                    si = self._simple_matrix(i)
                    coroot = tuple(
                        sum(rec.coroot[r] * si[r][c] for r in range(n)) for c in range(n)
                    )
                    new = _Root(w, coords, coroot)
                    self._roots[w] = new
                    nxt.append(new)
                    if len(self._roots) > ROOT_CLOSURE_BOUND:
                        raise ValueError(
                            "root closure exceeded %d elements; "
                            "the Cartan matrix is not of finite type" % ROOT_CLOSURE_BOUND
                        )
            frontier = nxt
        # include negatives of whatever the orbit produced
        for rec in list(self._roots.values()):
            w = vneg(rec.weight)
            if w not in self._roots:
                self._roots[w] = _Root(w, vneg(rec.coords), vneg(rec.coroot))

    def _simple_matrix(self, i: int) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        col = self.simple_roots[i]
        return tuple(
            tuple((1 if r == c else 0) - (col[r] if c == i else 0) for c in range(n))
            for r in range(n)
        )

    def _reflection_matrix(self, rec: _Root) -> WeylElement:
        n = self.rank
        a, phi = rec.weight, rec.coroot
        mat = tuple(
            tuple((1 if r == c else 0) - a[r] * phi[c] for c in range(n))
            for r in range(n)
        )
        return WeylElement(mat)

    # -- queries ---------------------------------------------------------

    @property
    def roots(self) -> list[LatticeVector]:
        return self.positive_roots + self.negative_roots

    def is_root(self, v: LatticeVector) -> bool:
        return tuple(v) in self._roots

    def root_coords(self, v: LatticeVector) -> tuple[int, ...]:
        """Expansion of a root in the simple-root basis."""
        rec = self._roots.get(tuple(v))
        if rec is None:
            raise ValueError("%s is not a root" % (v,))
        return rec.coords

    def coroot_pairing(self, lam: LatticeVector, root: LatticeVector) -> int:
        """<lam, alpha^vee> for alpha any root."""
        rec = self._roots.get(tuple(root))
        if rec is None:
            raise ValueError("%s is not a root" % (root,))
        return sum(p * x for p, x in zip(rec.coroot, lam))

    def fundamental_weight(self, i: int) -> LatticeVector:
        self._check_index(i)
        return tuple(1 if c == i - 1 else 0 for c in range(self.rank))

    def simple_root(self, i: int) -> LatticeVector:
        self._check_index(i)
        return self.simple_roots[i - 1]

    def _check_index(self, i: int):
        if not 1 <= i <= self.rank:
            raise ValueError("simple index %r out of range 1..%d" % (i, self.rank))

    # -- Weyl group -------------------------------------------------------

    def reflect(self, i: int, lam: LatticeVector) -> LatticeVector:
        """Simple reflection: lam - <lam, alpha_i^vee> alpha_i (i is 1-based)."""
        self._check_index(i)
        return vsub(tuple(lam), vscale(lam[i - 1], self.simple_roots[i - 1]))

    def simple_reflection(self, i: int) -> WeylElement:
        self._check_index(i)
        return WeylElement(self._simple_refl[i - 1].matrix, (i,))

    def reflection(self, root: LatticeVector) -> WeylElement:
        """The reflection attached to an arbitrary root."""
        rec = self._roots.get(tuple(root))
        if rec is None:
            raise ValueError("%s is not a root" % (root,))
        return self._reflection_matrix(rec)

    def identity(self) -> WeylElement:
        n = self.rank
        return WeylElement(
            tuple(tuple(1 if r == c else 0 for c in range(n)) for r in range(n)), ()
        )

    def weyl_from_word(self, word: Iterable[int]) -> WeylElement:
        """Compose simple reflections; the word is stored as a witness."""
        w = self.identity()
        word = tuple(word)
        for i in word:
            self._check_index(i)
            w = w * self.simple_reflection(i)
        return WeylElement(w.matrix, word)

    def weyl_group(self, bound: int = WEYL_SIZE_BOUND) -> list[WeylElement]:
        """All Weyl elements, breadth-first by word length (cached)."""
        if self._weyl is not None:
            return self._weyl
        e = self.identity()
        seen = {e.matrix: e}
        order = [e]
        frontier = [e]
        while frontier:
            nxt = []
            for w in frontier:
                for i in range(1, self.rank + 1):
                    u = w * self.simple_reflection(i)
                    if u.matrix not in seen:
                        seen[u.matrix] = u
                        order.append(u)
                        nxt.append(u)
                        if len(order) > bound:
                            raise ValueError(
                                "Weyl group exceeds %d elements" % bound
                            )
            # deterministic order inside each length level
            nxt.sort(key=lambda w: w.matrix)
            order.sort(key=lambda w: (len(w.word), w.matrix))
            frontier = nxt
        self._weyl = order
        self._weyl_index = {w.matrix: w for w in order}
        return order

    def canonical_weyl(self, w: WeylElement) -> WeylElement:
        """The enumeration representative with the same matrix."""
        if not self._weyl_index:
            self.weyl_group()
        out = self._weyl_index.get(w.matrix)
        if out is None:
            raise ValueError("element does not belong to the Weyl group")
        return out

    def __repr__(self) -> str:
        return "RootDatum(%s, rank=%d, positive=%d)" % (
            self.name or "custom", self.rank, len(self.positive_roots))


def _validate_cartan(cartan: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    n = len(cartan)
    if n == 0:
        raise ValueError("empty Cartan matrix")
    rows = []
    for r, row in enumerate(cartan):
        if len(row) != n:
            raise ValueError("Cartan matrix must be square")
        for c, x in enumerate(row):
            if x != int(x):
                raise ValueError("Cartan entries must be integers")
            x = int(x)
            if r == c and x != 2:
                raise ValueError("Cartan diagonal must equal 2")
            if r != c and x > 0:
                raise ValueError("off-diagonal Cartan entries must be <= 0")
        rows.append(tuple(int(x) for x in row))
    for r in range(n):
        for c in range(n):
            if r != c and (rows[r][c] == 0) != (rows[c][r] == 0):
                raise ValueError("Cartan zero pattern must be symmetric")
    # A singular Cartan matrix (affine type) makes fundamental-weight
    # coordinates unfaithful, so it must be rejected up front; indefinite
    # types are caught later by the root-closure bound.
    if _det(rows) == 0:
        raise ValueError("Cartan matrix is singular (not of finite type)")
    return tuple(rows)


def _det(rows: Sequence[Sequence[int]]) -> Fraction:
    n = len(rows)
    m = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


def build_root_datum(cartan: Sequence[Sequence[int]], name: str | None = None) -> RootDatum:
    """Build the full root datum of a finite-type Cartan matrix."""
    return RootDatum(_validate_cartan(cartan), name=name)


_NAMED_CARTANS = {
    "A1": [[2]],
    "A2": [[2, -1], [-1, 2]],
    "A3": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    "B2": [[2, -1], [-2, 2]],
    "C2": [[2, -1], [-2, 2]],
    "G2": [[2, -1], [-3, 2]],
}


def named_root_datum(name: str) -> RootDatum:
    """One of the built-in types A1, A2, A3, B2, C2 (=B2), G2."""
    key = name.upper()
    if key not in _NAMED_CARTANS:
        raise ValueError("unknown root datum %r (try %s)"
                         % (name, ", ".join(sorted(_NAMED_CARTANS))))
    return build_root_datum(_NAMED_CARTANS[key], name=key)
