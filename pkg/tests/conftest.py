import random

import pytest

from bsgkm.fga import FormalGroupAlgebra, FormalGroupLaw
from bsgkm.rootdata import named_root_datum

_DATA = {}
_ALGEBRAS = {}


def datum(name):
    if name not in _DATA:
        _DATA[name] = named_root_datum(name)
    return _DATA[name]


def make_law(kind):
    if kind == "additive":
        return FormalGroupLaw.additive()
    if kind == "multiplicative":
        return FormalGroupLaw.multiplicative()
    raise ValueError(kind)


def algebra(name, kind, precision=8):
    """Shared algebra instances so caches survive across tests."""
    key = (name, kind, precision)
    if key not in _ALGEBRAS:
        _ALGEBRAS[key] = FormalGroupAlgebra(datum(name), make_law(kind), precision)
    return _ALGEBRAS[key]


def random_series(alg, rng: random.Random, degree=3, n_terms=4):
    """A reproducible series with small integer coefficients."""
    rank = alg.datum.rank
    out = alg.zero()
    for _ in range(n_terms):
        exp = [0] * rank
        for _ in range(rng.randint(0, degree)):
            exp[rng.randrange(rank)] += 1
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        mono = alg.one()
        for i, e in enumerate(exp):
            for _ in range(e):
                mono = mono * alg.gen(i + 1)
        out = out + mono.scale(c)
    return out


@pytest.fixture
def rng():
    return random.Random(20240)
