from __future__ import annotations

import itertools
from fractions import Fraction

from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def brute_common_point(g1, g2, coeff_max: int = 6):
    """A nonzero integer point in both Z>=0-spans with coefficients <= coeff_max, else None."""

    def sums(gens):
        out = {}
        for cs in itertools.product(range(coeff_max + 1), repeat=len(gens)):
            v = tuple(sum(c * g[i] for c, g in zip(cs, gens)) for i in range(len(gens[0])))
            out.setdefault(v, cs)
        return out

    s1, s2 = sums(g1), sums(g2)
    for v in s1:
        if any(v) and v in s2:
            return v
    return None


def frac_vec(xs):
    return tuple(Fraction(x) for x in xs)
