"""Pure-Python hot kernels (reference implementation and fallback).

All inputs are integer data in Dynkin-label coordinates of one simple
factor.  ``gram`` is the fundamental-weight Gram matrix scaled to integers.
"""
from __future__ import annotations


def to_dominant(w, cartan):
    w = list(w)
    r = len(w)
    while True:
        for i in range(r):
            if w[i] < 0:
                c = w[i]
                row = cartan[i]
                for j in range(r):
                    w[j] -= c * row[j]
                break
        else:
            return tuple(w)


def _pair(u, v, gram):
    r = len(u)
    return sum(u[i] * gram[i][j] * v[j] for i in range(r) for j in range(r) if u[i] and v[j])


def freudenthal(cartan, gram, posroots, doms):
    """Multiplicities of the dominant weights ``doms`` of ``V_doms[0]``.

    ``doms`` must list every dominant weight of the module, sorted by
    nondecreasing depth below the highest weight ``doms[0]``.
    """
    r = len(cartan)
    index = {tuple(d): k for k, d in enumerate(doms)}
    lam = doms[0]
    lr = tuple(a + 1 for a in lam)
    top = _pair(lr, lr, gram)
    groots = [tuple(sum(gram[i][j] * a[j] for j in range(r)) for i in range(r)) for a in posroots]
    mult = [0] * len(doms)
    mult[0] = 1
    for k in range(1, len(doms)):
        mu = doms[k]
        s = 0
        for a, ga in zip(posroots, groots):
            nu = list(mu)
            while True:
                for j in range(r):
                    nu[j] += a[j]
                idx = index.get(to_dominant(nu, cartan))
                if idx is None:
                    break
                s += mult[idx] * sum(nu[j] * ga[j] for j in range(r))
        mr = tuple(x + 1 for x in mu)
        den = top - _pair(mr, mr, gram)
        num = 2 * s
        if den <= 0 or num % den:
            raise ArithmeticError("Freudenthal recursion produced a non-integer multiplicity")
        mult[k] = num // den
    return mult


def alternating_pairing(pkeys, psigns, lkeys, lvals, rkeys, rvals):
    """``sum_p sign_p sum_j lvals[j] * R[pkeys[p] - lkeys[j]]``.

    ``R`` is the sparse map ``rkeys -> rvals`` (keys are encoded weights).
    """
    table = dict(zip(rkeys, rvals))
    total = 0
    for pk, s in zip(pkeys, psigns):
        acc = 0
        for lk, lv in zip(lkeys, lvals):
            v = table.get(pk - lk)
            if v:
                acc += lv * v
        total += s * acc
    return total
