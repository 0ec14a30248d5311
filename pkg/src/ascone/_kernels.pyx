# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Freudenthal recursion over a dense dominant-weight table."""
import numpy as np
from libc.stdint cimport int64_t


cdef inline bint _to_dominant(int64_t* w, const int64_t[:, ::1] cartan, int r) noexcept nogil:
    cdef int i, j
    cdef int64_t c
    cdef bint moved = True
    while moved:
        moved = False
        for i in range(r):
            if w[i] < 0:
                c = w[i]
                for j in range(r):
                    w[j] -= c * cartan[i, j]
                moved = True
                break
    return True


def to_dominant(w, cartan):
    cdef int r = len(w)
    arr = np.array(w, dtype=np.int64)
    cdef int64_t[::1] buf = arr
    cdef const int64_t[:, ::1] cm = np.ascontiguousarray(cartan, dtype=np.int64)
    _to_dominant(&buf[0], cm, r)
    return tuple(int(x) for x in arr)


def freudenthal(cartan, gram, posroots, doms):
    cdef int r = len(cartan)
    cdef int n = len(doms)
    cdef int p = len(posroots)
    cdef const int64_t[:, ::1] cm = np.ascontiguousarray(cartan, dtype=np.int64)
    cdef const int64_t[:, ::1] gm = np.ascontiguousarray(gram, dtype=np.int64)
    cdef const int64_t[:, ::1] roots = np.ascontiguousarray(posroots, dtype=np.int64)
    cdef const int64_t[:, ::1] dw = np.ascontiguousarray(doms, dtype=np.int64)
    cdef int64_t[:, ::1] groots = np.zeros((p, r), dtype=np.int64)
    cdef int64_t[::1] dims = np.zeros(r, dtype=np.int64)
    cdef int64_t[::1] strides = np.zeros(r, dtype=np.int64)
    cdef int64_t[::1] mult = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] nu = np.zeros(r, dtype=np.int64)
    cdef int64_t[::1] tmp = np.zeros(r, dtype=np.int64)
    cdef int i, j, k, a, idx
    cdef int64_t s, top, den, num, size, pos, val
    cdef bint inside

    for a in range(p):
        for i in range(r):
            val = 0
            for j in range(r):
                val += gm[i, j] * roots[a, j]
            groots[a, i] = val
    for i in range(r):
        val = 0
        for k in range(n):
            if dw[k, i] > val:
                val = dw[k, i]
        dims[i] = val + 1
    size = 1
    for i in range(r - 1, -1, -1):
        strides[i] = size
        size *= dims[i]
    table_np = np.full(size, -1, dtype=np.int64)
    cdef int64_t[::1] table = table_np
    for k in range(n):
        pos = 0
        for i in range(r):
            pos += dw[k, i] * strides[i]
        table[pos] = k

    top = 0
    for i in range(r):
        for j in range(r):
            top += (dw[0, i] + 1) * gm[i, j] * (dw[0, j] + 1)
    mult[0] = 1
    with nogil:
        for k in range(1, n):
            s = 0
            for a in range(p):
                for i in range(r):
                    nu[i] = dw[k, i]
                while True:
                    for i in range(r):
                        nu[i] += roots[a, i]
                        tmp[i] = nu[i]
                    _to_dominant(&tmp[0], cm, r)
                    inside = True
                    pos = 0
                    for i in range(r):
                        if tmp[i] >= dims[i]:
                            inside = False
                            break
                        pos += tmp[i] * strides[i]
                    if not inside:
                        break
                    idx = <int> table[pos]
                    if idx < 0:
                        break
                    val = 0
                    for i in range(r):
                        val += nu[i] * groots[a, i]
                    s += mult[idx] * val
            den = top
            for i in range(r):
                for j in range(r):
                    den -= (dw[k, i] + 1) * gm[i, j] * (dw[k, j] + 1)
            num = 2 * s
            if den <= 0 or num % den != 0:
                mult[k] = -1
            else:
                mult[k] = num // den
    out = [int(x) for x in mult]
    if any(x < 0 for x in out):
        raise ArithmeticError("Freudenthal recursion produced a non-integer multiplicity")
    return out


def alternating_pairing(pkeys, psigns, lkeys, lvals, rkeys, rvals):
    cdef const int64_t[::1] pk = np.ascontiguousarray(pkeys, dtype=np.int64)
    cdef const int64_t[::1] ps = np.ascontiguousarray(psigns, dtype=np.int64)
    cdef const int64_t[::1] lk = np.ascontiguousarray(lkeys, dtype=np.int64)
    cdef const int64_t[::1] lv = np.ascontiguousarray(lvals, dtype=np.int64)
    order = np.argsort(np.asarray(rkeys, dtype=np.int64), kind="stable")
    cdef const int64_t[::1] rk = np.ascontiguousarray(np.asarray(rkeys, dtype=np.int64)[order])
    cdef const int64_t[::1] rv = np.ascontiguousarray(np.asarray(rvals, dtype=np.int64)[order])
    cdef Py_ssize_t np_ = pk.shape[0], nl = lk.shape[0], nr = rk.shape[0]
    cdef Py_ssize_t a, j, lo, hi, mid
    cdef int64_t key, acc, total = 0
    with nogil:
        for a in range(np_):
            acc = 0
            for j in range(nl):
                key = pk[a] - lk[j]
                lo = 0
                hi = nr
                while lo < hi:
                    mid = (lo + hi) >> 1
                    if rk[mid] < key:
                        lo = mid + 1
                    else:
                        hi = mid
                if lo < nr and rk[lo] == key:
                    acc += lv[j] * rv[lo]
            total += ps[a] * acc
    return int(total)
