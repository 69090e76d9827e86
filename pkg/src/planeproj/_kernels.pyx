# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels.  Semantics are pinned by ``_pure.py``."""

from libc.stdlib cimport malloc, free


def rank_mod_p(rows, long long p):
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0:
        return 0
    cdef Py_ssize_t ncols = len(rows[0])
    if ncols == 0:
        return 0
    cdef long long* m = <long long*> malloc(nrows * ncols * sizeof(long long))
    if m == NULL:
        raise MemoryError()
    cdef Py_ssize_t r, c, col, piv, rank = 0
    cdef long long f, inv, t
    try:
        for r in range(nrows):
            row = rows[r]
            for c in range(ncols):
                t = row[c] % p
                m[r * ncols + c] = t if t >= 0 else t + p
        for col in range(ncols):
            piv = -1
            for r in range(rank, nrows):
                if m[r * ncols + col] != 0:
                    piv = r
                    break
            if piv < 0:
                continue
            if piv != rank:
                for c in range(ncols):
                    t = m[piv * ncols + c]
                    m[piv * ncols + c] = m[rank * ncols + c]
                    m[rank * ncols + c] = t
            inv = _inv_mod(m[rank * ncols + col], p)
            for r in range(rank + 1, nrows):
                f = m[r * ncols + col]
                if f != 0:
                    f = f * inv % p
                    for c in range(col, ncols):
                        t = (m[r * ncols + c] - f * m[rank * ncols + c]) % p
                        m[r * ncols + c] = t if t >= 0 else t + p
            rank += 1
            if rank == nrows:
                break
    finally:
        free(m)
    return rank


cdef long long _inv_mod(long long a, long long p):
    cdef long long t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def count_identity_tuples(mult, int n, classes, int identity):
    cdef Py_ssize_t w = len(classes)
    if w == 0:
        return 1
    cdef int* M = <int*> malloc(n * n * sizeof(int))
    cdef int* target = <int*> malloc(n * sizeof(int))
    cdef int* inv = <int*> malloc(n * sizeof(int))
    cdef Py_ssize_t total = 0
    for cl in classes:
        total += len(cl)
    cdef int* elems = <int*> malloc((total + 1) * sizeof(int))
    cdef int* offs = <int*> malloc((w + 1) * sizeof(int))
    cdef int* pos = <int*> malloc((w + 1) * sizeof(int))
    cdef int* prod = <int*> malloc((w + 1) * sizeof(int))
    cdef unsigned long long count = 0
    cdef int a, b, k, level, s, base, lo, hi
    cdef Py_ssize_t i
    try:
        for i in range(n * n):
            M[i] = mult[i]
        for a in range(n):
            inv[a] = -1
            for b in range(n):
                if M[a * n + b] == identity:
                    inv[a] = b
                    break
        k = 0
        for i in range(w):
            offs[i] = k
            for s in classes[i]:
                elems[k] = s
                k += 1
        offs[w] = k
        for a in range(n):
            target[a] = 0
        lo = offs[w - 1]
        hi = offs[w]
        for a in range(n):
            for k in range(lo, hi):
                if elems[k] == inv[a]:
                    target[a] = 1
                    break
        if w == 1:
            return target[identity]
        level = 0
        prod[0] = identity
        pos[0] = offs[0]
        while level >= 0:
            if level == w - 2:
                base = prod[level] * n
                for k in range(offs[level], offs[level + 1]):
                    count += target[M[base + elems[k]]]
                level -= 1
                continue
            if pos[level] < offs[level + 1]:
                s = elems[pos[level]]
                pos[level] += 1
                prod[level + 1] = M[prod[level] * n + s]
                pos[level + 1] = offs[level + 1]
                level += 1
            else:
                level -= 1
    finally:
        free(M)
        free(target)
        free(inv)
        free(elems)
        free(offs)
        free(pos)
        free(prod)
    return count
