# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular echelon kernel."""
from libc.stdlib cimport malloc, free

DEFAULT_PRIME = 2147483647


cdef long long _inv_mod(long long a, long long p):
    cdef long long t = 0, nt = 1, r = p, nr = a, q, tmp
    while nr != 0:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    if t < 0:
        t += p
    return t


def echelon_mod_p(rows, long long p=DEFAULT_PRIME):
    """Row echelon of an integer matrix modulo ``p`` (``p < 2**31``).

    Same contract as the pure-Python kernel: returns ``(pivot_rows, pivot_cols)``.
    """
    cdef Py_ssize_t m = len(rows)
    if m == 0:
        return [], []
    cdef Py_ssize_t n = len(rows[0])
    cdef Py_ssize_t cap = n if n < m else m
    cdef long long *basis = <long long *> malloc(cap * n * sizeof(long long) + 1)
    cdef long long *cur = <long long *> malloc(n * sizeof(long long) + 1)
    cdef Py_ssize_t *pcols = <Py_ssize_t *> malloc(cap * sizeof(Py_ssize_t) + 1)
    cdef Py_ssize_t rank = 0, i, j, k, pc
    cdef long long f, inv
    cdef long long *b
    prows = []
    try:
        for i in range(m):
            row = rows[i]
            for j in range(n):
                cur[j] = <long long> (row[j] % p)
            for k in range(rank):
                f = cur[pcols[k]]
                if f:
                    b = basis + k * n
                    for j in range(n):
                        if b[j]:
                            cur[j] = (cur[j] - f * b[j]) % p
                            if cur[j] < 0:
                                cur[j] += p
            pc = -1
            for j in range(n):
                if cur[j]:
                    pc = j
                    break
            if pc < 0:
                continue
            inv = _inv_mod(cur[pc], p)
            b = basis + rank * n
            for j in range(n):
                b[j] = (cur[j] * inv) % p
            pcols[rank] = pc
            rank += 1
            prows.append(i)
            if rank == cap or rank == n:
                break
        return prows, [pcols[k] for k in range(rank)]
    finally:
        free(basis)
        free(cur)
        free(pcols)
