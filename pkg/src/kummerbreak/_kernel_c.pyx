# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled arithmetic kernel; mirrors ``_kernel_py`` for moduli below 2^31."""

from libc.stdlib cimport malloc, free
from libc.string cimport memset, memcpy
from libc.stdint cimport int64_t


cdef inline int64_t _md(int64_t x, int64_t m) nogil:
    x %= m
    if x < 0:
        x += m
    return x


cdef class Tower:
    cdef int nlev
    cdef int64_t mod
    cdef int *n          # degree of each level (n[0] = f)
    cdef int *dim        # flat dimension of each level
    cdef int64_t **eis   # eis[k]: n[k] * dim[k-1] coefficients; eis[0]: res_low
    cdef int64_t **tmp   # workspace (2n-1)*bdim per level
    cdef int64_t **prd   # workspace dim[k-1] per level

    def __cinit__(self, levels):
        cdef int k, i, j, bd, nn
        self.nlev = len(levels)
        self.n = <int *> malloc(self.nlev * sizeof(int))
        self.dim = <int *> malloc(self.nlev * sizeof(int))
        self.eis = <int64_t **> malloc(self.nlev * sizeof(int64_t *))
        self.tmp = <int64_t **> malloc(self.nlev * sizeof(int64_t *))
        self.prd = <int64_t **> malloc(self.nlev * sizeof(int64_t *))
        f, mod, res = levels[0]
        self.mod = mod
        self.n[0] = f
        self.dim[0] = f
        self.eis[0] = <int64_t *> malloc(f * sizeof(int64_t))
        for i in range(f):
            self.eis[0][i] = _md(res[i], self.mod)
        self.tmp[0] = <int64_t *> malloc((2 * f) * sizeof(int64_t))
        self.prd[0] = NULL
        for k in range(1, self.nlev):
            nn, bd, low = levels[k]
            self.n[k] = nn
            self.dim[k] = nn * bd
            self.eis[k] = <int64_t *> malloc(nn * bd * sizeof(int64_t))
            for i in range(nn):
                for j in range(bd):
                    self.eis[k][i * bd + j] = _md(low[i][j], self.mod)
            self.tmp[k] = <int64_t *> malloc((2 * nn) * bd * sizeof(int64_t))
            self.prd[k] = <int64_t *> malloc(bd * sizeof(int64_t))

    def __dealloc__(self):
        cdef int k
        if self.eis != NULL:
            for k in range(self.nlev):
                free(self.eis[k])
                free(self.tmp[k])
                if self.prd[k] != NULL:
                    free(self.prd[k])
        free(self.n)
        free(self.dim)
        free(self.eis)
        free(self.tmp)
        free(self.prd)

    cdef void _mul(self, int k, const int64_t *a, const int64_t *b, int64_t *out) nogil:
        cdef int f, i, j, m, nn, bd, base
        cdef int64_t c, mod = self.mod
        cdef int64_t *t
        cdef int64_t *pr
        cdef const int64_t *ai
        if k == 0:
            f = self.n[0]
            t = self.tmp[0]
            memset(t, 0, (2 * f - 1) * sizeof(int64_t))
            for i in range(f):
                if a[i]:
                    for j in range(f):
                        t[i + j] = (t[i + j] + (a[i] * b[j]) % mod) % mod
            for m in range(2 * f - 2, f - 1, -1):
                c = t[m]
                if c:
                    base = m - f
                    for i in range(f):
                        t[base + i] = _md(t[base + i] - (c * self.eis[0][i]) % mod, mod)
            memcpy(out, t, f * sizeof(int64_t))
            return
        nn = self.n[k]
        bd = self.dim[k - 1]
        t = self.tmp[k]
        pr = self.prd[k]
        memset(t, 0, (2 * nn - 1) * bd * sizeof(int64_t))
        for i in range(nn):
            ai = a + i * bd
            if not _nonzero(ai, bd):
                continue
            for j in range(nn):
                if not _nonzero(b + j * bd, bd):
                    continue
                self._mul(k - 1, ai, b + j * bd, pr)
                _addto(t + (i + j) * bd, pr, bd, mod)
        for m in range(2 * nn - 2, nn - 1, -1):
            if not _nonzero(t + m * bd, bd):
                continue
            base = m - nn
            for i in range(nn):
                self._mul(k - 1, t + m * bd, self.eis[k] + i * bd, pr)
                _subfrom(t + (base + i) * bd, pr, bd, mod)
        memcpy(out, t, nn * bd * sizeof(int64_t))

    def mul(self, int k, a, b):
        cdef int d = self.dim[k]
        cdef int i
        cdef int64_t *A = <int64_t *> malloc(3 * d * sizeof(int64_t))
        cdef int64_t *B = A + d
        cdef int64_t *O = A + 2 * d
        try:
            for i in range(d):
                A[i] = a[i]
                B[i] = b[i]
            self._mul(k, A, B, O)
            return [O[i] for i in range(d)]
        finally:
            free(A)

    def scale(self, int k, c, a):
        """Multiply the level-k element a by the level-(k-1) element c."""
        cdef int nn = self.n[k]
        cdef int bd = self.dim[k - 1]
        cdef int d = self.dim[k]
        cdef int i, j
        cdef int64_t *C = <int64_t *> malloc((bd + 2 * d) * sizeof(int64_t))
        cdef int64_t *A = C + bd
        cdef int64_t *O = A + d
        try:
            for i in range(bd):
                C[i] = c[i]
            for i in range(d):
                A[i] = a[i]
            for j in range(nn):
                if _nonzero(A + j * bd, bd):
                    self._mul(k - 1, C, A + j * bd, O + j * bd)
                else:
                    memset(O + j * bd, 0, bd * sizeof(int64_t))
            return [O[i] for i in range(d)]
        finally:
            free(C)


cdef inline bint _nonzero(const int64_t *x, int n) nogil:
    cdef int i
    for i in range(n):
        if x[i]:
            return True
    return False


cdef inline void _addto(int64_t *t, const int64_t *x, int n, int64_t mod) nogil:
    cdef int i
    for i in range(n):
        t[i] = (t[i] + x[i]) % mod


cdef inline void _subfrom(int64_t *t, const int64_t *x, int n, int64_t mod) nogil:
    cdef int i
    for i in range(n):
        t[i] = _md(t[i] - x[i], mod)
