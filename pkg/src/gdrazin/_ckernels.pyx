# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""GMP-backed kernels; drop-in replacement for ``_pykernels``.

Inputs and outputs are flat row-major lists of ``fractions.Fraction`` with
``im is None`` meaning a real matrix. Arithmetic runs on ``mpq_t`` arrays.
"""

from libc.stdlib cimport malloc, free
from libc.limits cimport LONG_MAX, LONG_MIN
from fractions import Fraction

from .exactnum import make_fraction

cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef struct __mpq_struct:
        pass
    ctypedef __mpz_struct *mpz_ptr
    ctypedef __mpq_struct *mpq_ptr

    void mpq_init(mpq_ptr)
    void mpq_clear(mpq_ptr)
    void mpq_set(mpq_ptr, mpq_ptr)
    void mpq_set_si(mpq_ptr, long, unsigned long)
    void mpq_add(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_sub(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_mul(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_div(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_neg(mpq_ptr, mpq_ptr)
    void mpq_inv(mpq_ptr, mpq_ptr)
    void mpq_swap(mpq_ptr, mpq_ptr)
    int mpq_sgn(mpq_ptr)
    int mpq_cmp_si(mpq_ptr, long, unsigned long)
    void mpq_canonicalize(mpq_ptr)
    mpz_ptr mpq_numref(mpq_ptr)
    mpz_ptr mpq_denref(mpq_ptr)

    void mpz_set_si(mpz_ptr, long)
    int mpz_set_str(mpz_ptr, const char *, int)
    char *mpz_get_str(char *, int, mpz_ptr)
    int mpz_fits_slong_p(mpz_ptr)
    long mpz_get_si(mpz_ptr)
    size_t mpz_sizeinbase(mpz_ptr, int)

cdef object _ZERO = Fraction(0)
cdef object _ONE = Fraction(1)
cdef object _object_new = object.__new__
# Fraction's slot layout is stable across CPython 3.10-3.13; fall back otherwise.
cdef bint _SLOTS = tuple(getattr(Fraction, "__slots__", ())) == ("_numerator", "_denominator")


cdef object _fraction(object num, object den):
    if not _SLOTS:
        return make_fraction(num, den)
    f = _object_new(Fraction)
    f._numerator = num
    f._denominator = den
    return f


# -- conversion ------------------------------------------------------------

cdef int _set_mpz(mpz_ptr z, object v) except -1:
    if LONG_MIN < v < LONG_MAX:
        mpz_set_si(z, <long>v)
        return 0
    cdef bytes s = format(v, "x").encode("ascii")
    if mpz_set_str(z, s, 16) != 0:
        raise ValueError("integer conversion failed")
    return 0


cdef object _get_int(mpz_ptr z):
    if mpz_fits_slong_p(z):
        return mpz_get_si(z)
    cdef size_t size = mpz_sizeinbase(z, 16) + 2
    cdef char *buf = <char *>malloc(size)
    if buf == NULL:
        raise MemoryError()
    try:
        mpz_get_str(buf, 16, z)
        return int(buf.decode("ascii"), 16)
    finally:
        free(buf)


cdef int _load(mpq_ptr q, object f) except -1:
    if f is _ZERO or not f:
        mpq_set_si(q, 0, 1)
        return 0
    if _SLOTS:
        _set_mpz(mpq_numref(q), f._numerator)
        _set_mpz(mpq_denref(q), f._denominator)
    else:
        _set_mpz(mpq_numref(q), f.numerator)
        _set_mpz(mpq_denref(q), f.denominator)
    return 0


cdef object _store(mpq_ptr q):
    cdef int s = mpq_sgn(q)
    if s == 0:
        return _ZERO
    if mpq_cmp_si(q, 1, 1) == 0:
        return _ONE
    return _fraction(_get_int(mpq_numref(q)), _get_int(mpq_denref(q)))


cdef class _Buf:
    """Owned array of initialised mpq_t values."""
    cdef __mpq_struct *data
    cdef Py_ssize_t size

    def __cinit__(self, Py_ssize_t size):
        cdef Py_ssize_t i
        self.size = 0
        self.data = <__mpq_struct *>malloc((size if size > 0 else 1) * sizeof(__mpq_struct))
        if self.data == NULL:
            raise MemoryError()
        for i in range(size):
            mpq_init(&self.data[i])
        self.size = size

    def __dealloc__(self):
        cdef Py_ssize_t i
        if self.data != NULL:
            for i in range(self.size):
                mpq_clear(&self.data[i])
            free(self.data)

    cdef inline mpq_ptr at(self, Py_ssize_t i):
        return &self.data[i]


cdef _Buf _from_list(object values, Py_ssize_t size):
    cdef _Buf b = _Buf(size)
    cdef Py_ssize_t i
    if values is not None:
        for i in range(size):
            _load(b.at(i), values[i])
    return b


cdef list _to_list(_Buf b):
    cdef Py_ssize_t i
    return [_store(b.at(i)) for i in range(b.size)]


cdef bint _all_zero(_Buf b):
    cdef Py_ssize_t i
    for i in range(b.size):
        if mpq_sgn(b.at(i)) != 0:
            return False
    return True


# -- kernels ---------------------------------------------------------------

def matmul(a_re, a_im, b_re, b_im, Py_ssize_t n, Py_ssize_t k, Py_ssize_t m):
    """Product of an n-by-k and a k-by-m matrix."""
    cdef bint cplx = a_im is not None or b_im is not None
    cdef _Buf ar = _from_list(a_re, n * k)
    cdef _Buf br = _from_list(b_re, k * m)
    cdef _Buf ai, bi, oi
    cdef _Buf orr = _Buf(n * m)
    cdef _Buf tmp = _Buf(1)
    cdef Py_ssize_t i, j, t
    cdef mpq_ptr x, xi, y, yi, acc, acci, tq
    cdef bint ax_r, ax_i
    tq = tmp.at(0)
    if not cplx:
        for i in range(n):
            for t in range(k):
                x = ar.at(i * k + t)
                if mpq_sgn(x) == 0:
                    continue
                for j in range(m):
                    y = br.at(t * m + j)
                    if mpq_sgn(y) == 0:
                        continue
                    mpq_mul(tq, x, y)
                    acc = orr.at(i * m + j)
                    mpq_add(acc, acc, tq)
        return _to_list(orr), None

    ai = _from_list(a_im, n * k)
    bi = _from_list(b_im, k * m)
    oi = _Buf(n * m)
    for i in range(n):
        for t in range(k):
            x = ar.at(i * k + t)
            xi = ai.at(i * k + t)
            ax_r = mpq_sgn(x) != 0
            ax_i = mpq_sgn(xi) != 0
            if not ax_r and not ax_i:
                continue
            for j in range(m):
                y = br.at(t * m + j)
                yi = bi.at(t * m + j)
                acc = orr.at(i * m + j)
                acci = oi.at(i * m + j)
                if ax_r:
                    if mpq_sgn(y) != 0:
                        mpq_mul(tq, x, y)
                        mpq_add(acc, acc, tq)
                    if mpq_sgn(yi) != 0:
                        mpq_mul(tq, x, yi)
                        mpq_add(acci, acci, tq)
                if ax_i:
                    if mpq_sgn(yi) != 0:
                        mpq_mul(tq, xi, yi)
                        mpq_sub(acc, acc, tq)
                    if mpq_sgn(y) != 0:
                        mpq_mul(tq, xi, y)
                        mpq_add(acci, acci, tq)
    if _all_zero(oi):
        return _to_list(orr), None
    return _to_list(orr), _to_list(oi)


cdef void _swap_rows(_Buf a, Py_ssize_t r1, Py_ssize_t r2, Py_ssize_t cols):
    cdef Py_ssize_t j
    for j in range(cols):
        mpq_swap(a.at(r1 * cols + j), a.at(r2 * cols + j))


def rref(re, im, Py_ssize_t rows, Py_ssize_t cols, Py_ssize_t pivot_cols):
    """Gauss-Jordan elimination, pivoting only within the first ``pivot_cols``.

    Same contract as ``_pykernels.rref``.
    """
    cdef bint cplx = im is not None
    cdef _Buf a = _from_list(re, rows * cols)
    cdef _Buf b = _from_list(im, rows * cols) if cplx else _Buf(0)
    cdef _Buf t = _Buf(6)
    cdef mpq_ptr det_r = t.at(0)
    cdef mpq_ptr det_i = t.at(1)
    cdef mpq_ptr inv_r = t.at(2)
    cdef mpq_ptr inv_i = t.at(3)
    cdef mpq_ptr t1 = t.at(4)
    cdef mpq_ptr t2 = t.at(5)
    cdef _Buf s = _Buf(4)
    cdef mpq_ptr f_r = s.at(0)
    cdef mpq_ptr f_i = s.at(1)
    cdef mpq_ptr u1 = s.at(2)
    cdef mpq_ptr u2 = s.at(3)
    cdef Py_ssize_t r = 0, c, p, i, j
    cdef mpq_ptr x, xi, y, yi
    cdef list pivots = []
    mpq_set_si(det_r, 1, 1)
    mpq_set_si(det_i, 0, 1)

    for c in range(pivot_cols):
        if r == rows:
            break
        p = r
        while p < rows:
            if mpq_sgn(a.at(p * cols + c)) != 0:
                break
            if cplx and mpq_sgn(b.at(p * cols + c)) != 0:
                break
            p += 1
        if p == rows:
            continue
        if p != r:
            _swap_rows(a, p, r, cols)
            if cplx:
                _swap_rows(b, p, r, cols)
            mpq_neg(det_r, det_r)
            mpq_neg(det_i, det_i)

        # det *= pivot; inv = 1 / pivot
        x = a.at(r * cols + c)
        if cplx:
            xi = b.at(r * cols + c)
            mpq_mul(t1, det_r, x)
            mpq_mul(t2, det_i, xi)
            mpq_sub(u1, t1, t2)
            mpq_mul(t1, det_r, xi)
            mpq_mul(t2, det_i, x)
            mpq_add(det_i, t1, t2)
            mpq_set(det_r, u1)
            mpq_mul(t1, x, x)
            mpq_mul(t2, xi, xi)
            mpq_add(t1, t1, t2)
            mpq_div(inv_r, x, t1)
            mpq_div(inv_i, xi, t1)
            mpq_neg(inv_i, inv_i)
        else:
            mpq_mul(det_r, det_r, x)
            mpq_inv(inv_r, x)

        # scale pivot row
        for j in range(c, cols):
            y = a.at(r * cols + j)
            if cplx:
                yi = b.at(r * cols + j)
                if mpq_sgn(y) == 0 and mpq_sgn(yi) == 0:
                    continue
                mpq_mul(t1, y, inv_r)
                mpq_mul(t2, yi, inv_i)
                mpq_sub(u1, t1, t2)
                mpq_mul(t1, y, inv_i)
                mpq_mul(t2, yi, inv_r)
                mpq_add(yi, t1, t2)
                mpq_set(y, u1)
            elif mpq_sgn(y) != 0:
                mpq_mul(y, y, inv_r)

        # eliminate column c from every other row
        for i in range(rows):
            if i == r:
                continue
            mpq_set(f_r, a.at(i * cols + c))
            if cplx:
                mpq_set(f_i, b.at(i * cols + c))
                if mpq_sgn(f_r) == 0 and mpq_sgn(f_i) == 0:
                    continue
            elif mpq_sgn(f_r) == 0:
                continue
            for j in range(c, cols):
                y = a.at(r * cols + j)
                x = a.at(i * cols + j)
                if cplx:
                    yi = b.at(r * cols + j)
                    xi = b.at(i * cols + j)
                    if mpq_sgn(y) == 0 and mpq_sgn(yi) == 0:
                        continue
                    # x -= f * y
                    mpq_mul(t1, f_r, y)
                    mpq_mul(t2, f_i, yi)
                    mpq_sub(u1, t1, t2)
                    mpq_mul(t1, f_r, yi)
                    mpq_mul(t2, f_i, y)
                    mpq_add(u2, t1, t2)
                    mpq_sub(x, x, u1)
                    mpq_sub(xi, xi, u2)
                elif mpq_sgn(y) != 0:
                    mpq_mul(t1, f_r, y)
                    mpq_sub(x, x, t1)
        pivots.append(c)
        r += 1

    if len(pivots) < pivot_cols:
        mpq_set_si(det_r, 0, 1)
        mpq_set_si(det_i, 0, 1)
    det = (_store(det_r), _store(det_i))
    if cplx and not _all_zero(b):
        return _to_list(a), _to_list(b), pivots, det
    return _to_list(a), None, pivots, det
