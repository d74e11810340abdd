"""Pure-Python kernels over flat row-major lists of Fractions.

A matrix reaches the kernels as ``(re, im)`` where ``im`` is ``None`` when
every imaginary part is zero. ``_ckernels`` implements the same two
functions on GMP rationals and is preferred when it is importable.
"""

from __future__ import annotations

from fractions import Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def matmul(a_re, a_im, b_re, b_im, n, k, m):
    """Product of an n-by-k and a k-by-m matrix."""
    out_re = [_ZERO] * (n * m)
    if a_im is None and b_im is None:
        for i in range(n):
            base = i * k
            acc = out_re[i * m:(i + 1) * m]
            for t in range(k):
                x = a_re[base + t]
                if not x:
                    continue
                off = t * m
                for j in range(m):
                    y = b_re[off + j]
                    if y:
                        acc[j] += x * y
            out_re[i * m:(i + 1) * m] = acc
        return out_re, None

    if a_im is None:
        a_im = [_ZERO] * (n * k)
    if b_im is None:
        b_im = [_ZERO] * (k * m)
    out_im = [_ZERO] * (n * m)
    for i in range(n):
        base = i * k
        acc_re = [_ZERO] * m
        acc_im = [_ZERO] * m
        for t in range(k):
            xr = a_re[base + t]
            xi = a_im[base + t]
            if not xr and not xi:
                continue
            off = t * m
            for j in range(m):
                yr = b_re[off + j]
                yi = b_im[off + j]
                if xr:
                    if yr:
                        acc_re[j] += xr * yr
                    if yi:
                        acc_im[j] += xr * yi
                if xi:
                    if yi:
                        acc_re[j] -= xi * yi
                    if yr:
                        acc_im[j] += xi * yr
        out_re[i * m:(i + 1) * m] = acc_re
        out_im[i * m:(i + 1) * m] = acc_im
    if not any(out_im):
        out_im = None
    return out_re, out_im


def _rref_real(a, rows, cols, pivot_cols):
    pivots = []
    det = _ONE
    r = 0
    for c in range(pivot_cols):
        if r == rows:
            break
        p = r
        while p < rows and not a[p * cols + c]:
            p += 1
        if p == rows:
            det = _ZERO
            continue
        if p != r:
            a[p * cols:(p + 1) * cols], a[r * cols:(r + 1) * cols] = (
                a[r * cols:(r + 1) * cols],
                a[p * cols:(p + 1) * cols],
            )
            det = -det
        piv = a[r * cols + c]
        det *= piv
        row = a[r * cols:(r + 1) * cols]
        if piv != _ONE:
            inv = 1 / piv
            row = [x * inv if x else _ZERO for x in row]
        row[c] = _ONE
        a[r * cols:(r + 1) * cols] = row
        nz = [j for j in range(c + 1, cols) if row[j]]
        for i in range(rows):
            if i == r:
                continue
            f = a[i * cols + c]
            if not f:
                continue
            base = i * cols
            for j in nz:
                a[base + j] -= f * row[j]
            a[base + c] = _ZERO
        pivots.append(c)
        r += 1
    if len(pivots) < pivot_cols:
        det = _ZERO
    return pivots, det


def _rref_complex(re, im, rows, cols, pivot_cols):
    # Entries as (re, im) tuples; complex field ops written out inline.
    a = list(zip(re, im))
    zero = (_ZERO, _ZERO)
    pivots = []
    det = (_ONE, _ZERO)
    r = 0
    for c in range(pivot_cols):
        if r == rows:
            break
        p = r
        while p < rows and a[p * cols + c] == zero:
            p += 1
        if p == rows:
            continue
        if p != r:
            a[p * cols:(p + 1) * cols], a[r * cols:(r + 1) * cols] = (
                a[r * cols:(r + 1) * cols],
                a[p * cols:(p + 1) * cols],
            )
            det = (-det[0], -det[1])
        pr, pi = a[r * cols + c]
        det = (det[0] * pr - det[1] * pi, det[0] * pi + det[1] * pr)
        mod = pr * pr + pi * pi
        ir, ii = pr / mod, -pi / mod
        row = []
        for xr, xi in a[r * cols:(r + 1) * cols]:
            if not xr and not xi:
                row.append(zero)
            else:
                row.append((xr * ir - xi * ii, xr * ii + xi * ir))
        row[c] = (_ONE, _ZERO)
        a[r * cols:(r + 1) * cols] = row
        nz = [j for j in range(c + 1, cols) if row[j] != zero]
        for i in range(rows):
            if i == r:
                continue
            fr, fi = a[i * cols + c]
            if not fr and not fi:
                continue
            base = i * cols
            for j in nz:
                yr, yi = row[j]
                xr, xi = a[base + j]
                a[base + j] = (xr - (fr * yr - fi * yi), xi - (fr * yi + fi * yr))
            a[base + c] = zero
        pivots.append(c)
        r += 1
    if len(pivots) < pivot_cols:
        det = zero
    out_re = [x for x, _ in a]
    out_im = [y for _, y in a]
    return out_re, out_im, pivots, det


def rref(re, im, rows, cols, pivot_cols):
    """Gauss-Jordan elimination, pivoting only within the first ``pivot_cols``.

    The pivot is the first nonzero entry at or below the current row.
    Returns ``(re, im, pivots, (det_re, det_im))``; the determinant is of the
    leading square block and is zero unless every leading column pivots.
    """
    if im is None:
        a = list(re)
        pivots, det = _rref_real(a, rows, cols, pivot_cols)
        return a, None, pivots, (det, _ZERO)
    out_re, out_im, pivots, det = _rref_complex(re, im, rows, cols, pivot_cols)
    if not any(out_im):
        out_im = None
    return out_re, out_im, pivots, det
