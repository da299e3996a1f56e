# cython: language_level=3, boundscheck=False
"""Compiled arithmetic kernel for Q(zeta8) and dense polynomials over it.

An element c0 + c1*z + c2*z^2 + c3*z^3 (z^4 = -1) is stored as an integer
5-tuple ``(n0, n1, n2, n3, d)`` meaning ``(n0 + n1 z + n2 z^2 + n3 z^3) / d``
with ``d > 0`` and ``gcd(n0, n1, n2, n3, d) == 1``.  Rationals are the tuples
with ``n1 == n2 == n3 == 0``.

A polynomial is a tuple of such elements in ascending degree with no trailing
zero; the zero polynomial is ``()``.

Compiled twin of ``_kernel_py``; the algorithms are identical and the
test-suite runs both against each other.
"""

from math import gcd

ZERO = (0, 0, 0, 0, 1)
ONE = (1, 0, 0, 0, 1)


cpdef tuple z_make(object n0, object n1, object n2, object n3, object d):
    if d < 0:
        n0, n1, n2, n3, d = -n0, -n1, -n2, -n3, -d
    g = gcd(n0, n1, n2, n3, d)
    if g != 1:
        return (n0 // g, n1 // g, n2 // g, n3 // g, d // g)
    return (n0, n1, n2, n3, d)


def z_from_ratio(num, den):
    return z_make(num, 0, 0, 0, den)


cpdef bint z_is_zero(tuple a):
    return a[0] == 0 and a[1] == 0 and a[2] == 0 and a[3] == 0


def z_is_one(a):
    return a == ONE


def z_is_rational(a):
    return a[1] == 0 and a[2] == 0 and a[3] == 0


cpdef tuple z_neg(tuple a):
    return (-a[0], -a[1], -a[2], -a[3], a[4])


cpdef tuple z_add(tuple a, tuple b):
    a0, a1, a2, a3, da = a
    b0, b1, b2, b3, db = b
    if da == db:
        return z_make(a0 + b0, a1 + b1, a2 + b2, a3 + b3, da)
    return z_make(a0 * db + b0 * da, a1 * db + b1 * da,
                  a2 * db + b2 * da, a3 * db + b3 * da, da * db)


cpdef tuple z_sub(tuple a, tuple b):
    a0, a1, a2, a3, da = a
    b0, b1, b2, b3, db = b
    if da == db:
        return z_make(a0 - b0, a1 - b1, a2 - b2, a3 - b3, da)
    return z_make(a0 * db - b0 * da, a1 * db - b1 * da,
                  a2 * db - b2 * da, a3 * db - b3 * da, da * db)


def _raw_mul(a0, a1, a2, a3, b0, b1, b2, b3):
    # product in Z[z] reduced by z^4 = -1
    if a1 == 0 and a2 == 0 and a3 == 0:
        return a0 * b0, a0 * b1, a0 * b2, a0 * b3
    if b1 == 0 and b2 == 0 and b3 == 0:
        return a0 * b0, a1 * b0, a2 * b0, a3 * b0
    return (a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1,
            a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2,
            a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3,
            a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0)


cpdef tuple z_mul(tuple a, tuple b):
    c0, c1, c2, c3 = _raw_mul(a[0], a[1], a[2], a[3], b[0], b[1], b[2], b[3])
    return z_make(c0, c1, c2, c3, a[4] * b[4])


cpdef tuple z_inv(tuple a):
    a0, a1, a2, a3, d = a
    if a0 == 0 and a1 == 0 and a2 == 0 and a3 == 0:
        raise ZeroDivisionError("inverse of zero in Q(zeta8)")
    if a1 == 0 and a2 == 0 and a3 == 0:
        return z_make(d, 0, 0, 0, a0)
    # product of the three nontrivial conjugates z->z^3, z^5, z^7
    s3 = (a0, a3, -a2, a1)
    s5 = (a0, -a1, a2, -a3)
    s7 = (a0, -a3, -a2, -a1)
    p = _raw_mul(*s3, *s5)
    p = _raw_mul(*p, *s7)
    norm = _raw_mul(a0, a1, a2, a3, *p)[0]
    return z_make(p[0] * d, p[1] * d, p[2] * d, p[3] * d, norm)


def z_div(a, b):
    return z_mul(a, z_inv(b))


# ---------------------------------------------------------------- polynomials

def p_trim(coeffs):
    n = len(coeffs)
    while n and z_is_zero(coeffs[n - 1]):
        n -= 1
    return tuple(coeffs[:n])


def _common_form(p):
    # integer numerators over a common denominator
    den = 1
    for c in p:
        d = c[4]
        if d != 1 and den % d:
            den = den // gcd(den, d) * d
    rows = []
    for c in p:
        m = den // c[4]
        rows.append((c[0] * m, c[1] * m, c[2] * m, c[3] * m))
    return rows, den


def p_add(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] = z_add(out[i], c)
    return p_trim(out)


def p_sub(p, q):
    n = max(len(p), len(q))
    out = []
    for i in range(n):
        if i >= len(q):
            out.append(p[i])
        elif i >= len(p):
            out.append(z_neg(q[i]))
        else:
            out.append(z_sub(p[i], q[i]))
    return p_trim(out)


def p_neg(p):
    return tuple(z_neg(c) for c in p)


def p_scale(p, c):
    if z_is_zero(c):
        return ()
    if c == ONE:
        return p
    return tuple(z_mul(a, c) for a in p)


def p_mul(tuple p, tuple q):
    cdef Py_ssize_t i, j, k, n, lp, lq
    cdef object a0, a1, a2, a3, b0, b1, b2, b3, den
    cdef list acc0, acc1, acc2, acc3, rp, rq
    lp = len(p)
    lq = len(q)
    if lp == 0 or lq == 0:
        return ()
    if lp == 1:
        return p_scale(q, p[0])
    if lq == 1:
        return p_scale(p, q[0])
    rp, dp = _common_form(p)
    rq, dq = _common_form(q)
    n = lp + lq - 1
    acc0 = [0] * n
    acc1 = [0] * n
    acc2 = [0] * n
    acc3 = [0] * n
    for i in range(lp):
        a0, a1, a2, a3 = rp[i]
        if a0 == 0 and a1 == 0 and a2 == 0 and a3 == 0:
            continue
        if a1 == 0 and a2 == 0 and a3 == 0:
            for j in range(lq):
                b0, b1, b2, b3 = rq[j]
                k = i + j
                acc0[k] += a0 * b0
                acc1[k] += a0 * b1
                acc2[k] += a0 * b2
                acc3[k] += a0 * b3
            continue
        for j in range(lq):
            b0, b1, b2, b3 = rq[j]
            k = i + j
            if b1 == 0 and b2 == 0 and b3 == 0:
                acc0[k] += a0 * b0
                acc1[k] += a1 * b0
                acc2[k] += a2 * b0
                acc3[k] += a3 * b0
            else:
                acc0[k] += a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1
                acc1[k] += a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2
                acc2[k] += a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3
                acc3[k] += a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0
    den = dp * dq
    return p_trim([z_make(acc0[k], acc1[k], acc2[k], acc3[k], den)
                   for k in range(n)])


def p_monic(p):
    if not p:
        return p
    lc = p[-1]
    if lc == ONE:
        return p
    return p_scale(p, z_inv(lc))


def p_divmod(tuple p, tuple q):
    cdef Py_ssize_t dq, k, j, lp
    cdef list r, quot
    cdef tuple c, qj, inv_lc
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    lp = len(p)
    dq = len(q) - 1
    if lp - 1 < dq:
        return (), p
    inv_lc = z_inv(q[dq])
    r = list(p)
    quot = [ZERO] * (lp - dq)
    for k in range(lp - 1 - dq, -1, -1):
        c = r[k + dq]
        if z_is_zero(c):
            continue
        c = z_mul(c, inv_lc)
        quot[k] = c
        for j in range(dq):
            qj = q[j]
            if not z_is_zero(qj):
                r[k + j] = z_sub(r[k + j], z_mul(c, qj))
        r[k + dq] = ZERO
    return p_trim(quot), p_trim(r[:dq])


def p_gcd(p, q):
    """Monic gcd by the Euclidean algorithm (monic remainder sequence)."""
    if not p and not q:
        raise ValueError("gcd of two zero polynomials")
    if len(p) < len(q):
        p, q = q, p
    p = p_monic(p)
    q = p_monic(q)
    while q:
        if len(q) == 1:
            return (ONE,)
        _, r = p_divmod(p, q)
        p, q = q, p_monic(r)
    return p


def p_deriv(p):
    return p_trim([z_mul(p[i], (i, 0, 0, 0, 1)) for i in range(1, len(p))])


def p_eval(p, x):
    acc = ZERO
    for c in reversed(p):
        acc = z_add(z_mul(acc, x), c)
    return acc


def p_shift_pow(p, k):
    """Multiply by t^k."""
    if not p:
        return p
    return (ZERO,) * k + tuple(p)
