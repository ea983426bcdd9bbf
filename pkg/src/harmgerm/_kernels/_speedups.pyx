# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled arithmetic kernels: sparse polynomial products and rational RREF.

Coefficients are arbitrary-precision, so the arithmetic itself stays on
Python ints; the speedup comes from typed loops, packed monomial keys and
working on numerator/denominator pairs instead of Fraction objects.
Contracts match `pure.py` exactly.
"""

from fractions import Fraction
from math import gcd

# Monomial exponents are packed as a*SHIFT + b inside the hot loop; SHIFT
# bounds the y-exponent, far beyond any degree this library touches.
DEF SHIFT = 1 << 20


def poly_mul(dict p, dict q, max_degree=None):
    """Multiply two sparse term maps {(a, b): Fraction}; see pure.poly_mul."""
    cdef Py_ssize_t i, j, np_, nq
    cdef long d1 = 0
    cdef long cap
    cdef bint capped = max_degree is not None
    cap = max_degree if capped else 0
    if not p or not q:
        return {}
    if len(q) < len(p):
        p, q = q, p

    cdef list pk = [], pn = [], pd = []
    cdef list qk = [], qn = [], qd = []
    for (a, b), c in p.items():
        pk.append((<long> a) * SHIFT + <long> b)
        pn.append(c.numerator)
        pd.append(c.denominator)
    for (a, b), c in q.items():
        qk.append((<long> a) * SHIFT + <long> b)
        qn.append(c.numerator)
        qd.append(c.denominator)
    np_ = len(pk)
    nq = len(qk)

    cdef dict acc = {}
    cdef long k1, k2, key
    for i in range(np_):
        k1 = pk[i]
        if capped:
            d1 = k1 // SHIFT + k1 % SHIFT
            if d1 > cap:
                continue
        n1 = pn[i]
        e1 = pd[i]
        for j in range(nq):
            k2 = qk[j]
            if capped and d1 + k2 // SHIFT + k2 % SHIFT > cap:
                continue
            key = k1 + k2
            n2 = n1 * <object> qn[j]
            e2 = e1 * <object> qd[j]
            prev = acc.get(key)
            if prev is None:
                acc[key] = (n2, e2)
            else:
                pn2, pd2 = prev
                # (pn2/pd2) + (n2/e2) without normalising; reduced at the end
                acc[key] = (pn2 * e2 + n2 * pd2, pd2 * e2)

    cdef dict out = {}
    cdef long ka
    for key, (num, den) in acc.items():
        if num == 0:
            continue
        ka = key // SHIFT
        out[(ka, key - ka * SHIFT)] = Fraction(num, den)
    return out


cdef list _primitive_rows(rows):
    cdef list mat = []
    cdef list ints
    for row in rows:
        den = 1
        for c in row:
            d = c.denominator
            den = den * d // gcd(den, d)
        ints = [c.numerator * (den // c.denominator) for c in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        mat.append(ints)
    return mat


def rref(rows):
    """Reduced row echelon form over the rationals; see pure.rref."""
    cdef list mat = _primitive_rows(rows)
    mat = [row for row in mat if any(row)]
    if not mat:
        return (), ()
    cdef Py_ssize_t nrows = len(mat), ncols = len(<list> mat[0])
    cdef Py_ssize_t r = 0, col, i, j, prow
    cdef list pivots = [], piv, row, new
    for col in range(ncols):
        prow = -1
        for i in range(r, nrows):
            if (<list> mat[i])[col] != 0:
                prow = i
                break
        if prow < 0:
            continue
        mat[r], mat[prow] = mat[prow], mat[r]
        piv = <list> mat[r]
        pv = piv[col]
        for i in range(nrows):
            if i == r:
                continue
            row = <list> mat[i]
            e = row[col]
            if e == 0:
                continue
            new = [0] * ncols
            g = 0
            for j in range(ncols):
                v = row[j] * pv - piv[j] * e
                new[j] = v
                g = gcd(g, v)
            if g > 1:
                for j in range(ncols):
                    new[j] = new[j] // g
            mat[i] = new
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    out = []
    for i in range(len(pivots)):
        row = <list> mat[i]
        pv = row[pivots[i]]
        out.append(tuple(Fraction(v, pv) for v in row))
    return tuple(out), tuple(pivots)
