# cython: language_level=3
"""Compiled versions of the hot kernels (see _pykernels for the contracts).

Exponents are unpacked to C longs; polynomial coefficients stay Python
ints so the arbitrary-precision semantics match the pure backend exactly.
The mod-p matrix and evaluation paths use C integer arithmetic, which is
safe because callers keep p at desk scale (p <= 10**4, so products of two
residues fit comfortably in 64 bits).  cdivision stays off so % follows
Python sign conventions.
"""

BACKEND = "c"

DEF MAX_POW = 256


def poly_mul_2(dict a, dict b):
    cdef dict out = {}
    cdef long i0, j0, i1, j1
    cdef tuple k
    cdef object v0, v1, cur
    if len(a) < len(b):
        a, b = b, a
    for kb, v1 in b.items():
        i1 = kb[0]
        j1 = kb[1]
        for ka, v0 in a.items():
            i0 = ka[0]
            j0 = ka[1]
            k = (i0 + i1, j0 + j1)
            cur = out.get(k)
            if cur is None:
                out[k] = v0 * v1
            else:
                cur = cur + v0 * v1
                if cur:
                    out[k] = cur
                else:
                    del out[k]
    return out


def poly_mul_3(dict a, dict b):
    cdef dict out = {}
    cdef long i0, j0, k0, i1, j1, k1
    cdef tuple k
    cdef object v0, v1, cur
    if len(a) < len(b):
        a, b = b, a
    for kb, v1 in b.items():
        i1 = kb[0]
        j1 = kb[1]
        k1 = kb[2]
        for ka, v0 in a.items():
            i0 = ka[0]
            j0 = ka[1]
            k0 = ka[2]
            k = (i0 + i1, j0 + j1, k0 + k1)
            cur = out.get(k)
            if cur is None:
                out[k] = v0 * v1
            else:
                cur = cur + v0 * v1
                if cur:
                    out[k] = cur
                else:
                    del out[k]
    return out


def mat2_mul(tuple m1, tuple m2, long p):
    cdef long long a1, b1, c1, d1, a2, b2, c2, d2
    if p:
        a1 = m1[0]; b1 = m1[1]; c1 = m1[2]; d1 = m1[3]
        a2 = m2[0]; b2 = m2[1]; c2 = m2[2]; d2 = m2[3]
        return (
            (a1 * a2 + b1 * c2) % p,
            (a1 * b2 + b1 * d2) % p,
            (c1 * a2 + d1 * c2) % p,
            (c1 * b2 + d1 * d2) % p,
        )
    return (
        m1[0] * m2[0] + m1[1] * m2[2],
        m1[0] * m2[1] + m1[1] * m2[3],
        m1[2] * m2[0] + m1[3] * m2[2],
        m1[2] * m2[1] + m1[3] * m2[3],
    )


def eval_poly3(tuple items, tuple powx, tuple powz, tuple powy, long p):
    cdef long long acc = 0, term, cc
    cdef long long px[MAX_POW]
    cdef long long pz[MAX_POW]
    cdef long long py[MAX_POW]
    cdef Py_ssize_t nx = len(powx), nz = len(powz), ny = len(powy), i
    cdef tuple key
    cdef object total, c
    if p and nx <= MAX_POW and nz <= MAX_POW and ny <= MAX_POW:
        for i in range(nx):
            px[i] = powx[i]
        for i in range(nz):
            pz[i] = powz[i]
        for i in range(ny):
            py[i] = powy[i]
        for key, c in items:
            cc = c % p
            term = cc * px[<long>key[0]] % p
            term = term * pz[<long>key[1]] % p
            term = term * py[<long>key[2]] % p
            acc = (acc + term) % p
        return acc
    total = 0
    for key, c in items:
        total = total + c * powx[key[0]] * powz[key[1]] * powy[key[2]]
    return total % p if p else total
