# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: PCG64 stream, polar normal sampling, Fisher-Yates,
and the redundant-seed enhancement loop.

Semantics are defined by latentmark._kernels._pyfallback; this module must
produce bit-identical outputs (same IEEE op order, same libm calls).
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport log, sqrt

cnp.import_array()

cdef extern from *:
    ctypedef unsigned long long uint128 "unsigned __int128"

ctypedef unsigned long long u64

# PCG64 XSL-RR 128/64 constants (O'Neill's default multiplier and stream).
cdef uint128 _MULT = (<uint128>0x2360ed051fc65da4 << 64) | <uint128>0x4385df649fccf645

BACKEND_NAME = "compiled"


cdef inline u64 _next_u64(uint128 *state, uint128 inc) noexcept nogil:
    cdef u64 hi, lo, xored, rot
    state[0] = state[0] * _MULT + inc
    hi = <u64>(state[0] >> 64)
    lo = <u64>state[0]
    xored = hi ^ lo
    rot = <u64>(state[0] >> 122)
    return (xored >> rot) | (xored << ((64 - rot) & 63))


cdef inline double _next_double(uint128 *state, uint128 inc) noexcept nogil:
    # 53-bit mantissa in [0, 1): (u64 >> 11) * 2^-53
    return <double>(_next_u64(state, inc) >> 11) * (1.0 / 9007199254740992.0)


cdef inline uint128 _to_u128(object value):
    cdef u64 hi = <u64>(value >> 64)
    cdef u64 lo = <u64>(value & 0xFFFFFFFFFFFFFFFF)
    return (<uint128>hi << 64) | <uint128>lo


cdef inline object _from_u128(uint128 value):
    cdef u64 hi = <u64>(value >> 64)
    cdef u64 lo = <u64>value
    return (int(hi) << 64) | int(lo)


def fill_uint64(object state, object inc, Py_ssize_t n):
    """Return (array of n raw PCG64 draws, advanced 128-bit state)."""
    cdef uint128 s = _to_u128(state)
    cdef uint128 i128 = _to_u128(inc)
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] out = np.empty(n, dtype=np.uint64)
    cdef Py_ssize_t k
    with nogil:
        for k in range(n):
            out[k] = _next_u64(&s, i128)
    return out, _from_u128(s)


def fill_uniform(object state, object inc, Py_ssize_t n):
    """Return (array of n doubles in [0, 1), advanced state)."""
    cdef uint128 s = _to_u128(state)
    cdef uint128 i128 = _to_u128(inc)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t k
    with nogil:
        for k in range(n):
            out[k] = _next_double(&s, i128)
    return out, _from_u128(s)


def fill_normal(object state, object inc, Py_ssize_t n):
    """Return (array of n standard-normal doubles, advanced state).

    Polar Box-Muller; consumption order: pairs (u, v) of uniforms mapped to
    (-1, 1), rejected until 0 < u^2+v^2 < 1, emitting u*f then v*f. A spare
    second value left over by an odd n is discarded.
    """
    cdef uint128 s = _to_u128(state)
    cdef uint128 i128 = _to_u128(inc)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t k = 0
    cdef double u, v, m, f
    with nogil:
        while k < n:
            while True:
                u = 2.0 * _next_double(&s, i128) - 1.0
                v = 2.0 * _next_double(&s, i128) - 1.0
                m = u * u + v * v
                if 0.0 < m < 1.0:
                    break
            f = sqrt(-2.0 * log(m) / m)
            out[k] = u * f
            k += 1
            if k < n:
                out[k] = v * f
                k += 1
    return out, _from_u128(s)


def fisher_yates(object state, object inc, Py_ssize_t length):
    """Return (forward permutation of [0, length), advanced state).

    Descending loop i = length-1 .. 1 with j = next_u64 mod (i+1).
    """
    cdef uint128 s = _to_u128(state)
    cdef uint128 i128 = _to_u128(inc)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] a = np.arange(length, dtype=np.int64)
    cdef Py_ssize_t i
    cdef u64 j
    cdef cnp.int64_t tmp
    with nogil:
        for i in range(length - 1, 0, -1):
            j = _next_u64(&s, i128) % (<u64>i + 1)
            tmp = a[i]
            a[i] = a[j]
            a[j] = tmp
    return a, _from_u128(s)


def enhance_inplace(cnp.float32_t[::1] values, cnp.uint8_t[::1] bits, Py_ssize_t redundancy):
    """Write `redundancy` sign-coded copies of `bits` into `values` by swaps.

    Block r (1-based) occupies flat positions [r*M, (r+1)*M). For each
    mismatched position the forward search starts one slot later and may run
    into subsequent blocks; it never touches positions at or before the
    current one. Returns the swap count, or -1 if the search ran off the end
    (caller raises).
    """
    cdef Py_ssize_t m_bits = bits.shape[0]
    cdef Py_ssize_t n_cap = values.shape[0]
    cdef Py_ssize_t r, m, pos, probe
    cdef Py_ssize_t swaps = 0
    cdef int want, have
    cdef cnp.float32_t tmp
    for r in range(1, redundancy + 1):
        for m in range(m_bits):
            pos = r * m_bits + m
            want = bits[m]
            have = 1 if values[pos] > 0.0 else 0
            if have == want:
                continue
            probe = pos + 1
            while True:
                if probe >= n_cap:
                    return -1
                have = 1 if values[probe] > 0.0 else 0
                if have == want:
                    tmp = values[pos]
                    values[pos] = values[probe]
                    values[probe] = tmp
                    swaps += 1
                    break
                probe += 1
    return swaps
