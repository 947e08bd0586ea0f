"""Pure-Python reference kernels.

This module defines the exact semantics of the hot kernels; the compiled
extension is an optimization and must agree with it bit for bit. Keep the
floating-point expression order in both in sync when editing either one.
"""

import math

import numpy as np

BACKEND_NAME = "fallback"

_MASK64 = (1 << 64) - 1
_MASK128 = (1 << 128) - 1
# PCG64 XSL-RR 128/64 constants (O'Neill's default multiplier and stream).
_MULT = 0x2360ED051FC65DA44385DF649FCCF645
_INV_2_53 = 1.0 / 9007199254740992.0


def _next_u64(state, inc):
    state = (state * _MULT + inc) & _MASK128
    xored = ((state >> 64) ^ state) & _MASK64
    rot = state >> 122
    out = ((xored >> rot) | (xored << ((64 - rot) & 63))) & _MASK64
    return out, state


def fill_uint64(state, inc, n):
    """Return (array of n raw PCG64 draws, advanced 128-bit state)."""
    out = np.empty(n, dtype=np.uint64)
    for k in range(n):
        value, state = _next_u64(state, inc)
        out[k] = value
    return out, state


def fill_uniform(state, inc, n):
    """Return (array of n doubles in [0, 1), advanced state)."""
    out = np.empty(n, dtype=np.float64)
    for k in range(n):
        value, state = _next_u64(state, inc)
        out[k] = float(value >> 11) * _INV_2_53
    return out, state


def fill_normal(state, inc, n):
    """Return (array of n standard-normal doubles, advanced state).

    Polar Box-Muller; consumption order: pairs (u, v) of uniforms mapped to
    (-1, 1), rejected until 0 < u^2+v^2 < 1, emitting u*f then v*f. A spare
    second value left over by an odd n is discarded.
    """
    out = np.empty(n, dtype=np.float64)
    k = 0
    while k < n:
        while True:
            value, state = _next_u64(state, inc)
            u = 2.0 * (float(value >> 11) * _INV_2_53) - 1.0
            value, state = _next_u64(state, inc)
            v = 2.0 * (float(value >> 11) * _INV_2_53) - 1.0
            m = u * u + v * v
            if 0.0 < m < 1.0:
                break
        f = math.sqrt(-2.0 * math.log(m) / m)
        out[k] = u * f
        k += 1
        if k < n:
            out[k] = v * f
            k += 1
    return out, state


def fisher_yates(state, inc, length):
    """Return (forward permutation of [0, length), advanced state).

    Descending loop i = length-1 .. 1 with j = next_u64 mod (i+1).
    """
    a = np.arange(length, dtype=np.int64)
    for i in range(length - 1, 0, -1):
        value, state = _next_u64(state, inc)
        j = value % (i + 1)
        a[i], a[j] = a[j], a[i]
    return a, state


def enhance_inplace(values, bits, redundancy):
    """Write `redundancy` sign-coded copies of `bits` into `values` by swaps.

    Block r (1-based) occupies flat positions [r*M, (r+1)*M). For each
    mismatched position the forward search starts one slot later and may run
    into subsequent blocks; it never touches positions at or before the
    current one. Returns the swap count, or -1 if the search ran off the end
    (caller raises).
    """
    m_bits = len(bits)
    n_cap = len(values)
    swaps = 0
    for r in range(1, redundancy + 1):
        for m in range(m_bits):
            pos = r * m_bits + m
            want = bits[m]
            if (1 if values[pos] > 0.0 else 0) == want:
                continue
            probe = pos + 1
            while True:
                if probe >= n_cap:
                    return -1
                if (1 if values[probe] > 0.0 else 0) == want:
                    values[pos], values[probe] = values[probe], values[pos]
                    swaps += 1
                    break
                probe += 1
    return swaps
