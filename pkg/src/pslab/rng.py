"""Counter-based Gaussian streams.

Every matrix entry gets its own Philox-4x32-10 block keyed by a 64-bit seed
with counter ``(row, col, stream_lo, stream_hi)``.  Entries therefore do not
depend on generation order, chunking or worker count.
"""

import numpy as np

_M0 = np.uint64(0xD2511F53)
_M1 = np.uint64(0xCD9E8D57)
_W0 = np.uint32(0x9E3779B9)
_W1 = np.uint32(0xBB67AE85)
_LO = np.uint64(0xFFFFFFFF)
_SHIFT = np.uint64(32)


def philox4x32(counter, key, rounds=10):
    """Philox-4x32 block function, vectorized over the trailing axis.

    ``counter`` is a sequence of four uint32 arrays (broadcastable), ``key`` a
    pair of uint32 scalars.  Returns four uint32 arrays.
    """
    c0, c1, c2, c3 = (np.asarray(c, dtype=np.uint32) for c in counter)
    c0, c1, c2, c3 = np.broadcast_arrays(c0, c1, c2, c3)
    k0, k1 = np.uint32(key[0]), np.uint32(key[1])
    with np.errstate(over="ignore"):
        for r in range(rounds):
            if r:
                k0 = np.uint32(k0 + _W0)
                k1 = np.uint32(k1 + _W1)
            p0 = _M0 * c0.astype(np.uint64)
            p1 = _M1 * c2.astype(np.uint64)
            hi0 = (p0 >> _SHIFT).astype(np.uint32)
            lo0 = (p0 & _LO).astype(np.uint32)
            hi1 = (p1 >> _SHIFT).astype(np.uint32)
            lo1 = (p1 & _LO).astype(np.uint32)
            c0, c1, c2, c3 = hi1 ^ c1 ^ k0, lo1, hi0 ^ c3 ^ k1, lo0
    return c0, c1, c2, c3


def _split64(x):
    x = int(x)
    if not 0 <= x < 2**64:
        raise ValueError(f"value {x} does not fit in 64 unsigned bits")
    return x & 0xFFFFFFFF, x >> 32


def _unit(hi, lo):
    # 53-bit uniform on [0, 1)
    a = (hi >> np.uint32(5)).astype(np.float64)
    b = (lo >> np.uint32(6)).astype(np.float64)
    return (a * 67108864.0 + b) / 9007199254740992.0


def complex_gaussian(seed, shape, stream=0):
    """Array of X + iY with X, Y independent N(0, 1), keyed by entry index.

    Entry ``[j, k]`` depends only on ``(seed, stream, j, k)``.
    """
    rows, cols = shape
    key = _split64(seed)
    s_lo, s_hi = _split64(stream)
    j = np.arange(rows, dtype=np.uint32)[:, None]
    k = np.arange(cols, dtype=np.uint32)[None, :]
    w0, w1, w2, w3 = philox4x32((j, k, s_lo, s_hi), key)
    u1 = 1.0 - _unit(w0, w1)  # (0, 1]
    u2 = _unit(w2, w3)
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * np.pi * u2
    return radius * np.cos(angle) + 1j * radius * np.sin(angle)
