"""Bit-packed kernels shared by the Pauli algebra, grouping and oracle layers.

Pauli strings are stored in symplectic form as rows of uint64 words: ``xs``
holds the X-part and ``zs`` the Z-part, qubit ``q`` living in bit ``q % 64``
of word ``q // 64``.  A row with coefficient ``c`` represents
``c * i**popcount(x & z) * X^x Z^z``, i.e. the literal I/X/Y/Z tensor product.

The three hot kernels (all-pairs products, first-fit qubit-wise grouping,
applying a term list to computational-basis codes) have a numba ``@njit``
implementation and a pure-numpy fallback.  The numpy path is selected when
numba is unavailable or when ``BOSONIQ_NO_NUMBA=1`` is set; both paths are
bit-for-bit equivalent and are compared in ``benchmarks/bench_kernels.py``.
"""

from __future__ import annotations

import os

import numpy as np

WORD_BITS = 64
_PHASES = np.array([1.0, 1.0j, -1.0, -1.0j], dtype=np.complex128)

_want_numba = os.environ.get("BOSONIQ_NO_NUMBA", "0") not in ("1", "true", "yes")
if _want_numba:
    try:
        import numba
        from numba import njit
    except ImportError:  # pragma: no cover - environment dependent
        _want_numba = False

USING_NUMBA = _want_numba


def n_words(n_qubits: int) -> int:
    """Words needed for n_qubits (at least one, so empty sums stay regular)."""
    return max(1, -(-n_qubits // WORD_BITS))


def popcounts(words: np.ndarray) -> np.ndarray:
    """Row-wise popcount of a (T, W) uint64 array."""
    if words.size == 0:
        return np.zeros(words.shape[0], dtype=np.int64)
    return np.bitwise_count(words).sum(axis=1, dtype=np.int64)


def pack_int(value: int, width: int) -> np.ndarray:
    """Pack an arbitrary-size python int into a (width,) uint64 row."""
    row = np.zeros(width, dtype=np.uint64)
    mask = (1 << WORD_BITS) - 1
    for w in range(width):
        row[w] = (value >> (WORD_BITS * w)) & mask
    return row


def unpack_int(row: np.ndarray) -> int:
    """Inverse of :func:`pack_int`."""
    value = 0
    for w in range(row.shape[0]):
        value |= int(row[w]) << (WORD_BITS * w)
    return value


# ---------------------------------------------------------------------------
# numpy reference implementations
# ---------------------------------------------------------------------------


def _pair_products_numpy(xa, za, ca, xb, zb, cb):
    A, W = xa.shape
    B = xb.shape[0]
    x3 = (xa[:, None, :] ^ xb[None, :, :]).reshape(A * B, W)
    z3 = (za[:, None, :] ^ zb[None, :, :]).reshape(A * B, W)
    cross = (
        np.bitwise_count(za[:, None, :] & xb[None, :, :])
        .sum(axis=2, dtype=np.int64)
        .reshape(A * B)
    )
    ya = popcounts(xa & za)
    yb = popcounts(xb & zb)
    y3 = popcounts(x3 & z3)
    g = (ya[:, None] + yb[None, :]).reshape(A * B) + 2 * cross - y3
    coeffs = (ca[:, None] * cb[None, :]).reshape(A * B) * _PHASES[g & 3]
    return x3, z3, coeffs


def _first_fit_groups_numpy(xs, zs):
    T, W = xs.shape
    sup = xs | zs
    gx = np.zeros((T, W), dtype=np.uint64)
    gz = np.zeros((T, W), dtype=np.uint64)
    gsup = np.zeros((T, W), dtype=np.uint64)
    ids = np.zeros(T, dtype=np.int64)
    n_groups = 0
    for t in range(T):
        if n_groups:
            conflict = (
                ((gx[:n_groups] ^ xs[t]) | (gz[:n_groups] ^ zs[t]))
                & gsup[:n_groups]
                & sup[t]
            ).any(axis=1)
            hits = np.flatnonzero(~conflict)
        else:
            hits = ()
        if len(hits):
            g = int(hits[0])
        else:
            g = n_groups
            n_groups += 1
        gx[g] |= xs[t]
        gz[g] |= zs[t]
        gsup[g] |= sup[t]
        ids[t] = g
    return ids, n_groups


def _apply_to_codes_numpy(xs, zs, coeffs, codes):
    phased = coeffs * _PHASES[popcounts((xs & zs)[:, None]) & 3]
    parity = (np.bitwise_count(zs[:, None] & codes[None, :]) & 1).astype(np.int64)
    amps = phased[:, None] * (1.0 - 2.0 * parity)
    targets = codes[None, :] ^ xs[:, None]
    return targets, amps


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if USING_NUMBA:

    @njit(cache=True, inline="always")
    def _popcnt64(v):
        v = v - ((v >> np.uint64(1)) & np.uint64(0x5555555555555555))
        v = (v & np.uint64(0x3333333333333333)) + (
            (v >> np.uint64(2)) & np.uint64(0x3333333333333333)
        )
        v = (v + (v >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
        return (v * np.uint64(0x0101010101010101)) >> np.uint64(56)

    @njit(cache=True)
    def _pair_products_nb(xa, za, ca, xb, zb, cb, phases):
        A, W = xa.shape
        B = xb.shape[0]
        x3 = np.empty((A * B, W), dtype=np.uint64)
        z3 = np.empty((A * B, W), dtype=np.uint64)
        coeffs = np.empty(A * B, dtype=np.complex128)
        for i in range(A):
            ya = np.uint64(0)
            for w in range(W):
                ya += _popcnt64(xa[i, w] & za[i, w])
            base = i * B
            for j in range(B):
                g = np.int64(ya)
                for w in range(W):
                    xw = xa[i, w] ^ xb[j, w]
                    zw = za[i, w] ^ zb[j, w]
                    x3[base + j, w] = xw
                    z3[base + j, w] = zw
                    g += np.int64(_popcnt64(xb[j, w] & zb[j, w]))
                    g += np.int64(2) * np.int64(_popcnt64(za[i, w] & xb[j, w]))
                    g -= np.int64(_popcnt64(xw & zw))
                coeffs[base + j] = ca[i] * cb[j] * phases[g & 3]
        return x3, z3, coeffs

    @njit(cache=True)
    def _first_fit_groups_nb(xs, zs):
        T, W = xs.shape
        gx = np.zeros((T, W), dtype=np.uint64)
        gz = np.zeros((T, W), dtype=np.uint64)
        gsup = np.zeros((T, W), dtype=np.uint64)
        ids = np.zeros(T, dtype=np.int64)
        n_groups = 0
        for t in range(T):
            chosen = -1
            for g in range(n_groups):
                ok = True
                for w in range(W):
                    s = xs[t, w] | zs[t, w]
                    if ((gx[g, w] ^ xs[t, w]) | (gz[g, w] ^ zs[t, w])) & gsup[g, w] & s:
                        ok = False
                        break
                if ok:
                    chosen = g
                    break
            if chosen < 0:
                chosen = n_groups
                n_groups += 1
            for w in range(W):
                gx[chosen, w] |= xs[t, w]
                gz[chosen, w] |= zs[t, w]
                gsup[chosen, w] |= xs[t, w] | zs[t, w]
            ids[t] = chosen
        return ids, n_groups

    @njit(cache=True)
    def _apply_to_codes_nb(xs, zs, coeffs, codes, phases):
        T = xs.shape[0]
        S = codes.shape[0]
        targets = np.empty((T, S), dtype=np.uint64)
        amps = np.empty((T, S), dtype=np.complex128)
        for t in range(T):
            y = _popcnt64(xs[t] & zs[t])
            phased = coeffs[t] * phases[y & np.uint64(3)]
            for s in range(S):
                targets[t, s] = codes[s] ^ xs[t]
                sign = _popcnt64(zs[t] & codes[s]) & np.uint64(1)
                amps[t, s] = -phased if sign else phased
        return targets, amps


# ---------------------------------------------------------------------------
# public dispatchers
# ---------------------------------------------------------------------------


def pair_products(xa, za, ca, xb, zb, cb):
    """All-pairs products of two packed term lists with exact phase tracking.

    Returns (x3, z3, coeffs) of shape (A*B, W); row i*B+j is term_a[i]*term_b[j].
    """
    if USING_NUMBA:
        return _pair_products_nb(xa, za, ca, xb, zb, cb, _PHASES)
    return _pair_products_numpy(xa, za, ca, xb, zb, cb)


def first_fit_groups(xs, zs):
    """Sequential first-fit partition into qubit-wise commuting groups.

    A group is summarised by its per-qubit letter profile, so membership
    testing is O(words) per group instead of O(members).
    """
    if xs.shape[0] == 0:
        return np.zeros(0, dtype=np.int64), 0
    if USING_NUMBA:
        return _first_fit_groups_nb(xs, zs)
    return _first_fit_groups_numpy(xs, zs)


def apply_to_codes(xs, zs, coeffs, codes):
    """Apply every term to every basis code (single-word packing, n <= 64).

    Returns (targets, amps): term t maps |codes[s]> to amps[t,s]*|targets[t,s]>.
    """
    if USING_NUMBA:
        return _apply_to_codes_nb(xs, zs, coeffs, codes, _PHASES)
    return _apply_to_codes_numpy(xs, zs, coeffs, codes)
