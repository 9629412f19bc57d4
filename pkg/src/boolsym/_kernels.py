"""Hot numeric kernels with two interchangeable backends.

The default backend compiles the inner loops with numba's ``@njit``; a pure
numpy fallback implements the same operations with vectorized array code.
Selection happens once at import time via the ``BOOLSYM_BACKEND`` environment
variable:

    BOOLSYM_BACKEND=auto    use numba when importable, else numpy (default)
    BOOLSYM_BACKEND=numba   require numba, raise if unavailable
    BOOLSYM_BACKEND=numpy   force the fallback

Both backends produce bit-identical integer results; ``tests/test_kernels.py``
asserts the parity and ``benchmarks/bench_backends.py`` compares their speed.
"""

from __future__ import annotations

import os

import numpy as np

_ENV_VAR = "BOOLSYM_BACKEND"


def _requested_backend() -> str:
    value = os.environ.get(_ENV_VAR, "auto").strip().lower()
    if value not in ("auto", "numba", "numpy"):
        raise ValueError(
            f"{_ENV_VAR} must be 'auto', 'numba' or 'numpy', got {value!r}"
        )
    return value


_requested = _requested_backend()
if _requested in ("auto", "numba"):
    try:
        from numba import njit

        _have_numba = True
    except ImportError:
        if _requested == "numba":
            raise ImportError(
                f"{_ENV_VAR}=numba but numba is not installed"
            ) from None
        _have_numba = False
else:
    _have_numba = False

BACKEND = "numba" if _have_numba else "numpy"


# --- Walsh-Hadamard butterfly -------------------------------------------
#
# In-place transform of a length-2^n int64 vector; applying it to the sign
# vector (-1)^f yields the Walsh spectrum, applying it twice multiplies by
# 2^n.  The same XOR-shaped butterfly over GF(2) computes the binary Mobius
# transform used for algebraic normal forms.


def _fwht_loop(values):
    size = values.size
    h = 1
    while h < size:
        for start in range(0, size, h * 2):
            for j in range(start, start + h):
                a = values[j]
                b = values[j + h]
                values[j] = a + b
                values[j + h] = a - b
        h *= 2


def _fwht_numpy(values: np.ndarray) -> None:
    size = values.size
    h = 1
    while h < size:
        v = values.reshape(-1, 2, h)
        a = v[:, 0, :].copy()
        b = v[:, 1, :]
        v[:, 0, :] = a + b
        v[:, 1, :] = a - b
        h *= 2


def _mobius_loop(bits):
    size = bits.size
    h = 1
    while h < size:
        for start in range(0, size, h * 2):
            for j in range(start, start + h):
                bits[j + h] ^= bits[j]
        h *= 2


def _mobius_numpy(bits: np.ndarray) -> None:
    size = bits.size
    h = 1
    while h < size:
        v = bits.reshape(-1, 2, h)
        v[:, 1, :] ^= v[:, 0, :]
        h *= 2


# --- folded Walsh spectrum ----------------------------------------------
#
# W[j] = sum_i signs[i] * M[i, j] for the orbit-fold matrix M.  numba has no
# integer matmul, so the jitted path is an explicit loop; numpy promotes the
# int32 matrix itself.


def _folded_walsh_loop(m, signs):
    count = signs.size
    out = np.zeros(count, dtype=np.int64)
    for i in range(count):
        s = signs[i]
        for j in range(count):
            out[j] += s * m[i, j]
    return out


def _folded_walsh_numpy(m: np.ndarray, signs: np.ndarray) -> np.ndarray:
    return signs.astype(np.int64) @ m.astype(np.int64)


# --- search neighbor scan ------------------------------------------------
#
# Cost of every single-orbit flip from the current folded spectrum.  The
# candidate spectrum for flipping orbit i is W - 2*signs[i]*M[i, :]; costs
# are exact int64 (safe for n <= 15).
#
# cost_kind 0 (flatness): sum_j sizes[j] * (W[j]^2 - 2^n)^2
# cost_kind 1 (peak):     sum_j sizes[j] * max(0, |W[j]| - T)^4

COST_FLATNESS = 0
COST_PEAK = 1


def _neighbor_costs_loop(spectrum, m, signs, sizes, two_n, cost_kind, peak_t):
    count = signs.size
    costs = np.empty(count, dtype=np.int64)
    for i in range(count):
        s2 = 2 * signs[i]
        acc = np.int64(0)
        if cost_kind == 0:
            for j in range(count):
                w = spectrum[j] - s2 * m[i, j]
                d = w * w - two_n
                acc += sizes[j] * d * d
        else:
            for j in range(count):
                w = spectrum[j] - s2 * m[i, j]
                if w < 0:
                    w = -w
                e = w - peak_t
                if e > 0:
                    e2 = e * e
                    acc += sizes[j] * e2 * e2
        costs[i] = acc
    return costs


def _neighbor_costs_numpy(spectrum, m, signs, sizes, two_n, cost_kind, peak_t):
    cand = spectrum[np.newaxis, :] - (2 * signs)[:, np.newaxis] * m.astype(np.int64)
    if cost_kind == COST_FLATNESS:
        d = cand * cand - two_n
        return (d * d) @ sizes
    e = np.abs(cand) - peak_t
    np.maximum(e, 0, out=e)
    e2 = e * e
    return (e2 * e2) @ sizes


def _spectrum_cost_loop(spectrum, sizes, two_n, cost_kind, peak_t):
    acc = np.int64(0)
    if cost_kind == 0:
        for j in range(spectrum.size):
            d = spectrum[j] * spectrum[j] - two_n
            acc += sizes[j] * d * d
    else:
        for j in range(spectrum.size):
            w = spectrum[j]
            if w < 0:
                w = -w
            e = w - peak_t
            if e > 0:
                e2 = e * e
                acc += sizes[j] * e2 * e2
    return acc


def _spectrum_cost_numpy(spectrum, sizes, two_n, cost_kind, peak_t):
    if cost_kind == COST_FLATNESS:
        d = spectrum * spectrum - two_n
        return np.int64((d * d) @ sizes)
    e = np.abs(spectrum) - peak_t
    np.maximum(e, 0, out=e)
    e2 = e * e
    return np.int64((e2 * e2) @ sizes)


# --- fused search run -----------------------------------------------------
#
# The whole descent loop in one jitted call: neighbor scan, visited-state
# exclusion via Zobrist hashing over an open-addressing table, forced move,
# best tracking, optional early stop.  The numpy backend runs the identical
# logic stepwise in Python (see search.py); a fuzz test pins the two paths
# to the same trajectory.  Callers size the hash table so it can never fill
# (capacity >= 2 * (iters + 2)), keeping every probe loop finite.


def _search_loop_py(m, sizes, zobrist, start_bits, iters, two_n, cost_kind,
                    peak_t, target_peak, table_bits):
    count = start_bits.size
    bits = start_bits.copy()
    signs = (1 - 2 * bits.astype(np.int64))
    spectrum = np.zeros(count, dtype=np.int64)
    for i in range(count):
        s = signs[i]
        for j in range(count):
            spectrum[j] += s * m[i, j]

    capacity = 1 << table_bits
    mask = capacity - 1
    keys = np.zeros(capacity, dtype=np.uint64)
    used = np.zeros(capacity, dtype=np.uint8)

    state_hash = np.uint64(0)
    for i in range(count):
        if bits[i]:
            state_hash ^= zobrist[i]
    slot = np.int64(state_hash & np.uint64(mask))
    while used[slot]:
        slot = (slot + 1) & mask
    keys[slot] = state_hash
    used[slot] = 1

    peak = np.max(np.abs(spectrum))
    best_peak = peak
    best_bits = bits.copy()
    best_iter = 0
    trace = np.empty(iters + 1, dtype=np.int64)
    trace[0] = best_peak
    steps_done = 0
    last_move = -1

    if best_peak <= target_peak:
        return best_bits, best_iter, trace[:1], steps_done

    for it in range(1, iters + 1):
        costs = np.empty(count, dtype=np.int64)
        for i in range(count):
            s2 = 2 * signs[i]
            acc = np.int64(0)
            if cost_kind == 0:
                for j in range(count):
                    w = spectrum[j] - s2 * m[i, j]
                    d = w * w - two_n
                    acc += sizes[j] * d * d
            else:
                for j in range(count):
                    w = spectrum[j] - s2 * m[i, j]
                    if w < 0:
                        w = -w
                    e = w - peak_t
                    if e > 0:
                        e2 = e * e
                        acc += sizes[j] * e2 * e2
            costs[i] = acc

        pick = -1
        pick_cost = np.int64(0)
        fallback = -1
        fallback_cost = np.int64(0)
        for i in range(count):
            candidate = state_hash ^ zobrist[i]
            slot = np.int64(candidate & np.uint64(mask))
            visited = False
            while used[slot]:
                if keys[slot] == candidate:
                    visited = True
                    break
                slot = (slot + 1) & mask
            if not visited:
                if pick < 0 or costs[i] < pick_cost:
                    pick = i
                    pick_cost = costs[i]
            elif i != last_move:
                if fallback < 0 or costs[i] < fallback_cost:
                    fallback = i
                    fallback_cost = costs[i]
        if pick < 0:
            pick = fallback if fallback >= 0 else last_move

        state_hash ^= zobrist[pick]
        slot = np.int64(state_hash & np.uint64(mask))
        while used[slot]:
            if keys[slot] == state_hash:
                break
            slot = (slot + 1) & mask
        if not used[slot]:
            keys[slot] = state_hash
            used[slot] = 1

        for j in range(count):
            spectrum[j] -= 2 * signs[pick] * m[pick, j]
        bits[pick] ^= 1
        signs[pick] = -signs[pick]
        last_move = pick
        steps_done = it

        peak = np.max(np.abs(spectrum))
        if peak < best_peak:
            best_peak = peak
            best_bits = bits.copy()
            best_iter = it
        trace[it] = best_peak
        if best_peak <= target_peak:
            break

    return best_bits, best_iter, trace[:steps_done + 1], steps_done


if _have_numba:
    _jit = njit(cache=True, nogil=True)
    fwht_inplace = _jit(_fwht_loop)
    mobius_inplace = _jit(_mobius_loop)
    folded_walsh_signs = _jit(_folded_walsh_loop)
    neighbor_costs = _jit(_neighbor_costs_loop)
    spectrum_cost = _jit(_spectrum_cost_loop)
    search_loop = _jit(_search_loop_py)
else:
    fwht_inplace = _fwht_numpy
    mobius_inplace = _mobius_numpy
    folded_walsh_signs = _folded_walsh_numpy
    neighbor_costs = _neighbor_costs_numpy
    spectrum_cost = _spectrum_cost_numpy
    search_loop = None  # numpy backend drives steps from search.py
