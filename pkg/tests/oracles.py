"""Independent reference implementations used only to check the library.

Everything here computes from definitions (double sums, exhaustive
distance minimization, full group closure) and deliberately avoids the
butterfly/fold shortcuts the library uses.
"""

from __future__ import annotations

import numpy as np


def popcount(x: int) -> int:
    return bin(x).count("1")


def naive_walsh(bits: np.ndarray) -> np.ndarray:
    """Defining double sum: W(w) = sum_x (-1)^f(x) (-1)^<x,w>."""
    size = bits.size
    out = np.zeros(size, dtype=np.int64)
    for w in range(size):
        acc = 0
        for x in range(size):
            sign = 1 - 2 * int(bits[x])
            acc += sign if popcount(x & w) % 2 == 0 else -sign
        out[w] = acc
    return out


def naive_autocorr(bits: np.ndarray) -> np.ndarray:
    """Defining sum: r(d) = sum_x (-1)^f(x) (-1)^f(x^d)."""
    size = bits.size
    signs = 1 - 2 * bits.astype(np.int64)
    out = np.zeros(size, dtype=np.int64)
    for d in range(size):
        out[d] = sum(int(signs[x]) * int(signs[x ^ d]) for x in range(size))
    return out


def naive_nonlinearity(bits: np.ndarray) -> int:
    """Minimum Hamming distance to every affine function, by enumeration."""
    size = bits.size
    best = size
    for mask in range(size):
        linear = np.array(
            [popcount(x & mask) % 2 for x in range(size)], dtype=np.uint8
        )
        for const in (0, 1):
            best = min(best, int(np.sum(bits != (linear ^ const))))
    return best


def naive_mobius(bits: np.ndarray) -> np.ndarray:
    """coeffs[m] = parity of the sum of f over the subcube x <= m."""
    size = bits.size
    out = np.zeros(size, dtype=np.uint8)
    for m in range(size):
        total = 0
        for x in range(size):
            if x & ~m == 0:
                total ^= int(bits[x])
        out[m] = total
    return out


def naive_degree(bits: np.ndarray) -> int:
    coeffs = naive_mobius(bits)
    set_monomials = [m for m in range(bits.size) if coeffs[m]]
    return max((popcount(m) for m in set_monomials), default=0)


def apply_mapping(mapping: tuple[int, ...], x: int) -> int:
    y = 0
    for j, src in enumerate(mapping):
        y |= ((x >> src) & 1) << j
    return y


def group_elements(generators: list[tuple[int, ...]], n: int) -> set[tuple[int, ...]]:
    """Full closure of the generated permutation group, as mapping tuples."""
    ident = tuple(range(n))
    elements = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for elem in frontier:
            for gen in generators:
                composed = tuple(elem[gen[j]] for j in range(n))
                if composed not in elements:
                    elements.add(composed)
                    nxt.append(composed)
        frontier = nxt
    return elements


def orbit_sets(generators: list[tuple[int, ...]], n: int) -> list[frozenset[int]]:
    """Orbits computed by applying every group element to every mask."""
    elements = group_elements(generators, n)
    seen = set()
    orbits = []
    for x in range(1 << n):
        if x in seen:
            continue
        orbit = frozenset(apply_mapping(g, x) for g in elements)
        seen |= orbit
        orbits.append(orbit)
    return orbits


def burnside_by_definition(generators: list[tuple[int, ...]], n: int) -> int:
    """Average fixed-mask count over the full group, counting fixed points
    one mask at a time."""
    elements = group_elements(generators, n)
    total = 0
    for g in elements:
        total += sum(1 for x in range(1 << n) if apply_mapping(g, x) == x)
    assert total % len(elements) == 0
    return total // len(elements)


def random_table(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.integers(0, 2, size=1 << n, dtype=np.uint8)
