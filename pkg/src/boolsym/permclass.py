"""Classification of coordinate permutations up to linear equivalence.

Two permutations fix linearly equivalent families of invariant Boolean
functions exactly when their 0/1 permutation matrices are similar over
GF(2).  Similarity over a field is decided completely by the ranks of
p(P)^k for every irreducible polynomial p dividing the characteristic
polynomial and every k up to n (the elementary-divisor criterion); for an
n x n permutation matrix the characteristic polynomial is a product of
x^c + 1 factors, so only the irreducible divisors of x^l + 1 for l <= n
can occur.  That rank fingerprint needs nothing beyond GF(2) Gaussian
elimination, and equal fingerprints <=> similar matrices.

Since conjugating by a permutation matrix is itself a linear equivalence,
all permutations of one cycle type land in one class; classification
therefore fingerprints one representative per cycle type and merges types
whose fingerprints collide.  An exhaustive audit mode fingerprints every
permutation instead and cross-checks the bucketing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from .boolfn import MAX_VARS
from .orbits import (
    CoordPerm,
    GroupSpec,
    burnside_count,
    cycle_type,
    orbit_partition,
    perm_order,
)

CLASSIFY_MAX_N = 10

# --- dense GF(2) matrices as row bitmasks ----------------------------------


@dataclass(frozen=True)
class Gf2Matrix:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n or any(r >> self.n for r in self.rows):
            raise ValueError("rows must be n bitmasks of width n")


def gf2_identity(n: int) -> Gf2Matrix:
    return Gf2Matrix(n, tuple(1 << j for j in range(n)))


def gf2_zero(n: int) -> Gf2Matrix:
    return Gf2Matrix(n, (0,) * n)


def gf2_add(a: Gf2Matrix, b: Gf2Matrix) -> Gf2Matrix:
    return Gf2Matrix(a.n, tuple(x ^ y for x, y in zip(a.rows, b.rows)))


def gf2_mul(a: Gf2Matrix, b: Gf2Matrix) -> Gf2Matrix:
    rows = []
    for row in a.rows:
        acc = 0
        r = row
        while r:
            low = r & -r
            acc ^= b.rows[low.bit_length() - 1]
            r ^= low
        rows.append(acc)
    return Gf2Matrix(a.n, tuple(rows))


def gf2_rank(m: Gf2Matrix) -> int:
    rows = list(m.rows)
    rank = 0
    for col in range(m.n):
        pivot = 1 << col
        for i in range(rank, len(rows)):
            if rows[i] & pivot:
                rows[rank], rows[i] = rows[i], rows[rank]
                for j in range(len(rows)):
                    if j != rank and rows[j] & pivot:
                        rows[j] ^= rows[rank]
                rank += 1
                break
    return rank


def perm_matrix(p: CoordPerm) -> Gf2Matrix:
    """Matrix acting on mask bit vectors the same way apply() does:
    row j has its single 1 in column mapping[j]."""
    return Gf2Matrix(p.n, tuple(1 << src for src in p.mapping))


def apply_matrix(m: Gf2Matrix, x: int) -> int:
    y = 0
    for j, row in enumerate(m.rows):
        y |= ((row & x).bit_count() & 1) << j
    return y


# --- polynomials over GF(2) as coefficient bitmasks ------------------------


def poly_degree(poly: int) -> int:
    return poly.bit_length() - 1


def poly_mod(a: int, b: int) -> int:
    db = poly_degree(b)
    while poly_degree(a) >= db and a:
        a ^= b << (poly_degree(a) - db)
    return a


def poly_divides(a: int, b: int) -> bool:
    return poly_mod(b, a) == 0


def poly_is_irreducible(poly: int) -> bool:
    d = poly_degree(poly)
    if d <= 0:
        return False
    if d == 1:
        return True
    if not poly & 1:  # divisible by x
        return False
    for q in range(2, 1 << (d // 2 + 1)):
        if poly_degree(q) >= 1 and poly_mod(poly, q) == 0:
            return False
    return True


@lru_cache(maxsize=None)
def irreducibles_dividing(n: int) -> tuple[int, ...]:
    """All irreducible polynomials dividing x^l + 1 for some l <= n,
    ordered by (degree, coefficient mask)."""
    if n > MAX_VARS:
        raise ValueError(f"n={n} exceeds the {MAX_VARS}-variable cap")
    binomials = [(1 << l) | 1 for l in range(1, n + 1)]
    found = []
    for poly in range(2, 1 << (n + 1)):
        if poly_is_irreducible(poly) and any(poly_divides(poly, b) for b in binomials):
            found.append(poly)
    return tuple(sorted(found, key=lambda p: (poly_degree(p), p)))


def gf2_polyeval(poly: int, m: Gf2Matrix) -> Gf2Matrix:
    """Evaluate the polynomial at a matrix by Horner's rule."""
    result = gf2_zero(m.n)
    for bit in range(poly_degree(poly), -1, -1):
        result = gf2_mul(result, m)
        if (poly >> bit) & 1:
            result = gf2_add(result, gf2_identity(m.n))
    return result


def fingerprint(m: Gf2Matrix) -> tuple[tuple[int, int, int], ...]:
    """Complete similarity invariant: rank of p(m)^k for every relevant
    irreducible p and k = 1..n, canonically ordered."""
    if gf2_rank(m) != m.n:
        raise ValueError("fingerprint requires an invertible matrix")
    triples = []
    for poly in irreducibles_dividing(m.n):
        power = gf2_polyeval(poly, m)
        current = power
        for k in range(1, m.n + 1):
            triples.append((poly, k, gf2_rank(current)))
            current = gf2_mul(current, power)
    return tuple(triples)


# --- classification ---------------------------------------------------------


@dataclass(frozen=True)
class PermClassRecord:
    representative: CoordPerm
    class_size: int
    max_orbit: int
    orbit_count: int
    cycle_types: tuple[tuple[int, ...], ...]


def _partitions(n: int, cap: int | None = None) -> list[tuple[int, ...]]:
    if cap is None:
        cap = n
    if n == 0:
        return [()]
    result = []
    for first in range(min(n, cap), 0, -1):
        for rest in _partitions(n - first, first):
            result.append((first,) + rest)
    return result


def _conjugacy_class_size(n: int, ctype: tuple[int, ...]) -> int:
    denom = 1
    for length in set(ctype):
        mult = ctype.count(length)
        denom *= length**mult * factorial(mult)
    return factorial(n) // denom


def _cycle_type_rep(n: int, ctype: tuple[int, ...]) -> CoordPerm:
    mapping = []
    offset = 0
    for length in ctype:
        mapping.extend(offset + (t + 1) % length for t in range(length))
        offset += length
    return CoordPerm(n, tuple(mapping))


def _record_for(n: int, rep: CoordPerm, size: int,
                ctypes: tuple[tuple[int, ...], ...]) -> PermClassRecord:
    partition = orbit_partition(GroupSpec(n, (rep,)))
    count = burnside_count(GroupSpec(n, (rep,)))
    if count != len(partition):
        raise AssertionError("Burnside and direct enumeration disagree")
    return PermClassRecord(
        representative=rep,
        class_size=size,
        max_orbit=int(partition.sizes.max()),
        orbit_count=count,
        cycle_types=ctypes,
    )


def classify(n: int, audit: bool = False) -> list[PermClassRecord]:
    """Group the n! coordinate permutations into linear-equivalence classes.

    One fingerprint per cycle type suffices (same cycle type means conjugate
    by a permutation matrix, a special case of linear conjugation); cycle
    types with identical fingerprints merge.  With audit=True every single
    permutation is fingerprinted instead and checked against the bucketed
    result -- factorially slower, for verification only.

    Records are sorted by (max_orbit, orbit_count, representative).
    """
    if n > CLASSIFY_MAX_N:
        raise ValueError(f"classification is capped at n={CLASSIFY_MAX_N}")
    merged: dict[tuple, dict] = {}
    for ctype in _partitions(n):
        rep = _cycle_type_rep(n, ctype)
        print_ = fingerprint(perm_matrix(rep))
        bucket = merged.setdefault(print_, {"rep": rep, "size": 0, "ctypes": []})
        bucket["size"] += _conjugacy_class_size(n, ctype)
        bucket["ctypes"].append(ctype)

    if audit:
        seen: dict[tuple, tuple[int, ...]] = {}
        for perm in itertools.permutations(range(n)):
            p = CoordPerm(n, perm)
            print_ = fingerprint(perm_matrix(p))
            if print_ not in merged:
                raise AssertionError(f"audit found an unbucketed class at {p}")
            ct = cycle_type(p)
            seen.setdefault(print_, ct)
            if ct not in merged[print_]["ctypes"]:
                raise AssertionError(f"audit: {p} merges into a foreign bucket")
        if len(seen) != len(merged):
            raise AssertionError("audit found a different class count")

    records = [
        _record_for(n, bucket["rep"], bucket["size"], tuple(bucket["ctypes"]))
        for bucket in merged.values()
    ]
    records.sort(key=lambda r: (r.max_orbit, r.orbit_count, r.representative.mapping))
    total = sum(r.class_size for r in records)
    if total != factorial(n):
        raise AssertionError(f"class sizes sum to {total}, expected {n}!")
    return records


def class_report(records: list[PermClassRecord],
                 best_nl: dict[str, int] | None = None) -> str:
    """Aligned text table; best_nl maps a representative's string form to a
    nonlinearity merged into the last column."""
    headers = ("representative", "perms", "max orbit", "orbits", "best nl")
    rows = []
    for rec in records:
        key = str(rec.representative)
        nl = best_nl.get(key, "") if best_nl else ""
        rows.append((key, str(rec.class_size), str(rec.max_orbit),
                     str(rec.orbit_count), str(nl)))
    widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines)
