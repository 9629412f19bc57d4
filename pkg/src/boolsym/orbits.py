"""Coordinate-permutation group actions on {0,1}^n.

Covers orbit partitions under a generated group, Burnside orbit counting,
the closed-form orbit counts for the k-fold rotation and dihedral families,
and the orbit-fold machinery that lets the Walsh spectrum of an invariant
function be computed on orbit representatives only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

import numpy as np

from . import _kernels
from .boolfn import MAX_VARS, TruthTable

GROUP_CLOSURE_CAP = 10**6
FOLD_ORBIT_CAP = 4096


@dataclass(frozen=True)
class CoordPerm:
    """Permutation of input coordinates: output position j carries input
    variable mapping[j]."""

    n: int
    mapping: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.mapping) != list(range(self.n)):
            raise ValueError(f"not a permutation of 0..{self.n - 1}: {self.mapping}")

    def __str__(self):
        return "(" + ",".join(str(v) for v in self.mapping) + ")"


def identity(n: int) -> CoordPerm:
    return CoordPerm(n, tuple(range(n)))


def rho(n: int, i: int) -> CoordPerm:
    """Left cyclic shift by i: position j receives variable (j + i) mod n."""
    if not 1 <= i <= n:
        raise ValueError(f"shift must be in 1..{n}, got {i}")
    return CoordPerm(n, tuple((j + i) % n for j in range(n)))


def tau(n: int) -> CoordPerm:
    """Reflection: position j receives variable n - 1 - j."""
    return CoordPerm(n, tuple(n - 1 - j for j in range(n)))


def compose(p: CoordPerm, q: CoordPerm) -> CoordPerm:
    """p after q: apply(compose(p, q), x) == apply(p, apply(q, x))."""
    if p.n != q.n:
        raise ValueError("cannot compose permutations on different n")
    return CoordPerm(p.n, tuple(q.mapping[p.mapping[j]] for j in range(p.n)))


def apply(p: CoordPerm, x: int) -> int:
    """Permute the bits of the input mask x."""
    y = 0
    for j, src in enumerate(p.mapping):
        y |= ((x >> src) & 1) << j
    return y


def apply_table(p: CoordPerm) -> np.ndarray:
    """apply(p, x) for every x, as an int32 lookup table."""
    x = np.arange(1 << p.n, dtype=np.int32)
    y = np.zeros(1 << p.n, dtype=np.int32)
    for j, src in enumerate(p.mapping):
        y |= ((x >> src) & 1) << j
    return y


def cycle_type(p: CoordPerm) -> tuple[int, ...]:
    """Cycle lengths of the coordinate permutation, descending."""
    seen = [False] * p.n
    lengths = []
    for start in range(p.n):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = p.mapping[j]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def perm_order(p: CoordPerm) -> int:
    order = 1
    for c in cycle_type(p):
        order = order * c // gcd(order, c)
    return order


@dataclass(frozen=True)
class GroupSpec:
    n: int
    generators: tuple[CoordPerm, ...]
    name: str | None = None

    def __post_init__(self):
        if not self.generators:
            raise ValueError("group needs at least one generator")
        if any(g.n != self.n for g in self.generators):
            raise ValueError("all generators must act on the same n")


@dataclass(frozen=True)
class OrbitPartition:
    """Orbits of {0,1}^n under a generated group.

    reps holds the lexicographically first element of each orbit (ascending,
    so reps[0] is always the zero mask), orbit_of maps every mask to its
    orbit ordinal, sizes gives orbit cardinalities.
    """

    n: int
    reps: np.ndarray
    orbit_of: np.ndarray
    sizes: np.ndarray

    def __post_init__(self):
        for field in (self.reps, self.orbit_of, self.sizes):
            field.setflags(write=False)

    def __len__(self):
        return self.reps.size


@dataclass(frozen=True)
class FoldedFunction:
    """An invariant function restricted to orbit space: one bit per orbit."""

    partition: OrbitPartition
    values: np.ndarray

    def __post_init__(self):
        values = np.ascontiguousarray(self.values, dtype=np.uint8)
        if values.shape != (len(self.partition),):
            raise ValueError("folded vector length must equal the orbit count")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class FoldMatrix:
    """m[i, j] = sum over x in orbit i of (-1)^<x, reps[j]>."""

    partition: OrbitPartition
    m: np.ndarray  # int32, |G| x |G|

    def __post_init__(self):
        self.m.setflags(write=False)


class FoldError(ValueError):
    """Raised when a table is not constant on some orbit."""

    def __init__(self, orbit: int, rep: int):
        self.orbit = orbit
        self.rep = rep
        super().__init__(f"table is not constant on orbit {orbit} (rep {rep:#x})")


def orbit_partition(group: GroupSpec) -> OrbitPartition:
    """Partition all masks by breadth-first closure under the generators."""
    if group.n > MAX_VARS:
        raise ValueError(f"n={group.n} exceeds the {MAX_VARS}-variable cap")
    size = 1 << group.n
    tables = [apply_table(g) for g in group.generators]
    orbit_of = np.full(size, -1, dtype=np.int32)
    reps = []
    for start in range(size):
        if orbit_of[start] >= 0:
            continue
        oid = len(reps)
        reps.append(start)
        orbit_of[start] = oid
        queue = [start]
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            for t in tables:
                y = int(t[x])
                if orbit_of[y] < 0:
                    orbit_of[y] = oid
                    queue.append(y)
    sizes = np.bincount(orbit_of, minlength=len(reps)).astype(np.int64)
    return OrbitPartition(group.n, np.array(reps, dtype=np.int64), orbit_of, sizes)


def _closure(group: GroupSpec) -> list[CoordPerm]:
    """Materialize the generated group (capped)."""
    seen = {identity(group.n).mapping}
    frontier = [identity(group.n)]
    elements = [identity(group.n)]
    while frontier:
        next_frontier = []
        for elem in frontier:
            for gen in group.generators:
                new = compose(gen, elem)
                if new.mapping not in seen:
                    seen.add(new.mapping)
                    elements.append(new)
                    next_frontier.append(new)
                    if len(elements) > GROUP_CLOSURE_CAP:
                        raise ValueError(
                            f"group closure exceeds {GROUP_CLOSURE_CAP} elements"
                        )
        frontier = next_frontier
    return elements


def burnside_count(group: GroupSpec) -> int:
    """Orbit count as the average number of fixed masks over the group.

    A coordinate permutation fixes exactly 2^(number of its cycles) masks.
    """
    elements = _closure(group)
    total = 0
    for elem in elements:
        total += 1 << len(cycle_type(elem))
    count, remainder = divmod(total, len(elements))
    if remainder:
        raise AssertionError("Burnside sum not divisible by group order")
    return count


def _euler_phi(t: int) -> int:
    result = t
    m = t
    f = 2
    while f * f <= m:
        if m % f == 0:
            while m % f == 0:
                m //= f
            result -= result // f
        f += 1
    if m > 1:
        result -= result // m
    return result


def count_k_rsbf(n: int, k: int) -> int:
    """Closed-form orbit count under the cyclic group of k-step rotations:
    (k/n) * sum over t | n/k of phi(t) * 2^(n/t)."""
    if k < 1 or n % k:
        raise ValueError(f"k must divide n, got k={k}, n={n}")
    quotient = n // k
    total = sum(
        _euler_phi(t) * (1 << (n // t)) for t in range(1, quotient + 1)
        if quotient % t == 0
    )
    value, remainder = divmod(k * total, n)
    if remainder:
        raise AssertionError("rotation orbit count is not an integer")
    return value


def count_k_dsbf(n: int, k: int) -> int:
    """Closed-form orbit count with the reflection added: half the rotation
    count plus a boundary term for the self-reflective orbits."""
    g = count_k_rsbf(n, k)
    if n % 2 == 0 and k % 2 == 0:
        extra = 1 << (n // 2 - 1)
    elif n % 2 == 0:
        extra = 3 * (1 << (n // 2)) // 4
    else:
        extra = 1 << ((n - 1) // 2)
    return g // 2 + extra


def fold(tt: TruthTable, partition: OrbitPartition) -> FoldedFunction:
    """Restrict an invariant table to orbit representatives.

    Raises FoldError naming the first orbit on which the table is not
    constant, which makes this the invariance checker as well.
    """
    if tt.n != partition.n:
        raise ValueError("table and partition disagree on n")
    rep_values = tt.bits[partition.reps]
    mismatch = rep_values[partition.orbit_of] != tt.bits
    if mismatch.any():
        orbit = int(partition.orbit_of[mismatch].min())
        raise FoldError(orbit, int(partition.reps[orbit]))
    return FoldedFunction(partition, rep_values)


def unfold(ff: FoldedFunction) -> TruthTable:
    return TruthTable(ff.partition.n, ff.values[ff.partition.orbit_of])


def fold_matrix(partition: OrbitPartition) -> FoldMatrix:
    """Character-sum matrix taking folded sign vectors to the Walsh spectrum
    on representatives."""
    count = len(partition)
    if count > FOLD_ORBIT_CAP:
        raise ValueError(f"{count} orbits exceed the fold-matrix cap {FOLD_ORBIT_CAP}")
    x = np.arange(1 << partition.n, dtype=np.int64)
    m = np.empty((count, count), dtype=np.int32)
    for j, rep in enumerate(partition.reps):
        signs = 1 - 2 * (np.bitwise_count(x & rep) & 1).astype(np.int64)
        # bincount sums in float64; entries are bounded by 2^n so this is exact
        m[:, j] = np.bincount(
            partition.orbit_of, weights=signs, minlength=count
        ).astype(np.int32)
    return FoldMatrix(partition, m)


def folded_walsh(ff: FoldedFunction, fm: FoldMatrix) -> np.ndarray:
    """Walsh spectrum at orbit representatives: W[j] = sum_i signs[i]*m[i,j].

    Because an invariant function's spectrum is constant on orbits, the
    maximum magnitude over this vector equals the full-spectrum maximum.
    """
    if fm.partition is not ff.partition and not np.array_equal(
        fm.partition.reps, ff.partition.reps
    ):
        raise ValueError("folded function and matrix use different partitions")
    signs = 1 - 2 * ff.values.astype(np.int64)
    return _kernels.folded_walsh_signs(fm.m, signs)


def folded_walsh_delta(
    spectrum: np.ndarray, fm: FoldMatrix, orbit: int, sign: int
) -> np.ndarray:
    """Spectrum after flipping folded bit `orbit`, given the pre-flip sign
    (-1)^f(rep): every entry moves by -2 * sign * m[orbit, :]."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return spectrum - 2 * sign * fm.m[orbit].astype(np.int64)


# --- group parsing ---------------------------------------------------------

_PERM_RE = re.compile(r"^\(?([0-9]+(?:\s*,\s*[0-9]+)*)\)?$")


def _parse_atom(atom: str, n: int) -> tuple[CoordPerm, ...]:
    atom = atom.strip()
    lowered = atom.lower()
    if lowered == "trivial":
        return (identity(n),)
    if lowered == "rsbf":
        return (rho(n, 1),)
    if lowered == "dsbf":
        return (rho(n, 1), tau(n))
    preset = re.fullmatch(r"k-(r|d)sbf:(\d+)", lowered)
    if preset:
        k = int(preset.group(2))
        if k < 1 or n % k:
            raise ValueError(f"group {atom!r} needs k | n, got k={k}, n={n}")
        return (rho(n, k),) if preset.group(1) == "r" else (rho(n, k), tau(n))
    if lowered == "tau":
        return (tau(n),)
    if lowered == "rho":
        return (rho(n, 1),)
    kmatch = re.fullmatch(r"rho[:^](\d+)", lowered)
    if kmatch:
        return (rho(n, int(kmatch.group(1))),)
    if lowered.startswith("perm:"):
        atom = atom[len("perm:"):]
    pmatch = _PERM_RE.fullmatch(atom)
    if pmatch:
        mapping = tuple(int(v) for v in pmatch.group(1).split(","))
        if len(mapping) != n:
            raise ValueError(
                f"permutation {atom!r} has {len(mapping)} entries, expected {n}"
            )
        return (CoordPerm(n, mapping),)
    raise ValueError(f"cannot parse generator {atom!r}")


def parse_group(text: str, n: int) -> GroupSpec:
    """Parse a group description: a '+'-joined list of generators, each a
    preset ("trivial", "rsbf", "dsbf", "k-rsbf:K", "k-dsbf:K"), "rho",
    "rho:K", "tau", or a permutation tuple "(2,0,1,...)" / "perm:(...)"."""
    generators: list[CoordPerm] = []
    for atom in text.strip().split("+"):
        generators.extend(_parse_atom(atom, n))
    return GroupSpec(n, tuple(generators), name=text.strip())
