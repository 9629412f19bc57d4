"""Exact spectral and algebraic analysis of Boolean functions on n <= 16 variables.

A function f on n variables is stored as its truth table: a vector of 2^n
bits where the entry at index i is f(x) for the input x with x_j equal to
bit j of i (x_0 is the least significant bit).  That index convention is
fixed project-wide; every coordinate permutation, spectrum and hex string
in the package refers to it.

All spectra are exact signed integers; this module never touches floating
point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels

MAX_VARS = 16

# Hex truth-table conventions.  A string of 2^n/4 hex digits covers the
# table in index order, digit c holding indices 4c..4c+3.  MSB_FIRST places
# the most significant bit of each nibble at index 4c and is the canonical
# order: it is the unique one under which the bundled published tables
# reproduce their recorded spectra *and* their symmetry groups (the mirror
# order preserves the spectra but breaks invariance).
MSB_FIRST = "nibble-msb-first"
LSB_FIRST = "nibble-lsb-first"
CANONICAL_HEX = MSB_FIRST

_HEX_DIGITS = "0123456789ABCDEF"


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_VARS:
        raise ValueError(f"variable count must be in 1..{MAX_VARS}, got {n}")


@dataclass(frozen=True)
class TruthTable:
    """2^n-entry evaluation vector of an n-variable Boolean function."""

    n: int
    bits: np.ndarray

    def __post_init__(self):
        _check_n(self.n)
        bits = np.ascontiguousarray(self.bits, dtype=np.uint8)
        if bits.shape != (1 << self.n,):
            raise ValueError(
                f"need {1 << self.n} bits for n={self.n}, got shape {bits.shape}"
            )
        if bits.max(initial=0) > 1:
            raise ValueError("truth table entries must be 0 or 1")
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    def __eq__(self, other):
        return (
            isinstance(other, TruthTable)
            and self.n == other.n
            and np.array_equal(self.bits, other.bits)
        )

    def __hash__(self):
        return hash((self.n, self.bits.tobytes()))

    @property
    def weight(self) -> int:
        return int(self.bits.sum())


@dataclass(frozen=True)
class WalshSpectrum:
    n: int
    values: np.ndarray  # int64, indexed by the mask w

    def __post_init__(self):
        self.values.setflags(write=False)


@dataclass(frozen=True)
class AutocorrSpectrum:
    n: int
    values: np.ndarray  # int64, indexed by the shift d

    def __post_init__(self):
        self.values.setflags(write=False)


@dataclass(frozen=True)
class Anf:
    """Algebraic normal form: coeffs[m] is the coefficient of the monomial
    prod(x_j for j with bit j of m set)."""

    n: int
    coeffs: np.ndarray  # uint8

    def __post_init__(self):
        self.coeffs.setflags(write=False)


@dataclass(frozen=True)
class FunctionReport:
    n: int
    nonlinearity: int
    absolute_indicator: int
    degree: int
    weight: int
    balanced: bool
    walsh_zero_count: int


def decode_hex(hex_string: str, n: int, convention: str = CANONICAL_HEX) -> TruthTable:
    """Decode a hex truth table (whitespace and line wraps are ignored)."""
    if n < 2:
        raise ValueError("hex decoding needs n >= 2 (at least one nibble)")
    _check_n(n)
    digits = "".join(hex_string.split()).upper()
    expected = (1 << n) // 4
    if len(digits) != expected:
        raise ValueError(f"expected {expected} hex digits, got {len(digits)}")
    try:
        nibbles = np.array([_HEX_DIGITS.index(c) for c in digits], dtype=np.uint8)
    except ValueError:
        bad = next(c for c in digits if c not in _HEX_DIGITS)
        raise ValueError(f"non-hex character {bad!r} in truth table") from None
    if convention == MSB_FIRST:
        shifts = np.array([3, 2, 1, 0], dtype=np.uint8)
    elif convention == LSB_FIRST:
        shifts = np.array([0, 1, 2, 3], dtype=np.uint8)
    else:
        raise ValueError(f"unknown hex convention {convention!r}")
    bits = ((nibbles[:, None] >> shifts[None, :]) & 1).reshape(-1)
    return TruthTable(n, bits)


def encode_hex(tt: TruthTable, convention: str = CANONICAL_HEX) -> str:
    """Inverse of decode_hex; emits uppercase digits, no separators."""
    if tt.n < 2:
        raise ValueError("hex encoding needs n >= 2")
    if convention == MSB_FIRST:
        weights = np.array([8, 4, 2, 1], dtype=np.uint8)
    elif convention == LSB_FIRST:
        weights = np.array([1, 2, 4, 8], dtype=np.uint8)
    else:
        raise ValueError(f"unknown hex convention {convention!r}")
    nibbles = (tt.bits.reshape(-1, 4) * weights[None, :]).sum(axis=1)
    return "".join(_HEX_DIGITS[v] for v in nibbles)


def walsh_transform(tt: TruthTable) -> WalshSpectrum:
    """W(w) = sum_x (-1)^f(x) * (-1)^<x,w>, computed by the butterfly."""
    signs = 1 - 2 * tt.bits.astype(np.int64)
    _kernels.fwht_inplace(signs)
    return WalshSpectrum(tt.n, signs)


def nonlinearity(ws: WalshSpectrum) -> int:
    """Distance to the nearest affine function: (2^n - max|W|) / 2."""
    peak = int(np.max(np.abs(ws.values)))
    return ((1 << ws.n) - peak) // 2


def autocorrelation(tt: TruthTable) -> AutocorrSpectrum:
    """r(d) = sum_x (-1)^f(x) * (-1)^f(x^d).

    Computed spectrally: the butterfly applied to the squared Walsh values
    gives 2^n * r, exactly.  Equality with the direct double sum is pinned
    by tests.
    """
    ws = walsh_transform(tt)
    squares = ws.values * ws.values
    _kernels.fwht_inplace(squares)
    return AutocorrSpectrum(tt.n, squares >> tt.n)


def absolute_indicator(ac: AutocorrSpectrum) -> int:
    """Largest off-origin autocorrelation magnitude."""
    if ac.values.size < 2:
        raise ValueError("absolute indicator needs n >= 1")
    return int(np.max(np.abs(ac.values[1:])))


def anf(tt: TruthTable) -> Anf:
    """Binary Mobius transform of the truth table (self-inverse)."""
    coeffs = tt.bits.copy()
    _kernels.mobius_inplace(coeffs)
    return Anf(tt.n, coeffs)


def anf_to_table(a: Anf) -> TruthTable:
    bits = a.coeffs.copy()
    _kernels.mobius_inplace(bits)
    return TruthTable(a.n, bits)


def degree(a: Anf) -> int:
    """Largest monomial size with a nonzero coefficient (0 for the zero
    function)."""
    support = np.nonzero(a.coeffs)[0]
    if support.size == 0:
        return 0
    return int(np.max(np.bitwise_count(support)))


def walsh_zeros(ws: WalshSpectrum) -> list[int]:
    """Masks w != 0 with W(w) = 0, ascending.

    A nonzero entry in this list means the function can be XORed with the
    linear function <x,w> to balance it without losing nonlinearity or
    autocorrelation flatness.
    """
    zeros = np.nonzero(ws.values[1:] == 0)[0] + 1
    return [int(w) for w in zeros]


def add_linear(tt: TruthTable, u: int) -> TruthTable:
    """XOR the linear function <x,u> onto f; preserves nl and the absolute
    indicator."""
    if not 0 <= u < (1 << tt.n):
        raise ValueError(f"linear mask {u} out of range for n={tt.n}")
    x = np.arange(1 << tt.n, dtype=np.uint32)
    parity = (np.bitwise_count(x & np.uint32(u)) & 1).astype(np.uint8)
    return TruthTable(tt.n, tt.bits ^ parity)


def complement(tt: TruthTable) -> TruthTable:
    return TruthTable(tt.n, tt.bits ^ 1)


def direct_sum(f: TruthTable, g: TruthTable) -> TruthTable:
    """h(x, y) = f(x) XOR g(y) on f.n + g.n variables, f's variables in the
    low index bits."""
    n = f.n + g.n
    if n > MAX_VARS:
        raise ValueError(f"direct sum would need {n} > {MAX_VARS} variables")
    bits = np.bitwise_xor.outer(g.bits, f.bits).reshape(-1)
    return TruthTable(n, bits)


def bent_inner_product(n: int) -> TruthTable:
    """The canonical bent function x_0 x_1 ^ x_2 x_3 ^ ... on even n."""
    if n < 2 or n % 2:
        raise ValueError("inner-product bent functions need even n >= 2")
    x = np.arange(1 << n, dtype=np.uint32)
    acc = np.zeros(1 << n, dtype=np.uint8)
    for j in range(0, n, 2):
        acc ^= ((x >> j) & (x >> (j + 1)) & 1).astype(np.uint8)
    return TruthTable(n, acc)


def analyze(tt: TruthTable) -> FunctionReport:
    """All scalar figures of merit in one pass."""
    ws = walsh_transform(tt)
    ac = autocorrelation(tt)
    weight = tt.weight
    return FunctionReport(
        n=tt.n,
        nonlinearity=nonlinearity(ws),
        absolute_indicator=absolute_indicator(ac),
        degree=degree(anf(tt)),
        weight=weight,
        balanced=weight == (1 << (tt.n - 1)),
        walsh_zero_count=len(walsh_zeros(ws)),
    )
