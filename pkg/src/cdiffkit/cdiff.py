"""c-differential counts, spectra and uniformity.

For F: GF(q) -> GF(q) and a, b, c in GF(q), the c-derivative count is
#{x : F(x+a) - c F(x) = b}.  The c-differential uniformity is its maximum over
all (a, b), with a = 0 excluded only when c = 1.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import HypothesisError
from .field import Field

MAX_WITNESSES = 16
FULL = "full-brute-force"
FAST = "power-fast-path"


@dataclass(frozen=True)
class PowerExponent:
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("power exponent must be >= 1")

    def table(self, F: Field) -> np.ndarray:
        return F.pow(F.elements(), self.d)


@dataclass(frozen=True, eq=False)
class LookupTable:
    values: np.ndarray

    def table(self, F: Field) -> np.ndarray:
        vals = np.asarray(self.values, dtype=np.int64)
        if vals.shape != (F.q,):
            raise ValueError(f"lookup table must have length {F.q}, got {vals.shape}")
        if vals.size and (vals.min() < 0 or vals.max() >= F.q):
            raise ValueError("lookup table values must be element codes")
        return vals


FunctionUnderTest = Union[PowerExponent, LookupTable]


def as_function(fn) -> FunctionUnderTest:
    """Accept an int exponent as shorthand for :class:`PowerExponent`."""
    if isinstance(fn, (int, np.integer)):
        return PowerExponent(int(fn))
    return fn


@dataclass(frozen=True, eq=False)
class SpectrumResult:
    c: int
    a: int
    counts: np.ndarray

    @property
    def uniformity_row(self) -> int:
        return int(self.counts.max())

    @property
    def multiplicity_multiset(self) -> dict[int, int]:
        """k -> number of b with exactly k solutions, ascending k."""
        ks, freq = np.unique(self.counts, return_counts=True)
        return {int(k): int(f) for k, f in zip(ks, freq)}


@dataclass(frozen=True)
class UniformityResult:
    value: int
    witnesses: tuple[tuple[int, int], ...]
    method: str
    c: int
    gcd_term: int | None = None


# -- internals ---------------------------------------------------------------

def _ranges(q: int, workers: int) -> list[tuple[int, int]]:
    workers = max(1, min(workers, q))
    bounds = [q * i // workers for i in range(workers + 1)]
    return [(lo, hi) for lo, hi in zip(bounds, bounds[1:]) if hi > lo]


def _row_counts(F: Field, values: np.ndarray, c_values: np.ndarray, a: int, workers: int) -> np.ndarray:
    """counts[b] = #{x : values[x + a] - c_values[x] = b}; one local histogram per x-range."""

    def part(bounds):
        lo, hi = bounds
        xs = np.arange(lo, hi, dtype=np.int64)
        shifted = values[F.add(xs, a)] if a else values[lo:hi]
        diff = F.sub(shifted, c_values[lo:hi])
        return np.bincount(diff, minlength=F.q).astype(np.uint32)

    ranges = _ranges(F.q, workers)
    if len(ranges) == 1:
        return part(ranges[0])
    with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
        parts = list(pool.map(part, ranges))
    total = np.zeros(F.q, dtype=np.uint32)
    for h in parts:
        total += h
    return total


def _witnesses_of(a: int, counts: np.ndarray, value: int, room: int) -> list[tuple[int, int]]:
    if room <= 0:
        return []
    bs = np.flatnonzero(counts == value)[:room]
    return [(a, int(b)) for b in bs]


# -- public operations -------------------------------------------------------

def c_derivative_count(F: Field, fn, a: int, b: int, c: int) -> int:
    """#{x : fn(x+a) - c*fn(x) = b}, by a full scan."""
    values = as_function(fn).table(F)
    xs = F.elements()
    lhs = F.sub(values[F.add(xs, a)], F.mul(c, values))
    return int(np.count_nonzero(lhs == b))


def delta_row_histogram(F: Field, fn, a: int, c: int, *, workers: int = 1) -> SpectrumResult:
    """Histogram of x -> fn(x+a) - c*fn(x) over the whole field.

    With a = 1 and c = -1 this is the count delta(b) of solutions of
    (x+1)^d + x^d = b for a power function.
    """
    F._check(a)
    F._check(c)
    values = as_function(fn).table(F)
    counts = _row_counts(F, values, F.mul(c, values), a, workers)
    return SpectrumResult(c=c, a=a, counts=counts)


def uniformity_full(F: Field, fn, c: int, *, workers: int = 1) -> UniformityResult:
    """Brute-force c-differential uniformity over every admissible (a, b).

    No early exit: every row is computed so the witness list is the first
    MAX_WITNESSES maximizing pairs in (a, b) code order.
    """
    F._check(c)
    fn = as_function(fn)
    values = fn.table(F)
    c_values = F.mul(c, values)
    best = 0
    witnesses: list[tuple[int, int]] = []
    for a in range(0 if c != 1 else 1, F.q):
        counts = _row_counts(F, values, c_values, a, workers)
        m = int(counts.max())
        if m > best:
            best, witnesses = m, []
        if m == best:
            witnesses += _witnesses_of(a, counts, m, MAX_WITNESSES - len(witnesses))
    gcd_term = math.gcd(fn.d, F.q - 1) if isinstance(fn, PowerExponent) else None
    return UniformityResult(best, tuple(witnesses), FULL, c, gcd_term)


def uniformity_power(F: Field, d: int, c: int, *, workers: int = 1) -> UniformityResult:
    """c-differential uniformity of x^d for c != 1 from the a = 1 row alone.

    For a != 0 the rows are permutations of the a = 1 row; the a = 0 row has
    maximum gcd(d, q-1).  Witnesses are (1, b) pairs from the row and, when the
    gcd term attains the value, (0, 1 - c).
    """
    if c == 1:
        raise HypothesisError("the power-function reduction needs c != 1; use uniformity_full")
    spectrum = delta_row_histogram(F, PowerExponent(d), 1, c, workers=workers)
    g = math.gcd(d, F.q - 1)
    row_max = spectrum.uniformity_row
    value = max(row_max, g)
    witnesses: list[tuple[int, int]] = []
    if g == value:
        witnesses.append((0, F.sub(1, c)))
    if row_max == value:
        witnesses += _witnesses_of(1, spectrum.counts, value, MAX_WITNESSES - len(witnesses))
    return UniformityResult(value, tuple(witnesses), FAST, c, g)


def classify(r: UniformityResult | int) -> str:
    value = r.value if isinstance(r, UniformityResult) else int(r)
    if value == 1:
        return "PcN"
    if value == 2:
        return "APcN"
    return f"differentially (c,{value})-uniform"


def scan_exponents(F: Field, c: int, threshold: int, *, workers: int = 1) -> list[tuple[int, int]]:
    """All d in [1, q-2] whose c-differential uniformity is at most ``threshold``."""
    hits = []
    for d in range(1, F.q - 1):
        value = uniformity_power(F, d, c, workers=workers).value
        if value <= threshold:
            hits.append((d, value))
    return hits

