"""Finite fields GF(p^n) with exp/log tables.

Elements are plain integers in ``[0, q)``: the base-p digits of a code are the
coefficients of the residue polynomial, least significant digit = constant
term.  Every arithmetic method accepts either a Python int or a numpy integer
array and returns the same kind of object, so full-field scans stay vectorized.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import (
    DatabaseMissError,
    FieldSizeError,
    InvalidPolynomialError,
    IrreducibilityError,
)

DEFAULT_MAX_ORDER = 3**16
POLY_DB_ENV = "CDIFFKIT_POLY_DB"
_BUNDLED_DB = Path(__file__).with_name("data") / "conway.txt"


# -- integer helpers ---------------------------------------------------------

def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def prime_factors(m: int) -> list[int]:
    """Distinct prime factors of ``m`` in ascending order (trial division)."""
    out = []
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1 if f == 2 else 2
    if m > 1:
        out.append(m)
    return out


# -- dense polynomials over GF(p), coefficient lists constant-term first -----

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        coef = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - coef * fc) % p
        _trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _poly_mod(prod, f, p)


def _poly_powmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(a, f, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        e >>= 1
        if e:
            base = _poly_mulmod(base, base, f, p)
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def check_irreducible(poly: Sequence[int], p: int) -> bool:
    """True iff the monic ``poly`` (constant term first) is irreducible over GF(p).

    Uses gcd(x^(p^k) - x, poly) = 1 for every k <= deg/2.
    """
    coeffs = [int(c) for c in poly]
    if len(coeffs) < 2:
        raise InvalidPolynomialError("polynomial must have degree >= 1")
    if any(c < 0 or c >= p for c in coeffs):
        raise InvalidPolynomialError(f"coefficients must lie in [0, {p})")
    if coeffs[-1] != 1:
        raise InvalidPolynomialError("polynomial must be monic")
    deg = len(coeffs) - 1
    if deg == 1:
        return True
    h = [0, 1]
    for _ in range(deg // 2):
        h = _poly_powmod(h, p, coeffs, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        if len(_poly_gcd(coeffs, diff, p)) > 1:
            return False
    return True


# -- polynomial database -----------------------------------------------------

def load_modulus(p: int, n: int, path: str | os.PathLike | None = None) -> tuple[int, ...]:
    """Look up the modulus for GF(p^n) in a ``p n c0 ... cn`` text database.

    The path defaults to ``$CDIFFKIT_POLY_DB`` and then to the bundled Conway table.
    """
    if path is None:
        path = os.environ.get(POLY_DB_ENV) or _BUNDLED_DB
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            fields = [int(tok) for tok in line.split()]
            if fields[0] == p and fields[1] == n:
                coeffs = tuple(fields[2:])
                if len(coeffs) != n + 1:
                    raise InvalidPolynomialError(
                        f"database record for ({p}, {n}) has {len(coeffs)} coefficients"
                    )
                return coeffs
    raise DatabaseMissError(f"no modulus for GF({p}^{n}) in {path}")


# -- the field ---------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    p: int
    n: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.n


@dataclass(frozen=True, eq=False)
class Field:
    """An immutable GF(p^n) backed by exp/log tables.

    ``log[0]`` holds -1 as a sentinel; ``exp`` has length 2(q-1) so that the sum
    of two logs can index it without reduction.
    """

    spec: FieldSpec
    generator: int
    exp: np.ndarray = dc_field(repr=False)
    log: np.ndarray = dc_field(repr=False)

    @property
    def p(self) -> int:
        return self.spec.p

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def modulus(self) -> tuple[int, ...]:
        return self.spec.modulus

    @property
    def minus_one(self) -> int:
        return self.neg(1)

    def __repr__(self) -> str:
        return f"Field(GF({self.p}^{self.n}), modulus={self.modulus}, generator={self.generator})"

    # encoding

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def digits(self, x: int) -> list[int]:
        self._check(x)
        return [(x // self.p**i) % self.p for i in range(self.n)]

    def from_digits(self, digits: Sequence[int]) -> int:
        if len(digits) > self.n:
            raise ValueError(f"at most {self.n} digits expected")
        return sum((int(d) % self.p) * self.p**i for i, d in enumerate(digits))

    def _check(self, x) -> None:
        if isinstance(x, (int, np.integer)) and not 0 <= x < self.q:
            raise ValueError(f"element code {x} outside [0, {self.q})")

    # additive structure: digit-wise arithmetic mod p

    def add(self, x, y):
        self._check(x)
        self._check(y)
        p = self.p
        if p == 2:
            return x ^ y
        out = 0
        w = 1
        for _ in range(self.n):
            out = out + ((x // w + y // w) % p) * w
            w *= p
        return out

    def neg(self, x):
        self._check(x)
        p = self.p
        if p == 2:
            return x
        out = 0
        w = 1
        for _ in range(self.n):
            out = out + ((-(x // w)) % p) * w
            w *= p
        return out

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    # multiplicative structure: exp/log lookups

    def mul(self, x, y):
        if isinstance(x, np.ndarray) or isinstance(y, np.ndarray):
            x = np.asarray(x, dtype=np.int64)
            y = np.asarray(y, dtype=np.int64)
            lx = self.log[x].astype(np.int64)
            ly = self.log[y].astype(np.int64)
            prod = self.exp[np.maximum(lx + ly, 0)].astype(np.int64)
            return np.where((x == 0) | (y == 0), 0, prod)
        self._check(x)
        self._check(y)
        if x == 0 or y == 0:
            return 0
        return int(self.exp[int(self.log[x]) + int(self.log[y])])

    def inv(self, x):
        if isinstance(x, np.ndarray):
            if np.any(x == 0):
                raise ZeroDivisionError("inverse of 0 in a finite field")
            return self.exp[(self.q - 1) - self.log[x].astype(np.int64)].astype(np.int64)
        self._check(x)
        if x == 0:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        return int(self.exp[(self.q - 1) - int(self.log[x])])

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def pow(self, x, d: int):
        """``x**d``; 0**0 is taken to be 1, and d is reduced mod q-1 only for x != 0."""
        if d < 0:
            raise ValueError("exponent must be non-negative")
        e = d % (self.q - 1)
        if isinstance(x, np.ndarray):
            x = np.asarray(x, dtype=np.int64)
            lx = self.log[x].astype(np.int64)
            val = self.exp[(np.maximum(lx, 0) * e) % (self.q - 1)].astype(np.int64)
            return np.where(x == 0, 1 if d == 0 else 0, val)
        self._check(x)
        if x == 0:
            return 1 if d == 0 else 0
        return int(self.exp[(int(self.log[x]) * e) % (self.q - 1)])

    def order(self, x: int) -> int:
        """Multiplicative order of a nonzero element."""
        if x == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        return (self.q - 1) // math.gcd(int(self.log[x]), self.q - 1)


def _multiplication_matrix(g: list[int], f: list[int], p: int, n: int) -> np.ndarray:
    """n x n matrix over GF(p) of the map y -> g*y in the polynomial basis."""
    m = np.zeros((n, n), dtype=np.int64)
    for j in range(n):
        basis = [0] * j + [1]
        col = _poly_mulmod(g, basis, f, p)
        m[: len(col), j] = col
    return m


def _matpow_mod(m: np.ndarray, e: int, p: int) -> np.ndarray:
    result = np.eye(m.shape[0], dtype=np.int64)
    base = m % p
    while e:
        if e & 1:
            result = (result @ base) % p
        e >>= 1
        if e:
            base = (base @ base) % p
    return result


def _power_table(g: list[int], f: list[int], p: int, n: int, count: int) -> np.ndarray:
    """Codes of g^0, g^1, ..., g^(count-1), built block-wise with matrix products."""
    mat = _multiplication_matrix(g, f, p, n)
    weights = p ** np.arange(n, dtype=np.int64)
    block = max(1, math.isqrt(count))
    base = np.zeros((n, block), dtype=np.int64)
    v = np.zeros(n, dtype=np.int64)
    v[0] = 1
    for i in range(block):
        base[:, i] = v
        v = (mat @ v) % p
    step = _matpow_mod(mat, block, p)
    # float64 products are exact here (entries < p, n <= 64) and go through BLAS
    base_f = base.astype(np.float64)
    weights_f = weights.astype(np.float64)
    out = np.empty(-(-count // block) * block, dtype=np.int64)
    cur = np.eye(n, dtype=np.int64)
    for k in range(0, len(out), block):
        prod = cur.astype(np.float64) @ base_f
        out[k : k + block] = weights_f @ (prod - p * np.floor(prod / p))
        cur = (step @ cur) % p
    return out[:count]


def _find_generator(f: list[int], p: int, n: int) -> int:
    q = p**n
    if q == 2:
        return 1
    cofactors = [(q - 1) // ell for ell in prime_factors(q - 1)]
    for g in range(2, q):
        digits = [(g // p**i) % p for i in range(n)]
        if all(_poly_powmod(digits, e, f, p) != [1] for e in cofactors):
            return g
    raise RuntimeError(f"no generator found for GF({p}^{n})")  # unreachable for a field


def build_field(
    p: int,
    n: int,
    modulus: Sequence[int] | None = None,
    *,
    max_order: int = DEFAULT_MAX_ORDER,
    db_path: str | os.PathLike | None = None,
) -> Field:
    """Build GF(p^n).

    Without ``modulus`` the polynomial is read from the database (see
    :func:`load_modulus`).  The generator is the smallest code >= 2 of order
    q-1 (1 for GF(2)).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("extension degree must be >= 1")
    q = p**n
    if q > max_order:
        raise FieldSizeError(f"GF({p}^{n}) has {q} elements, above the cap {max_order}")
    if modulus is None:
        modulus = load_modulus(p, n, db_path)
    modulus = tuple(int(c) for c in modulus)
    if len(modulus) != n + 1:
        raise InvalidPolynomialError(f"modulus must have {n + 1} coefficients, got {len(modulus)}")
    if not check_irreducible(modulus, p):
        raise IrreducibilityError(f"modulus {modulus} is reducible over GF({p})")

    f = list(modulus)
    g = _find_generator(f, p, n)
    g_digits = [(g // p**i) % p for i in range(n)]
    powers = _power_table(g_digits, f, p, n, q - 1)

    log = np.full(q, -1, dtype=np.int32)
    log[powers] = np.arange(q - 1, dtype=np.int32)
    if log[0] != -1 or np.any(log[1:] < 0):
        raise RuntimeError("exp table is not a permutation of the nonzero elements")
    exp = np.concatenate([powers, powers]).astype(np.int32)
    if not np.array_equal(exp[log[1:]], np.arange(1, q, dtype=np.int32)):
        raise RuntimeError("exp/log round trip failed")
    exp.setflags(write=False)
    log.setflags(write=False)
    return Field(FieldSpec(p, n, modulus), g, exp, log)
