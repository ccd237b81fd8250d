"""Claim corpus for power functions with low c-differential uniformity.

Each claim ("the function x^d over GF(p^n) has c-differential uniformity at
most / exactly v for every c satisfying some condition") lives as a line of
``data/claims.txt``.  This module parses that file into :class:`ClaimEntry`
objects and checks every claim by exhaustion over a built field.
"""

from __future__ import annotations

import ast
import math
import operator
import re
import time
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable

import numpy as np

from .cdiff import uniformity_full, uniformity_power
from .character import chi, trace
from .errors import NotApplicableError
from .field import Field

MANIFEST = Path(__file__).with_name("data") / "claims.txt"

EXACT, UPPER, APN = "exact", "upper", "apn"
PASS, FAIL, NOT_APPLICABLE = "pass", "fail", "not-applicable"


# -- integer expression language used by the manifest -------------------------

class _NotIntegral(Exception):
    pass


_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Pow: operator.pow,
    ast.Mod: operator.mod,
    ast.FloorDiv: operator.floordiv,
}
_CMPOPS = {
    ast.Eq: operator.eq,
    ast.NotEq: operator.ne,
    ast.Lt: operator.lt,
    ast.LtE: operator.le,
    ast.Gt: operator.gt,
    ast.GtE: operator.ge,
}


def _exact_div(a: int, b: int) -> int:
    if b == 0 or a % b:
        raise _NotIntegral(f"{a}/{b} is not an integer")
    return a // b


def _eval(node, env):
    if isinstance(node, ast.Expression):
        return _eval(node.body, env)
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.Name):
        return env[node.id]
    if isinstance(node, ast.BinOp):
        left, right = _eval(node.left, env), _eval(node.right, env)
        if isinstance(node.op, ast.Div):
            return _exact_div(left, right)
        return _BINOPS[type(node.op)](left, right)
    if isinstance(node, ast.UnaryOp):
        val = _eval(node.operand, env)
        if isinstance(node.op, ast.USub):
            return -val
        if isinstance(node.op, ast.Not):
            return not val
    if isinstance(node, ast.BoolOp):
        vals = (_eval(v, env) for v in node.values)
        return all(vals) if isinstance(node.op, ast.And) else any(vals)
    if isinstance(node, ast.Compare):
        left = _eval(node.left, env)
        for op, comp in zip(node.ops, node.comparators):
            right = _eval(comp, env)
            if not _CMPOPS[type(op)](left, right):
                return False
            left = right
        return True
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "gcd":
        return math.gcd(*(_eval(a, env) for a in node.args))
    raise ValueError(f"unsupported syntax in claim expression: {ast.dump(node)}")


@lru_cache(maxsize=None)
def _parse(expr: str) -> ast.Expression:
    return ast.parse(expr, mode="eval")


def evaluate(expr: str, **env) -> int | bool:
    """Evaluate a manifest expression; '/' is exact division, '-' is True."""
    if expr == "-":
        return True
    return _eval(_parse(expr), env)


# -- c-conditions ---------------------------------------------------------------
# Each takes the field and an array of candidate codes and returns a boolean mask.

def _const(F: Field, v: int) -> int:
    """The integer v read as an element of the prime subfield."""
    return v % F.p


def _inverse_fours(F: Field) -> tuple[int, int]:
    four = _const(F, 4)
    return four, F.inv(four)


def _chi_pair(F: Field, cs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    four = _const(F, 4)
    first = chi(F, F.sub(F.mul(cs, cs), F.mul(four, cs)))
    second = chi(F, F.sub(1, F.mul(four, cs)))
    return first, second


def _inverse_apcn(F, cs):
    four, four_inv = _inverse_fours(F)
    first, second = _chi_pair(F, cs)
    special = (cs == four) | (cs == four_inv)
    return (cs != 1) & (special | ((first == -1) & (second == -1)))


def _inverse_three(F, cs):
    four, four_inv = _inverse_fours(F)
    first, second = _chi_pair(F, cs)
    excluded = (cs == 0) | (cs == 1) | (cs == four) | (cs == four_inv)
    return ~excluded & ((first == 1) | (second == 1))


def _trace_pair(F, cs):
    safe = np.where(cs == 0, 1, cs)
    return trace(F, cs), trace(F, F.inv(safe))


def _inverse_trace_both_one(F, cs):
    t, t_inv = _trace_pair(F, cs)
    return (cs != 0) & (cs != 1) & (t == 1) & (t_inv == 1)


def _inverse_trace_some_zero(F, cs):
    t, t_inv = _trace_pair(F, cs)
    return (cs != 0) & (cs != 1) & ((t == 0) | (t_inv == 0))


def _ratio_square(F, cs):
    den = F.add(1, cs)
    safe = np.where(den == 0, 1, den)
    ratio = F.div(F.sub(1, cs), safe)
    return (den != 0) & (chi(F, ratio) == 1)


C_CONDITIONS: dict[str, Callable[[Field, np.ndarray], np.ndarray]] = {
    "minus_one": lambda F, cs: cs == F.minus_one,
    "zero": lambda F, cs: cs == 0,
    "one": lambda F, cs: cs == 1,
    "not_one": lambda F, cs: cs != 1,
    "not_pm_one": lambda F, cs: (cs != 1) & (cs != F.minus_one),
    "prime_subfield": lambda F, cs: cs < F.p,
    "inverse_trace_both_one": _inverse_trace_both_one,
    "inverse_trace_some_zero": _inverse_trace_some_zero,
    "inverse_apcn": _inverse_apcn,
    "inverse_three": _inverse_three,
    "ratio_square": _ratio_square,
}


# -- corpus -------------------------------------------------------------------------

@dataclass(frozen=True)
class ClaimRule:
    when: str
    kind: str
    value: int
    source: str


@dataclass(frozen=True)
class ClaimEntry:
    """One claim row; k-parameterized rows become one entry per k value."""

    id: str
    row: str
    p_rule: str
    exponent_rule: str
    c_condition: tuple[str, ...]
    rules: tuple[ClaimRule, ...]
    k: int | None = None
    default_k: tuple[int, ...] = dc_field(default=(), compare=False)

    def _env(self, p: int, n: int) -> dict:
        return {"p": p, "n": n, "q": p**n, "k": self.k if self.k is not None else 0}

    @property
    def sources(self) -> tuple[str, ...]:
        return tuple(r.source for r in self.rules)

    def _holds(self, expr: str, p: int, n: int) -> bool:
        try:
            return bool(evaluate(expr, **self._env(p, n)))
        except _NotIntegral:
            return False

    def why_not(self, p: int, n: int, kinds: Iterable[str]) -> str | None:
        """None if some rule of the given kinds applies, else a description of why not."""
        if self.default_k and self.k is None:
            return f"{self.row} needs a k value"
        if not self._holds(self.p_rule, p, n):
            return f"requires {self.p_rule}"
        rules = [r for r in self.rules if r.kind in kinds]
        if not rules:
            return f"no {'/'.join(kinds)} claim"
        if not any(self._holds(r.when, p, n) for r in rules):
            return "requires " + " or ".join(r.when for r in rules)
        try:
            d = evaluate(self.exponent_rule, **self._env(p, n))
        except _NotIntegral as exc:
            return f"exponent {self.exponent_rule} undefined: {exc}"
        if d < 1:
            return f"exponent {self.exponent_rule} = {d} < 1"
        return None

    def applicable(self, p: int, n: int) -> bool:
        return self.why_not(p, n, (EXACT, UPPER)) is None

    def exponent(self, n: int, p: int = 3) -> int:
        why = self.why_not(p, n, (EXACT, UPPER, APN))
        if why is not None:
            raise NotApplicableError(f"{self.id} not applicable at p={p}, n={n}: {why}")
        return evaluate(self.exponent_rule, **self._env(p, n))

    def rule_at(self, p: int, n: int, kinds=(EXACT, UPPER)) -> ClaimRule:
        why = self.why_not(p, n, kinds)
        if why is not None:
            raise NotApplicableError(f"{self.id} not applicable at p={p}, n={n}: {why}")
        return next(r for r in self.rules if r.kind in kinds and self._holds(r.when, p, n))

    def c_mask(self, F: Field, cs: np.ndarray) -> np.ndarray:
        mask = np.ones(cs.shape, dtype=bool)
        for name in self.c_condition:
            mask &= C_CONDITIONS[name](F, cs)
        return mask


def _parse_manifest(path: Path) -> list[ClaimEntry]:
    grouped: dict[str, list[list[str]]] = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        cols = [c.strip() for c in line.split("|")]
        if len(cols) != 9:
            raise ValueError(f"{path}:{lineno}: expected 9 fields, got {len(cols)}")
        grouped.setdefault(cols[0], []).append(cols)

    rows = []
    for row_id, lines in grouped.items():
        shared = {tuple(c[i] for i in (2, 3, 4, 6)) for c in lines}
        if len(shared) != 1:
            raise ValueError(f"manifest lines for {row_id} disagree on p/exponent/k/c")
        p_rule, exponent_rule, k_spec, c_spec = shared.pop()
        conditions = tuple(s.strip() for s in c_spec.split(","))
        unknown = [c for c in conditions if c not in C_CONDITIONS]
        if unknown:
            raise ValueError(f"{row_id}: unknown c-condition(s) {unknown}")
        rules = []
        for cols in lines:
            if cols[7] not in (EXACT, UPPER, APN):
                raise ValueError(f"{row_id}: unknown claim kind {cols[7]!r}")
            rules.append(ClaimRule(cols[5], cols[7], int(cols[8]), cols[1]))
        default_k = () if k_spec == "-" else tuple(int(v) for v in k_spec.split(","))
        rows.append(
            ClaimEntry(row_id, row_id, p_rule, exponent_rule, conditions, tuple(rules), None, default_k)
        )
    return rows


@lru_cache(maxsize=None)
def manifest_rows(path: Path = MANIFEST) -> tuple[ClaimEntry, ...]:
    """Every manifest row, k-parameterized rows left uninstantiated."""
    return tuple(_parse_manifest(Path(path)))


def instantiate(row: ClaimEntry, k: int) -> ClaimEntry:
    return ClaimEntry(
        f"{row.row}[k={k}]", row.row, row.p_rule, row.exponent_rule, row.c_condition, row.rules, k, row.default_k
    )


def corpus() -> list[ClaimEntry]:
    """All claims, each k-parameterized row expanded over its default k values."""
    out = []
    for row in manifest_rows():
        if row.default_k:
            out.extend(instantiate(row, k) for k in row.default_k)
        else:
            out.append(row)
    return out


_ID_RE = re.compile(r"^(?P<row>[A-Z]\d+)(?:\[k=(?P<k>\d+)\])?$")


def get_entry(claim_id: str, k: int | None = None) -> ClaimEntry:
    """Look up ``F1``, ``T5`` or ``T10[k=3]`` (equivalently ``get_entry("T10", k=3)``)."""
    m = _ID_RE.match(claim_id.strip())
    if not m:
        raise NotApplicableError(f"malformed claim id {claim_id!r}")
    row_id = m["row"]
    if m["k"] is not None:
        k = int(m["k"])
    for row in manifest_rows():
        if row.id == row_id:
            if k is None:
                return row
            if not row.default_k:
                raise NotApplicableError(f"{row_id} takes no k parameter")
            return instantiate(row, k)
    raise NotApplicableError(f"unknown claim id {claim_id!r}")


def _entry(entry_or_id) -> ClaimEntry:
    return entry_or_id if isinstance(entry_or_id, ClaimEntry) else get_entry(entry_or_id)


def family_exponent(claim_id, n: int, p: int = 3) -> int:
    return _entry(claim_id).exponent(n, p)


def claimed_bound(claim_id, n: int, p: int = 3) -> tuple[str, int]:
    rule = _entry(claim_id).rule_at(p, n)
    return rule.kind, rule.value


def enumerate_c(F: Field, entry) -> list[int]:
    """Every c in F satisfying the entry's c-condition, ascending by code."""
    entry = _entry(entry)
    cs = F.elements()
    return [int(c) for c in np.flatnonzero(entry.c_mask(F, cs))]


def desk_instances(entry, q_max: int = 3**7, primes: Iterable[int] = (2, 3, 5, 7)) -> list[tuple[int, int]]:
    """(p, n) pairs with p**n <= q_max at which the entry makes a claim."""
    entry = _entry(entry)
    out = []
    for p in primes:
        n = 1
        while p**n <= q_max:
            if entry.applicable(p, n):
                out.append((p, n))
            n += 1
    return out


# -- verification -------------------------------------------------------------

@dataclass(frozen=True)
class VerificationReport:
    claim: str
    p: int
    n: int
    q: int
    d: int | None
    gcd: int | None
    c: tuple[int, ...]
    computed: tuple[int, ...]
    claimed_kind: str | None
    claimed_value: int | None
    verdict: str
    elapsed_ms: float
    source: str = ""
    note: str = ""

    @property
    def failures(self) -> list[tuple[int, int]]:
        return [(c, v) for c, v in zip(self.c, self.computed) if not _meets(self.claimed_kind, v, self.claimed_value)]


def _meets(kind: str, computed: int, claimed: int) -> bool:
    return computed <= claimed if kind == UPPER else computed == claimed


def _not_applicable(entry: ClaimEntry, F: Field, why: str, t0: float) -> VerificationReport:
    return VerificationReport(
        entry.id, F.p, F.n, F.q, None, None, (), (), None, None, NOT_APPLICABLE,
        (time.perf_counter() - t0) * 1e3, note=why,
    )


def verify_claim(F: Field, entry, *, workers: int = 1, c_values: Iterable[int] | None = None) -> VerificationReport:
    """Check one claim on F for every c satisfying its c-condition.

    ``c_values`` restricts the check to those c (still filtered by the
    condition).  Inapplicable parameters yield a not-applicable verdict.
    """
    t0 = time.perf_counter()
    entry = _entry(entry)
    try:
        rule = entry.rule_at(F.p, F.n)
        d = entry.exponent(F.n, F.p)
    except NotApplicableError as exc:
        return _not_applicable(entry, F, str(exc), t0)

    cs = enumerate_c(F, entry)
    if c_values is not None:
        wanted = set(int(c) for c in c_values)
        cs = [c for c in cs if c in wanted]
    if not cs:
        return _not_applicable(entry, F, "no c in the field satisfies the condition", t0)

    computed = []
    for c in cs:
        if c == 1:
            computed.append(uniformity_full(F, d, c, workers=workers).value)
        else:
            computed.append(uniformity_power(F, d, c, workers=workers).value)
    ok = all(_meets(rule.kind, v, rule.value) for v in computed)
    return VerificationReport(
        entry.id, F.p, F.n, F.q, d, math.gcd(d, F.q - 1), tuple(cs), tuple(computed),
        rule.kind, rule.value, PASS if ok else FAIL, (time.perf_counter() - t0) * 1e3, rule.source,
    )


def apn_crosscheck(claim_id, F: Field, *, workers: int = 1) -> VerificationReport:
    """Classical (c = 1) differential uniformity of the family's exponent vs. the APN claim."""
    t0 = time.perf_counter()
    entry = _entry(claim_id)
    rule = entry.rule_at(F.p, F.n, kinds=(APN,))
    d = entry.exponent(F.n, F.p)
    value = uniformity_full(F, d, 1, workers=workers).value
    return VerificationReport(
        entry.id, F.p, F.n, F.q, d, math.gcd(d, F.q - 1), (1,), (value,), EXACT, rule.value,
        PASS if value == rule.value else FAIL, (time.perf_counter() - t0) * 1e3, rule.source,
    )
