"""Command-line front end.

    cdiffkit field-info --p 3 --n 5
    cdiffkit uniformity --p 3 --n 5 --d 13 --c -1 --format json
    cdiffkit spectrum --p 3 --n 7 --d 40 --c -1
    cdiffkit verify --family F1 --p 3 --n-max 13 --c -1
    cdiffkit scan --p 3 --n 3 --c -1 --threshold 1

Exit status: 0 on success / all claims pass, 1 if any claim fails, 2 on usage
or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import __version__
from .cdiff import classify, delta_row_histogram, uniformity_full, uniformity_power
from .errors import CDiffError, ElementLiteralError
from .families import (
    APN,
    FAIL,
    VerificationReport,
    apn_crosscheck,
    corpus,
    desk_instances,
    get_entry,
    verify_claim,
)
from .field import Field, build_field

REPORT_COLUMNS = ("claim", "p", "n", "q", "d", "gcd", "c", "computed", "claimed", "verdict", "elapsed_ms")
DEFAULT_N_MAX = 13


@dataclass
class RunConfig:
    command: str
    p: int
    n: int | None = None
    modulus: tuple[int, ...] | None = None
    d: int | None = None
    c: str | None = None
    a: str = "1"
    family: list[str] | None = None
    k: int | None = None
    n_min: int = 1
    n_max: int = DEFAULT_N_MAX
    apn: bool = False
    full: bool = False
    threshold: int = 2
    format: str = "human"
    workers: int = 1
    out: str | None = None
    timing: bool = True


_G_POWER = re.compile(r"^g\^(\d+)$")


def parse_element(literal: str, F: Field) -> int:
    """Decode an element literal: a decimal code, ``-1``, or ``g^k``."""
    text = literal.strip()
    if text == "-1":
        return F.neg(1)
    m = _G_POWER.match(text)
    if m:
        return int(F.exp[int(m.group(1)) % (F.q - 1)])
    if not text.isdigit():
        raise ElementLiteralError(f"malformed element literal {literal!r}")
    code = int(text)
    if code >= F.q:
        raise ElementLiteralError(f"element code {code} outside [0, {F.q})")
    return code


def parse_modulus(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise ElementLiteralError(f"malformed modulus {text!r}; expected c0,c1,...,cn") from None


# -- report emission ------------------------------------------------------------

def _natural_key(claim: str) -> tuple:
    return tuple(int(t) if t.isdigit() else t for t in re.split(r"(\d+)", claim))


def _record(r: VerificationReport, timing: bool) -> dict:
    return {
        "claim": r.claim,
        "p": r.p,
        "n": r.n,
        "q": r.q,
        "d": r.d,
        "gcd": r.gcd,
        "c": list(r.c),
        "computed": list(r.computed),
        "claimed": {"kind": r.claimed_kind, "value": r.claimed_value},
        "verdict": r.verdict,
        "elapsed_ms": round(r.elapsed_ms, 3) if timing else None,
    }


def sort_reports(reports) -> list[VerificationReport]:
    return sorted(reports, key=lambda r: (_natural_key(r.claim), r.p, r.n, r.c[:1]))


def emit_report(reports, fmt: str = "json", *, timing: bool = True) -> bytes:
    """Serialize verification reports; records are sorted by (claim, n, first c)."""
    records = [_record(r, timing) for r in sort_reports(reports)]
    if fmt == "json":
        return (json.dumps(records, separators=(",", ":")) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(REPORT_COLUMNS[:8] + ("claimed_kind", "claimed_value") + REPORT_COLUMNS[9:])
        for rec in records:
            writer.writerow([
                rec["claim"], rec["p"], rec["n"], rec["q"], rec["d"], rec["gcd"],
                " ".join(map(str, rec["c"])), " ".join(map(str, rec["computed"])),
                rec["claimed"]["kind"], rec["claimed"]["value"], rec["verdict"],
                "" if rec["elapsed_ms"] is None else rec["elapsed_ms"],
            ])
        return buf.getvalue().encode()
    lines = []
    for r, rec in zip(sort_reports(reports), records):
        if r.verdict == "not-applicable":
            lines.append(f"{r.claim:<10} GF({r.p}^{r.n}) not-applicable  {r.note}")
            continue
        worst = max(r.computed)
        sign = "<=" if r.claimed_kind == "upper" else "=="
        line = (
            f"{r.claim:<10} GF({r.p}^{r.n}) d={r.d} gcd={r.gcd} #c={len(r.c)} "
            f"max={worst} claim {sign} {r.claimed_value}  {r.verdict}"
        )
        if r.verdict == FAIL:
            line += "  counterexamples(c,value)=" + str(r.failures[:4])
        if timing:
            line += f"  [{r.elapsed_ms:.1f} ms]"
        lines.append(line)
    return ("\n".join(lines) + ("\n" if lines else "")).encode()


def _emit_plain(obj, fmt: str) -> bytes:
    """Output for the non-verify commands: a flat dict or list of dicts."""
    rows = obj if isinstance(obj, list) else [obj]
    if fmt == "json":
        return (json.dumps(obj, separators=(",", ":")) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({k: (" ".join(map(str, v)) if isinstance(v, list) else v) for k, v in row.items()})
        return buf.getvalue().encode()
    return ("\n".join("  ".join(f"{k}={v}" for k, v in row.items()) for row in rows) + "\n").encode()


# -- commands ---------------------------------------------------------------------

def _field(cfg: RunConfig) -> Field:
    return build_field(cfg.p, cfg.n, cfg.modulus)


def _cmd_field_info(cfg: RunConfig):
    F = _field(cfg)
    info = {
        "p": F.p,
        "n": F.n,
        "q": F.q,
        "modulus": list(F.modulus),
        "generator": F.generator,
        "minus_one": F.minus_one,
    }
    return _emit_plain(info, cfg.format), 0


def _cmd_uniformity(cfg: RunConfig):
    F = _field(cfg)
    c = parse_element(cfg.c, F)
    if cfg.full or c == 1:
        r = uniformity_full(F, cfg.d, c, workers=cfg.workers)
    else:
        r = uniformity_power(F, cfg.d, c, workers=cfg.workers)
    out = {
        "p": F.p,
        "n": F.n,
        "q": F.q,
        "d": cfg.d,
        "c": c,
        "value": r.value,
        "gcd": r.gcd_term,
        "class": classify(r),
        "method": r.method,
        "witnesses": [list(w) for w in r.witnesses],
    }
    return _emit_plain(out, cfg.format), 0


def _cmd_spectrum(cfg: RunConfig):
    F = _field(cfg)
    c = parse_element(cfg.c, F)
    a = parse_element(cfg.a, F)
    s = delta_row_histogram(F, cfg.d, a, c, workers=cfg.workers)
    out = {
        "p": F.p,
        "n": F.n,
        "q": F.q,
        "d": cfg.d,
        "a": a,
        "c": c,
        "max": s.uniformity_row,
        "multiplicities": {str(k): v for k, v in s.multiplicity_multiset.items()},
        "at_one": int(s.counts[1]),
        "at_minus_one": int(s.counts[F.minus_one]),
    }
    if cfg.format == "csv":
        out["multiplicities"] = " ".join(f"{k}:{v}" for k, v in out["multiplicities"].items())
    return _emit_plain(out, cfg.format), 0


def _verify_job(entry, p, n, c_literal, apn):
    F = build_field(p, n)
    if apn:
        return apn_crosscheck(entry, F)
    cs = None if c_literal is None else [parse_element(c_literal, F)]
    return verify_claim(F, entry, c_values=cs)


def _cmd_verify(cfg: RunConfig):
    if cfg.family:
        entries = []
        for fam in cfg.family:
            entry = get_entry(fam, cfg.k)
            if entry.default_k and entry.k is None:
                entries.extend(get_entry(fam, k) for k in entry.default_k)
            else:
                entries.append(entry)
    else:
        entries = corpus()
    kinds = (APN,) if cfg.apn else ("exact", "upper")
    jobs = []
    for entry in entries:
        if cfg.apn and not any(r.kind == APN for r in entry.rules):
            continue
        for n in range(cfg.n_min, cfg.n_max + 1):
            if entry.why_not(cfg.p, n, kinds) is None:
                jobs.append((entry, cfg.p, n, cfg.c, cfg.apn))
    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            reports = list(pool.map(lambda job: _verify_job(*job), jobs))
    else:
        reports = [_verify_job(*job) for job in jobs]
    status = 1 if any(r.verdict == FAIL for r in reports) else 0
    return emit_report(reports, cfg.format, timing=cfg.timing), status


def _cmd_scan(cfg: RunConfig):
    F = _field(cfg)
    c = parse_element(cfg.c, F)
    if c == 1:
        raise ElementLiteralError("scan needs c != 1")
    rows = []
    for d in range(1, F.q - 1):
        r = uniformity_power(F, d, c, workers=cfg.workers)
        if r.value <= cfg.threshold:
            rows.append({"d": d, "value": r.value, "gcd": r.gcd_term, "class": classify(r)})
    return _emit_plain(rows, cfg.format), 0


COMMANDS = {
    "field-info": _cmd_field_info,
    "uniformity": _cmd_uniformity,
    "spectrum": _cmd_spectrum,
    "verify": _cmd_verify,
    "scan": _cmd_scan,
}


def run(cfg: RunConfig) -> tuple[bytes, int]:
    """Execute one command; returns (report bytes, exit status)."""
    try:
        return COMMANDS[cfg.command](cfg)
    except CDiffError as exc:
        return f"error: {exc}\n".encode(), 2


# -- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cdiffkit", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, need_n=True):
        sp.add_argument("--p", type=int, required=True, help="field characteristic")
        if need_n:
            sp.add_argument("--n", type=int, required=True, help="extension degree")
            sp.add_argument("--modulus", type=parse_modulus, help="c0,c1,...,cn (constant term first)")
        sp.add_argument("--format", choices=("human", "json", "csv"), default="human")
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--out", help="write the report here instead of stdout")

    common(sub.add_parser("field-info", help="build a field and print its parameters"))

    sp = sub.add_parser("uniformity", help="c-differential uniformity of x^d")
    common(sp)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--c", default="-1", help="element literal: code, -1 or g^k")
    sp.add_argument("--full", action="store_true", help="brute force over all (a, b)")

    sp = sub.add_parser("spectrum", help="histogram of x -> (x+a)^d - c x^d")
    common(sp)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--c", default="-1")
    sp.add_argument("--a", default="1")

    sp = sub.add_parser("verify", help="check corpus claims for n up to --n-max")
    common(sp, need_n=False)
    sp.add_argument("--family", action="append", help="claim id (F1..F6, T1..T19, T10[k=3]); repeatable")
    sp.add_argument("--row", dest="family", action="append", help="alias of --family")
    sp.add_argument("--k", type=int, help="k for parameterized rows")
    sp.add_argument("--n-min", type=int, default=1)
    sp.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    sp.add_argument("--c", default=None, help="restrict to this c (element literal)")
    sp.add_argument("--apn", action="store_true", help="run the c = 1 APN cross-check instead")
    sp.add_argument("--no-timing", dest="timing", action="store_false", help="omit elapsed times")

    sp = sub.add_parser("scan", help="exponents d with uniformity <= threshold")
    common(sp)
    sp.add_argument("--c", default="-1")
    sp.add_argument("--threshold", type=int, default=2)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = {k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__ and v is not None}
    cfg = RunConfig(**fields)
    if cfg.p < 2:
        raise ElementLiteralError("--p must be a prime >= 2")
    if cfg.n is not None and cfg.n < 1:
        raise ElementLiteralError("--n must be >= 1")
    if cfg.d is not None and cfg.d < 1:
        raise ElementLiteralError("--d must be >= 1")
    if cfg.workers < 1:
        raise ElementLiteralError("--workers must be >= 1")
    if cfg.n_min < 1 or cfg.n_max < cfg.n_min:
        raise ElementLiteralError("need 1 <= --n-min <= --n-max")
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except CDiffError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload, status = run(cfg)
    if status == 2:
        sys.stderr.write(payload.decode())
        return status
    if cfg.out:
        with open(cfg.out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
    return status


if __name__ == "__main__":
    sys.exit(main())
