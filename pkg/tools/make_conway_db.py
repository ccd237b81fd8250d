"""Regenerate src/cdiffkit/data/conway.txt from the `galois` package's Conway table.

Only needed when extending the bundled range; the package itself never imports galois.
"""
import sys
from pathlib import Path

import galois

CAP = 3**16
PRIMES = (2, 3, 5, 7)

out = Path(__file__).resolve().parents[1] / "src" / "cdiffkit" / "data" / "conway.txt"
lines = [
    "# Conway polynomials, one per line: p n c0 c1 ... cn (constant term first).",
    f"# Covers p in {{2, 3, 5, 7}} with p**n <= 3**16.",
]
for p in PRIMES:
    n = 1
    while p**n <= CAP:
        f = galois.conway_poly(p, n)
        coeffs = [int(c) for c in f.coeffs[::-1]]
        lines.append(" ".join(str(v) for v in [p, n, *coeffs]))
        n += 1
out.write_text("\n".join(lines) + "\n")
print(f"wrote {len(lines) - 2} records to {out}", file=sys.stderr)
