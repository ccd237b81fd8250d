# %% [markdown]
# The -1-derivative of x^d with d = (3^((n+1)/2) - 1)/2 on GF(3^7).
# delta(b) counts x with (x+1)^d + x^d = b; for c != 1 the uniformity of a power
# map is max(max_b delta(b), gcd(d, q - 1)).

# %%
from cdiffkit import build_field, delta_row_histogram, family_exponent, uniformity_full, uniformity_power

n = 7
F = build_field(3, n)
d = family_exponent("F1", n)
s = delta_row_histogram(F, d, 1, F.minus_one)
print(f"d = {d}, sum of delta = {int(s.counts.sum())} (= q = {F.q})")
print("multiplicities {k: #b}:", s.multiplicity_multiset)
print("delta(1) =", int(s.counts[1]), " delta(-1) =", int(s.counts[F.minus_one]))

# %%
r = uniformity_power(F, d, F.minus_one, workers=4)
print("-1-uniformity:", r.value, " gcd term:", r.gcd_term, " first witnesses:", r.witnesses[:3])

# %% [markdown]
# The same exponent at c = 1 (classical differential uniformity) needs the full scan.

# %%
print("classical uniformity:", uniformity_full(F, d, 1).value)
