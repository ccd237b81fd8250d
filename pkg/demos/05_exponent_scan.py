# %% [markdown]
# Which exponents are perfect -1-nonlinear on GF(3^5)?

# %%
from cdiffkit import build_field, classify, scan_exponents

F = build_field(3, 5)
hits = scan_exponents(F, F.minus_one, threshold=1)
print(len(hits), "PcN exponents, first few:", [d for d, _ in hits[:12]])

# %% [markdown]
# And the APcN ones, grouped by cyclotomic coset (d ~ 3d mod q - 1 give the same value).

# %%
seen, cosets = set(), []
for d, v in scan_exponents(F, F.minus_one, threshold=2):
    if d in seen or v != 2:
        continue
    coset = sorted({d * 3**i % (F.q - 1) for i in range(F.n)})
    seen.update(coset)
    cosets.append(coset[0])
print("APcN coset leaders:", cosets, "->", classify(2))
