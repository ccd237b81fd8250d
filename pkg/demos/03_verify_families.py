# %% [markdown]
# Check the six ternary families at c = -1 for every odd n up to 11.

# %%
from cdiffkit import build_field, verify_claim
from cdiffkit.cli import emit_report

reports = []
for n in range(1, 12, 2):
    F = build_field(3, n)
    for fid in ("F1", "F2", "F3", "F4", "F5", "F6"):
        r = verify_claim(F, fid, workers=4)
        if r.verdict != "not-applicable":
            reports.append(r)

print(emit_report(reports, "human").decode())
print("failures:", [r.claim for r in reports if r.verdict == "fail"])
