# %% [markdown]
# Building GF(3^5) and poking at it.
# Elements are integer codes: the base-3 digits are the polynomial coefficients,
# constant term first.

# %%
import numpy as np

from cdiffkit import build_field, chi, trace

F = build_field(3, 5)
print("q =", F.q, " modulus (c0..c5) =", F.modulus, " generator =", F.generator)

# %%
x = F.from_digits([0, 1])          # the class of x
print("x^5 =", F.pow(x, 5), "digits", F.digits(F.pow(x, 5)))   # reduced mod the modulus
print("x * x^-1 =", F.mul(x, F.inv(x)))

# %% [markdown]
# Everything vectorizes over numpy arrays of codes.

# %%
xs = F.elements()
cubes = F.pow(xs, 3)
print("Frobenius is additive on a sample:",
      np.array_equal(F.pow(F.add(xs, 7), 3), F.add(cubes, F.pow(7, 3))))

# %% [markdown]
# Quadratic character and trace.  -1 is a nonsquare since 3^5 = 3 (mod 4).

# %%
print("chi(-1) =", int(chi(F, F.minus_one)))
print("squares among nonzero elements:", int((chi(F, xs[1:]) == 1).sum()))
print("trace values balanced:", np.bincount(trace(F, xs)).tolist())
