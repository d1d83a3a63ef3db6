# %% [markdown]
# # Pair products in closed form
#
# When ``[X, Y] = uX + vY + cI`` the product ``exp(X) exp(Y)`` collapses to a
# single exponential ``exp(X + Y + f(u, v)[X, Y])``.  This walk-through
# evaluates the kernel, applies it inside sl3 and checks every answer against
# the matrix exponential of the defining representation.

# %%
import math

from closedbch import bch_pair, build_algebra, cartan_weyl_pair, f_kernel
from closedbch.algebra import LieElement

sl3 = build_algebra("sl3")
E = LieElement.of

# %% [markdown]
# The kernel is symmetric and smooth across its removable singular lines.

# %%
for u, v in [(0, 0), (2, 0), (1, 1 + 1e-9), (1 + 0.5j, -0.3)]:
    print(f"f({u}, {v}) = {f_kernel(u, v):.15f}")

# %% [markdown]
# A Cartan element and a step operator close on two terms, so the generic
# pair path applies directly.

# %%
res = bch_pair(E("E+1"), E("H1"), sl3, verify=True)
print("W =", res.w)
print("E+1 coefficient:", res.w.coefficient("E+1"), "expected", 2 / (math.e**2 - 1))
print("matrix residual:", res.oracle_residual)

# %% [markdown]
# ``E+1`` and ``E-1`` do not close on two terms.  Their product is still a
# single exponential with coefficient ``(2/sqrt 5) log((3 + sqrt 5)/2)``.

# %%
golden = 2 / math.sqrt(5) * math.log((3 + math.sqrt(5)) / 2)
res = cartan_weyl_pair(E("E+1"), E("E-1"), sl3, verify=True)
print("W =", res.w)
print("golden coefficient:", golden)
print("matrix residual:", res.oracle_residual)

# %% [markdown]
# Two positive simple roots give a nilpotent product whose series stops after
# the first bracket.

# %%
res = cartan_weyl_pair(E("E+1"), E("E+2"), sl3, verify=True)
print("W =", res.w, "| residual", res.oracle_residual)
