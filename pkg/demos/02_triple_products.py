# %% [markdown]
# # Triple products
#
# ``exp(X) exp(Y) exp(Z)`` is split as ``exp(X~) exp(Y~)`` with a weight
# ``alpha`` that distributes ``Y`` between the two halves.  The weight solves a
# scalar equation whose form depends on the commutator type of the triple.

# %%
from closedbch import bch_triple, build_algebra, classify, sl2_triple
from closedbch import closed_forms as cf
from closedbch.algebra import LieElement

sl2 = build_algebra("sl2")
sl3 = build_algebra("sl3")
E = LieElement.of

# %% [markdown]
# An sl2 triple ``exp(a E+) exp(b H) exp(c E-)`` is a type 4 product: the
# weight comes from a quadratic, and both roots are tried.

# %%
res = bch_triple(E("E+", 0.8), E("H", 0.3 - 0.2j), E("E-", -0.6), sl2)
print("type:", res.tag.symbol())
print("chosen branch:", res.alpha_used.branch, "alpha =", res.alpha_used.alpha)
for alt, w, r in res.alternatives:
    print("other branch:", alt.branch, "residual", r)
print("W =", res.w, "| residual", res.oracle_residual)

named = sl2_triple(-0.8, -2 * (0.3 - 0.2j), -0.6, sl2)
print("named formula agrees to", named.w.distance(res.w))

# %% [markdown]
# ``H E H`` products (type 1c-i) only rescale the step operator.

# %%
heh = cf.heh_triple(0.4, (1, 0), 1.0, (0, 1), 0.3, (1, 1), sl3, verify=True)
gen = bch_triple(*heh.factors, sl3)
print(gen.tag.symbol())
print("named vs generic:", heh.w.distance(gen.w), "| residual", heh.oracle_residual)

# %% [markdown]
# ``E H E`` products with commuting outer steps are type 5, where two
# different weights are available.  Both give the same exponent.

# %%
ehe = cf.ehe_type5(0.6, (1, 0), -0.5 + 0.2j, (0, 1), 0.9, (1, 0), sl3, verify=True)
gen = bch_triple(*ehe.factors, sl3)
print("weights:", gen.alpha_used.alpha, [a.alpha for a, _, _ in gen.alternatives])
print("exponent gap between weights:", gen.w.distance(gen.alternatives[0][1]))

# %% [markdown]
# The classifier reports each type together with its Jacobi constraints.

# %%
for six in [(0, 2, 0, -1, 0, 0), (1.5, 1, 1, 2, 1.5, 1), (1, 1, 0, 1, 2, 0)]:
    print(six, "->", classify(*six).symbol())
