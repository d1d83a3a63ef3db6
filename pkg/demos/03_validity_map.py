# %% [markdown]
# # Where the pair formula with a witness holds
#
# If some ``Y`` makes ``(X, Y, Z)`` a closed triple, one might hope that
# ``exp(X) exp(Z) = exp(X + Z + f(m, p)[X, Z])``.  The oracle decides: the
# formula is never trusted on the strength of the hypotheses alone.

# %%
from closedbch import bch_pair_lemma1, build_algebra, find_witness
from closedbch.algebra import LieElement

sl2 = build_algebra("sl2")
sl3 = build_algebra("sl3")
E = LieElement.of

# %%
cases = [
    ("sl3", sl3, E("E+1"), E("E+2")),
    ("sl2", sl2, E("E+"), E("E-")),
    ("sl3", sl3, E("H1"), E("E+2", 0.5)),
]
for name, alg, x, z in cases:
    for wname in find_witness(x, z, alg):
        res = bch_pair_lemma1(x, z, E(wname), alg)
        status = "VERIFIED" if res.details["verified"] else "NOT VERIFIED"
        print(f"{name}: x={x}, z={z}, witness {wname}: {status} (residual {res.oracle_residual:.3g})")

# %% [markdown]
# The sl2 pair fails even though ``H`` meets every closure condition.  The
# witness ``E+2`` for ``(H1, 0.5 E+2)`` fails for another reason: it is
# parallel to ``z``, so ``[x, z]`` can be split between ``y`` and ``z`` in many
# ways and the least-squares split gives the wrong kernel argument.
