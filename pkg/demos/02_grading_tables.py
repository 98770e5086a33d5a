# %% [markdown]
# # The Z/2Z-grading and its tables
#
# Even-height roots form Phi_G, odd-height roots are the weights Phi_V.
# The indecomposable positive even roots give a basis S_G, and the
# n-coordinates are coordinates with respect to that basis.

# %%
from vinbergcusp.grading import PUBLISHED_SG, compute_grading, n_coordinates

for name in ["E7", "E8"]:
    g = compute_grading(name)
    print(f"{name}: #Phi_G = {len(g.phi_G)}, #Phi_V = {len(g.phi_V)}, #Omega = {len(g.omega)}")
    for j, (combo, beta) in enumerate(zip(PUBLISHED_SG[name], g.s_G), 1):
        label = " + ".join(f"a{i}" for i in combo)
        print(f"  beta_{j} = {label:<20} {beta}")

# %% [markdown]
# n-coordinates of the highest root, and the sums over Phi_G^+ that enter the
# f-function inequalities.

# %%
g = compute_grading("E7")
print("n(alpha_0) =", [str(x) for x in n_coordinates(g, g.rs.highest_root)])
print("sum over Phi_G^+ =", [str(x) for x in g.G_positive_n_sum])
print("denominator of n on Phi_V:", g.n_denominator)

# %% [markdown]
# For E7 the nontrivial element of Omega reverses the A7 chain of S_G.

# %%
w = g.omega[1]
print([g.s_G.index(g.apply(w, b)) + 1 for b in g.s_G])
