# %% [markdown]
# # Root systems from Cartan matrices
#
# Roots are generated by closing the simple roots under simple reflections.
# Everything lives in simple-root coordinates.

# %%
from vinbergcusp.rootsys import build_root_system, height, reflect

for name in ["A3", "D4", "E6", "E7", "E8"]:
    rs = build_root_system(name)
    print(f"{name}: {len(rs.roots)} roots, highest root {rs.highest_root} of height {height(rs.highest_root)}")

# %% [markdown]
# Reflections are involutions and permute the roots.

# %%
rs = build_root_system("E7")
a = rs.highest_root
for i in range(1, 8):
    b = reflect(rs, a, i)
    print(i, b, reflect(rs, b, i) == a)

# %% [markdown]
# The pairing with rho-check recovers the height, which is what makes the
# parity grading of the next demo work.

# %%
rho = rs.rho_check()
print("rho_check on simple coroots:", [str(x) for x in rho])
