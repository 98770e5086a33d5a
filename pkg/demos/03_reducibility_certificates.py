# %% [markdown]
# # Reducibility certificates
#
# Subsets M of Phi_V are bitsets.  Each criterion hands back a certificate
# that `verify_certificate` can replay without the solver.

# %%
from vinbergcusp.cuspgen import root_datum
from vinbergcusp.grading import compute_grading
from vinbergcusp.reducibility import (
    check_condition_1,
    check_condition_2,
    full_mask,
    members,
    solve_f,
    to_mask,
    verify_certificate,
)

g = compute_grading("E7")
d = root_datum(g)
print("M0 =", [g.V_roots[k] for k in members(d.M0)])
print("M1 =", [g.V_roots[k] for k in members(d.M1)])

# %% [markdown]
# The starting datum has an f-function.

# %%
cert = solve_f(g, d.M0, d.M1)
print(cert.to_json(g), verify_certificate(g, d.M0, d.M1, cert))

# %% [markdown]
# Condition 2 asks for a nonzero a with n(alpha).a <= 0 off M.  Dropping a few
# weights from Phi_V always leaves such an a, because fewer than r vectors
# cannot surround the origin.

# %%
M = full_mask(g) & ~to_mask([3, 17, 40])
c2 = check_condition_2(g, M)
print(c2.a, verify_certificate(g, M, 0, c2))

# %% [markdown]
# Condition 1 holds as soon as M contains w(Phi_V^+ - S_H) for some w in Omega.

# %%
print(check_condition_1(g, full_mask(g)))
