# %% [markdown]
# # The test curves over F_2
#
# E7: y^3 = x^3 y + y + 1        E8: y^3 = x^5 + y(x^3 + x^2) + x^3 + 1

# %%
from vinbergcusp.curves import (
    CurveSpec,
    count_affine_points,
    homogeneity_check,
    is_smooth_affine,
    l_polynomial,
    projective_point_count,
)

curves = {
    "E7": CurveSpec.make("E7", c12=1, c18=1),
    "E8": CurveSpec.make("E8", c2=1, c8=1, c12=1, c30=1),
}

for name, c in curves.items():
    print(name, "homogeneous of weight", homogeneity_check(name)[1])
    print("  affine points over F_2:", count_affine_points(c))
    print("  smooth:", is_smooth_affine(c))
    print("  points on the completion over F_2^k:", [projective_point_count(c, k) for k in range(1, 2 * c.genus + 1)])

# %% [markdown]
# The first g counts determine the L-polynomial; the remaining g are a
# cross-check.  P(1) is the order of the Jacobian over F_2.

# %%
for name, c in curves.items():
    P = l_polynomial(c)
    print(name, "P(T) coefficients", P.coeffs, "P(1) =", P(1))

# %% [markdown]
# With every coefficient zero the E8 curve is y^3 = x^5, singular at the origin.

# %%
print(is_smooth_affine(CurveSpec.make("E8")))
