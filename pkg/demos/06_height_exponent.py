# %% [markdown]
# # Counting by height
#
# Ht(b) < a exactly when |c_i| < a^(i/degDelta) for each i, so the count of
# integer b is a product of per-coordinate counts.  Its growth exponent is
# sum(i)/degDelta: 70/126 for E7 and 128/240 for E8.

# %%
from vinbergcusp.curves import HeightSpec, coordinate_bounds, fit_height_exponent, geometric_ladder

for case in ["E7", "E8"]:
    spec = HeightSpec.for_case(case)
    print(case, "bounds at a = 1e6:", coordinate_bounds(spec, 10**6))
    for lo, hi, step in [(10**6, 10**12, 10), (10**12, 10**60, 10**8)]:
        slope, _ = fit_height_exponent(spec, geometric_ladder(lo, hi, step))
        print(f"  a in [{lo:.0e}, {hi:.0e}]: slope {slope:.4f}, expected {float(spec.expected_exponent):.4f}")

# %% [markdown]
# At small a the low-degree coefficients are stuck at |c| <= 1 (for E8,
# a^(2/240) stays below 1.26 up to a = 1e12), so the short ladder
# overestimates the E8 exponent; the long ladder settles on it.
