import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from vinbergcusp.curves import (
    COEFF_NAMES,
    MODULI,
    CurveSpec,
    GF2k,
    HeightSpec,
    InconsistentCounts,
    NotSmooth,
    WeightTable,
    count_affine_points,
    count_bounded_height,
    coordinate_bounds,
    field,
    fit_height_exponent,
    geometric_ladder,
    height,
    height_below,
    homogeneity_check,
    iroot,
    is_smooth_affine,
    jacobian_order_F2,
    l_polynomial,
    projective_point_count,
    smooth_at_infinity,
)

X, Y = sympy.symbols("x y")


def sympy_equation(curve):
    c = dict(curve.coeffs)
    if curve.case == "E7":
        rhs = X**3 * Y + c["c10"] * X**2 + X * (c["c2"] * Y**2 + c["c8"] * Y + c["c14"]) + c["c6"] * Y**2 + c["c12"] * Y + c["c18"]
    else:
        rhs = X**5 + Y * (c["c2"] * X**3 + c["c8"] * X**2 + c["c14"] * X + c["c20"]) + c["c12"] * X**3 + c["c18"] * X**2 + c["c24"] * X + c["c30"]
    return Y**3 - rhs


def smooth_by_groebner(curve):
    F = sympy_equation(curve)
    G = sympy.groebner([F, sympy.diff(F, X), sympy.diff(F, Y)], X, Y, modulus=2)
    return list(G.exprs) == [1]


# -- finite fields -------------------------------------------------------------

@pytest.mark.parametrize("k", sorted(MODULI))
def test_moduli_irreducible(k):
    t = sympy.Symbol("t")
    coeffs = [int(b) for b in bin(MODULI[k])[2:]]
    assert sympy.Poly(coeffs, t, modulus=2).is_irreducible


@given(st.integers(1, 8), st.data())
@settings(max_examples=100, deadline=None)
def test_field_axioms(k, data):
    F = field(k)
    a, b, c = (data.draw(st.integers(0, F.q - 1)) for _ in range(3))
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, b ^ c) == F.mul(a, b) ^ F.mul(a, c)
    if a:
        assert F.mul(a, F.inv(a)) == 1
    assert F.pow(a, F.q) == a


def test_bad_modulus():
    with pytest.raises(ValueError):
        GF2k(4, modulus=0b10101)  # (x^2 + x + 1)^2 is not irreducible
    with pytest.raises(ValueError):
        GF2k(13)


# -- curves ------------------------------------------------------------------

def test_curve_spec_validation():
    with pytest.raises(ValueError):
        CurveSpec("E7", (("c2", 0),))
    with pytest.raises(ValueError):
        CurveSpec.make("E8", c6=1)
    with pytest.raises(ValueError):
        CurveSpec.make("E6")
    assert CurveSpec.make("E7").genus == 3
    assert CurveSpec.make("E8").genus == 4


def test_hand_substitution(curve7, curve8):
    def e7(x, y):
        return (y**3 - (x**3 * y + y + 1)) % 2 == 0

    def e8(x, y):
        return (y**3 - (x**5 + y * (x**3 + x**2) + x**3 + 1)) % 2 == 0

    pairs = [(x, y) for x in (0, 1) for y in (0, 1)]
    assert [p for p in pairs if e7(*p)] == [(1, 1)]
    assert [p for p in pairs if e8(*p)] == [(0, 1), (1, 1)]
    assert count_affine_points(curve7) == 1
    assert count_affine_points(curve8) == 2
    assert count_affine_points(CurveSpec.make("E8")) == 2


def test_coefficients_reduce_mod_two(curve8):
    odd = CurveSpec.make("E8", c2=3, c8=-1, c12=5, c30=101, c14=2, c24=-4)
    assert odd.monomials_mod2() == curve8.monomials_mod2()


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_counts_independent_of_modulus(curve7, curve8, k):
    # another irreducible polynomial of degree k gives an isomorphic field
    t = sympy.Symbol("t")
    alt = next(m for m in range(MODULI[k] + 1, 1 << (k + 1))
               if sympy.Poly([int(b) for b in bin(m)[2:]], t, modulus=2).is_irreducible)
    for c in (curve7, curve8):
        assert count_affine_points(c, k, GF2k(k, alt)) == count_affine_points(c, k)


def test_smoothness(curve7, curve8):
    assert is_smooth_affine(curve7) and smooth_at_infinity(curve7)
    assert is_smooth_affine(curve8) and smooth_at_infinity(curve8)
    assert smooth_by_groebner(curve7) and smooth_by_groebner(curve8)
    cusp = CurveSpec.make("E8")
    assert not is_smooth_affine(cusp)
    assert not smooth_by_groebner(cusp)
    with pytest.raises(NotSmooth):
        projective_point_count(cusp)


@given(st.sampled_from(["E7", "E8"]), st.data())
@settings(max_examples=25, deadline=None)
def test_smoothness_matches_groebner(case, data):
    vals = {n: data.draw(st.integers(0, 1), label=n) for n in COEFF_NAMES[case]}
    curve = CurveSpec.make(case, **vals)
    assert is_smooth_affine(curve) == smooth_by_groebner(curve)


def test_projective_counts(curve7, curve8):
    assert projective_point_count(curve7) == 3
    assert projective_point_count(curve8) == 3
    assert projective_point_count(curve8, 2) == count_affine_points(curve8, 2) + 1
    assert projective_point_count(curve7, 2) == count_affine_points(curve7, 2) + 2


def test_jacobian_orders(curve7, curve8):
    P7 = l_polynomial(curve7)
    P8 = l_polynomial(curve8)
    assert P7(1) == 18 == jacobian_order_F2(curve7)
    assert P8(1) == 30 == jacobian_order_F2(curve8)
    assert P7.coeffs == (1, 0, 3, 0, 6, 0, 8)
    assert P7.satisfies_functional_equation() and P8.satisfies_functional_equation()
    # a_1 = N_1 - q - 1
    assert P7.coeffs[1] == projective_point_count(curve7) - 3
    assert P8.coeffs[1] == projective_point_count(curve8) - 3


def smooth_random_curves(case, n, seed):
    import random

    rng = random.Random(seed)
    out = []
    while len(out) < n:
        c = CurveSpec.make(case, **{name: rng.randint(0, 1) for name in COEFF_NAMES[case]})
        if is_smooth_affine(c):
            out.append(c)
    return out


@pytest.mark.parametrize("case", ["E7", "E8"])
def test_counts_consistent_and_weil_bound(case):
    for curve in smooth_random_curves(case, 3, seed=7):
        P = l_polynomial(curve)  # raises on inconsistent counts
        g = curve.genus
        assert P.satisfies_functional_equation()
        # (1 - sqrt q)^(2g) <= P(1) <= (1 + sqrt q)^(2g)
        assert (math.sqrt(2) - 1) ** (2 * g) <= P(1) <= (1 + math.sqrt(2)) ** (2 * g)
        for k in range(1, 2 * g + 1):
            N = projective_point_count(curve, k)
            assert abs(N - 2**k - 1) <= 2 * g * 2 ** (k / 2)


def test_inconsistent_counts_detected(monkeypatch, curve7):
    import vinbergcusp.curves as cv

    real = cv.projective_point_count
    monkeypatch.setattr(cv, "projective_point_count", lambda c, k=1: real(c, k) + (k == 5))
    with pytest.raises(InconsistentCounts):
        cv.l_polynomial(curve7)


# -- weights -----------------------------------------------------------------

def test_homogeneity():
    assert homogeneity_check("E7") == (True, 36)
    assert homogeneity_check("E8") == (True, 60)
    assert homogeneity_check("E7", WeightTable.standard("E7").replace(x=9)) == (False, None)
    t7 = WeightTable.standard("E7")
    assert (t7["c2"], t7["c18"], t7["x"], t7["y"]) == (4, 36, 8, 12)
    t8 = WeightTable.standard("E8")
    assert (t8["c30"], t8["x"], t8["y"]) == (60, 12, 20)


@pytest.mark.parametrize("case", ["E7", "E8"])
def test_homogeneity_symbolically(case):
    # substitute c_i -> l^(2i) c_i, x -> l^wx x, y -> l^wy y and compare
    lam = sympy.Symbol("l")
    t = WeightTable.standard(case)
    cs = {n: sympy.Symbol(n) for n in COEFF_NAMES[case]}
    curve = CurveSpec(case, tuple((n, cs[n]) for n in COEFF_NAMES[case]))
    F = sympy_equation(curve)
    subs = {X: lam ** t["x"] * X, Y: lam ** t["y"] * Y}
    subs.update({cs[n]: lam ** t[n] * cs[n] for n in cs})
    w = homogeneity_check(case)[1]
    assert sympy.expand(F.subs(subs, simultaneous=True) - lam**w * F) == 0


# -- heights -----------------------------------------------------------------

def test_height_values():
    s7 = HeightSpec.for_case("E7")
    s8 = HeightSpec.for_case("E8")
    assert sum(s7.degrees) == 70 and s7.degDelta == 126
    assert sum(s8.degrees) == 128 and s8.degDelta == 240
    assert height(s7, [0] * 7) == 0
    assert height(s7, [2, 0, 0, 0, 0, 0, 0]) == 2.0**63
    b = [1, -2, 0, 3, 1, 0, -1]
    lam = 2
    scaled = [lam**i * c for c, i in zip(b, s7.degrees)]
    assert math.isclose(height(s7, scaled), lam**126 * height(s7, b), rel_tol=1e-12)
    with pytest.raises(ValueError):
        height(s7, [1, 2])


def test_height_below_exact():
    s7 = HeightSpec.for_case("E7")
    b = [2, 0, 0, 0, 0, 0, 0]
    assert not height_below(s7, b, 2**63)
    assert height_below(s7, b, 2**63 + 1)
    assert height_below(s7, b, Fraction(2**64 + 1, 2))
    assert not height_below(s7, b, Fraction(2**64 - 1, 2))
    assert not height_below(s7, b, Fraction(2**64, 2))


def test_iroot():
    for n in [0, 1, 2, 7, 8, 9, 10**40, 3**200 - 1, 3**200]:
        for k in (1, 2, 3, 126, 240):
            r = iroot(n, k)
            assert r**k <= n < (r + 1) ** k


@pytest.mark.parametrize("case", ["E7", "E8"])
def test_bounded_count_brute_force(case):
    s = HeightSpec.for_case(case)
    assert count_bounded_height(s, 1) == 1
    for a in (2, 10**3, 10**6, Fraction(10**9, 7)):
        m = coordinate_bounds(s, a)
        for i, (mi, deg) in enumerate(zip(m, s.degrees)):
            # per coordinate: exactly |c| <= m_i pass, with c_i the only nonzero entry
            hits = []
            for c in range(-mi - 2, mi + 3):
                b = [0] * len(m)
                b[i] = c
                hits.append(height_below(s, b, a))
            assert sum(hits) == 2 * mi + 1
        assert count_bounded_height(s, a) == math.prod(2 * x + 1 for x in m)


def test_bounded_count_full_enumeration_small():
    from itertools import product

    s = HeightSpec.for_case("E7")
    a = 10**4
    m = coordinate_bounds(s, a)
    box = product(*(range(-x - 1, x + 2) for x in m))
    assert sum(1 for b in box if height_below(s, b, a)) == count_bounded_height(s, a)


@pytest.mark.parametrize("case", ["E7", "E8"])
def test_count_monotone(case):
    s = HeightSpec.for_case(case)
    counts = [count_bounded_height(s, a) for a in geometric_ladder(1, 10**15, 10)]
    assert counts == sorted(counts)
    with pytest.raises(ValueError):
        count_bounded_height(s, Fraction(1, 2))


def test_exponent_fit_converges():
    for case in ("E7", "E8"):
        s = HeightSpec.for_case(case)
        slope, _ = fit_height_exponent(s, geometric_ladder(10**12, 10**60, 10**8))
        assert abs(slope / float(s.expected_exponent) - 1) < 0.01
    with pytest.raises(ValueError):
        fit_height_exponent(s, [10, 100])
