"""The E7 and E8 curve families: weights, point counts mod 2, heights.

Case E7:  y^3 = x^3 y + c10 x^2 + x(c2 y^2 + c8 y + c14) + c6 y^2 + c12 y + c18
Case E8:  y^3 = x^5 + y(c2 x^3 + c8 x^2 + c14 x + c20) + c12 x^3 + c18 x^2 + c24 x + c30

Integer coefficients are reduced mod 2 for anything over F_{2^k}, so every
curve handled here is defined over F_2 and F_{2^k} only enlarges the set of
points being counted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

CASES = ("E7", "E8")

# Right-hand side terms (coefficient name or None for 1, x exponent, y exponent).
EQUATIONS = {
    "E7": (
        (None, 3, 1),
        ("c10", 2, 0),
        ("c2", 1, 2), ("c8", 1, 1), ("c14", 1, 0),
        ("c6", 0, 2), ("c12", 0, 1), ("c18", 0, 0),
    ),
    "E8": (
        (None, 5, 0),
        ("c2", 3, 1), ("c8", 2, 1), ("c14", 1, 1), ("c20", 0, 1),
        ("c12", 3, 0), ("c18", 2, 0), ("c24", 1, 0), ("c30", 0, 0),
    ),
}

COEFF_NAMES = {
    "E7": ("c2", "c6", "c8", "c10", "c12", "c14", "c18"),
    "E8": ("c2", "c8", "c12", "c14", "c18", "c20", "c24", "c30"),
}

GENUS = {"E7": 3, "E8": 4}

# Rational points at infinity on the smooth completion: the plane quartic
# closure of an E7 curve meets z = 0 in the two points (1:0:0) and (0:1:0);
# an E8 curve has a single point at infinity in its weighted completion.
POINTS_AT_INFINITY = {"E7": 2, "E8": 1}


def _check_case(case: str) -> str:
    if case not in CASES:
        raise ValueError(f"unknown case {case!r}; expected one of {CASES}")
    return case


@dataclass(frozen=True)
class CurveSpec:
    case: str
    coeffs: tuple[tuple[str, int], ...]

    def __post_init__(self):
        _check_case(self.case)
        names = {n for n, _ in self.coeffs}
        if names != set(COEFF_NAMES[self.case]) or len(self.coeffs) != len(names):
            raise ValueError(f"{self.case} needs exactly the coefficients {COEFF_NAMES[self.case]}")

    @classmethod
    def make(cls, case: str, **values) -> "CurveSpec":
        """Build a curve; unnamed coefficients default to 0."""
        _check_case(case)
        extra = set(values) - set(COEFF_NAMES[case])
        if extra:
            raise ValueError(f"unknown coefficients for {case}: {sorted(extra)}")
        return cls(case, tuple((n, int(values.get(n, 0))) for n in COEFF_NAMES[case]))

    @property
    def genus(self) -> int:
        return GENUS[self.case]

    def coeff(self, name: str) -> int:
        return dict(self.coeffs)[name]

    def monomials_mod2(self) -> frozenset[tuple[int, int]]:
        """Support of F = y^3 + rhs over F_2, as (x exponent, y exponent) pairs."""
        mons = {(0, 3)}
        for name, ex, ey in EQUATIONS[self.case]:
            if name is None or self.coeff(name) % 2:
                mons ^= {(ex, ey)}
        return frozenset(mons)


# -- weights --------------------------------------------------------------------

@dataclass(frozen=True)
class WeightTable:
    case: str
    weights: tuple[tuple[str, int], ...]

    @classmethod
    def standard(cls, case: str) -> "WeightTable":
        """weight(c_i) = 2i, and (x, y) = (8, 12) for E7 or (12, 20) for E8."""
        xy = {"E7": (8, 12), "E8": (12, 20)}[_check_case(case)]
        w = [(n, 2 * int(n[1:])) for n in COEFF_NAMES[case]]
        return cls(case, tuple(w) + (("x", xy[0]), ("y", xy[1])))

    def replace(self, **changes) -> "WeightTable":
        d = dict(self.weights)
        d.update(changes)
        return WeightTable(self.case, tuple(d.items()))

    def __getitem__(self, name):
        return dict(self.weights)[name]


def homogeneity_check(case: str, table: WeightTable | None = None) -> tuple[bool, int | None]:
    """Whether every monomial of the defining equation has the same weight.

    Returns (True, weight) or (False, None).
    """
    table = table or WeightTable.standard(case)
    wx, wy = table["x"], table["y"]
    lhs = 3 * wy
    for name, ex, ey in EQUATIONS[_check_case(case)]:
        w = ex * wx + ey * wy + (table[name] if name else 0)
        if w != lhs:
            return False, None
    return True, lhs


# -- finite fields of characteristic 2 -----------------------------------------

# x^k + ... as bit masks; all irreducible over F_2 (checked in the tests).
MODULI = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011011,
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000001010011,
}


def _clmul_mod(a: int, b: int, mod: int, k: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if (a >> k) & 1:
            a ^= mod
    return out


class GF2k:
    """F_{2^k} with elements as bit masks modulo MODULI[k]; mult by log tables."""

    def __init__(self, k: int, modulus: int | None = None):
        if k not in MODULI:
            raise ValueError(f"F_2^{k} not supported (1 <= k <= {max(MODULI)})")
        self.k = k
        self.q = 1 << k
        self.mod = MODULI[k] if modulus is None else modulus
        if self.mod.bit_length() != k + 1:
            raise ValueError(f"modulus must have degree {k}")
        self.exp, self.log = self._tables()

    def _tables(self):
        n = self.q - 1
        for gen in range(2, self.q) if self.q > 2 else [1]:
            exp = [1] * (2 * n)
            for i in range(1, n):
                exp[i] = _clmul_mod(exp[i - 1], gen, self.mod, self.k)
                if exp[i] == 1:
                    break
            else:
                if len(set(exp[:n])) != n:
                    continue  # gen is not a unit, so the powers never return to 1
                for i in range(n, 2 * n):
                    exp[i] = exp[i - n]
                log = [0] * self.q
                for i in range(n):
                    log[exp[i]] = i
                return exp, log
        raise ValueError(f"modulus for k={self.k} does not define a field")

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def elements(self):
        return range(self.q)


@lru_cache(maxsize=None)
def field(k: int) -> GF2k:
    return GF2k(k)


def _y_coeffs(F: GF2k, mons, x: int) -> list[int]:
    """Coefficients (low to high) in y of sum of x^a y^b over mons, at this x."""
    deg = max((b for _, b in mons), default=0)
    out = [0] * (deg + 1)
    for a, b in mons:
        out[b] ^= F.pow(x, a)
    return out


def _eval_y(F: GF2k, cs, y: int) -> int:
    acc = 0
    for c in reversed(cs):
        acc = F.mul(acc, y) ^ c
    return acc


def count_affine_points(curve: CurveSpec, k: int = 1, F: GF2k | None = None) -> int:
    """Number of (x, y) in F_{2^k}^2 on the curve, by brute force."""
    if k > 8:
        raise ValueError("brute-force counting is limited to k <= 8")
    F = F or field(k)
    mons = curve.monomials_mod2()
    n = 0
    for x in F.elements():
        cs = _y_coeffs(F, mons, x)
        n += sum(1 for y in F.elements() if _eval_y(F, cs, y) == 0)
    return n


# -- smoothness -------------------------------------------------------------------

def _d(mons, var):
    """Formal partial derivative over F_2 (var 0 = x, 1 = y)."""
    out = set()
    for m in mons:
        if m[var] % 2:
            out ^= {(m[0] - 1, m[1]) if var == 0 else (m[0], m[1] - 1)}
    return frozenset(out)


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mod(F: GF2k, a, b):
    a = list(a)
    inv = F.inv(b[-1])
    while len(a) >= len(b):
        c = F.mul(a[-1], inv)
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] ^= F.mul(c, bi)
        _trim(a)
    return a


def _poly_gcd(F: GF2k, a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(F, a, b)
    return a


# A singular point of an affine curve of these degrees has an x-coordinate of
# bounded degree over F_2; searching every x in F_{2^m} for m <= 12 is taken as
# covering it.  For each such x, a nonconstant gcd in y of F, F_x, F_y means a
# common zero over the algebraic closure.
SMOOTHNESS_SEARCH_DEGREE = 12


def singular_x_values(curve: CurveSpec, max_degree: int = SMOOTHNESS_SEARCH_DEGREE):
    """Yield (m, x) with x in F_{2^m} lying under a singular point of the curve."""
    mons = curve.monomials_mod2()
    parts = (mons, _d(mons, 0), _d(mons, 1))
    for m in range(1, max_degree + 1):
        F = field(m)
        for x in F.elements():
            g = _trim(_y_coeffs(F, parts[0], x))
            for p in parts[1:]:
                g = _poly_gcd(F, g, _y_coeffs(F, p, x))
                if len(g) <= 1:
                    break
            if len(g) > 1:
                yield m, x


def is_smooth_affine(curve: CurveSpec, max_degree: int = SMOOTHNESS_SEARCH_DEGREE) -> bool:
    return next(singular_x_values(curve, max_degree), None) is None


def smooth_at_infinity(curve: CurveSpec) -> bool:
    """For E7, check the two points of the plane closure on z = 0 directly.

    The top-degree form is x^3 y, so the points are (1:0:0) and (0:1:0); a
    point is smooth iff some partial of the homogenised F is nonzero there.
    E8 is smooth at infinity for every coefficient choice.
    """
    if curve.case == "E8":
        return True
    mons = curve.monomials_mod2()
    deg = max(a + b for a, b in mons)
    top = {m for m in mons if sum(m) == deg}
    if top != {(3, 1)}:
        raise AssertionError("unexpected top-degree form")
    homog = [(a, b, deg - a - b) for a, b in mons]
    for point in ((1, 0, 0), (0, 1, 0)):
        grad = []
        for var in range(3):
            total = 0
            for m in homog:
                if m[var] % 2 == 0:
                    continue
                e = list(m)
                e[var] -= 1
                total ^= int(all(pv or ev == 0 for pv, ev in zip(point, e)))
            grad.append(total)
        if not any(grad):
            return False
    return True


class NotSmooth(ValueError):
    pass


def projective_point_count(curve: CurveSpec, k: int = 1) -> int:
    """Points over F_{2^k} on the smooth completion."""
    if not is_smooth_affine(curve) or not smooth_at_infinity(curve):
        raise NotSmooth(f"{curve} is not smooth")
    return count_affine_points(curve, k) + POINTS_AT_INFINITY[curve.case]


# -- zeta function ----------------------------------------------------------------

class InconsistentCounts(ValueError):
    pass


@dataclass(frozen=True)
class LPolynomial:
    genus: int
    q: int
    coeffs: tuple[int, ...]

    def __call__(self, t) -> int:
        return sum(a * t ** i for i, a in enumerate(self.coeffs))

    def satisfies_functional_equation(self) -> bool:
        g, a = self.genus, self.coeffs
        return len(a) == 2 * g + 1 and all(a[2 * g - i] == self.q ** (g - i) * a[i] for i in range(g + 1))


def _power_sums_to_coeffs(S, n):
    """P(T) = prod(1 - alpha T) from power sums S[1..n] (Newton identities)."""
    a = [Fraction(1)]
    for k in range(1, n + 1):
        a.append(-sum((S[j] * a[k - j] for j in range(1, k + 1)), Fraction(0)) / k)
    return a


def _coeffs_to_power_sums(a, n):
    S = [0] * (n + 1)
    for k in range(1, n + 1):
        ak = a[k] if k < len(a) else 0
        S[k] = -k * ak - sum(S[j] * (a[k - j] if k - j < len(a) else 0) for j in range(1, k))
    return S


def l_polynomial(curve: CurveSpec) -> LPolynomial:
    """Numerator of the zeta function over F_2 from point counts over F_{2^k}.

    Counts for k = 1..g fix P(T) via the functional equation; counts for
    k = g+1..2g must then agree with its predictions.
    """
    g, q = curve.genus, 2
    counts = {k: projective_point_count(curve, k) for k in range(1, 2 * g + 1)}
    S = [0] + [q ** k + 1 - counts[k] for k in range(1, g + 1)]
    low = _power_sums_to_coeffs(S, g)
    if any(c.denominator != 1 for c in low):
        raise InconsistentCounts("non-integral L-polynomial coefficients")
    low = [int(c) for c in low]
    full = low + [q ** (g - i) * low[i] for i in range(g - 1, -1, -1)]
    P = LPolynomial(g, q, tuple(full))
    predicted = _coeffs_to_power_sums(full, 2 * g)
    for k in range(g + 1, 2 * g + 1):
        if q ** k + 1 - predicted[k] != counts[k]:
            raise InconsistentCounts(f"count over F_2^{k} is {counts[k]}, "
                                     f"P(T) predicts {q ** k + 1 - predicted[k]}")
    if P(1) <= 0:
        raise InconsistentCounts("P(1) must be positive")
    return P


def jacobian_order_F2(curve: CurveSpec) -> int:
    return l_polynomial(curve)(1)


# -- heights ----------------------------------------------------------------------

@dataclass(frozen=True)
class HeightSpec:
    case: str
    degDelta: int
    degrees: tuple[int, ...]

    @classmethod
    def for_case(cls, case: str) -> "HeightSpec":
        _check_case(case)
        degs = tuple(int(n[1:]) for n in COEFF_NAMES[case])
        return cls(case, {"E7": 126, "E8": 240}[case], degs)

    @property
    def expected_exponent(self) -> Fraction:
        return Fraction(sum(self.degrees), self.degDelta)


def height(spec: HeightSpec, b) -> float:
    """sup_i |c_i|^(degDelta/i), in floating point."""
    if len(b) != len(spec.degrees):
        raise ValueError(f"expected {len(spec.degrees)} coefficients")
    return max(float(abs(c)) ** (spec.degDelta / i) if c else 0.0 for c, i in zip(b, spec.degrees))


def _as_fraction(a) -> Fraction:
    return Fraction(a) if not isinstance(a, float) else Fraction(a).limit_denominator(10 ** 12)


def height_below(spec: HeightSpec, b, a) -> bool:
    """Exact test of Ht(b) < a, i.e. |c_i|^degDelta < a^i for every i."""
    a = _as_fraction(a)
    D = spec.degDelta
    return all(abs(c) ** D * a.denominator ** i < a.numerator ** i for c, i in zip(b, spec.degrees))


def iroot(n: int, k: int) -> int:
    """floor(n^(1/k)) for n >= 0."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2:
        return n
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def coordinate_bounds(spec: HeightSpec, a) -> list[int]:
    """Largest m_i >= 0 with m_i^degDelta < a^i, one per coefficient."""
    a = _as_fraction(a)
    if a < 1:
        raise ValueError("a must be >= 1")
    out = []
    for i in spec.degrees:
        num, den = a.numerator ** i, a.denominator ** i
        ceil_ai = -(-num // den)
        out.append(iroot(ceil_ai - 1, spec.degDelta))
    return out


def count_bounded_height(spec: HeightSpec, a) -> int:
    """#{b in Z^r : Ht(b) < a}, exactly."""
    return math.prod(2 * m + 1 for m in coordinate_bounds(spec, a))


def fit_height_exponent(spec: HeightSpec, ladder) -> tuple[float, list[tuple[float, int]]]:
    """Least-squares slope of log N(a) against log a over the ladder."""
    ladder = list(ladder)
    if len(ladder) < 6:
        raise ValueError("need at least 6 sample points")
    rows = [(a, count_bounded_height(spec, a)) for a in ladder]
    xs = [math.log(_as_fraction(a)) for a, _ in rows]
    ys = [math.log(n) for _, n in rows]
    slope = float(np.polyfit(xs, ys, 1)[0])
    return slope, rows


def geometric_ladder(start, stop, ratio):
    out = []
    a = Fraction(start)
    while a <= Fraction(stop):
        out.append(a)
        a *= Fraction(ratio)
    return out
