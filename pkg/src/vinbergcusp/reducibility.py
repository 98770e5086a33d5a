"""Reducibility criteria for subspaces V(M), with exact witnesses.

Subsets M of Phi_V are Python int bitsets over positions in
``Grading.V_roots``.  Every checker returns a :class:`Certificate` or None;
:func:`verify_certificate` replays a certificate from the raw root data
without touching the solver.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable

from .grading import Grading, n_coordinates
from .lp import LinearSystem, lp_feasible, solve_standard


class CertKind(str, enum.Enum):
    F_FUNCTION = "F_FUNCTION"
    COND1 = "COND1"
    COND2 = "COND2"
    COND3 = "COND3"


class MalformedCertificate(ValueError):
    """The certificate is missing fields or carries the wrong ones for its kind."""


_REQUIRED = {
    CertKind.F_FUNCTION: {"f"},
    CertKind.COND1: {"omega_index"},
    CertKind.COND2: {"a"},
    CertKind.COND3: {"a", "beta", "alpha"},
}
_OPTIONAL = ("f", "omega_index", "a", "beta", "alpha")


@dataclass(frozen=True)
class Certificate:
    kind: CertKind
    f: tuple[tuple[int, Fraction], ...] | None = None
    omega_index: int | None = None
    a: tuple[int, ...] | None = None
    beta: int | None = None
    alpha: int | None = None

    def check_shape(self, g: Grading) -> None:
        try:
            kind = CertKind(self.kind)
        except ValueError:
            raise MalformedCertificate(f"unknown kind {self.kind!r}") from None
        present = {k for k in _OPTIONAL if getattr(self, k) is not None}
        if present != _REQUIRED[kind]:
            raise MalformedCertificate(f"{kind.value} expects fields {sorted(_REQUIRED[kind])}, got {sorted(present)}")
        nV = len(g.V_roots)
        if self.a is not None:
            if len(self.a) != g.rank or not all(isinstance(x, int) for x in self.a):
                raise MalformedCertificate("a must be an integer vector of length r")
            if not any(self.a):
                raise MalformedCertificate("a must be nonzero")
        if self.omega_index is not None and not 0 <= self.omega_index < len(g.omega):
            raise MalformedCertificate("omega_index out of range")
        if self.beta is not None and not 0 <= self.beta < g.rank:
            raise MalformedCertificate("beta must index S_G")
        if self.alpha is not None and not 0 <= self.alpha < nV:
            raise MalformedCertificate("alpha must index Phi_V")
        if self.f is not None:
            for k, v in self.f:
                if not 0 <= k < nV:
                    raise MalformedCertificate("f keyed outside Phi_V")
                if not isinstance(v, Fraction):
                    raise MalformedCertificate("f values must be rationals")

    def to_json(self, g: Grading) -> dict:
        """JSON form; Phi_V positions become global root indices, rationals "p/q"."""
        out = {"kind": CertKind(self.kind).value}
        gidx = g.phi_V
        if self.f is not None:
            out["f"] = {str(gidx[k]): _frac_str(v) for k, v in self.f}
        if self.omega_index is not None:
            out["omega_index"] = self.omega_index
        if self.a is not None:
            out["a"] = list(self.a)
        if self.beta is not None:
            out["beta"] = self.beta + 1
        if self.alpha is not None:
            out["alpha"] = gidx[self.alpha]
        return out

    @classmethod
    def from_json(cls, g: Grading, d: dict) -> "Certificate":
        back = {gi: k for k, gi in enumerate(g.phi_V)}
        try:
            f = None
            if "f" in d:
                f = tuple(sorted((back[int(k)], Fraction(v)) for k, v in d["f"].items()))
            return cls(
                kind=CertKind(d["kind"]),
                f=f,
                omega_index=d.get("omega_index"),
                a=tuple(d["a"]) if "a" in d else None,
                beta=d["beta"] - 1 if "beta" in d else None,
                alpha=back[d["alpha"]] if "alpha" in d else None,
            )
        except (KeyError, ValueError, TypeError) as e:
            raise MalformedCertificate(f"cannot parse certificate: {e}") from None


def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- bitset helpers ---------------------------------------------------------

def members(mask: int) -> list[int]:
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def to_mask(items: Iterable[int]) -> int:
    m = 0
    for k in items:
        m |= 1 << k
    return m


def full_mask(g: Grading) -> int:
    return (1 << len(g.V_roots)) - 1


def roots_mask(g: Grading, roots) -> int:
    return to_mask(g.V_index[tuple(a)] for a in roots)


def _primitive(vec) -> tuple[int, ...]:
    den = 1
    for x in vec:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    d = 0
    for x in ints:
        d = gcd(d, abs(x))
    return tuple(x // d for x in ints) if d else tuple(ints)


# -- condition 1 ------------------------------------------------------------

def _omega_targets(g: Grading) -> list[int]:
    """Bitset w(Phi_V^+ - S_H) for each w in Omega."""
    simple = {g.rs.simple_root(i) for i in range(1, g.rank + 1)}
    base = [a for a in g.V_positive if a not in simple]
    return [roots_mask(g, (g.apply(w, a) for a in base)) for w in g.omega]


def check_condition_1(g: Grading, M: int) -> Certificate | None:
    for k, target in enumerate(_omega_targets(g)):
        if target & ~M == 0:
            return Certificate(CertKind.COND1, omega_index=k)
    return None


# -- condition 2 ------------------------------------------------------------

def condition_2_system(g: Grading, M: int, j: int, sign: int) -> LinearSystem:
    """a_j = sign and n(alpha).a <= 0 for every alpha outside M."""
    r = g.rank
    sys = LinearSystem(r)
    unit = [0] * r
    unit[j] = 1
    sys.add(unit, "=", sign)
    for k, vec in enumerate(g.V_n_int):
        if not (M >> k) & 1:
            sys.add(vec, "<=", 0)
    return sys


def check_condition_2(g: Grading, M: int) -> Certificate | None:
    """Search for integers a != 0 with n(alpha).a <= 0 for all alpha outside M.

    Runs the 2r probes a_j = +1, a_j = -1; the first feasible one gives the
    witness, scaled to a primitive integer vector.
    """
    for j in range(g.rank):
        for sign in (1, -1):
            res = lp_feasible(condition_2_system(g, M, j, sign))
            if res.feasible:
                return Certificate(CertKind.COND2, a=_primitive(res.witness))
    return None


def _rank(vecs, r: int) -> int:
    """Rank of integer vectors by fraction-free elimination."""
    m = [list(v) for v in vecs]
    rk = 0
    for c in range(r):
        piv = next((i for i in range(rk, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        p = m[rk]
        for i in range(rk + 1, len(m)):
            f = m[i][c]
            if f:
                m[i] = [p[c] * x - f * y for x, y in zip(m[i], p)]
                d = 0
                for x in m[i]:
                    d = gcd(d, x)
                if d > 1:
                    m[i] = [x // d for x in m[i]]
        rk += 1
        if rk == r:
            break
    return rk


def condition_2_holds(g: Grading, M: int) -> bool:
    """Decide condition 2 through the dual cone (Gordan's alternative).

    No nonzero a exists iff the vectors n(alpha), alpha outside M, positively
    span Q^r, i.e. some strictly positive combination of them vanishes and
    they have full rank.  One LP with r rows instead of 2r probes.
    """
    vecs = [v for k, v in enumerate(g.V_n_int) if not (M >> k) & 1]
    r = g.rank
    if not vecs:
        return True
    # c = 1 + d with d >= 0:  sum_alpha d_alpha v_alpha = -sum_alpha v_alpha
    rows = [[v[i] for v in vecs] for i in range(r)]
    rhs = [-sum(v[i] for v in vecs) for i in range(r)]
    status, _, _ = solve_standard(rows, rhs)
    if status == "infeasible":
        return True
    return _rank(vecs, r) < r


# -- condition 3 ------------------------------------------------------------

def _beta_closed(g: Grading, M: int, beta) -> bool:
    """{gamma +- beta : gamma in M} intersected with Phi_V lies in M."""
    for k in members(M):
        gamma = g.V_roots[k]
        for s in (1, -1):
            img = tuple(x + s * b for x, b in zip(gamma, beta))
            j = g.V_index.get(img)
            if j is not None and not (M >> j) & 1:
                return False
    return True


def _condition_3_pairs(g: Grading, M: int, candidates: int):
    """(beta index, alpha position) pairs meeting parts (a) and (b)."""
    for bi, beta in enumerate(g.s_G):
        if not _beta_closed(g, M, beta):
            continue
        for k in members(candidates & ~M):
            alpha = g.V_roots[k]
            diff = tuple(x - b for x, b in zip(alpha, beta))
            j = g.V_index.get(diff)
            if j is None or (M >> j) & 1:
                continue
            yield bi, k


def condition_3_holds(g: Grading, M: int, candidates: int) -> bool:
    return any(condition_2_holds(g, M | (1 << k)) for _, k in _condition_3_pairs(g, M, candidates))


def check_condition_3(g: Grading, M: int, candidates: int) -> Certificate | None:
    for bi, k in _condition_3_pairs(g, M, candidates):
        Ma = M | (1 << k)
        # cheap dual test first; the probes only run when a witness exists
        if not condition_2_holds(g, Ma):
            continue
        cert = check_condition_2(g, Ma)
        if cert is not None:
            return Certificate(CertKind.COND3, a=cert.a, beta=bi, alpha=k)
    return None


# -- f-function -------------------------------------------------------------

def f_system(g: Grading, M0: int, M1: int) -> tuple[LinearSystem, list[int]]:
    """Variables f(alpha) >= 0 for alpha in M1 (ascending positions)."""
    keys = members(M1)
    r = g.rank
    base = list(g.G_positive_n_sum)
    for k in members(M0):
        for i, x in enumerate(g.V_n[k]):
            base[i] -= x
    sys = LinearSystem(len(keys), nonneg_vars=frozenset(range(len(keys))))
    sys.add([1] * len(keys), "<", bin(M0).count("1"))
    for i in range(r):
        sys.add([g.V_n[k][i] for k in keys], ">", -base[i])
    return sys, keys


def solve_f(g: Grading, M0: int, M1: int) -> Certificate | None:
    if M0 == 0:
        raise ValueError("M0 must be non-empty")
    if M0 & M1:
        raise ValueError("M1 must be disjoint from M0")
    sys, keys = f_system(g, M0, M1)
    res = lp_feasible(sys)
    if not res.feasible:
        return None
    return Certificate(CertKind.F_FUNCTION, f=tuple(zip(keys, res.witness)))


# -- independent replay -----------------------------------------------------

def _n(g: Grading, root, cache=None) -> tuple[Fraction, ...]:
    # recomputed from n_matrix rather than read from Grading.V_n
    if cache is None:
        return n_coordinates(g, root)
    v = cache.get(root)
    if v is None:
        v = cache[root] = n_coordinates(g, root)
    return v


def _cone_condition(g: Grading, allowed: int, a, cache=None) -> bool:
    """Every gamma in Phi_V with sum a_i n_i(gamma) > 0 lies in `allowed`."""
    for k, gamma in enumerate(g.V_roots):
        val = sum(ai * x for ai, x in zip(a, _n(g, gamma, cache)))
        if val > 0 and not (allowed >> k) & 1:
            return False
    return True


def verify_certificate(g: Grading, M0: int, M1: int, cert: Certificate, cache: dict | None = None) -> bool:
    """Re-check the defining inequalities of `cert` for the datum (M0, M1).

    Raises MalformedCertificate when the certificate is structurally wrong;
    returns False when it is well formed but does not hold.  `cache` may be
    a dict shared across calls to memoise n-coordinates.
    """
    cert.check_shape(g)
    kind = CertKind(cert.kind)
    if kind is CertKind.F_FUNCTION:
        fmap = dict(cert.f)
        if any(k not in fmap for k in members(M1)) or any(not (M1 >> k) & 1 for k in fmap):
            return False
        if any(v < 0 for v in fmap.values()):
            return False
        if not sum(fmap.values(), Fraction(0)) < bin(M0).count("1"):
            return False
        total = [Fraction(0)] * g.rank
        terms = [(1, gamma) for gamma in g.G_positive]
        terms += [(-1, g.V_roots[k]) for k in members(M0)]
        terms += [(v, g.V_roots[k]) for k, v in fmap.items()]
        for coef, gamma in terms:
            if coef:
                for i, x in enumerate(_n(g, gamma, cache)):
                    total[i] += coef * x
        return all(t > 0 for t in total)
    if kind is CertKind.COND1:
        w = g.omega[cert.omega_index]
        simple = {g.rs.simple_root(i) for i in range(1, g.rank + 1)}
        for a in g.V_positive:
            if a in simple:
                continue
            img = g.apply(w, a)
            k = g.V_index.get(img)
            if k is None or not (M0 >> k) & 1:
                return False
        return True
    if kind is CertKind.COND2:
        return _cone_condition(g, M0, cert.a, cache)
    # COND3
    beta = g.s_G[cert.beta]
    if (M0 >> cert.alpha) & 1:
        return False
    if not _beta_closed(g, M0, beta):
        return False
    alpha = g.V_roots[cert.alpha]
    diff = tuple(x - b for x, b in zip(alpha, beta))
    j = g.V_index.get(diff)
    if j is None or (M0 >> j) & 1:
        return False
    return _cone_condition(g, M0 | (1 << cert.alpha), cert.a, cache)
