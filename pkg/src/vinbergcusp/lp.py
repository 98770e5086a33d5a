"""Exact rational linear feasibility by two-phase simplex with Bland's rule.

Strict inequalities are handled with a shared slack t: every strict row
gets t added on its slack side, t is capped at 1, and the system is strictly
feasible iff max t > 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

RELATIONS = ("<=", "<", "=", ">=", ">")


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple
    relation: str
    rhs: Fraction

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")

    def holds(self, x: Sequence) -> bool:
        lhs = sum((Fraction(a) * v for a, v in zip(self.coeffs, x)), Fraction(0))
        rhs = Fraction(self.rhs)
        return {
            "<=": lhs <= rhs,
            "<": lhs < rhs,
            "=": lhs == rhs,
            ">=": lhs >= rhs,
            ">": lhs > rhs,
        }[self.relation]


@dataclass
class LinearSystem:
    num_vars: int
    constraints: list[Constraint] = field(default_factory=list)
    nonneg_vars: frozenset[int] = frozenset()

    def add(self, coeffs, relation: str, rhs) -> "LinearSystem":
        coeffs = tuple(coeffs)
        if len(coeffs) != self.num_vars:
            raise ValueError(f"expected {self.num_vars} coefficients, got {len(coeffs)}")
        self.constraints.append(Constraint(coeffs, relation, Fraction(rhs)))
        return self

    def satisfied_by(self, x: Sequence) -> bool:
        if len(x) != self.num_vars:
            return False
        if any(x[j] < 0 for j in self.nonneg_vars):
            return False
        return all(c.holds(x) for c in self.constraints)


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    witness: tuple[Fraction, ...] | None = None

    def __bool__(self):
        return self.feasible


class Tableau:
    """Integer simplex tableau for  max c.x  s.t.  A x = b, x >= 0, b >= 0.

    Fraction-free pivoting: every stored entry is the true entry times the
    common denominator ``d`` (the last pivot), and each update divides
    exactly.  The objective row holds d times the reduced costs.
    """

    def __init__(self, rows, rhs, basis):
        self.m = len(rows)
        self.n = len(rows[0]) if rows else 0
        self.t = [list(r) + [b] for r, b in zip(rows, rhs)]
        self.basis = list(basis)
        self.d = 1
        self.obj = [0] * (self.n + 1)

    def set_objective(self, c):
        obj = [-self.d * int(x) for x in c] + [0]
        for i, bj in enumerate(self.basis):
            cb = int(c[bj]) if bj < len(c) else 0
            if cb:
                obj = [o + cb * v for o, v in zip(obj, self.t[i])]
        # basic columns read d*c_j in t, so their reduced cost is now zero
        self.obj = obj

    def pivot(self, r, c):
        row = self.t[r]
        p = row[c]
        d = self.d
        for i in range(self.m):
            if i == r:
                continue
            ti = self.t[i]
            f = ti[c]
            if f:
                self.t[i] = [(p * x - f * v) // d for x, v in zip(ti, row)]
            elif p != d:
                self.t[i] = [(p * x) // d for x in ti]
        f = self.obj[c]
        self.obj = [(p * x - f * v) // d for x, v in zip(self.obj, row)]
        self.basis[r] = c
        self.d = p
        if p < 0:
            # keep d > 0 so sign tests read true signs; negating everything preserves t/d
            self.t = [[-x for x in ti] for ti in self.t]
            self.obj = [-x for x in self.obj]
            self.d = -p

    def run(self, allowed=None) -> str:
        """Maximise; Bland's rule (smallest entering index, smallest leaving basis index)."""
        while True:
            enter = None
            for j in range(self.n):
                if self.obj[j] < 0 and (allowed is None or allowed[j]):
                    enter = j
                    break
            if enter is None:
                return "optimal"
            best = None
            for i in range(self.m):
                a = self.t[i][enter]
                if a > 0:
                    num = self.t[i][-1]
                    if best is None:
                        best = (num, a, i)
                        continue
                    bn, ba, bi = best
                    lhs, rhs = num * ba, bn * a
                    if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[bi]):
                        best = (num, a, i)
            if best is None:
                return "unbounded"
            self.pivot(best[2], enter)

    def value(self) -> Fraction:
        return Fraction(self.obj[-1], self.d)

    def solution(self) -> list[Fraction]:
        x = [Fraction(0)] * self.n
        for i, bj in enumerate(self.basis):
            x[bj] = Fraction(self.t[i][-1], self.d)
        return x


def _integer_rows(rows, rhs):
    out_rows, out_rhs = [], []
    for r, b in zip(rows, rhs):
        vals = [Fraction(v) for v in r] + [Fraction(b)]
        den = 1
        for v in vals:
            den = den * v.denominator // gcd(den, v.denominator)
        ints = [int(v * den) for v in vals]
        if ints[-1] < 0:
            ints = [-v for v in ints]
        out_rows.append(ints[:-1])
        out_rhs.append(ints[-1])
    return out_rows, out_rhs


def solve_standard(rows, rhs, objective=None):
    """Two-phase simplex on  A x = b, x >= 0.

    Returns (status, x, value) where status is "infeasible", "unbounded" or
    "optimal".  With no objective, phase 1 alone decides feasibility.
    Rows may be rational; each is rescaled to integers first.
    """
    m = len(rows)
    n = len(rows[0]) if rows else 0
    rows, rhs = _integer_rows(rows, rhs)
    # reuse unit columns as the starting basis where possible
    basis = [None] * m
    for j in range(n):
        nz = [i for i in range(m) if rows[i][j]]
        if len(nz) == 1 and rows[nz[0]][j] == 1 and basis[nz[0]] is None:
            basis[nz[0]] = j
    art = [i for i in range(m) if basis[i] is None]
    full = [r + [int(k == i) for k in art] for i, r in enumerate(rows)]
    for k, i in enumerate(art):
        basis[i] = n + k
    tab = Tableau(full, rhs, basis)
    if art:
        tab.set_objective([0] * n + [-1] * len(art))
        tab.run()
        if tab.value() != 0:
            return "infeasible", None, None
        # drive artificials out of the basis
        for i in range(m):
            if tab.basis[i] >= n:
                j = next((j for j in range(n) if tab.t[i][j] != 0), None)
                if j is not None:
                    tab.pivot(i, j)
    x = tab.solution()[:n]
    if objective is None:
        return "optimal", x, Fraction(0)
    obj = [Fraction(v) for v in objective]
    den = 1
    for v in obj:
        den = den * v.denominator // gcd(den, v.denominator)
    allowed = [True] * n + [False] * len(art)
    tab.set_objective([int(v * den) for v in obj] + [0] * len(art))
    status = tab.run(allowed)
    if status == "unbounded":
        return "unbounded", None, None
    return "optimal", tab.solution()[:n], tab.value() / den


def lp_feasible(system: LinearSystem) -> Feasibility:
    """Decide feasibility of a mixed strict/non-strict system over Q."""
    nv = system.num_vars
    # column layout: one column per nonneg var, two (+/-) per free var
    colmap = []
    ncols = 0
    for j in range(nv):
        if j in system.nonneg_vars:
            colmap.append((ncols, None))
            ncols += 1
        else:
            colmap.append((ncols, ncols + 1))
            ncols += 2
    strict = any(c.relation in ("<", ">") for c in system.constraints)
    t_col = ncols if strict else None
    if strict:
        ncols += 1
    nslack = sum(c.relation != "=" for c in system.constraints) + (1 if strict else 0)
    width = ncols + nslack
    rows, rhs = [], []
    s = ncols
    for c in system.constraints:
        row = [Fraction(0)] * width
        for j, a in enumerate(c.coeffs):
            a = Fraction(a)
            p, q = colmap[j]
            row[p] = a
            if q is not None:
                row[q] = -a
        if c.relation in ("<=", "<"):
            row[s] = Fraction(1)
            s += 1
        elif c.relation in (">=", ">"):
            row[s] = Fraction(-1)
            s += 1
        if c.relation == "<":
            row[t_col] = Fraction(1)
        elif c.relation == ">":
            row[t_col] = Fraction(-1)
        rows.append(row)
        rhs.append(Fraction(c.rhs))
    if strict:
        row = [Fraction(0)] * width
        row[t_col] = Fraction(1)
        row[s] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(1))
    if not rows:
        return Feasibility(True, tuple(Fraction(0) for _ in range(nv)))
    objective = None
    if strict:
        objective = [0] * width
        objective[t_col] = 1
    status, x, val = solve_standard(rows, rhs, objective)
    if status != "optimal":
        return Feasibility(False)
    if strict and val <= 0:
        return Feasibility(False)
    out = []
    for p, q in colmap:
        out.append(x[p] - (x[q] if q is not None else 0))
    return Feasibility(True, tuple(out))
