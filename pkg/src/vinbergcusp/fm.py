"""Fourier-Motzkin elimination over Q, used as an independent feasibility oracle.

Shares no code with the simplex engine.  Exponential in the worst case, so
only meant for small systems (a handful of rows).
"""

from __future__ import annotations

from fractions import Fraction

from .grading import Grading


def _normalise(constraints):
    """Rewrite every row as (coeffs, strict, rhs) meaning coeffs.x < rhs or <= rhs."""
    out = []
    for coeffs, rel, rhs in constraints:
        coeffs = [Fraction(c) for c in coeffs]
        rhs = Fraction(rhs)
        if rel in ("<=", "<"):
            out.append((coeffs, rel == "<", rhs))
        elif rel in (">=", ">"):
            out.append(([-c for c in coeffs], rel == ">", -rhs))
        elif rel == "=":
            out.append((coeffs, False, rhs))
            out.append(([-c for c in coeffs], False, -rhs))
        else:
            raise ValueError(f"unknown relation {rel!r}")
    return out


def fm_feasible(constraints, num_vars: int, nonneg=()) -> bool:
    """Decide whether the rows (coeffs, relation, rhs) have a rational solution.

    Without strict rows, Chernikov's rule prunes derived rows: after k
    eliminations a row built from more than k + 1 original rows is implied
    by the others.
    """
    rows = _normalise(constraints)
    for j in nonneg:
        e = [Fraction(0)] * num_vars
        e[j] = Fraction(-1)
        rows.append((e, False, Fraction(0)))
    chernikov = not any(strict for _, strict, _ in rows)
    rows = [(c, st, b, frozenset([i])) for i, (c, st, b) in enumerate(rows)]
    remaining = set(range(num_vars))
    eliminated = 0
    while remaining:
        # eliminate the variable that creates the fewest new rows
        k = min(remaining, key=lambda v: _cost(rows, v))
        remaining.discard(k)
        eliminated += 1
        pos, neg, rest = [], [], []
        for row in rows:
            c = row[0][k]
            (pos if c > 0 else neg if c < 0 else rest).append(row)
        for pc, ps, pr, ph in pos:
            for nc, ns, nr, nh in neg:
                hist = ph | nh
                if chernikov and len(hist) > eliminated + 1:
                    continue
                lp, ln = pc[k], -nc[k]
                coeffs = [ln * a + lp * b for a, b in zip(pc, nc)]
                rest.append((coeffs, ps or ns, ln * pr + lp * nr, hist))
        rows = _dedupe(rest)
    return all((rhs > 0) if strict else (rhs >= 0) for _, strict, rhs, _ in rows)


def _cost(rows, k):
    p = sum(1 for r in rows if r[0][k] > 0)
    n = sum(1 for r in rows if r[0][k] < 0)
    return p * n - p - n


def _dedupe(rows):
    seen = {}
    for coeffs, strict, rhs, hist in rows:
        # scale so the first nonzero coefficient has absolute value 1
        lead = next((abs(c) for c in coeffs if c), None)
        if lead is None:
            key = (tuple(coeffs), strict, rhs)
        else:
            key = (tuple(c / lead for c in coeffs), strict, rhs / lead)
        old = seen.get(key)
        if old is None or len(hist) < len(old[3]):
            seen[key] = (list(key[0]), strict, key[2], hist)
    return list(seen.values())


def condition_2_oracle(g: Grading, M: int) -> bool:
    """Condition 2 decided by elimination: some a != 0 with n(alpha).a <= 0 off M."""
    r = g.rank
    vecs = [g.V_n[k] for k in range(len(g.V_roots)) if not (M >> k) & 1]
    for j in range(r):
        for sign in (1, -1):
            unit = [0] * r
            unit[j] = 1
            rows = [(unit, "=", sign)] + [(v, "<=", 0) for v in vecs]
            if fm_feasible(rows, r):
                return True
    return False
