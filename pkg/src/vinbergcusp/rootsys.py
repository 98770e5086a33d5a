"""Simply-laced root systems (types A, D, E) in simple-root coordinates.

Roots are integer tuples giving coefficients on the simple roots
alpha_1..alpha_r, numbered as in Bourbaki.  All pairings go through the
Cartan matrix; there is no ambient Euclidean embedding.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

Root = tuple[int, ...]

# Bourbaki edges for the exceptional types, 1-based.
_E_EDGES = {
    6: [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)],
    7: [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)],
    8: [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)],
}


@dataclass(frozen=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in ("A", "D", "E"):
            raise ValueError(f"unsupported family {self.family!r}; only A, D, E are simply laced")
        if self.family == "A" and self.rank < 1:
            raise ValueError("A_r needs r >= 1")
        if self.family == "D" and self.rank < 4:
            raise ValueError("D_r needs r >= 4")
        if self.family == "E" and self.rank not in (6, 7, 8):
            raise ValueError("E_r needs r in {6, 7, 8}")

    @classmethod
    def parse(cls, name: str) -> "CartanType":
        m = re.fullmatch(r"\s*([A-Za-z])\s*(\d+)\s*", name)
        if not m:
            raise ValueError(f"cannot parse Cartan type {name!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self):
        return f"{self.family}{self.rank}"

    def edges(self) -> list[tuple[int, int]]:
        r = self.rank
        if self.family == "A":
            return [(i, i + 1) for i in range(1, r)]
        if self.family == "D":
            return [(i, i + 1) for i in range(1, r - 1)] + [(r - 2, r)]
        return list(_E_EDGES[r])


def cartan_matrix(ctype: CartanType) -> tuple[tuple[int, ...], ...]:
    r = ctype.rank
    a = [[2 if i == j else 0 for j in range(r)] for i in range(r)]
    for i, j in ctype.edges():
        a[i - 1][j - 1] = a[j - 1][i - 1] = -1
    return tuple(tuple(row) for row in a)


def _inverse(mat) -> tuple[tuple[Fraction, ...], ...]:
    """Exact Gauss-Jordan inverse of a square integer/rational matrix."""
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def height(root: Root) -> int:
    return sum(root)


@dataclass(frozen=True)
class RootSystem:
    ctype: CartanType
    cartan: tuple[tuple[int, ...], ...]
    roots: tuple[Root, ...]
    positive_roots: tuple[Root, ...]
    highest_root: Root
    inv_cartan: tuple[tuple[Fraction, ...], ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return self.ctype.rank

    @cached_property
    def index(self) -> dict[Root, int]:
        return {root: i for i, root in enumerate(self.roots)}

    @cached_property
    def root_set(self) -> frozenset[Root]:
        return frozenset(self.roots)

    def is_root(self, v) -> bool:
        return tuple(v) in self.root_set

    def simple_root(self, i: int) -> Root:
        """alpha_i, 1-based."""
        return tuple(int(j == i - 1) for j in range(self.rank))

    def pairing(self, root, i: int) -> int:
        """<root, alpha_i^vee> = sum_j c_j a_{i j}, 1-based i."""
        row = self.cartan[i - 1]
        return sum(c * a for c, a in zip(root, row))

    def rho_check(self) -> tuple[Fraction, ...]:
        """Coordinates of rho^vee (sum of fundamental coweights) on the simple coroots."""
        return tuple(sum(col) for col in zip(*self.inv_cartan))


def reflect(rs: RootSystem, root, i: int) -> Root:
    """Simple reflection s_{alpha_i}; i is 1-based."""
    if not 1 <= i <= rs.rank:
        raise IndexError(f"simple root index {i} out of range 1..{rs.rank}")
    k = rs.pairing(root, i)
    out = list(root)
    out[i - 1] -= k
    return tuple(out)


def _close_under_reflections(cartan) -> set[Root]:
    r = len(cartan)
    simple = [tuple(int(j == i) for j in range(r)) for i in range(r)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for root in frontier:
            for i in range(r):
                k = sum(c * a for c, a in zip(root, cartan[i]))
                if k == 0:
                    continue
                img = list(root)
                img[i] -= k
                img = tuple(img)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return seen


def build_root_system(ctype: CartanType) -> RootSystem:
    if isinstance(ctype, str):
        ctype = CartanType.parse(ctype)
    cartan = cartan_matrix(ctype)
    allroots = _close_under_reflections(cartan)
    pos = sorted(v for v in allroots if height(v) > 0)
    neg = sorted(v for v in allroots if height(v) < 0)
    top = max(pos, key=height)
    return RootSystem(
        ctype=ctype,
        cartan=cartan,
        roots=tuple(pos + neg),
        positive_roots=tuple(pos),
        highest_root=top,
        inv_cartan=_inverse(cartan),
    )


def highest_root(rs: RootSystem) -> Root:
    return rs.highest_root


def expected_root_count(ctype: CartanType) -> int:
    r = ctype.rank
    if ctype.family == "A":
        return r * (r + 1)
    if ctype.family == "D":
        return 2 * r * (r - 1)
    return {6: 72, 7: 126, 8: 240}[r]
