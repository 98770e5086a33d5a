"""The Z/2Z-grading of a root system cut out by theta = Ad(rho_check(-1)).

theta acts on the root space of alpha by (-1)^<alpha, rho_check> and
<alpha, rho_check> is the height of alpha, so the fixed part Phi_G is the set
of even-height roots and the weights Phi_V of the (-1)-eigenspace are the
odd-height roots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import permutations

from .rootsys import Root, RootSystem, _inverse, build_root_system, height

# Published Bourbaki numbering of S_G, as alpha-index lists (1-based).
PUBLISHED_SG = {
    "E7": [
        (3, 4),
        (5, 6),
        (2, 4),
        (1, 3),
        (4, 5),
        (6, 7),
        (2, 3, 4, 5),
    ],
    "E8": [
        (2, 3, 4, 5),
        (6, 7),
        (4, 5),
        (1, 3),
        (2, 4),
        (5, 6),
        (7, 8),
        (3, 4),
    ],
}


def published_basis(name: str, rank: int) -> list[Root]:
    return [tuple(int(j + 1 in idx) for j in range(rank)) for idx in PUBLISHED_SG[name]]


Matrix = tuple[tuple[int, ...], ...]


def _matmul_vec(m, v):
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


@dataclass(frozen=True)
class Grading:
    rs: RootSystem
    phi_G: tuple[int, ...]
    phi_V: tuple[int, ...]
    s_G: tuple[Root, ...]
    basis_matrix: Matrix
    n_matrix: tuple[tuple[Fraction, ...], ...] = field(repr=False)
    omega: tuple[Matrix, ...] = ()

    @property
    def rank(self) -> int:
        return self.rs.rank

    @property
    def name(self) -> str:
        return str(self.rs.ctype)

    @cached_property
    def V_roots(self) -> tuple[Root, ...]:
        """Phi_V in a fixed order; position in this tuple is the bitset index."""
        return tuple(self.rs.roots[i] for i in self.phi_V)

    @cached_property
    def V_index(self) -> dict[Root, int]:
        return {root: k for k, root in enumerate(self.V_roots)}

    @cached_property
    def G_positive(self) -> tuple[Root, ...]:
        return tuple(self.rs.roots[i] for i in self.phi_G if height(self.rs.roots[i]) > 0)

    @cached_property
    def V_positive(self) -> tuple[Root, ...]:
        return tuple(a for a in self.V_roots if height(a) > 0)

    @cached_property
    def V_n(self) -> tuple[tuple[Fraction, ...], ...]:
        """n-coordinates of each element of Phi_V, in V_roots order."""
        return tuple(n_coordinates(self, a) for a in self.V_roots)

    @cached_property
    def n_denominator(self) -> int:
        """Least common denominator of all n-coordinates over Phi_V."""
        d = 1
        for vec in self.V_n:
            for x in vec:
                d = d * x.denominator // _gcd(d, x.denominator)
        return d

    @cached_property
    def V_n_int(self) -> tuple[tuple[int, ...], ...]:
        """n-coordinates over Phi_V scaled by n_denominator, as integers."""
        d = self.n_denominator
        return tuple(tuple(int(x * d) for x in vec) for vec in self.V_n)

    @cached_property
    def G_positive_n_sum(self) -> tuple[Fraction, ...]:
        total = [Fraction(0)] * self.rank
        for g in self.G_positive:
            for i, x in enumerate(n_coordinates(self, g)):
                total[i] += x
        return tuple(total)

    def apply(self, w: Matrix, root) -> Root:
        return _matmul_vec(w, root)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _indecomposables(pos: list[Root]) -> list[Root]:
    posset = set(pos)
    sums = set()
    for i, a in enumerate(pos):
        for b in pos[i:]:
            s = tuple(x + y for x, y in zip(a, b))
            if s in posset:
                sums.add(s)
    return [g for g in pos if g not in sums]


def compute_grading(rs: RootSystem | str) -> Grading:
    if isinstance(rs, str):
        rs = build_root_system(rs)
    r = rs.rank
    phi_G = tuple(i for i, a in enumerate(rs.roots) if height(a) % 2 == 0)
    phi_V = tuple(i for i, a in enumerate(rs.roots) if height(a) % 2 != 0)
    g_pos = [rs.roots[i] for i in phi_G if height(rs.roots[i]) > 0]
    s_G = _indecomposables(g_pos)
    if len(s_G) != r:
        raise RuntimeError(f"{len(s_G)} indecomposables in Phi_G^+, expected {r}")
    name = str(rs.ctype)
    if name in PUBLISHED_SG:
        pub = published_basis(name, r)
        if set(pub) != set(s_G):
            raise RuntimeError(f"computed S_G for {name} differs from the published basis")
        s_G = pub
    else:
        s_G = sorted(s_G)
    basis = tuple(tuple(s_G[j][i] for j in range(r)) for i in range(r))
    try:
        n_matrix = _inverse(basis)
    except ZeroDivisionError:
        raise RuntimeError("Phi_G^+ indecomposables are not a basis") from None
    g = Grading(rs, phi_G, phi_V, tuple(s_G), basis, n_matrix)
    object.__setattr__(g, "omega", tuple(compute_omega(g)))
    return g


def n_coordinates(g: Grading, gamma) -> tuple[Fraction, ...]:
    """Solve basis_matrix . n = gamma exactly."""
    return tuple(sum((a * x for a, x in zip(row, gamma)), Fraction(0)) for row in g.n_matrix)


def sg_cartan(g: Grading) -> Matrix:
    """Cartan matrix of Phi_G with respect to S_G."""
    rs = g.rs

    def pair(a, b):
        return sum(a[i] * rs.cartan[i][j] * b[j] for i in range(rs.rank) for j in range(rs.rank))

    return tuple(tuple(pair(bi, bj) for bj in g.s_G) for bi in g.s_G)


def diagram_automorphisms(cartan: Matrix) -> list[tuple[int, ...]]:
    n = len(cartan)
    out = []
    for p in permutations(range(n)):
        if all(cartan[p[i]][p[j]] == cartan[i][j] for i in range(n) for j in range(n)):
            out.append(p)
    return out


def compute_omega(g: Grading) -> list[Matrix]:
    """Elements of W_H stabilising S_G, as integer matrices on alpha-coordinates.

    Each diagram automorphism sigma of S_G extends to the linear map with
    beta_j -> beta_{sigma(j)}; it is kept when it carries Phi_H onto itself.
    For E7 and E8 every automorphism of Phi_H lies in W_H, so this is exact.
    """
    rs = g.rs
    r = rs.rank
    out = []
    for sigma in diagram_automorphisms(sg_cartan(g)):
        # column j of the image basis is beta_{sigma(j)}
        img = [[g.s_G[sigma[j]][i] for j in range(r)] for i in range(r)]
        w = [[sum(img[i][k] * g.n_matrix[k][j] for k in range(r)) for j in range(r)]
             for i in range(r)]
        if any(x.denominator != 1 for row in w for x in row):
            continue
        w = tuple(tuple(int(x) for x in row) for row in w)
        if all(rs.is_root(_matmul_vec(w, a)) for a in rs.roots):
            out.append(w)
    ident = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
    out.sort(key=lambda m: m != ident)
    return out
