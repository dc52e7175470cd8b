"""Finite-dimensional irreducible sl(2)-modules M(p) in the basis u_0..u_p.

h u_k = (p-2k) u_k,  f u_k = u_{k+1},  e u_k = k(p-k+1) u_{k-1}.
"""

from fractions import Fraction
from functools import lru_cache

from .linalg import Echelon

E, H, F = 0, 1, 2
LABELS = "ehf"
ROOT_WEIGHT = {E: 2, H: 0, F: -2}


def label_index(g):
    if isinstance(g, int):
        if g not in (E, H, F):
            raise ValueError(f"unknown generator index {g}")
        return g
    try:
        return LABELS.index(g)
    except ValueError:
        raise ValueError(f"unknown generator label {g!r}") from None


@lru_cache(maxsize=None)
def irrep_action(p, g, k):
    """g . u_k in M(p) as a dict {index: coefficient}."""
    g = label_index(g)
    if p < 0 or not 0 <= k <= p:
        raise IndexError(f"basis index {k} out of range for M({p})")
    if g == H:
        c = p - 2 * k
        return {k: Fraction(c)} if c else {}
    if g == F:
        return {k + 1: Fraction(1)} if k < p else {}
    c = k * (p - k + 1)
    return {k - 1: Fraction(c)} if c else {}


def action_matrix(p, g):
    mat = [[Fraction(0)] * (p + 1) for _ in range(p + 1)]
    for k in range(p + 1):
        for i, c in irrep_action(p, g, k).items():
            mat[i][k] = c
    return mat


def tensor_decompose(p, q):
    return list(range(p + q, abs(p - q) - 1, -2))


def hom_dim(p, q, r):
    return int(abs(p - q) <= r <= p + q and (p + q - r) % 2 == 0)


def tensor_action(p, q, g, vec):
    """Action of g on a TensorVector {(k1, k2): coeff} of M(p) x M(q)."""
    out = {}
    for (i, j), c in vec.items():
        for i2, a in irrep_action(p, g, i).items():
            key = (i2, j)
            out[key] = out.get(key, 0) + a * c
        for j2, b in irrep_action(q, g, j).items():
            key = (i, j2)
            out[key] = out.get(key, 0) + b * c
    return {k: v for k, v in out.items() if v}


def tensor_pairs(p, q):
    return [(i, j) for i in range(p + 1) for j in range(q + 1)]


def _highest_vector(p, q, r):
    """Normalized e-kernel vector of h-weight r in M(p) x M(q), or None."""
    pairs = [(i, j) for i, j in tensor_pairs(p, q) if (p - 2 * i) + (q - 2 * j) == r]
    if not pairs:
        return None
    col = {pair: n for n, pair in enumerate(pairs)}
    rows = {}
    for pair in pairs:
        for key, c in tensor_action(p, q, E, {pair: 1}).items():
            rows.setdefault(key, {})[col[pair]] = c
    ech = Echelon(len(pairs))
    for row in rows.values():
        ech.add(row)
    null = ech.nullspace()
    if not null:
        return None
    vec = null[0]
    lead = vec[min(vec)]
    return {pairs[n]: c / lead for n, c in vec.items()}


class CGHom:
    """Matrix of an sl(2)-map M(p) x M(q) -> M(r).

    ``matrix[k][col]`` is the u_k coefficient of the image of the pair
    ``pairs[col]``.
    """

    def __init__(self, p, q, r, matrix):
        self.p, self.q, self.r = p, q, r
        self.pairs = tensor_pairs(p, q)
        self.matrix = matrix

    def image(self, i, j):
        col = i * (self.q + 1) + j
        return {k: self.matrix[k][col] for k in range(self.r + 1) if self.matrix[k][col]}

    def apply(self, vec):
        out = {}
        for (i, j), c in vec.items():
            for k, a in self.image(i, j).items():
                out[k] = out.get(k, 0) + a * c
        return {k: v for k, v in out.items() if v}

    def scaled(self, c):
        c = Fraction(c)
        return CGHom(self.p, self.q, self.r, [[c * x for x in row] for row in self.matrix])

    def is_zero(self):
        return not any(x for row in self.matrix for x in row)


def clebsch_gordan_hom(p, q, r):
    """Explicit hom onto M(r), zero when r is not a summand of M(p) x M(q).

    Every summand M(s) is spanned by f-strings of its normalized highest
    vector; the f-string of weight r is sent to u_0, u_1, ... and all other
    strings go to zero.
    """
    npairs = (p + 1) * (q + 1)
    zero = [[Fraction(0)] * npairs for _ in range(r + 1)]
    if not hom_dim(p, q, r):
        return CGHom(p, q, r, zero)
    index = {pair: n for n, pair in enumerate(tensor_pairs(p, q))}
    columns = []
    targets = []
    for s in tensor_decompose(p, q):
        vec = _highest_vector(p, q, s)
        for k in range(s + 1):
            columns.append(vec)
            targets.append(k if s == r else None)
            vec = tensor_action(p, q, F, vec)
    # Solve  B x = e_pair  for each basis pair, B = [string vectors].
    ech = Echelon(npairs)
    for pair, row_idx in index.items():
        row = {c: v[pair] for c, v in enumerate(columns) if v.get(pair)}
        row[npairs + row_idx] = Fraction(1)
        ech.add(row)
    mat = [row[:] for row in zero]
    for c, k in enumerate(targets):
        if k is None:
            continue
        for pair, n in index.items():
            mat[k][n] = ech.pivots[c].get(npairs + n, Fraction(0))
    return CGHom(p, q, r, mat)


def identity_hom(q):
    return clebsch_gordan_hom(0, q, q)
