"""Invariant pairing on a generalized Verma module and what it induces.

The pairing satisfies <g(m)u, v> = -<u, g(-m)v>.  On the lowest space it is the
invariant pairing of M(n) with <u_0, u_n> = 1, and it is extended by
<u, y v> = <P(theta(y) u), v> where theta(g(m)) = -g(-m) is reversed along
products and P projects to grade 0.  Because h-weights must cancel, the Gram
block for right-hand weight w has its rows in weight -w.

The radical J splits off a complement K stable under e(0), h(0), f(0).  J is
identified with the irreducible quotient of a second module V^{M(r')}
through the singular vector heading J, which transports a nondegenerate form
onto J.
"""

import logging
from fractions import Fraction

from .gvm import ModuleElement, build_module, element, key_grade
from .linalg import Echelon, InconsistentSystem, axpy, fraction_free_rank, inverse
from .sl2_core import E, F, H, ROOT_WEIGHT, irrep_action

log = logging.getLogger(__name__)


class FunctionalNotAnnihilatingJ(ValueError):
    pass


class JNotIrreducible(ValueError):
    pass


def lowest_pairing(n):
    """Solve the invariance equations for the pairing on M(n)."""
    idx = lambda a, b: a * (n + 1) + b
    nv = (n + 1) ** 2
    ech = Echelon(nv)
    for g in (E, H, F):
        for a in range(n + 1):
            for b in range(n + 1):
                row = {}
                for a2, c in irrep_action(n, g, a).items():
                    row[idx(a2, b)] = row.get(idx(a2, b), 0) + c
                for b2, c in irrep_action(n, g, b).items():
                    row[idx(a, b2)] = row.get(idx(a, b2), 0) + c
                ech.add({k: v for k, v in row.items() if v})
    ech.add({idx(0, n): Fraction(1), nv: Fraction(1)})
    sol = ech.solution(nv)
    if ech.rank != nv:
        raise ArithmeticError("invariant pairing on M(n) is not unique")
    return [[sol.get(idx(a, b), Fraction(0)) for b in range(n + 1)] for a in range(n + 1)]


class KJSplit:
    """K and J bases of one grade, per h-weight, with coordinate maps."""

    def __init__(self, grade, k_parts, j_parts, coords, straddles):
        self.grade = grade
        self.k_parts = k_parts
        self.j_parts = j_parts
        self._coords = coords
        self.straddles = straddles

    def dim_k(self):
        return sum(len(v) for v in self.k_parts.values())

    def dim_j(self):
        return sum(len(v) for v in self.j_parts.values())

    def _split(self, v):
        out_k, out_j = ModuleElement(), ModuleElement()
        by_w = {}
        for key, c in v.items():
            by_w.setdefault(self._weight_of[key], {})[key] = c
        for w, part in by_w.items():
            kc, jc = self.coordinates(w, part)
            for c, vec in zip(kc, self.k_parts[w]):
                axpy(out_k, c, vec)
            for c, vec in zip(jc, self.j_parts[w]):
                axpy(out_j, c, vec)
        return out_k, out_j

    def coordinates(self, w, part):
        """Coordinates of a weight-w vector in the (K, J) basis of its block."""
        keys, inv = self._coords[w]
        x = [part.get(k, 0) for k in keys]
        nk = len(self.k_parts[w])
        coords = [sum((r[i] * x[i] for i in range(len(x)) if x[i] and r[i]), Fraction(0)) for r in inv]
        return coords[:nk], coords[nk:]

    def project_k(self, v):
        return self._split(v)[0]

    def project_j(self, v):
        return self._split(v)[1]


class InvariantPairing:
    def __init__(self, module):
        self.V = module
        self.n = module.n
        self.lowest = lowest_pairing(self.n)
        self._gram = {}
        self._radical = {}
        self._splits = {}
        self._transport = {}

    # -- the form ----------------------------------------------------------
    def gram_block(self, d, w):
        """Matrix of pair(row, col), cols = block (d, w), rows = block (d, -w)."""
        ck = (d, w)
        if ck in self._gram:
            return self._gram[ck]
        V = self.V
        rows, cols = V.block(d, -w), V.block(d, w)
        mat = [[Fraction(0)] * len(cols) for _ in rows]
        for c, (mono, k) in enumerate(cols):
            if not mono:
                for r, (_, k2) in enumerate(rows):
                    mat[r][c] = self.lowest[k2][k]
                continue
            x, rest = mono[0], (mono[1:], k)
            n, a = -x[0], x[1]
            prev = self.gram_block(d - n, w - ROOT_WEIGHT[a])
            col_prev = V.index(rest)
            for r, key in enumerate(rows):
                s = Fraction(0)
                for tgt, coeff in V.act_key(a, n, key).items():
                    s += coeff * prev[V.index(tgt)][col_prev]
                mat[r][c] = -s
        self._gram[ck] = mat
        return mat

    def pair(self, u, v):
        total = Fraction(0)
        by_block = {}
        for key, c in v.items():
            by_block.setdefault((key_grade(key), self.V.key_weight(key)), []).append((key, c))
        for (d, w), items in by_block.items():
            mat = self.gram_block(d, w)
            for key, c in items:
                col = self.V.index(key)
                for lk, a in u.items():
                    if key_grade(lk) == d and self.V.key_weight(lk) == -w:
                        total += a * c * mat[self.V.index(lk)][col]
        return total

    def theta_apply(self, u, mono):
        for x in mono:
            u = self.V.act(x[1], -x[0], u)
            u = element({k: -c for k, c in u.items()}, u.truncated)
        return u

    def pair_direct(self, u, v):
        """Pairing straight from the definition; slow, used as a cross-check."""
        total = Fraction(0)
        for (mono, k), c in v.items():
            low = self.theta_apply(u, mono)
            for (m2, k2), a in low.items():
                if not m2:
                    total += c * a * self.lowest[k2][k]
        return total

    # -- radical and the K + J split ----------------------------------------
    def radical_block(self, d, w):
        ck = (d, w)
        if ck not in self._radical:
            cols = self.V.block(d, w)
            ech = Echelon(len(cols))
            for row in self.gram_block(d, w):
                ech.add({j: x for j, x in enumerate(row) if x})
            self._radical[ck] = [element({cols[i]: c for i, c in vec.items()}) for vec in ech.nullspace()]
        return self._radical[ck]

    def radical_basis(self, d):
        out = []
        for w in self.V.weights(d):
            out.extend(self.radical_block(d, w))
        return out

    def block_rank(self, d, w):
        return fraction_free_rank(self.gram_block(d, w))

    def in_radical(self, v):
        by_block = {}
        for key, c in v.items():
            by_block.setdefault((key_grade(key), self.V.key_weight(key)), {})[key] = c
        for (d, w), part in by_block.items():
            mat = self.gram_block(d, w)
            for row in mat:
                if sum((row[self.V.index(k)] * c for k, c in part.items()), Fraction(0)):
                    return False
        return True

    def _e0_kernel(self, vectors):
        """Combinations of ``vectors`` killed by e(0)."""
        if not vectors:
            return []
        rows = {}
        for i, vec in enumerate(vectors):
            for tgt, c in self.V.act(E, 0, vec).items():
                rows.setdefault(tgt, {})[i] = c
        ech = Echelon(len(vectors))
        for row in rows.values():
            ech.add(row)
        out = []
        for coeffs in ech.nullspace():
            acc = ModuleElement()
            for i, c in coeffs.items():
                axpy(acc, c, vectors[i])
            out.append(acc)
        return out

    def kj_split(self, d):
        if d in self._splits:
            return self._splits[d]
        V = self.V
        k_parts = {w: [] for w in V.weights(d)}
        j_parts = {w: list(self.radical_block(d, w)) for w in V.weights(d)}
        straddles = []
        for s in V.weights(d):
            if s < 0:
                continue
            blk = V.block(d, s)
            unit = [element({key: 1}) for key in blk]
            tops = self._e0_kernel(unit)
            j_tops = self._e0_kernel(j_parts[s])
            if 0 < len(j_tops) < len(tops):
                straddles.append(s)
                log.warning("grade %d: type M(%d) straddles J and its complement; "
                            "using the e(0)-kernel complement", d, s)
            col = {key: i for i, key in enumerate(blk)}
            ech = Echelon(len(blk))
            for vec in j_tops:
                ech.add({col[k]: c for k, c in vec.items()})
            for vec in tops:
                if not ech.add({col[k]: c for k, c in vec.items()}):
                    continue
                w = s
                while True:
                    k_parts[w].append(vec)
                    if w == -s:
                        break
                    vec = V.act(F, 0, vec)
                    w -= 2
        coords = {}
        weight_of = {}
        for w in V.weights(d):
            keys = V.block(d, w)
            cols = k_parts[w] + j_parts[w]
            if len(cols) != len(keys):
                raise ArithmeticError(f"K + J does not fill block ({d}, {w})")
            mat = [[vec.get(key, Fraction(0)) for vec in cols] for key in keys]
            coords[w] = (keys, inverse(mat))
            for key in keys:
                weight_of[key] = w
        split = KJSplit(d, k_parts, j_parts, coords, straddles)
        split._weight_of = weight_of
        self._splits[d] = split
        return split

    # -- transport of functionals ---------------------------------------------
    def phi_transport(self, d, w, functional):
        """The K-vector y of weight -w with pair(y, b) = functional(b) on block (d, w).

        ``functional`` maps keys of block (d, w) to values (missing keys are 0).
        """
        for j in self.radical_block(d, w):
            if sum((functional.get(k, 0) * c for k, c in j.items()), Fraction(0)):
                raise FunctionalNotAnnihilatingJ("functional does not annihilate J")
        if not any(functional.values()):
            return ModuleElement()
        split = self.kj_split(d)
        kvecs = split.k_parts.get(-w, [])
        ck = (d, w)
        if ck not in self._transport:
            gram = self.gram_block(d, w)
            rows = self.V.block(d, -w)
            kg = []
            for vec in kvecs:
                kg.append([sum((vec.get(rk, 0) * gram[i][c] for i, rk in enumerate(rows) if vec.get(rk)),
                               Fraction(0)) for c in range(len(self.V.block(d, w)))])
            self._transport[ck] = kg
        kg = self._transport[ck]
        cols = self.V.block(d, w)
        nk = len(kvecs)
        ech = Echelon(nk)
        for c, key in enumerate(cols):
            row = {i: kg[i][c] for i in range(nk) if kg[i][c]}
            val = functional.get(key, 0)
            if val:
                row[nk] = Fraction(val)
            ech.add(row)
        try:
            sol = ech.solution(nk)
        except InconsistentSystem:
            raise FunctionalNotAnnihilatingJ("functional does not annihilate J") from None
        out = ModuleElement()
        for i, c in sol.items():
            axpy(out, c, kvecs[i])
        return out

    # -- first radical grade --------------------------------------------------
    def first_radical_grade(self):
        for d in range(1, self.V.top + 1):
            if self.radical_basis(d):
                return d
        return None


_PAIRINGS = {}


def pairing_for(n, level, grade):
    V = build_module(n, level, grade)
    hit = _PAIRINGS.get(V.cfg)
    if hit is None:
        hit = _PAIRINGS[V.cfg] = InvariantPairing(V)
    return hit


class RadicalTransport:
    """J(r) realized as the image of V^{M(r')} under u'_k -> f(0)^k s.

    ``s`` is the singular vector heading the radical at its lowest grade M.
    The kernel of this map must be the radical of V^{M(r')} for J(r) to be
    the irreducible quotient.
    """

    def __init__(self, pairing, shift=None):
        self.pairing = pairing
        V = self.V = pairing.V
        M = pairing.first_radical_grade() if shift is None else shift
        if M is None:
            raise JNotIrreducible("no radical below the truncation grade")
        self.shift = M
        low = pairing.radical_basis(M)
        tops = pairing._e0_kernel(low)
        if len(tops) != 1:
            raise JNotIrreducible("J not irreducible at this truncation")
        s = tops[0]
        weights = {V.key_weight(k) for k in s}
        self.top_weight = r2 = weights.pop()
        if len(low) != r2 + 1:
            raise JNotIrreducible("J not irreducible at this truncation")
        lead = s[min(s)]
        s = element({k: c / lead for k, c in s.items()})
        self.generators = [s]
        for _ in range(r2):
            self.generators.append(V.act(F, 0, self.generators[-1]))
        self.inner = pairing_for(r2, V.level, V.top - M)
        self.W = self.inner.V
        self._image = {}
        self._check_matching()

    def embed_key(self, key):
        hit = self._image.get(key)
        if hit is None:
            mono, k = key
            hit = self._image[key] = self.V.act_word(mono, self.generators[k])
        return hit

    def embed(self, v):
        out = ModuleElement()
        for key, c in v.items():
            axpy(out, c, self.embed_key(key))
        return out

    def _check_matching(self):
        V, W = self.V, self.W
        for d in range(W.top + 1):
            for w in W.weights(d):
                src = W.block(d, w)
                tgt = V.block(d + self.shift, w)
                col = {k: i for i, k in enumerate(tgt)}
                ech = Echelon(len(src))
                rows = {}
                for i, key in enumerate(src):
                    for k, c in self.embed_key(key).items():
                        rows.setdefault(col[k], {})[i] = c
                for row in rows.values():
                    ech.add(row)
                kernel = len(src) - ech.rank
                if kernel != len(self.inner.radical_block(d, w)):
                    raise JNotIrreducible("J not irreducible at this truncation")
                if ech.rank != len(self.pairing.radical_block(d + self.shift, w)):
                    raise JNotIrreducible("J not irreducible at this truncation")
        for d in range(W.top + 1):
            for key in W.basis(d):
                if not self.pairing.in_radical(self.embed_key(key)):
                    raise JNotIrreducible("J not irreducible at this truncation")

    def preimage(self, v):
        """Some x in V^{M(r')} with embed(x) = v, for v in J."""
        out = ModuleElement()
        by_block = {}
        for key, c in v.items():
            by_block.setdefault((key_grade(key), self.V.key_weight(key)), {})[key] = c
        for (d, w), part in by_block.items():
            src = self.W.block(d - self.shift, w)
            ech = Echelon(len(src))
            rows = {}
            for i, key in enumerate(src):
                for k, c in self.embed_key(key).items():
                    rows.setdefault(k, {})[i] = c
            for k in set(rows) | set(part):
                row = dict(rows.get(k, {}))
                if part.get(k):
                    row[len(src)] = part[k]
                ech.add(row)
            try:
                sol = ech.solution(len(src))
            except InconsistentSystem:
                raise ValueError("vector is not in J") from None
            for i, c in sol.items():
                out[src[i]] = c
        return out

    def j_form(self, u, v):
        return self.inner.pair(self.preimage(u), self.preimage(v))


def j_form(pairing, u, v):
    return RadicalTransport(pairing).j_form(u, v)
