"""Passing an intertwiner to the irreducible quotients L(q) and L(r).

Y(u, x) must send J(q) into J(r).  When it does, the induced map on the
quotients is recorded on the K-representatives of V^{M(q)}/J(q), with values
projected onto K(r).
"""

from dataclasses import dataclass, field

from ..gvm import ModuleElement
from ..invariant_pairing import pairing_for
from ..linalg import axpy
from ..sl2_core import E, F, H, LABELS, ROOT_WEIGHT, irrep_action
from .conditions import check_descent_conditions
from .construct import HypothesisFailure
from .extend import FullIntertwiner
from .verify import VerificationReport


class DescentObstruction(ValueError):
    pass


@dataclass
class QuotientTable:
    """entries[(i, d, t, o)] = P_K(Y(u_i, x) kappa) in output grade o,
    where kappa = reps[d][t] is a K-representative in grade d."""

    p: int
    q: int
    r: int
    level: object
    grade: int
    reps: dict
    entries: dict = field(default_factory=dict)

    def value(self, i, d, t, o):
        if o < 0 or o > self.grade:
            return ModuleElement()
        return self.entries.get((i, d, t, o), ModuleElement())


def _k_reps(pairing, grade):
    reps = {}
    for d in range(grade + 1):
        split = pairing.kj_split(d)
        reps[d] = [(w, idx, vec) for w in sorted(split.k_parts)
                   for idx, vec in enumerate(split.k_parts[w])]
    return reps


def descend_to_irreducible(T, grade=None, *, override_conditions=False):
    N = T.grade if grade is None else grade
    cond = check_descent_conditions(T.p, T.q, T.r, int(T.level))
    if not cond.passes and not override_conditions:
        raise HypothesisFailure(
            f"descent needs no hom M({T.p}) x M({T.r}) -> M({cond.q_next}); found {cond.hom}")
    Y = FullIntertwiner(T)
    pq = pairing_for(T.q, T.level, T.grade)
    pr = pairing_for(T.r, T.level, T.grade)
    rep = VerificationReport("image of J(q) in J(r)")
    bad = {}
    for d in range(N + 1):
        for v in pq.radical_basis(d):
            for da in range(N + 1):
                for a in Y.Vp.basis(da):
                    for o in range(N + 1):
                        img = Y.evaluate({a: 1}, v, o)
                        stray = pr.kj_split(o).project_k(img) if img else img
                        ok = not stray
                        rep.record(ok, (d, Y.Vp.render_key(a), pq.V.render(v), o))
                        if not ok:
                            bad.setdefault(d, []).append(pq.V.render(v))
    if bad:
        d = min(bad)
        raise DescentObstruction(f"descent obstruction at grade {d}: {sorted(set(bad[d]))}")

    reps = _k_reps(pq, N)
    table = QuotientTable(T.p, T.q, T.r, T.level, N, reps)
    for i in range(T.p + 1):
        u = {((), i): 1}
        for d, items in reps.items():
            for t, (w, idx, vec) in enumerate(items):
                for o in range(N + 1):
                    img = Y.evaluate(u, vec, o)
                    if img:
                        val = pr.kj_split(o).project_k(img)
                        if val:
                            table.entries[(i, d, t, o)] = val
    return rep, table


def verify_quotient_commutators(Q):
    """[g(n), Y(u)]v = Y_{m+n}(g(0)u)v on the quotient, K-representatives throughout."""
    pq = pairing_for(Q.q, Q.level, Q.grade)
    pr = pairing_for(Q.r, Q.level, Q.grade)
    Vq, Vr = pq.V, pr.V
    N = Q.grade
    index = {d: {(w, idx): t for t, (w, idx, _) in enumerate(items)} for d, items in Q.reps.items()}
    rep = VerificationReport("quotient commutators")
    for g in (E, H, F):
        for i in range(Q.p + 1):
            for d, items in Q.reps.items():
                for t, (w, idx, vec) in enumerate(items):
                    for n in range(-N, N + 1):
                        dn = d - n
                        if dn > N:
                            continue
                        moved = pq.kj_split(dn).project_k(Vq.act(g, n, vec)) if dn >= 0 else {}
                        coords = []
                        if moved:
                            kc, _ = pq.kj_split(dn).coordinates(w + ROOT_WEIGHT[g], moved)
                            coords = [(index[dn][(w + ROOT_WEIGHT[g], s)], c) for s, c in enumerate(kc) if c]
                        for o in range(N + 1):
                            if o + n > N:
                                continue
                            lhs = ModuleElement()
                            if o + n >= 0:
                                lhs = Vr.act(g, n, Q.value(i, d, t, o + n))
                                lhs = pr.kj_split(o).project_k(lhs) if lhs else lhs
                            for t2, c in coords:
                                axpy(lhs, -c, Q.value(i, dn, t2, o))
                            rhs = ModuleElement()
                            for i2, c in irrep_action(Q.p, g, i).items():
                                axpy(rhs, c, Q.value(i2, d, t, o))
                            rep.record(lhs == rhs, (LABELS[g], n, i, d, t, o))
    return rep
