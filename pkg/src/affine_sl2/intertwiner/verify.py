"""Exhaustive identity checks on intertwiner tables."""

from dataclasses import dataclass, field

from ..affine_pbw import depth
from ..gvm import ModuleElement, key_grade
from ..linalg import axpy
from ..sl2_core import E, F, H, LABELS, irrep_action
from .extend import FullIntertwiner, binom


@dataclass
class VerificationReport:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def record(self, passed, item):
        self.checked += 1
        if not passed:
            self.failures.append(item)

    def as_dict(self):
        return {"check": self.name, "checked": self.checked, "failures": len(self.failures)}


def _diff(a, b):
    out = ModuleElement(a)
    axpy(out, -1, b)
    return out


def verify_component_commutators(T):
    """[g(n), Y_m(u)]v = Y_{m+n}(g(0)u)v for u, v lowest, 0 <= n <= N, -N <= m <= 0."""
    V = T.target
    rep = VerificationReport("component commutators")
    N = T.grade
    for k in range(N + 1):
        for i, j in T.pairs():
            w = (T.p - 2 * i) + (T.q - 2 * j)
            vec = T.component(-k, i, j)
            shape_ok = all(key_grade(key) == k and V.key_weight(key) == w for key in vec)
            rep.record(shape_ok, ("grading", -k, i, j))
    for g in (E, H, F):
        for n in range(N + 1):
            for k in range(N + 1):
                m = -k
                for i, j in T.pairs():
                    lhs = V.act(g, n, T.component(m, i, j))
                    if n == 0:
                        for j2, c in irrep_action(T.q, g, j).items():
                            axpy(lhs, -c, T.component(m, i, j2))
                    rhs = ModuleElement()
                    for i2, c in irrep_action(T.p, g, i).items():
                        axpy(rhs, c, T.component(m + n, i2, j))
                    rep.record(lhs == rhs, (LABELS[g], n, m, i, j))
    return rep


def verify_jacobi_truncated(T, grade=None, evaluator=None):
    """Commutator and iterate formulas for the vectors g(-1)1, all within grade N."""
    N = T.grade if grade is None else grade
    Y = evaluator or FullIntertwiner(T)
    Vp, Vq, Vr = Y.Vp, Y.Vq, Y.Vr
    comm = VerificationReport("commutator formula")
    iterate = VerificationReport("iterate formula")
    a_keys = [a for d in range(N) for a in Vp.basis(d)]
    b_keys = [b for d in range(N) for b in Vq.basis(d)]
    for g in (E, H, F):
        for a in a_keys:
            dA = depth(a[0])
            av = {a: 1}
            for b in b_keys:
                dB = depth(b[0])
                bv = {b: 1}
                for n in range(-N, N + 1):
                    if dB - n > N:
                        continue
                    gb = Vq.act(g, n, bv)
                    for o in range(N + 1):
                        if o + n > N:
                            continue
                        m = dA + dB - o - n
                        lhs = Vr.act(g, n, Y.component(m, a, b)) if o + n >= 0 else ModuleElement()
                        axpy(lhs, -1, Y.evaluate(av, gb, o))
                        rhs = ModuleElement()
                        for s in range(dA + 1):
                            c = binom(n, s)
                            if c:
                                axpy(rhs, c, Y.evaluate(Vp.act(g, s, av), bv, o))
                        comm.record(lhs == rhs, (LABELS[g], n, Vp.render_key(a), Vq.render_key(b), o))
                for k in range(-N, N + 1):
                    if dA - k > N:
                        continue
                    ga = Vp.act(g, k, av)
                    for o in range(N + 1):
                        if o + k > N:
                            continue
                        lhs = Y.evaluate(ga, bv, o)
                        m = dA - k + dB - o
                        rhs = ModuleElement()
                        s = 0
                        while dA + dB - m - s >= 0:
                            c = binom(k, s) * (-1) ** s
                            if c:
                                axpy(rhs, c, Vr.act(g, k - s, Y.component(m + s, a, b)))
                            s += 1
                        for s in range(dB + 1):
                            c = binom(k, s) * (-1) ** ((k - s) % 2)
                            if c:
                                axpy(rhs, -c, Y.evaluate(av, Vq.act(g, s, bv), o))
                        iterate.record(lhs == rhs, (LABELS[g], k, Vp.render_key(a), Vq.render_key(b), o))
    return comm, iterate


def verify_order_independence(T, grade=None):
    """Evaluate every component both ways and compare."""
    N = T.grade if grade is None else grade
    first_a = FullIntertwiner(T, "a-first")
    first_b = FullIntertwiner(T, "b-first")
    rep = VerificationReport("evaluation order")
    for da in range(N + 1):
        for a in first_a.Vp.basis(da):
            for db in range(N + 1 - da):
                for b in first_a.Vq.basis(db):
                    for o in range(N + 1):
                        m = da + db - o
                        x = first_a.component(m, a, b)
                        y = first_b.component(m, a, b)
                        rep.record(x == y, (first_a.Vp.render_key(a), first_a.Vq.render_key(b), o))
    return rep
