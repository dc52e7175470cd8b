"""Components Y_m(a)b for PBW vectors a of V^{M(p)} and b of V^{M(q)}.

With Y(a, x)b = sum_m Y_m(a)b x^{-m + offset}, the two extension rules read

    Y_m(u)(h(-n)b) = h(-n) Y_m(u)b - Y_{m-n}(h(0)u)b                 (u lowest)
    Y_m(h(-n)a)b   = sum_i C(n+i-1, i) h(-n-i) Y_{m+i}(a)b
                     - (-1)^n sum_i C(n+i-1, i) Y_{m-n-i}(a)(h(i)b)

and the commutator rule

    Y_m(a)(h(-n)b) = h(-n) Y_m(a)b - sum_i C(-n, i) Y_{m-n-i}(h(i)a)b

gives a second, independent evaluation order.  Y_m(a)b lies in grade
deg a + deg b - m of V^{M(r)}.
"""

from fractions import Fraction

from ..affine_pbw import depth
from ..gvm import ModuleElement, build_module
from ..linalg import axpy


def binom(n, i):
    """Generalized binomial coefficient for integer n and i >= 0."""
    if i < 0:
        return 0
    out = Fraction(1)
    for t in range(i):
        out = out * (n - t) / (t + 1)
    return out


class TruncationOverflow(ValueError):
    pass


class FullIntertwiner:
    def __init__(self, table, order="a-first"):
        if order not in ("a-first", "b-first"):
            raise ValueError("order must be 'a-first' or 'b-first'")
        self.T = table
        self.order = order
        lv, N = table.level, table.grade
        self.Vp = build_module(table.p, lv, N)
        self.Vq = build_module(table.q, lv, N)
        self.Vr = build_module(table.r, lv, N)
        self.top = N
        self._memo = {}

    def output_grade(self, m, a, b):
        return depth(a[0]) + depth(b[0]) - m

    def component(self, m, a, b):
        o = self.output_grade(m, a, b)
        if o < 0:
            return {}
        if o > self.top:
            raise TruncationOverflow(f"output grade {o} exceeds truncation {self.top}")
        ck = (m, a, b)
        hit = self._memo.get(ck)
        if hit is None:
            if self.order == "a-first":
                hit = self._a_first(m, a, b)
            else:
                hit = self._b_first(m, a, b)
            self._memo[ck] = hit
        return hit

    def apply(self, m, a_vec, b_vec):
        """Linear extension; ``m`` is shifted per term so the output grade is fixed."""
        out = ModuleElement()
        for a, ca in a_vec.items():
            for b, cb in b_vec.items():
                axpy(out, ca * cb, self.component(m, a, b))
        return out

    def evaluate(self, a, b, output_grade):
        """Component of Y(a, x)b in the given output grade."""
        out = ModuleElement()
        for ka, ca in a.items():
            for kb, cb in b.items():
                m = depth(ka[0]) + depth(kb[0]) - output_grade
                axpy(out, ca * cb, self.component(m, ka, kb))
        return out

    # -- recursions ------------------------------------------------------------
    def _raise(self, g, m, vec):
        out = self.Vr.act(g, m, vec)
        if out.truncated:
            raise TruncationOverflow("negative mode pushed a term past the truncation")
        return out

    def _lowest(self, m, i, j):
        return self.T.component(m, i, j)

    def _split_b(self, m, a, b, recurse):
        """Peel the first generator off b (commutator rule)."""
        amono, (bmono, j) = a[0], b
        x, rest = bmono[0], (bmono[1:], j)
        n, g = -x[0], x[1]
        out = ModuleElement()
        axpy(out, 1, self._raise(g, -n, recurse(m, a, rest)))
        for s in range(depth(amono) + 1):
            c = binom(-n, s)
            if not c:
                continue
            for a2, ca in self.Vp.act_key(g, s, a).items():
                axpy(out, -c * ca, recurse(m - n - s, a2, rest))
        return out

    def _split_a(self, m, a, b, recurse):
        """Peel the first generator off a (iterate rule)."""
        (amono, i), bmono = a, b[0]
        x, rest = amono[0], (amono[1:], i)
        n, g = -x[0], x[1]
        out = ModuleElement()
        s = 0
        while self.output_grade(m + s, rest, b) >= 0:
            c = binom(n + s - 1, s)
            axpy(out, c, self._raise(g, -n - s, recurse(m + s, rest, b)))
            s += 1
        sign = -1 if n % 2 else 1
        for s in range(depth(bmono) + 1):
            c = sign * binom(n + s - 1, s)
            for b2, cb in self.Vq.act_key(g, s, b).items():
                axpy(out, -c * cb, recurse(m - n - s, rest, b2))
        return out

    def _a_first(self, m, a, b):
        if a[0]:
            return self._split_a(m, a, b, self.component)
        if b[0]:
            return self._split_b(m, a, b, self.component)
        return self._lowest(m, a[1], b[1])

    def _b_first(self, m, a, b):
        if b[0]:
            return self._split_b(m, a, b, self.component)
        if a[0]:
            return self._split_a(m, a, b, self.component)
        return self._lowest(m, a[1], b[1])


def extend_to_full(table, order="a-first"):
    return FullIntertwiner(table, order)
