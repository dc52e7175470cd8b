"""Affine Weyl group of sl(2): dot action, Bruhat order, resolution data.

Weights are triples (a, l, d) of coefficients of alpha/2, k', d'.
Words are tuples over {0, 1} (r_0, r_1); a word acts on weights by applying
its rightmost letter first.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .gvm import grade_dim


@dataclass(frozen=True)
class AffineWeight:
    a: Fraction
    l: Fraction
    d: Fraction

    def __post_init__(self):
        for name in ("a", "l", "d"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def __add__(self, o):
        return AffineWeight(self.a + o.a, self.l + o.l, self.d + o.d)

    def __sub__(self, o):
        return AffineWeight(self.a - o.a, self.l - o.l, self.d - o.d)

    def scale(self, c):
        return AffineWeight(c * self.a, c * self.l, c * self.d)

    def eval_coroot(self, i):
        return self.l - self.a if i == 0 else self.a


RHO = AffineWeight(1, 2, 0)
SIMPLE_ROOTS = (AffineWeight(-2, 0, 1), AffineWeight(2, 0, 0))


def reflect(i, lam):
    return lam - SIMPLE_ROOTS[i].scale(lam.eval_coroot(i))


def is_reduced(word):
    return all(x != y for x, y in zip(word, word[1:]))


def reduce_word(word):
    out = []
    for x in word:
        if out and out[-1] == x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def act(word, lam):
    for i in reversed(word):
        lam = reflect(i, lam)
    return lam


def dot(word, lam):
    return act(word, lam + RHO) - RHO


def w1_element(j):
    """(r0 r1)^n r0 for j = 2n+1, (r0 r1)^n for j = 2n."""
    return tuple(i % 2 for i in range(j))


def m_of(j, n, level):
    if not 0 <= n <= level or j < 0:
        raise ValueError(f"m(j, n) needs 0 <= n <= l and j >= 0, got j={j}, n={n}, l={level}")
    sign = -1 if j % 2 else 1
    return (level + 2) * j + (level if j % 2 else 0) + sign * n


def locate(r, level):
    """(j, n) with m(j, n) = r, or None."""
    for j in range(r + 2):
        for n in range(level + 1):
            if m_of(j, n, level) == r:
                return j, n
    return None


def bruhat_leq(x, y):
    x, y = reduce_word(x), reduce_word(y)
    return len(x) < len(y) or x == y


def bruhat_leq_subword(x, y):
    """Brute force: is the reduced word of x a subword of that of y?"""
    x, y = reduce_word(x), reduce_word(y)
    return any(tuple(y[i] for i in pos) == x for pos in combinations(range(len(y)), len(x)))


def left_mult(i, word):
    return reduce_word((i,) + tuple(word))


def verma_mult(x, y):
    return int(bruhat_leq(x, y))


def gvm_mult(x, y):
    return int(bruhat_leq(x, y) and not bruhat_leq(left_mult(1, x), y))


def resolution_weights(n, level, j_max):
    lam = AffineWeight(n, level, 0)
    out = []
    for j in range(j_max + 1):
        mu = dot(w1_element(j), lam)
        a = m_of(j, n, level)
        if mu.a != a:
            raise ArithmeticError("dot action disagrees with m(j, n)")
        out.append((a, int(-mu.d)))
    return out


def resolution_until(n, level, grade):
    """Resolution terms whose shift does not exceed ``grade``."""
    j = 0
    while True:
        terms = resolution_weights(n, level, j)
        if terms[-1][1] > grade:
            return terms[:-1]
        j += 1


def euler_dims(n, level, grade):
    total = 0
    for j, (a, s) in enumerate(resolution_until(n, level, grade)):
        total += (-1) ** j * grade_dim(a, grade - s)
    return total
