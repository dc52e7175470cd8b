"""Affine sl(2) generators, the bracket, and PBW normal ordering in U(g_-).

A generator g(n) is stored as the pair ``(n, label)`` with label 0, 1, 2 for
e, h, f.  Tuples then sort in the PBW order used everywhere: deeper modes first,
ties broken by e < h < f.  A PBW monomial is a sorted tuple of such pairs.
"""

import re
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .sl2_core import E, F, H, LABELS, ROOT_WEIGHT, label_index

# [x, y] in sl(2) as (label, coefficient)
_LIE = {
    (E, F): (H, 1), (F, E): (H, -1),
    (H, E): (E, 2), (E, H): (E, -2),
    (H, F): (F, -2), (F, H): (F, 2),
}
# normalized invariant form: <e,f> = <f,e> = 1, <h,h> = 2
_FORM = {(E, F): 1, (F, E): 1, (H, H): 2}


class AffineGenerator(NamedTuple):
    mode: int
    label: int

    def __str__(self):
        return f"{LABELS[self.label]}({self.mode})"


def gen(label, mode):
    return AffineGenerator(int(mode), label_index(label))


def bracket(x, y, level):
    """[x, y] as (generator terms [(coeff, AffineGenerator)], central scalar)."""
    terms = []
    lie = _LIE.get((x[1], y[1]))
    if lie:
        terms.append((Fraction(lie[1]), AffineGenerator(x[0] + y[0], lie[0])))
    central = Fraction(0)
    if x[0] + y[0] == 0:
        central = Fraction(x[0] * _FORM.get((x[1], y[1]), 0)) * level
    return terms, central


def depth(mono):
    return -sum(g[0] for g in mono)


def weight(mono):
    return sum(ROOT_WEIGHT[g[1]] for g in mono)


@lru_cache(maxsize=None)
def enumerate_pbw(d):
    """All sorted monomials of depth d."""
    out = []

    def rec(remaining, lower, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for n in range(remaining, 0, -1):
            for lab in (E, H, F):
                g = AffineGenerator(-n, lab)
                if g < lower:
                    continue
                acc.append(g)
                rec(remaining - n, g, acc)
                acc.pop()

    rec(d, AffineGenerator(-d - 1, E), [])
    return tuple(out)


@lru_cache(maxsize=None)
def insert(x, mono):
    """x * mono rewritten in the PBW basis, as a tuple of (monomial, coeff)."""
    if not mono or x <= mono[0]:
        return (((x,) + mono, Fraction(1)),)
    y, rest = mono[0], mono[1:]
    out = {}
    # x y rest = y (x rest) + [x, y] rest
    for t, c in insert(x, rest):
        for t2, c2 in insert(y, t):
            out[t2] = out.get(t2, 0) + c * c2
    lie = _LIE.get((x[1], y[1]))
    if lie:
        z = AffineGenerator(x[0] + y[0], lie[0])
        for t, c in insert(z, rest):
            out[t] = out.get(t, 0) + lie[1] * c
    return tuple((t, c) for t, c in sorted(out.items()) if c)


def straighten(seq):
    """Normal-order a product of negative-mode generators."""
    seq = [AffineGenerator(*g) for g in seq]
    if any(g.mode >= 0 for g in seq):
        raise ValueError("straighten only accepts negative modes")
    acc = {(): Fraction(1)}
    for x in reversed(seq):
        nxt = {}
        for mono, c in acc.items():
            for t, c2 in insert(x, mono):
                nxt[t] = nxt.get(t, 0) + c * c2
        acc = {t: v for t, v in nxt.items() if v}
    return acc


def render_monomial(mono):
    return "".join(str(AffineGenerator(*g)) for g in mono)


_TOKEN = re.compile(r"([ehf])\((-?\d+)\)")


def parse_monomial(text):
    """Inverse of ``render_monomial``. The result is not straightened."""
    text = text.strip()
    pos, out = 0, []
    for m in _TOKEN.finditer(text):
        if m.start() != pos:
            raise ValueError(f"cannot parse monomial {text!r}")
        out.append(gen(m.group(1), int(m.group(2))))
        pos = m.end()
    if pos != len(text):
        raise ValueError(f"cannot parse monomial {text!r}")
    return tuple(out)


def render_combination(comb):
    parts = []
    for mono, c in sorted(comb.items()):
        parts.append(f"{c}*{render_monomial(mono) or '1'}")
    return " + ".join(parts) if parts else "0"
