"""Truncated generalized Verma modules V^{M(n)} at level l.

Basis vectors are keys ``(monomial, k)``: a sorted PBW monomial acting on the
weight vector u_k of the lowest space M(n).  Elements are ``ModuleElement``
dicts from keys to Fractions.
"""

import json
import os
from dataclasses import dataclass
from fractions import Fraction

from .affine_pbw import AffineGenerator, bracket, depth, enumerate_pbw, insert, render_monomial, weight
from .linalg import Echelon, axpy
from .sl2_core import E, F, H, LABELS, ROOT_WEIGHT, irrep_action, label_index

CAP_ENV = "AFFINE_SL2_MAX_BASIS"
DEFAULT_CAP = 200_000


class ResourceLimitError(RuntimeError):
    pass


class ModuleElement(dict):
    """Sparse vector; ``truncated`` marks dropped terms above the top grade."""

    truncated = False

    def copy(self):
        out = ModuleElement(self)
        out.truncated = self.truncated
        return out


def element(items=(), truncated=False):
    out = ModuleElement({k: Fraction(v) for k, v in dict(items).items() if v})
    out.truncated = truncated
    return out


def _add(vec, key, c):
    new = vec.get(key, 0) + c
    if new:
        vec[key] = new
    else:
        vec.pop(key, None)


def key_grade(key):
    return depth(key[0])


@dataclass(frozen=True)
class GVMConfig:
    n: int
    level: Fraction
    grade: int

    def __post_init__(self):
        if self.n < 0 or self.grade < 0:
            raise ValueError("highest weight and truncation grade must be non-negative")
        object.__setattr__(self, "level", Fraction(self.level))
        if self.level == -2:
            raise ValueError("critical level l = -2 is excluded")


def grade_dim(n, d):
    return (n + 1) * len(enumerate_pbw(d)) if d >= 0 else 0


class GeneralizedVermaModule:
    def __init__(self, cfg, cap=None):
        self.cfg = cfg
        self.n, self.level, self.top = cfg.n, cfg.level, cfg.grade
        if cap is None:
            cap = int(os.environ.get(CAP_ENV, DEFAULT_CAP))
        total = sum(grade_dim(self.n, d) for d in range(self.top + 1))
        if total > cap:
            raise ResourceLimitError(
                f"basis of V^M({self.n}) to grade {self.top} has {total} vectors, cap is {cap}")
        self._grades = []
        self._blocks = {}
        self._index = {}
        for d in range(self.top + 1):
            keys = [(mono, k) for mono in enumerate_pbw(d) for k in range(self.n + 1)]
            self._grades.append(keys)
            for key in keys:
                w = self.key_weight(key)
                blk = self._blocks.setdefault((d, w), [])
                self._index[key] = len(blk)
                blk.append(key)
        self._pos_cache = {}

    # -- bookkeeping -------------------------------------------------------
    def key_weight(self, key):
        return weight(key[0]) + self.n - 2 * key[1]

    def basis(self, d):
        return self._grades[d] if 0 <= d <= self.top else []

    def block(self, d, w):
        return self._blocks.get((d, w), [])

    def index(self, key):
        return self._index[key]

    def weights(self, d):
        return sorted({w for (dd, w) in self._blocks if dd == d}, reverse=True)

    def dim(self, d):
        return len(self.basis(d))

    def conformal_weight(self, d=0):
        return d + Fraction(self.n * (self.n + 2)) / (4 * (self.level + 2))

    # -- action ------------------------------------------------------------
    def _positive(self, g, m, mono, k):
        """g(m) (mono . u_k) for m >= 0 as a plain dict."""
        if m > depth(mono):
            return {}
        ck = (g, m, mono, k)
        hit = self._pos_cache.get(ck)
        if hit is not None:
            return hit
        res = {}
        if not mono:
            for k2, c in irrep_action(self.n, g, k).items():
                res[((), k2)] = c
        else:
            x, rest = mono[0], mono[1:]
            for (t, k2), c in self._positive(g, m, rest, k).items():
                for t2, c2 in insert(x, t):
                    _add(res, (t2, k2), c * c2)
            terms, central = bracket((m, g), x, self.level)
            for cz, z in terms:
                if z.mode < 0:
                    for t2, c2 in insert(z, rest):
                        _add(res, (t2, k), cz * c2)
                else:
                    axpy(res, cz, self._positive(z.label, z.mode, rest, k))
            if central:
                _add(res, (rest, k), central)
        self._pos_cache[ck] = res
        return res

    def act_key(self, g, m, key):
        """g(m) applied to one basis vector; may exceed the top grade."""
        mono, k = key
        if m >= 0:
            return self._positive(g, m, mono, k)
        return {(t, k): c for t, c in insert(AffineGenerator(m, g), mono)}

    def act(self, g, m, v):
        g = label_index(g)
        out = ModuleElement()
        out.truncated = getattr(v, "truncated", False)
        for key, c in v.items():
            if m < 0 and key_grade(key) - m > self.top:
                out.truncated = True
                continue
            axpy(out, c, self.act_key(g, m, key))
        return out

    def act_word(self, mono, v):
        """Apply a PBW word (rightmost generator first)."""
        for x in reversed(mono):
            v = self.act(x[1], x[0], v)
        return v

    # -- singular vectors --------------------------------------------------
    def singular_vectors(self, d):
        out = []
        for w in self.weights(d):
            blk = self.block(d, w)
            ech = Echelon(len(blk))
            rows = {}
            ops = [(E, 0)] + [(g, m) for m in range(1, d + 1) for g in (E, H, F)]
            for g, m in ops:
                for col, key in enumerate(blk):
                    for tgt, c in self.act_key(g, m, key).items():
                        rows.setdefault((g, m, tgt), {})[col] = c
            for row in rows.values():
                ech.add(row)
            for vec in ech.nullspace():
                out.append(element({blk[i]: c for i, c in vec.items()}))
        return out

    # -- rendering ---------------------------------------------------------
    def render_key(self, key):
        mono = render_monomial(key[0])
        return f"{mono}u{key[1]}" if mono else f"u{key[1]}"

    def render(self, v):
        if not v:
            return "0"
        return " + ".join(f"{c}*{self.render_key(k)}" for k, c in sorted(v.items()))

    def skeleton(self):
        grades = []
        for d in range(self.top + 1):
            grades.append({
                "grade": d,
                "dim": self.dim(d),
                "weights": {str(w): len(self.block(d, w)) for w in self.weights(d)},
            })
        return {"n": self.n, "level": str(self.level), "top_grade": self.top, "grades": grades}

    def skeleton_json(self):
        return json.dumps(self.skeleton(), sort_keys=True)


_MODULES = {}


def build_module(n, level, grade):
    """Memoized module handle; handles are never mutated after the build."""
    cfg = GVMConfig(n, Fraction(level), grade)
    hit = _MODULES.get(cfg)
    if hit is None:
        hit = _MODULES[cfg] = GeneralizedVermaModule(cfg)
    return hit


def conformal_weight(n, level, d=0):
    return d + Fraction(n * (n + 2)) / (4 * (Fraction(level) + 2))


__all__ = [
    "GVMConfig", "GeneralizedVermaModule", "ModuleElement", "ResourceLimitError",
    "build_module", "conformal_weight", "element", "grade_dim", "key_grade", "LABELS",
    "E", "F", "H", "ROOT_WEIGHT",
]
