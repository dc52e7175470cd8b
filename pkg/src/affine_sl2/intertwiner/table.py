import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction

from ..gvm import ModuleElement, build_module, conformal_weight
from ..linalg import axpy
from ..sl2_core import tensor_pairs


@dataclass
class IntertwinerTable:
    """Component maps Y_{-k}: M(p) x M(q) -> V^{M(r)}(k), k = 0..N.

    ``full[k][(i, j)]`` is Y_{-k}(u_i) v_j.  ``k_part`` and ``j_part`` hold the
    two summands of the construction when it came from ``build_components``.
    """

    p: int
    q: int
    r: int
    level: Fraction
    grade: int
    full: dict
    k_part: dict = field(default_factory=dict)
    j_part: dict = field(default_factory=dict)
    radical_shift: int = None

    @property
    def offset(self):
        lv = self.level
        return conformal_weight(self.r, lv) - conformal_weight(self.p, lv) - conformal_weight(self.q, lv)

    @property
    def target(self):
        return build_module(self.r, self.level, self.grade)

    def pairs(self):
        return tensor_pairs(self.p, self.q)

    def component(self, m, i, j):
        """Y_m(u_i) v_j; zero for m > 0 and below the truncation."""
        if m > 0 or -m > self.grade:
            return ModuleElement()
        return self.full[-m].get((i, j), ModuleElement())

    def matrix(self, k):
        """Dense matrix of Y_{-k}: rows follow the grade-k basis, columns the pairs."""
        basis = self.target.basis(k)
        cols = self.pairs()
        return [[self.full[k].get(pair, {}).get(key, Fraction(0)) for pair in cols] for key in basis]

    def perturbed(self, k, row, col, delta=1):
        key = self.target.basis(k)[row]
        pair = self.pairs()[col]
        full = {d: {pr: ModuleElement(v) for pr, v in comp.items()} for d, comp in self.full.items()}
        vec = full[k].setdefault(pair, ModuleElement())
        axpy(vec, Fraction(delta), {key: 1})
        return IntertwinerTable(self.p, self.q, self.r, self.level, self.grade, full,
                                radical_shift=self.radical_shift)

    def scaled(self, c):
        c = Fraction(c)
        full = {d: {pr: ModuleElement({k: c * x for k, x in v.items() if c * x})
                    for pr, v in comp.items()} for d, comp in self.full.items()}
        return IntertwinerTable(self.p, self.q, self.r, self.level, self.grade, full,
                                radical_shift=self.radical_shift)

    def is_zero(self):
        return not any(v for comp in self.full.values() for v in comp.values())

    def to_json(self):
        V = self.target
        comps = []
        for k in range(self.grade + 1):
            for pair in self.pairs():
                vec = self.full[k].get(pair, {})
                comps.append({
                    "depth": k, "u": pair[0], "v": pair[1],
                    "terms": [[V.render_key(key), str(c)] for key, c in sorted(vec.items())],
                })
        doc = {"p": self.p, "q": self.q, "r": self.r, "level": str(self.level),
               "grade": self.grade, "offset": str(self.offset), "components": comps}
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    def checksum(self):
        return hashlib.sha256(self.to_json().encode()).hexdigest()


def zero_table(p, q, r, level, grade):
    full = {k: {} for k in range(grade + 1)}
    return IntertwinerTable(p, q, r, Fraction(level), grade, full)
