"""Hypothesis checks and fusion-rule closed forms."""

from dataclasses import dataclass, field

from ..sl2_core import hom_dim
from ..weyl import locate, m_of

INDETERMINATE = "indeterminate"


@dataclass
class ConditionReport:
    p: int
    q: int
    r: int
    level: int
    position: tuple = None
    r_next: int = None
    r_next2: int = None
    hom_next: int = None
    hom_next2: int = None
    no_hom_next: bool = False
    no_hom_next2: bool = False
    notes: list = field(default_factory=list)

    @property
    def representable(self):
        return self.position is not None

    @property
    def passes(self):
        return self.representable and self.no_hom_next and self.no_hom_next2

    def summary(self):
        if not self.representable:
            return f"r={self.r} is not m(j, n) at level {self.level}; irreducibility of J(r) not established"
        return (f"r={self.r}=m{self.position}: hom to M({self.r_next}) is {self.hom_next}, "
                f"hom to M({self.r_next2}) is {self.hom_next2}")


def check_construction_conditions(p, q, r, level):
    rep = ConditionReport(p, q, r, level)
    pos = locate(r, level)
    if pos is None:
        rep.notes.append("irreducibility of J(r) not established")
        return rep
    j, n = pos
    rep.position = pos
    rep.r_next = m_of(j + 1, n, level)
    rep.r_next2 = m_of(j + 2, n, level)
    rep.hom_next = hom_dim(p, q, rep.r_next)
    rep.hom_next2 = hom_dim(p, q, rep.r_next2)
    rep.no_hom_next = rep.hom_next == 0
    rep.no_hom_next2 = rep.hom_next2 == 0
    return rep


@dataclass
class DescentConditions:
    q_next: int
    hom: int

    @property
    def passes(self):
        return self.q_next is not None and self.hom == 0


def check_descent_conditions(p, q, r, level):
    pos = locate(q, level)
    if pos is None:
        return DescentConditions(None, None)
    q_next = m_of(pos[0] + 1, pos[1], level)
    return DescentConditions(q_next, hom_dim(p, r, q_next))


def fusion_gvm(p, q, r, level):
    rep = check_construction_conditions(p, q, r, level)
    if not rep.passes:
        return INDETERMINATE
    return hom_dim(p, q, r)


def fusion_irr(p, q, r, level):
    rep = check_construction_conditions(p, q, r, level)
    if not rep.passes:
        return INDETERMINATE
    if not check_descent_conditions(p, q, r, level).passes:
        return INDETERMINATE
    return hom_dim(p, q, r)
