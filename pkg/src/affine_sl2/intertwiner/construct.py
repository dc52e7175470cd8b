"""Recursive construction of the component maps Y_{-k}, k = 0..N.

Each Y_{-k}(u)v splits as a K-part and a J-part.  The K-part is first found
as a functional on V^{M(r)}(k): its values on the spanning vectors g(-n)w are
fixed by lower depths, and all of these equations are solved together as one
exact system.  The functional must vanish on the radical J, after which the
pairing turns it into a vector of K.  The J-part follows the same pattern on
the module V^{M(r')} whose irreducible quotient is J(r).
"""

import random
from fractions import Fraction

from ..gvm import ModuleElement, element
from ..invariant_pairing import FunctionalNotAnnihilatingJ, RadicalTransport, pairing_for
from ..linalg import Echelon, axpy
from ..sl2_core import E, F, H, ROOT_WEIGHT, clebsch_gordan_hom, irrep_action, tensor_pairs
from ..weyl import resolution_weights
from .conditions import check_construction_conditions
from .table import IntertwinerTable


class HypothesisFailure(ValueError):
    pass


class InconsistentRecursion(ValueError):
    pass


class AnnihilationFailure(InconsistentRecursion, FunctionalNotAnnihilatingJ):
    pass


class TruncationTooShallow(ValueError):
    pass


def _pair_weight(p, q, i, j):
    return (p - 2 * i) + (q - 2 * j)


def _solve_functional(module, radical, d, w, equations, rng, what):
    """Unknown values on block (d, w); ``equations`` are (lhs dict, rhs)."""
    blk = module.block(d, w)
    col = {key: c for c, key in enumerate(blk)}
    eqs = list(equations)
    if rng is not None:
        rng.shuffle(eqs)
    nv = len(blk)
    ech = Echelon(nv)
    for lhs, rhs in eqs:
        row = {col[k]: c for k, c in lhs.items()}
        if rhs:
            row[nv] = Fraction(rhs)
        ech.add(row)
    if not ech.consistent:
        raise InconsistentRecursion(
            f"inconsistent recursion system: {what} equations at depth {d} contradict")
    if ech.rank != nv:
        raise InconsistentRecursion(
            f"inconsistent recursion system: {what} equations at depth {d} leave {nv - ech.rank} values free")
    sol = ech.solution(nv)
    phi = {blk[c]: v for c, v in sol.items()}
    for vec in radical:
        if sum((phi.get(k, 0) * c for k, c in vec.items()), Fraction(0)):
            raise AnnihilationFailure(
                f"inconsistent recursion system: the {what} functional fails to annihilate J "
                f"at depth {d}; with a one-dimensional hom space this forces f = 0")
    return phi


def _spanning_equations(module, d, w, lower, p, i, j, extra=None):
    """Equations phi(g(-n)x) = extra(g, n, x) - lower_(d-n)(g.u_i, v_j)(x).

    ``lower(depth, i2, j)`` returns the functional at that depth as a dict.
    """
    for g in (E, H, F):
        for n in range(1, d + 1):
            src_w = w - ROOT_WEIGHT[g]
            moved = irrep_action(p, g, i)
            extra_fn = extra(g, n) if extra is not None else None
            for x in module.block(d - n, src_w):
                lhs = module.act_key(g, -n, x)
                rhs = Fraction(0)
                for i2, c in moved.items():
                    rhs -= c * lower(d - n, i2, j).get(x, 0)
                if extra_fn is not None:
                    rhs += extra_fn(x)
                yield lhs, rhs


def build_components(p, q, r, level, grade, f=None, *, override_conditions=False,
                     shuffle_seed=None, allow_shallow=False):
    if f is None:
        f = clebsch_gordan_hom(p, q, r)
    if (f.p, f.q, f.r) != (p, q, r):
        raise ValueError("hom does not match (p, q, r)")
    if int(level) != level or level < 0:
        raise ValueError("intertwiner construction needs a non-negative integer level")
    report = check_construction_conditions(p, q, r, level)
    if not report.passes and not override_conditions:
        raise HypothesisFailure("hypotheses fail: " + report.summary())
    rng = random.Random(shuffle_seed) if shuffle_seed is not None else None

    pr = pairing_for(r, level, grade)
    V = pr.V
    shift = pr.first_radical_grade()
    transport = None
    if shift is None:
        if not allow_shallow:
            raise TruncationTooShallow(
                f"truncation too shallow: no radical of V^M({r}) at grades <= {grade}")
    else:
        if report.representable:
            j0, n0 = report.position
            res = resolution_weights(n0, level, j0 + 1)
            if res[j0 + 1][1] - res[j0][1] != shift:
                raise ArithmeticError("first radical grade disagrees with the resolution shift")
        transport = RadicalTransport(pr, shift)

    pairs = tensor_pairs(p, q)
    func_k, func_j = {}, {}
    yk = {k: {} for k in range(grade + 1)}
    yj = {k: {} for k in range(grade + 1)}
    full = {k: {} for k in range(grade + 1)}

    def lower_k(d, i2, j):
        return func_k[(d, i2, j)]

    def lower_j(d, i2, j):
        return func_j.get((d, i2, j), {})

    for k in range(grade + 1):
        for i, j in pairs:
            w = _pair_weight(p, q, i, j)
            if k == 0:
                img = element({((), c): a for c, a in f.image(i, j).items()})
                phi = {key: pr.pair(img, element({key: 1})) for key in V.block(0, -w)}
                phi = {key: v for key, v in phi.items() if v}
            else:
                eqs = _spanning_equations(V, k, -w, lower_k, p, i, j)
                phi = _solve_functional(V, pr.radical_block(k, -w), k, -w, eqs, rng, "K")
            func_k[(k, i, j)] = phi
            vec_k = pr.phi_transport(k, -w, phi)
            yk[k][(i, j)] = vec_k

            vec_j = ModuleElement()
            if transport is not None and k > shift:
                W, inner = transport.W, transport.inner
                dj = k - shift

                def extra(g, n, k=k, i=i, j=j):
                    moved = V.act(g, n, yk[k][(i, j)])
                    part = pr.kj_split(k - n).project_j(moved)
                    pre = transport.preimage(part) if part else ModuleElement()
                    return lambda x: inner.pair(pre, element({x: 1})) if pre else Fraction(0)

                eqs = _spanning_equations(W, dj, -w, lower_j, p, i, j, extra)
                psi = _solve_functional(W, inner.radical_block(dj, -w), dj, -w, eqs, rng, "J")
                func_j[(dj, i, j)] = psi
                vec_j = transport.embed(inner.phi_transport(dj, -w, psi))
            yj[k][(i, j)] = vec_j
            total = ModuleElement(vec_k)
            axpy(total, 1, vec_j)
            full[k][(i, j)] = total
    return IntertwinerTable(p, q, r, Fraction(level), grade, full, yk, yj, shift)
