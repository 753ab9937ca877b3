"""Buchberger's algorithm for ideals and submodules of free modules.

The engine works on raw term dicts.  Ideal monomials are exponent tuples,
module monomials carry the component index in front.  Pairs are chosen by
the normal strategy (smallest lcm degree, ties by index) and filtered with
Buchberger's product and chain criteria.
"""
from __future__ import annotations

import heapq
import os

from .polycore import ModuleOrder, MonomialOrder, Poly, PolyRing, Vector, block

__all__ = [
    "GroebnerBasis", "groebner_basis", "normal_form", "extended_normal_form",
    "eliminate", "s_polynomial_check", "DEBUG",
]

# identity re-checks on every extended reduction; switched on by the tests
DEBUG = os.environ.get("ITX_DEBUG", "") not in ("", "0")


class _Ctx:
    __slots__ = ("field", "key", "nkey", "module", "zero_shift")

    def __init__(self, field, order, module, nvars):
        self.field = field
        self.key = order.key
        self.nkey = order.nkey
        self.module = module
        self.zero_shift = (0,) * nvars

    def divides(self, a, b):
        if self.module:
            if a[0] != b[0]:
                return False
            return all(x <= y for x, y in zip(a[1:], b[1:]))
        return all(x <= y for x, y in zip(a, b))

    def shift(self, b, a):
        """Exponent shift s with a*s = b (a divides b)."""
        if self.module:
            return tuple(y - x for x, y in zip(a[1:], b[1:]))
        return tuple(y - x for x, y in zip(a, b))

    def mul(self, m, s):
        if self.module:
            return (m[0],) + tuple(x + y for x, y in zip(m[1:], s))
        return tuple(x + y for x, y in zip(m, s))

    def lcm(self, a, b):
        if self.module:
            if a[0] != b[0]:
                return None
            return (a[0],) + tuple(max(x, y) for x, y in zip(a[1:], b[1:]))
        return tuple(max(x, y) for x, y in zip(a, b))

    def deg(self, m):
        return sum(m[1:]) if self.module else sum(m)

    def lm(self, p):
        return max(p, key=self.key)


def _scale(p, c):
    return {m: v * c for m, v in p.items()}


def _rep_addmul(acc, rep, shift, c, zero_shift):
    """acc += c * x^shift * rep  (reps map generator index -> ring term dict)."""
    for gi, poly in rep.items():
        tgt = acc.setdefault(gi, {})
        for m, v in poly.items():
            mm = m if shift == zero_shift else tuple(a + b for a, b in zip(m, shift))
            w = tgt.get(mm)
            w = v * c if w is None else w + v * c
            if w:
                tgt[mm] = w
            else:
                tgt.pop(mm, None)
    return acc


def _reduce(f, G, LM, ctx, reps=None, skip=None):
    """Full reduction of term dict f by monic basis G; returns (remainder, quotient-rep)."""
    p = dict(f)
    nkey = ctx.nkey
    heap = [(nkey(m), m) for m in p]
    heapq.heapify(heap)
    r = {}
    acc = {} if reps is not None else None
    while heap:
        _, m = heapq.heappop(heap)
        c = p.pop(m, None)
        if c is None:
            continue
        gi = -1
        for i, l in enumerate(LM):
            if i != skip and ctx.divides(l, m):
                gi = i
                break
        if gi < 0:
            r[m] = c
            continue
        g = G[gi]
        s = ctx.shift(m, LM[gi])
        lmg = LM[gi]
        for gm, gc in g.items():
            if gm == lmg:
                continue
            mm = ctx.mul(gm, s)
            v = p.get(mm)
            if v is None:
                p[mm] = -c * gc
                heapq.heappush(heap, (nkey(mm), mm))
            else:
                v = v - c * gc
                if v:
                    p[mm] = v
                else:
                    del p[mm]
        if acc is not None and reps[gi] is not None:
            _rep_addmul(acc, reps[gi], s, c, ctx.zero_shift)
    return r, acc


def _buchberger(F, ctx, track=None):
    """Reduced Gröbner basis of term dicts F.

    ``track`` is None (no cofactors), True (all inputs) or a set of input
    indices whose coefficients are followed.  Returns (basis, LMs, reps).
    """
    field = ctx.field
    G, LM, reps = [], [], []
    zs = ctx.zero_shift
    for idx, f in enumerate(F):
        if not f:
            continue
        lm = ctx.lm(f)
        inv = field.inv(f[lm])
        G.append(_scale(f, inv))
        LM.append(lm)
        if track is None:
            reps.append(None)
        elif track is True or idx in track:
            reps.append({idx: {zs: inv}})
        else:
            reps.append({})
    tracking = track is not None

    heap = []
    pending = set()

    def add_pairs(j):
        for i in range(j):
            l = ctx.lcm(LM[i], LM[j])
            if l is None:
                continue
            if not ctx.module and ctx.deg(l) == ctx.deg(LM[i]) + ctx.deg(LM[j]):
                continue  # product criterion
            heapq.heappush(heap, (ctx.deg(l), i, j, l))
            pending.add((i, j))

    for j in range(len(G)):
        add_pairs(j)

    while heap:
        _, i, j, l = heapq.heappop(heap)
        pending.discard((i, j))
        skip = False
        for k in range(len(G)):
            if k == i or k == j:
                continue
            if ctx.divides(LM[k], l) and (min(i, k), max(i, k)) not in pending \
                    and (min(j, k), max(j, k)) not in pending:
                skip = True
                break
        if skip:
            continue
        si = ctx.shift(l, LM[i])
        sj = ctx.shift(l, LM[j])
        s = {}
        for m, c in G[i].items():
            s[ctx.mul(m, si)] = c
        for m, c in G[j].items():
            mm = ctx.mul(m, sj)
            v = s.get(mm)
            v = -c if v is None else v - c
            if v:
                s[mm] = v
            else:
                s.pop(mm, None)
        if not s:
            continue
        r, q = _reduce(s, G, LM, ctx, reps if tracking else None)
        if not r:
            continue
        lm = ctx.lm(r)
        inv = field.inv(r[lm])
        G.append(_scale(r, inv))
        LM.append(lm)
        if tracking:
            rep = {}
            if reps[i] is not None:
                _rep_addmul(rep, reps[i], si, field.one, zs)
            if reps[j] is not None:
                _rep_addmul(rep, reps[j], sj, -field.one, zs)
            _rep_addmul(rep, q, zs, -field.one, zs)
            reps.append({gi: _scale(v, inv) for gi, v in rep.items() if v})
        else:
            reps.append(None)
        add_pairs(len(G) - 1)

    # minimalize
    keep = []
    for i in range(len(G)):
        drop = False
        for j in range(len(G)):
            if j != i and ctx.divides(LM[j], LM[i]) and (LM[j] != LM[i] or j < i):
                drop = True
                break
        if not drop:
            keep.append(i)
    G = [G[i] for i in keep]
    LM = [LM[i] for i in keep]
    reps = [reps[i] for i in keep]

    # inter-reduce tails
    for i in range(len(G)):
        g = G[i]
        tail = {m: c for m, c in g.items() if m != LM[i]}
        if not tail:
            continue
        r, q = _reduce(tail, G, LM, ctx, reps if tracking else None, skip=i)
        r[LM[i]] = g[LM[i]]
        if tracking and q:
            reps[i] = _rep_addmul({k: dict(v) for k, v in reps[i].items()}, q, zs, -field.one, zs)
            reps[i] = {k: v for k, v in reps[i].items() if v}
        G[i] = r

    order = sorted(range(len(G)), key=lambda i: ctx.key(LM[i]), reverse=True)
    return [G[i] for i in order], [LM[i] for i in order], [reps[i] for i in order]


class GroebnerBasis:
    """Reduced Gröbner basis of an ideal (Poly generators) or a submodule (Vector generators)."""

    def __init__(self, ring, order, basis, lms, module_rank=None, reps=None, inputs=None):
        self.ring = ring
        self.order = order
        self._basis = basis
        self._lms = lms
        self.rank = module_rank
        self._reps = reps
        self.inputs = inputs or []
        self.reduced = True
        self._ctx = _Ctx(ring.field, order, module_rank is not None, ring.nvars)

    @property
    def is_module(self):
        return self.rank is not None

    def _wrap(self, d):
        if self.is_module:
            return Vector(self.ring, self.rank, d)
        return Poly(self.ring, d)

    @property
    def gens(self):
        return [self._wrap(g) for g in self._basis]

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self._basis)

    def lead_monomials(self):
        return list(self._lms)

    def is_unit(self):
        return not self.is_module and any(sum(l) == 0 for l in self._lms)

    def is_zero_ideal(self):
        return not self._basis

    def _terms(self, p):
        if isinstance(p, Vector):
            if not self.is_module or p.rank != self.rank:
                raise ValueError("vector does not match module rank")
            if p.ring is self.ring or p.ring.names == self.ring.names:
                return p._t
            return Vector.from_components(self.ring, [c.to_ring(self.ring) for c in p.components()])._t
        if self.is_module:
            raise ValueError("expected a vector")
        if not isinstance(p, Poly):
            return self.ring.const(p)._t
        return p.to_ring(self.ring)._t

    def reduce(self, p):
        r, _ = _reduce(self._terms(p), self._basis, self._lms, self._ctx)
        return self._wrap(r)

    def contains(self, p):
        r, _ = _reduce(self._terms(p), self._basis, self._lms, self._ctx)
        return not r

    def cofactors(self, p):
        """(cofactors over the tracked inputs, remainder) for p."""
        if self._reps is None:
            raise ValueError("basis was computed without cofactor tracking")
        r, q = _reduce(self._terms(p), self._basis, self._lms, self._ctx, self._reps)
        n = len(self.inputs)
        cof = [Poly(self.ring, dict(q.get(i, {}))) for i in range(n)]
        return cof, self._wrap(r)

    def basis_cofactors(self):
        """Rows expressing each basis element in the tracked inputs."""
        if self._reps is None:
            raise ValueError("basis was computed without cofactor tracking")
        n = len(self.inputs)
        return [[Poly(self.ring, dict(rep.get(i, {}))) for i in range(n)] for rep in self._reps]

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(str(g) for g in self.gens)}])"


def groebner_basis(gens, order=None, ring=None, track=None, rank=None):
    """Reduced Gröbner basis of ``gens``.

    For polynomials ``order`` is a MonomialOrder (default: the ring's order);
    for vectors a ModuleOrder (default: position over term).  ``track`` asks
    for cofactors: True for every input, or a collection of input indices.
    """
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("ring required for an empty generator list")
        ring = gens[0].ring
    module = rank is not None or (gens and isinstance(gens[0], Vector))
    if module:
        if rank is None:
            rank = gens[0].rank
        if order is None:
            order = ModuleOrder(ring.order, "pot")
        work_ring = ring
        F = []
        for g in gens:
            if g.ring.names != ring.names:
                g = Vector.from_components(ring, [c.to_ring(ring) for c in g.components()])
            F.append(dict(g._t))
    else:
        if order is None:
            order = ring.order
        work_ring = ring if order == ring.order else ring.with_order(order)
        F = [dict(g.to_ring(work_ring)._t) if isinstance(g, Poly) else dict(work_ring.const(g)._t)
             for g in gens]
    ctx = _Ctx(ring.field, order, module, ring.nvars)
    if track is not None and track is not True:
        track = set(track)
    basis, lms, reps = _buchberger(F, ctx, track)
    inputs = [Poly(work_ring, f) if not module else Vector(work_ring, rank, f) for f in F]
    gb = GroebnerBasis(work_ring, order, basis, lms, rank if module else None,
                       reps if track is not None else None, inputs)
    if DEBUG and track is True:
        _check_basis_reps(gb)
    return gb


def _combine(gb, cof):
    acc = gb._wrap({})
    for a, g in zip(cof, gb.inputs):
        if a:
            acc = acc + g * a
    return acc


def _check_basis_reps(gb):
    for row, g in zip(gb.basis_cofactors(), gb.gens):
        if _combine(gb, row) != g:
            raise AssertionError("cofactor identity failed for a basis element")


def normal_form(p, basis):
    if not isinstance(basis, GroebnerBasis):
        basis = groebner_basis(basis)
    return basis.reduce(p)


def extended_normal_form(p, gens, order=None):
    """Cofactors a_i and remainder with p = sum a_i gens_i + remainder."""
    gens = list(gens)
    ring = p.ring
    gb = groebner_basis(gens, order=order, ring=ring, track=True,
                        rank=p.rank if isinstance(p, Vector) else None)
    cof, rem = gb.cofactors(p)
    if DEBUG:
        lhs = _combine(gb, cof) + rem
        target = gb._wrap(gb._terms(p))
        if lhs != target:
            raise AssertionError("extended normal form identity failed")
    return cof, rem


def elimination_order(ring, eliminate_vars):
    elim = [ring.index[v] for v in eliminate_vars]
    keep = [i for i in range(ring.nvars) if i not in set(elim)]
    if not elim or not keep:
        return MonomialOrder("grevlex", ring.nvars)
    return block(ring.nvars, elim, keep)


def eliminate(gens, keep, order_hint=None, ring=None):
    """Generators of the ideal intersected with K[keep]."""
    gens = list(gens)
    if ring is None:
        ring = gens[0].ring
    keep = list(keep)
    drop = [n for n in ring.names if n not in keep]
    order = order_hint or elimination_order(ring, drop)
    gb = groebner_basis(gens, order=order, ring=ring)
    kidx = [ring.index[n] for n in drop]
    out = []
    for g in gb.gens:
        if all(m[i] == 0 for m in g.terms_dict for i in kidx):
            out.append(g.to_ring(ring))
    return out


def s_polynomial_check(gb):
    """True iff every S-pair of the basis reduces to zero (Buchberger's criterion)."""
    ctx = gb._ctx
    B, L = gb._basis, gb._lms
    for j in range(len(B)):
        for i in range(j):
            l = ctx.lcm(L[i], L[j])
            if l is None:
                continue
            si, sj = ctx.shift(l, L[i]), ctx.shift(l, L[j])
            ci, cj = gb.ring.field.inv(B[i][L[i]]), gb.ring.field.inv(B[j][L[j]])
            s = {}
            for m, c in B[i].items():
                s[ctx.mul(m, si)] = c * ci
            for m, c in B[j].items():
                mm = ctx.mul(m, sj)
                v = s.get(mm, 0) - c * cj
                if v:
                    s[mm] = v
                else:
                    s.pop(mm, None)
            r, _ = _reduce(s, B, L, ctx)
            if r:
                return False
    return True
