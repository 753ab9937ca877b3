"""Presented rings, subalgebras and the ideal operations built on Gröbner bases."""
from __future__ import annotations

from itertools import combinations

from .groebner import groebner_basis, elimination_order
from .polycore import ModuleOrder, MonomialOrder, Poly, PolyRing, Vector, QQ

__all__ = [
    "NotADomain", "ZeroIdealError", "NotAMember",
    "PresentedRing", "Subalgebra", "SubIdeal",
    "kernel_presentation", "subalgebra_membership", "ideal_colon",
    "ideal_intersection", "ideal_saturation", "module_cap_subalgebra",
    "krull_dimension", "localize", "reduced_gens",
]


class NotADomain(ValueError):
    pass


class ZeroIdealError(ValueError):
    pass


class NotAMember(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


def _lift(p, ring):
    if isinstance(p, Poly):
        return p.to_ring(ring)
    if isinstance(p, str):
        return ring.parse(p)
    return ring.const(p)


class PresentedRing:
    """S = K[x]/I.  The domain flag is trusted from input (automatic when I = 0)."""

    def __init__(self, names, field=QQ, ideal=(), domain=None, normal=False,
                 factorial=False, order="grevlex"):
        self.ring = PolyRing(names, field, order)
        self.ideal = [g for g in (_lift(p, self.ring) for p in ideal) if not g.is_zero()]
        self.domain = (not self.ideal) if domain is None else bool(domain) or not self.ideal
        self.normal = normal
        self.factorial = factorial
        self._gb = None

    @classmethod
    def polynomial(cls, names, field=QQ, order="grevlex"):
        return cls(names, field, (), domain=True, normal=True, factorial=True, order=order)

    @property
    def field(self):
        return self.ring.field

    @property
    def names(self):
        return self.ring.names

    @property
    def gb(self):
        if self._gb is None:
            self._gb = groebner_basis(self.ideal, ring=self.ring)
        return self._gb

    def __call__(self, x):
        return self.ring(x)

    def var(self, name):
        return self.ring.var(name)

    @property
    def gens(self):
        return self.ring.gens

    def reduce(self, p):
        return self.gb.reduce(_lift(p, self.ring))

    def is_zero(self, p):
        return self.gb.contains(_lift(p, self.ring))

    def equal(self, a, b):
        return self.is_zero(_lift(a, self.ring) - _lift(b, self.ring))

    def require_domain(self):
        if not self.domain:
            raise NotADomain("ring is not asserted to be a domain")

    def __repr__(self):
        ideal = ", ".join(str(g) for g in self.ideal)
        return f"K[{', '.join(self.names)}]/<{ideal}>"


def _tag_names(ambient_names, r, prefix="g"):
    taken = set(ambient_names)
    out = []
    i = 1
    while len(out) < r:
        n = f"{prefix}{i}"
        if n not in taken:
            out.append(n)
        i += 1
    return out


class Subalgebra:
    """R = K[f_1..f_r] inside a presented domain S, with tag variables y_i -> f_i."""

    def __init__(self, ambient, gens, tags=None, check_domain=True):
        if check_domain:
            ambient.require_domain()
        self.ambient = ambient
        self.gens = [_lift(f, ambient.ring) for f in gens]
        r = len(self.gens)
        self.tags = list(tags) if tags is not None else _tag_names(ambient.names, r)
        if len(self.tags) != r:
            raise ValueError("one tag per generator required")
        if set(self.tags) & set(ambient.names):
            raise ValueError("tag names clash with ambient variables")
        self.tag_ring = PolyRing(self.tags, ambient.field, "grevlex")
        n = len(ambient.names)
        order = MonomialOrder("block", n + r, blocks=[range(n), range(n, n + r)]) if r and n \
            else "grevlex"
        self.elim_ring = PolyRing(tuple(ambient.names) + tuple(self.tags), ambient.field, order)
        self._elim_gb = None
        self._kernel = None
        self._kernel_gb = None

    @property
    def r(self):
        return len(self.gens)

    def tag(self, i):
        return self.tag_ring.var(self.tags[i])

    def elim_generators(self):
        E = self.elim_ring
        out = [g.to_ring(E) for g in self.ambient.ideal]
        for t, f in zip(self.tags, self.gens):
            out.append(E.var(t) - f.to_ring(E))
        return out

    @property
    def elim_gb(self):
        if self._elim_gb is None:
            self._elim_gb = groebner_basis(self.elim_generators(), ring=self.elim_ring)
        return self._elim_gb

    @property
    def kernel(self):
        if self._kernel is None:
            n = len(self.ambient.names)
            J = []
            for g in self.elim_gb.gens:
                if all(not any(m[:n]) for m in g.terms_dict):
                    J.append(g.to_ring(self.tag_ring))
            self._kernel = J
        return self._kernel

    @property
    def kernel_gb(self):
        if self._kernel_gb is None:
            self._kernel_gb = groebner_basis(self.kernel, ring=self.tag_ring)
        return self._kernel_gb

    def image(self, w):
        """phi: substitute y_i -> f_i, reduced mod I."""
        w = _lift(w, self.tag_ring)
        imgs = dict(zip(self.tags, self.gens))
        return self.ambient.reduce(w.substitute(imgs, self.ambient.ring))

    def image_raw(self, w):
        imgs = dict(zip(self.tags, self.gens))
        return w.substitute(imgs, self.ambient.ring)

    def member(self, g):
        """(True, witness) if g + I lies in R, else (False, None)."""
        nf = self.elim_gb.reduce(_lift(g, self.ambient.ring).to_ring(self.elim_ring))
        n = len(self.ambient.names)
        if any(any(m[:n]) for m in nf.terms_dict):
            return False, None
        return True, nf.to_ring(self.tag_ring)

    def represent(self, g):
        ok, w = self.member(g)
        if not ok:
            nf = self.elim_gb.reduce(_lift(g, self.ambient.ring).to_ring(self.elim_ring))
            raise NotAMember(f"{g} is not in the subalgebra", witness=nf)
        return w

    def __repr__(self):
        return f"K[{', '.join(str(f) for f in self.gens)}]"


class SubIdeal:
    """Ideal of R given by polynomials in the tag variables."""

    def __init__(self, owner, gens):
        self.owner = owner
        self.gens = [_lift(g, owner.tag_ring) for g in gens]

    def images(self):
        return [self.owner.image(g) for g in self.gens]

    def is_zero(self):
        return all(self.owner.kernel_gb.contains(g) for g in self.gens)

    def __repr__(self):
        return f"({', '.join(str(g) for g in self.gens)})"


def kernel_presentation(sub):
    return list(sub.kernel)


def subalgebra_membership(g, sub):
    return sub.member(g)


# ---------------------------------------------------------------------------
# ideal arithmetic in polynomial rings (optionally modulo a fixed ideal)

def reduced_gens(gens, ring):
    gens = [g for g in (_lift(p, ring) for p in gens) if not g.is_zero()]
    return groebner_basis(gens, ring=ring).gens if gens else []


def ideal_intersection(a, b, ring):
    """Generators of a ∩ b via t*a + (1-t)*b eliminated against t."""
    a = [p for p in (_lift(x, ring) for x in a) if not p.is_zero()]
    b = [p for p in (_lift(x, ring) for x in b) if not p.is_zero()]
    if not a or not b:
        return []
    tname = ring.fresh_name("t")
    T = PolyRing((tname,) + ring.names, ring.field,
                 MonomialOrder("block", ring.nvars + 1, blocks=[[0], range(1, ring.nvars + 1)]))
    t = T.var(tname)
    gens = [t * p.to_ring(T) for p in a] + [(1 - t) * p.to_ring(T) for p in b]
    gb = groebner_basis(gens, ring=T)
    out = [g for g in gb.gens if g.degree(tname) <= 0]
    return reduced_gens([g.to_ring(ring) for g in out], ring)


def _colon_single(a, h, ring):
    """(a : h) for one element h."""
    if h.is_zero():
        return [ring.one]
    inter = ideal_intersection(a, [h], ring)
    return reduced_gens([g / h for g in inter], ring)


def ideal_colon(a, b, ring, modulo=()):
    """(a + modulo : b) in ring; with ``modulo`` the result describes an ideal of ring/modulo."""
    base = [p for p in (_lift(x, ring) for x in list(a) + list(modulo)) if not p.is_zero()]
    b = [p for p in (_lift(x, ring) for x in b) if not p.is_zero()]
    if not b:
        return [ring.one]
    if not base:
        return []
    gb = groebner_basis(base, ring=ring)
    result = None
    for h in b:
        if gb.contains(h):
            continue
        part = _colon_single(base, h, ring)
        result = part if result is None else ideal_intersection(result, part, ring)
    if result is None:
        return [ring.one]
    return reduced_gens(result, ring)


def _same_ideal(a, b, ring):
    ga = groebner_basis(a, ring=ring) if a else None
    gb = groebner_basis(b, ring=ring) if b else None
    if ga is None or gb is None:
        return ga is None and gb is None
    return ga.lead_monomials() == gb.lead_monomials() and \
        all(gb.contains(g) for g in ga.gens)


def ideal_saturation(a, b, ring, modulo=()):
    """(a : b^inf) by iterated colons; returns (generators, stabilization index)."""
    cur = reduced_gens(list(a) + list(modulo), ring)
    k = 0
    while True:
        nxt = ideal_colon(cur, b, ring)
        if _same_ideal(cur, nxt, ring):
            return cur, k
        cur = nxt
        k += 1


def krull_dimension(gens, ring):
    """Dimension of ring/<gens>; -1 for the unit ideal."""
    gens = [p for p in (_lift(x, ring) for x in gens) if not p.is_zero()]
    if not gens:
        return ring.nvars
    gb = groebner_basis(gens, ring=ring, order=MonomialOrder("grevlex", ring.nvars))
    if gb.is_unit():
        return -1
    lms = gb.lead_monomials()
    n = ring.nvars
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            s = set(subset)
            # independent: no lead monomial lives purely in the subset variables
            if all(any(e and i not in s for i, e in enumerate(m)) for m in lms):
                return size
    return 0


def localize(S, f, name=None):
    """S_f presented as S[z]/(z*f - 1) with a fresh variable."""
    f = _lift(f, S.ring)
    if S.is_zero(f):
        raise ZeroIdealError("cannot localize at an element that is zero in S")
    z = name or S.ring.fresh_name("z")
    names = tuple(S.names) + (z,)
    R = PolyRing(names, S.field, "grevlex")
    ideal = [g.to_ring(R) for g in S.ideal] + [R.var(z) * f.to_ring(R) - 1]
    out = PresentedRing(names, S.field, ideal, domain=S.domain, normal=S.normal,
                        factorial=S.factorial)
    out.inverse_name = z
    out.localized_at = f
    out.parent = S
    return out


# ---------------------------------------------------------------------------
# module intersected with a subalgebra

def module_cap_subalgebra(mgens, sub, want_matrix=False):
    """A-module generators of M ∩ A^r for M ⊆ S^r generated by ``mgens``.

    ``mgens`` are Vectors over the ambient ring (or Polys for rank 1).
    Returns (c, C, matrix): ambient vectors c_i, tag-ring vectors C_i with
    C_i(y -> f) = c_i, and (if asked) rows a_i with c_i = sum_j a_ij b_j mod I.
    """
    S = sub.ambient
    E = sub.elim_ring
    rank1 = mgens and isinstance(mgens[0], Poly)
    vecs = [Vector.from_components(S.ring, [m]) if isinstance(m, Poly) else m for m in mgens]
    if not vecs:
        return [], [], []
    r = vecs[0].rank
    n = len(S.names)
    gens = [Vector.from_components(E, [c.to_ring(E) for c in v.components()]) for v in vecs]
    l = len(gens)
    for t, f in zip(sub.tags, sub.gens):
        rel = f.to_ring(E) - E.var(t)
        for k in range(r):
            gens.append(Vector.unit(E, r, k, rel))
    for g in S.ideal:
        for k in range(r):
            gens.append(Vector.unit(E, r, k, g.to_ring(E)))
    order = ModuleOrder(MonomialOrder("grevlex", E.nvars), "xdominant", xvars=range(n))
    gb = groebner_basis(gens, order=order, ring=E, track=range(l) if want_matrix else None, rank=r)
    C, c, rows = [], [], []
    basis = gb.gens
    cof_rows = gb.basis_cofactors() if want_matrix else None
    for idx, v in enumerate(basis):
        if any(any(m[1:1 + n]) for m in v._t):
            continue
        comps_tag = [p.to_ring(sub.tag_ring) for p in v.components()]
        comps_amb = [sub.image(p) for p in comps_tag]
        if all(p.is_zero() for p in comps_amb):
            continue
        C.append(Vector.from_components(sub.tag_ring, comps_tag))
        c.append(Vector.from_components(S.ring, comps_amb))
        if want_matrix:
            imgs = dict(zip(sub.tags, sub.gens))
            rows.append([S.reduce(a.substitute(imgs, S.ring)) for a in cof_rows[idx][:l]])
    if rank1:
        c = [v.components()[0] for v in c]
        C = [v.components()[0] for v in C]
    return c, C, rows
