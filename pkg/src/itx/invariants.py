"""Invariants of the additive group and of connected unipotent groups.

Actions are given by comorphism images: mu(x_j) is x_j evaluated at sigma.x,
a polynomial in the ambient variables and the group coordinates.
"""
from __future__ import annotations

from ._linalg import LinearSpan, first_kernel_vector
from .colonalg import DEFAULT_CAP, GenStream, codim2_presentation, colon_saturation
from .groebner import groebner_basis
from .idealops import PresentedRing, Subalgebra, localize, module_cap_subalgebra
from .polycore import MonomialOrder, Poly, PolyRing

__all__ = [
    "ActionError", "SliceUnavailable", "InvariantSearchError",
    "GaAction", "UnipotentAction", "UnipotentPresentation", "MovingElement", "LocalInvariants",
    "mu_expand", "is_invariant", "pick_moving_generator", "ga_local_invariants",
    "ga_invariant_stream", "resultant_charpoly", "charpoly_kills", "resultant_subalgebra", "monicize",
    "orbit_algebra", "unipotent_invariants", "unipotent_stream", "factorial_invariants",
    "sylvester_resultant",
]

DEFAULT_SEARCH_DEGREE = 8


class ActionError(ValueError):
    pass


class SliceUnavailable(ArithmeticError):
    pass


class InvariantSearchError(RuntimeError):
    pass


def _grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def _reduce_coeffs(S, p, params):
    """Split p along params and reduce every coefficient modulo I."""
    out = {}
    for k, c in p.coefficients_wrt(params).items():
        c = S.reduce(c.to_ring(S.ring))
        if not c.is_zero():
            out[k] = c
    return out


def _identity_mod(S, lhs, rhs, params):
    """lhs == rhs as polynomials in params with coefficients in S."""
    return not _reduce_coeffs(S, lhs - rhs, params)


# ---------------------------------------------------------------------------
# actions

class GaAction:
    """G_a acting on S = K[x]/I through mu(x_j) in K[x][t]."""

    def __init__(self, ambient, param, images):
        self.ambient = ambient
        if param in ambient.names:
            raise ActionError(f"parameter {param!r} clashes with a variable")
        self.param = param
        self.ring_t = PolyRing(tuple(ambient.names) + (param,), ambient.field, "grevlex")
        imgs = {}
        for n in ambient.names:
            v = images.get(n)
            if v is None:
                imgs[n] = self.ring_t.var(n)
            elif isinstance(v, str):
                imgs[n] = self.ring_t.parse(v)
            else:
                imgs[n] = v.to_ring(self.ring_t)
        extra = set(images) - set(ambient.names)
        if extra:
            raise ActionError(f"images given for unknown variables {sorted(extra)}")
        self.images = imgs

    @property
    def field(self):
        return self.ambient.field

    def mu(self, h):
        """mu(h) as a polynomial in ambient variables and t (not reduced)."""
        h = h.to_ring(self.ambient.ring) if isinstance(h, Poly) else self.ambient.ring(h)
        return h.substitute(self.images, self.ring_t)

    def mu_expand(self, h):
        p = self.mu(h)
        cl = p.coefficient_list(self.param)
        out = [self.ambient.reduce(c.to_ring(self.ambient.ring)) for c in cl]
        while out and out[-1].is_zero():
            out.pop()
        return out or [self.ambient.ring.zero]

    def is_invariant(self, h):
        cl = self.mu_expand(h)
        return len(cl) == 1 and self.ambient.equal(cl[0], h)

    def verify(self):
        S = self.ambient
        t = self.param
        for n in S.names:
            at0 = self.images[n].substitute({t: 0}, self.ring_t).to_ring(S.ring)
            if not S.equal(at0, S.var(n)):
                raise ActionError(f"mu({n}) at t=0 is not {n}")
        u = _fresh(self.ring_t.names, "u")
        big = PolyRing(self.ring_t.names + (u,), S.field, "grevlex")
        T, U = big.var(t), big.var(u)
        mu_t = {n: self.images[n].to_ring(big) for n in S.names}
        for n in S.names:
            inner = self.images[n].to_ring(big).substitute({t: U}, big)
            lhs = inner.substitute(mu_t, big)
            rhs = self.images[n].to_ring(big).substitute({t: T + U}, big)
            if not _identity_mod(S, lhs, rhs, [t, u]):
                raise ActionError(f"co-action identity fails for {n}")
        for g in S.ideal:
            if _reduce_coeffs(S, self.mu(g), [t]):
                raise ActionError("action does not preserve the defining ideal")
        return True

    def as_unipotent(self):
        t = self.param
        tp = t + "'"
        lr = PolyRing((t, tp), self.field, "grevlex")
        return UnipotentAction(self.ambient, [t], self.images,
                               law={t: lr.var(t) + lr.var(tp)})


def _fresh(names, base):
    names = set(names)
    if base not in names:
        return base
    i = 1
    while f"{base}{i}" in names:
        i += 1
    return f"{base}{i}"


def mu_expand(action, h):
    return action.mu_expand(h)


def is_invariant(action, h):
    return action.is_invariant(h)


class MovingElement:
    def __init__(self, f, index, coeffs):
        self.f = f
        self.index = index
        self.coeffs = coeffs
        self.r = len(coeffs) - 1
        self.f_r = coeffs[-1]

    def __repr__(self):
        return f"MovingElement(f={self.f}, r={self.r}, f_r={self.f_r})"


def pick_moving_generator(action, allow_char_p=True):
    """Moving ambient variable with the smallest t-degree; None for a trivial action.

    Raises SliceUnavailable when the characteristic divides r for every
    moving variable (or char p is excluded).
    """
    p = action.field.characteristic
    cands = []
    for i, n in enumerate(action.ambient.names):
        x = action.ambient.var(n)
        cl = action.mu_expand(x)
        if len(cl) > 1:
            cands.append((len(cl) - 1, i, x, cl))
    if not cands:
        return None
    cands.sort(key=lambda c: (c[0], c[1]))
    for r, i, x, cl in cands:
        if p == 0 or (allow_char_p and r % p != 0):
            return MovingElement(x, i, cl)
    raise SliceUnavailable("slice unavailable: the characteristic divides r "
                           "for every moving generator")


def _divide_mod(S, p, d, _cache={}):
    """q with p = q*d mod I, or None."""
    if not S.ideal:
        return p.divide_exact(d) if not p.is_zero() else p
    gens = list(S.ideal) + [d]
    gb = groebner_basis(gens, ring=S.ring, track=[len(gens) - 1])
    cof, rem = gb.cofactors(p)
    if not rem.is_zero():
        return None
    return S.reduce(cof[-1])


class LocalInvariants:
    def __init__(self, moving, u_list, exponents, R_gens, a_index):
        self.moving = moving
        self.u_list = u_list
        self.exponents = exponents
        self.R_gens = R_gens
        self.a_index = a_index

    @property
    def f_r(self):
        return self.moving.f_r


def slice_numerator(action, moving, h):
    """(U, l) with mu(h)|_{t=-s} = U / f_r^l, s = f_{r-1} / (r f_r)."""
    S = action.ambient
    r = moving.r
    field = action.field
    fr, frm1 = moving.f_r, moving.coeffs[r - 1]
    minus_s_num = frm1 * (-field.inv(field(r)))  # -f_{r-1}/r
    cl = action.mu_expand(h)
    l = len(cl) - 1
    acc = S.ring.zero
    for k, c in enumerate(cl):
        if c.is_zero():
            continue
        acc = acc + c * minus_s_num ** k * fr ** (l - k)
    return S.reduce(acc), l


def ga_local_invariants(action, moving=None, strict_char0=False):
    """Generators u_i (one per ambient variable) with K[X]^Ga_{f_r} = K[u, 1/f_r]."""
    if moving is None:
        moving = pick_moving_generator(action, allow_char_p=not strict_char0)
        if moving is None:
            raise ActionError("trivial action has no moving generator")
    p = action.field.characteristic
    if p and (strict_char0 or moving.r % p == 0):
        raise SliceUnavailable("slice unavailable in this characteristic")
    S = action.ambient
    fr = moving.f_r
    us, ks = [], []
    for n in S.names:
        u, l = slice_numerator(action, moving, S.var(n))
        k = l
        while k > 0 and not u.is_zero():
            q = _divide_mod(S, u, fr)
            if q is None:
                break
            u, k = q, k - 1
        if u.is_zero():
            k = 0
        us.append(u.primitive())
        ks.append(k)
    gens = []
    for u in us:
        if u.is_zero() or u.is_constant():
            continue
        if not any(S.equal(u, g) for g in gens):
            gens.append(u)
    frp = fr.primitive()
    a_index = next((i for i, g in enumerate(gens) if S.equal(g, frp)), None)
    if a_index is None:
        gens.append(frp)
        a_index = len(gens) - 1
    return LocalInvariants(moving, us, ks, gens, a_index)


def _check_invariant_hook(action):
    def hook(i, Ri, res):
        for h in res.H:
            if not action.is_invariant(h):
                raise ActionError(f"emitted generator {h} is not invariant")
    return hook


def ga_invariant_stream(action, cap=DEFAULT_CAP, strict_char0=False):
    """Stream for K[X]^Ga; trivial actions emit the ambient generators."""
    S = action.ambient
    moving = pick_moving_generator(action, allow_char_p=not strict_char0)
    if moving is None:
        R = Subalgebra(S, list(S.gens))
        stream = GenStream(S, R, [R.tag_ring.one], cap)
        stream.local = None
        return stream
    loc = ga_local_invariants(action, moving, strict_char0)
    R = Subalgebra(S, loc.R_gens)
    stream = GenStream(S, R, [R.tag(loc.a_index)], cap, on_step=_check_invariant_hook(action))
    stream.local = loc
    return stream


# ---------------------------------------------------------------------------
# arbitrary characteristic: monicization and resultants

class MonicData:
    def __init__(self, ambient, action, f, original):
        self.ambient = ambient
        self.action = action
        self.f = f
        self.original = original


def monicize(action, f=None):
    """Localize at f_r so that mu(f/f_r) is monic in t."""
    moving = f if isinstance(f, MovingElement) else None
    if moving is None:
        S = action.ambient
        cands = []
        for i, n in enumerate(S.names):
            cl = action.mu_expand(S.var(n))
            if len(cl) > 1:
                cands.append((len(cl) - 1, i, S.var(n), cl))
        if f is not None:
            cl = action.mu_expand(f)
            cands = [(len(cl) - 1, 0, f, cl)] if len(cl) > 1 else []
        if not cands:
            raise ActionError("trivial action: no moving element to monicize")
        cands.sort(key=lambda c: (c[0], c[1]))
        _, i, x, cl = cands[0]
        moving = MovingElement(x, i, cl)
    S = action.ambient
    fr = moving.f_r
    if fr.is_constant():
        return MonicData(S, action, moving.f * action.field.inv(fr.constant_coeff()), moving)
    S2 = localize(S, fr)
    z = S2.inverse_name
    imgs = {n: p for n, p in action.images.items()}
    ring_t = PolyRing(tuple(S2.names) + (action.param,), S.field, "grevlex")
    imgs = {n: p.to_ring(ring_t) for n, p in imgs.items()}
    imgs[z] = ring_t.var(z)
    act2 = GaAction(S2, action.param, imgs)
    return MonicData(S2, act2, S2.reduce(moving.f.to_ring(S2.ring) * S2.var(z)), moving)


def _det(M):
    """Division-free determinant by cofactor expansion along rows (memoized on columns)."""
    n = len(M)
    memo = {}

    def rec(row, cols):
        if row == n:
            return None
        key = (row, cols)
        if key in memo:
            return memo[key]
        acc = M[0][0].ring.zero
        pos = 0
        for j in range(n):
            if cols & (1 << j):
                continue
            e = M[row][j]
            if not e.is_zero():
                sub = rec(row + 1, cols | (1 << j))
                term = e if sub is None else e * sub
                acc = acc + term if pos % 2 == 0 else acc - term
            pos += 1
        memo[key] = acc
        return acc

    if n == 0:
        return None
    return rec(0, 0)


def sylvester_resultant(A, B, ring):
    """Res(A, B) for coefficient lists (ascending powers) of degrees l and r."""
    l, r = len(A) - 1, len(B) - 1
    if l == 0:
        return A[0] ** r
    if r == 0:
        return B[0] ** l
    n = l + r
    zero = ring.zero
    M = [[zero] * n for _ in range(n)]
    for i in range(r):
        for k, c in enumerate(reversed(A)):
            M[i][i + k] = c
    for i in range(l):
        for k, c in enumerate(reversed(B)):
            M[r + i][i + k] = c
    return _det(M)


class CharPoly:
    def __init__(self, u, P, s, coeffs, ambient):
        self.u = u
        self.P = P
        self.s = s
        self.coeffs = coeffs  # ascending powers of s, in the ambient ring
        self.ambient = ambient

    def __str__(self):
        return str(self.P)


def resultant_charpoly(md, u):
    """P(s) = +-Res_t(U(t) - s, F(t)), sign-normalized to be monic."""
    action, S = md.action, md.ambient
    F = action.mu_expand(md.f)
    if len(F) < 2 or not S.equal(F[-1], 1):
        raise ActionError("resultant needs mu(f) monic of positive t-degree")
    F = F[:-1] + [S.ring.one]
    sname = _fresh(S.names, "s")
    Rs = PolyRing(tuple(S.names) + (sname,), S.field, "grevlex")
    s = Rs.var(sname)
    U = [c.to_ring(Rs) for c in action.mu_expand(u)]
    U[0] = U[0] - s
    P = sylvester_resultant(U, [c.to_ring(Rs) for c in F], Rs)
    coeffs = [S.reduce(c.to_ring(S.ring)) for c in P.coefficient_list(sname)]
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    lead = coeffs[-1]
    if S.equal(lead, -1):
        coeffs = [-c for c in coeffs]
    elif not S.equal(lead, 1):
        raise ActionError("resultant is not monic up to sign")
    coeffs[-1] = S.ring.one
    P = Rs.zero
    for k, c in enumerate(coeffs):
        P = P + c.to_ring(Rs) * s ** k
    return CharPoly(u, P, sname, coeffs, S)


def charpoly_kills(md, cp):
    """P(u) lies in (f) in the (localized) ring."""
    S = md.ambient
    val = S.ring.zero
    u = cp.u.to_ring(S.ring)
    for k, c in enumerate(cp.coeffs):
        val = val + c * u ** k
    gb = groebner_basis(list(S.ideal) + [md.f.to_ring(S.ring)], ring=S.ring)
    return gb.contains(val)


def resultant_subalgebra(action, f=None):
    """Coefficients of the characteristic polynomials of the ambient generators."""
    md = monicize(action, f)
    polys, gens = [], []
    for n in action.ambient.names:
        cp = resultant_charpoly(md, md.ambient.var(n))
        polys.append(cp)
        for c in cp.coeffs[:-1]:
            c = c.primitive()
            if c.is_zero() or c.is_constant():
                continue
            if not any(md.ambient.equal(c, g) for g in gens):
                gens.append(c)
    return md, polys, gens


# ---------------------------------------------------------------------------
# unipotent groups

class UnipotentAction:
    """Connected unipotent group in filtered coordinates t_1..t_k acting on S.

    N_j is cut out by t_{j+1} = ... = t_k = 0; the law maps each coordinate
    name to a polynomial in the coordinates and their primed copies.
    """

    def __init__(self, ambient, params, images, law=None, inverse=None):
        self.ambient = ambient
        self.params = list(params)
        clash = set(self.params) & set(ambient.names)
        if clash:
            raise ActionError(f"group coordinates clash with variables: {sorted(clash)}")
        self.ring_t = PolyRing(tuple(ambient.names) + tuple(self.params), ambient.field, "grevlex")
        imgs = {}
        for n in ambient.names:
            v = images.get(n)
            if v is None:
                imgs[n] = self.ring_t.var(n)
            elif isinstance(v, str):
                imgs[n] = self.ring_t.parse(v)
            else:
                imgs[n] = v.to_ring(self.ring_t)
        self.images = imgs
        primed = [p + "'" for p in self.params]
        self.law_ring = PolyRing(tuple(self.params) + tuple(primed), ambient.field, "grevlex")
        if law is None:
            law = {p: self.law_ring.var(p) + self.law_ring.var(p + "'") for p in self.params}
        self.law = {p: (self.law_ring.parse(v) if isinstance(v, str) else v.to_ring(self.law_ring))
                    for p, v in law.items()}
        missing = set(self.params) - set(self.law)
        if missing:
            raise ActionError(f"group law missing coordinates {sorted(missing)}")
        self.inverse = None
        if inverse:
            pr = PolyRing(tuple(self.params), ambient.field, "grevlex")
            self.inverse = {p: (pr.parse(v) if isinstance(v, str) else v.to_ring(pr))
                            for p, v in inverse.items()}

    @property
    def field(self):
        return self.ambient.field

    @property
    def k(self):
        return len(self.params)

    def act(self, h, at=None):
        """h(sigma.x) as a polynomial in ambient variables and coordinates."""
        h = h.to_ring(self.ambient.ring) if isinstance(h, Poly) else self.ambient.ring(h)
        imgs = self.images
        if at:
            imgs = {n: p.substitute(at, self.ring_t) for n, p in imgs.items()}
        return h.substitute(imgs, self.ring_t)

    def orbit(self, h, at=None):
        """t-monomial -> coefficient (reduced mod I), ascending grevlex in t."""
        coeffs = _reduce_coeffs(self.ambient, self.act(h, at), self.params)
        return {k: coeffs[k] for k in sorted(coeffs, key=_grevlex_key)}

    def is_invariant(self, h):
        orb = self.orbit(h)
        zero = (0,) * self.k
        return set(orb) <= {zero} and self.ambient.equal(orb.get(zero, 0), h)

    def restrict(self, j=0):
        """G_a action of the j-th coordinate axis (other coordinates set to 0)."""
        p = self.params[j]
        at = {q: 0 for q in self.params if q != p}
        ring_t = PolyRing(tuple(self.ambient.names) + (p,), self.field, "grevlex")
        imgs = {n: v.substitute(at, self.ring_t).to_ring(ring_t) for n, v in self.images.items()}
        return GaAction(self.ambient, p, imgs)

    def verify(self):
        S = self.ambient
        P = self.params
        primed = [p + "'" for p in P]
        dbl = [p + "''" for p in P]
        zero = {p: 0 for p in P}
        # identity
        for n in S.names:
            at0 = self.images[n].substitute(zero, self.ring_t).to_ring(S.ring)
            if not S.equal(at0, S.var(n)):
                raise ActionError(f"identity element does not fix {n}")
        L3 = PolyRing(tuple(P) + tuple(primed) + tuple(dbl), self.field, "grevlex")
        m = {p: self.law[p].to_ring(L3) for p in P}
        shift = {p: L3.var(q) for p, q in zip(P, primed)}
        shift.update({q: L3.var(d) for q, d in zip(primed, dbl)})
        m_shift = {p: m[p].substitute(shift, L3) for p in P}  # m(t', t'')
        for p in P:
            left = self.law[p].to_ring(L3).substitute(
                {**{q: m[q] for q in P}, **{q2: L3.var(d) for q2, d in zip(primed, dbl)}}, L3)
            right = self.law[p].to_ring(L3).substitute({q2: m_shift[q] for q, q2 in zip(P, primed)}, L3)
            if left != right:
                raise ActionError(f"group law is not associative in {p}")
            e1 = self.law[p].substitute({q: 0 for q in primed}, self.law_ring)
            e2 = self.law[p].substitute(zero, self.law_ring)
            if e1 != self.law_ring.var(p) or e2 != self.law_ring.var(p + "'"):
                raise ActionError(f"0 is not the identity of the law in {p}")
        if self.inverse is not None:
            inv = {q + "'": self.inverse[q].to_ring(self.law_ring) for q in P}
            for p in P:
                if not self.law[p].substitute(inv, self.law_ring).is_zero():
                    raise ActionError(f"inverse law fails in {p}")
        # filtration: N_j closed, N_j/N_{j-1} additive in t_j, quotient law free of t_1..t_{j-1}
        for j in range(len(P)):
            cut = {q: 0 for q in P[j + 1:]}
            cut.update({q + "'": 0 for q in P[j + 1:]})
            for i in range(j + 1, len(P)):
                if not self.law[P[i]].substitute(cut, self.law_ring).is_zero():
                    raise ActionError(f"subgroup N_{j + 1} is not closed under the law")
            mj = self.law[P[j]].substitute(cut, self.law_ring)
            low = {q: 0 for q in P[:j]}
            low.update({q + "'": 0 for q in P[:j]})
            if mj.substitute(low, self.law_ring) != self.law_ring.var(P[j]) + self.law_ring.var(P[j] + "'"):
                raise ActionError(f"N_{j + 1}/N_{j} is not additive in {P[j]}")
        for i in range(1, len(P)):
            used = set(self.law[P[i]].variables())
            if used & {P[0], P[0] + "'"}:
                raise ActionError("quotient by N_1 is not given by dropping the first coordinate")
        # action axiom g(s, g(s', x)) = g(m(s, s'), x)
        big = PolyRing(tuple(S.names) + tuple(P) + tuple(primed), self.field, "grevlex")
        inner = {n: self.images[n].to_ring(big).substitute(
            {p: big.var(q) for p, q in zip(P, primed)}, big) for n in S.names}
        lawb = {p: self.law[p].to_ring(big) for p in P}
        for n in S.names:
            lhs = self.images[n].to_ring(big).substitute(inner, big)
            rhs = self.images[n].to_ring(big).substitute(lawb, big)
            if not _identity_mod(S, lhs, rhs, list(P) + primed):
                raise ActionError(f"action axiom fails for {n}")
        for g in S.ideal:
            if _reduce_coeffs(S, self.act(g), P):
                raise ActionError("action does not preserve the defining ideal")
        return True


def orbit_basis(action, seeds, at=None):
    """Greedy basis of the orbit-coefficient span of the seeds (constants dropped)."""
    S = action.ambient
    span = LinearSpan(S.field)
    one = (0,) * len(S.names)
    span.add({one: S.field.one})
    out = []
    for g in seeds:
        for _, c in action.orbit(g, at).items():
            idx, _ = span.add(c.terms_dict)
            if idx is not None:
                out.append(c)
    return out


def orbit_algebra(action, seeds):
    """Generators of the algebra spanned by all translates of the seeds."""
    if isinstance(action, GaAction):
        action = action.as_unipotent()
    basis = orbit_basis(action, seeds)
    return basis or [s for s in seeds if not s.is_constant()]


class _Coords:
    """Coordinates of ambient elements in span(C) + K."""

    def __init__(self, S, C):
        self.S = S
        self.span = LinearSpan(S.field)
        self.n = len(S.names)
        self.span.add({(0,) * self.n: S.field.one})
        for c in C:
            idx, _ = self.span.add(c.terms_dict)
            if idx is None:
                raise InvariantSearchError("orbit basis is not linearly independent")

    def linear(self, p, ring, names):
        co = self.span.coordinates(p.terms_dict)
        if co is None:
            return None
        acc = ring.zero
        for i, c in co.items():
            acc = acc + (ring.const(c) if i == 0 else ring.var(names[i - 1]) * c)
        return acc


class LevelRecord:
    def __init__(self, **kw):
        self.__dict__.update(kw)


class UnipotentPresentation:
    def __init__(self, T, d_tags, tags, levels):
        self.T = T
        self.d_tags = d_tags
        self.tags = tags
        self.levels = levels

    def subalgebra(self, S):
        return Subalgebra(S, self.T, tags=self.tags)

    def d_images(self, S):
        sub = self.subalgebra(S)
        return [sub.image(d) for d in self.d_tags]


def _tag_list(n, avoid):
    out, i = [], 1
    avoid = set(avoid)
    while len(out) < n:
        name = f"tau{i}"
        if name not in avoid:
            out.append(name)
        i += 1
    return out


def _invariant_in_span(action, W, search_degree):
    if any(w.total_degree() > search_degree for w in W):
        raise InvariantSearchError(
            f"invariant search span exceeds degree cap {search_degree}: "
            f"degrees {[w.total_degree() for w in W]}")
    vecs = []
    for w in W:
        v = {}
        orb = action.orbit(w)
        for tk, c in orb.items():
            for m, x in c.terms_dict.items():
                v[(tk, m)] = x
        for m, x in w.terms_dict.items():
            key = ((0,) * action.k, m)
            y = v.get(key, action.field.zero) - x
            if y:
                v[key] = y
            else:
                v.pop(key, None)
        vecs.append(v)
    lam = first_kernel_vector(vecs, action.field)
    if lam is None:
        raise InvariantSearchError(
            f"no invariant found in the span of {len(W)} orbit coefficients")
    a = action.ambient.ring.zero
    for c, w in zip(lam, W):
        if c:
            a = a + w * c
    return a.primitive(), lam


def _alg71(S, action, level, names_in_use, search_degree, strict_char0, records):
    k = action.k
    if k == 0:
        T = [g for g in S.gens]
        return T, ["one"]
    # base case: N_1 = G_a
    ga = action.restrict(0)
    moving = pick_moving_generator(ga, allow_char_p=not strict_char0)
    if moving is None:
        R_gens = list(S.gens)
        a_gens = [S.ring.one]
    else:
        loc = ga_local_invariants(ga, moving, strict_char0)
        R_gens = loc.R_gens
        a_gens = [loc.R_gens[loc.a_index]]
    for g in R_gens:
        if not ga.is_invariant(g):
            raise ActionError(f"N_1 step produced a non-invariant {g}")
    # orbit algebra and the ideal's orbit span
    C = orbit_basis(action, R_gens)
    W = orbit_basis(action, a_gens)
    if a_gens[0].is_constant():
        W = [S.ring.one]
    cn = []
    i = 1
    while len(cn) < len(C):
        nm = f"c{level}_{i}"
        if nm not in names_in_use:
            cn.append(nm)
        i += 1
    sub = Subalgebra(S, C, tags=cn)
    S1 = PresentedRing(cn, S.field, sub.kernel, domain=True)
    coords = _Coords(S, C)
    # action of N/N_1 on R' through the section t_1 = 0
    rest = action.params[1:]
    ring_t1 = PolyRing(tuple(cn) + tuple(rest), S.field, "grevlex")
    imgs = {}
    at = {action.params[0]: 0}
    for nm, c in zip(cn, C):
        acc = ring_t1.zero
        for tk, coeff in action.orbit(c, at).items():
            lin = coords.linear(coeff, ring_t1, cn)
            if lin is None:
                raise ActionError("orbit span is not stable under the group")
            tmono = ring_t1.monomial((0,) * len(cn) + tuple(tk[1:]))
            acc = acc + lin * tmono
        imgs[nm] = acc
    law1 = {}
    lr1 = None
    if rest:
        lr1 = PolyRing(tuple(rest) + tuple(p + "'" for p in rest), S.field, "grevlex")
        drop = {action.params[0]: 0, action.params[0] + "'": 0}
        for p in rest:
            law1[p] = action.law[p].substitute(drop, action.law_ring).to_ring(lr1)
    act1 = UnipotentAction(S1, rest, imgs, law=law1)
    # recursion
    T1, c_tags = _alg71(S1, act1, level + 1, names_in_use | set(cn), search_degree,
                        strict_char0, records)
    # an invariant in a'
    a, lam = _invariant_in_span(action, W, search_degree)
    if not action.is_invariant(a):
        raise InvariantSearchError("invariant search returned a non-invariant element")
    a_c = coords.linear(a, S1.ring, cn)
    T_c = list(T1)
    if not a_c.is_constant() and not any(S1.equal(a_c, t) for t in T_c):
        T_c.append(a_c)
    tags = _tag_list(len(T_c), names_in_use | set(cn))
    Tsub = Subalgebra(S1, T_c, tags=tags)
    # a' ∩ T inside R'
    W_c = [coords.linear(w, S1.ring, cn) for w in W]
    if any(w.is_constant() for w in W_c):
        cap_tags = [Tsub.tag_ring.one]
    else:
        _, cap_tags, _ = module_cap_subalgebra(W_c, Tsub)
        cap_tags = [c.to_ring(Tsub.tag_ring) for c in cap_tags]
    # d = c * (a' ∩ T)
    d = []
    for c in c_tags:
        cc = Tsub.tag_ring.one if c == "one" else c.to_ring(Tsub.tag_ring)
        for e in cap_tags:
            prod = cc * e
            if not Tsub.kernel_gb.contains(prod) and prod not in d:
                d.append(prod)
    if not d:
        raise InvariantSearchError("empty ideal d")
    back = dict(zip(cn, C))
    T = [S.reduce(t.substitute(back, S.ring)) for t in T_c]
    Ssub = Subalgebra(S, T, tags=tags)
    for t in T:
        if not action.is_invariant(t):
            raise ActionError(f"T generator {t} is not invariant")
    for dt in d:
        if not action.is_invariant(Ssub.image(dt)):
            raise ActionError("d generator is not invariant")
    records.append(LevelRecord(level=level, R=R_gens, a=a_gens, orbit_basis=C, W=W,
                               T=T, d=[Ssub.image(x) for x in d], invariant=a))
    return T, d


def unipotent_invariants(action, search_degree=DEFAULT_SEARCH_DEGREE, strict_char0=False,
                         verify=True):
    """(T, d) with K[X]^N = (T : d^inf)_{K[X]}."""
    S = action.ambient
    S.require_domain()
    if verify:
        action.verify()
    records = []
    names = set(S.names) | set(action.params)
    T, d = _alg71(S, action, 1, names, search_degree, strict_char0, records)
    if d == ["one"]:
        # k = 0: T = S and d = S
        tags = _tag_list(len(T), names)
        sub = Subalgebra(S, T, tags=tags)
        return UnipotentPresentation(T, [sub.tag_ring.one], tags, records)
    tags = _tag_list(len(T), names)
    # tag names were chosen per level; rename to the top-level list
    sub = Subalgebra(S, T, tags=tags)
    d = [x.to_ring(sub.tag_ring) if x.ring.names == sub.tag_ring.names
         else _rename(x, sub.tag_ring) for x in d]
    return UnipotentPresentation(T, d, tags, records)


def _rename(p, ring):
    mapping = {old: ring.var(new) for old, new in zip(p.ring.names, ring.names)}
    return p.substitute(mapping, ring)


def unipotent_stream(action, cap=DEFAULT_CAP, search_degree=DEFAULT_SEARCH_DEGREE,
                     strict_char0=False):
    pres = unipotent_invariants(action, search_degree, strict_char0)
    S = action.ambient
    stream = colon_saturation(S, pres.subalgebra(S), pres.d_tags, cap)
    stream.on_step = _check_invariant_hook(action)
    stream.presentation = pres
    return stream


def factorial_invariants(action, cap=DEFAULT_CAP, search_degree=DEFAULT_SEARCH_DEGREE,
                         strict_char0=False, on_batch=None, on_presentation=None):
    """(R~, g~) with K[X]^N = (R~ : g~^inf)_{Q(R~)} for factorial X."""
    S = action.ambient
    if not S.factorial:
        raise ValueError("factorial_invariants needs a ring asserted to be factorial")
    S.normal = True
    pres = unipotent_invariants(action, search_degree, strict_char0)
    if on_presentation is not None:
        on_presentation(pres)
    out = codim2_presentation(S, pres.subalgebra(S), pres.d_tags, cap, on_batch=on_batch)
    out["presentation"] = pres
    return out
