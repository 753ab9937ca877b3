"""Colon steps (R:a)_S with certificates and the saturation stream (R:a^inf)_S.

Also the quasi-affine coordinate ring, the finite-generation-locus stream and
the codimension-2 presentation built on top of the stream.
"""
from __future__ import annotations

from .groebner import DEBUG, groebner_basis
from .idealops import (
    NotAMember, PresentedRing, SubIdeal, Subalgebra, ZeroIdealError,
    ideal_colon, ideal_intersection, krull_dimension, localize, reduced_gens,
)
from .polycore import MonomialOrder, Poly

__all__ = [
    "ColonResult", "GenStream", "FgliResult", "colon_step", "colon_saturation",
    "quasi_affine_ring", "fgli_stream", "codim2_presentation",
    "represent_in_generators", "CertificateError",
]

DEFAULT_CAP = 32


class CertificateError(AssertionError):
    pass


class ColonResult:
    """Output of one colon step: H plus the certificates phi(v) = phi(u) * h."""

    def __init__(self, H, u=None, u_index=None, certificates=(), pruned=(), unit=False):
        self.H = list(H)
        self.u = u
        self.u_index = u_index
        self.certificates = list(certificates)  # (v, b, h)
        self.pruned = list(pruned)  # q before pruning, used by the fgli colon
        self.unit = unit

    @property
    def vs(self):
        return [c[0] for c in self.certificates]

    def __repr__(self):
        return f"ColonResult(H=[{', '.join(str(h) for h in self.H)}])"


def _first_nonzero(sub, A):
    kgb = sub.kernel_gb
    for i, g in enumerate(A.gens):
        if not kgb.contains(g):
            return i, g
    raise ZeroIdealError("zero saturating ideal")


def colon_step(S, R, a):
    """Generators H of (R:a)_S as an R-module (together with 1)."""
    S.require_domain()
    tag_ring = R.tag_ring
    J = R.kernel
    ui, u = _first_nonzero(R, a)

    # (R:R)_S = R: nothing to add when a is the unit ideal
    unit_gb = groebner_basis(J + a.gens, ring=tag_ring)
    if unit_gb.is_unit():
        return ColonResult([], u, ui, unit=True)

    # c = (J + (u)) : (J + A)
    p_gens = J + [u]
    c = ideal_colon(p_gens, a.gens, tag_ring)

    # v = <I, u, y - f>, with cofactors of u tracked
    E = R.elim_ring
    vgens = R.elim_generators() + [u.to_ring(E)]
    u_pos = len(vgens) - 1
    v_gb = groebner_basis(vgens, ring=E, track=[u_pos])
    n = len(S.names)
    uu = [g.to_ring(tag_ring) for g in v_gb.gens if all(not any(m[:n]) for m in g.terms_dict)]

    # q = elimination part of v meets c; drop what (J + (u)) already holds
    q = reduced_gens(ideal_intersection(uu, c, tag_ring), tag_ring)
    p_gb = groebner_basis(p_gens, ring=tag_ring)
    kept = [v for v in q if not p_gb.contains(v)]

    # h from the u-cofactor of each kept q-element
    imgs = dict(zip(R.tags, R.gens))
    u_img = R.image(u)
    certs, H = [], []
    for v in kept:
        cof, rem = v_gb.cofactors(v.to_ring(E))
        if not rem.is_zero():
            raise CertificateError("q-element outside the ideal v")
        b = cof[u_pos]
        h = S.reduce(b.substitute(imgs, S.ring))
        if not S.is_zero(R.image(v) - u_img * h):
            raise CertificateError("phi(v) != phi(u) * h")
        hp = h.primitive()
        if not hp.is_zero() and hp != h:
            scale = hp.lc() / h.lc()
            v, b, h = v * scale, b * scale, hp
        certs.append((v, b, h))
        H.append(h)
    return ColonResult(H, u, ui, certs, q)


def represent_in_generators(g, sub):
    """Tag polynomial w with w(f) = g mod I; NotAMember otherwise."""
    return sub.represent(g)


class GenStream:
    """Batches of generators of (R:a^inf)_S, produced lazily.

    Iteration i emits the current batch, then runs one colon step on the
    algebra generated by everything emitted so far.  The original tags stay
    a prefix of the tag list, so the saturating ideal never needs rewriting.
    """

    def __init__(self, S, R, a_gens, cap=DEFAULT_CAP, on_step=None):
        self.S = S
        self.R = R
        self.A = [g.to_ring(R.tag_ring) if isinstance(g, Poly) else R.tag_ring.const(g)
                  for g in a_gens]
        self.cap = cap
        self.F = []
        self.pending = list(R.gens)
        self.iteration = 0
        self.status = "running"
        self.history = []  # (subalgebra, ColonResult) per iteration
        self.on_step = on_step
        self._base_tags = list(R.tags)
        if all(R.kernel_gb.contains(g) for g in self.A):
            raise ZeroIdealError("zero saturating ideal")

    def _algebra(self):
        extra = len(self.F) - len(self._base_tags)
        taken = list(self.S.names) + self._base_tags
        tags = self._base_tags + _fresh_tags(taken, extra, len(self._base_tags))
        return Subalgebra(self.S, self.F, tags=tags)

    def __iter__(self):
        return self

    def __next__(self):
        if self.status != "running":
            raise StopIteration
        self.iteration += 1
        i = self.iteration
        batch = self.pending
        self.F = self.F + batch
        Ri = self._algebra()
        res = colon_step(self.S, Ri, SubIdeal(Ri, self.A))
        self.history.append((Ri, res))
        if self.on_step is not None:
            self.on_step(i, Ri, res)
        self.pending = res.H
        if not res.H:
            self.status = "terminated"
        elif self.cap is not None and i >= self.cap:
            self.status = "capped"
        return i, batch

    def run(self):
        return [b for b in self]

    @property
    def algebra(self):
        """Subalgebra generated by everything emitted so far."""
        return self.history[-1][0] if self.history else self.R

    @property
    def generators(self):
        return list(self.F)


def _fresh_tags(taken, count, start):
    taken = set(taken)
    out = []
    i = start + 1
    while len(out) < count:
        n = f"g{i}"
        if n not in taken:
            out.append(n)
            taken.add(n)
        i += 1
    return out


def colon_saturation(S, R, a_gens, cap=DEFAULT_CAP):
    if isinstance(a_gens, SubIdeal):
        a_gens = a_gens.gens
    return GenStream(S, R, a_gens, cap)


def quasi_affine_ring(X, a_gens, cap=DEFAULT_CAP):
    """Stream for the regular functions on X minus V(a), computed inside X_f."""
    X.require_domain()
    a_gens = [X.ring(g) if not isinstance(g, Poly) else g.to_ring(X.ring) for g in a_gens]
    f = next((g for g in a_gens if not X.is_zero(g)), None)
    if f is None:
        raise ZeroIdealError("zero saturating ideal")
    S = localize(X, f)
    R = Subalgebra(S, [S.var(n) for n in X.names])
    ren = {n: R.tag(i) for i, n in enumerate(X.names)}
    A = [g.substitute(ren, R.tag_ring) for g in a_gens]
    stream = GenStream(S, R, A, cap)
    stream.localized = S
    return stream


# ---------------------------------------------------------------------------
# finite generation locus

class FgliResult:
    """Per-iteration (R_i generators, h_i generators); h_i is taken without radical."""

    up_to_radical = True

    def __init__(self, stream):
        self.stream = stream
        self.steps = []  # dicts with keys algebra, ideal_tags, ideal, iteration

    @property
    def status(self):
        return self.stream.status

    @property
    def iterations(self):
        return self.stream.iteration


def fgli_ideal(Ri, res):
    """Tag generators of ((J + (u)) : (v_1..v_s)), i.e. (R_i : (R_i : a)_S) in R_i."""
    tag_ring = Ri.tag_ring
    if not res.H:
        return [tag_ring.one]
    return ideal_colon(Ri.kernel + [res.u], res.vs, tag_ring)


def fgli_stream(S, R, a_gens, cap=DEFAULT_CAP):
    """Run the saturation stream and attach the colon ideal h_i to every iteration."""
    result = None

    def hook(i, Ri, res):
        tags = fgli_ideal(Ri, res)
        imgs = []
        for g in tags:
            im = Ri.image(g)
            if not im.is_zero():
                imgs.append(im)
        result.steps.append({"iteration": i, "algebra": list(Ri.gens),
                             "ideal_tags": tags, "ideal": imgs, "subalgebra": Ri,
                             "colon": res})

    stream = GenStream(S, R, a_gens, cap, on_step=hook)
    result = FgliResult(stream)
    return result


def codimension(S, gens):
    dim_s = krull_dimension(S.ideal, S.ring)
    dim_q = krull_dimension(list(S.ideal) + list(gens), S.ring)
    return dim_s, dim_q


def codim2_presentation(S, R, a_gens, cap=DEFAULT_CAP, on_batch=None):
    """Stop once h_i S is the whole ring or has codimension >= 2.

    Returns a dict with the algebra generators, the ideal generators, the
    stopping reason, dimensions and status.  ``on_batch(i, batch, step)`` sees
    every emitted batch as it is produced.
    """
    if not S.normal:
        raise ValueError("codim2_presentation needs a ring asserted to be normal")
    fg = fgli_stream(S, R, a_gens, cap)
    out = None
    for i, batch in fg.stream:
        step = fg.steps[-1]
        if on_batch is not None:
            on_batch(i, batch, step)
        dim_s, dim_q = codimension(S, step["ideal"])
        reason = None
        if dim_q < 0:
            reason = "unit"
        elif dim_s - dim_q >= 2:
            reason = "codim"
        elif fg.stream.status == "terminated":
            reason = "terminated"
        out = {"algebra": step["algebra"], "ideal": step["ideal"],
               "ideal_tags": step["ideal_tags"], "subalgebra": step["subalgebra"],
               "iteration": step["iteration"], "dim_S": dim_s, "dim_quotient": dim_q,
               "codim": (dim_s - dim_q) if dim_q >= 0 else None, "reason": reason,
               "status": "terminated", "fgli": fg}
        if reason is not None:
            return out
    out["status"] = fg.stream.status
    return out
