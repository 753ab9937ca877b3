"""Generic freeness over a subalgebra and the intersection Q(R) ∩ S."""
from __future__ import annotations

from .colonalg import DEFAULT_CAP, colon_saturation
from .groebner import groebner_basis
from .polycore import FracField, Frac, Poly, PolyRing

__all__ = ["FreenessResult", "generic_freeness", "field_intersection", "to_fraction_ring"]


class FreenessResult:
    def __init__(self, f_tags, f_ambient, monic_basis, denominators, frac_field, ring):
        self.f_in_tags = f_tags
        self.f_in_ambient = f_ambient
        self.monic_basis = monic_basis
        self.denominator_list = denominators
        self.frac_field = frac_field
        self.ring = ring  # Q(R)[x]

    def standard_monomial_one(self):
        """True when 1 is a standard monomial, so R_f splits off as a summand."""
        return not any(sum(g.lm()) == 0 for g in self.monic_basis)

    def __repr__(self):
        return (f"FreenessResult(f={self.f_in_tags}, basis=[{', '.join(map(str, self.monic_basis))}])")


def to_fraction_ring(p, S, R, Q, QX):
    """Read a polynomial in ambient + tag variables as an element of Q(R)[x]."""
    n = len(S.names)
    split = {}
    for m, c in p.terms_dict.items():
        split.setdefault(m[:n], {})[m[n:]] = c
    out = {}
    for xm, coeffs in split.items():
        val = Q.make(Poly(R.tag_ring, coeffs), R.tag_ring.one)
        if val:
            out[xm] = val
    return Poly(QX, out)


def generic_freeness(S, R, order="grevlex"):
    """f in R with S_f free over R_f; witnessed by a monic Gröbner basis over Q(R)."""
    S.require_domain()
    Q = FracField(R.tag_ring, R.kernel)
    QX = PolyRing(S.names, Q, order)
    gens = [to_fraction_ring(g, S, R, Q, QX) for g in R.elim_generators()]
    gens = [g for g in gens if not g.is_zero()]
    basis = []
    if gens:
        gb = groebner_basis(gens, ring=QX)
        for g in gb.gens:
            basis.append(Poly(QX, {m: Q.simplify(c) for m, c in g.monic().terms_dict.items()}))
    dens = []
    for g in basis:
        for c in g.terms_dict.values():
            d = c.den
            if d.is_constant():
                continue
            if not any(Q.reduce(d - e).is_zero() for e in dens):
                dens.append(d)
    f = R.tag_ring.one
    for d in dens:
        f = Q.reduce(f * d)
    return FreenessResult(f, R.image(f), basis, dens, Q, QX)


def field_intersection(S, R, cap=DEFAULT_CAP):
    """Stream for Q(R) ∩ S, i.e. (R : f^inf)_S with the freeness witness f."""
    fr = generic_freeness(S, R)
    stream = colon_saturation(S, R, [fr.f_in_tags], cap)
    stream.freeness = fr
    return stream
