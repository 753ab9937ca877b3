import pytest
from hypothesis import given, settings, strategies as st

from strategies import R3, polys, small_ideals
from itx.groebner import groebner_basis
from itx.idealops import (
    NotADomain, NotAMember, PresentedRing, Subalgebra, ZeroIdealError, ideal_colon,
    ideal_intersection, ideal_saturation, krull_dimension, localize, module_cap_subalgebra,
)
from itx.polycore import PolyRing, Vector


def same_ideal(a, b, ring):
    ga, gb = groebner_basis(a, ring=ring), groebner_basis(b, ring=ring)
    return all(gb.contains(x) for x in a) and all(ga.contains(x) for x in b)


def test_kernel_and_membership():
    S = PresentedRing.polynomial(["x"])
    R = Subalgebra(S, [S.ring("x^2"), S.ring("x^3")])
    assert [str(k) for k in R.kernel] == ["g1^3 - g2^2"]
    ok, w = R.member(S.ring("x^5"))
    assert ok and str(w) == "g1*g2"
    assert not R.member(S.ring("x"))[0]
    with pytest.raises(NotAMember):
        R.represent(S.ring("x"))


def test_domain_flag_is_required():
    S = PresentedRing(["x", "y"], ideal=["x*y"])
    with pytest.raises(NotADomain):
        S.require_domain()


def test_colon_and_saturation():
    R = PolyRing(["x", "y"])
    c = ideal_colon([R("x^2"), R("x*y")], [R("x")], R)
    assert same_ideal(c, [R("x"), R("y")], R)
    gens, _ = ideal_saturation([R("x^2"), R("x*y")], [R("x")], R)
    assert same_ideal(gens, [R.one], R)
    gens, _ = ideal_saturation([R("x*y"), R("y^2")], [R("x")], R)
    assert same_ideal(gens, [R("y")], R)


def test_intersection():
    R = PolyRing(["x", "y"])
    out = ideal_intersection([R("x")], [R("y")], R)
    assert same_ideal(out, [R("x*y")], R)


def test_krull_dimension():
    R = PolyRing(["x", "y", "z"])
    assert krull_dimension([], R) == 3
    assert krull_dimension([R("x*y - z")], R) == 2
    assert krull_dimension([R("x"), R("y"), R("z")], R) == 0
    assert krull_dimension([R.one], R) == -1
    Q = PolyRing(["x", "y", "z", "w"])
    assert krull_dimension([Q("x*w - y*z")], Q) == 3
    assert krull_dimension([Q("x*w - y*z"), Q("x"), Q("y")], Q) == 2


def test_localize():
    S = PresentedRing.polynomial(["x", "y"])
    L = localize(S, S.ring("x"))
    z = L.var(L.inverse_name)
    assert L.equal(L.var("x") * z, 1)
    with pytest.raises(ZeroIdealError):
        localize(S, S.ring.zero)


def test_module_cap_rank_one_and_two():
    S = PresentedRing.polynomial(["x"])
    A = Subalgebra(S, [S.ring("x^2")])
    c, C, _ = module_cap_subalgebra([S.ring("x")], A)
    assert [str(p) for p in c] == ["x^2"]
    v = Vector.from_components(S.ring, [S.ring("x^2"), 0])
    w = Vector.from_components(S.ring, [0, S.ring("x^3")])
    c, C, rows = module_cap_subalgebra([v, w], A, want_matrix=True)
    assert sorted(str(x) for x in c) == ["(0, x^4)", "(x^2, 0)"]


# ---------------------------------------------------------------------------
# properties

@settings(max_examples=25, deadline=None)
@given(small_ideals(max_gens=2), small_ideals(max_gens=2))
def test_intersection_contains_products(a, b):
    out = groebner_basis(ideal_intersection(a, b, R3), ring=R3)
    for f in a:
        for g in b:
            assert out.contains(f * g)
    ga, gb = groebner_basis(a, ring=R3), groebner_basis(b, ring=R3)
    for h in out.gens:
        assert ga.contains(h) and gb.contains(h)


@settings(max_examples=25, deadline=None)
@given(small_ideals(max_gens=2), polys(min_terms=1, max_terms=2))
def test_colon_property(a, h):
    c = ideal_colon(a, [h], R3)
    ga = groebner_basis(a, ring=R3)
    for g in c:
        assert ga.contains(g * h)
    for f in a:
        assert groebner_basis(c, ring=R3).contains(f)


@settings(max_examples=25, deadline=None)
@given(st.lists(polys(max_terms=2, min_terms=1), min_size=1, max_size=2))
def test_subalgebra_membership_of_products(gens):
    S = PresentedRing.polynomial(["x", "y", "z"])
    if any(g.is_constant() for g in gens):
        return
    R = Subalgebra(S, gens)
    w = gens[0] * gens[-1] + gens[0] * 3 - 1
    ok, wit = R.member(w)
    assert ok
    assert S.equal(R.image(wit), w)
