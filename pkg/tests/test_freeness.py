from itx.freeness import field_intersection, generic_freeness
from itx.idealops import PresentedRing, Subalgebra


def test_cusp_witness():
    S = PresentedRing.polynomial(["x"])
    R = Subalgebra(S, [S.ring("x^2"), S.ring("x^3")])
    fr = generic_freeness(S, R)
    assert str(fr.f_in_tags) == "g1"
    assert str(fr.f_in_ambient) == "x^2"
    assert [str(g) for g in fr.monic_basis] == ["x + (-g2)/(g1)"]
    assert fr.standard_monomial_one()


def test_free_extension_has_unit_witness():
    S = PresentedRing.polynomial(["x", "y"])
    R = Subalgebra(S, [S.ring("x")])
    assert generic_freeness(S, R).f_in_tags.is_one()
    S1 = PresentedRing.polynomial(["x"])
    assert generic_freeness(S1, Subalgebra(S1, [S1.ring("x^2")])).f_in_tags.is_one()


def test_field_intersection_streams():
    S = PresentedRing.polynomial(["x"])
    st = field_intersection(S, Subalgebra(S, [S.ring("x^2"), S.ring("x^3")]))
    assert [[str(p) for p in b] for _, b in st] == [["x^2", "x^3"], ["x"]]
    st = field_intersection(S, Subalgebra(S, [S.ring("x^2")]))
    assert [[str(p) for p in b] for _, b in st] == [["x^2"]]
    assert st.status == "terminated"


def test_field_intersection_in_two_variables():
    # y = (x*y)/x lies in Q(R), so the intersection is all of K[x, y]
    S = PresentedRing.polynomial(["x", "y"])
    R = Subalgebra(S, [S.ring("x"), S.ring("x*y"), S.ring("x*y^2")])
    st = field_intersection(S, R)
    st.run()
    assert st.status == "terminated"
    assert Subalgebra(S, st.generators).member(S.ring("y"))[0]
