from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

import oracles as orc
from itx.idealops import PresentedRing, Subalgebra
from itx.invariants import (
    ActionError, GaAction, InvariantSearchError, SliceUnavailable, UnipotentAction,
    factorial_invariants, ga_invariant_stream, ga_local_invariants, monicize,
    pick_moving_generator, resultant_charpoly, slice_numerator, sylvester_resultant,
    unipotent_invariants,
)
from itx.polycore import PolyRing, PrimeField


def K(*names, field=None):
    if field is None:
        return PresentedRing.polynomial(list(names))
    return PresentedRing(list(names), field, (), domain=True, normal=True, factorial=True)


WEITZ = {"x": "x", "y": "y + t*x", "z": "z + t*y + t^2*x/2"}
HEIS = dict(images={"x": "x + a*y + c*z", "y": "y + b*z"},
            law={"c": "c + c' + a*b'", "a": "a + a'", "b": "b + b'"})


def test_mu_expand_char2():
    S = K("x", "y", field=PrimeField(2))
    a = GaAction(S, "t", {"x": "x + t*y + t^2"})
    assert [str(c) for c in a.mu_expand(S.ring("x^2"))] == ["x^2", "0", "y^2", "0", "1"]
    with pytest.raises(SliceUnavailable):
        ga_invariant_stream(a)


def test_verify_rejects_bad_actions():
    S = K("x", "y")
    with pytest.raises(ActionError, match="co-action"):
        GaAction(S, "t", {"x": "x + t^2*y"}).verify()
    with pytest.raises(ActionError, match="t=0"):
        GaAction(S, "t", {"x": "2*x + t"}).verify()
    Q = PresentedRing(["x", "y"], ideal=["x*y - 1"], domain=True)
    with pytest.raises(ActionError, match="ideal"):
        GaAction(Q, "t", {"x": "x + t"}).verify()


def test_pick_and_local_invariants():
    S = K("x", "y", "z")
    a = GaAction(S, "t", WEITZ)
    m = pick_moving_generator(a)
    assert (str(m.f), m.r, str(m.f_r)) == ("y", 1, "x")
    loc = ga_local_invariants(a, m)
    assert [str(u) for u in loc.u_list] == ["x", "0", "y^2 - 2*x*z"]
    assert loc.exponents == [0, 0, 1]
    assert pick_moving_generator(GaAction(S, "t", {})) is None


def test_strict_char0_disables_char_p_slice():
    S = K("x", "y", field=PrimeField(3))
    a = GaAction(S, "t", {"x": "x + t*y"})
    assert [str(g) for g in ga_invariant_stream(a).run()[0][1]] == ["y"]
    with pytest.raises(SliceUnavailable):
        ga_invariant_stream(a, strict_char0=True)


def test_binary_cubic_against_oracle():
    S = K("x1", "x2", "x3", "x4")
    a = GaAction(S, "t", {"x2": "x2 + t*x1", "x3": "x3 + t*x2 + t^2*x1/2",
                          "x4": "x4 + t*x3 + t^2*x2/2 + t^3*x1/6"})
    st_ = ga_invariant_stream(a)
    st_.run()
    assert st_.status == "terminated" and st_.iteration == 3
    gens = st_.generators
    imgs = {i: orc.as_dict(a.images[v]) for i, v in enumerate(S.names)}
    basis = orc.derivation_kernel(orc.derivation_from_action(imgs, 4, 0), 4, 4)
    span = orc.algebra_span([orc.as_dict(g) for g in gens], 4, 4)
    assert all(span.contains(b) for b in basis)


def test_sylvester_small_cases():
    R = PolyRing(["a0", "a1", "b0", "b1"])
    A = [R("a0"), R("a1")]
    B = [R("b0"), R("b1"), R.one]
    assert sylvester_resultant(A, B, R) == R("a1^2*b0 - a0*a1*b1 + a0^2")
    assert sylvester_resultant([R("a0")], B, R) == R("a0^2")


def test_resultant_of_linear_is_evaluation():
    S = K("x", "y")
    a = GaAction(S, "t", {"x": "x + t", "y": "y + 2*t*x + t^2"})
    a.verify()
    md = monicize(a)
    cp = resultant_charpoly(md, S.ring("y"))
    # F = x + t, so P(s) = s - U(-x) with U(-x) = y - x^2
    assert str(cp.P) == "x^2 - y + s"
    for c in cp.coeffs:
        assert a.is_invariant(c)


def test_unipotent_verify():
    S = K("x", "y", "z")
    UnipotentAction(S, ["c", "a", "b"], **HEIS).verify()
    bad = dict(HEIS, law={"c": "c + c' + a'*b", "a": "a + a'", "b": "b + b'"})
    with pytest.raises(ActionError, match="action axiom"):
        UnipotentAction(S, ["c", "a", "b"], **bad).verify()
    with pytest.raises(ActionError):
        UnipotentAction(S, ["a", "c", "b"], **HEIS).verify()


def test_unipotent_presentation_heisenberg():
    S = K("x", "y", "z")
    act = UnipotentAction(S, ["c", "a", "b"], **HEIS)
    pres = unipotent_invariants(act)
    assert [str(t) for t in pres.T] == ["z"]
    assert [str(d) for d in pres.d_images(S)] == ["z^2"]
    with pytest.raises(InvariantSearchError):
        unipotent_invariants(act, search_degree=0)


def test_factorial_flag_required():
    S = PresentedRing(["x", "y"], domain=True)
    with pytest.raises(ValueError, match="factorial"):
        factorial_invariants(GaAction(S, "t", {"x": "x + t*y"}).as_unipotent())


# ---------------------------------------------------------------------------
# triangular actions: mu = exp(t D) for D(z) = e, D(y) = q(z), D(x) = r(y, z)

def exp_action(S, D):
    T = PolyRing(tuple(S.names) + ("t",))
    t = T.var("t")

    def apply(p):
        acc = T.zero
        for v, img in D.items():
            acc = acc + p.diff(v) * img.to_ring(T)
        return acc

    images = {}
    for v in S.names:
        term = T.var(v)
        acc = T.zero
        k = 0
        while not term.is_zero():
            acc = acc + term * t ** k / factorial(k)
            term = apply(term)
            k += 1
        images[v] = acc
    return GaAction(S, "t", images)


small = st.integers(-2, 2)


@st.composite
def triangular(draw):
    S = K("x", "y", "z")
    e = draw(st.sampled_from([0, 1]))
    q1, q0 = draw(small), draw(small)
    r = S.ring.zero
    for m in [(0, 1, 0), (0, 0, 1), (0, 0, 0), (0, 1, 1), (0, 0, 2)]:
        r = r + S.ring.monomial(m, draw(small))
    D = {"z": S.ring.const(e), "y": S.ring(f"{q1}*z") + q0, "x": r}
    return S, exp_action(S, D)


@settings(max_examples=15, deadline=None)
@given(triangular(), st.integers(0, 2), st.integers(0, 2))
def test_slice_map_is_multiplicative(data, i, j):
    S, a = data
    a.verify()
    m = pick_moving_generator(a)
    if m is None:
        return
    h1, h2 = S.gens[i], S.gens[j] + S.gens[(j + 1) % 3]
    U1, l1 = slice_numerator(a, m, h1)
    U2, l2 = slice_numerator(a, m, h2)
    U12, l12 = slice_numerator(a, m, S.reduce(h1 * h2))
    fr = m.f_r
    assert S.equal(U12 * fr ** (l1 + l2), U1 * U2 * fr ** l12)
    assert a.is_invariant(U1) and a.is_invariant(U12)


@settings(max_examples=10, deadline=None)
@given(triangular())
def test_stream_output_is_invariant_and_complete_in_low_degree(data):
    S, a = data
    st_ = ga_invariant_stream(a, cap=6)
    st_.run()
    for g in st_.generators:
        assert a.is_invariant(g)
    if st_.status != "terminated":
        return
    imgs = {i: orc.as_dict(a.images[v]) for i, v in enumerate(S.names)}
    basis = orc.derivation_kernel(orc.derivation_from_action(imgs, 3, 0), 3, 3)
    sub = Subalgebra(S, st_.generators)
    for b in basis:
        p = S.ring.zero
        for mono, c in b.items():
            p = p + S.ring.monomial(mono, c)
        assert sub.member(p)[0]
