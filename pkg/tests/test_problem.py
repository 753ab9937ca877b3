import pytest

from itx.polycore import ParseError
from itx.problem import parse_problem

MINIMAL = """\
field rational
vars x, y
ideal:
subalgebra: x, x*y
saturating: g1
"""


def test_minimal_file():
    pf = parse_problem(MINIMAL)
    S = pf.presented()
    R = pf.subalgebra(S)
    assert [str(g) for g in R.gens] == ["x", "x*y"]
    assert [str(a) for a in pf.saturating_in(R)] == ["g1"]
    assert S.domain  # zero ideal


def test_action_file():
    pf = parse_problem("field rational\nvars x, y\nideal:\naction param t\n"
                       "mu x = x + t*y\nmu y = y\n")
    a = pf.ga_action(pf.presented())
    assert a.verify()
    assert str(a.images["x"]) == "y*t + x"


def test_undeclared_parameter_points_at_token():
    with pytest.raises(ParseError) as e:
        parse_problem("field rational\nvars x, y\nideal:\naction param t\nmu x = x + s*y\n")
    assert e.value.line == 5 and e.value.pos == 11
    assert "'s'" in str(e.value)


def test_comments_flags_and_saturating_in_ambient_names():
    pf = parse_problem("# plane\nfield prime 5  # small field\nvars x, y\n"
                       "ideal: x*y - 1\nassert normal\nsaturating: x + y\n")
    assert pf.field.characteristic == 5
    assert pf.flags == {"normal", "domain"}
    S = pf.presented()
    R = pf.subalgebra(S)
    assert [str(a) for a in pf.saturating_in(R)] == ["g1 + g2"]


def test_group_block():
    pf = parse_problem("field rational\nvars x, y, z\nideal:\nassert factorial\n"
                       "group params c, a, b\nlaw c = c + c' + a*b'\nlaw a = a + a'\n"
                       "law b = b + b'\ninverse c = -c + a*b\ninverse a = -a\n"
                       "inverse b = -b\nmu x = x + a*y + c*z\n"
                       "mu y = y + b*z\nchain filtered\n")
    S = pf.presented()
    assert S.factorial and S.normal
    act = pf.unipotent_action(S)
    assert act.verify()
    assert str(pf.inverse["c"]) == "a*b - c"


@pytest.mark.parametrize("text, msg", [
    ("field prime 4\nvars x\n", "not prime"),
    ("field complex\nvars x\n", "field rational"),
    ("field rational\n", "missing 'vars'"),
    ("field rational\nvars x, x\n", "duplicate"),
    ("field rational\nvars x\nbogus line\n", "unknown keyword"),
    ("field rational\nvars x\nideal: x +\n", "unexpected end"),
    ("field rational\nvars x\nassert prime\n", "unknown assertion"),
    ("field rational\nvars x\nmu x = x\n", "before any"),
    ("field rational\nvars x\naction param t\nmu q = x\n", "undeclared variable"),
    ("field rational\nvars x\ngroup params t\nlaw s = t\n", "undeclared group coordinate"),
    ("field rational\nvars x\nchain weird\n", "chain filtered"),
    ("field rational\nvars x, t\naction param t\n", "clashes"),
])
def test_errors(text, msg):
    with pytest.raises(ParseError, match=msg):
        parse_problem(text)


def test_error_columns_in_lists():
    with pytest.raises(ParseError) as e:
        parse_problem("field rational\nvars x, y\nideal: x, y + q\n")
    assert e.value.line == 3 and e.value.pos == len("ideal: x, y + ")
