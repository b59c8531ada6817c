import json
import shlex
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from purisheaf.cli import Command, main, parse_command, run
from purisheaf.exactlinear import GF, QQ
from purisheaf.parse import (LineExpr, ParseError, SumExpr, TensorExpr, TorsExpr, TwistExpr, build_sheaf,
                             format_poly, parse_point_set, parse_sequence, parse_sheaf)
from purisheaf.points import LB, Tors
from purisheaf.decompose import decompose_sheaf

GOLDEN = Path(__file__).parent / "golden"


def run_json(argv, capsys):
    code = main(argv + ["--json"])
    return code, json.loads(capsys.readouterr().out)


@pytest.mark.parametrize("argv,golden", [
    (["purity", "0 -> O(0) -> O(1)++O(1) -> O(2)"], "purity_example.json"),
    (["zp-table"], "zp_table.json"),
    (["zg-closure", "LB(>=0)"], "zg_closure_lb_from_0.json"),
    (["zg-closure", "{T(x,*), Prufer(inf), LB(<=2)}"], "zg_closure_mixed.json"),
])
def test_golden_records(argv, golden, capsys):
    code, rec = run_json(argv, capsys)
    assert code == 0
    assert rec == json.loads((GOLDEN / golden).read_text())


def test_record_schema(capsys):
    _, rec = run_json(["cohomology", "O(-2)"], capsys)
    assert set(rec) == {"command", "inputs", "result", "certificates", "provenance"}
    assert rec["result"]["h0"] == 0 and rec["result"]["h1"] == 1


def test_decompose_text(capsys):
    assert main(["decompose", "O(1) ++ T(x, 2)"]) == 0
    assert capsys.readouterr().out.strip() == "LB(1) ++ T(x,2)"


def test_closure_adds_adics_and_generic(capsys):
    _, rec = run_json(["zg-closure", "LB(>=0)"], capsys)
    assert "Adic(*)" in rec["result"]["closure"] and "Gen" in rec["result"]["closure"]


def test_finite_field_flag(capsys):
    _, rec = run_json(["decompose", "T(x^2+2,1) ++ T(3x-1,2)", "--field", "fp:5"], capsys)
    assert rec["result"]["summands"] == ["T(x+3,2)", "T(x^2+2,1)"]
    # x^2 + 1 = (x + 2)(x + 3) over F5 is not a closed point
    assert main(["decompose", "T(x^2+1,1)", "--field", "fp:5"]) == 2


@pytest.mark.parametrize("argv", [["decompose", "O(1"], ["hom", "O(1)", "T(x^2-1,1)"], ["zg-closure", "LB(>=)"],
                                  ["decompose", "O(1)", "--field", "fp:4"]])
def test_parse_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert "parse error" in capsys.readouterr().err


def test_not_exact_exits_1(capsys):
    assert main(["purity", "O(0) -> O(0)++O(2) -> O(1)"]) == 1
    assert "not exact" in capsys.readouterr().err


def test_torsion_purity_command(capsys):
    _, rec = run_json(["purity", "T(x,1) -> T(x,2) -> T(x,1)"], capsys)
    assert rec["result"] == {"cPure": False, "gPure": False, "gPureViaTensor": False, "gPureViaTorsionHom": False}


def test_diagnostic_offsets():
    with pytest.raises(ParseError) as e:
        parse_sheaf("O(1) ++ T(x, 0)")
    assert e.value.offset == 13
    with pytest.raises(ParseError) as e:
        parse_sheaf("twist(O(1), 2) ** O(1)")
    assert e.value.offset == 16


def test_sequence_forms():
    a = parse_sequence("0 -> O(0) -> O(1)++O(1) -> O(2)")
    b = parse_sequence("O(0) -> O(1) ++ O(1) -> O(2) -> 0")
    assert a == b and str(a) == "0 -> O(0) -> O(1) ++ O(1) -> O(2) -> 0"
    with pytest.raises(ParseError):
        parse_sequence("O(0) -> O(1)")


def test_point_set_parsing():
    s = parse_point_set("{LB(3), T(inf,2), Adic(x-1), LB(<=0)}", QQ)
    assert LB(-5) in s and LB(3) in s and LB(2) not in s
    assert any(isinstance(p, Tors) for p in s.tors)
    assert not s.generic and len(s.adic) == 1


# -- round trips -------------------------------------------------------------------------

polys = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3), min_size=2, max_size=4).map(
    lambda c: tuple(c[:-1]) + (Fraction(1),))


@st.composite
def sheaf_exprs(draw, depth=2):
    kind = draw(st.integers(0, 4 if depth else 1))
    if kind == 0:
        return LineExpr(draw(st.integers(-5, 5)))
    if kind == 1:
        pt = draw(st.one_of(st.none(), polys))
        return TorsExpr(pt, draw(st.integers(1, 4)))
    if kind == 2:
        return SumExpr(tuple(draw(st.lists(sheaf_exprs(depth=depth - 1), min_size=2, max_size=3))))
    if kind == 3:
        items = draw(st.lists(sheaf_exprs(depth=depth - 1), min_size=2, max_size=2))
        return TensorExpr(tuple(i for i in items))
    return TwistExpr(draw(sheaf_exprs(depth=depth - 1)), draw(st.integers(-3, 3)))


def _flatten(e):
    """Sums and tensors are associative in the grammar; compare modulo nesting."""
    if isinstance(e, SumExpr):
        out = []
        for i in e.items:
            f = _flatten(i)
            out += list(f.items) if isinstance(f, SumExpr) else [f]
        return SumExpr(tuple(out))
    if isinstance(e, TensorExpr):
        out = []
        for i in e.items:
            f = _flatten(i)
            out += list(f.items) if isinstance(f, TensorExpr) else [f]
        return TensorExpr(tuple(out))
    if isinstance(e, TwistExpr):
        return TwistExpr(_flatten(e.inner), e.n)
    return e


@given(sheaf_exprs())
def test_sheaf_text_round_trip(e):
    assert _flatten(parse_sheaf(str(e))) == _flatten(e)


@given(polys)
def test_poly_text_round_trip(c):
    assert TorsExpr(c, 1) == parse_sheaf("T(%s,1)" % format_poly(c))


commands = st.one_of(
    st.builds(lambda n: Command("cohomology", ("O(%d)" % n,)), st.integers(-5, 5)),
    st.builds(lambda a, b, f, s, j: Command("hom", ("O(%d)" % a, "T(x,%d)" % b), f, s, j),
              st.integers(-3, 3), st.integers(1, 3), st.sampled_from(["q", "fp:5", "fp:7"]),
              st.integers(0, 99), st.booleans()),
    st.builds(lambda j: Command("zp-table", (), "q", 0, j), st.booleans()),
    st.builds(lambda n: Command("zg-closure", ("LB(>=%d), Gen" % n,)), st.integers(-3, 3)),
)


@given(commands)
def test_command_round_trip(c):
    assert parse_command(shlex.split(str(c))[1:]) == c


def test_run_is_deterministic():
    c = Command("ext", ("O(3)", "O(0) ++ T(x,1)"), "fp:5", 3)
    assert run(c) == run(c)


@given(st.integers(-3, 3), st.integers(-3, 3))
def test_built_sheaf_matches_description(a, b):
    F = build_sheaf("twist(O(%d) ++ T(inf,2), %d)" % (a, b), GF(7))
    assert [str(l) for l in decompose_sheaf(F).labels] == ["LB(%d)" % (a + b), "T(inf,2)"]
