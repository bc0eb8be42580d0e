import pytest

from kadlab.algebra import Profile, bool2_model, check_axioms, lemma4_model
from kadlab.errors import ParseError
from kadlab.files import dump_model, load_model, load_program_file
from kadlab.relations import Rel, rel_algebra_model

LEMMA4_TEXT = """
# the three-element separation witness
carrier: 0 a 1
zero: 0
one: 1
tests: 0 1
plus: 0 0 -> 0
plus: 0 a -> a
plus: 0 1 -> 1
plus: a 0 -> a
plus: a a -> a
plus: a 1 -> 1
plus: 1 0 -> 1
plus: 1 a -> 1
plus: 1 1 -> 1
times: 0 0 -> 0
times: 0 a -> 0
times: 0 1 -> 0
times: a 0 -> 0
times: a a -> 0
times: a 1 -> a
times: 1 0 -> 0
times: 1 a -> a
times: 1 1 -> 1
star: 0 -> 1
star: a -> 1
star: 1 -> 1
not: 0 -> 1
not: 1 -> 0
"""


def test_load_lemma4_equivalent():
    m = load_model(LEMMA4_TEXT, name="file")
    assert check_axioms(m, Profile.KAT).passed
    ref = lemma4_model()
    assert m.carrier == ref.carrier
    for i in range(3):
        for j in range(3):
            assert m.plus(i, j) == ref.plus(i, j)
            assert m.times(i, j) == ref.times(i, j)


@pytest.mark.parametrize("factory", [
    lemma4_model, bool2_model, lambda: rel_algebra_model(1)])
def test_dump_load_roundtrip(factory):
    m = factory()
    again = load_model(dump_model(m), name=m.name)
    assert again.carrier == m.carrier
    assert again.zero == m.zero and again.one == m.one
    assert again.tests == m.tests
    for i in range(m.size):
        for j in range(m.size):
            assert again.plus(i, j) == m.plus(i, j)
            assert again.times(i, j) == m.times(i, j)
        for op in ("star", "adom", "aran"):
            if m.has_op(op):
                assert getattr(again, op)(i) == getattr(m, op)(i)


def test_missing_row_is_an_error():
    text = LEMMA4_TEXT.replace("times: a a -> 0\n", "")
    with pytest.raises(ParseError, match="missing times row for a a"):
        load_model(text)


def test_duplicate_row_is_an_error():
    text = LEMMA4_TEXT + "plus: 0 0 -> 0\n"
    with pytest.raises(ParseError, match="duplicate"):
        load_model(text)


def test_partial_unary_table_is_an_error():
    text = LEMMA4_TEXT.replace("star: a -> 1\n", "")
    with pytest.raises(ParseError, match="missing star row"):
        load_model(text)


def test_unknown_element_is_an_error():
    text = LEMMA4_TEXT + "plus: 0 b -> 0\n"
    with pytest.raises(ParseError, match="unknown element"):
        load_model(text)


def test_unknown_directive_is_an_error():
    with pytest.raises(ParseError, match="unknown directive"):
        load_model("carrier: 0\nzero: 0\none: 0\nfoo: bar\n")


# ---------------------------------------------------------------------------
# program files

PROGRAM_TEXT = """
states: 1 2 3
rel x = {(1,2)}
rel y = {(2,3)}
test p = {(1,1)}
test q = {(3,3)}
pre: p
post: q
program:
  x ;
  y
"""


def test_load_program_file():
    pf = load_program_file(PROGRAM_TEXT)
    assert pf.bindings.space.names == ("1", "2", "3")
    assert set(pf.bindings.atoms) == {"x", "y"}
    assert set(pf.bindings.tests) == {"p", "q"}
    assert pf.pre == Rel.test_from_states(pf.bindings.space, ["1"])
    assert pf.post == Rel.test_from_states(pf.bindings.space, ["3"])
    from kadlab.hoare import denote
    assert denote(pf.program, pf.bindings).pairs() == {("1", "3")}


def test_program_file_keywords():
    pf = load_program_file(
        "states: 1 2\nrel x = full\ntest p = id\nrel z = empty\n")
    sp = pf.bindings.space
    assert pf.bindings.atoms["x"] == Rel.full(sp)
    assert pf.bindings.atoms["z"] == Rel.empty(sp)
    assert pf.bindings.tests["p"] == Rel.identity(sp)
    assert pf.program is None


def test_program_file_errors():
    with pytest.raises(ParseError, match="states"):
        load_program_file("rel x = {(1,1)}\n")
    with pytest.raises(ParseError, match="subidentity"):
        load_program_file("states: 1 2\ntest p = {(1,2)}\n")
    with pytest.raises(ParseError, match="duplicate"):
        load_program_file("states: 1\nrel x = id\nrel x = id\n")
    with pytest.raises(ParseError):
        load_program_file("states: 1\nprogram: nosuchatom\n")
