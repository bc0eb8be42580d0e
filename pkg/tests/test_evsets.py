import pytest
from hypothesis import given, strategies as st

from kadlab.errors import ModelError, ParseError
from kadlab.evsets import (EvPeriodicSet, NotAPrecondition, NotMaximal,
                           cofinite_set, empty_set, enumerate_candidates,
                           evens, finite_set, format_evset, full_set,
                           in_test_algebra, kat_star, odds, parse_evset,
                           refute_wlp_candidate)


# ---------------------------------------------------------------------------
# canonical form

def test_normalization_minimal_period():
    # period 4 with residues {0, 2} is really period 2 with {0}
    s = EvPeriodicSet(0, frozenset(), 4, frozenset({0, 2}))
    assert s.period == 2 and s.residues == frozenset({0})
    assert s == evens()


def test_normalization_absorbs_head():
    s = EvPeriodicSet(5, frozenset({0, 2, 4}), 2, frozenset({0}))
    assert s == evens()
    assert s.threshold == 0 and not s.head


def test_normalization_keeps_exceptions():
    # evens plus the exceptional 1
    s = EvPeriodicSet(2, frozenset({0, 1}), 2, frozenset({0}))
    assert s.threshold == 2
    assert s.head == frozenset({0, 1})
    assert 1 in s and 3 not in s


def test_invalid_inputs():
    with pytest.raises(ModelError):
        EvPeriodicSet(0, frozenset(), 0, frozenset())
    with pytest.raises(ModelError):
        EvPeriodicSet(1, frozenset({3}), 2, frozenset())
    with pytest.raises(ModelError):
        EvPeriodicSet(0, frozenset(), 2, frozenset({5}))


# ---------------------------------------------------------------------------
# membership and classification

def test_membership():
    assert 0 in evens() and 1 not in evens()
    assert 17 in odds()
    f = finite_set({0, 5})
    assert 5 in f and 4 not in f and 100 not in f


def test_finite_cofinite_flags():
    assert finite_set({1, 2}).is_finite
    assert cofinite_set({5}).is_cofinite
    assert not evens().is_finite and not evens().is_cofinite
    assert in_test_algebra(finite_set({0, 1, 2}))
    assert in_test_algebra(cofinite_set({5}))
    assert not in_test_algebra(evens())


def test_set_operations():
    assert evens().intersect(evens().complement()) == empty_set()
    assert finite_set({0, 2}).union(evens()) == evens()
    assert evens().complement() == odds()
    assert evens().union(odds()) == full_set()
    assert full_set().complement() == empty_set()


def test_kat_star_is_full():
    assert kat_star(empty_set()) == full_set()
    assert kat_star(evens()) == full_set()
    assert kat_star(full_set()) == full_set()


def test_least():
    assert empty_set().least() is None
    assert evens().least() == 0
    assert odds().least() == 1
    assert finite_set({7, 3}).least() == 3
    assert EvPeriodicSet(10, frozenset(), 4, frozenset({1})).least() == 13


# ---------------------------------------------------------------------------
# literals

@pytest.mark.parametrize("text", [
    "evens", "odds", "finite{}", "finite{1,3}", "cofinite{0}",
    "periodic(2; 0; 3; 1,2)",
])
def test_literal_roundtrip(text):
    s = parse_evset(text)
    assert parse_evset(format_evset(s)) == s


def test_literal_errors():
    with pytest.raises(ParseError):
        parse_evset("finite{1,")
    with pytest.raises(ParseError):
        parse_evset("weird")
    with pytest.raises(ParseError):
        parse_evset("periodic(0; ; 0; )")


# ---------------------------------------------------------------------------
# refuter

def test_refuter_examples():
    e = evens()
    v = refute_wlp_candidate(e, empty_set())
    assert v == NotMaximal(1, finite_set({1}))
    v = refute_wlp_candidate(e, finite_set({1, 3}))
    assert v == NotMaximal(5, finite_set({1, 3, 5}))
    v = refute_wlp_candidate(e, finite_set({0}))
    assert v == NotAPrecondition(0)


def test_refuter_preconditions():
    with pytest.raises(ModelError):
        refute_wlp_candidate(evens(), evens())  # candidate outside B
    with pytest.raises(ModelError):
        refute_wlp_candidate(finite_set({1}), empty_set())  # target inside B


def test_refuter_on_cofinite_candidate():
    # a cofinite candidate always meets the evens
    v = refute_wlp_candidate(evens(), cofinite_set({1, 3}))
    assert isinstance(v, NotAPrecondition)


def test_candidate_enumeration_order():
    cands = list(enumerate_candidates(evens(), 6))
    assert [format_evset(c) for c in cands] == [
        "finite{}", "finite{1}", "finite{3}", "finite{5}",
        "finite{7}", "finite{9}"]


# ---------------------------------------------------------------------------
# properties

@st.composite
def _evsets(draw):
    n = draw(st.integers(0, 6))
    head = draw(st.frozensets(st.integers(0, max(n - 1, 0)), max_size=6)) \
        if n else frozenset()
    head = frozenset(x for x in head if x < n)
    p = draw(st.integers(1, 6))
    res = draw(st.frozensets(st.integers(0, p - 1), max_size=6))
    return EvPeriodicSet(n, head, p, res)


def _same_members(a, b, horizon=200):
    return all((k in a) == (k in b) for k in range(horizon))


@given(_evsets(), _evsets())
def test_ops_are_pointwise(a, b):
    u = a.union(b)
    i = a.intersect(b)
    d = a.difference(b)
    for k in range(0, 80):
        assert (k in u) == ((k in a) or (k in b))
        assert (k in i) == ((k in a) and (k in b))
        assert (k in d) == ((k in a) and (k not in b))


@given(_evsets())
def test_complement_involution(a):
    assert a.complement().complement() == a
    for k in range(0, 60):
        assert (k in a) != (k in a.complement())


@given(_evsets(), _evsets())
def test_de_morgan(a, b):
    assert a.union(b).complement() == a.complement().intersect(b.complement())


@given(_evsets(), _evsets())
def test_test_algebra_closed(a, b):
    # finite-or-cofinite sets are closed under the operations
    if in_test_algebra(a) and in_test_algebra(b):
        assert in_test_algebra(a.union(b))
        assert in_test_algebra(a.intersect(b))
        assert in_test_algebra(a.complement())


@given(_evsets(), _evsets(), _evsets())
def test_kat_spot_laws(a, b, c):
    # join/meet laws of the powerset KAT restricted to these carriers
    assert a.union(a) == a
    assert a.union(b) == b.union(a)
    assert a.intersect(b.union(c)) == a.intersect(b).union(a.intersect(c))
    assert a.union(b).intersect(c) == a.intersect(c).union(b.intersect(c))
    assert a.union(empty_set()) == a
    assert a.intersect(full_set()) == a
    assert a.intersect(empty_set()) == empty_set()
    assert kat_star(a) == full_set()
    # star unfold: 1 + s . s* = s* with . = meet, 1 = full
    assert full_set().union(a.intersect(kat_star(a))) == kat_star(a)


@given(st.frozensets(st.integers(0, 40), max_size=8))
def test_refuter_property_on_finite_candidates(elems):
    # any finite set of odds is refuted by a strictly larger disjoint test
    candidate = finite_set({2 * x + 1 for x in elems})
    verdict = refute_wlp_candidate(evens(), candidate)
    assert isinstance(verdict, NotMaximal)
    ext = verdict.extension
    assert in_test_algebra(ext)
    assert candidate.leq(ext) and not ext.leq(candidate)
    assert ext.intersect(evens()) == empty_set()
    assert verdict.missing not in candidate
