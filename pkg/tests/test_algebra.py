from itertools import product

import pytest

from kadlab.algebra import (FiniteAlgebra, Profile, bool2_model, check_axioms,
                            check_phi, derive_test_algebra, evaluate,
                            is_isomorphic, lemma4_model, near_as_model,
                            profile_axioms, trivial_model)
from kadlab.errors import EvalError, MissingTableError, ModelError
from kadlab.relations import rel_algebra_model
from kadlab.terms import Env, parse_term


# ---------------------------------------------------------------------------
# the three-element counterexample

def test_lemma4_tables():
    m = lemma4_model()
    times = lambda a, b: m.element_name(m.times(m.index(a), m.index(b)))
    plus = lambda a, b: m.element_name(m.plus(m.index(a), m.index(b)))
    star = lambda a: m.element_name(m.star(m.index(a)))
    assert times("a", "a") == "0"
    assert star("a") == "1"
    assert plus("a", "1") == "1"
    assert star("0") == "1" and star("1") == "1"
    assert m.tests == ("0", "1")


def test_lemma4_eval_examples():
    m = lemma4_model()
    assert evaluate(m, parse_term("1 ; a ; a ; !0")) == "0"
    # recomputed from the tables: 1;a;!0 = 1;a;1 = a
    assert evaluate(m, parse_term("1 ; a ; !0")) == "a"


def test_eval_unit_law_everywhere():
    for m in (lemma4_model(), bool2_model(), near_as_model()):
        for e in m.carrier:
            env = Env(elements={"x": e})
            assert evaluate(m, parse_term("1 ; x"), env) == e


def test_lemma4_is_a_kat_independent_check():
    # independent of check_axioms: walk the tables directly
    m = lemma4_model()
    n = m.size
    rng = range(n)
    for x, y, z in product(rng, repeat=3):
        assert m.plus(m.plus(x, y), z) == m.plus(x, m.plus(y, z))
        assert m.times(m.times(x, y), z) == m.times(x, m.times(y, z))
        assert m.times(x, m.plus(y, z)) == m.plus(m.times(x, y), m.times(x, z))
        assert m.times(m.plus(x, y), z) == m.plus(m.times(x, z), m.times(y, z))
    for x in rng:
        assert m.plus(x, x) == x
        assert m.plus(m.one_i, m.times(x, m.star(x))) == m.star(x)
        assert m.plus(m.one_i, m.times(m.star(x), x)) == m.star(x)
    for x, y, z in product(rng, repeat=3):
        if m.leq(m.plus(z, m.times(x, y)), y):
            assert m.leq(m.times(m.star(x), z), y)
        if m.leq(m.plus(z, m.times(y, x)), y):
            assert m.leq(m.times(z, m.star(x)), y)
    for p in m.tests_i:
        c = m.complement(p)
        assert m.times(p, c) == m.zero_i
        assert m.plus(p, c) == m.one_i


def test_lemma4_passes_kat():
    report = check_axioms(lemma4_model(), Profile.KAT)
    assert report.passed, [str(v) for v in report.violations]


def test_lemma4_has_no_antidomain():
    with pytest.raises(MissingTableError):
        check_axioms(lemma4_model(), Profile.KAD)


def test_lemma4_refutes_phi():
    result = check_phi(lemma4_model())
    assert not result.holds
    assert result.witness == ("a", "a", "1", "0")


def test_phi_trivial_model():
    assert check_phi(trivial_model()).holds


def test_phi_on_relational_kad():
    assert check_phi(rel_algebra_model(2)).holds


# ---------------------------------------------------------------------------
# axiom checking on broken models

def test_broken_plus_unit_reports_violation():
    broken = FiniteAlgebra(
        ["0", "1"], "0", "1",
        [[0, 1], [1, 0]],  # 1 + 1 = 0 breaks idempotence, x + 0 ok
        [[0, 0], [0, 1]], name="broken")
    report = check_axioms(broken, Profile.DIOID)
    assert not report.passed
    names = {v.axiom for v in report.violations}
    assert "plus-idem" in names


def test_broken_zero_unit():
    broken = FiniteAlgebra(
        ["0", "1"], "0", "1",
        [[1, 1], [1, 1]],  # x + 0 != x
        [[0, 0], [0, 1]], name="broken2")
    report = check_axioms(broken, Profile.SEMIRING)
    assert not report.passed
    v = next(v for v in report.violations if v.axiom == "plus-zero")
    assert v.assignment == (("x", "0"),)


def test_violation_is_first_in_carrier_order():
    m = FiniteAlgebra(
        ["0", "a", "1"], "0", "1",
        [[0, 1, 2], [1, 1, 1], [2, 1, 2]],  # a+1 = a breaks nothing?? -> comm ok; assoc broken
        [[0, 0, 0], [0, 0, 1], [0, 1, 2]], name="weird")
    report = check_axioms(m, Profile.SEMIRING)
    assert not report.passed


# ---------------------------------------------------------------------------
# antidomain structure

AS_BUILTINS = [trivial_model, bool2_model,
               lambda: rel_algebra_model(1), lambda: rel_algebra_model(2)]


@pytest.mark.parametrize("factory", AS_BUILTINS)
def test_as_builtins_pass_as(factory):
    report = check_axioms(factory(), Profile.AS)
    assert report.passed, [str(v) for v in report.violations]


@pytest.mark.parametrize("factory", AS_BUILTINS)
def test_weak_locality_exhaustive(factory):
    # x;y = 0 iff x;d(y) = 0
    m = factory()
    d = lambda i: m.adom(m.adom(i))
    for x, y in product(range(m.size), repeat=2):
        assert (m.times(x, y) == m.zero_i) == (m.times(x, d(y)) == m.zero_i)


@pytest.mark.parametrize("factory", AS_BUILTINS)
def test_domain_is_a_retraction(factory):
    m = factory()
    d = lambda i: m.adom(m.adom(i))
    image = {d(x) for x in range(m.size)}
    for x in range(m.size):
        assert d(d(x)) == d(x)
        # fixpoints of d are exactly its image
        assert (x in image) == (d(x) == x)
        assert m.times(m.adom(x), x) == m.zero_i
        assert m.plus(m.adom(x), d(x)) == m.one_i


@pytest.mark.parametrize("factory", AS_BUILTINS)
def test_as_implies_dioid(factory):
    assert check_axioms(factory(), Profile.DIOID).passed


@pytest.mark.parametrize("factory", AS_BUILTINS)
def test_phi_holds_on_antidomain_models(factory):
    assert check_phi(factory()).holds


def test_derive_test_algebra_on_relations():
    m = derive_test_algebra(rel_algebra_model(2))
    assert m.tests is not None and len(m.tests) == 4
    assert check_axioms(m, Profile.TS).passed
    assert check_axioms(m, Profile.KAT).passed


def test_derive_test_algebra_trivial():
    m = derive_test_algebra(trivial_model())
    assert m.tests == ("0",)


def test_derive_test_algebra_two_tests():
    m = derive_test_algebra(bool2_model())
    assert len(m.tests) == 2
    assert check_axioms(m, Profile.TS).passed


def test_derive_test_algebra_rejects_non_as():
    # a(0) = 0 breaks a(x) + d(x) = 1 but the tables still construct
    bad = FiniteAlgebra(
        ["0", "1"], "0", "1", [[0, 1], [1, 1]], [[0, 0], [0, 1]],
        adom=[0, 1], name="bad-adom")
    with pytest.raises(ModelError):
        derive_test_algebra(bad)


# ---------------------------------------------------------------------------
# the near-semiring witness

def test_near_as_model_passes_near_as():
    report = check_axioms(near_as_model(), Profile.NEAR_AS)
    assert report.passed, [str(v) for v in report.violations]


def test_near_as_model_fails_left_distributivity():
    report = check_axioms(near_as_model(), Profile.SEMIRING)
    assert {v.axiom for v in report.violations} == {"distrib-left"}


def test_near_as_model_satisfies_phi():
    assert check_phi(near_as_model()).holds


def test_kadr_compatibility_laws():
    for factory in (trivial_model, bool2_model, lambda: rel_algebra_model(2)):
        m = factory()
        assert check_axioms(m, Profile.KA_DR).passed
        for x in range(m.size):
            ar = m.aran(x)
            assert m.adom(m.adom(ar)) == ar
            a = m.adom(x)
            assert m.aran(m.aran(a)) == a


# ---------------------------------------------------------------------------
# construction validation

def test_tests_must_match_adom_image():
    with pytest.raises(ModelError):
        FiniteAlgebra(["0", "1"], "0", "1", [[0, 1], [1, 1]],
                      [[0, 0], [0, 1]], adom=[1, 0], tests=["0"])


def test_tests_need_complement_without_adom():
    with pytest.raises(ModelError):
        FiniteAlgebra(["0", "1"], "0", "1", [[0, 1], [1, 1]],
                      [[0, 0], [0, 1]], tests=["0", "1"])


def test_complement_must_be_involution():
    with pytest.raises(ModelError):
        FiniteAlgebra(["0", "a", "1"], "0", "1",
                      [[max(i, j) for j in range(3)] for i in range(3)],
                      [[0, 0, 0], [0, 0, 1], [0, 1, 2]],
                      tests=["0", "a", "1"],
                      complement={"0": "1", "1": "0", "a": "1"})


def test_eval_errors():
    m = lemma4_model()
    with pytest.raises(EvalError):
        evaluate(m, parse_term("x ; y"))  # unbound
    with pytest.raises(EvalError):
        evaluate(m, parse_term("!q"), Env(tests={"q": "a"}))  # not a test
    with pytest.raises(MissingTableError):
        evaluate(m, parse_term("a(x)"), Env(elements={"x": "a"}))


def test_profiles_are_cumulative():
    names = {p: {law.name for law in profile_axioms(p)} for p in Profile}
    assert names[Profile.KAT] == names[Profile.KLEENE] | names[Profile.TS]
    assert names[Profile.KAD] == names[Profile.KLEENE] | names[Profile.AS]
    assert names[Profile.DIOID] == names[Profile.SEMIRING] | {"plus-idem"}
    assert names[Profile.NEAR_AS] == names[Profile.AS] - {
        "distrib-left", "times-zero"}
    assert names[Profile.KA_DR] >= names[Profile.KAD] | names[Profile.ARS]


def test_isomorphism_checker():
    m = lemma4_model()
    relabeled = FiniteAlgebra(
        ["0", "b", "1"], "0", "1",
        [[max(i, j) for j in range(3)] for i in range(3)],
        [[0, 0, 0], [0, 0, 1], [0, 1, 2]],
        star=[2, 2, 2], tests=["0", "1"],
        complement={"0": "1", "1": "0"}, name="relabeled")
    assert is_isomorphic(m, relabeled)
    assert not is_isomorphic(m, bool2_model())
