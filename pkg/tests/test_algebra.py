import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import groupoids, terms
from zlab.algebra import (
    AXIOM_I,
    FiniteGroupoid,
    TableFormatError,
    VarietySpec,
    canonical_form,
    evaluate,
    format_table,
    in_variety,
    is_izroupoid,
    isomorphic,
    load_table,
    parse_table,
    satisfies,
    zero_fixing_permutations,
)
from zlab.terms import Arrow, Identity, Var, Zero, parse_identity, parse_term

TWO_B = FiniteGroupoid.from_rows([[1, 1], [0, 1]])
A1 = parse_identity("x -> (y -> z) = (x -> y) -> z")


def slow_eval(t, rows, env):
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, Zero):
        return 0
    return rows[slow_eval(t.left, rows, env)][slow_eval(t.right, rows, env)]


def slow_holds(rows, ident):
    names = ident.variables
    for values in itertools.product(range(len(rows)), repeat=len(names)):
        env = dict(zip(names, values))
        if slow_eval(ident.lhs, rows, env) != slow_eval(ident.rhs, rows, env):
            return False, env
    return True, None


def test_evaluate_examples():
    assert evaluate(parse_term("x'"), TWO_B, {"x": 0}) == 1
    assert evaluate(parse_term("x''"), TWO_B, {"x": 0}) == 0
    assert evaluate(parse_term("0 -> x"), TWO_B, {"x": 0}) == 1


def test_evaluate_unbound_variable():
    with pytest.raises(KeyError):
        evaluate(parse_term("x -> y"), TWO_B, {"x": 0})


def test_first_failure_is_lexicographic():
    rep = satisfies(TWO_B, A1)
    assert not rep
    assert rep.assignment == {"x": 0, "y": 0, "z": 0}
    assert (rep.lhs_value, rep.rhs_value) == (1, 0)
    # another failing assignment
    env = {"x": 0, "y": 1, "z": 0}
    assert evaluate(A1.lhs, TWO_B, env) != evaluate(A1.rhs, TWO_B, env)


def test_satisfaction_orientation_does_not_leak():
    ident = parse_identity("x -> 0 = x")
    r1 = satisfies(TWO_B, ident)
    r2 = satisfies(TWO_B, ident.swapped())
    assert (r1.lhs_value, r1.rhs_value) == (r2.rhs_value, r2.lhs_value)


def test_all_two_element_tables_against_brute_force():
    izr = []
    for flat in itertools.product(range(2), repeat=4):
        g = FiniteGroupoid.from_flat(2, flat)
        ok = all(slow_holds(g.table, ax)[0] for ax in (AXIOM_I, parse_identity("0'' = 0")))
        assert bool(is_izroupoid(g)) == ok
        if ok:
            izr.append(g.table)
    assert sorted(izr) == [((0, 0), (0, 0)), ((0, 1), (1, 1)), ((1, 1), (0, 1))]


@settings(max_examples=200)
@given(groupoids(max_size=3), terms(("x", "y", "z")), terms(("x", "y", "z")))
def test_satisfies_matches_slow_interpreter(g, a, b):
    ident = Identity(a, b)
    rep = satisfies(g, ident)
    ok, env = slow_holds(g.table, ident)
    assert rep.holds == ok
    if not ok:
        assert rep.assignment == env
        assert rep.lhs_value == slow_eval(a, g.table, env)
        assert rep.rhs_value == slow_eval(b, g.table, env)


@settings(max_examples=100)
@given(groupoids(min_size=2, max_size=4), st.data(), terms(("x", "y")), terms(("x", "y")))
def test_satisfaction_invariant_under_zero_fixing_isomorphism(g, data, a, b):
    perm = data.draw(st.sampled_from(zero_fixing_permutations(g.size)))
    h = g.relabel(perm)
    ident = Identity(a, b)
    assert satisfies(g, ident).holds == satisfies(h, ident).holds
    assert canonical_form(g) == canonical_form(h)
    assert isomorphic(g, h)


@given(groupoids(max_size=4))
def test_canonical_form_is_least_relabeling(g):
    c = canonical_form(g)
    images = [g.relabel(p) for p in zero_fixing_permutations(g.size)]
    assert c == min(images)
    assert canonical_form(c) == c


def test_nonisomorphic_pair():
    g = FiniteGroupoid.from_rows([[0, 1], [1, 1]])
    assert not isomorphic(g, TWO_B)
    assert not isomorphic(g, FiniteGroupoid.from_rows([[0]]))


def test_variety_membership_relative_to_I():
    not_izr = FiniteGroupoid.from_rows([[1, 1], [1, 1]])
    assert not is_izroupoid(not_izr)
    v = VarietySpec.of("free", "x = x", relative_to_I=False)
    assert in_variety(not_izr, v)
    assert not in_variety(not_izr, VarietySpec.of("rel", "x = x"))


def test_variety_spec_needs_identities():
    with pytest.raises(ValueError):
        VarietySpec("nameless")


def test_groupoid_validation():
    with pytest.raises(ValueError):
        FiniteGroupoid.from_rows([[0, 2], [0, 0]])
    with pytest.raises(ValueError):
        FiniteGroupoid.from_rows([[0, 1]])


@given(groupoids(max_size=5))
def test_table_format_roundtrip(g):
    assert parse_table(format_table(g)) == g


def test_table_file_with_comments(table_file):
    path = table_file("# the two-element Boolean algebra\n2\n\n1 1\n  # rows are x, columns y\n0 1\n")
    assert load_table(path) == TWO_B
    assert format_table(TWO_B) == "2\n1 1\n0 1\n"


@pytest.mark.parametrize("text,msg", [
    ("", "empty"),
    ("two\n", "bad size"),
    ("2\n0 0\n", "expected 2 rows"),
    ("2\n0 0\n0\n", "expected 2 entries"),
    ("2\n0 0\n0 2\n", "out of range"),
    ("2\n0 a\n0 0\n", "non-integer"),
])
def test_table_format_errors(text, msg):
    with pytest.raises(TableFormatError, match=msg):
        parse_table(text)
