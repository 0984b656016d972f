
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import brute_force_circuits, extended, fraction_rank, load_presentation, tilted
from quiverhh import (Element, NotAGeneratingSet, ParallelFamily, Quiver, circuits, complete_rewriting, element,
                      is_minimal, is_strongly_minimal, strengthen_relation, strengthen_system)
from quiverhh.equivalence import nonzero_paths
from quiverhh.relations import NotARelation


def check_family(p, family):
    found = circuits(family)
    assert {c.support for c in found} == brute_force_circuits(family)
    for c in found:
        assert c.witness[0] == 1
        assert p.normal_form(c.element(family)) == 0


def fixture_families():
    out = []
    for name in ["e8_b.quiver", "ext_a2_b.quiver", "square.quiver"]:
        p = load_presentation(name)
        groups, _ = nonzero_paths(p)
        out.extend((name, p, ws) for ws in groups.values() if 2 <= len(ws) <= 12)
    for name in ["E8 cut", "commutative square", "shape (ii)"]:
        p = extended(name)[2].presentation
        groups, _ = nonzero_paths(p)
        out.extend((name, p, ws) for ws in groups.values() if 2 <= len(ws) <= 12)
    return out


@pytest.mark.parametrize("name, p, words", fixture_families(), ids=lambda x: x if isinstance(x, str) else "")
def test_circuits_match_brute_force_on_fixtures(name, p, words):
    check_family(p, ParallelFamily.build(p, words))


def fan(k):
    arrows = [(f"x{i}", "s", f"m{i}") for i in range(k)] + [(f"y{i}", f"m{i}", "t") for i in range(k)]
    return Quiver.build(["s", "t"] + [f"m{i}" for i in range(k)], arrows)


coeff = st.integers(-2, 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 7).flatmap(lambda k: st.tuples(
    st.just(k), st.lists(st.lists(coeff, min_size=k, max_size=k), min_size=1, max_size=3))))
def test_circuits_match_brute_force_on_random_fans(data):
    k, rels = data
    q = fan(k)
    words = [q.path(f"x{i}", f"y{i}") for i in range(k)]
    R = [Element({w: c for w, c in zip(words, r)}) for r in rels]
    R = [r for r in R if r]
    p = complete_rewriting(R, q)
    nonzero = [w for w in words if p.normal_form(w)]
    if len(nonzero) >= 1:
        check_family(p, ParallelFamily.build(p, nonzero))


def test_family_rejects_bad_input():
    p = load_presentation("square.quiver")
    q = p.quiver
    with pytest.raises(ValueError):
        ParallelFamily.build(p, [q.path("a", "b"), q.path("a")])
    with pytest.raises(ValueError):
        ParallelFamily.build(p, [q.path("a", "b"), q.path("a", "b")])


def test_square_relation_is_strongly_minimal():
    p = load_presentation("square.quiver")
    rho = element(p.quiver, "a.b", (-1, "c.d"))
    assert is_minimal(p, rho) and is_strongly_minimal(p, rho)
    assert is_strongly_minimal(p, rho.scale(-3))


def test_monomials_are_strongly_minimal():
    p = load_presentation("a3_linear.quiver")
    assert is_strongly_minimal(p, element(p.quiver, "a.b"))


def test_not_a_relation():
    p = load_presentation("square.quiver")
    with pytest.raises(NotARelation):
        is_strongly_minimal(p, element(p.quiver, "a.b"))


def square_with_tail():
    q = Quiver.build("12345", [("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4"), ("e", "4", "5")])
    r1, r2 = element(q, "a.b", (-1, "c.d")), element(q, "a.b.e", "c.d.e")
    return q, r1, r2, complete_rewriting([r1, r2], q)


def test_minimal_but_not_strongly_minimal():
    q = fan(3)
    w = [q.path(f"x{i}", f"y{i}") for i in range(3)]
    p = complete_rewriting([Element({w[0]: 1, w[1]: -1}), Element({w[1]: 1, w[2]: -1})], q)
    rho = Element({w[0]: 1, w[1]: 1, w[2]: -2})
    assert is_minimal(p, rho)
    assert not is_strongly_minimal(p, rho)
    _, r1, r2, p2 = square_with_tail()
    assert not is_minimal(p2, r2) and not is_strongly_minimal(p2, r2)


def test_strengthen_relation_keeps_leading_coefficient():
    q, r1, r2, p = square_with_tail()
    s = strengthen_relation(p, r2)
    assert is_strongly_minimal(p, s)
    assert set(s.words) <= set(r2.words)
    lead = max(r2.words, key=p.key)
    assert s.coefficient(lead) == r2.coefficient(lead)


def test_strengthen_system_generates_same_ideal():
    q, r1, r2, p = square_with_tail()
    out = strengthen_system(p, [r1, r2])
    assert out[0] == r1
    assert out[1] in (element(q, "a.b.e"), element(q, "c.d.e"))
    check = complete_rewriting(out, q)
    assert check.dimension == p.dimension
    assert all(check.normal_form(r) == 0 for r in (r1, r2))


def test_strengthen_three_term_relation():
    q = fan(3)
    w = [q.path(f"x{i}", f"y{i}") for i in range(3)]
    r1 = Element({w[0]: 1, w[1]: -1})
    r2 = Element({w[0]: 1, w[1]: 1, w[2]: -2})
    p = complete_rewriting([r1, r2], q)
    out = strengthen_system(p, [r1, r2])
    assert all(is_strongly_minimal(p, r) and len(r) == 2 for r in out)
    assert complete_rewriting(out, q).dimension == p.dimension


def test_strengthen_system_rejects_redundant_input():
    q, r1, r2, p = square_with_tail()
    with pytest.raises(NotAGeneratingSet):
        strengthen_system(p, [r1, r1.scale(2)])


def test_strengthen_leaves_strongly_minimal_systems_alone():
    C, R = tilted("E8 cut")
    assert strengthen_system(C, R) == R
