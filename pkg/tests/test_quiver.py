from fractions import Fraction

import pytest

from quiverhh.quiver import NEW, Arrow, Element, PathWord, Quiver, QuiverError, compose, element


def a3():
    return Quiver.build("123", [("a", "1", "2"), ("b", "2", "3")])


def test_build_and_lookup():
    q = a3()
    assert q.points == ("1", "2", "3")
    assert q.arrow("a").target == "2"
    assert not q.has_arrow("z")
    assert [a.name for a in q.arrows_from("2")] == ["b"]


@pytest.mark.parametrize("points, arrows", [
    ("11", []),
    ("12", [("a", "1", "2"), ("a", "2", "1")]),
    ("12", [("a", "1", "3")]),
    ("12", [("1", "1", "2")]),
])
def test_invalid_quivers(points, arrows):
    with pytest.raises(QuiverError):
        Quiver.build(points, arrows)


def test_provenance():
    q = a3().with_provenance(["b"])
    assert [a.name for a in q.new_arrows] == ["b"]
    assert [a.name for a in q.old_arrows] == ["a"]
    assert Arrow("x", "1", "2", NEW).is_new


def test_paths_compose_left_to_right():
    q = a3()
    ab = q.path("a", "b")
    assert (ab.source, ab.target, len(ab)) == ("1", "3", 2)
    assert str(ab) == "a.b"
    with pytest.raises(QuiverError):
        q.path("b", "a")
    assert compose(q.path("a"), q.path("b")) == ab
    assert compose(q.path("b"), q.path("a")) is None
    e1 = q.idempotent("1")
    assert compose(e1, q.path("a")) == q.path("a")
    assert str(e1) == "e_1" and e1.is_stationary


def test_stationary_path_needs_one_point():
    with pytest.raises(QuiverError):
        PathWord("1", "2", ())


def test_element_arithmetic():
    q = a3()
    x = element(q, "a.b", (2, "a.b"))
    assert x.coefficient(q.path("a", "b")) == 3
    assert (x - x) == 0 and not (x - x)
    y = Element.path(q.path("a")) * Element.path(q.path("b"))
    assert y == Element.path(q.path("a", "b"))
    assert Element.path(q.path("b")) * q.path("a") == 0
    assert (x * Fraction(1, 3)).coefficient(q.path("a", "b")) == 1
    assert x.is_monomial and x.is_parallel and x.endpoints == ("1", "3")


def test_element_str():
    q = Quiver.build("1234", [("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")])
    assert str(element(q, "a.b", (-1, "c.d"))) == "a.b - c.d"
    assert str(element(q, (Fraction(-1, 2), "a.b"))) == "-1/2*a.b"
    assert str(Element()) == "0"
