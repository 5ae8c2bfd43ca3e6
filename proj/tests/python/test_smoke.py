import pytest

import misere


def test_outcomes():
    assert misere.outcome("0") == "N"
    assert misere.outcome("*") == "P"
    assert misere.outcome("*", play="normal") == "N"
    assert misere.grundy("{*,*2}") == 0
    assert misere.birthday("E") == 5
    with pytest.raises(misere.ParseError):
        misere.outcome("{*")


def test_octal():
    assert misere.grundy_sequence("0.07", 6) == [0, 0, 1, 1, 2, 0, 3]
    cert = misere.normal_period("0.77", 200)
    assert cert["p"] == 12
    assert misere.misere_nim_outcome([1, 1]) == "N"
    assert misere.misere_nim_outcome([1]) == "P"


def test_quotients():
    t2 = misere.quotient("*2")
    assert t2["status"] == "verified"
    assert t2["monoid"]["order"] == 6
    assert t2["phi_labels"] == ["1", "a", "b"]
    m = misere.BipartiteMonoid.from_dict(t2["monoid"])
    assert misere.iso(m, misere.make_tn(2)) is not None
    assert misere.classify_tame(m) == 2
    assert misere.check_presentation(m, [1, 2], "a,b | a2=1, b3=b")

    r8 = misere.quotient("star2sharp320")
    assert r8["monoid"]["order"] == 8
    assert misere.iso(misere.BipartiteMonoid.from_dict(r8["monoid"]), misere.make_r8()) is not None

    e = misere.quotient("E")
    assert e["status"] == "undetermined"
    assert e["monoid"] is None


def test_monoids():
    xor = [x ^ y for x in range(4) for y in range(4)]
    assert misere.is_reduced(misere.BipartiteMonoid(4, xor, 0, [1]))
    # Translation by 3 swaps 1 and 2, so they cannot be told apart.
    assert not misere.is_reduced(misere.BipartiteMonoid(4, xor, 0, [1, 2]))
    reduced, projection = misere.reduce(misere.BipartiteMonoid(2, [0, 1, 1, 1], 0, []))
    assert len(reduced) == 1 and projection == [0, 0]
    report = misere.structure_report(misere.make_r8())
    assert report["kernel_is_group"]
    assert misere.BipartiteMonoid.from_dict(misere.make_tn(3).to_dict()) == misere.make_tn(3)
    with pytest.raises(misere.InvalidArgument):
        misere.BipartiteMonoid(2, [0, 1, 1, 0, 0], 0, [])


def test_pretending():
    d = misere.pretending("0.77", 8)
    assert [e["label"] for e in d["entries"][1:]] == ["a", "b", "ab", "a", "c", "ab", "b", "ab2"]
    assert d["certificate"] is None
