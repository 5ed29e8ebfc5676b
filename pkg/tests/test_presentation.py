import pytest
from hypothesis import given, strategies as st

from platcalc.invariants import permutation_of, winding_table
from platcalc.presentation import (
    Direction,
    apply_relation,
    check_relator_trivial,
    normalize_relator_name,
    relation_matches,
    relator_by_name,
    relator_catalog,
)
from platcalc.words import BraidWord, GroupContext, concat, format_word, parse_word

G04 = GroupContext(genus=0, strands=4)
G12 = GroupContext(genus=1, strands=2)
G14 = GroupContext(genus=1, strands=4)
G24 = GroupContext(genus=2, strands=4)


def test_catalog_genus0():
    names = [r.name for r in relator_catalog(G04)]
    assert names == ["BR1(i=1)", "BR1(i=2)", "BR2(i=1,j=3)"]


def test_catalog_genus1_two_strands():
    names = [r.name for r in relator_catalog(G12)]
    assert names == ["R2.a(r=1)", "R2.b(r=1)", "R4(r=1)", "TR"]


def test_catalog_counts():
    assert len(relator_catalog(G14)) == 11
    assert len(relator_catalog(G24)) == 22


def test_relator_words_frozen():
    tr = relator_by_name(G12, "TR")
    assert format_word(tr.lhs) == "a1 b1^-1 a1^-1 b1"
    assert format_word(tr.rhs) == "s1^2"
    assert format_word(tr.word) == "a1 b1^-1 a1^-1 b1 s1^-2"
    r4 = relator_by_name(G12, "R4(r=1)")
    assert format_word(r4.word) == "s1^-1 a1 s1^-1 b1 s1^-1 a1^-1 s1 b1^-1"
    tr4 = relator_by_name(G14, "TR")
    assert format_word(tr4.rhs) == "s1 s2 s3^2 s2 s1"


def test_relator_names_round_trip():
    for ctx in (G04, G12, G24, GroupContext(genus=3, strands=8)):
        for r in relator_catalog(ctx):
            assert relator_by_name(ctx, r.name) is r


def test_name_normalization():
    assert normalize_relator_name("R3.ab(r=2,s=1)") == "R3.ab(s=1,r=2)"
    assert normalize_relator_name(" R1.a( i=2 , r=1 ) ".replace(" ", "")) == "R1.a(r=1,i=2)"
    assert normalize_relator_name("TR") == "TR"
    with pytest.raises(ValueError):
        normalize_relator_name("R3.ab(s=1,r=2")
    with pytest.raises(ValueError):
        normalize_relator_name("R3.ab(x=1)")


def test_relator_by_name_errors():
    with pytest.raises(ValueError):
        relator_by_name(G04, "TR")
    with pytest.raises(ValueError):
        relator_by_name(G04, "BR1(i=3)")
    with pytest.raises(ValueError):
        relator_by_name(G12, "R3.ab(s=1,r=2)")


def test_all_relators_act_trivially():
    for genus in range(0, 4):
        for strands in (2, 4, 6, 8):
            for r in relator_catalog(GroupContext(genus=genus, strands=strands)):
                report = check_relator_trivial(r)
                assert report.ok, r.name


def test_apply_relation_examples():
    w = parse_word("s1 s2 s1", G04)
    out = apply_relation(w, relator_by_name(G04, "BR1(i=1)"), 0, Direction.FORWARD)
    assert format_word(out) == "s2 s1 s2"

    w = parse_word("a1 s2", G14)
    out = apply_relation(w, relator_by_name(G14, "R1.a(r=1,i=2)"), 0, Direction.FORWARD)
    assert format_word(out) == "s2 a1"

    with pytest.raises(ValueError):
        apply_relation(parse_word("s1 s2", G04), relator_by_name(G04, "BR1(i=1)"), 0)
    with pytest.raises(ValueError):
        apply_relation(parse_word("s1 s2 s1", G04), relator_by_name(G04, "BR1(i=1)"), 1)
    with pytest.raises(ValueError):
        apply_relation(parse_word("s1 s2 s1", G04), relator_by_name(G04, "BR1(i=1)"), -1)


def test_direction_parsing():
    assert Direction.from_text("->") is Direction.FORWARD
    assert Direction.from_text("→") is Direction.FORWARD
    assert Direction.from_text("<-") is Direction.BACKWARD
    assert Direction.from_text("←") is Direction.BACKWARD
    assert Direction.FORWARD.flipped() is Direction.BACKWARD
    with pytest.raises(ValueError):
        Direction.from_text("=>")


def _affix_words(ctx, max_len=4):
    tokens = [f"s{i}" for i in range(1, ctx.strands)]
    tokens += [f"s{i}^-1" for i in range(1, ctx.strands)]
    for j in range(1, ctx.genus + 1):
        tokens += [f"a{j}", f"a{j}^-1", f"b{j}", f"b{j}^-1"]
    return st.lists(st.sampled_from(tokens), max_size=max_len).map(
        lambda ts: parse_word(" ".join(ts), ctx)
    )


@given(
    st.sampled_from(relator_catalog(G24)),
    st.sampled_from([Direction.FORWARD, Direction.BACKWARD]),
    _affix_words(G24),
    _affix_words(G24),
)
def test_apply_preserves_invariants_and_reverses(relator, direction, prefix, suffix):
    src = relator.lhs if direction is Direction.FORWARD else relator.rhs
    w = concat(prefix, BraidWord(G24, src.letters), suffix)
    position = len(prefix)
    out = apply_relation(w, relator, position, direction)
    assert permutation_of(out) == permutation_of(w)
    assert winding_table(out) == winding_table(w)
    back = apply_relation(out, relator, position, direction.flipped())
    assert back == w
    assert position in relation_matches(w, relator, direction)
