import pytest
from hypothesis import given, settings, strategies as st

from platcalc.invariants import closure_report, permutation_of, plat_components, winding_table
from platcalc.manifolds import lens_space, standard_duals, ManifoldPresentation
from platcalc.moves import (
    MMove,
    PairMove,
    RelMove,
    SlideMove,
    StabMove,
    free_reduce_with_moves,
    hilden_word,
    invert_witness,
    m6_destabilize,
    m6_stabilize,
    parse_move,
    plat_sum,
    psl,
    psl_star,
    replay_witness,
    t_map,
    w_word,
)
from platcalc.presentation import Direction, relator_catalog
from platcalc.words import (
    BraidWord,
    GroupContext,
    concat,
    format_word,
    free_reduce,
    parse_word,
    word,
)

G12 = GroupContext(genus=1, strands=2)
G14 = GroupContext(genus=1, strands=4)
G16 = GroupContext(genus=1, strands=6)
G26 = GroupContext(genus=2, strands=6)


def _w(text, ctx=G14):
    return parse_word(text, ctx)


def _random_words(ctx, max_len=10):
    tokens = [f"s{i}" for i in range(1, ctx.strands)]
    tokens += [f"s{i}^-1" for i in range(1, ctx.strands)]
    for j in range(1, ctx.genus + 1):
        tokens += [f"a{j}", f"a{j}^-1", f"b{j}", f"b{j}^-1"]
    return st.lists(st.sampled_from(tokens), max_size=max_len).map(
        lambda ts: parse_word(" ".join(ts), ctx)
    )


# -- arc-motion words -------------------------------------------------------


def test_hilden_words_frozen():
    assert format_word(hilden_word("braid_twist", G16, 2)) == "s3"
    assert format_word(hilden_word("elementary_exchange", G14, 1)) == "s2 s3 s1 s2"
    assert format_word(hilden_word("arc_slide", G14)) == "s2 s1^2 s2"
    assert format_word(hilden_word("longitude_slide", G12, 1)) == "a1 s1^-1 a1 s1^-1"
    assert format_word(hilden_word("meridian_slide", G26, 2)) == "b2 s1^-1 b2 s1^-1"


def test_hilden_word_errors():
    with pytest.raises(ValueError):
        hilden_word("braid_twist", G16, 4)
    with pytest.raises(ValueError):
        hilden_word("elementary_exchange", G14, 2)
    with pytest.raises(ValueError):
        hilden_word("arc_slide", G12)
    with pytest.raises(ValueError):
        hilden_word("longitude_slide", G14, 2)
    with pytest.raises(ValueError):
        hilden_word("spin", G14)


@given(_random_words(G26, max_len=8))
def test_hilden_prefix_preserves_closure(beta):
    before = closure_report(beta)
    for kind, index in [("braid_twist", 2), ("elementary_exchange", 1),
                        ("arc_slide", 0), ("longitude_slide", 2),
                        ("meridian_slide", 1)]:
        h = hilden_word(kind, G26, index) if index else hilden_word(kind, G26)
        after = closure_report(concat(h, beta))
        assert len(after.components) == len(before.components)
        assert after.class_multiset() == before.class_multiset()


# -- stabilization ----------------------------------------------------------


def test_t_map_frozen():
    assert format_word(t_map(_w("s1", G12), 1)) == "s1"
    assert t_map(_w("s1", G12), 1).context == G14
    assert format_word(t_map(_w("s2"), 1)) == "s2 s3 s4 s3^-1 s2^-1"
    assert format_word(t_map(_w("s3"), 1)) == "s5"
    assert format_word(t_map(_w("s3"), 2)) == "s3"
    assert format_word(t_map(_w("s2^-1"), 1)) == "s2 s3 s4^-1 s3^-1 s2^-1"
    assert format_word(t_map(_w("a1 b1^-1"), 1)) == "a1 b1^-1"
    with pytest.raises(ValueError):
        t_map(_w("s1"), 3)
    with pytest.raises(ValueError):
        t_map(_w("s1"), 0)


@given(_random_words(G14, max_len=6), _random_words(G14, max_len=6),
       st.integers(1, 2))
def test_t_map_multiplicative(u, v, k):
    assert t_map(concat(u, v), k) == concat(t_map(u, k), t_map(v, k))


def test_t_map_keeps_relators_trivial():
    for r in relator_catalog(G14):
        image = t_map(r.word, 1)
        assert permutation_of(image) == tuple(range(1, 7))
        assert all(x == 0 for row in winding_table(image) for x in row)


def test_m6_frozen():
    assert format_word(m6_stabilize(word(G12), 1)) == "s2"
    assert format_word(m6_stabilize(_w("s1", G12), 1)) == "s1 s2"
    assert format_word(m6_destabilize(_w("s2"), 1)) == ""
    assert format_word(m6_destabilize(_w("s1 s2"), 1)) == "s1"
    assert format_word(m6_destabilize(_w("s2 s3 s4^2 s3^-1", G16), 1)) == "s2^2"
    assert format_word(m6_destabilize(_w("s2 s3 s4^-1 s3^-1", G16), 1)) == "s2^-1"
    with pytest.raises(ValueError):
        m6_destabilize(_w("s3"), 1)
    with pytest.raises(ValueError):
        m6_destabilize(_w("s2^-1 s3 s2"), 1)
    with pytest.raises(ValueError):
        m6_destabilize(_w("s1", G12), 1)


@given(_random_words(G14, max_len=10), st.integers(1, 2))
def test_m6_round_trip(beta, k):
    stabilized = m6_stabilize(beta, k)
    assert m6_destabilize(stabilized, k) == free_reduce(beta)


@given(_random_words(G14, max_len=10), st.integers(1, 2))
def test_m6_preserves_closure(beta, k):
    before = closure_report(beta)
    after = closure_report(m6_stabilize(beta, k))
    assert len(after.components) == len(before.components)
    assert after.class_multiset() == before.class_multiset()


# -- plat sum ---------------------------------------------------------------


def test_w_word_frozen():
    assert format_word(w_word(1, 3, G16)) == ""
    assert format_word(w_word(2, 2, G16)) == "s4 s5 s3 s4"
    assert format_word(w_word(2, 3, GroupContext(1, 8))) == "s4 s5 s6 s7 s3 s4 s5 s6"
    with pytest.raises(ValueError):
        w_word(2, 2, G14)
    with pytest.raises(ValueError):
        w_word(0, 2, G14)


def test_plat_sum_examples():
    alpha = parse_word("b1^-1 a1^3 b1^-1 a1^2", G12)
    beta = _w("s1 s3")
    assert format_word(plat_sum(alpha, beta)) == "b1^-1 a1^3 b1^-1 a1^2 s1 s3"
    assert format_word(plat_sum(beta, parse_word("b1", G12))) == "s1 s3 b1"
    both = plat_sum(word(G14), word(G14))
    assert format_word(both) == "s4 s5 s3 s4"
    assert both.context == G16
    assert len(plat_components(both)) == 3
    with pytest.raises(ValueError):
        plat_sum(word(G14), word(GroupContext(2, 4)))


@settings(max_examples=150)
@given(_random_words(G14, max_len=8), _random_words(G16, max_len=8))
def test_plat_sum_component_arithmetic(alpha, beta):
    total = plat_components(plat_sum(alpha, beta))
    assert len(total) == len(plat_components(alpha)) + len(plat_components(beta)) - 1


def test_psl_examples():
    m = lens_space(5, 2)
    assert format_word(psl(word(G12), m, 1)) == "b1^-1 a1^3 b1^-1 a1^2"
    assert format_word(psl_star(word(G12), m, 1)) == "b1"
    assert format_word(psl(_w("s2"), m, 1)) == "b1^-1 a1^3 b1^-1 a1^2 s2"
    with pytest.raises(ValueError):
        psl(word(G12), m, 2)
    with pytest.raises(ValueError):
        psl(word(GroupContext(2, 4)), m, 1)


# -- move values and serialization ------------------------------------------

MOVE_SAMPLES = [
    MMove("M1", None, "L", 1),
    MMove("M1", None, "R", -1),
    MMove("M2", 1, "R", -1),
    MMove("M3", None, "L", -1),
    MMove("M4", 2, "L", 1),
    MMove("M5", 1, "R", 1),
    StabMove(2, 1),
    StabMove(1, -1),
    RelMove("R3.ab(s=1,r=2)", 4, Direction.FORWARD),
    RelMove("TR", 0, Direction.BACKWARD),
    PairMove(True, 0, parse_word("a1", G12).letters[0]),
    PairMove(False, 3, parse_word("s1^-1", G12).letters[0]),
    SlideMove(False, 1, 1),
    SlideMove(True, 2, -1),
]


def test_serialization_round_trip():
    texts = [m.serialize() for m in MOVE_SAMPLES]
    assert texts == [
        "M1(L,+)", "M1(R,-)", "M2(i=1,R,-)", "M3(L,-)", "M4(j=2,L,+)",
        "M5(j=1,R,+)", "M6(k=2,+)", "M6(k=1,-)", "rel:R3.ab(s=1,r=2)@4,→",
        "rel:TR@0,←", "ins@0:a1", "cancel@3:s1^-1", "psl(i=1,+)", "psl*(i=2,-)",
    ]
    for move, text in zip(MOVE_SAMPLES, texts):
        assert parse_move(text) == move


def test_parse_move_variants_and_errors():
    assert parse_move("rel:R3.ab(r=2,s=1)@4,->") == RelMove(
        "R3.ab(s=1,r=2)", 4, Direction.FORWARD)
    assert parse_move("rel:TR@0,<-") == RelMove("TR", 0, Direction.BACKWARD)
    assert parse_move("psl(i=1)") == SlideMove(False, 1, 1)
    assert parse_move(" M6(k=3,-) ") == StabMove(3, -1)
    for bad in ["M7(L,+)", "M2(R,-)", "M1(i=1,L,+)", "rel:TR@x,→",
                "ins@2:q1", "psl(j=1)", "cancel@-1:a1", "M6(k=0,+)", ""]:
        with pytest.raises(ValueError):
            parse_move(bad)


def test_mmove_apply():
    beta = _w("s2")
    assert format_word(MMove("M1", None, "L", 1).apply(beta)) == "s1 s2"
    assert format_word(MMove("M1", None, "L", -1).apply(beta)) == "s1^-1 s2"
    assert format_word(MMove("M1", None, "R", 1).apply(beta)) == "s2 s1"
    assert format_word(MMove("M2", 1, "L", 1).apply(beta)) == "s2 s3 s1 s2^2"
    assert format_word(MMove("M4", 1, "R", -1).apply(word(G12))) == "s1 a1^-1 s1 a1^-1"
    with pytest.raises(ValueError):
        MMove("M2", 3, "L", 1).apply(beta)


def test_relmove_apply_literal():
    out = RelMove("BR1(i=1)", 0, Direction.FORWARD).apply(parse_word("s1 s2 s1", GroupContext(0, 4)))
    assert format_word(out) == "s2 s1 s2"
    with pytest.raises(ValueError):
        RelMove("BR1(i=1)", 1, Direction.FORWARD).apply(parse_word("s1 s2 s1", GroupContext(0, 4)))


def test_pairmove_apply():
    beta = _w("s2 s3")
    ins = PairMove(True, 1, _w("a1").letters[0])
    grown = ins.apply(beta)
    assert format_word(grown) == "s2 a1 a1^-1 s3"
    assert ins.inverted().apply(grown) == beta
    with pytest.raises(ValueError):
        PairMove(False, 0, _w("s2").letters[0]).apply(beta)
    with pytest.raises(ValueError):
        PairMove(True, 9, _w("a1").letters[0]).apply(beta)


def test_slidemove_apply():
    m = lens_space(5, 2)
    beta = parse_word("s1", G12)
    slid = SlideMove(False, 1, 1).apply(beta, m)
    assert format_word(slid) == "b1^-1 a1^3 b1^-1 a1^2 s1"
    assert SlideMove(False, 1, -1).apply(slid, m) == beta
    grown = SlideMove(True, 1, 1).apply(beta, m)
    assert format_word(grown) == "s1 b1"
    assert SlideMove(True, 1, -1).apply(grown, m) == beta
    with pytest.raises(ValueError):
        SlideMove(False, 1, 1).apply(beta, None)


MANIFOLD_26 = ManifoldPresentation(
    genus=2,
    attaching_words=(
        parse_word("a1", GroupContext(2, 2)),
        parse_word("b2^-1 a2", GroupContext(2, 2)),
    ),
    dual_words=standard_duals(2),
)


@given(_random_words(G26, max_len=8),
       st.sampled_from([m for m in MOVE_SAMPLES
                        if isinstance(m, (MMove, SlideMove))] + [StabMove(1, 1)]))
def test_move_inversion_round_trip(beta, move):
    try:
        out = move.apply(beta, MANIFOLD_26)
    except ValueError:
        return
    back = move.inverted().apply(out, MANIFOLD_26)
    assert back == free_reduce(beta)


@given(_random_words(G26, max_len=8),
       st.sampled_from([m for m in MOVE_SAMPLES if isinstance(m, MMove)]))
def test_mmoves_preserve_closure(beta, move):
    before = closure_report(beta)
    after = closure_report(move.apply(beta))
    assert len(after.components) == len(before.components)
    assert after.class_multiset() == before.class_multiset()


@given(_random_words(G26, max_len=8),
       st.sampled_from([SlideMove(False, 1, 1), SlideMove(False, 2, -1),
                        SlideMove(True, 1, -1), SlideMove(True, 2, 1)]))
def test_slides_preserve_components_and_reduced_classes(beta, move):
    from platcalc.manifolds import class_in_manifold

    before = closure_report(beta)
    after = closure_report(move.apply(beta, MANIFOLD_26))
    assert len(after.components) == len(before.components)
    assert class_in_manifold(after, MANIFOLD_26) == class_in_manifold(before, MANIFOLD_26)


# -- replay -----------------------------------------------------------------


def test_replay_and_inversion():
    m = lens_space(1, 0)
    start = parse_word("a1 b1", G12)
    witness = (
        SlideMove(True, 1, -1),     # drop the trailing b1
        MMove("M1", None, "R", 1),  # append s1
        PairMove(True, 0, parse_word("b1", G12).letters[0]),
    )
    out = replay_witness(start, witness, m)
    assert format_word(out) == "b1 b1^-1 a1 s1"
    back = replay_witness(out, invert_witness(witness), m)
    assert back == start


@given(_random_words(G26, max_len=12))
def test_free_reduce_with_moves_replays_exactly(beta):
    reduced, moves = free_reduce_with_moves(beta)
    assert reduced == free_reduce(beta)
    current = beta
    for move in moves:
        current = move.apply(current)
    assert current == reduced
    grown = replay_witness(reduced, invert_witness(moves))
    assert grown == beta
