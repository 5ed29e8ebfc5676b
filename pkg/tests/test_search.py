import pytest

from platcalc.manifolds import lens_space
from platcalc.moves import replay_witness
from platcalc.search import (
    DISTINGUISHED,
    EXHAUSTED,
    FOUND,
    SearchConfig,
    invariant_profile,
    neighbors,
    search_equivalent,
)
from platcalc.words import BraidWord, GroupContext, free_reduce, parse_word

G12 = GroupContext(genus=1, strands=2)
G14 = GroupContext(genus=1, strands=4)

S3 = lens_space(1, 0)
L52 = lens_space(5, 2)


def w(text, context=G14):
    return parse_word(text, context)


class TestConfig:
    def test_defaults_are_valid(self):
        cfg = SearchConfig()
        assert cfg.max_depth >= 1 and cfg.max_strands % 2 == 0

    @pytest.mark.parametrize("kwargs", [
        {"max_depth": 0},
        {"node_budget": 0},
        {"max_word_length": -3},
        {"threads": 0},
        {"max_strands": 7},
    ])
    def test_bad_bounds_rejected(self, kwargs):
        with pytest.raises(ValueError):
            SearchConfig(**kwargs)


class TestNeighbors:
    def test_deterministic_order(self):
        cfg = SearchConfig()
        start = w("b1 s1 a1^-1")
        first = [(tuple(m.serialize() for m in mv), out.letters)
                 for mv, out in neighbors(start, L52, cfg)]
        second = [(tuple(m.serialize() for m in mv), out.letters)
                  for mv, out in neighbors(start, L52, cfg)]
        assert first == second

    def test_empty_word_leads_with_first_twist(self):
        cfg = SearchConfig()
        succ = list(neighbors(w("", G12), S3, cfg))
        moves, out = succ[0]
        assert [m.serialize() for m in moves] == ["M1(L,+)"]
        assert out == w("s1", G12)

    def test_respects_word_length_bound(self):
        cfg = SearchConfig(max_word_length=3)
        start = w("s1 s2 s3")
        for _, out in neighbors(start, S3, cfg):
            assert len(out.letters) <= 3

    def test_respects_strand_bound(self):
        cfg = SearchConfig(max_strands=4)
        start = w("s1 s2 s3")
        for _, out in neighbors(start, S3, cfg):
            assert out.context.strands <= 4

    @pytest.mark.parametrize("text,manifold", [
        ("b1 a1", S3),
        ("a1 s2 b1^-1", L52),
        ("s1 s3 a1 a1", L52),
    ])
    def test_every_edge_preserves_profile(self, text, manifold):
        cfg = SearchConfig(max_strands=8)
        start = w(text)
        before = invariant_profile(start, manifold)
        succ = list(neighbors(start, manifold, cfg))
        assert succ
        for moves, out in succ:
            assert invariant_profile(out, manifold) == before, \
                [m.serialize() for m in moves]

    def test_edges_replay_to_their_target(self):
        cfg = SearchConfig()
        start = w("b1 s1^-1 a1")
        for moves, out in neighbors(start, L52, cfg):
            replayed = free_reduce(replay_witness(start, moves, L52))
            assert replayed == out


class TestSearchEquivalent:
    def test_reflexive_empty_witness(self):
        res = search_equivalent(w("a1 s2 b1"), w("a1 s2 b1"), L52)
        assert res.equivalent and res.witness == () and res.reason == FOUND

    def test_single_twist_found_at_depth_one(self):
        beta = w("a1 s2")
        res = search_equivalent(beta, w("s1 a1 s2"), L52,
                                SearchConfig(max_depth=2))
        assert res.equivalent
        assert [m.serialize() for m in res.witness] == ["M1(L,+)"]

    def test_attach_slide_connects_to_empty(self):
        res = search_equivalent(w("a1", G12), w("", G12), S3,
                                SearchConfig(max_depth=2))
        assert res.equivalent
        assert [m.serialize() for m in res.witness] == ["psl(i=1,-)"]

    def test_witness_replays_onto_target(self):
        beta = w("b1 s2 a1")
        target = free_reduce(w("s1 b1 s2 a1 s1^-1"))
        res = search_equivalent(beta, target, L52, SearchConfig(max_depth=4))
        assert res.equivalent
        replayed = free_reduce(replay_witness(beta, res.witness, L52))
        assert replayed == target

    def test_invariant_quick_reject(self):
        res = search_equivalent(w("a1", G12), w("a1 a1", G12), L52)
        assert not res.equivalent
        assert res.reason == DISTINGUISHED
        assert res.witness is None
        assert res.stats.nodes_expanded == 0

    def test_bounds_exhausted_reported(self):
        cfg = SearchConfig(max_depth=1, node_budget=5)
        res = search_equivalent(w("b1 a1", G12), w("a1 b1", G12), S3, cfg)
        assert not res.equivalent and res.reason == EXHAUSTED

    def test_free_reduction_is_built_in(self):
        res = search_equivalent(w("s1 s1^-1 a1"), w("a1 s2 s2^-1"), L52)
        assert res.equivalent and res.witness == ()

    def test_genus_mismatch_rejected(self):
        other = parse_word("a1", GroupContext(genus=2, strands=2))
        with pytest.raises(ValueError):
            search_equivalent(w("a1", G12), other, S3)

    def test_threads_match_single_threaded(self):
        beta = w("b1 s2 a1")
        target = free_reduce(w("s1 b1 s2 a1 s1^-1"))
        lone = search_equivalent(beta, target, L52, SearchConfig(max_depth=4))
        pooled = search_equivalent(beta, target, L52,
                                   SearchConfig(max_depth=4, threads=4))
        assert lone.equivalent == pooled.equivalent
        assert [m.serialize() for m in lone.witness] == \
               [m.serialize() for m in pooled.witness]
