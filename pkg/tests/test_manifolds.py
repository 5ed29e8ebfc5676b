import math

import pytest

from platcalc.invariants import closure_report, plat_components, winding_table
from platcalc.manifolds import (
    HomologyGroup,
    ManifoldPresentation,
    class_in_manifold,
    h1_of_manifold,
    lens_space,
    parse_manifold_config,
    reduce_class,
    relation_matrix,
    standard_duals,
    torus_braid,
)
from platcalc.words import GroupContext, format_word, parse_word

G12 = GroupContext(genus=1, strands=2)


def test_torus_braid_frozen():
    assert format_word(torus_braid(5, 2)) == "b1^-1 a1^3 b1^-1 a1^2"
    assert format_word(torus_braid(4, 1)) == "b1^-1 a1^4"
    assert format_word(torus_braid(3, 2)) == "b1^-1 a1^2 b1^-1 a1"
    assert format_word(torus_braid(1, 0)) == "a1"
    assert format_word(torus_braid(0, 1)) == "b1"


@pytest.mark.parametrize("p,q", [(4, 2), (0, 0), (6, 3)])
def test_torus_braid_rejects_non_coprime(p, q):
    with pytest.raises(ValueError):
        torus_braid(p, q)


@pytest.mark.parametrize("p,q", [(1, 1), (2, 3), (0, 2), (-1, 1), (3, -1)])
def test_torus_braid_rejects_unsupported(p, q):
    with pytest.raises(ValueError):
        torus_braid(p, q)


def test_torus_braid_winding_and_knottedness():
    for p in range(1, 16):
        for q in range(1, p):
            if math.gcd(p, q) != 1:
                continue
            w = torus_braid(p, q)
            total = tuple(sum(col) for col in zip(*winding_table(w)))
            assert total == (p, -q)
            assert len(plat_components(w)) == 1


def test_lens_space_presentation():
    m = lens_space(5, 2)
    assert m.label == "L(5,2)"
    assert m.genus == 1
    assert format_word(m.attaching_words[0]) == "b1^-1 a1^3 b1^-1 a1^2"
    assert format_word(m.dual_words[0]) == "b1"
    assert m.has_standard_duals
    assert relation_matrix(m) == ((5, -2), (0, 1))


def test_h1_catalog():
    assert str(h1_of_manifold(lens_space(5, 2))) == "Z/5"
    assert str(h1_of_manifold(lens_space(0, 1))) == "Z"
    assert str(h1_of_manifold(lens_space(1, 0))) == "0"
    assert h1_of_manifold(lens_space(7, 3)) == HomologyGroup(0, (7,))
    for p in range(1, 16):
        for q in range(1, p):
            if math.gcd(p, q) == 1:
                h = h1_of_manifold(lens_space(p, q))
                assert h.free_rank == 0
                assert math.prod(h.torsion) == p


def test_h1_genus2_and_genus0():
    ctx = GroupContext(genus=2, strands=2)
    m = ManifoldPresentation(
        genus=2,
        attaching_words=(parse_word("a1", ctx), parse_word("a2", ctx)),
        dual_words=standard_duals(2),
    )
    assert str(h1_of_manifold(m)) == "0"
    sphere = ManifoldPresentation(genus=0, attaching_words=(), dual_words=())
    assert str(h1_of_manifold(sphere)) == "0"

    doubled = ManifoldPresentation(
        genus=1,
        attaching_words=(parse_word("a1^2", G12),),
        dual_words=standard_duals(1),
    )
    assert str(h1_of_manifold(doubled)) == "Z/2"


def test_homology_group_validation():
    with pytest.raises(ValueError):
        HomologyGroup(-1, ())
    with pytest.raises(ValueError):
        HomologyGroup(0, (1,))
    with pytest.raises(ValueError):
        HomologyGroup(0, (4, 6))
    assert str(HomologyGroup(2, (2, 4))) == "Z^2 x Z/2 x Z/4"


def test_class_reduction_in_lens_space():
    m = lens_space(5, 2)
    # representative depends on the Smith transform but is deterministic;
    # the {v,-v} pair of a1's closure is +-1 mod 5
    assert reduce_class(m, (1, 0)) == (1,)
    assert reduce_class(m, (5, 0)) == (0,)
    assert reduce_class(m, (-1, 0)) == (1,)
    assert reduce_class(m, (2, 0)) == (2,)
    assert reduce_class(m, (3, 0)) == (2,)  # -3 = 2 mod 5; pair rep is the smaller

    r = closure_report(parse_word("a1", G12))
    assert class_in_manifold(r, m) == ((1,),)
    r5 = closure_report(parse_word("a1^5", G12))
    assert class_in_manifold(r5, m) == ((0,),)


def test_class_reduction_trivial_and_free():
    s3 = lens_space(1, 0)
    r = closure_report(parse_word("a1^3 b1^2", G12))
    assert class_in_manifold(r, s3) == ((),)
    s2xs1 = lens_space(0, 1)
    # b1 dies, a1 survives as the free generator
    assert reduce_class(s2xs1, (0, 1)) == (0,)
    assert reduce_class(s2xs1, (3, 1)) == (3,)
    with pytest.raises(ValueError):
        class_in_manifold(closure_report(parse_word("s1", GroupContext(0, 2))), s3)
    with pytest.raises(ValueError):
        reduce_class(s3, (1, 0, 0))


def test_manifold_validation():
    with pytest.raises(ValueError):
        ManifoldPresentation(genus=1, attaching_words=(), dual_words=standard_duals(1))
    with pytest.raises(ValueError):
        ManifoldPresentation(
            genus=1,
            attaching_words=(parse_word("a1", GroupContext(1, 2)),),
            dual_words=(parse_word("b1", GroupContext(2, 2)),),
        )


def test_config_parsing():
    m = parse_manifold_config(
        """
        # two-handle example
        genus: 2
        c1: a1
        c2: b2^-1 a2
        cstar2: b2
        label: example
        """
    )
    assert m.genus == 2
    assert m.label == "example"
    assert format_word(m.attaching_words[1]) == "b2^-1 a2"
    assert format_word(m.dual_words[0]) == "b1"

    sphere = parse_manifold_config("genus: 0")
    assert sphere.genus == 0

    with pytest.raises(ValueError):
        parse_manifold_config("c1: a1")
    with pytest.raises(ValueError):
        parse_manifold_config("genus: 1")
    with pytest.raises(ValueError):
        parse_manifold_config("genus: 1\nc1: a1\ncstar2: b1")
    with pytest.raises(ValueError):
        parse_manifold_config("genus: 1\nc1: a1\nbogus: 3")
    with pytest.raises(ValueError):
        parse_manifold_config("genus: x\nc1: a1")
    with pytest.raises(ValueError):
        parse_manifold_config("genus: 1\nc1: q9")
