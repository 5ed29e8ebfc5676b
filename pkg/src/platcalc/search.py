"""Bounded bidirectional search over the plat move calculus.

Words are keyed by their free reduction; every edge carries the literal
move list that realizes it (a relation application is followed by the
explicit cancellations it enables), so a found path replays exactly.
"""

from __future__ import annotations

import dataclasses
import itertools
import time
from concurrent.futures import ThreadPoolExecutor

from .invariants import closure_report
from .manifolds import ManifoldPresentation, class_in_manifold
from .moves import (MMove, RelMove, SlideMove, StabMove,
                    free_reduce_with_moves, invert_witness)
from .presentation import Direction, apply_relation, relation_matches, relator_catalog
from .words import BraidWord, free_reduce

FOUND = "found"
DISTINGUISHED = "distinguished by invariant"
EXHAUSTED = "bounds exhausted"


@dataclasses.dataclass(frozen=True, slots=True)
class SearchConfig:
    max_depth: int = 6
    max_strands: int = 8
    max_word_length: int = 40
    node_budget: int = 20_000
    threads: int = 1

    def __post_init__(self) -> None:
        if min(self.max_depth, self.max_strands, self.max_word_length,
               self.node_budget, self.threads) < 1:
            raise ValueError("search bounds must all be positive")
        if self.max_strands % 2:
            raise ValueError("max_strands must be even")


@dataclasses.dataclass(frozen=True, slots=True)
class SearchStats:
    nodes_expanded: int
    frontier_a: int
    frontier_b: int
    elapsed: float


@dataclasses.dataclass(frozen=True, slots=True)
class SearchResult:
    equivalent: bool
    witness: "tuple | None"
    reason: str
    stats: SearchStats


def _key(word: BraidWord):
    return word.context.pairs, word.letters


def invariant_profile(word: BraidWord, m: ManifoldPresentation):
    """Component count plus the H1(M)-reduced class multiset."""
    report = closure_report(word)
    return len(report.components), class_in_manifold(report, m)


def neighbors(word: BraidWord, m: ManifoldPresentation, cfg: SearchConfig):
    """Single-move successors, each as (move list, reduced word).

    Deterministic order: M1..M5 blocks, M6 both ways, slides, then
    relation rewrites in catalog order, both directions, by position.
    """
    ctx = word.context
    out = []

    def keep(moves, result):
        if len(result) <= cfg.max_word_length:
            out.append((moves, result))

    mtags = [("M1", (None,))]
    if ctx.strands >= 4:
        mtags.append(("M2", range(1, ctx.pairs)))
        mtags.append(("M3", (None,)))
    mtags.append(("M4", range(1, ctx.genus + 1)))
    mtags.append(("M5", range(1, ctx.genus + 1)))
    for tag, indices in mtags:
        for index in indices:
            for side in "LR":
                for sign in (1, -1):
                    move = MMove(tag, index, side, sign)
                    keep((move,), move.apply(word))
    if ctx.strands + 2 <= cfg.max_strands:
        for k in range(1, ctx.pairs + 1):
            move = StabMove(k, 1)
            keep((move,), move.apply(word))
    for k in range(1, ctx.pairs):
        move = StabMove(k, -1)
        try:
            keep((move,), move.apply(word))
        except ValueError:
            continue
    for dual in (False, True):
        for i in range(1, ctx.genus + 1):
            for sign in (1, -1):
                move = SlideMove(dual, i, sign)
                keep((move,), move.apply(word, m))
    for rel in relator_catalog(ctx):
        for direction in (Direction.FORWARD, Direction.BACKWARD):
            for pos in relation_matches(word, rel, direction):
                raw = apply_relation(word, rel, pos, direction)
                reduced, cancels = free_reduce_with_moves(raw)
                keep((RelMove(rel.name, pos, direction), *cancels), reduced)
    return out


def _splice(tree_a, tree_b, meet):
    forward = []
    node = meet
    while tree_a[node][0] is not None:
        parent, edge, _ = tree_a[node]
        forward.append(edge)
        node = parent
    forward.reverse()
    backward = []
    node = meet
    while tree_b[node][0] is not None:
        parent, edge, _ = tree_b[node]
        backward.append(invert_witness(edge))
        node = parent
    moves = []
    for edge in forward:
        moves.extend(edge)
    for edge in backward:
        moves.extend(edge)
    return tuple(moves)


def search_equivalent(a: BraidWord, b: BraidWord, m: ManifoldPresentation,
                      cfg: SearchConfig | None = None) -> SearchResult:
    """Semi-decide plat equivalence of a and b over m within bounds."""
    cfg = cfg or SearchConfig()
    if a.context.genus != b.context.genus:
        raise ValueError("words must share a genus")
    if a.context.genus != m.genus:
        raise ValueError("manifold genus does not match the words")
    if max(a.context.strands, b.context.strands) > cfg.max_strands:
        raise ValueError("inputs already exceed max_strands")
    started = time.monotonic()
    a, b = free_reduce(a), free_reduce(b)

    def done(equivalent, witness, reason, expanded, fa, fb):
        stats = SearchStats(expanded, fa, fb, time.monotonic() - started)
        return SearchResult(equivalent, witness, reason, stats)

    if _key(a) == _key(b):
        return done(True, (), FOUND, 0, 0, 0)
    if invariant_profile(a, m) != invariant_profile(b, m):
        return done(False, None, DISTINGUISHED, 0, 0, 0)

    # tree: key -> (parent key, edge moves, depth); roots have no parent.
    tree_a = {_key(a): (None, (), 0)}
    tree_b = {_key(b): (None, (), 0)}
    frontier_a, frontier_b = [a], [b]
    depth_a = depth_b = 0
    expanded = 0
    pool = ThreadPoolExecutor(cfg.threads) if cfg.threads > 1 else None
    try:
        while frontier_a or frontier_b:
            if depth_a + depth_b >= cfg.max_depth:
                break
            if expanded >= cfg.node_budget:
                break
            if frontier_b and (not frontier_a or len(frontier_b) <= len(frontier_a)):
                side, other = tree_b, tree_a
                frontier, new_depth = frontier_b, depth_b + 1
            else:
                side, other = tree_a, tree_b
                frontier, new_depth = frontier_a, depth_a + 1
            batch = frontier[:max(0, cfg.node_budget - expanded)]
            expanded += len(batch)
            if pool is None:
                expansions = [neighbors(w, m, cfg) for w in batch]
            else:
                expansions = list(pool.map(lambda w: neighbors(w, m, cfg), batch))
            next_frontier = []
            meet = None
            for parent_word, edges in zip(batch, expansions):
                parent_key = _key(parent_word)
                for edge, child in edges:
                    child_key = _key(child)
                    if child_key in side:
                        continue
                    side[child_key] = (parent_key, edge, new_depth)
                    next_frontier.append(child)
                    if child_key in other and meet is None:
                        meet = child_key
                if meet is not None:
                    break
            if side is tree_a:
                frontier_a, depth_a = next_frontier, new_depth
            else:
                frontier_b, depth_b = next_frontier, new_depth
            if meet is not None:
                witness = _splice(tree_a, tree_b, meet)
                return done(True, witness, FOUND, expanded,
                            len(frontier_a), len(frontier_b))
    finally:
        if pool is not None:
            pool.shutdown(wait=False)
    return done(False, None, EXHAUSTED, expanded,
                len(frontier_a), len(frontier_b))
