"""Handle-letter elimination with replayable witnesses.

remove_b rewrites a word over a manifold with standard dual curves until
no b-letters remain, remove_a_s3 further strips a-letters over the
trivial torus filling, and shorten is a bounded greedy length reducer.
Each transformation returns the exact move sequence that realizes it.

The eliminator works in three layers.  A deterministic layer walks the
last b-letter rightward through scripted window rules until an inverse
dual slide can shed it at the word end.  Window shapes the rules cannot
cross are matched against a table of crossing chains, recorded once on
two strands and replayed behind any prefix at any strand count.  Novel
shapes fall back to a bounded search over canonically ordered packed
words whose result is lifted to moves and cached for later words.
"""
from __future__ import annotations

import dataclasses
import functools
import heapq
import itertools
import random
import time

from .manifolds import ManifoldPresentation, lens_space
from .moves import (MMove, PairMove, RelMove, SlideMove, StabMove,
                    free_reduce_with_moves, mmove_word, parse_move,
                    replay_witness)
from .presentation import Direction, relator_catalog
from .words import (BraidWord, GroupContext, Kind, Letter, embed,
                    free_reduce, gen_a, gen_b, invert, parse_word, sigma)


# ---------------------------------------------------------------------------
# scripted window rules
#
# A rule rewrites a letter window lhs -> rhs and carries a move script
# (pair insertions, relation applications, cancellations only) whose
# positions are relative to the window start, so it can be applied at
# any position of any word.  Orientations are expanded mechanically and
# every produced rule is replay-validated on padded words.


@dataclasses.dataclass(frozen=True)
class Rule:
    name: str
    lhs: tuple
    rhs: tuple
    script: tuple


def shift_script(script, by):
    out = []
    for mv in script:
        if isinstance(mv, (RelMove, PairMove)):
            out.append(dataclasses.replace(mv, position=mv.position + by))
        else:
            raise ValueError("rule scripts may only hold window-local moves")
    return tuple(out)


def reverse_rule(rule):
    script = tuple(mv.inverted() for mv in reversed(rule.script))
    return Rule(rule.name + "~rev", rule.rhs, rule.lhs, script)


def invert_rule(ctx, rule):
    """Rule for inv(lhs) -> inv(rhs), window-wrapped through the base."""
    l, r = rule.lhs, rule.rhs
    m = len(r)
    moves = [PairMove(True, j, r[m - 1 - j].inverse()) for j in range(m)]
    moves.extend(shift_script(reverse_rule(rule).script, m))
    zone = BraidWord(ctx, l + tuple(x.inverse() for x in reversed(l)))
    _, cancels = free_reduce_with_moves(zone)
    moves.extend(PairMove(False, c.position + m, c.letter) for c in cancels)
    inv_l = tuple(x.inverse() for x in reversed(l))
    inv_r = tuple(x.inverse() for x in reversed(r))
    return Rule(rule.name + "~inv", inv_l, inv_r, tuple(moves))


def validate_rule(ctx, rule, manifold, trials=8, seed=11):
    rng = random.Random(seed)
    alphabet = [sigma(i, s) for i in range(1, ctx.strands) for s in (1, -1)]
    for r in range(1, ctx.genus + 1):
        alphabet += [gen_a(r, 1), gen_a(r, -1), gen_b(r, 1), gen_b(r, -1)]
    for trial in range(trials):
        pre = tuple(rng.choice(alphabet) for _ in range(rng.randrange(4)))
        suf = tuple(rng.choice(alphabet) for _ in range(rng.randrange(4)))
        src = BraidWord(ctx, pre + rule.lhs + suf)
        script = shift_script(rule.script, len(pre))
        try:
            out = replay_witness(src, script, manifold)
        except Exception as exc:
            raise AssertionError(f"{rule.name}: replay failed: {exc}")
        want = pre + rule.rhs + suf
        if out.letters != want:
            raise AssertionError(f"{rule.name}: got {out.letters}, want {want}")
    return rule


def variant_script(ctx, x, y, pos=0):
    """Script for derived rewrite x -> y when one relation bridges them."""
    inv_y = tuple(c.inverse() for c in reversed(y))
    zone = inv_y + x
    for rel in relator_catalog(ctx):
        for d in (Direction.FORWARD, Direction.BACKWARD):
            src, dst = ((rel.lhs.letters, rel.rhs.letters)
                        if d is Direction.FORWARD
                        else (rel.rhs.letters, rel.lhs.letters))
            for q in range(len(zone) - len(src) + 1):
                if zone[q:q + len(src)] != src:
                    continue
                after = zone[:q] + dst + zone[q + len(src):]
                if free_reduce(BraidWord(ctx, after)).letters:
                    continue
                moves = [PairMove(True, pos + j, y[j]) for j in range(len(y))]
                moves.append(RelMove(rel.name, pos + len(y) + q, d))
                _, cancels = free_reduce_with_moves(BraidWord(ctx, after))
                moves.extend(PairMove(False, c.position + pos + len(y),
                                      c.letter) for c in cancels)
                return tuple(moves)
    return None


def _parse_letters(text, ctx):
    return parse_word(text, ctx).letters if text else ()


# Window rewrites that push a b-letter rightward past a neighbouring
# sigma_1/a pair in one shot; their scripts cannot be found by a single
# bridging relation.  Positions are relative to the window start; the
# templates are written for handle 1 and re-lettered per handle.
_PUSH_TABLE = [
    ("push-pp", "b1 s1^-1 a1", "s1^-1 a1 s1^-1 b1 s1^-1",
     [("ins", 3, "s1"), ("rel", "R4", 0, Direction.BACKWARD)]),
    ("push-pn", "b1 s1^-1 a1^-1", "s1 a1^-1 s1 b1 s1^-1",
     [("ins", 0, "s1"), ("ins", 1, "a1^-1"), ("ins", 2, "s1"),
      ("rel", "R4", 3, Direction.FORWARD),
      ("can", 6, "s1"), ("can", 5, "a1")]),
    ("push-np", "b1^-1 s1^-1 a1", "s1^-1 a1 s1 b1^-1 s1",
     [("ins", 3, "s1^-1"), ("ins", 4, "b1"),
      ("rel", "R4", 1, Direction.FORWARD), ("can", 0, "b1^-1")]),
    ("push-nn", "b1^-1 s1 a1^-1", "s1^-1 a1^-1 s1 b1^-1 s1^-1",
     [("ins", 0, "s1^-1"), ("ins", 1, "a1^-1"), ("ins", 2, "s1"),
      ("ins", 3, "b1^-1"), ("rel", "R4", 4, Direction.BACKWARD),
      ("can", 7, "b1"), ("can", 6, "s1^-1"), ("can", 5, "a1")]),
]


def _push_rules(ctx):
    out = []
    for r in range(1, ctx.genus + 1):
        def reletter(text):
            return text.replace("a1", f"a{r}").replace("b1", f"b{r}")
        for name, lhs_t, rhs_t, steps in _PUSH_TABLE:
            script = []
            for step in steps:
                if step[0] == "ins":
                    script.append(PairMove(
                        True, step[1], _parse_letters(reletter(step[2]), ctx)[0]))
                elif step[0] == "can":
                    script.append(PairMove(
                        False, step[1], _parse_letters(reletter(step[2]), ctx)[0]))
                else:
                    script.append(RelMove(f"R4(r={r})", step[2], step[3]))
            out.append(Rule(f"{name}(r={r})",
                            _parse_letters(reletter(lhs_t), ctx),
                            _parse_letters(reletter(rhs_t), ctx),
                            tuple(script)))
    return out


def lam_word(ctx):
    k = ctx.strands
    return tuple(sigma(i) for i in list(range(1, k)) + list(range(k - 1, 0, -1)))


def ladder_rules(ctx):
    """Crossings of b past a driven by the genus-1 total relation."""
    if ctx.genus != 1:
        return []
    lam = lam_word(ctx)
    inv_lam = tuple(x.inverse() for x in reversed(lam))
    a, an = (gen_a(1, 1),), (gen_a(1, -1),)
    b, bn = (gen_b(1, 1),), (gen_b(1, -1),)
    shapes = [
        ("ladder-np", bn + a, inv_lam + a + bn),
        ("ladder-pn", b + an, an + b + inv_lam),
    ]
    out = []
    for name, lhs, rhs in shapes:
        script = variant_script(ctx, lhs, rhs)
        if script is None:
            continue
        out.append(Rule(name, lhs, rhs, script))
    nn_script = (PairMove(True, 0, gen_a(1, -1)), PairMove(True, 4, gen_b(1)),
                 RelMove("TR", 1, Direction.FORWARD))
    out.append(Rule("ladder-nn", bn + an, an + lam + bn, nn_script))
    return out


def mixed_swap_rules(ctx):
    """Sign-mixed forms of every two-letter transposition relator.

    A relator x y -> y x only matches positive windows; conjugating one
    factor by an inserted pair covers (x, y^-1) and (x^-1, y) too.
    """
    out = []
    for rel in relator_catalog(ctx):
        L, R = rel.lhs.letters, rel.rhs.letters
        if len(L) != 2 or len(R) != 2 or R != (L[1], L[0]):
            continue
        x, y = L
        out.append(Rule(
            rel.name + "~mx1", (x, y.inverse()), (y.inverse(), x),
            (PairMove(True, 0, y.inverse()),
             RelMove(rel.name, 1, Direction.BACKWARD),
             PairMove(False, 2, y))))
        out.append(Rule(
            rel.name + "~mx2", (x.inverse(), y), (y, x.inverse()),
            (PairMove(True, 2, x),
             RelMove(rel.name, 1, Direction.BACKWARD),
             PairMove(False, 0, x.inverse()))))
    return out


@functools.lru_cache(maxsize=None)
def scripted_rules(genus, strands, validate=True):
    """All usable window rules for this context, orientation-expanded."""
    ctx = GroupContext(genus, strands)
    base = []
    for rel in relator_catalog(ctx):
        base.append(Rule(rel.name, rel.lhs.letters, rel.rhs.letters,
                         (RelMove(rel.name, 0, Direction.FORWARD),)))
    base.extend(mixed_swap_rules(ctx))
    base.extend(_push_rules(ctx))
    base.extend(ladder_rules(ctx))
    rules = []
    for rule in base:
        rules.append(rule)
        rules.append(reverse_rule(rule))
        inv = invert_rule(ctx, rule)
        rules.append(inv)
        rules.append(reverse_rule(inv))
    if validate:
        m = lens_space(5, 1) if genus == 1 else _validation_manifold(genus)
        for rule in rules:
            validate_rule(ctx, rule, m)
    seen = {}
    for rule in rules:
        seen.setdefault((rule.lhs, rule.rhs), rule)
    return tuple(sorted(seen.values(), key=lambda r: r.name))


def _validation_manifold(genus):
    from .manifolds import standard_duals
    ctx = GroupContext(genus, 2)
    attach = tuple(BraidWord(ctx, (gen_a(r),)) for r in range(1, genus + 1))
    return ManifoldPresentation(genus, attach, standard_duals(genus))


# ---------------------------------------------------------------------------
# packed-word canonical form and bounded zone search (genus 1)
#
# Search states are byte strings: one letter per byte, kind<<5 | index<<1
# | (sign>0), held in a canonical order where commuting letters are
# bubble-sorted ascending.  Dedup, matching and hashing then run at C
# speed, which is what makes the fallback search affordable.

_KIND_NUM = {Kind.SIGMA: 0, Kind.A: 1, Kind.B: 2}
_NUM_KIND = {0: Kind.SIGMA, 1: Kind.A, 2: Kind.B}


def _pack_letter(letter):
    return (_KIND_NUM[letter.kind] << 5) | (letter.index << 1) | (
        1 if letter.sign > 0 else 0)


def _pack(letters):
    return bytes(_pack_letter(l) for l in letters)


def _unpack(packed):
    return tuple(Letter(_NUM_KIND[c >> 5], (c >> 1) & 15, 1 if c & 1 else -1)
                 for c in packed)


_KEY = [None] * 256
_COMM = [[False] * 256 for _ in range(256)]
for _c in range(256):
    _k, _i, _s = _c >> 5, (_c >> 1) & 15, _c & 1
    _KEY[_c] = (0 if _k == 0 else 1, _k, _i, _s)
for _x in range(256):
    for _y in range(256):
        _kx, _ix = _x >> 5, (_x >> 1) & 15
        _ky, _iy = _y >> 5, (_y >> 1) & 15
        if _kx == 0 and _ky == 0:
            _COMM[_x][_y] = abs(_ix - _iy) >= 2
        elif _kx == 0:
            _COMM[_x][_y] = _ix >= 2
        elif _ky == 0:
            _COMM[_x][_y] = _iy >= 2
del _c, _k, _i, _s, _x, _y, _kx, _ix, _ky, _iy


def _reduce_bytes(bs):
    out = []
    for c in bs:
        if out and out[-1] == c ^ 1:
            out.pop()
        else:
            out.append(c)
    return bytes(out)


def _canon_bytes(bs):
    bs = _reduce_bytes(bs)
    while True:
        arr = list(bs)
        changed = True
        while changed:
            changed = False
            for i in range(1, len(arr)):
                j = i
                while (j > 0 and _COMM[arr[j - 1]][arr[j]]
                       and _KEY[arr[j]] < _KEY[arr[j - 1]]):
                    arr[j - 1], arr[j] = arr[j], arr[j - 1]
                    j -= 1
                    changed = True
        out = _reduce_bytes(bytes(arr))
        if out == bs:
            return out
        bs = out


def _b_count(bs):
    return sum(1 for c in bs if c >> 5 == 2)


def _a_count(bs):
    return sum(1 for c in bs if c >> 5 == 1)


class _SearchTables:
    """Byte-level rewrite and move tables for one genus-1 strand count."""

    def __init__(self, pairs):
        ctx = GroupContext(1, 2 * pairs)
        self.rules = {}
        for rule in scripted_rules(1, 2 * pairs):
            key = _pack_letter(rule.lhs[0])
            self.rules.setdefault(key, []).append(
                (_pack(rule.lhs), _pack(rule.rhs)))
        mwords = []
        for tag, idxs in (("M1", [None]), ("M2", range(1, pairs)),
                          ("M3", [None] if pairs >= 2 else []),
                          ("M4", [1]), ("M5", [1])):
            for idx in idxs:
                w = mmove_word(tag, ctx, idx)
                mwords.append(_pack(w.letters))
                mwords.append(_pack(invert(w).letters))
        self.mwords = tuple(mwords)
        self.b_plus = _pack((gen_b(1, 1),))
        self.b_minus = _pack((gen_b(1, -1),))
        self.a_plus = _pack((gen_a(1, 1),))
        self.a_minus = _pack((gen_a(1, -1),))
        self.stab_letter = bytes([_pack_letter(sigma(2 * pairs))])


_SEARCH_TABLES = {}


def _tables_for(pairs):
    if pairs not in _SEARCH_TABLES:
        _SEARCH_TABLES[pairs] = _SearchTables(pairs)
    return _SEARCH_TABLES[pairs]


def _edges_right(node, max_len, max_pairs):
    """Successors for suffix zones: appends act at the word end."""
    pairs, t = node
    tb = _tables_for(pairs)
    n = len(t)
    for p in range(n):
        for lhs, rhs in tb.rules.get(t[p], ()):
            w = len(lhs)
            if t[p:p + w] == lhs and n - w + len(rhs) <= max_len + 8:
                yield pairs, t[:p] + rhs + t[p + w:]
    for mw in tb.mwords:
        if n + len(mw) <= max_len + 8:
            yield pairs, t + mw
    yield pairs, t + tb.b_plus
    yield pairs, t + tb.b_minus
    if pairs < max_pairs and n + 1 <= max_len:
        yield pairs + 1, t + tb.stab_letter
    if pairs > 1 and t:
        down = _tables_for(pairs - 1).stab_letter[0]
        if t[-1] == down and all(
                c >> 5 != 0 or c < down - 1 for c in t[:-1]):
            yield pairs - 1, t[:-1]


def _edges_left(node, max_len, attach):
    """Successors for prefix zones: appends act at the word head."""
    pairs, t = node
    tb = _tables_for(pairs)
    n = len(t)
    for p in range(n):
        for lhs, rhs in tb.rules.get(t[p], ()):
            w = len(lhs)
            if t[p:p + w] == lhs and n - w + len(rhs) <= max_len + 8:
                yield pairs, t[:p] + rhs + t[p + w:]
    for mw in tb.mwords:
        if n + len(mw) <= max_len + 8:
            yield pairs, mw + t
    yield pairs, attach + t
    yield pairs, bytes(c ^ 1 for c in reversed(attach)) + t


class SearchExhausted(RuntimeError):
    """Raised when the bounded fallback search runs out of budget."""


def _peel_zone(zone_letters, start_pairs, goal_suffixes,
               budget, max_len, max_pairs, heap_cap=400_000):
    """Search for a state with fewer b-letters or a known chain suffix.

    Returns the canonical state path from the zone to the first state
    that drops a b-letter or ends in a frozen-chain base shape.
    """
    start = (start_pairs, _canon_bytes(_pack(zone_letters)))
    want = _b_count(start[1]) - 1

    def is_goal(t):
        if _b_count(t) <= want:
            return True
        for suf in goal_suffixes:
            if t.endswith(suf) and t != start[1] and _b_count(t[:-len(suf)]) == 0:
                return True
        return False

    counter = itertools.count(1)
    tree = {start: None}
    heap = [(_b_count(start[1]), len(start[1]), 0, start)]
    popped = 0
    while heap and popped < budget:
        _, _, _, node = heapq.heappop(heap)
        popped += 1
        if len(heap) > heap_cap:
            heap = heap[:heap_cap // 2]
            heapq.heapify(heap)
        for cp, craw in _edges_right(node, max_len, max_pairs):
            ct = _canon_bytes(craw)
            if len(ct) > max_len:
                continue
            child = (cp, ct)
            if child in tree:
                continue
            tree[child] = node
            if is_goal(ct):
                return _chain_of(tree, child), popped
            heapq.heappush(heap, (_b_count(ct), len(ct),
                                  next(counter), child))
    raise SearchExhausted(
        f"no crossing found within {popped} expansions for zone "
        f"{BraidWord(GroupContext(1, 2 * start_pairs), tuple(zone_letters))}")


def _peel_prefix(zone_letters, start_pairs, budget, max_len,
                 heap_cap=400_000):
    """Search for a state with fewer a-letters, prefix-anchored."""
    attach = _pack((gen_a(1, 1),))
    start = (start_pairs, _canon_bytes(_pack(zone_letters)))
    want = _a_count(start[1]) - 1
    counter = itertools.count(1)
    tree = {start: None}
    heap = [(_a_count(start[1]), len(start[1]), 0, start)]
    popped = 0
    while heap and popped < budget:
        _, _, _, node = heapq.heappop(heap)
        popped += 1
        if len(heap) > heap_cap:
            heap = heap[:heap_cap // 2]
            heapq.heapify(heap)
        for cp, craw in _edges_left(node, max_len, attach):
            ct = _canon_bytes(craw)
            if len(ct) > max_len:
                continue
            child = (cp, ct)
            if child in tree:
                continue
            tree[child] = node
            if _a_count(ct) <= want:
                return _chain_of(tree, child), popped
            heapq.heappush(heap, (_a_count(ct), len(ct),
                                  next(counter), child))
    raise SearchExhausted(
        f"no head clearing found within {popped} expansions for zone "
        f"{BraidWord(GroupContext(1, 2 * start_pairs), tuple(zone_letters))}")


def _chain_of(tree, hit):
    seq = []
    key = hit
    while key is not None:
        seq.append(key)
        key = tree[key]
    return list(reversed(seq))


# ---------------------------------------------------------------------------
# lifting searched state paths to verified move scripts


def _letter_key(l):
    return (0 if l.kind is Kind.SIGMA else 1, _KIND_NUM[l.kind], l.index,
            1 if l.sign > 0 else 0)


def _letters_commute(x, y):
    if x.kind is Kind.SIGMA and y.kind is Kind.SIGMA:
        return abs(x.index - y.index) >= 2
    if x.kind is Kind.SIGMA:
        return x.index >= 2
    if y.kind is Kind.SIGMA:
        return y.index >= 2
    return False


@functools.lru_cache(maxsize=None)
def _swap_lookup(genus, strands):
    table = {}
    for rule in scripted_rules(genus, strands):
        if (len(rule.lhs) == 2 and len(rule.rhs) == 2
                and rule.lhs == (rule.rhs[1], rule.rhs[0])):
            table.setdefault(rule.lhs, rule.script)
    return table


def _canon_bridge(word, base=0):
    """Moves that bring word[base:] into canonical order, mirroring
    _canon_bytes; swap scripts are applied through the rule registry."""
    ctx = word.context
    swaps = _swap_lookup(ctx.genus, ctx.strands)
    moves = []
    while True:
        head = word.letters[:base]
        reduced, cancels = free_reduce_with_moves(
            BraidWord(ctx, word.letters[base:]))
        moves.extend(shift_script(tuple(cancels), base)
                     if cancels else ())
        letters = list(reduced.letters)
        swapped = False
        changed = True
        while changed:
            changed = False
            for i in range(1, len(letters)):
                j = i
                while (j > 0 and _letters_commute(letters[j - 1], letters[j])
                       and _letter_key(letters[j]) < _letter_key(letters[j - 1])):
                    x, y = letters[j - 1], letters[j]
                    hit = swaps.get((x, y))
                    if hit is not None:
                        moves.extend(shift_script(hit, base + j - 1))
                    else:
                        script = variant_script(ctx, (x, y), (y, x), base + j - 1)
                        if script is None:
                            raise SearchExhausted(
                                f"no swap script for {x.token()} {y.token()}")
                        moves.extend(script)
                    letters[j - 1], letters[j] = y, x
                    j -= 1
                    changed = True
                    swapped = True
        word = BraidWord(ctx, head + tuple(letters))
        if not swapped and not cancels:
            return word, moves


def _edge_candidates(word, side):
    """Single-edge move realizations the searcher may have taken."""
    ctx = word.context
    for rule in scripted_rules(ctx.genus, ctx.strands):
        w = len(rule.lhs)
        for p in range(len(word.letters) - w + 1):
            if word.letters[p:p + w] == rule.lhs:
                yield list(shift_script(rule.script, p))
    for tag, idxs in (("M1", [None]), ("M2", range(1, ctx.pairs)),
                      ("M3", [None] if ctx.strands >= 4 else []),
                      ("M4", range(1, ctx.genus + 1)),
                      ("M5", range(1, ctx.genus + 1))):
        for idx in idxs:
            for sign in (1, -1):
                yield [MMove(tag, idx, side, sign)]
    if side == "R":
        yield [SlideMove(True, 1, 1)]
        yield [SlideMove(True, 1, -1)]
        yield [StabMove(ctx.pairs, 1)]
        if ctx.pairs > 1:
            yield [StabMove(ctx.pairs - 1, -1)]
    else:
        yield [SlideMove(False, 1, 1)]
        yield [SlideMove(False, 1, -1)]


def _lift_step(src_word, dst_pairs, dst_letters, manifold, side):
    dst_ctx = GroupContext(1, 2 * dst_pairs)
    for cand in _edge_candidates(src_word, side):
        try:
            out = src_word
            for mv in cand:
                out = mv.apply(out, manifold)
        except Exception:
            continue
        if out.context != dst_ctx:
            continue
        try:
            final, bridge = _canon_bridge(out)
        except SearchExhausted:
            continue
        if final.letters == dst_letters:
            return cand + bridge
    return None


def _lift_chain(states, manifold, side="R"):
    """Lift a list of (pairs, packed state) to an anchored chain record.

    The record holds, per step, the strand-pair count, the canonical
    state, and the verified move script reaching it from the previous
    state; replaying every script in order transforms the first state
    into the last exactly.
    """
    pairs0, packed0 = states[0]
    word = BraidWord(GroupContext(1, 2 * pairs0), _unpack(packed0))
    record = [(pairs0, word.letters, ())]
    for pairs, packed in states[1:]:
        letters = _unpack(packed)
        script = _lift_step(word, pairs, letters, manifold, side)
        if script is None:
            raise SearchExhausted(
                f"searched step has no move realization: "
                f"{BraidWord(GroupContext(1, 2 * pairs), letters)}")
        word = replay_witness(word, script, manifold)
        if word.letters != letters:
            raise SearchExhausted("searched step replayed to a different word")
        record.append((pairs, letters, tuple(script)))
    return tuple(record)


# ---------------------------------------------------------------------------
# recorded crossing chains and anchored replay
#
# A chain record is a tuple of (pairs, state letters, move script) rows.
# Row zero is the base state with an empty script; each later row's
# script transforms the previous state into that row's state exactly.
# Records are written for the bare zone on its own strands; anchored
# replay embeds them behind an arbitrary prefix at any strand count by
# shifting the window-local moves and verifying the zone after every
# step against the bare replay.


class ZoneMismatch(RuntimeError):
    """A chain replay collided with the prefix ahead of the zone."""


def _parse_record(rows):
    out = []
    for pairs, text, move_texts in rows:
        ctx = GroupContext(1, 2 * pairs)
        letters = parse_word(text, ctx).letters if text else ()
        out.append((pairs, letters, tuple(parse_move(t) for t in move_texts)))
    return tuple(out)


def replay_anchored(word, record, manifold):
    """Replay a chain record on the suffix zone of word.

    The record's base state must equal the word's trailing letters; the
    prefix ahead of it is arbitrary.  Window-local moves are shifted by
    the prefix length, end-anchored moves apply as recorded, and the
    realized suffix is compared with the bare replay after every step.
    """
    base_pairs, base_letters, _ = record[0]
    bare = BraidWord(GroupContext(1, 2 * base_pairs), base_letters)
    zone = len(word) - len(bare)
    if zone < 0 or tuple(word.letters[zone:]) != tuple(
            embed(bare, word.context).letters):
        raise ZoneMismatch("suffix does not match chain base state")
    applied = []
    for pairs, letters, moves in record[1:]:
        for mv in moves:
            next_bare = mv.apply(bare, manifold)
            if isinstance(mv, (RelMove, PairMove)):
                mv = dataclasses.replace(
                    mv, position=mv.position + len(word) - len(bare))
            word = mv.apply(word, manifold)
            applied.append(mv)
            bare = next_bare
        if len(word) < len(bare) or tuple(
                word.letters[len(word) - len(bare):]) != tuple(
                embed(bare, word.context).letters):
            raise ZoneMismatch(
                f"zone interference while replaying chain at state "
                f"{BraidWord(GroupContext(1, 2 * pairs), letters)}")
    return word, applied


def replay_prefix_anchored(word, record, manifold):
    """Replay a chain record on the leading zone of word.

    Mirror of replay_anchored: the record's base state must equal the
    word's leading letters, positions need no shift, and head-anchored
    moves apply as recorded.
    """
    base_pairs, base_letters, _ = record[0]
    bare = BraidWord(GroupContext(1, 2 * base_pairs), base_letters)
    if tuple(word.letters[:len(bare)]) != tuple(
            embed(bare, word.context).letters):
        raise ZoneMismatch("prefix does not match chain base state")
    applied = []
    for pairs, letters, moves in record[1:]:
        for mv in moves:
            bare = mv.apply(bare, manifold)
            word = mv.apply(word, manifold)
            applied.append(mv)
        if len(word) < len(bare) or tuple(
                word.letters[:len(bare)]) != tuple(
                embed(bare, word.context).letters):
            raise ZoneMismatch(
                f"zone interference while replaying chain at state "
                f"{BraidWord(GroupContext(1, 2 * pairs), letters)}")
    return word, applied


# Crossing chains recorded at two strands.  Keys name the zone shape;
# each base state is the exact suffix the chain consumes.  one-a
# crosses b past a single following a-letter, the wall chains cross
# the sigma_1-separated shapes the push rules miss, and pile-paa
# crosses b past a doubled a-letter.
_FROZEN_CHAIN_ROWS = {
    'one-a': (
        (1, 'b1 a1', ()),
        (1, 'b1 a1 s1^-1', ('M1(R,-)',)),
        (1, 'b1 s1 a1^-1', ('M4(j=1,R,-)',)),
        (1, 'b1 s1 a1^-1 s1', ('M1(R,+)',)),
        (1, 'b1 s1 a1^-1 s1 s1', ('M1(R,+)',)),
        (2, 'b1 s1 a1^-1 s1 s1 s2', ('M6(k=1,+)',)),
        (2, 'b1 s1 s2^-1 a1^-1', ('M3(R,-)', 'ins@4:a1', 'ins@5:s2', 'rel:R1.a(r=1,i=2)@4,→', 'cancel@3:s2^-1', 'cancel@2:a1^-1',)),
        (2, 'b1 s1 s2^-1 s1^-1 a1 s1^-1', ('M4(j=1,R,+)',)),
        (2, 'b1 s1 s2^-1 s1^-1 a1', ('M1(R,+)',)),
        (2, 'b1 s1 s2^-1 s1^-1 s2^-1 a1 s1^-1 s1^-1 s2^-1', ('M3(R,-)', 'ins@4:s2^-1', 'rel:R1.a(r=1,i=2)@5,←', 'cancel@6:s2',)),
        (2, 's2^-1 b1 s1^-1 a1 s1^-1 s1^-1 s2^-1', ('ins@5:s1', 'ins@6:s2', 'ins@7:s1', 'rel:BR1(i=1)@5,→', 'cancel@4:s2^-1', 'cancel@3:s1^-1', 'cancel@2:s2^-1', 'cancel@1:s1', 'ins@0:s2^-1', 'rel:R1.b(r=1,i=2)@1,←', 'cancel@2:s2',)),
        (2, 's2^-1 b1 s1^-1 s2 a1', ('M3(R,+)', 'rel:R1.a(r=1,i=2)@3,→',)),
        (2, 's2^-1 b1 s1^-1 a1 s1^-1 s3^-1 s2^-1', ('M2(i=1,R,-)', 'ins@4:s2^-1', 'rel:R1.a(r=1,i=2)@5,←', 'cancel@6:s2', 'cancel@3:s2',)),
        (2, 's2^-1 b1 s1^-1 a1 s1 s3^-1 s2', ('M3(R,+)', 'ins@7:s3', 'rel:BR2(i=1,j=3)@6,→', 'cancel@5:s3^-1', 'ins@8:s3', 'rel:BR2(i=1,j=3)@7,→', 'cancel@6:s3^-1', 'cancel@4:s1^-1',)),
        (2, 's2^-1 s1^-1 a1 s1^-1 s3^-1 s2 b1', ('rel:R4(r=1)@1,←', 'ins@4:s3^-1', 'rel:R1.b(r=1,i=3)@5,←', 'cancel@6:s3', 'rel:R1.b(r=1,i=2)@5,→',)),
        (2, 's2^-1 s1^-1 a1 s1^-1 s3^-1 s2', ('psl*(i=1,-)',)),
    ),
    'wall-psa': (
        (1, 'b1 s1 a1', ()),
        (1, 'b1 s1 a1 s1^-1', ('M1(R,-)',)),
        (1, 'b1 s1 s1 a1^-1', ('M4(j=1,R,-)',)),
        (1, 'b1 s1 s1 a1^-1 s1', ('M1(R,+)',)),
        (1, 'b1 s1 s1 a1^-1 s1 s1', ('M1(R,+)',)),
        (2, 'b1 s1 s1 a1^-1 s1 s1 s2', ('M6(k=1,+)',)),
        (2, 'b1 s1 s1 s2^-1 a1^-1', ('M3(R,-)', 'ins@5:a1', 'ins@6:s2', 'rel:R1.a(r=1,i=2)@5,→', 'cancel@4:s2^-1', 'cancel@3:a1^-1',)),
        (2, 'b1 s1 s1 s2^-1 s1^-1 a1 s1^-1', ('M4(j=1,R,+)',)),
        (2, 'b1 s1 s1 s2^-1 s1^-1 a1', ('M1(R,+)',)),
        (2, 'b1 s1 s1 s2^-1 s1^-1 s2^-1 a1 s1^-1 s1^-1 s2^-1', ('M3(R,-)', 'ins@5:s2^-1', 'rel:R1.a(r=1,i=2)@6,←', 'cancel@7:s2',)),
        (2, 'b1 s1 s2^-1 s1^-1 a1 s1^-1 s1^-1 s2^-1', ('ins@6:s1', 'ins@7:s2', 'ins@8:s1', 'rel:BR1(i=1)@6,→', 'cancel@5:s2^-1', 'cancel@4:s1^-1', 'cancel@3:s2^-1', 'cancel@2:s1',)),
        (2, 'b1 s1 s2^-1 s1^-1 s2 a1', ('M3(R,+)', 'rel:R1.a(r=1,i=2)@4,→',)),
        (2, 'b1 s1 s2^-1 s1^-1 a1 s1^-1 s3^-1 s2^-1', ('M2(i=1,R,-)', 'ins@5:s2^-1', 'rel:R1.a(r=1,i=2)@6,←', 'cancel@7:s2', 'cancel@4:s2',)),
        (2, 'b1 s1 s2^-1 s1^-1 s3^-1 a1 s1^-1 s2^-1', ('ins@7:s1', 'ins@8:s3', 'rel:BR2(i=1,j=3)@7,→', 'cancel@6:s3^-1', 'cancel@5:s1^-1', 'ins@4:s3^-1', 'rel:R1.a(r=1,i=3)@5,←', 'cancel@6:s3',)),
        (2, 'b1 s1 s2^-1 s1^-1 s3^-1 a1 s1^-1 s2^-1 s1^-1', ('M1(R,-)',)),
        (2, 'b1 s1 s2^-1 s1^-1 s3^-1 s2^-1 a1 s1^-1 s2^-1', ('ins@6:s2^-1', 'ins@7:s1^-1', 'ins@8:s2^-1', 'rel:BR1(i=1)@9,←', 'cancel@11:s1', 'cancel@10:s2', 'cancel@9:s1', 'ins@5:s2^-1', 'rel:R1.a(r=1,i=2)@6,←', 'cancel@7:s2',)),
        (2, 'b1 s1 s2^-1 s1^-1 s3^-1 s2^-1 a1 s1 s2', ('M3(R,+)',)),
        (2, 'b1 s1 s2^-1 s1^-1 s3^-1 s2^-1 s3^-1 s2^-1 a1', ('M2(i=1,R,-)', 'ins@6:s3^-1', 'rel:R1.a(r=1,i=3)@7,←', 'cancel@8:s3', 'ins@7:s2^-1', 'rel:R1.a(r=1,i=2)@8,←', 'cancel@9:s2',)),
        (2, 'b1 s1 s2^-1 s1^-1 s2^-1 s3^-1 s2^-1 s2^-1 a1', ('ins@7:s2', 'ins@8:s3', 'ins@9:s2', 'rel:BR1(i=2)@7,→', 'cancel@6:s3^-1', 'cancel@5:s2^-1', 'cancel@4:s3^-1',)),
        (2, 's2^-1 b1 s1^-1 s3^-1 s2^-1 s2^-1 a1', ('ins@5:s1', 'ins@6:s2', 'ins@7:s1', 'rel:BR1(i=1)@5,→', 'cancel@4:s2^-1', 'cancel@3:s1^-1', 'cancel@2:s2^-1', 'cancel@1:s1', 'ins@0:s2^-1', 'rel:R1.b(r=1,i=2)@1,←', 'cancel@2:s2',)),
        (2, 's2^-1 b1 s1^-1 s3^-1 s2^-1 a1 s1 s1 s2', ('M3(R,+)', 'rel:R1.a(r=1,i=2)@6,→', 'cancel@5:s2^-1',)),
        (2, 's2^-1 b1 s1^-1 s3^-1 s2^-1 a1 s1 s1 s2 s1', ('M1(R,+)',)),
        (2, 's2^-1 b1 s1^-1 s3^-1 s2^-1 a1 s1 s2 s1 s2', ('rel:BR1(i=1)@7,→',)),
        (2, 's2^-1 b1 s1^-1 s3^-1 a1 s1 s2 s2', ('rel:BR1(i=1)@6,→', 'rel:R1.a(r=1,i=2)@5,→', 'cancel@4:s2^-1',)),
        (2, 's2^-1 s3^-1 b1 s1^-1 a1 s1 s2 s2', ('ins@4:s1', 'ins@5:s3', 'rel:BR2(i=1,j=3)@4,→', 'cancel@3:s3^-1', 'cancel@2:s1^-1', 'ins@1:s3^-1', 'rel:R1.b(r=1,i=3)@2,←', 'cancel@3:s3',)),
        (2, 's2^-1 s1^-1 s3^-1 a1 s1^-1 s2 s2 b1', ('rel:R4(r=1)@2,←', 'ins@1:s1^-1', 'ins@2:s3^-1', 'rel:BR2(i=1,j=3)@3,←', 'cancel@4:s3', 'cancel@3:s1', 'rel:R1.b(r=1,i=2)@5,→', 'rel:R1.b(r=1,i=2)@6,→',)),
        (2, 's2^-1 s1^-1 s3^-1 a1 s1^-1 s2 s2', ('psl*(i=1,-)',)),
    ),
    'wall-psn': (
        (1, 'b1 s1 a1^-1', ()),
        (1, 'b1 s1 a1^-1 s1', ('M1(R,+)',)),
        (1, 'b1 s1 a1^-1 s1 s1', ('M1(R,+)',)),
        (2, 'b1 s1 a1^-1 s1 s1 s2', ('M6(k=1,+)',)),
        (2, 'b1 s1 s2^-1 a1^-1', ('M3(R,-)', 'ins@4:a1', 'ins@5:s2', 'rel:R1.a(r=1,i=2)@4,→', 'cancel@3:s2^-1', 'cancel@2:a1^-1',)),
        (2, 'b1 s1 s2^-1 s1^-1 a1 s1^-1', ('M4(j=1,R,+)',)),
        (2, 'b1 s1 s2^-1 s1^-1 a1', ('M1(R,+)',)),
        (2, 'b1 s1 s2^-1 s1^-1 s2^-1 a1 s1^-1 s1^-1 s2^-1', ('M3(R,-)', 'ins@4:s2^-1', 'rel:R1.a(r=1,i=2)@5,←', 'cancel@6:s2',)),
        (2, 's2^-1 b1 s1^-1 a1 s1^-1 s1^-1 s2^-1', ('ins@5:s1', 'ins@6:s2', 'ins@7:s1', 'rel:BR1(i=1)@5,→', 'cancel@4:s2^-1', 'cancel@3:s1^-1', 'cancel@2:s2^-1', 'cancel@1:s1', 'ins@0:s2^-1', 'rel:R1.b(r=1,i=2)@1,←', 'cancel@2:s2',)),
        (2, 's2^-1 b1 s1^-1 s2 a1', ('M3(R,+)', 'rel:R1.a(r=1,i=2)@3,→',)),
        (2, 's2^-1 b1 s1^-1 a1 s1^-1 s3^-1 s2^-1', ('M2(i=1,R,-)', 'ins@4:s2^-1', 'rel:R1.a(r=1,i=2)@5,←', 'cancel@6:s2', 'cancel@3:s2',)),
        (2, 's2^-1 b1 s1^-1 a1 s1 s3^-1 s2', ('M3(R,+)', 'ins@7:s3', 'rel:BR2(i=1,j=3)@6,→', 'cancel@5:s3^-1', 'ins@8:s3', 'rel:BR2(i=1,j=3)@7,→', 'cancel@6:s3^-1', 'cancel@4:s1^-1',)),
        (2, 's2^-1 s1^-1 a1 s1^-1 s3^-1 s2 b1', ('rel:R4(r=1)@1,←', 'ins@4:s3^-1', 'rel:R1.b(r=1,i=3)@5,←', 'cancel@6:s3', 'rel:R1.b(r=1,i=2)@5,→',)),
        (2, 's2^-1 s1^-1 a1 s1^-1 s3^-1 s2', ('psl*(i=1,-)',)),
    ),
    'wall-nsa': (
        (1, 'b1^-1 s1 a1', ()),
        (2, 'b1^-1 s1 s2 a1', ('M6(k=1,+)', 'rel:R1.a(r=1,i=2)@2,→',)),
        (2, 'b1^-1 s1 s2 a1 s1^-1', ('M1(R,-)',)),
        (2, 'b1^-1 s1 s2 s1 a1^-1', ('M4(j=1,R,-)',)),
        (2, 's2 b1^-1 s1 s2 a1^-1', ('rel:BR1(i=1)@1,→', 'ins@2:b1', 'ins@3:s2^-1', 'ins@2:s2^-1', 'rel:R1.b(r=1,i=2)@3,←', 'cancel@4:s2', 'cancel@1:s2', 'cancel@0:b1^-1',)),
        (2, 's2 b1^-1 s1 a1^-1 s1^-1 s3^-1 s2^-1', ('M2(i=1,R,-)', 'ins@6:a1', 'ins@7:s2', 'rel:R1.a(r=1,i=2)@6,→', 'cancel@5:s2^-1', 'cancel@4:a1^-1', 'cancel@3:s2',)),
        (2, 's2 b1^-1 s1 a1^-1 s1 s3^-1 s2', ('M3(R,+)', 'ins@7:s3', 'rel:BR2(i=1,j=3)@6,→', 'cancel@5:s3^-1', 'ins@8:s3', 'rel:BR2(i=1,j=3)@7,→', 'cancel@6:s3^-1', 'cancel@4:s1^-1',)),
        (2, 's2 s1^-1 a1^-1 s1 s3^-1 s2 b1^-1', ('ins@1:s1^-1', 'ins@2:a1^-1', 'ins@3:s1', 'ins@4:b1^-1', 'rel:R4(r=1)@5,←', 'cancel@8:b1', 'cancel@7:s1^-1', 'cancel@6:a1', 'cancel@5:s1^-1', 'ins@6:b1', 'ins@7:s3', 'rel:R1.b(r=1,i=3)@6,→', 'cancel@5:s3^-1', 'cancel@4:b1^-1', 'ins@7:b1', 'ins@8:s2^-1', 'ins@7:s2^-1', 'rel:R1.b(r=1,i=2)@8,←', 'cancel@9:s2', 'cancel@6:s2', 'cancel@5:b1^-1',)),
        (2, 's2 s1^-1 a1^-1 s1 s3^-1 s2', ('psl*(i=1,+)',)),
    ),
    'wall-nsn': (
        (1, 'b1^-1 s1^-1 a1^-1', ()),
        (1, 'b1^-1 s1^-1 a1^-1 s1', ('M1(R,+)',)),
        (1, 'b1^-1 s1^-1 a1^-1 s1^2', ('M1(R,+)',)),
        (2, 'b1^-1 s1^-1 a1^-1 s1^2 s2', ('M6(k=1,+)',)),
        (2, 'b1^-1 s1^-1 s2^-1 a1^-1', ('M3(R,-)', 'ins@4:a1', 'ins@5:s2', 'rel:R1.a(r=1,i=2)@4,→', 'cancel@3:s2^-1', 'cancel@2:a1^-1',)),
        (2, 'b1^-1 s1^-1 s2^-1 s1^-1 a1 s1^-1', ('M4(j=1,R,+)',)),
        (2, 'b1^-1 s1^-1 s2^-1 s1^-1 a1', ('M1(R,+)',)),
        (2, 's2^-1 b1^-1 s1^-1 s2^-1 a1', ('ins@1:s2^-1', 'ins@2:s1^-1', 'ins@3:s2^-1', 'rel:BR1(i=1)@4,←', 'cancel@6:s1', 'cancel@5:s2', 'cancel@4:s1', 'ins@2:b1', 'ins@3:s2', 'rel:R1.b(r=1,i=2)@2,→', 'cancel@1:s2^-1', 'cancel@0:b1^-1',)),
        (2, 's2^-1 b1^-1 s1^-1 a1 s1^2 s2', ('M3(R,+)', 'rel:R1.a(r=1,i=2)@4,→', 'cancel@3:s2^-1',)),
        (2, 's2^-1 s1^-1 a1 s1 b1^-1 s1^3 s2', ('ins@4:s1^-1', 'ins@5:b1', 'rel:R4(r=1)@2,→', 'cancel@1:b1^-1',)),
        (2, 's2^-1 s1^-1 a1 s1 b1^-1 s1 s2^-1', ('M3(R,-)',)),
        (2, 's2^-1 s1^-1 a1 s1 b1^-1 s1^2 s3 s2', ('M2(i=1,R,+)', 'rel:BR2(i=1,j=3)@6,←',)),
        (2, 's2^-1 s1^-1 a1 s1 s3 s2^-1 b1^-1', ('M3(R,-)', 'ins@7:s1^-1', 'ins@8:s3', 'ins@11:s3', 'rel:BR2(i=1,j=3)@10,→', 'cancel@9:s3^-1', 'cancel@10:s3^-1', 'cancel@9:s1', 'ins@8:s1^-1', 'ins@9:s3', 'ins@12:s3', 'rel:BR2(i=1,j=3)@11,→', 'cancel@10:s3^-1', 'cancel@11:s3^-1', 'cancel@10:s1', 'cancel@6:s1', 'cancel@5:s1', 'ins@6:b1', 'ins@7:s3^-1', 'ins@6:s3^-1', 'rel:R1.b(r=1,i=3)@7,←', 'cancel@8:s3', 'cancel@5:s3', 'cancel@4:b1^-1', 'ins@7:b1', 'ins@8:s2', 'rel:R1.b(r=1,i=2)@7,→', 'cancel@6:s2^-1', 'cancel@5:b1^-1',)),
        (2, 's2^-1 s1^-1 a1 s1 s3 s2^-1', ('psl*(i=1,+)',)),
    ),
    'pile-paa': (
        (1, 'b1 a1^2', ()),
        (1, 'b1 a1^2 s1^-1', ('M1(R,-)',)),
        (1, 'b1 a1 s1 a1^-1', ('M4(j=1,R,-)',)),
        (1, 'b1 a1 s1 a1^-1 s1 a1^-1 s1 a1^-1', ('M4(j=1,R,-)',)),
        (1, 'b1 s1 a1^-1 s1^2 a1^-1', ('ins@6:s1^-1', 'ins@7:a1', 'ins@8:s1^-1', 'ins@9:a1', 'rel:R2.a(r=1)@6,→', 'cancel@5:a1^-1', 'cancel@4:s1', 'cancel@3:a1^-1', 'cancel@2:s1', 'cancel@1:a1',)),
        (1, 'b1 s1 a1^-1 s1 a1 s1^-1', ('M4(j=1,R,+)',)),
        (1, 'b1 s1 a1^-1 s1 a1', ('M1(R,+)',)),
        (1, 'b1 s1 a1^-1 s1 a1 s1', ('M1(R,+)',)),
        (1, 'b1 s1 a1^-1 s1 a1 s1 b1^-1', ('psl*(i=1,-)',)),
        (1, 'b1 s1 a1^-1 s1 a1 s1 b1^-1 s1', ('M1(R,+)',)),
        (1, 'b1 s1 a1^-1 s1^2 b1^-1 s1^-1 a1', ('ins@4:s1', 'ins@5:b1^-1', 'ins@6:s1^-1', 'ins@7:a1', 'ins@8:s1^-1', 'ins@14:a1', 'ins@15:s1', 'rel:R4(r=1)@12,←', 'cancel@11:s1', 'cancel@10:a1^-1', 'cancel@9:s1', 'cancel@11:a1^-1', 'cancel@10:s1^-1', 'cancel@9:b1', 'cancel@8:s1^-1',)),
        (1, 'b1 s1 b1^-1 a1^-1 s1^-1 a1', ('rel:TR@3,←', 'cancel@2:a1^-1', 'cancel@4:b1',)),
        (1, 'b1 s1 b1^-1 a1^-1 s1^-1 a1 s1^-1', ('M1(R,-)',)),
        (1, 'b1 s1 b1^-1 a1^-2', ('M4(j=1,R,-)',)),
        (1, 'b1 s1 b1^-1 a1^-2 s1', ('M1(R,+)',)),
        (1, 'b1 s1 b1^-1 a1^-2 s1^2', ('M1(R,+)',)),
        (2, 'b1 s1 b1^-1 a1^-2 s1^2 s2', ('M6(k=1,+)',)),
        (2, 'b1 s1 s2^-1 b1^-1 a1^-2', ('M3(R,-)', 'ins@6:a1', 'ins@7:s2', 'rel:R1.a(r=1,i=2)@6,→', 'cancel@5:s2^-1', 'cancel@4:a1^-1', 'ins@5:a1', 'ins@6:s2', 'rel:R1.a(r=1,i=2)@5,→', 'cancel@4:s2^-1', 'cancel@3:a1^-1', 'ins@4:b1', 'ins@5:s2', 'rel:R1.b(r=1,i=2)@4,→', 'cancel@3:s2^-1', 'cancel@2:b1^-1',)),
        (2, 'b1 s1 s2^-1 b1^-1 a1^-1 s1^-1 a1 s1^-1', ('M4(j=1,R,+)',)),
        (2, 'b1 s1 s2^-1 b1^-1 a1^-1 s1^-1 a1', ('M1(R,+)',)),
        (2, 'b1 s1 s2^-1 b1^-1 a1^-1 s1^-1 a1^2 s1^-1 a1 s1^-1', ('M4(j=1,R,+)',)),
        (2, 'b1 s1 s2^-1 b1^-1 a1^-1 s1^-1 a1 s1^-1 a1 s1^-1 a1', ('rel:R2.a(r=1)@7,←',)),
        (2, 'b1 s1 s2^-1 b1^-1 s1^-1 a1 s1^-2 a1', ('rel:R2.a(r=1)@5,→', 'cancel@4:a1^-1',)),
        (2, 'b1 s1 s2^-1 s1^-1 a1 s1 b1^-1 s1^-1 a1', ('ins@6:s1^-1', 'ins@7:b1', 'rel:R4(r=1)@4,→', 'cancel@3:b1^-1', 'cancel@7:s1',)),
        (2, 'b1 s1 s2^-1 s1^-1 a1^2 s1 b1^-1 s1', ('ins@9:s1^-1', 'ins@10:b1', 'rel:R4(r=1)@7,→', 'cancel@6:b1^-1', 'cancel@5:s1',)),
        (2, 'b1 s1 s2^-1 s1^-1 a1^2 s1 b1^-1', ('M1(R,-)',)),
        (2, 'b1 s1 s2^-1 s1^-1 a1^2 s1', ('psl*(i=1,+)',)),
        (2, 'b1 s1 s2^-1 s1^-1 a1^2', ('M1(R,-)',)),
        (2, 'b1 s1 s2^-1 s1^-1 s2^-1 a1^2 s1^-2 s2^-1', ('M3(R,-)', 'ins@5:s2^-1', 'rel:R1.a(r=1,i=2)@6,←', 'cancel@7:s2', 'ins@4:s2^-1', 'rel:R1.a(r=1,i=2)@5,←', 'cancel@6:s2',)),
        (2, 's2^-1 b1 s1^-1 a1^2 s1^-2 s2^-1', ('ins@5:s1', 'ins@6:s2', 'ins@7:s1', 'rel:BR1(i=1)@5,→', 'cancel@4:s2^-1', 'cancel@3:s1^-1', 'cancel@2:s2^-1', 'cancel@1:s1', 'ins@0:s2^-1', 'rel:R1.b(r=1,i=2)@1,←', 'cancel@2:s2',)),
        (2, 's2^-1 b1 s1^-1 s2 a1^2', ('M3(R,+)', 'rel:R1.a(r=1,i=2)@4,→', 'rel:R1.a(r=1,i=2)@3,→',)),
        (2, 's2^-1 b1 s1^-1 a1^2 s1^-1 s3^-1 s2^-1', ('M2(i=1,R,-)', 'ins@5:s2^-1', 'rel:R1.a(r=1,i=2)@6,←', 'cancel@7:s2', 'ins@4:s2^-1', 'rel:R1.a(r=1,i=2)@5,←', 'cancel@6:s2', 'cancel@3:s2',)),
        (2, 's2^-1 b1 s1^-1 a1^2 s1 s3^-1 s2', ('M3(R,+)', 'ins@8:s3', 'rel:BR2(i=1,j=3)@7,→', 'cancel@6:s3^-1', 'ins@9:s3', 'rel:BR2(i=1,j=3)@8,→', 'cancel@7:s3^-1', 'cancel@5:s1^-1',)),
        (2, 's2^-1 s1^-1 a1 s1^-1 b1 s1^-1 a1 s1 s3^-1 s2', ('ins@4:s1', 'rel:R4(r=1)@1,←',)),
        (2, 's2^-1 s1^-1 a1 s1^-2 a1 s1^-1 s3^-1 s2 b1', ('rel:R4(r=1)@4,←', 'ins@7:s3^-1', 'rel:R1.b(r=1,i=3)@8,←', 'cancel@9:s3', 'rel:R1.b(r=1,i=2)@8,→',)),
        (2, 's2^-1 s1^-1 a1 s1^-2 a1 s1^-1 s3^-1 s2', ('psl*(i=1,-)',)),
    ),
}


# ---------------------------------------------------------------------------
# chain dispatch


@functools.lru_cache(maxsize=1)
def _frozen_chain_table():
    table = {}
    for rows in _FROZEN_CHAIN_ROWS.values():
        record = _parse_record(rows)
        table[record[0][1]] = record
    return table


_RUNTIME_CHAINS = {}
_RUNTIME_HEAD_CHAINS = {}
_FAILED_ZONES = set()


def _chain_lookup(zone_letters):
    key = tuple(zone_letters)
    record = _frozen_chain_table().get(key)
    if record is None:
        record = _RUNTIME_CHAINS.get(key)
    return record


def _search_chain(zone_letters, pairs, manifold, budget):
    key = tuple(zone_letters)
    if key in _FAILED_ZONES:
        raise SearchExhausted(
            f"zone already failed a bounded search: "
            f"{BraidWord(GroupContext(1, 2 * pairs), key)}")
    goals = [_pack(rec[0][1]) for rec in _frozen_chain_table().values()]
    try:
        states, _ = _peel_zone(
            zone_letters, pairs, goals, budget,
            max_len=max(12, len(zone_letters) + 8), max_pairs=pairs + 2)
        record = _lift_chain(states, manifold, side="R")
    except SearchExhausted:
        _FAILED_ZONES.add(key)
        raise
    _RUNTIME_CHAINS[key] = record
    return record


def _search_head_chain(zone_letters, pairs, manifold, budget):
    key = tuple(zone_letters)
    if key in _FAILED_ZONES:
        raise SearchExhausted(
            f"zone already failed a bounded search: "
            f"{BraidWord(GroupContext(1, 2 * pairs), key)}")
    try:
        states, _ = _peel_prefix(
            zone_letters, pairs, budget,
            max_len=max(12, len(zone_letters) + 8))
        record = _lift_chain(states, manifold, side="L")
    except SearchExhausted:
        _FAILED_ZONES.add(key)
        raise
    _RUNTIME_HEAD_CHAINS[key] = record
    return record


# ---------------------------------------------------------------------------
# public operations


def _last_b(word):
    for p in range(len(word) - 1, -1, -1):
        if word.letters[p].kind is Kind.B:
            return p
    return None


def _first_a(word):
    for p, letter in enumerate(word.letters):
        if letter.kind is Kind.A:
            return p
    return None


def _window_metric(letters, bpos):
    tail = letters[bpos + 1:]
    return (sum(1 for l in tail if l.kind is not Kind.SIGMA), len(tail))


def _crossing_rule(word, pos):
    """First registry rule that moves the b-letter at pos strictly
    toward the word end, by (handle letters after b, letters after b)."""
    letters = word.letters
    for rule in scripted_rules(word.context.genus, word.context.strands):
        w = len(rule.lhs)
        if letters[pos:pos + w] != rule.lhs:
            continue
        if (sum(1 for l in rule.lhs if l.kind is Kind.B) != 1
                or sum(1 for l in rule.rhs if l.kind is Kind.B) != 1):
            continue
        before = _window_metric(rule.lhs, 0)
        bx = next(i for i, l in enumerate(rule.rhs) if l.kind is Kind.B)
        after = _window_metric(rule.rhs, bx)
        if after < before:
            return rule
    return None


def remove_b(word, manifold, search_budget=200_000):
    """Eliminate every b-letter of word over manifold, with a witness.

    The manifold must present its dual curves as the standard b_i; each
    b-letter is walked to the word end and shed by an inverse dual
    slide.  Returns (b-free word, move witness); replaying the witness
    on the input yields the output exactly.  Raises SearchExhausted if
    a crossing cannot be realized within the search budget.
    """
    ctx = word.context
    if manifold.genus != ctx.genus:
        raise ValueError(
            f"manifold genus {manifold.genus} != word genus {ctx.genus}")
    if not manifold.has_standard_duals:
        raise ValueError(
            "b-elimination requires the standard dual curves b_i")
    witness = []
    word, cancels = free_reduce_with_moves(word)
    witness.extend(cancels)
    limit = 400 * (len(word) + 16)
    for _ in range(limit):
        pos = _last_b(word)
        if pos is None:
            return word, tuple(witness)
        word, bridge = _canon_bridge(word, pos)
        witness.extend(bridge)
        pos = _last_b(word)
        zone = word.letters[pos:]
        if len(zone) == 1:
            mv = SlideMove(True, zone[0].index, -zone[0].sign)
            word = mv.apply(word, manifold)
            witness.append(mv)
            continue
        rule = _crossing_rule(word, pos)
        if rule is not None:
            script = shift_script(rule.script, pos)
            word = replay_witness(word, script, manifold)
            witness.extend(script)
            continue
        last = word.letters[-1]
        if last.kind is Kind.SIGMA and last.index == 1:
            mv = MMove("M1", None, "R", -last.sign)
            word = mv.apply(word, manifold)
            witness.append(mv)
            continue
        word, applied = _dispatch_chain(word, pos, manifold, search_budget)
        witness.extend(applied)
    raise SearchExhausted("b-elimination exceeded its iteration limit")


def _dispatch_chain(word, pos, manifold, budget):
    """Cross or shed the b-letter at pos through a recorded or searched
    chain anchored on the word's suffix.

    A chain recorded for the bare zone can collide with the prefix when
    an intermediate state cancels across the zone boundary; those
    replays fail cleanly and the zone is widened to let a fresh search
    see the true boundary.
    """
    collected = []
    for start in sorted({pos, max(0, pos - 1), max(0, pos - 2),
                         max(0, pos - 4), max(0, pos - 8), 0},
                        reverse=True):
        word2, bridge = _canon_bridge(word, start)
        if bridge:
            word = word2
            collected.extend(bridge)
        zone = word.letters[start:]
        record = _chain_lookup(zone)
        if record is None:
            if word.context.genus != 1:
                raise SearchExhausted(
                    f"no crossing rule for zone "
                    f"{BraidWord(word.context, zone)} "
                    f"(bounded search covers genus 1 only)")
            try:
                record = _search_chain(zone, word.context.pairs, manifold,
                                       budget)
            except SearchExhausted:
                if start == 0:
                    raise
                continue
        try:
            word, applied = replay_anchored(word, record, manifold)
            return word, collected + applied
        except ZoneMismatch:
            continue
    raise SearchExhausted(
        f"chain replays kept colliding with the prefix for "
        f"{BraidWord(word.context, word.letters[pos:])}")


def remove_a_s3(word, search_budget=200_000):
    """Eliminate a- and b-letters over the trivial torus filling.

    Works in L(1,0): first removes b-letters, then walks each leading
    a-letter to the word head and sheds it by an inverse plat slide.
    Returns (word of sigma-letters only, move witness).
    """
    ctx = word.context
    if ctx.genus != 1:
        raise ValueError("a-elimination collapses only genus-1 words")
    manifold = lens_space(1, 0)
    word, wit = remove_b(word, manifold, search_budget=search_budget)
    witness = list(wit)
    limit = 400 * (len(word) + 16)
    for _ in range(limit):
        word, cancels = free_reduce_with_moves(word)
        witness.extend(cancels)
        q = _first_a(word)
        if q is None:
            return word, tuple(witness)
        if q == 0:
            mv = SlideMove(False, 1, -word.letters[0].sign)
            word = mv.apply(word, manifold)
            witness.append(mv)
            continue
        zone = BraidWord(ctx, word.letters[:q + 1])
        canon_zone, bridge = _canon_bridge(zone)
        if bridge:
            word = replay_witness(word, bridge, manifold)
            witness.extend(bridge)
            continue
        head = word.letters[0]
        if head.kind is Kind.SIGMA and head.index == 1:
            mv = MMove("M1", None, "L", -head.sign)
            word = mv.apply(word, manifold)
            witness.append(mv)
            continue
        word, applied = _dispatch_head_chain(
            word, q, manifold, search_budget)
        witness.extend(applied)
    raise SearchExhausted("a-elimination exceeded its iteration limit")


def _dispatch_head_chain(word, q, manifold, budget):
    """Clear one leading a-letter through a recorded or searched chain.

    The zone is widened past boundary interference a few letters at a
    time; interference beyond that is a hard failure.
    """
    for extra in (0, 1, 2, 4, 6):
        stop = min(q + 1 + extra, len(word))
        zone = word.letters[:stop]
        record = _RUNTIME_HEAD_CHAINS.get(tuple(zone))
        if record is None:
            try:
                record = _search_head_chain(
                    zone, word.context.pairs, manifold, budget)
            except SearchExhausted:
                if stop == len(word):
                    raise
                continue
        try:
            return replay_prefix_anchored(word, record, manifold)
        except ZoneMismatch:
            if stop == len(word):
                raise
            continue
    raise SearchExhausted(
        f"head zone would not clear: {BraidWord(word.context, zone)}")


def shorten(word, budget):
    """Greedy length reduction: free reduction plus single relation
    rewrites that shorten the word, up to budget relation applications.
    Preserves the strand permutation and the winding table."""
    if budget < 0:
        raise ValueError("budget must be >= 0")
    ctx = word.context
    out = free_reduce(word)
    used = 0
    while used < budget:
        better = None
        for rel in relator_catalog(ctx):
            for direction in (Direction.FORWARD, Direction.BACKWARD):
                src, dst = ((rel.lhs.letters, rel.rhs.letters)
                            if direction is Direction.FORWARD
                            else (rel.rhs.letters, rel.lhs.letters))
                for p in range(len(out) - len(src) + 1):
                    if out.letters[p:p + len(src)] != src:
                        continue
                    cand = free_reduce(BraidWord(
                        ctx, out.letters[:p] + dst + out.letters[p + len(src):]))
                    if len(cand) < len(out):
                        better = cand
                        break
                if better:
                    break
            if better:
                break
        if better is None:
            break
        out = better
        used += 1
    return out
