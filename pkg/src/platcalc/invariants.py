"""Invariants of a braid word and of its plat closure.

The plat closure joins top points (2i-1, 2i) and bottom points (2i-1, 2i)
by arcs.  Everything here is computed by a single left-to-right sweep over
the word: the strand arrangement gives the underlying permutation, and
handle letters credit their winding to whichever strand occupies position 1
at that moment.  Closure components are traversed starting from their
lowest top point heading downward; strands crossed downward add their
winding vector, strands crossed upward subtract, so each component class
is only defined up to sign and is reported by the representative whose
first nonzero coordinate is positive.
"""

from __future__ import annotations

import dataclasses

from .words import BraidWord, GroupContext, Kind


def permutation_of(word: BraidWord) -> tuple[int, ...]:
    """Bottom position of the strand starting at each top position.

    Entry ``k-1`` is the bottom position reached by the strand that starts
    at top position ``k``.  Handle letters do not move strands.
    """
    arrangement = list(range(1, word.context.strands + 1))
    for letter in word.letters:
        if letter.kind is Kind.SIGMA:
            i = letter.index
            arrangement[i - 1], arrangement[i] = arrangement[i], arrangement[i - 1]
    final = [0] * word.context.strands
    for position, strand in enumerate(arrangement, start=1):
        final[strand - 1] = position
    return tuple(final)


def winding_table(word: BraidWord) -> tuple[tuple[int, ...], ...]:
    """Per-strand winding vectors in Z^{2g}.

    Row ``k-1`` belongs to the strand starting at top position ``k``;
    coordinates are (long_1..long_g, mer_1..mer_g).  A letter ``a_j^e``
    adds ``e`` to long_j of the strand currently at position 1, ``b_j^e``
    likewise for mer_j.
    """
    g = word.context.genus
    arrangement = list(range(1, word.context.strands + 1))
    table = [[0] * (2 * g) for _ in range(word.context.strands)]
    for letter in word.letters:
        if letter.kind is Kind.SIGMA:
            i = letter.index
            arrangement[i - 1], arrangement[i] = arrangement[i], arrangement[i - 1]
        elif letter.kind is Kind.A:
            table[arrangement[0] - 1][letter.index - 1] += letter.sign
        else:
            table[arrangement[0] - 1][g + letter.index - 1] += letter.sign
    return tuple(tuple(row) for row in table)


def _partner(p: int) -> int:
    return p + 1 if p % 2 == 1 else p - 1


def _traverse(word: BraidWord) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Closure components as (top points in traversal order, class vector)."""
    perm = permutation_of(word)
    wind = winding_table(word)
    g = word.context.genus
    inverse = [0] * word.context.strands
    for top, bottom in enumerate(perm, start=1):
        inverse[bottom - 1] = top
    seen: set[int] = set()
    components: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    for start in range(1, word.context.strands + 1):
        if start in seen:
            continue
        tops: list[int] = []
        vector = [0] * (2 * g)
        t = start
        while True:
            seen.add(t)
            tops.append(t)
            for c in range(2 * g):
                vector[c] += wind[t - 1][c]
            up = inverse[_partner(perm[t - 1]) - 1]
            seen.add(up)
            tops.append(up)
            for c in range(2 * g):
                vector[c] -= wind[up - 1][c]
            t = _partner(up)
            if t == start:
                break
        components.append((tuple(tops), tuple(vector)))
    return components


def plat_components(word: BraidWord) -> tuple[tuple[int, ...], ...]:
    """Partition of the top points into closure cycles.

    Components are ordered by their smallest top point; bottom points of a
    cycle are recovered through the permutation.
    """
    return tuple(tuple(sorted(tops)) for tops, _ in _traverse(word))


def canonical_class(vector: tuple[int, ...]) -> tuple[int, ...]:
    """Representative of {v, -v} whose first nonzero coordinate is positive."""
    for c in vector:
        if c > 0:
            return vector
        if c < 0:
            return tuple(-x for x in vector)
    return vector


@dataclasses.dataclass(frozen=True, slots=True)
class ClosureReport:
    """Components of a plat closure with their homology class pairs."""

    context: GroupContext
    components: tuple[tuple[int, ...], ...]
    component_classes: tuple[tuple[int, ...], ...]

    def class_multiset(self) -> tuple[tuple[int, ...], ...]:
        # canonical representatives stand in for the unordered {v, -v} pairs
        return tuple(sorted(self.component_classes))


def closure_report(word: BraidWord) -> ClosureReport:
    traversed = _traverse(word)
    return ClosureReport(
        context=word.context,
        components=tuple(tuple(sorted(tops)) for tops, _ in traversed),
        component_classes=tuple(canonical_class(v) for _, v in traversed),
    )


def format_class(vector: tuple[int, ...], genus: int) -> str:
    longs = ",".join(str(x) for x in vector[:genus])
    mers = ",".join(str(x) for x in vector[genus:])
    return f"({longs} | {mers})"


def format_report(report: ClosureReport) -> str:
    lines = [f"components: {len(report.components)}"]
    for vector in report.component_classes:
        lines.append(f"class: {format_class(vector, report.context.genus)}")
    return "\n".join(lines)
