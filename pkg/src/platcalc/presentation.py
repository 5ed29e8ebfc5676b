"""Defining relations of the surface braid groups and one-step rewriting.

Every relation is stored as an oriented two-sided rule (LHS, RHS) so it can
be applied positionally in either direction.  Relators carry stable text
names like ``BR1(i=2)`` or ``R3.ab(s=1,r=2)`` that the CLI and search
witnesses use to address them.
"""

from __future__ import annotations

import dataclasses
import enum
import functools
import re

from .invariants import permutation_of, winding_table
from .words import BraidWord, GroupContext, Letter, concat, gen_a, gen_b, invert, sigma


class Direction(enum.Enum):
    """Orientation of a rule application: LHS to RHS or back."""

    FORWARD = "→"
    BACKWARD = "←"

    @staticmethod
    def from_text(text: str) -> Direction:
        if text in ("→", "->"):
            return Direction.FORWARD
        if text in ("←", "<-"):
            return Direction.BACKWARD
        raise ValueError(f"unknown direction '{text}'")

    def flipped(self) -> Direction:
        return Direction.BACKWARD if self is Direction.FORWARD else Direction.FORWARD


@dataclasses.dataclass(frozen=True, slots=True)
class Relator:
    name: str
    lhs: BraidWord
    rhs: BraidWord

    @property
    def word(self) -> BraidWord:
        """The relator as a single word, LHS·RHS⁻¹."""
        return concat(self.lhs, invert(self.rhs))


def _mk(context: GroupContext, name: str, lhs: list[Letter], rhs: list[Letter]) -> Relator:
    return Relator(name, BraidWord(context, tuple(lhs)), BraidWord(context, tuple(rhs)))


def _commutator_inv(j: int) -> list[Letter]:
    # [a_j, b_j^-1] written out
    return [gen_a(j), gen_b(j, -1), gen_a(j, -1), gen_b(j)]


@functools.lru_cache(maxsize=None)
def relator_catalog(context: GroupContext) -> tuple[Relator, ...]:
    """All defining relations instantiated for the given genus and strands.

    Family order is fixed: BR1, BR2, R1.a, R1.b, R2.a, R2.b, R3.aa, R3.bb,
    R3.ab, R3.ba, R4, TR, each with ascending parameters.
    """
    g, k = context.genus, context.strands
    out: list[Relator] = []
    for i in range(1, k - 1):
        out.append(_mk(context, f"BR1(i={i})",
                       [sigma(i), sigma(i + 1), sigma(i)],
                       [sigma(i + 1), sigma(i), sigma(i + 1)]))
    for i in range(1, k - 1):
        for j in range(i + 2, k):
            out.append(_mk(context, f"BR2(i={i},j={j})",
                           [sigma(i), sigma(j)],
                           [sigma(j), sigma(i)]))
    for tag, gen in (("a", gen_a), ("b", gen_b)):
        for r in range(1, g + 1):
            for i in range(2, k):
                out.append(_mk(context, f"R1.{tag}(r={r},i={i})",
                               [gen(r), sigma(i)],
                               [sigma(i), gen(r)]))
    for tag, gen in (("a", gen_a), ("b", gen_b)):
        for r in range(1, g + 1):
            out.append(_mk(context, f"R2.{tag}(r={r})",
                           [sigma(1, -1), gen(r), sigma(1, -1), gen(r)],
                           [gen(r), sigma(1, -1), gen(r), sigma(1, -1)]))
    for tag, gs, gr in (("aa", gen_a, gen_a), ("bb", gen_b, gen_b),
                        ("ab", gen_a, gen_b), ("ba", gen_b, gen_a)):
        for s in range(1, g + 1):
            for r in range(s + 1, g + 1):
                out.append(_mk(context, f"R3.{tag}(s={s},r={r})",
                               [sigma(1, -1), gs(s), sigma(1), gr(r)],
                               [gr(r), sigma(1, -1), gs(s), sigma(1)]))
    for r in range(1, g + 1):
        out.append(_mk(context, f"R4(r={r})",
                       [sigma(1, -1), gen_a(r), sigma(1, -1), gen_b(r)],
                       [gen_b(r), sigma(1, -1), gen_a(r), sigma(1)]))
    if g >= 1:
        lhs: list[Letter] = []
        for j in range(1, g + 1):
            lhs.extend(_commutator_inv(j))
        rhs = [sigma(i) for i in range(1, k)] + [sigma(i) for i in range(k - 1, 0, -1)]
        out.append(_mk(context, "TR", lhs, rhs))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _catalog_index(context: GroupContext) -> dict[str, Relator]:
    return {r.name: r for r in relator_catalog(context)}


_NAME = re.compile(r"([A-Za-z0-9.]+)(?:\(([^()]*)\))?\Z")

# canonical parameter order of each relation family
_PARAM_ORDER = {
    "BR1": ("i",), "BR2": ("i", "j"),
    "R1.a": ("r", "i"), "R1.b": ("r", "i"),
    "R2.a": ("r",), "R2.b": ("r",),
    "R3.aa": ("s", "r"), "R3.bb": ("s", "r"),
    "R3.ab": ("s", "r"), "R3.ba": ("s", "r"),
    "R4": ("r",), "TR": (),
}


def normalize_relator_name(name: str) -> str:
    """Accept spacing/order variations in the parameter list of a name."""
    m = _NAME.match(name.strip())
    if m is None:
        raise ValueError(f"malformed relation name '{name}'")
    base, params = m.group(1), m.group(2)
    expected = _PARAM_ORDER.get(base)
    if expected is None:
        raise ValueError(f"unknown relation family in '{name}'")
    given: dict[str, int] = {}
    for chunk in (params or "").split(","):
        if chunk.strip() == "":
            continue
        key, _, value = chunk.partition("=")
        key = key.strip()
        if key in given or not re.fullmatch(r"-?\d+", value.strip()):
            raise ValueError(f"malformed relation name '{name}'")
        given[key] = int(value)
    if set(given) != set(expected):
        raise ValueError(f"relation '{base}' takes parameters "
                         f"({','.join(expected) or 'none'}), got '{name}'")
    if not expected:
        return base
    return f"{base}({','.join(f'{k}={given[k]}' for k in expected)})"


def relator_by_name(context: GroupContext, name: str) -> Relator:
    relator = _catalog_index(context).get(normalize_relator_name(name))
    if relator is None:
        raise ValueError(f"no relation '{name}' in genus {context.genus}, "
                         f"{context.strands} strands")
    return relator


@dataclasses.dataclass(frozen=True, slots=True)
class TrivialityReport:
    name: str
    permutation_trivial: bool
    winding_zero: bool

    @property
    def ok(self) -> bool:
        return self.permutation_trivial and self.winding_zero


def check_relator_trivial(relator: Relator) -> TrivialityReport:
    """Verify the relator word acts trivially on strands and windings."""
    w = relator.word
    identity = tuple(range(1, w.context.strands + 1))
    zero = tuple(0 for _ in range(2 * w.context.genus))
    return TrivialityReport(
        name=relator.name,
        permutation_trivial=permutation_of(w) == identity,
        winding_zero=all(row == zero for row in winding_table(w)),
    )


def apply_relation(word: BraidWord, relator: Relator, position: int,
                   direction: Direction = Direction.FORWARD) -> BraidWord:
    """Replace one occurrence of a relation side by the other side.

    The source side must match ``word`` letter-for-letter at ``position``
    (0-based).  No free reduction is performed on the result.
    """
    src, dst = ((relator.lhs, relator.rhs) if direction is Direction.FORWARD
                else (relator.rhs, relator.lhs))
    end = position + len(src)
    if position < 0 or end > len(word) or word.letters[position:end] != src.letters:
        raise ValueError(
            f"relation {relator.name} ({direction.value}) does not match "
            f"at position {position}"
        )
    return BraidWord(word.context, word.letters[:position] + dst.letters + word.letters[end:])


def relation_matches(word: BraidWord, relator: Relator,
                     direction: Direction) -> list[int]:
    """All positions where the relation's source side occurs."""
    src = relator.lhs if direction is Direction.FORWARD else relator.rhs
    n, m = len(word), len(src)
    return [p for p in range(n - m + 1) if word.letters[p:p + m] == src.letters]
