"""The move calculus on plat representatives.

Two braid words close to the same link exactly when a finite sequence of
the moves defined here connects them: multiplication by the five kinds of
arc-motion words on either side (M1..M5), stabilization to two more
strands and its inverse (M6), defining-relation rewrites, free
insertion/cancellation of inverse pairs, and the slide moves psl/psl*
that consume a manifold's attaching circles.

Every move is a small frozen value that knows how to apply itself, invert
itself, and serialize to a one-token text form such as ``M2(i=1,R,-)``,
``M6(k=1,+)``, ``rel:R4(r=1)@3,→``, ``ins@0:a1`` or ``psl*(i=2,-)``.
Replay semantics: relation and pair moves act literally at their stored
positions; multiplication-type moves free-reduce their result.
"""

from __future__ import annotations

import dataclasses
import re

from .manifolds import ManifoldPresentation
from .presentation import Direction, apply_relation, normalize_relator_name, relator_by_name
from .words import (
    BraidWord,
    GroupContext,
    Kind,
    Letter,
    concat,
    embed,
    free_reduce,
    gen_a,
    gen_b,
    invert,
    sigma,
)

# ---------------------------------------------------------------------------
# arc-motion generator words


def hilden_word(kind: str, context: GroupContext, index: int = 1) -> BraidWord:
    """The five arc-motion words: twist, exchange, and the three slides."""
    n = context.pairs
    g = context.genus
    if kind == "braid_twist":
        if not 1 <= index <= n:
            raise ValueError(f"braid twist index {index} out of range 1..{n}")
        letters = [sigma(2 * index - 1)]
    elif kind == "elementary_exchange":
        if not 1 <= index <= n - 1:
            raise ValueError(f"exchange index {index} out of range 1..{n - 1}")
        i = 2 * index
        letters = [sigma(i), sigma(i + 1), sigma(i - 1), sigma(i)]
    elif kind == "arc_slide":
        if context.strands < 4:
            raise ValueError("arc slide needs at least 4 strands")
        letters = [sigma(2), sigma(1), sigma(1), sigma(2)]
    elif kind == "longitude_slide":
        if not 1 <= index <= g:
            raise ValueError(f"longitude index {index} out of range 1..{g}")
        letters = [gen_a(index), sigma(1, -1), gen_a(index), sigma(1, -1)]
    elif kind == "meridian_slide":
        if not 1 <= index <= g:
            raise ValueError(f"meridian index {index} out of range 1..{g}")
        letters = [gen_b(index), sigma(1, -1), gen_b(index), sigma(1, -1)]
    else:
        raise ValueError(f"unknown arc-motion kind '{kind}'")
    return BraidWord(context, tuple(letters))


_MMOVE_KIND = {
    "M1": "braid_twist",
    "M2": "elementary_exchange",
    "M3": "arc_slide",
    "M4": "longitude_slide",
    "M5": "meridian_slide",
}


def mmove_word(tag: str, context: GroupContext, index: "int | None" = None) -> BraidWord:
    """The multiplier word of an M1..M5 move (M1 fixes the first arc twist)."""
    if tag == "M1":
        return hilden_word("braid_twist", context, 1)
    if tag == "M3":
        return hilden_word("arc_slide", context)
    if index is None:
        raise ValueError(f"{tag} needs an index")
    return hilden_word(_MMOVE_KIND[tag], context, index)


# ---------------------------------------------------------------------------
# stabilization


def t_map(word: BraidWord, k: int) -> BraidWord:
    """Inclusion-with-a-loop homomorphism into two more strands.

    Handle letters are fixed, band letters below position 2k are fixed,
    those above shift by two, and the 2k-th band letter maps to the
    conjugated block around the two new strands.
    """
    ctx = word.context
    if not 1 <= k <= ctx.pairs:
        raise ValueError(f"stabilization index {k} out of range 1..{ctx.pairs}")
    target = GroupContext(ctx.genus, ctx.strands + 2)
    block = (sigma(2 * k), sigma(2 * k + 1), sigma(2 * k + 2),
             sigma(2 * k + 1, -1), sigma(2 * k, -1))
    out: list[Letter] = []
    for letter in word.letters:
        if letter.kind is not Kind.SIGMA or letter.index < 2 * k:
            out.append(letter)
        elif letter.index > 2 * k:
            out.append(Letter(Kind.SIGMA, letter.index + 2, letter.sign))
        elif letter.sign == 1:
            out.extend(block)
        else:
            out.extend(l.inverse() for l in reversed(block))
    return BraidWord(target, tuple(out))


def m6_stabilize(word: BraidWord, k: int) -> BraidWord:
    mapped = t_map(word, k)
    return BraidWord(mapped.context, mapped.letters + (sigma(2 * k),))


def m6_destabilize(word: BraidWord, k: int) -> BraidWord:
    """Invert the stabilization: strict pattern decode, no searching.

    After free reduction the image of a reduced word is per-letter images
    with consecutive 2k-blocks merged into one block around a power, so
    the decoder accepts sigma(2k) sigma(2k+1) sigma(2k+2)^m sigma(2k+1)^-1
    sigma(2k)^-1 for any nonzero same-sign power m.
    """
    ctx = word.context
    if ctx.strands < 4:
        raise ValueError("destabilization needs at least 4 strands")
    if not 1 <= k <= ctx.pairs - 1:
        raise ValueError(f"destabilization index {k} out of range 1..{ctx.pairs - 1}")
    target = GroupContext(ctx.genus, ctx.strands - 2)
    u = free_reduce(BraidWord(ctx, word.letters + (sigma(2 * k, -1),)))
    lo, hi = 2 * k, 2 * k + 2
    letters = u.letters
    out: list[Letter] = []
    pos = 0

    def fail() -> ValueError:
        return ValueError(f"word is not a stabilization at k={k}")

    while pos < len(letters):
        x = letters[pos]
        if x.kind is not Kind.SIGMA or x.index < lo:
            out.append(x)
            pos += 1
        elif x.index > hi:
            out.append(Letter(Kind.SIGMA, x.index - 2, x.sign))
            pos += 1
        elif x.index == lo and x.sign == 1:
            if pos + 4 >= len(letters) or letters[pos + 1] != sigma(2 * k + 1):
                raise fail()
            pos += 2
            power = 0
            run_sign = letters[pos].sign if pos < len(letters) else 0
            while (pos < len(letters) and letters[pos].kind is Kind.SIGMA
                   and letters[pos].index == hi and letters[pos].sign == run_sign):
                power += 1
                pos += 1
            if power == 0:
                raise fail()
            if (pos + 1 >= len(letters)
                    or letters[pos] != sigma(2 * k + 1, -1)
                    or letters[pos + 1] != sigma(2 * k, -1)):
                raise fail()
            pos += 2
            out.extend(Letter(Kind.SIGMA, 2 * k, run_sign) for _ in range(power))
        else:
            raise fail()
    return BraidWord(target, tuple(out))


# ---------------------------------------------------------------------------
# plat sum and slide moves


def w_word(m: int, n: int, context: GroupContext) -> BraidWord:
    """Joining word of the plat sum; empty when either factor has one pair."""
    if m < 1 or n < 1:
        raise ValueError("plat sum factors need at least one pair each")
    if context.strands != 2 * (m + n - 1):
        raise ValueError(
            f"context has {context.strands} strands, plat sum of {m}+{n} pairs "
            f"needs {2 * (m + n - 1)}"
        )
    letters = [sigma(2 * m - i + j)
               for i in range(0, 2 * m - 2)
               for j in range(0, 2 * n - 2)]
    return BraidWord(context, tuple(letters))


def plat_sum(alpha: BraidWord, beta: BraidWord) -> BraidWord:
    """alpha joined to beta along one pair; both factors left-aligned."""
    if alpha.context.genus != beta.context.genus:
        raise ValueError("plat sum factors must share a genus")
    m, n = alpha.context.pairs, beta.context.pairs
    target = GroupContext(alpha.context.genus, 2 * (m + n - 1))
    return concat(embed(alpha, target), w_word(m, n, target), embed(beta, target))


def psl(beta: BraidWord, m: ManifoldPresentation, i: int) -> BraidWord:
    """Slide over the i-th attaching circle: prefix its 2-strand word."""
    if beta.context.genus != m.genus:
        raise ValueError("genus mismatch between word and manifold")
    if not 1 <= i <= m.genus:
        raise ValueError(f"slide index {i} out of range 1..{m.genus}")
    return plat_sum(m.attaching_words[i - 1], beta)


def psl_star(beta: BraidWord, m: ManifoldPresentation, i: int) -> BraidWord:
    """Slide over the i-th dual circle: append its 2-strand word."""
    if beta.context.genus != m.genus:
        raise ValueError("genus mismatch between word and manifold")
    if not 1 <= i <= m.genus:
        raise ValueError(f"slide index {i} out of range 1..{m.genus}")
    return plat_sum(beta, m.dual_words[i - 1])


# ---------------------------------------------------------------------------
# move values


@dataclasses.dataclass(frozen=True, slots=True)
class MMove:
    """Multiply by an arc-motion word: tag M1..M5, side L/R, sign +/-."""

    tag: str
    index: "int | None"
    side: str
    sign: int

    def __post_init__(self) -> None:
        if self.tag not in _MMOVE_KIND:
            raise ValueError(f"unknown M-move tag '{self.tag}'")
        if (self.index is None) != (self.tag in ("M1", "M3")):
            raise ValueError(f"{self.tag} index parameter mismatch")
        if self.side not in ("L", "R") or self.sign not in (1, -1):
            raise ValueError("side must be L/R and sign +1/-1")

    def serialize(self) -> str:
        param = ""
        if self.tag == "M2":
            param = f"i={self.index},"
        elif self.tag in ("M4", "M5"):
            param = f"j={self.index},"
        return f"{self.tag}({param}{self.side},{'+' if self.sign > 0 else '-'})"

    def inverted(self) -> MMove:
        return dataclasses.replace(self, sign=-self.sign)

    def apply(self, word: BraidWord, manifold: "ManifoldPresentation | None" = None) -> BraidWord:
        mover = mmove_word(self.tag, word.context, self.index)
        if self.sign < 0:
            mover = invert(mover)
        joined = concat(mover, word) if self.side == "L" else concat(word, mover)
        return free_reduce(joined)


@dataclasses.dataclass(frozen=True, slots=True)
class StabMove:
    """M6: stabilize (+) to two more strands at pair k, or destabilize (-)."""

    k: int
    sign: int

    def __post_init__(self) -> None:
        if self.k < 1 or self.sign not in (1, -1):
            raise ValueError("stabilization needs k >= 1 and sign +1/-1")

    def serialize(self) -> str:
        return f"M6(k={self.k},{'+' if self.sign > 0 else '-'})"

    def inverted(self) -> StabMove:
        return dataclasses.replace(self, sign=-self.sign)

    def apply(self, word: BraidWord, manifold: "ManifoldPresentation | None" = None) -> BraidWord:
        if self.sign > 0:
            return free_reduce(m6_stabilize(word, self.k))
        return free_reduce(m6_destabilize(free_reduce(word), self.k))


@dataclasses.dataclass(frozen=True, slots=True)
class RelMove:
    """Apply a defining relation at a fixed position, literally."""

    name: str
    position: int
    direction: Direction

    def serialize(self) -> str:
        return f"rel:{self.name}@{self.position},{self.direction.value}"

    def inverted(self) -> RelMove:
        return dataclasses.replace(self, direction=self.direction.flipped())

    def apply(self, word: BraidWord, manifold: "ManifoldPresentation | None" = None) -> BraidWord:
        relator = relator_by_name(word.context, self.name)
        return apply_relation(word, relator, self.position, self.direction)


@dataclasses.dataclass(frozen=True, slots=True)
class PairMove:
    """Insert (ins) or remove (cancel) an adjacent inverse pair, literally.

    The stored letter is the left member of the pair.
    """

    insert: bool
    position: int
    letter: Letter

    def serialize(self) -> str:
        verb = "ins" if self.insert else "cancel"
        return f"{verb}@{self.position}:{self.letter.token()}"

    def inverted(self) -> PairMove:
        return dataclasses.replace(self, insert=not self.insert)

    def apply(self, word: BraidWord, manifold: "ManifoldPresentation | None" = None) -> BraidWord:
        p = self.position
        if self.insert:
            if not 0 <= p <= len(word):
                raise ValueError(f"insert position {p} outside word of length {len(word)}")
            letters = word.letters[:p] + (self.letter, self.letter.inverse()) + word.letters[p:]
            return BraidWord(word.context, letters)
        if (p < 0 or p + 1 >= len(word) or word.letters[p] != self.letter
                or word.letters[p + 1] != self.letter.inverse()):
            raise ValueError(
                f"no cancellable pair {self.letter.token()} at position {p}"
            )
        return BraidWord(word.context, word.letters[:p] + word.letters[p + 2:])


@dataclasses.dataclass(frozen=True, slots=True)
class SlideMove:
    """psl (prefix attaching word) or psl* (append dual word), or undo one.

    The negative direction multiplies by the inverse word instead, which
    removes a matching slide after free reduction.
    """

    dual: bool
    index: int
    sign: int

    def __post_init__(self) -> None:
        if self.index < 1 or self.sign not in (1, -1):
            raise ValueError("slide needs index >= 1 and sign +1/-1")

    def serialize(self) -> str:
        base = "psl*" if self.dual else "psl"
        return f"{base}(i={self.index},{'+' if self.sign > 0 else '-'})"

    def inverted(self) -> SlideMove:
        return dataclasses.replace(self, sign=-self.sign)

    def apply(self, word: BraidWord, manifold: "ManifoldPresentation | None" = None) -> BraidWord:
        if manifold is None:
            raise ValueError("slide moves need a manifold")
        if self.sign > 0:
            out = psl_star(word, manifold, self.index) if self.dual \
                else psl(word, manifold, self.index)
            return free_reduce(out)
        if not 1 <= self.index <= manifold.genus:
            raise ValueError(f"slide index {self.index} out of range 1..{manifold.genus}")
        if self.dual:
            mover = invert(embed(manifold.dual_words[self.index - 1], word.context))
            return free_reduce(concat(word, mover))
        mover = invert(embed(manifold.attaching_words[self.index - 1], word.context))
        return free_reduce(concat(mover, word))


Move = "MMove | StabMove | RelMove | PairMove | SlideMove"


# ---------------------------------------------------------------------------
# serialization

_MMOVE_TEXT = re.compile(r"(M[1-5])\(([^()]*)\)\Z")
_STAB_TEXT = re.compile(r"M6\(k=(\d+),([+-])\)\Z")
_REL_TEXT = re.compile(r"rel:(.+)@(\d+),(→|←|->|<-)\Z")
_PAIR_TEXT = re.compile(r"(ins|cancel)@(\d+):([sab]\d+(?:\^-1)?)\Z")
_SLIDE_TEXT = re.compile(r"(psl\*?)\(i=(\d+)(?:,([+-]))?\)\Z")


def _parse_letter_token(token: str) -> Letter:
    m = re.fullmatch(r"([sab])(\d+)(\^-1)?", token)
    if m is None:
        raise ValueError(f"bad letter token '{token}'")
    return Letter(Kind(m.group(1)), int(m.group(2)), -1 if m.group(3) else 1)


def parse_move(text: str):
    """Parse the one-token move serialization (inverse of .serialize())."""
    text = text.strip()
    if m := _MMOVE_TEXT.match(text):
        tag, inner = m.group(1), m.group(2)
        parts = [p.strip() for p in inner.split(",") if p.strip()]
        index = None
        if parts and "=" in parts[0]:
            key, _, value = parts[0].partition("=")
            expected = "i" if tag == "M2" else "j"
            if key != expected or not value.isdigit():
                raise ValueError(f"bad parameter '{parts[0]}' for {tag}")
            index = int(value)
            parts = parts[1:]
        if len(parts) != 2 or parts[0] not in ("L", "R") or parts[1] not in ("+", "-"):
            raise ValueError(f"malformed move '{text}'")
        return MMove(tag, index, parts[0], 1 if parts[1] == "+" else -1)
    if m := _STAB_TEXT.match(text):
        return StabMove(int(m.group(1)), 1 if m.group(2) == "+" else -1)
    if m := _REL_TEXT.match(text):
        return RelMove(
            normalize_relator_name(m.group(1)),
            int(m.group(2)),
            Direction.from_text(m.group(3)),
        )
    if m := _PAIR_TEXT.match(text):
        return PairMove(m.group(1) == "ins", int(m.group(2)),
                        _parse_letter_token(m.group(3)))
    if m := _SLIDE_TEXT.match(text):
        sign = 1 if m.group(3) in (None, "+") else -1
        return SlideMove(m.group(1) == "psl*", int(m.group(2)), sign)
    raise ValueError(f"unrecognized move '{text}'")


# ---------------------------------------------------------------------------
# replay


def apply_move(word: BraidWord, move, manifold: "ManifoldPresentation | None" = None) -> BraidWord:
    return move.apply(word, manifold)


def replay_witness(word: BraidWord, moves,
                   manifold: "ManifoldPresentation | None" = None) -> BraidWord:
    for move in moves:
        word = move.apply(word, manifold)
    return word


def invert_witness(moves) -> tuple:
    return tuple(move.inverted() for move in reversed(moves))


def free_reduce_with_moves(word: BraidWord):
    """Free reduction that records each cancellation as an explicit move.

    Returns (reduced word, moves); replaying the moves on the input gives
    the reduced word exactly, position by position.
    """
    stack: list[Letter] = []
    moves: list[PairMove] = []
    for letter in word.letters:
        if stack and stack[-1] == letter.inverse():
            moves.append(PairMove(False, len(stack) - 1, stack[-1]))
            stack.pop()
        else:
            stack.append(letter)
    if not moves:
        return word, ()
    return BraidWord(word.context, tuple(stack)), tuple(moves)
