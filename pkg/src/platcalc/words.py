"""Words in the braid group of an orientable surface with boundary.

A word lives in a fixed :class:`GroupContext` (a genus and an even strand
count) and is a finite sequence of signed generator letters: the band
generators ``s1 .. s(k-1)`` on ``k`` strands, plus one pair of handle
generators ``a_j``, ``b_j`` per handle.  This module only knows about the
free structure: parsing, formatting, free reduction, inversion and
concatenation.  Relations live elsewhere.
"""

from __future__ import annotations

import dataclasses
import enum
import itertools
import re


class Kind(enum.Enum):
    SIGMA = "s"
    A = "a"
    B = "b"


@dataclasses.dataclass(frozen=True, slots=True)
class GroupContext:
    """Ambient group: ``genus`` handles, ``strands`` strands (even)."""

    genus: int
    strands: int

    def __post_init__(self) -> None:
        if self.genus < 0:
            raise ValueError(f"genus must be >= 0, got {self.genus}")
        if self.strands < 2 or self.strands % 2 != 0:
            raise ValueError(f"strand count must be even and >= 2, got {self.strands}")

    @property
    def pairs(self) -> int:
        return self.strands // 2


@dataclasses.dataclass(frozen=True, slots=True)
class Letter:
    """One signed generator occurrence."""

    kind: Kind
    index: int
    sign: int

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ValueError(f"generator index must be >= 1, got {self.index}")
        if self.sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {self.sign}")

    def inverse(self) -> Letter:
        return Letter(self.kind, self.index, -self.sign)

    def token(self) -> str:
        base = f"{self.kind.value}{self.index}"
        return base if self.sign == 1 else base + "^-1"

    def fits(self, context: GroupContext) -> bool:
        if self.kind is Kind.SIGMA:
            return self.index <= context.strands - 1
        return self.index <= context.genus


def sigma(i: int, sign: int = 1) -> Letter:
    return Letter(Kind.SIGMA, i, sign)


def gen_a(j: int, sign: int = 1) -> Letter:
    return Letter(Kind.A, j, sign)


def gen_b(j: int, sign: int = 1) -> Letter:
    return Letter(Kind.B, j, sign)


@dataclasses.dataclass(frozen=True, slots=True)
class BraidWord:
    """A letter sequence anchored to its ambient group."""

    context: GroupContext
    letters: tuple[Letter, ...]

    def __post_init__(self) -> None:
        for letter in self.letters:
            if not letter.fits(self.context):
                raise ValueError(
                    f"generator {letter.kind.value}{letter.index} out of range for "
                    f"genus {self.context.genus}, {self.context.strands} strands"
                )

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self)


def word(context: GroupContext, letters: "list[Letter] | tuple[Letter, ...]" = ()) -> BraidWord:
    return BraidWord(context, tuple(letters))


_TOKEN = re.compile(r"([sab])(\d+)(?:\^(-?\d+))?\Z")


def parse_word(text: str, context: GroupContext) -> BraidWord:
    """Parse whitespace-separated generator tokens.

    A token is ``s``/``a``/``b`` followed by a positive index and an
    optional nonzero exponent, e.g. ``s3``, ``a2^-1``, ``s1^4``.  Exponents
    expand eagerly into repeated letters.  Empty input is the identity.
    """
    letters: list[Letter] = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if m is None:
            raise ValueError(f"malformed token '{tok}'")
        kind = Kind(m.group(1))
        index = int(m.group(2))
        if index < 1:
            raise ValueError(f"index must be positive in token '{tok}'")
        exponent = int(m.group(3)) if m.group(3) is not None else 1
        if exponent == 0:
            raise ValueError(f"zero exponent in token '{tok}'")
        sign = 1 if exponent > 0 else -1
        letters.extend(Letter(kind, index, sign) for _ in range(abs(exponent)))
    return BraidWord(context, tuple(letters))


def format_word(word: BraidWord) -> str:
    """Render a word back to token text, compressing runs into exponents."""
    parts: list[str] = []
    for letter, run in itertools.groupby(word.letters):
        count = sum(1 for _ in run)
        exponent = letter.sign * count
        base = f"{letter.kind.value}{letter.index}"
        parts.append(base if exponent == 1 else f"{base}^{exponent}")
    return " ".join(parts)


def free_reduce(word: BraidWord) -> BraidWord:
    """Cancel adjacent inverse pairs until none remain."""
    stack: list[Letter] = []
    for letter in word.letters:
        if stack and stack[-1] == letter.inverse():
            stack.pop()
        else:
            stack.append(letter)
    if len(stack) == len(word.letters):
        return word
    return BraidWord(word.context, tuple(stack))


def invert(word: BraidWord) -> BraidWord:
    return BraidWord(word.context, tuple(l.inverse() for l in reversed(word.letters)))


def concat(*words: BraidWord) -> BraidWord:
    if not words:
        raise ValueError("concat needs at least one word")
    context = words[0].context
    for w in words[1:]:
        if w.context != context:
            raise ValueError(f"context mismatch: {context} vs {w.context}")
    letters: tuple[Letter, ...] = ()
    for w in words:
        letters = letters + w.letters
    return BraidWord(context, letters)


def embed(word: BraidWord, context: GroupContext) -> BraidWord:
    """Reinterpret a word in a larger ambient group, indices unchanged."""
    if context.genus < word.context.genus or context.strands < word.context.strands:
        raise ValueError(
            f"cannot embed word from {word.context} into smaller context {context}"
        )
    return BraidWord(context, word.letters)
