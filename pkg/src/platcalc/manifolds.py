"""Closed 3-manifolds given by symbolic Heegaard data, and their homology.

A manifold of genus g is stored as g attaching words and g dual attaching
words, each a 2-strand braid word whose plat closure is the corresponding
attaching circle.  First homology is the cokernel of the 2g x 2g integer
matrix collecting the closure classes of all 2g circles; closure classes
of arbitrary links reduce into that cokernel through the Smith transform.
"""

from __future__ import annotations

import dataclasses
import functools
import math
import re

from .invariants import ClosureReport, closure_report, plat_components
from .snf import smith_normal_form
from .words import BraidWord, GroupContext, gen_a, gen_b, parse_word


@dataclasses.dataclass(frozen=True, slots=True)
class HomologyGroup:
    free_rank: int
    torsion: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValueError("free rank must be >= 0")
        for t in self.torsion:
            if t <= 1:
                raise ValueError("torsion coefficients must be > 1")
        for prev, cur in zip(self.torsion, self.torsion[1:]):
            if cur % prev:
                raise ValueError("torsion coefficients must form a divisibility chain")

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " x ".join(parts) if parts else "0"


@dataclasses.dataclass(frozen=True, slots=True)
class ManifoldPresentation:
    """Genus, attaching words c_i, dual attaching words c*_i, optional label."""

    genus: int
    attaching_words: tuple[BraidWord, ...]
    dual_words: tuple[BraidWord, ...]
    label: "str | None" = None

    def __post_init__(self) -> None:
        ctx = GroupContext(genus=self.genus, strands=2)
        if len(self.attaching_words) != self.genus:
            raise ValueError(f"need {self.genus} attaching words, "
                             f"got {len(self.attaching_words)}")
        if len(self.dual_words) != self.genus:
            raise ValueError(f"need {self.genus} dual words, got {len(self.dual_words)}")
        for w in self.attaching_words + self.dual_words:
            if w.context != ctx:
                raise ValueError(f"attaching data must live in {ctx}, got {w.context}")
            if len(plat_components(w)) != 1:
                raise ValueError("attaching circles must close to knots")

    @property
    def has_standard_duals(self) -> bool:
        return all(
            w.letters == (gen_b(i),)
            for i, w in enumerate(self.dual_words, start=1)
        )

    def name(self) -> str:
        return self.label if self.label is not None else f"genus-{self.genus} manifold"


def standard_duals(genus: int) -> tuple[BraidWord, ...]:
    ctx = GroupContext(genus=genus, strands=2)
    return tuple(BraidWord(ctx, (gen_b(i),)) for i in range(1, genus + 1))


def torus_braid(p: int, q: int) -> BraidWord:
    """2-strand word closing to the (p,q) curve on the genus-1 surface.

    Supported pairs: coprime 0 < q < p, plus the degenerate (1,0) and (0,1).
    The q negative meridian letters are distributed as evenly as possible
    between the p longitude letters.
    """
    if p < 0 or q < 0:
        raise ValueError(f"unsupported pair ({p},{q}): negative entries")
    if math.gcd(p, q) != 1:
        raise ValueError(f"({p},{q}) is not coprime")
    ctx = GroupContext(genus=1, strands=2)
    if (p, q) == (1, 0):
        return BraidWord(ctx, (gen_a(1),))
    if (p, q) == (0, 1):
        return BraidWord(ctx, (gen_b(1),))
    if not 0 < q < p:
        raise ValueError(f"unsupported pair ({p},{q}): need 0 < q < p")
    r = p % q
    low = p // q
    letters = []
    for _ in range(r):
        letters += [gen_b(1, -1)] + [gen_a(1)] * (low + 1)
    for _ in range(q - r):
        letters += [gen_b(1, -1)] + [gen_a(1)] * low
    return BraidWord(ctx, tuple(letters))


def lens_space(p: int, q: int) -> ManifoldPresentation:
    return ManifoldPresentation(
        genus=1,
        attaching_words=(torus_braid(p, q),),
        dual_words=standard_duals(1),
        label=f"L({p},{q})",
    )


def _class_of(word: BraidWord) -> tuple[int, ...]:
    return closure_report(word).component_classes[0]


def relation_matrix(m: ManifoldPresentation) -> tuple[tuple[int, ...], ...]:
    """Rows: closure classes of c_1..c_g, then c*_1..c*_g."""
    return tuple(_class_of(w) for w in m.attaching_words + m.dual_words)


@functools.lru_cache(maxsize=None)
def _reduction(m: ManifoldPresentation):
    snf = smith_normal_form(relation_matrix(m))
    size = 2 * m.genus
    diag = list(snf.diagonal) + [0] * (size - len(snf.diagonal))
    keep = tuple(j for j in range(size) if diag[j] != 1)
    return snf.v, tuple(diag), keep


def h1_of_manifold(m: ManifoldPresentation) -> HomologyGroup:
    _, diag, _ = _reduction(m)
    nonzero = [d for d in diag if d]
    return HomologyGroup(
        free_rank=2 * m.genus - len(nonzero),
        torsion=tuple(d for d in nonzero if d > 1),
    )


def reduce_class(m: ManifoldPresentation, vector: tuple[int, ...]) -> tuple[int, ...]:
    """Canonical coset representative of the pair {v, -v} in H1(M).

    Coordinates follow the Smith diagonal with the trivial (=1) positions
    dropped: torsion coordinates lie in [0, d), free coordinates are plain
    integers.  Of the two sign choices the winner is the one that is
    coordinate-wise smaller in magnitude, ties going to the nonnegative
    value, compared left to right.
    """
    v_mat, diag, keep = _reduction(m)
    if len(vector) != 2 * m.genus:
        raise ValueError(f"class vector must have length {2 * m.genus}")
    w = [sum(vector[i] * v_mat[i][j] for i in range(len(vector))) for j in keep]
    ds = [diag[j] for j in keep]
    pos = tuple(x % d if d else x for x, d in zip(w, ds))
    neg = tuple((-x) % d if d else -x for x, d in zip(w, ds))
    return min(pos, neg, key=lambda t: tuple((abs(x), x < 0) for x in t))


def class_in_manifold(report: ClosureReport, m: ManifoldPresentation):
    """Multiset (sorted tuple) of the component classes reduced into H1(M)."""
    if report.context.genus != m.genus:
        raise ValueError(f"genus mismatch: closure in genus {report.context.genus}, "
                         f"manifold has genus {m.genus}")
    return tuple(sorted(reduce_class(m, v) for v in report.component_classes))


_CONFIG_ATTACH = re.compile(r"c(\d+)\Z")
_CONFIG_DUAL = re.compile(r"cstar(\d+)\Z")


def parse_manifold_config(text: str) -> ManifoldPresentation:
    """Parse the line-oriented manifold format.

    Lines: ``genus: g``, ``c<i>: <word>``, optional ``cstar<i>: <word>``
    (default b_i), optional ``label: <text>``.  Blank lines and ``#``
    comments are ignored.
    """
    genus = None
    attach: dict[int, str] = {}
    duals: dict[int, str] = {}
    label = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ValueError(f"manifold config line {lineno}: expected 'key: value'")
        key, value = key.strip(), value.strip()
        if key == "genus":
            if not re.fullmatch(r"\d+", value):
                raise ValueError(f"manifold config line {lineno}: bad genus '{value}'")
            genus = int(value)
        elif key == "label":
            label = value
        elif mm := _CONFIG_ATTACH.match(key):
            attach[int(mm.group(1))] = value
        elif mm := _CONFIG_DUAL.match(key):
            duals[int(mm.group(1))] = value
        else:
            raise ValueError(f"manifold config line {lineno}: unknown key '{key}'")
    if genus is None:
        raise ValueError("manifold config: missing 'genus:' line")
    wanted = set(range(1, genus + 1))
    if set(attach) != wanted:
        raise ValueError(
            f"manifold config: need attaching words c1..c{genus}, "
            f"got {sorted(attach) or 'none'}"
        )
    if not set(duals) <= wanted:
        raise ValueError(f"manifold config: dual index out of range: {sorted(duals)}")
    ctx = GroupContext(genus=genus, strands=2)
    return ManifoldPresentation(
        genus=genus,
        attaching_words=tuple(parse_word(attach[i], ctx) for i in sorted(wanted)),
        dual_words=tuple(
            parse_word(duals.get(i, f"b{i}"), ctx) for i in sorted(wanted)
        ),
        label=label,
    )
