"""Free-monoid morphisms as per-letter image tables.

A morphism is determined by the image word of each domain letter and extends
homomorphically to all words.  Images act on the right and composition reads
left to right: ``compose(f, g)`` is the map "apply f, then g", so
``apply(compose(f, g), w) == apply(g, apply(f, w))``.

The bridge to matrices: ``matrix_of(g)`` has as row i the letter counts of
the image of letter i.  Counting letters before or after applying g is the
same thing (``parikh(apply(g, w)) == parikh(w) · matrix_of(g)``), and the
matrix of a composition is the product of the matrices; those two facts carry
every word-level statement in this package over to exact integer matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from . import lang, matsem
from .errors import AlphabetMismatch, ExpansionCapExceeded
from .config import expansion_cap
from .lang import LeveledAlphabet, Letter, Word


@dataclass(frozen=True)
class Morphism:
    domain: LeveledAlphabet
    codomain: LeveledAlphabet
    images: tuple[Word, ...]  # aligned with domain.letters

    def __post_init__(self):
        assert len(self.images) == len(self.domain.letters), "one image per domain letter"
        for img in self.images:
            assert img.alphabet == self.codomain, "images must live over the codomain"

    @property
    def is_endomorphism(self) -> bool:
        return self.domain == self.codomain

    def image(self, letter: Letter) -> Word:
        return self.images[self.domain.index_of(letter)]

    def table(self) -> dict[Letter, Word]:
        return dict(zip(self.domain.letters, self.images))

    def __str__(self) -> str:
        rows = [f"{z} -> {lang.text(img) or 'ε'}" for z, img in zip(self.domain.letters, self.images)]
        return "\n".join(rows)


def morphism(domain: LeveledAlphabet, codomain: LeveledAlphabet,
             table: Mapping[Letter, Word]) -> Morphism:
    """Build a morphism from a letter -> image word table (must be total)."""
    missing = [z for z in domain.letters if z not in table]
    if missing:
        raise AlphabetMismatch(f"no image given for letters {missing}")
    extra = [z for z in table if z not in domain]
    if extra:
        raise AlphabetMismatch(f"images given for letters outside the domain: {extra}")
    return Morphism(domain, codomain, tuple(table[z] for z in domain.letters))


def endomorphism(alphabet: LeveledAlphabet, table: Mapping[Letter, Word]) -> Morphism:
    return morphism(alphabet, alphabet, table)


def identity_morphism(alphabet: LeveledAlphabet) -> Morphism:
    return Morphism(alphabet, alphabet, tuple(lang.word(alphabet, [z]) for z in alphabet.letters))


def zero_morphism(alphabet: LeveledAlphabet) -> Morphism:
    """Every letter erased; the absorbing element for composition."""
    eps = lang.epsilon(alphabet)
    return Morphism(alphabet, alphabet, tuple(eps for _ in alphabet.letters))


def apply(m: Morphism, w: Word, cap: int | None = None) -> Word:
    """Homomorphic extension of m to a word, in run form.

    A run a^n maps to (image of a)^n; single-letter images keep the result
    compact regardless of n, while multi-run images multiply the run count
    and are therefore cap-guarded.
    """
    if w.alphabet != m.domain:
        raise AlphabetMismatch("word is not over the morphism's domain")
    limit = expansion_cap(cap)
    pairs: list[tuple[Letter, int]] = []
    for letter, count in w.runs:
        img = m.images[m.domain.index_of(letter)]
        if not img.runs:
            continue
        if len(img.runs) == 1:
            z, c = img.runs[0]
            pairs.append((z, c * count))
        else:
            needed = len(pairs) + len(img.runs) * count
            if needed > limit:
                raise ExpansionCapExceeded(
                    needed, limit, f"image of run {letter}^{count} under application")
            pairs.extend(img.runs * count)
    return lang.word_from_runs(m.codomain, pairs)


def compose(f: Morphism, g: Morphism, cap: int | None = None) -> Morphism:
    """The morphism "f then g"; image tables are materialized eagerly."""
    if f.codomain != g.domain:
        raise AlphabetMismatch("codomain of the first morphism must be the domain of the second")
    images = []
    for letter, img in zip(f.domain.letters, f.images):
        try:
            images.append(apply(g, img, cap))
        except ExpansionCapExceeded as exc:
            raise ExpansionCapExceeded(
                exc.needed, exc.cap, f"composing: image of letter {letter!r} is too large") from None
    return Morphism(f.domain, g.codomain, tuple(images))


def compose_all(morphisms: Sequence[Morphism], cap: int | None = None) -> Morphism:
    """Left-to-right composite of a nonempty sequence."""
    if not morphisms:
        raise ValueError("need at least one morphism")
    acc = morphisms[0]
    for m in morphisms[1:]:
        acc = compose(acc, m, cap)
    return acc


def power(m: Morphism, k: int, cap: int | None = None) -> Morphism:
    """k-fold composite of an endomorphism with itself; k = 0 is the identity."""
    if not m.is_endomorphism:
        raise AlphabetMismatch("powers need an endomorphism")
    if k < 0:
        raise ValueError("negative power")
    acc = identity_morphism(m.domain)
    for _ in range(k):
        acc = compose(acc, m, cap)
    return acc


def direct_sum(f: Morphism, g: Morphism) -> Morphism:
    """Endomorphism on the disjoint union acting as f on one part, g on the other.

    Letters keep their names (the parts must not share any); the combined
    alphabet lists f's letters first, with both level partitions preserved
    side by side.
    """
    if not (f.is_endomorphism and g.is_endomorphism):
        raise AlphabetMismatch("direct sum needs endomorphisms")
    overlap = set(f.domain.letters) & set(g.domain.letters)
    if overlap:
        raise AlphabetMismatch(f"alphabets must be disjoint, both contain {sorted(overlap)}")
    combined = LeveledAlphabet(
        f.domain.letters + g.domain.letters,
        f.domain.level_sizes + g.domain.level_sizes,
    )
    images = tuple(
        lang.word_from_runs(combined, img.runs)
        for img in f.images + g.images
    )
    return Morphism(combined, combined, images)


def parikh_vector(w: Word) -> matsem.Vector:
    """Letter counts of w as a sparse vector indexed by alphabet position."""
    return {w.alphabet.index_of(z): n for z, n in lang.parikh(w).items()}


def matrix_of(g: Morphism) -> matsem.SparseMatrix:
    """The letter-count matrix: row i counts the letters in the image of letter i."""
    if not g.is_endomorphism:
        raise AlphabetMismatch("the letter-count matrix needs an endomorphism")
    k = len(g.domain)
    items = [
        (i, j, n)
        for i, img in enumerate(g.images)
        for j, n in parikh_vector(img).items()
    ]
    return matsem.matrix(k, items)


def is_upper_triangular(g: Morphism) -> bool:
    """True iff every letter's image uses only letters at or after it in the order."""
    if not g.is_endomorphism:
        raise AlphabetMismatch("triangularity needs an endomorphism")
    order = g.domain.index_of
    return all(
        all(order(z) >= i for z in img.support())
        for i, img in enumerate(g.images)
    )


def is_zero_morphism(g: Morphism) -> bool:
    return all(img.is_empty for img in g.images)
