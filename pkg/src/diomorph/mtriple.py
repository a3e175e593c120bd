"""Leveled rewriting systems that compute polynomials as letter counts.

The shape: an alphabet with t+1 levels whose last level is a single letter e,
plus two endomorphisms.  The first (g1) rewrites within each level, the
second (g2) hands a level's output down to the next level and erases the
rest.  Running  w · g1^{n₁} g2 · g1^{n₂} g2 ⋯ g1^{n_t} g2  from a suitable
witness word w leaves a power of e alone, and the exponent — as a function of
(n₁, …, n_t) — is the polynomial the system computes.

Built here:

* validation of the five defining conditions (plus triangularity) with a
  per-condition report that names violating letters;
* the power gadget: a 2^k-letter morphism whose n-fold iteration turns one
  letter into n^k copies of the last letter (rows of the k-fold Kronecker
  power of [[1,1],[0,1]]), plus the trivial gadget for exponent zero;
* monomial systems, their merge (disjoint union sharing one e), nonnegative
  linear combinations via witness repetition, and the fold that compiles an
  arbitrary nonzero polynomial with nonnegative coefficients;
* evaluation, word-level when feasible and via letter-count matrices when
  the intermediate words would blow past the expansion cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import lang, matsem, morph, poly
from .config import alphabet_budget
from .errors import AlphabetBudgetExceeded, DimensionMismatch, ExpansionCapExceeded
from .lang import LeveledAlphabet, Letter, Word
from .morph import Morphism

CONDITION_NAMES = (
    "structural",
    "level_preserving",
    "level_raising",
    "square_erasing",
    "final_level_singleton",
    "final_letter_erased",
    "triangular",
)


@dataclass(frozen=True)
class ConditionResult:
    name: str
    passed: bool
    violations: tuple[str, ...] = ()

    def __str__(self) -> str:
        if self.passed:
            return f"{self.name}: ok"
        listed = ", ".join(self.violations) if self.violations else "?"
        return f"{self.name}: FAIL ({listed})"


@dataclass(frozen=True)
class MTripleReport:
    conditions: tuple[ConditionResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    def condition(self, name: str) -> ConditionResult:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def failed_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.conditions if not c.passed)

    def __str__(self) -> str:
        return "\n".join(str(c) for c in self.conditions)


@dataclass(frozen=True)
class MTriple:
    """A candidate leveled system; see validate_mtriple for the conditions."""

    alphabet: LeveledAlphabet
    g1: Morphism
    g2: Morphism
    dimension: int

    @property
    def final_letter(self) -> Letter:
        return self.alphabet.letters[-1]

    def level(self, i: int) -> tuple[Letter, ...]:
        return self.alphabet.levels[i - 1]


@dataclass(frozen=True)
class ComputableMap:
    """An M-triple together with a start word and the polynomial it computes."""

    triple: MTriple
    witness: Word
    polynomial: poly.Polynomial

    def __post_init__(self):
        assert self.witness.alphabet == self.triple.alphabet
        level1 = set(self.triple.level(1))
        assert self.witness.support() <= level1, "witness must stay in the first level"
        assert self.polynomial.arity == self.triple.dimension


def validate_mtriple(alphabet: LeveledAlphabet, g1: Morphism, g2: Morphism,
                     dimension: int) -> MTripleReport:
    """Check every defining condition, reporting violating letters per condition."""
    for name, g in (("g1", g1), ("g2", g2)):
        if not (g.is_endomorphism and g.domain == alphabet):
            raise DimensionMismatch(f"{name} must be an endomorphism over the candidate alphabet")

    structural: list[str] = []
    if dimension < 1:
        structural.append(f"dimension {dimension} < 1")
    if alphabet.level_count != dimension + 1:
        structural.append(f"{alphabet.level_count} levels for dimension {dimension}")
    levels = alphabet.levels
    top = len(levels)  # the level that must hold only the final letter

    preserving = [
        a
        for li, block in enumerate(levels, start=1)
        for a in block
        if not all(alphabet.level_of(z) == li for z in g1.image(a).support())
    ]

    raising = [
        a
        for li, block in enumerate(levels[:-1], start=1)
        for a in block
        if not all(alphabet.level_of(z) == li + 1 for z in g2.image(a).support())
    ]

    squares = [a for a in alphabet.letters if not morph.apply(g2, g2.image(a)).is_empty]

    last_level = levels[-1]
    singleton = list(last_level) if len(last_level) != 1 else []

    final = alphabet.letters[-1]
    erased = [] if g1.image(final).is_empty and g2.image(final).is_empty else [final]

    triangular = [
        f"{tag}:{a}"
        for tag, g in (("g1", g1), ("g2", g2))
        for i, a in enumerate(alphabet.letters)
        if any(alphabet.index_of(z) < i for z in g.image(a).support())
    ]

    found = dict(
        structural=structural,
        level_preserving=preserving,
        level_raising=raising,
        square_erasing=squares,
        final_level_singleton=singleton,
        final_letter_erased=erased,
        triangular=triangular,
    )
    return MTripleReport(tuple(
        ConditionResult(name, not found[name], tuple(found[name])) for name in CONDITION_NAMES
    ))


def validate(triple: MTriple) -> MTripleReport:
    return validate_mtriple(triple.alphabet, triple.g1, triple.g2, triple.dimension)


# ------------------------------------------------------------------ power gadgets

def _superset_masks(mask: int, k: int) -> list[int]:
    return [j for j in range(2**k) if j | mask == j]


def kronecker_power_morphism(k: int, budget: int | None = None) -> tuple[LeveledAlphabet, Morphism]:
    """A 2^k-letter morphism h with |apply(h^n, first)|_last = n^k.

    Letter i's image is the increasing product of all letters whose index
    bitmask (0-based) contains letter i's; the letter-count matrix is then
    exactly the k-fold Kronecker power of [[1,1],[0,1]].
    """
    if k < 1:
        raise ValueError("power gadget needs k >= 1")
    limit = alphabet_budget(budget)
    if 2**k > limit:
        raise AlphabetBudgetExceeded(2**k, limit, f"power gadget for exponent {k}")
    alphabet = lang.flat_alphabet([f"z{i + 1}" for i in range(2**k)])
    table = {
        f"z{i + 1}": lang.word(alphabet, [f"z{j + 1}" for j in _superset_masks(i, k)])
        for i in range(2**k)
    }
    return alphabet, morph.endomorphism(alphabet, table)


def constant_exponent_morphism() -> tuple[LeveledAlphabet, Morphism]:
    """The exponent-0 gadget: |apply(h^n, a)|_b = 1 for every n >= 1."""
    alphabet = lang.flat_alphabet(["a", "b"])
    b = lang.word(alphabet, ["b"])
    return alphabet, morph.endomorphism(alphabet, {"a": b, "b": b})


def _block_images(exponent: int) -> list[list[int]]:
    """Per-letter image index lists (0-based) for one level's gadget."""
    if exponent == 0:
        return [[1], [1]]  # a -> b, b -> b
    return [_superset_masks(i, exponent) for i in range(2**exponent)]


# ------------------------------------------------------------------ monomials

def _leveled_names(sizes: Sequence[int]) -> LeveledAlphabet:
    blocks = [[f"{li}.{j + 1}" for j in range(size)] for li, size in enumerate(sizes, start=1)]
    blocks.append(["e"])
    return lang.leveled_alphabet(blocks)


def monomial_mtriple(exponents: Sequence[int], budget: int | None = None) -> ComputableMap:
    """The system computing x₁^{α₁} ⋯ x_t^{α_t}, with the first letter as witness."""
    t = len(exponents)
    if t < 1:
        raise ValueError("need at least one exponent")
    if any(a < 0 for a in exponents):
        raise ValueError("exponents must be nonnegative")
    sizes = [2 ** max(a, 1) for a in exponents]
    limit = alphabet_budget(budget)
    if sum(sizes) + 1 > limit:
        raise AlphabetBudgetExceeded(sum(sizes) + 1, limit,
                                     f"monomial with exponents {tuple(exponents)}")
    alphabet = _leveled_names(sizes)
    levels = alphabet.levels
    eps = lang.epsilon(alphabet)

    table1 = {"e": eps}
    for li, exponent in enumerate(exponents, start=1):
        block = levels[li - 1]
        for local, image_indices in enumerate(_block_images(exponent)):
            table1[block[local]] = lang.word(alphabet, [block[j] for j in image_indices])
    g1 = morph.endomorphism(alphabet, table1)

    table2 = {a: eps for a in alphabet.letters}
    for li in range(1, t + 1):
        last = levels[li - 1][-1]
        first_of_next = levels[li][0]  # level t feeds the final letter
        table2[last] = lang.word(alphabet, [first_of_next])
    g2 = morph.endomorphism(alphabet, table2)

    triple = MTriple(alphabet, g1, g2, t)
    witness = lang.word(alphabet, [levels[0][0]])
    monomial = poly.polynomial(t, {tuple(exponents): 1})
    return ComputableMap(triple, witness, monomial)


# ------------------------------------------------------------------ combination

def direct_sum_maps(left: ComputableMap, right: ComputableMap,
                    budget: int | None = None) -> tuple[ComputableMap, ComputableMap]:
    """Merge two systems of equal dimension into one with a shared final letter.

    Levels are concatenated side by side (left part first) and every letter
    is re-addressed to the canonical "level.position" scheme; both witnesses
    come back translated into the merged alphabet.
    """
    ft, gt = left.triple, right.triple
    t = ft.dimension
    if gt.dimension != t:
        raise DimensionMismatch(f"dimensions {t} and {gt.dimension} differ")

    sizes = [len(ft.level(i)) + len(gt.level(i)) for i in range(1, t + 1)]
    limit = alphabet_budget(budget)
    if sum(sizes) + 1 > limit:
        raise AlphabetBudgetExceeded(sum(sizes) + 1, limit, "direct sum of two systems")
    merged = _leveled_names(sizes)

    def renaming(triple: MTriple, offset_of) -> dict[Letter, Letter]:
        out = {triple.final_letter: "e"}
        for li in range(1, t + 1):
            block = merged.levels[li - 1]
            for local, a in enumerate(triple.level(li)):
                out[a] = block[offset_of(li) + local]
        return out

    rename_left = renaming(ft, lambda li: 0)
    rename_right = renaming(gt, lambda li: len(ft.level(li)))

    def merge_images(g_left: Morphism, g_right: Morphism) -> Morphism:
        table = {"e": lang.epsilon(merged)}
        for a in ft.alphabet.letters[:-1]:
            table[rename_left[a]] = lang.translate(g_left.image(a), rename_left, merged)
        for a in gt.alphabet.letters[:-1]:
            table[rename_right[a]] = lang.translate(g_right.image(a), rename_right, merged)
        return morph.endomorphism(merged, table)

    triple = MTriple(merged, merge_images(ft.g1, gt.g1), merge_images(ft.g2, gt.g2), t)
    return (
        ComputableMap(triple, lang.translate(left.witness, rename_left, merged), left.polynomial),
        ComputableMap(triple, lang.translate(right.witness, rename_right, merged), right.polynomial),
    )


def repeat_witness(c: ComputableMap, times: int) -> ComputableMap:
    """Same system, witness repeated: computes the `times`-fold multiple."""
    if times < 1:
        raise ValueError("repetition count must be positive")
    return ComputableMap(c.triple, lang.word_power(c.witness, times),
                         poly.scale(c.polynomial, times))


def linear_combination(left: ComputableMap, right: ComputableMap,
                       alpha: int, beta: int, budget: int | None = None) -> ComputableMap:
    """The map computing alpha·left + beta·right, witnessed by u^alpha v^beta."""
    if alpha < 1 or beta < 1:
        raise ValueError("combination weights must be positive integers")
    merged_left, merged_right = direct_sum_maps(left, right, budget)
    witness = lang.word_concat(
        lang.word_power(merged_left.witness, alpha),
        lang.word_power(merged_right.witness, beta),
    )
    combined = poly.add(poly.scale(left.polynomial, alpha), poly.scale(right.polynomial, beta))
    return ComputableMap(merged_left.triple, witness, combined)


def compile_polynomial(p: poly.Polynomial, budget: int | None = None) -> ComputableMap:
    """Fold the monomial systems of a nonzero polynomial into one map.

    Each coefficient enters as a witness repetition count, never by
    duplicating alphabet letters.
    """
    if p.is_zero:
        raise ValueError("cannot compile the zero polynomial")
    parts = [
        repeat_witness(monomial_mtriple(exps, budget), coeff)
        for exps, coeff in p.terms
    ]
    acc = parts[0]
    for part in parts[1:]:
        merged_acc, merged_part = direct_sum_maps(acc, part, budget)
        acc = ComputableMap(
            merged_acc.triple,
            lang.word_concat(merged_acc.witness, merged_part.witness),
            poly.add(merged_acc.polynomial, merged_part.polynomial),
        )
    assert acc.polynomial == p
    return acc


# ------------------------------------------------------------------ evaluation

WORD_LEVEL_POINT_LIMIT = 512


def compute_word_level(c: ComputableMap, point: Sequence[int], cap: int | None = None) -> int:
    """Run the iteration on actual words and read off the exponent of e."""
    _check_point(c, point)
    current = c.witness
    for n in point:
        for _ in range(n):
            current = morph.apply(c.triple.g1, current, cap)
        current = morph.apply(c.triple.g2, current, cap)
    assert current.support() <= {c.triple.final_letter}, "iteration must end in the final letter"
    return current.length


def compute_matrix_level(c: ComputableMap, point: Sequence[int]) -> int:
    """Transport the witness letter counts through matrix powers instead."""
    _check_point(c, point)
    m1 = morph.matrix_of(c.triple.g1)
    m2 = morph.matrix_of(c.triple.g2)
    vec = morph.parikh_vector(c.witness)
    for n in point:
        vec = matsem.vec_mat(vec, matsem.mat_pow(m1, n))
        vec = matsem.vec_mat(vec, m2)
    final_index = len(c.triple.alphabet) - 1
    assert set(vec) <= {final_index}, "iteration must end in the final letter"
    return vec.get(final_index, 0)


def compute(c: ComputableMap, point: Sequence[int], method: str = "auto",
            cap: int | None = None) -> int:
    """Evaluate the computed polynomial at a point of positive integers.

    "auto" runs word-level for small points and falls back to letter-count
    matrices when words would overrun the expansion cap (the two agree by
    the count-transport invariant).
    """
    if method == "word":
        return compute_word_level(c, point, cap)
    if method == "matrix":
        return compute_matrix_level(c, point)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    if max(point, default=1) <= WORD_LEVEL_POINT_LIMIT:
        try:
            return compute_word_level(c, point, cap)
        except ExpansionCapExceeded:
            pass
    return compute_matrix_level(c, point)


def _check_point(c: ComputableMap, point: Sequence[int]) -> None:
    if len(point) != c.triple.dimension:
        raise DimensionMismatch(
            f"point has {len(point)} entries, dimension is {c.triple.dimension}")
    if any(n < 1 for n in point):
        raise ValueError("point entries must be >= 1")
