"""Lattice-point combinatorics of generalized string polytopes.

The projected polytope, multiplicities, component counts, and fiber string
polytopes are all computed from Ω-images of generated crystals, never from
inequality systems; the one H-description the source example provides is a
test fixture only.  Exported points use the positive string orientation, i.e.
they are the negatives of Newton-Okounkov valuation vectors.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .crystal import DEFAULT_BUDGET
from .demazure import gen_demazure_crystal, gen_demazure_crystal_weights
from .rootsys import RootSystem, SubsetSequence, UnsupportedInputError, Weight, WordSequence


@dataclass(frozen=True)
class LatticePointSet:
    """Sorted distinct nonnegative integer vectors, with the word and scaling level."""

    block_sizes: tuple[int, ...]
    points: tuple[tuple[int, ...], ...]
    level: int

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be a positive integer")
        if len(set(self.points)) != len(self.points):
            raise ValueError("lattice points must be pairwise distinct")

    def __len__(self):
        return len(self.points)

    def to_csv_lines(self) -> list[str]:
        header = []
        for k, size in enumerate(self.block_sizes, start=1):
            header.extend(f"x{k}_{l}" for l in range(1, size + 1))
        lines = [",".join(header)]
        lines.extend(",".join(str(x) for x in p) for p in self.points)
        return lines


@dataclass(frozen=True)
class MultiplicityTable:
    """Dominant weight (ϖ-coordinates) → strictly positive multiplicity."""

    entries: tuple[tuple[tuple[int, ...], int], ...]

    @classmethod
    def from_counter(cls, counts: Counter) -> "MultiplicityTable":
        return cls(tuple(sorted((nu, c) for nu, c in counts.items() if c > 0)))

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.entries)

    def to_json_dict(self) -> dict[str, int]:
        return {",".join(str(x) for x in nu): c for nu, c in self.entries}

    def total(self) -> int:
        return sum(c for _, c in self.entries)


def lattice_points(rs: RootSystem, word, a, level: int = 1, budget: int = DEFAULT_BUDGET) -> LatticePointSet:
    """Ω-image of B_{i, level·a}; at level 1 this is exactly Δ_{i,a} ∩ Z^N."""
    a = tuple(int(x) for x in a)
    if any(x < 0 for x in a):
        raise ValueError("exponent vector entries must be nonnegative")
    if level < 1:
        raise ValueError("level must be a positive integer")
    scaled = tuple(level * x for x in a)
    crystal = gen_demazure_crystal(rs, word, scaled, budget)
    pts = tuple(sorted(sv.entries for sv in crystal.omega_map().values()))
    return LatticePointSet(block_sizes=(1,) * len(tuple(word)), points=pts, level=level)


def _prepare(rs: RootSystem, subsets, lams, words):
    subsets = subsets if isinstance(subsets, SubsetSequence) else SubsetSequence(subsets)
    subsets.validate(rs)
    lams = [lam if isinstance(lam, Weight) else rs.weight(lam) for lam in lams]
    if words is None:
        words = WordSequence.for_subsets(rs, subsets)
    elif not isinstance(words, WordSequence):
        words = WordSequence(words)
    words.validate(rs, subsets)
    return subsets, lams, words


def _require_full_first_block(rs: RootSystem, subsets: SubsetSequence) -> None:
    if subsets.sets[0] != tuple(range(1, rs.n + 1)):
        raise UnsupportedInputError("the first subset must be all of [n] for this operation")


def hat_lattice_points(rs: RootSystem, subsets, lams, words=None, budget: int = DEFAULT_BUDGET):
    """Lattice points of the projected polytope: Ω-images with the first block forgotten."""
    subsets, lams, words = _prepare(rs, subsets, lams, words)
    _require_full_first_block(rs, subsets)
    crystal = gen_demazure_crystal_weights(rs, subsets, lams, words, budget)
    return tuple(sorted({sv.tail(1) for sv in crystal.omega_map().values()}))


def _weight_of_hat_point(rs: RootSystem, words: WordSequence, lams, x) -> tuple:
    total = sum(lams[1:], start=lams[0])
    coords = list(total.coords)
    tail_letters = [i for block in words.blocks[1:] for i in block]
    for letter, mult in zip(tail_letters, x, strict=True):
        col = rs._alpha_cols[letter - 1]
        for t in range(rs.n):
            coords[t] -= mult * col[t]
    return tuple(coords)


def multiplicity(rs: RootSystem, subsets, lams, nu, words=None, budget: int = DEFAULT_BUDGET) -> int:
    """Number of projected lattice points whose residual weight equals ν."""
    subsets, lams, words = _prepare(rs, subsets, lams, words)
    _require_full_first_block(rs, subsets)
    nu = nu if isinstance(nu, Weight) else rs.weight(nu)
    points = hat_lattice_points(rs, subsets, lams, words, budget)
    return sum(1 for x in points if _weight_of_hat_point(rs, words, lams, x) == tuple(nu.coords))


def tensor_decompose(rs: RootSystem, lams, budget: int = DEFAULT_BUDGET) -> MultiplicityTable:
    """Multiplicities of V(ν) in V(λ_1) ⊗ ... ⊗ V(λ_r) via projected lattice points."""
    lams = [lam if isinstance(lam, Weight) else rs.weight(lam) for lam in lams]
    if not lams:
        raise ValueError("need at least one weight")
    full = tuple(range(1, rs.n + 1))
    subsets = SubsetSequence([full] * len(lams))
    words = WordSequence.for_subsets(rs, subsets)
    points = hat_lattice_points(rs, subsets, lams, words, budget)
    counts: Counter = Counter()
    for x in points:
        nu = _weight_of_hat_point(rs, words, lams, x)
        if any(c < 0 for c in nu):
            raise AssertionError(f"projected point {x} produced a non-dominant weight {nu}")
        counts[nu] += 1
    return MultiplicityTable.from_counter(counts)


def component_count(rs: RootSystem, subsets, lams, words=None, budget: int = DEFAULT_BUDGET) -> int:
    """Number of connected components, prepending ([n], λ=0) when the first block is not [n]."""
    subsets = subsets if isinstance(subsets, SubsetSequence) else SubsetSequence(subsets)
    subsets.validate(rs)
    lams = [lam if isinstance(lam, Weight) else rs.weight(lam) for lam in lams]
    full = tuple(range(1, rs.n + 1))
    if subsets.sets[0] != full:
        subsets = SubsetSequence((full,) + subsets.sets)
        lams = [rs.zero_weight()] + lams
        words = None if words is None else WordSequence((rs.longest_word(full),) + _as_blocks(words))
    return len(hat_lattice_points(rs, subsets, lams, words, budget))


def _as_blocks(words) -> tuple:
    return words.blocks if isinstance(words, WordSequence) else tuple(tuple(b) for b in words)


def fiber_string_points(rs: RootSystem, subsets, lams, x, words=None, budget: int = DEFAULT_BUDGET):
    """First-block coordinates of the Ω-points over a projected lattice point x."""
    subsets, lams, words = _prepare(rs, subsets, lams, words)
    _require_full_first_block(rs, subsets)
    crystal = gen_demazure_crystal_weights(rs, subsets, lams, words, budget)
    x = tuple(int(t) for t in x)
    fiber = sorted({sv.head(1) for sv in crystal.omega_map().values() if sv.tail(1) == x})
    if not fiber:
        raise ValueError(f"projected point {x} is not attained")
    return tuple(fiber)
