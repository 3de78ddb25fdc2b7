"""Finite-type root-system arithmetic, Weyl words, and subset machinery.

Everything downstream (crystals, polytopes, twisted cubes) consumes the data
assembled here: a validated Cartan matrix, pairings against coroots, positive
roots, deterministic reduced words for longest elements of parabolic Weyl
subgroups, and type-A enumerations of subsets.

Weights are always stored in fundamental-weight coordinates, so the pairing
with a simple coroot is a coordinate read-off.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class UnsupportedInputError(ValueError):
    """Input outside the supported class (e.g. a Levi subgroup not of type A)."""


class BudgetExceededError(RuntimeError):
    """A generation step exceeded its configured element budget."""


Coords = tuple[Fraction, ...]


def _num(x) -> int | Fraction:
    f = Fraction(x)
    return int(f) if f.denominator == 1 else f


@dataclass(frozen=True)
class Weight:
    """Coordinate vector in the fundamental-weight basis ϖ1..ϖn."""

    coords: tuple

    def __init__(self, coords: Iterable):
        object.__setattr__(self, "coords", tuple(_num(c) for c in coords))

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(a + b for a, b in zip(self.coords, other.coords, strict=True))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(a - b for a, b in zip(self.coords, other.coords, strict=True))

    def __rmul__(self, k) -> "Weight":
        return Weight(k * c for c in self.coords)

    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for c in self.coords)

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coords)


def _validate_gcm(entries: tuple[tuple[int, ...], ...]) -> None:
    n = len(entries)
    for i in range(n):
        if len(entries[i]) != n:
            raise ValueError("Cartan matrix must be square")
        if entries[i][i] != 2:
            raise ValueError("Cartan matrix diagonal entries must equal 2")
        for j in range(n):
            if i != j:
                if entries[i][j] > 0:
                    raise ValueError("off-diagonal Cartan entries must be <= 0")
                if (entries[i][j] == 0) != (entries[j][i] == 0):
                    raise ValueError("Cartan entries c[i][j], c[j][i] must vanish together")


def _symmetrizer(entries: tuple[tuple[int, ...], ...]) -> tuple[Fraction, ...]:
    # d with d[i]*c[i][j] symmetric, positive; exists iff the matrix is symmetrizable
    n = len(entries)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i == j or entries[i][j] == 0:
                    continue
                dj = d[i] * Fraction(entries[i][j], entries[j][i])
                if d[j] is None:
                    d[j] = dj
                    stack.append(j)
                elif d[j] != dj:
                    raise ValueError("Cartan matrix is not symmetrizable")
    return tuple(d)  # type: ignore[arg-type]


def _is_positive_definite(sym: list[list[Fraction]]) -> bool:
    # leading principal minors via fraction-exact elimination
    n = len(sym)
    m = [row[:] for row in sym]
    for k in range(n):
        if m[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            factor = m[i][k] / m[k][k]
            for j in range(k, n):
                m[i][j] -= factor * m[k][j]
    return True


@dataclass(frozen=True)
class CartanMatrix:
    """Finite-type generalized Cartan matrix; entries[i][j] = ⟨α_{j+1}, α_{i+1}^∨⟩."""

    entries: tuple[tuple[int, ...], ...]

    def __init__(self, entries: Sequence[Sequence[int]]):
        def as_int(x):
            f = Fraction(x)
            if f.denominator != 1:
                raise ValueError("Cartan matrix entries must be integers")
            return int(f)

        rows = tuple(tuple(as_int(x) for x in row) for row in entries)
        _validate_gcm(rows)
        d = _symmetrizer(rows)
        sym = [[d[i] * rows[i][j] for j in range(len(rows))] for i in range(len(rows))]
        if not _is_positive_definite(sym):
            raise ValueError("Cartan matrix is not of finite type")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries)


def type_a_cartan(n: int) -> list[list[int]]:
    return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]


PRESETS = {f"A{n}": type_a_cartan(n) for n in (1, 2, 3, 4)}


class RootSystem:
    """Cartan datum plus the derived arithmetic every other module consumes.

    Indices i are 1-based throughout the public surface, matching α_1..α_n.
    """

    def __init__(self, cartan: Sequence[Sequence[int]] | CartanMatrix):
        self.cartan = cartan if isinstance(cartan, CartanMatrix) else CartanMatrix(cartan)
        self.n = self.cartan.n
        c = self.cartan.entries
        # alpha_cols[i-1] = α_i in ϖ-coordinates (column i of the Cartan matrix)
        self._alpha_cols: tuple[tuple[int, ...], ...] = tuple(
            tuple(c[j][i] for j in range(self.n)) for i in range(self.n)
        )
        self._d = _symmetrizer(c)
        self._positive_roots: tuple[tuple[int, ...], ...] | None = None
        # operator caches; also intern paths so per-element caches stay warm
        self._f_cache: dict = {}
        self._e_cache: dict = {}
        self._paths: dict = {}

    @classmethod
    def preset(cls, name: str) -> "RootSystem":
        if name not in PRESETS:
            raise ValueError(f"unknown preset {name!r}; available: {sorted(PRESETS)}")
        return cls(PRESETS[name])

    def weight(self, *coords) -> Weight:
        w = Weight(coords[0]) if len(coords) == 1 and not isinstance(coords[0], (int, Fraction)) else Weight(coords)
        if len(w) != self.n:
            raise ValueError(f"weight needs {self.n} coordinates, got {len(w)}")
        return w

    def zero_weight(self) -> Weight:
        return Weight((0,) * self.n)

    def fundamental_weight(self, i: int) -> Weight:
        self._check_index(i)
        return Weight(tuple(1 if j == i - 1 else 0 for j in range(self.n)))

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise IndexError(f"simple-root index {i} out of range 1..{self.n}")

    def pairing(self, lam: Weight, i: int) -> int | Fraction:
        """⟨λ, α_i^∨⟩; a coordinate read-off in the ϖ-basis."""
        self._check_index(i)
        if len(lam) != self.n:
            raise ValueError("weight rank mismatch")
        return lam.coords[i - 1]

    def simple_root_as_weight(self, i: int) -> Weight:
        self._check_index(i)
        return Weight(self._alpha_cols[i - 1])

    def reflect(self, coords: Coords, i: int) -> tuple:
        """s_i acting on ϖ-coordinates: v - ⟨v, α_i^∨⟩ α_i."""
        k = coords[i - 1]
        if k == 0:
            return tuple(coords)
        col = self._alpha_cols[i - 1]
        return tuple(v - k * a for v, a in zip(coords, col))

    # -- roots ------------------------------------------------------------

    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        """Δ⁺ as integer coefficient vectors over the simple roots, root-closure order."""
        if self._positive_roots is None:
            c = self.cartan.entries
            simple = [tuple(1 if j == k else 0 for j in range(self.n)) for k in range(self.n)]
            roots = set(simple)
            frontier = list(simple)
            while frontier:
                beta = frontier.pop()
                for i in range(self.n):
                    pair = sum(beta[j] * c[i][j] for j in range(self.n))
                    p = 0
                    down = list(beta)
                    while True:
                        down[i] -= 1
                        t = tuple(down)
                        if t in roots or all(x == 0 for x in t):
                            p += 1
                        else:
                            break
                    if p - pair > 0:
                        up = list(beta)
                        up[i] += 1
                        t = tuple(up)
                        if t not in roots:
                            roots.add(t)
                            frontier.append(t)
            self._positive_roots = tuple(sorted(roots))
        return self._positive_roots

    def coroot_pairing(self, lam: Weight, beta: tuple[int, ...]) -> Fraction:
        """⟨λ, β^∨⟩ for a root β given by simple-root coefficients."""
        num = sum(m * d * x for m, d, x in zip(beta, self._d, lam.coords))
        dbeta = self._root_half_norm(beta)
        return Fraction(num) / dbeta

    def _root_half_norm(self, beta: tuple[int, ...]) -> Fraction:
        c = self.cartan.entries
        total = Fraction(0)
        for i in range(self.n):
            if beta[i] == 0:
                continue
            for j in range(self.n):
                if beta[j]:
                    total += beta[i] * beta[j] * self._d[i] * c[i][j]
        return total / 2

    def positive_roots_in(self, subset: Sequence[int]) -> tuple[tuple[int, ...], ...]:
        inside = set(subset)
        outside = [k for k in range(self.n) if (k + 1) not in inside]
        return tuple(b for b in self.positive_roots() if all(b[k] == 0 for k in outside))

    # -- Weyl words --------------------------------------------------------

    def longest_word(self, subset: Sequence[int]) -> tuple[int, ...]:
        """Deterministic reduced word for the longest element of W_I.

        Greedy descent: repeatedly apply the smallest i in I with ⟨v, α_i^∨⟩ > 0
        to v = Σ_{i∈I} ϖ_i until v is I-antidominant.
        """
        subset = self._check_subset(subset)
        v = tuple(1 if (k + 1) in subset else 0 for k in range(self.n))
        word: list[int] = []
        while True:
            i = next((i for i in subset if v[i - 1] > 0), None)
            if i is None:
                break
            word.append(i)
            v = self.reflect(v, i)
        assert len(word) == len(self.positive_roots_in(subset))
        return tuple(word)

    def _check_subset(self, subset: Sequence[int]) -> tuple[int, ...]:
        out = tuple(subset)
        if not out:
            raise ValueError("subset must be nonempty")
        if any(not 1 <= i <= self.n for i in out):
            raise ValueError(f"subset entries must lie in 1..{self.n}")
        if any(out[k] >= out[k + 1] for k in range(len(out) - 1)):
            raise ValueError("subset entries must be strictly increasing")
        return out

    def word_matrix(self, word: Sequence[int]):
        """The product s_{i_1}...s_{i_N} acting on root coefficients; columns are images of α_j."""
        n = self.n
        cols = [tuple(1 if r == j else 0 for r in range(n)) for j in range(n)]
        for i in reversed(word):
            cols = [self._reflect_root(col, i) for col in cols]
        return cols

    def _reflect_root(self, beta: tuple[int, ...], i: int) -> tuple[int, ...]:
        c = self.cartan.entries
        pair = sum(beta[j] * c[i - 1][j] for j in range(self.n))
        return tuple(b - pair * (1 if j == i - 1 else 0) for j, b in enumerate(beta))

    def word_length(self, word: Sequence[int]) -> int:
        """Coxeter length of s_{i_1}...s_{i_N} (number of inversions)."""
        cols = self.word_matrix(word)
        count = 0
        for beta in self.positive_roots():
            image = tuple(sum(beta[j] * cols[j][r] for j in range(self.n)) for r in range(self.n))
            if all(x <= 0 for x in image) and any(x < 0 for x in image):
                count += 1
        return count

    def is_reduced(self, word: Sequence[int]) -> bool:
        for i in word:
            self._check_index(i)
        return self.word_length(word) == len(word)

    def is_reduced_word_for_longest(self, word: Sequence[int], subset: Sequence[int]) -> bool:
        subset = self._check_subset(subset)
        if any(i not in subset for i in word):
            return False
        pos = self.positive_roots_in(subset)
        if len(word) != len(pos):
            return False
        cols = self.word_matrix(word)
        for beta in pos:
            image = tuple(sum(beta[j] * cols[j][r] for j in range(self.n)) for r in range(self.n))
            if not (all(x <= 0 for x in image) and any(x < 0 for x in image)):
                return False
        return True

    # -- type-A enumeration -------------------------------------------------

    def type_a_enumeration(self, subset: Sequence[int]) -> tuple[int, ...]:
        """Order I as u_1..u_m with the tridiagonal pairing pattern of a type-A path.

        The endpoint with the smaller index comes first.  Raises
        UnsupportedInputError when the Levi on I is not irreducible type A.
        """
        subset = self._check_subset(subset)
        c = self.cartan.entries
        if len(subset) == 1:
            return subset
        adj: dict[int, list[int]] = {i: [] for i in subset}
        for i in subset:
            for j in subset:
                if i < j and c[i - 1][j - 1] != 0:
                    if c[i - 1][j - 1] != -1 or c[j - 1][i - 1] != -1:
                        raise UnsupportedInputError(f"Levi on {subset} is not of type A")
                    adj[i].append(j)
                    adj[j].append(i)
        ends = sorted(i for i in subset if len(adj[i]) <= 1)
        if any(len(adj[i]) > 2 for i in subset) or len(ends) != 2:
            raise UnsupportedInputError(f"Levi on {subset} is not of type A")
        order = [ends[0]]
        prev = None
        while len(order) < len(subset):
            nxt = [j for j in adj[order[-1]] if j != prev]
            if not nxt:
                raise UnsupportedInputError(f"Levi on {subset} is not of type A")
            prev = order[-1]
            order.append(nxt[0])
        return tuple(order)

    # -- Weyl dimension ------------------------------------------------------

    def weyl_dimension(self, lam: Weight) -> int:
        """dim V(λ) = Π_{β>0} ⟨λ+ρ, β^∨⟩ / ⟨ρ, β^∨⟩, exact rationals throughout."""
        if len(lam) != self.n:
            raise ValueError("weight rank mismatch")
        if not lam.is_dominant() or not lam.is_integral():
            raise ValueError("weyl_dimension needs a dominant integral weight")
        result = Fraction(1)
        for beta in self.positive_roots():
            num = sum(m * d * (x + 1) for m, d, x in zip(beta, self._d, lam.coords))
            den = sum(m * d for m, d in zip(beta, self._d))
            result *= Fraction(num, 1) / den
        assert result.denominator == 1
        return int(result)


@dataclass(frozen=True)
class SubsetSequence:
    """Ordered sequence (I_1,...,I_r) of sorted nonempty subsets of [n]."""

    sets: tuple[tuple[int, ...], ...]

    def __init__(self, sets: Iterable[Sequence[int]]):
        object.__setattr__(self, "sets", tuple(tuple(s) for s in sets))
        if not self.sets:
            raise ValueError("subset sequence must be nonempty")

    @property
    def r(self) -> int:
        return len(self.sets)

    def validate(self, rs: RootSystem) -> "SubsetSequence":
        for s in self.sets:
            rs._check_subset(s)
        return self


@dataclass(frozen=True)
class WordSequence:
    """Per-block words; block k must be a reduced word for the longest element of W_{I_k}."""

    blocks: tuple[tuple[int, ...], ...]

    def __init__(self, blocks: Iterable[Sequence[int]]):
        object.__setattr__(self, "blocks", tuple(tuple(int(i) for i in b) for b in blocks))

    @property
    def flat(self) -> tuple[int, ...]:
        return tuple(i for b in self.blocks for i in b)

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def validate(self, rs: RootSystem, subsets: SubsetSequence) -> "WordSequence":
        if len(self.blocks) != subsets.r:
            raise ValueError("word sequence and subset sequence lengths differ")
        for block, subset in zip(self.blocks, subsets.sets):
            if not rs.is_reduced_word_for_longest(block, subset):
                raise ValueError(f"block {block} is not a reduced word for the longest element of W_{subset}")
        return self

    @classmethod
    def for_subsets(cls, rs: RootSystem, subsets: SubsetSequence) -> "WordSequence":
        return cls(rs.longest_word(s) for s in subsets.sets)
