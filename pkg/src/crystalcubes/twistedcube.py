"""Grossberg-Karshon twisted cubes: density, exact signed measure, lattice counts.

The cube for a word i and integer vector a is carved out by affine forms

    A_l(x) = -⟨a_l ϖ_{i_l} + ... + a_N ϖ_{i_N}, α_{i_l}^∨⟩ - Σ_{j>l} ⟨α_{i_j}, α_{i_l}^∨⟩ x_j,

with coordinate l admitted when A_l(x) ≤ x_l ≤ 0 (closed) or 0 < x_l < A_l(x)
(open), and density (-1)^N sign(x_1)...sign(x_N), sign(x) = -1 for x ≤ 0.

Exact integration rests on the two-case branch identity: for any h with
antiderivative H, H(0) = 0,
  * A ≤ 0, closed branch:  ∫_{[A,0]} sign(x) h(x) dx = -(H(0) - H(A)) = H(A),
  * A > 0, open branch:    ∫_{(0,A)} sign(x) h(x) dx = H(A) - H(0) = H(A),
so both equal ∫_0^A h.  Integrating x_1 innermost (A_l only involves later
coordinates, which makes antiderivative-then-substitute well founded) gives
∫ ρ·p dx = (-1)^N p_N with p_0 = p and p_l = (antiderivative of p_{l-1} in
x_l vanishing at 0) evaluated at x_l = A_l.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .rootsys import RootSystem, SubsetSequence, UnsupportedInputError, WordSequence


class MVPolynomial:
    """Sparse multivariate polynomial: exponent tuple → exact rational coefficient."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def constant(cls, nvars: int, c) -> "MVPolynomial":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def variable(cls, nvars: int, idx: int) -> "MVPolynomial":
        e = tuple(1 if k == idx else 0 for k in range(nvars))
        return cls(nvars, {e: Fraction(1)})

    def __add__(self, other: "MVPolynomial") -> "MVPolynomial":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return MVPolynomial(self.nvars, terms)

    def __mul__(self, other) -> "MVPolynomial":
        if not isinstance(other, MVPolynomial):
            return MVPolynomial(self.nvars, {e: c * Fraction(other) for e, c in self.terms.items()})
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MVPolynomial(self.nvars, terms)

    __rmul__ = __mul__

    def antiderivative(self, idx: int) -> "MVPolynomial":
        """Antiderivative in variable idx, vanishing at 0."""
        terms = {}
        for e, c in self.terms.items():
            e2 = e[:idx] + (e[idx] + 1,) + e[idx + 1 :]
            terms[e2] = c / (e[idx] + 1)
        return MVPolynomial(self.nvars, terms)

    def substitute(self, idx: int, value: "MVPolynomial") -> "MVPolynomial":
        """Replace variable idx by a polynomial in the remaining variables."""
        max_k = max((e[idx] for e in self.terms), default=0)
        powers = [MVPolynomial.constant(self.nvars, 1)]
        for _ in range(max_k):
            powers.append(powers[-1] * value)
        out = MVPolynomial(self.nvars, {})
        for e, c in self.terms.items():
            rest = e[:idx] + (0,) + e[idx + 1 :]
            out = out + (MVPolynomial(self.nvars, {rest: c}) * powers[e[idx]])
        return out

    def constant_value(self) -> Fraction:
        for e, c in self.terms.items():
            if any(e):
                raise ValueError("polynomial is not constant")
        return Fraction(self.terms.get((0,) * self.nvars, Fraction(0)))


def _sign(x) -> int:
    return -1 if x <= 0 else 1


@dataclass(frozen=True)
class ProjectionMap:
    """0/1 block matrix sending cube coordinate (k,l) to the row of letter i_{k,l} in I_k."""

    matrix: tuple[tuple[int, ...], ...]
    block_sizes: tuple[int, ...]
    row_labels: tuple[tuple[int, int], ...]  # (block index, letter)

    @property
    def rows(self) -> int:
        return len(self.matrix)

    @property
    def cols(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    def apply(self, x):
        return tuple(sum(r * v for r, v in zip(row, x)) for row in self.matrix)


def projection_map(rs: RootSystem, subsets, words=None) -> ProjectionMap:
    subsets = subsets if isinstance(subsets, SubsetSequence) else SubsetSequence(subsets)
    subsets.validate(rs)
    if words is None:
        words = WordSequence.for_subsets(rs, subsets)
    elif not isinstance(words, WordSequence):
        words = WordSequence(words)
    words.validate(rs, subsets)
    row_labels = [(k + 1, u) for k, subset in enumerate(subsets.sets) for u in subset]
    row_of = {label: r for r, label in enumerate(row_labels)}
    ncols = sum(len(b) for b in words.blocks)
    matrix = [[0] * ncols for _ in row_labels]
    col = 0
    for k, block in enumerate(words.blocks):
        for letter in block:
            matrix[row_of[(k + 1, letter)]][col] = 1
            col += 1
    return ProjectionMap(tuple(tuple(r) for r in matrix), words.block_sizes, tuple(row_labels))


def identity_projection(n: int) -> ProjectionMap:
    """Each letter its own block: the projection degenerates to the identity."""
    matrix = tuple(tuple(1 if c == r else 0 for c in range(n)) for r in range(n))
    return ProjectionMap(matrix, (1,) * n, tuple((k + 1, 0) for k in range(n)))


class TwistedCube:
    """Pair (i, a) with its derived affine bound forms; a may have negative entries."""

    def __init__(self, rs: RootSystem, word, a):
        self.rs = rs
        self.word = tuple(int(i) for i in word)
        self.a = tuple(int(x) for x in a)
        if len(self.word) != len(self.a):
            raise ValueError("word and integer vector lengths differ")
        for i in self.word:
            rs._check_index(i)
        n = len(self.word)
        c = rs.cartan.entries
        forms = []
        for l in range(n):
            const = -sum(self.a[j] for j in range(l, n) if self.word[j] == self.word[l])
            coeffs = {}
            for j in range(l + 1, n):
                coef = -c[self.word[l] - 1][self.word[j] - 1]
                if coef:
                    coeffs[j] = coef
            forms.append((Fraction(const), coeffs))
        self.forms = tuple(forms)

    @property
    def dim(self) -> int:
        return len(self.word)

    def bound_value(self, l: int, x) -> Fraction:
        const, coeffs = self.forms[l]
        return const + sum(c * x[j] for j, c in coeffs.items())

    def bound_polynomial(self, l: int) -> MVPolynomial:
        const, coeffs = self.forms[l]
        terms = {(0,) * self.dim: Fraction(const)}
        for j, c in coeffs.items():
            e = tuple(1 if k == j else 0 for k in range(self.dim))
            terms[e] = Fraction(c)
        return MVPolynomial(self.dim, terms)

    # -- pointwise density -------------------------------------------------

    def density(self, x) -> int:
        """ρ(x) ∈ {-1, 0, +1}; zero outside the region."""
        x = tuple(Fraction(v) for v in x)
        if len(x) != self.dim:
            raise ValueError("point dimension mismatch")
        sign_product = 1
        for l in range(self.dim - 1, -1, -1):
            bound = self.bound_value(l, x)
            closed = bound <= x[l] <= 0
            open_ = 0 < x[l] < bound
            if not (closed or open_):
                return 0
            sign_product *= _sign(x[l])
        return (-1) ** self.dim * sign_product

    # -- exact integration ---------------------------------------------------

    def _integrate(self, p0: MVPolynomial) -> Fraction:
        p = p0
        for l in range(self.dim):
            p = p.antiderivative(l).substitute(l, self.bound_polynomial(l))
        return (-1) ** self.dim * p.constant_value()

    def signed_volume(self) -> Fraction:
        """∫ ρ dx, exactly."""
        return self._integrate(MVPolynomial.constant(self.dim, 1))

    def pushforward_moments(self, projection: ProjectionMap, multi_index) -> Fraction:
        """∫ (Lx)^m ρ(x) dx, exactly; m = 0 reduces to the signed volume."""
        m = tuple(int(t) for t in multi_index)
        if len(m) != projection.rows:
            raise ValueError("multi-index length must match the projection target dimension")
        if any(t < 0 for t in m):
            raise ValueError("multi-index entries must be nonnegative")
        if projection.cols != self.dim:
            raise ValueError("projection source dimension mismatch")
        p0 = MVPolynomial.constant(self.dim, 1)
        for t, power in enumerate(m):
            if power == 0:
                continue
            row = projection.matrix[t]
            linear = MVPolynomial(self.dim, {})
            for j, coef in enumerate(row):
                if coef:
                    linear = linear + coef * MVPolynomial.variable(self.dim, j)
            for _ in range(power):
                p0 = p0 * linear
        return self._integrate(p0)

    # -- signed lattice count --------------------------------------------------

    def signed_lattice_count(self) -> int:
        """Σ_{x ∈ Z^N} ρ(x), honoring the closed/open branch asymmetry exactly."""
        n = self.dim

        def rec(l: int, x: list) -> int:
            if l < 0:
                return 1
            total = 0
            bound = self.bound_value(l, x)
            if bound <= 0:
                lo = math.ceil(bound)
                for v in range(lo, 1):
                    x[l] = v
                    total -= rec(l - 1, x)  # sign(v) = -1 for v ≤ 0
            else:
                hi = math.ceil(bound) - 1
                for v in range(1, hi + 1):
                    x[l] = v
                    total += rec(l - 1, x)
            x[l] = 0
            return total

        return (-1) ** n * rec(n - 1, [0] * n)

    # -- Monte Carlo ------------------------------------------------------------

    def bounding_box(self) -> tuple[tuple[Fraction, Fraction], ...]:
        """Coordinate intervals guaranteed to contain the region, by interval
        arithmetic over the boxes of later coordinates (processed last to first)."""
        lo = [Fraction(0)] * self.dim
        hi = [Fraction(0)] * self.dim
        for l in range(self.dim - 1, -1, -1):
            const, coeffs = self.forms[l]
            bmin = bmax = const
            for j, c in coeffs.items():
                bmin += min(c * lo[j], c * hi[j])
                bmax += max(c * lo[j], c * hi[j])
            lo[l] = min(Fraction(0), bmin)
            hi[l] = max(Fraction(0), bmax)
        return tuple(zip(lo, hi))

    def _density_batch(self, samples: np.ndarray) -> np.ndarray:
        n = self.dim
        rho = np.full(len(samples), (-1.0) ** n)
        alive = np.ones(len(samples), dtype=bool)
        for l in range(n - 1, -1, -1):
            const, coeffs = self.forms[l]
            bound = np.full(len(samples), float(const))
            for j, c in coeffs.items():
                bound += float(c) * samples[:, j]
            xl = samples[:, l]
            closed = (bound <= xl) & (xl <= 0)
            open_ = (0 < xl) & (xl < bound)
            alive &= closed | open_
            rho *= np.where(xl <= 0, -1.0, 1.0)
        rho[~alive] = 0.0
        return rho

    def mc_sample(self, samples: int, seed: int, shards: int = 1):
        """Seeded uniform samples over the bounding box with their densities.

        Shard seeds are seed + shard index; contributions merge additively, so
        the result is deterministic for a fixed (seed, shard count).
        """
        if samples <= 0:
            raise ValueError("sample count must be positive")
        if shards < 1 or samples % shards:
            raise ValueError("shards must divide the sample count")
        box = self.bounding_box()
        lo = np.array([float(a) for a, _ in box])
        hi = np.array([float(b) for _, b in box])
        vol = 1.0
        for a, b in box:
            vol *= float(b - a)
        xs = []
        rhos = []
        per = samples // shards
        for shard in range(shards):
            rng = np.random.default_rng(seed + shard)
            pts = rng.uniform(lo, hi, size=(per, self.dim))
            xs.append(pts)
            rhos.append(self._density_batch(pts))
        return np.concatenate(xs), np.concatenate(rhos), vol

    def mc_volume(self, samples: int, seed: int, shards: int = 1):
        """(estimate, standard error) for the signed volume."""
        _, rho, vol = self.mc_sample(samples, seed, shards)
        est = vol * float(np.mean(rho))
        err = vol * float(np.std(rho)) / math.sqrt(samples)
        return est, err

    def mc_moment(self, projection: ProjectionMap, multi_index, samples: int, seed: int, shards: int = 1):
        """(estimate, standard error) for a pushforward moment."""
        pts, rho, vol = self.mc_sample(samples, seed, shards)
        m = tuple(int(t) for t in multi_index)
        proj = pts @ np.array(projection.matrix, dtype=float).T
        g = rho.copy()
        for t, power in enumerate(m):
            if power:
                g *= proj[:, t] ** power
        est = vol * float(np.mean(g))
        err = vol * float(np.std(g)) / math.sqrt(samples)
        return est, err


@dataclass(frozen=True)
class SignedHistogram:
    """Signed histogram of the projected density over a rectangular bin grid."""

    edges: tuple[tuple[float, ...], ...]
    values: np.ndarray
    samples: int
    seed: int

    @property
    def dim(self) -> int:
        return len(self.edges)

    def bin_centers(self, axis: int):
        e = self.edges[axis]
        return [(e[k] + e[k + 1]) / 2 for k in range(len(e) - 1)]

    def total(self) -> float:
        return float(self.values.sum())

    def to_csv_lines(self) -> list[str]:
        header = [f"center_{t+1}" for t in range(self.dim)] + ["value"]
        lines = [",".join(header)]
        centers = [self.bin_centers(t) for t in range(self.dim)]
        for idx in np.ndindex(self.values.shape):
            row = [repr(centers[t][k]) for t, k in enumerate(idx)] + [repr(float(self.values[idx]))]
            lines.append(",".join(row))
        return lines


def mc_histogram(
    cube: TwistedCube,
    projection: ProjectionMap,
    bins,
    samples: int,
    seed: int,
    shards: int = 1,
) -> SignedHistogram:
    """Deterministic signed histogram: bin value = (box volume / samples) · Σ ρ."""
    if isinstance(bins, int):
        bins = (bins,) * projection.rows
    bins = tuple(int(b) for b in bins)
    if len(bins) != projection.rows or any(b <= 0 for b in bins):
        raise ValueError("need one positive bin count per target dimension")
    pts, rho, vol = cube.mc_sample(samples, seed, shards)
    proj = pts @ np.array(projection.matrix, dtype=float).T
    target_box = projected_box(cube, projection)
    edges = [np.linspace(float(a), float(b), bins[t] + 1) for t, (a, b) in enumerate(target_box)]
    hist, _ = np.histogramdd(proj, bins=edges, weights=rho)
    hist *= vol / samples
    return SignedHistogram(tuple(tuple(e) for e in edges), hist, samples, seed)


def projected_box(cube: TwistedCube, projection: ProjectionMap) -> tuple[tuple[Fraction, Fraction], ...]:
    """Exact image intervals of the cube's bounding box under the 0/1 projection."""
    box = cube.bounding_box()
    out = []
    for row in projection.matrix:
        lo = sum((a for (a, _), r in zip(box, row) if r), start=Fraction(0))
        hi = sum((b for (_, b), r in zip(box, row) if r), start=Fraction(0))
        out.append((lo, hi))
    return tuple(out)


def render_histogram_svg(hist: SignedHistogram, cell: int = 24) -> str:
    """Two-dimensional signed histogram as an SVG grid with a diverging color scale."""
    if hist.dim != 2:
        raise UnsupportedInputError("SVG rendering targets 2-D histograms only")
    nx, ny = hist.values.shape
    vmax = float(np.max(np.abs(hist.values))) or 1.0
    width, height = nx * cell, ny * cell
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    ]
    for ix in range(nx):
        for iy in range(ny):
            v = float(hist.values[ix, iy])
            frac = min(abs(v) / vmax, 1.0)
            shade = int(round(255 * (1 - frac)))
            color = f"rgb(255,{shade},{shade})" if v > 0 else f"rgb({shade},{shade},255)" if v < 0 else "rgb(255,255,255)"
            x = ix * cell
            y = (ny - 1 - iy) * cell
            parts.append(f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" fill="{color}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
