"""Littelmann path realization of the crystals B(λ) and their tensor products.

A crystal element is a piecewise-linear path from the origin, stored as merged
(direction, duration) segments with exact rational coordinates.  The root
operators cut the path where t ↦ ⟨π(t), α_i^∨⟩ attains its minimum and reflect
the middle stretch; tensor elements carry the Kashiwara rule, with the first
factor receiving f_i whenever φ_i(b1) > ε_i(b2).
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .rootsys import BudgetExceededError, RootSystem, Weight

ONE = Fraction(1)

DEFAULT_BUDGET = 10**6


class PathElement:
    """Piecewise-linear path: segments ((direction, duration), ...), durations summing to 1."""

    __slots__ = ("segs", "_hash", "_end", "_ef")

    def __init__(self, segs):
        self.segs = segs
        self._hash = hash(segs)
        self._end = None
        self._ef = {}

    @staticmethod
    def straight(coords) -> "PathElement":
        return PathElement(((tuple(coords), ONE),))

    def endpoint(self) -> tuple:
        if self._end is None:
            n = len(self.segs[0][0])
            total = [0] * n
            for v, d in self.segs:
                for k in range(n):
                    total[k] += v[k] * d
            # integral coordinates collapse to int, keeping comparisons cheap
            self._end = tuple(
                int(t) if isinstance(t, Fraction) and t.denominator == 1 else t for t in total
            )
        return self._end

    def __eq__(self, other):
        return isinstance(other, PathElement) and self.segs == other.segs

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"PathElement({self.segs!r})"

    def sort_key(self):
        return tuple((tuple(Fraction(x) for x in v), Fraction(d)) for v, d in self.segs)


class TensorElement:
    """Ordered tensor product of path elements; leftmost factor is the first."""

    __slots__ = ("factors", "_hash")

    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise ValueError("tensor element needs at least one factor")
        ranks = {len(f.segs[0][0]) for f in factors}
        if len(ranks) != 1:
            raise ValueError("tensor factors live in different root systems")
        self.factors = factors
        self._hash = hash(factors)

    def __eq__(self, other):
        return isinstance(other, TensorElement) and self.factors == other.factors

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"TensorElement({self.factors!r})"

    def sort_key(self):
        return tuple(f.sort_key() for f in self.factors)


def _normalize(pieces) -> tuple:
    """Drop zero-duration pieces and merge consecutive equal directions."""
    out = []
    for v, d in pieces:
        if d == 0:
            continue
        if out and out[-1][0] == v:
            out[-1] = (v, out[-1][1] + d)
        else:
            out.append((v, d))
    return tuple(out)


def _height_profile(p: PathElement, idx: int):
    """Breakpoint values of h(t) = ⟨π(t), α_i^∨⟩ (coordinate idx of the path)."""
    hs = [Fraction(0)]
    for v, d in p.segs:
        hs.append(hs[-1] + v[idx] * d)
    return hs


def _eps_phi_path(p: PathElement, idx: int):
    cached = p._ef.get(idx)
    if cached is None:
        hs = _height_profile(p, idx)
        m = min(hs)
        if Fraction(m).denominator != 1:
            raise ValueError("non-integral path minimum; element is outside the integral path class")
        cached = (int(-m), int(hs[-1] - m))
        p._ef[idx] = cached
    return cached


def _reflect_dir(rs: RootSystem, v: tuple, i: int) -> tuple:
    k = v[i - 1]
    if k == 0:
        return v
    col = rs._alpha_cols[i - 1]
    return tuple(a - k * c for a, c in zip(v, col))


def _f_path(rs: RootSystem, p: PathElement, i: int) -> PathElement | None:
    idx = i - 1
    hs = _height_profile(p, idx)
    m = min(hs)
    if hs[-1] - m < 1:
        return None
    # t0: last time h = m (a breakpoint); t1: first time h = m+1 after t0
    j0 = max(j for j, h in enumerate(hs) if h == m)
    times = [Fraction(0)]
    for _, d in p.segs:
        times.append(times[-1] + d)
    t0 = times[j0]
    t1 = None
    target = m + 1
    for j in range(j0 + 1, len(hs)):
        if hs[j] >= target:
            t1 = times[j - 1] + p.segs[j - 1][1] * (target - hs[j - 1]) / (hs[j] - hs[j - 1])
            break
    assert t1 is not None
    return _rebuild(rs, p, times, t0, t1, i)


def _e_path(rs: RootSystem, p: PathElement, i: int) -> PathElement | None:
    idx = i - 1
    hs = _height_profile(p, idx)
    m = min(hs)
    if m > -1:
        return None
    # t1: first time h = m; t0: last time h = m+1 before t1
    j1 = min(j for j, h in enumerate(hs) if h == m)
    times = [Fraction(0)]
    for _, d in p.segs:
        times.append(times[-1] + d)
    t1 = times[j1]
    t0 = None
    target = m + 1
    for j in range(j1, 0, -1):
        if hs[j - 1] >= target:
            t0 = times[j - 1] + p.segs[j - 1][1] * (target - hs[j - 1]) / (hs[j] - hs[j - 1])
            break
    assert t0 is not None
    return _rebuild(rs, p, times, t0, t1, i)


def _rebuild(rs: RootSystem, p: PathElement, times, t0, t1, i: int) -> PathElement:
    """Reflect directions on [t0, t1]; the tail translate falls out of the segment encoding."""
    pieces = []
    for j, (v, d) in enumerate(p.segs):
        a, b = times[j], times[j + 1]
        cuts = [a]
        for t in (t0, t1):
            if a < t < b:
                cuts.append(t)
        cuts.append(b)
        for lo, hi in zip(cuts, cuts[1:]):
            if hi == lo:
                continue
            inside = t0 <= lo and hi <= t1
            pieces.append((_reflect_dir(rs, v, i) if inside else v, hi - lo))
    return PathElement(_normalize(pieces))


# -- public crystal operations ------------------------------------------------


def wt(rs: RootSystem, b) -> Weight:
    """Endpoint weight of a path, or the coordinate sum over tensor factors."""
    if isinstance(b, TensorElement):
        total = [0] * rs.n
        for f in b.factors:
            for k, x in enumerate(f.endpoint()):
                total[k] += x
        return Weight(total)
    return Weight(b.endpoint())


def epsilon(rs: RootSystem, b, i: int) -> int:
    rs._check_index(i)
    if isinstance(b, TensorElement):
        eps = 0
        for f in reversed(b.factors):
            ef, _ = _eps_phi_path(f, i - 1)
            eps = max(ef, eps - f.endpoint()[i - 1])
        return int(eps)
    return _eps_phi_path(b, i - 1)[0]


def phi(rs: RootSystem, b, i: int) -> int:
    rs._check_index(i)
    if isinstance(b, TensorElement):
        ph = 0
        first = True
        for f in b.factors:
            _, pf = _eps_phi_path(f, i - 1)
            ph = pf if first else max(pf, ph + f.endpoint()[i - 1])
            first = False
        return int(ph)
    return _eps_phi_path(b, i - 1)[1]


def _f_path_cached(rs: RootSystem, b: PathElement, i: int):
    key = (b, i)
    cache = rs._f_cache
    if key in cache:
        return cache[key]
    res = _f_path(rs, b, i)
    if res is not None:
        res = rs._paths.setdefault(res, res)
    cache[key] = res
    return res


def _e_path_cached(rs: RootSystem, b: PathElement, i: int):
    key = (b, i)
    cache = rs._e_cache
    if key in cache:
        return cache[key]
    res = _e_path(rs, b, i)
    if res is not None:
        res = rs._paths.setdefault(res, res)
    cache[key] = res
    return res


def path_f(rs: RootSystem, b, i: int):
    """Kashiwara lowering operator; None exactly when φ_i(b) = 0."""
    rs._check_index(i)
    if isinstance(b, TensorElement):
        factors = b.factors
        # suffix ε values: eps_suffix[k] = ε_i(b_{k+1} ⊗ ... ⊗ b_r)
        eps_suffix = [0] * (len(factors) + 1)
        for k in range(len(factors) - 1, -1, -1):
            ef, _ = _eps_phi_path(factors[k], i - 1)
            eps_suffix[k] = max(ef, eps_suffix[k + 1] - factors[k].endpoint()[i - 1])
        for k, f in enumerate(factors):
            _, pf = _eps_phi_path(f, i - 1)
            if k == len(factors) - 1 or pf > eps_suffix[k + 1]:
                child = _f_path_cached(rs, f, i)
                if child is None:
                    return None
                return TensorElement(factors[:k] + (child,) + factors[k + 1 :])
        return None
    return _f_path_cached(rs, b, i)


def path_e(rs: RootSystem, b, i: int):
    """Kashiwara raising operator; None exactly when ε_i(b) = 0."""
    rs._check_index(i)
    if isinstance(b, TensorElement):
        factors = b.factors
        eps_suffix = [0] * (len(factors) + 1)
        for k in range(len(factors) - 1, -1, -1):
            ef, _ = _eps_phi_path(factors[k], i - 1)
            eps_suffix[k] = max(ef, eps_suffix[k + 1] - factors[k].endpoint()[i - 1])
        for k, f in enumerate(factors):
            _, pf = _eps_phi_path(f, i - 1)
            if k == len(factors) - 1 or pf >= eps_suffix[k + 1]:
                child = _e_path_cached(rs, f, i)
                if child is None:
                    return None
                return TensorElement(factors[:k] + (child,) + factors[k + 1 :])
        return None
    return _e_path_cached(rs, b, i)


def highest_path(rs: RootSystem, lam: Weight) -> PathElement:
    """The straight-line path b_λ for dominant integral λ."""
    coords = lam.coords if isinstance(lam, Weight) else tuple(lam)
    cached = rs._paths.get(("top", coords))
    if cached is not None:
        return cached
    lam = rs.weight(coords)
    if not lam.is_dominant() or not lam.is_integral():
        raise ValueError("highest path needs a dominant integral weight")
    path = PathElement.straight(lam.coords)
    path = rs._paths.setdefault(path, path)
    rs._paths[("top", coords)] = path
    return path


def tensor(b1, b2) -> TensorElement:
    """Flatten-and-concatenate tensor product of elements."""
    left = b1.factors if isinstance(b1, TensorElement) else (b1,)
    right = b2.factors if isinstance(b2, TensorElement) else (b2,)
    return TensorElement(left + right)


def as_tensor(b) -> TensorElement:
    return b if isinstance(b, TensorElement) else TensorElement((b,))


# -- crystal graphs -----------------------------------------------------------


@dataclass(frozen=True)
class CrystalGraph:
    """Colored digraph with canonical vertex indices; edge (u, i, v) means f_i(u) = v."""

    vertices: tuple
    weights: tuple
    edges: tuple  # (src_index, label, dst_index)
    highest: int | None

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def to_json_dict(self, omega=None) -> dict:
        verts = []
        for k, (v, w) in enumerate(zip(self.vertices, self.weights)):
            entry = {"index": k, "weight": [_coord_json(c) for c in w.coords]}
            if omega is not None:
                entry["omega"] = list(omega[v])
            verts.append(entry)
        return {
            "vertex_count": self.vertex_count,
            "highest": self.highest,
            "vertices": verts,
            "edges": [list(e) for e in self.edges],
        }

    def to_edge_lines(self) -> str:
        lines = [f"{u} -> {v} [label={i}]" for (u, i, v) in self.edges]
        return "\n".join(lines) + "\n"

    def canonical_form(self, root: int | None = None):
        """Isomorphism invariant: BFS relabeling from the root, colors ascending.

        Works for graphs whose vertices are all reachable from the root, which
        holds for f-generated crystals; per-color out-degree ≤ 1 makes the
        traversal order canonical.
        """
        if root is None:
            root = self.highest
        if root is None:
            raise ValueError("canonical_form needs a root vertex")
        succ = {}
        for u, i, v in self.edges:
            succ.setdefault(u, {})[i] = v
        order = {root: 0}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for i in sorted(succ.get(u, {})):
                v = succ[u][i]
                if v not in order:
                    order[v] = len(order)
                    queue.append(v)
        if len(order) != self.vertex_count:
            raise ValueError("graph is not reachable from the root")
        return (self.vertex_count, tuple(sorted((order[u], i, order[v]) for u, i, v in self.edges)))


def _coord_json(c):
    return c if isinstance(c, int) else str(Fraction(c))


def graph_from_elements(rs: RootSystem, elements) -> CrystalGraph:
    """Crystal graph on an explicit element set; edges are f-edges staying in the set."""
    elems = set(elements)
    verts = sorted(elems, key=lambda b: (b.sort_key()))
    index = {b: k for k, b in enumerate(verts)}
    edges = []
    highest = None
    for b in verts:
        if all(epsilon(rs, b, i) == 0 for i in range(1, rs.n + 1)):
            if highest is None:
                highest = index[b]
        for i in range(1, rs.n + 1):
            c = path_f(rs, b, i)
            if c is not None and c in elems:
                edges.append((index[b], i, index[c]))
    return CrystalGraph(tuple(verts), tuple(wt(rs, b) for b in verts), tuple(sorted(edges)), highest)


def generate_crystal(rs: RootSystem, lam, budget: int = DEFAULT_BUDGET) -> CrystalGraph:
    """BFS closure of {b_λ} under all lowering operators; |B(λ)| = weyl_dimension(λ)."""
    lam = lam if isinstance(lam, Weight) else rs.weight(lam)
    start = highest_path(rs, lam)
    seen = {start}
    queue = deque([start])
    while queue:
        b = queue.popleft()
        for i in range(1, rs.n + 1):
            c = path_f(rs, b, i)
            if c is not None and c not in seen:
                seen.add(c)
                if len(seen) > budget:
                    raise BudgetExceededError(f"crystal generation exceeded budget of {budget} vertices")
                queue.append(c)
    return graph_from_elements(rs, seen)


def crystal_elements(rs: RootSystem, lam, budget: int = DEFAULT_BUDGET) -> tuple:
    return generate_crystal(rs, lam, budget).vertices


def tensor_product_elements(rs: RootSystem, lams, budget: int = DEFAULT_BUDGET) -> list:
    """Full element set of B(λ_1) ⊗ ... ⊗ B(λ_r) (the Cartesian product set)."""
    components = []
    total = 1
    for lam in lams:
        verts = crystal_elements(rs, lam, budget)
        total *= len(verts)
        if total > budget:
            raise BudgetExceededError(f"tensor crystal exceeds budget of {budget} elements")
        components.append(verts)
    return [TensorElement(fs) for fs in product(*components)]


def highest_weight_decompose(rs: RootSystem, elements, check_closed: bool = True) -> Counter:
    """Multiset of component highest weights: wt(b) over all b with ε_i(b) = 0 for all i.

    The input must be closed under the raising operators, so that components
    are counted by their genuine highest elements.
    """
    elems = list(elements)
    if check_closed:
        elem_set = set(elems)
        for b in elems:
            for i in range(1, rs.n + 1):
                c = path_e(rs, b, i)
                if c is not None and c not in elem_set:
                    raise ValueError("element set is not closed under raising operators")
    out: Counter = Counter()
    for b in elems:
        if all(epsilon(rs, b, i) == 0 for i in range(1, rs.n + 1)):
            out[wt(rs, b).coords] += 1
    return out
