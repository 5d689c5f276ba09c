"""Finite lattice sets in N^m: minimal elements, volumes, Hilbert-Samuel functions,
compressedness, connectivity, and the Kolchin polynomial omega_E."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .polynomial import NumericalPolynomial

Multidegree = tuple[int, ...]


def order(xi: Sequence[int]) -> int:
    return sum(xi)


def leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """Product order: a <= b coordinatewise."""
    return all(x <= y for x, y in zip(a, b))


def lub(a: Sequence[int], b: Sequence[int]) -> Multidegree:
    if len(a) != len(b):
        raise ValueError("lub of multidegrees of different length")
    return tuple(max(x, y) for x, y in zip(a, b))


def ranking_key(xi: Sequence[int]) -> tuple:
    """Orderly ranking on one copy of N^m: total order first, then lex on entries."""
    return (sum(xi), *xi)


def minimal_elements(points: Iterable[Sequence[int]], m: int | None = None) -> "LatticeSet":
    pts = {tuple(int(u) for u in p) for p in points}
    dims = {len(p) for p in pts}
    if len(dims) > 1:
        raise ValueError(f"points of mixed dimensions {sorted(dims)}")
    if dims:
        (dim,) = dims
        if m is not None and m != dim:
            raise ValueError(f"points have dimension {dim}, expected {m}")
        m = dim
    if m is None:
        raise ValueError("ambient dimension unknown for an empty point set")
    if any(u < 0 for p in pts for u in p):
        raise ValueError("multidegrees must be nonnegative")
    ordered = sorted(pts, key=ranking_key)
    if len(ordered) > 24:
        # pairwise domination table; points are distinct, so q <= p with q != p is strict
        arr = np.array(ordered, dtype=object if _wide(ordered) else np.int64)
        below = (arr[None, :, :] <= arr[:, None, :]).all(axis=2)
        np.fill_diagonal(below, False)
        keep = ~below.any(axis=1)
        return LatticeSet(m, tuple(p for p, k in zip(ordered, keep) if k))
    kept: list[Multidegree] = []
    # a point can only be dominated by a distinct point of strictly smaller order
    for p in ordered:
        if not any(leq(q, p) for q in kept):
            kept.append(p)
    return LatticeSet(m, tuple(kept))


def _wide(points) -> bool:
    return any(abs(u) >= 1 << 62 for p in points for u in p)


@dataclass(frozen=True)
class LatticeSet:
    """Upward closed subset of N^m, stored by its antichain of minimal elements.

    Build through :func:`minimal_elements` (or :meth:`of`) so that ``minimals``
    is reduced and sorted by the orderly ranking.
    """

    m: int
    minimals: tuple[Multidegree, ...] = ()

    @classmethod
    def of(cls, m: int, points: Iterable[Sequence[int]] = ()) -> "LatticeSet":
        return minimal_elements(points, m)

    def __len__(self) -> int:
        return len(self.minimals)

    def __iter__(self):
        return iter(self.minimals)

    @property
    def is_empty(self) -> bool:
        return not self.minimals

    def contains(self, xi: Sequence[int]) -> bool:
        """True if xi lies in the upward closure, i.e. is dominated by a minimal element."""
        return any(leq(g, xi) for g in self.minimals)

    def max_order(self) -> int:
        return max((order(g) for g in self.minimals), default=0)

    def corner(self) -> Multidegree:
        """Componentwise maximum of the minimal elements."""
        if not self.minimals:
            return (0,) * self.m
        return tuple(max(col) for col in zip(*self.minimals))

    def to_doc(self) -> dict:
        return {"m": self.m, "points": [list(p) for p in self.minimals]}

    @classmethod
    def from_doc(cls, doc: dict) -> "LatticeSet":
        try:
            m = int(doc["m"])
            points = [tuple(int(u) for u in p) for p in doc["points"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed lattice set document: {exc}") from exc
        for p in points:
            if len(p) != m:
                raise ValueError(f"point {list(p)} does not have length m={m}")
        return minimal_elements(points, m)


@dataclass(frozen=True)
class IndexedFamily:
    """Leader sets E_1..E_n, one per differential variable, sharing the same m."""

    sets: tuple[LatticeSet, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if len({E.m for E in self.sets}) > 1:
            raise ValueError("all sets of a family must share the same m")

    @property
    def n(self) -> int:
        return len(self.sets)

    @property
    def m(self) -> int:
        return self.sets[0].m if self.sets else 0

    def to_doc(self) -> dict:
        return {"n": self.n, "sets": [E.to_doc() for E in self.sets]}

    @classmethod
    def from_doc(cls, doc: dict) -> "IndexedFamily":
        try:
            sets = tuple(LatticeSet.from_doc(d) for d in doc["sets"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed family document: {exc}") from exc
        if "n" in doc and int(doc["n"]) != len(sets):
            raise ValueError(f"family declares n={doc['n']} but lists {len(sets)} sets")
        return cls(sets)


# ---------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=512)
def _level(m: int, d: int) -> np.ndarray:
    """All points of N^m of order d, lex descending, as an int64 array."""
    if m == 0:
        return np.zeros((1 if d == 0 else 0, 0), dtype=np.int64)
    if m == 1:
        return np.array([[d]], dtype=np.int64)
    blocks = []
    for u in range(d, -1, -1):
        rest = _level(m - 1, d - u)
        head = np.full((rest.shape[0], 1), u, dtype=np.int64)
        blocks.append(np.hstack([head, rest]))
    out = np.vstack(blocks)
    out.setflags(write=False)
    return out


def level_points(m: int, d: int) -> np.ndarray:
    return _level(m, d)


def _dominated(points: np.ndarray, E: LatticeSet, chunk: int = 1 << 22) -> np.ndarray:
    """Boolean mask: which rows of ``points`` are >= some minimal element of E."""
    mask = np.zeros(points.shape[0], dtype=bool)
    if not E.minimals or points.shape[0] == 0:
        return mask
    gens = np.array(E.minimals, dtype=np.int64).reshape(len(E.minimals), E.m)
    step = max(1, chunk // max(1, points.shape[0] * max(1, E.m)))
    for start in range(0, gens.shape[0], step):
        g = gens[start:start + step]
        mask |= (points[:, None, :] >= g[None, :, :]).all(axis=2).any(axis=1)
    return mask


def hilbert_samuel(E: LatticeSet, d: int) -> int:
    """Number of points of order exactly d outside the upward closure of E."""
    if d < 0:
        return 0
    pts = _level(E.m, d)
    return int(pts.shape[0] - _dominated(pts, E).sum())


def hilbert_samuel_series(E: LatticeSet, top: int) -> list[int]:
    return [hilbert_samuel(E, d) for d in range(top + 1)]


def volume(E: LatticeSet, s: int) -> int:
    """|V_E(s)|: points of order <= s outside the upward closure of E."""
    return sum(hilbert_samuel(E, d) for d in range(s + 1))


def is_compressed(E: LatticeSet, cutoff: int | None = None) -> bool:
    """Check compressedness on every order up to ``cutoff``.

    Within one order, the dominated points must form an initial segment of the
    lex-descending list (the orderly ranking restricted to one copy of N^m).
    """
    if cutoff is None:
        cutoff = default_compression_cutoff(E)
    if cutoff < E.max_order():
        raise ValueError("cutoff must be at least the largest minimal order")
    for d in range(cutoff + 1):
        mask = _dominated(_level(E.m, d), E)
        if np.any(mask[1:] & ~mask[:-1]):
            return False
    return True


def default_compression_cutoff(E: LatticeSet) -> int:
    return 1 + E.max_order() + E.m


# ---------------------------------------------------------------------------
# connectivity


@dataclass(frozen=True)
class ConnectivityReport:
    max_order: int
    max_lub: int
    pairs: dict
    connected: bool

    def failures(self) -> list[tuple[Multidegree, Multidegree]]:
        return [pair for pair, ok in self.pairs.items() if not ok]


def connected_pairs(M: LatticeSet, max_order: int, max_lub: int) -> ConnectivityReport:
    """For each pair of distinct minimal elements of order <= max_order, decide if a
    chain joins them inside {eta in M : eta < LUB(pair), ord eta <= max_order} with
    every consecutive LUB of order <= max_lub."""
    nodes = [g for g in M.minimals if order(g) <= max_order]
    pairs = {}
    for a, b in combinations(nodes, 2):
        top = lub(a, b)
        allowed = [g for g in nodes if leq(g, top) and g != top]
        seen = {a}
        frontier = [a]
        while frontier and b not in seen:
            cur = frontier.pop()
            for g in allowed:
                if g not in seen and order(lub(cur, g)) <= max_lub:
                    seen.add(g)
                    frontier.append(g)
        pairs[(a, b)] = b in seen
    return ConnectivityReport(max_order, max_lub, pairs, all(pairs.values()))


def connectivity_check(M: LatticeSet, d: int) -> ConnectivityReport:
    """Pairs of order <= d-1 joined by chains whose consecutive LUBs have order <= d."""
    if d <= 1:
        raise ValueError("connectivity_check expects d > 1")
    return connected_pairs(M, d - 1, d)


def dagger(E: LatticeSet, h: int) -> bool:
    """Some pair of order <= h cannot be chained with consecutive LUB orders <= h."""
    return not connected_pairs(E, h, h).connected


def dagger_prime(E: LatticeSet, h: int) -> bool:
    """As :func:`dagger`, with the LUB threshold relaxed to h + 1."""
    return not connected_pairs(E, h, h + 1).connected


# ---------------------------------------------------------------------------
# Kolchin polynomial


def pivot(E: LatticeSet) -> tuple[Multidegree, int]:
    """The ranking-largest minimal element and the index of its last nonzero entry."""
    zeta = max(E.minimals, key=ranking_key)
    k = max(i for i, u in enumerate(zeta) if u)
    return zeta, k


def slice_at_zero(E: LatticeSet, k: int) -> LatticeSet:
    """E_1: the trace of E on the hyperplane u_k = 0, as a subset of N^(m-1)."""
    return minimal_elements(
        (g[:k] + g[k + 1:] for g in E.minimals if g[k] == 0), E.m - 1
    )


def translate_down(E: LatticeSet, k: int) -> LatticeSet:
    """E_2: the points u with u + e_k in E."""
    return minimal_elements(
        (g[:k] + (max(g[k] - 1, 0),) + g[k + 1:] for g in E.minimals), E.m
    )


def kolchin_polynomial(E: LatticeSet) -> NumericalPolynomial:
    """omega_E, the numerical polynomial with omega_E(s) = volume(E, s) for large s."""
    return _kolchin(E.m, E.minimals)


@lru_cache(maxsize=1 << 16)
def _kolchin(m: int, minimals: tuple[Multidegree, ...]) -> NumericalPolynomial:
    # omega_E(t) = omega_E1(t) + omega_E2(t-1); the E2 branch is unrolled as a loop
    # and each slice is shifted back by its depth along the chain.
    E = LatticeSet(m, minimals)
    total = NumericalPolynomial()
    depth = 0
    while True:
        if E.is_empty:
            total = total + NumericalPolynomial.basis(m).shift_back(depth)
            return total
        if any(not any(g) for g in E.minimals):
            return total
        _, k = pivot(E)
        E1 = slice_at_zero(E, k)
        total = total + _kolchin(E1.m, E1.minimals).shift_back(depth)
        E = translate_down(E, k)
        depth += 1


def shift_back(p: NumericalPolynomial) -> NumericalPolynomial:
    return p.shift_back(1)


def family_polynomial(F: IndexedFamily) -> NumericalPolynomial:
    total = NumericalPolynomial()
    for E in F.sets:
        total = total + kolchin_polynomial(E)
    return total


def coefficient_sums(p: NumericalPolynomial, m: int) -> list[int]:
    """[S_0, ..., S_m] with S_j = |a_m| + ... + |a_{m-j}|."""
    if p.degree > m:
        raise ValueError(f"degree {p.degree} exceeds m={m}")
    sums = []
    acc = 0
    for j in range(m + 1):
        acc += abs(p.coeff(m - j))
        sums.append(acc)
    return sums


def order_weight(E: LatticeSet) -> int:
    """Sum of the orders of the minimal elements (0 for the empty set)."""
    return sum(order(g) for g in E.minimals)
