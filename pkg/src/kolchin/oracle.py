"""Brute-force verifiers: polynomial fitting from volumes, seeded random lattice sets,
exhaustive checks of the Macaulay-function lemmas, and naive reference versions of
the recursions used elsewhere in the package."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb

import numpy as np

from .lattice import LatticeSet, level_points, _dominated, minimal_elements
from .numeric import macaulay_bracket
from .polynomial import NumericalPolynomial

MASK64 = (1 << 64) - 1


class XorShift64:
    """Marsaglia xorshift64 (shifts 13, 7, 17) on a nonzero 64-bit state.

    The seed is mixed as state = (seed * 0x9E3779B97F4A7C15 + 1) mod 2^64 so that
    small seeds do not start from a near-zero state.
    """

    def __init__(self, seed: int):
        self.state = (seed * 0x9E3779B97F4A7C15 + 1) & MASK64 or 1

    def next(self) -> int:
        x = self.state
        x ^= (x << 13) & MASK64
        x ^= x >> 7
        x ^= (x << 17) & MASK64
        self.state = x
        return x

    def below(self, n: int) -> int:
        """Integer in [0, n) by modulo reduction (bias is irrelevant at these sizes)."""
        return self.next() % n


def random_composition(rng: XorShift64, total: int, m: int) -> tuple[int, ...]:
    """Split ``total`` into m nonnegative parts, drawing each part from what is left."""
    parts = []
    rest = total
    for _ in range(m - 1):
        take = rng.below(rest + 1)
        parts.append(take)
        rest -= take
    parts.append(rest)
    # rotate so that no coordinate is systematically favoured
    k = rng.below(m)
    return tuple(parts[k:] + parts[:k])


def random_lattice_set(m: int, max_order: int, max_points: int, seed: int) -> LatticeSet:
    """Draw 1..max_points points of order <= max_order in N^m and reduce them."""
    rng = XorShift64(seed)
    k = 1 + rng.below(max_points)
    points = [random_composition(rng, rng.below(max_order + 1), m) for _ in range(k)]
    return minimal_elements(points, m)


# ---------------------------------------------------------------------------
# fitting


@dataclass(frozen=True)
class FitReport:
    polynomial: NumericalPolynomial
    stabilization_level: int
    samples: list = field(default_factory=list)


class FitError(ValueError):
    pass


def _shift_back_once(coeffs: list[int]) -> list[int]:
    return [coeffs[i] - (coeffs[i + 1] if i + 1 < len(coeffs) else 0) for i in range(len(coeffs))]


def fit_numerical_polynomial(values, m: int) -> FitReport:
    """Fit a degree <= m numerical polynomial to the tail of consecutive samples.

    The last m+1 samples fix the Newton forward-difference coefficients at the
    window start w; C(k, i) equals C(t+i, i) shifted back i times, and the whole
    thing is shifted back by w to land in the C(t+i, i) basis. The fit is then
    checked on the earlier samples, walking backwards until the first mismatch.
    """
    samples = sorted((int(s), int(v)) for s, v in values)
    levels = [s for s, _ in samples]
    if len(samples) < m + 2:
        raise FitError(f"need at least {m + 2} samples, got {len(samples)}")
    if levels != list(range(levels[0], levels[0] + len(levels))):
        raise FitError("samples must sit on consecutive levels")
    window = [v for _, v in samples[-(m + 1):]]
    w = samples[-(m + 1)][0]
    if w < 0:
        raise FitError("fit window must start at a nonnegative level")

    diffs = []
    row = window
    for _ in range(m + 1):
        diffs.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]

    coeffs = [0] * (m + 1)
    for i, c in enumerate(diffs):
        term = [0] * i + [c] + [0] * (m - i)
        for _ in range(i):
            term = _shift_back_once(term)
        coeffs = [a + b for a, b in zip(coeffs, term)]
    for _ in range(w):
        coeffs = _shift_back_once(coeffs)
    poly = NumericalPolynomial(tuple(coeffs))

    stab = w
    for s, v in reversed(samples[:-(m + 1)]):
        if poly(s) != v:
            break
        stab = s
    if stab == w:
        raise FitError(f"no stabilization: the fit is not confirmed below level {w}")
    return FitReport(poly, stab, samples)


def volume_samples(E: LatticeSet, top: int) -> list[tuple[int, int]]:
    """(s, |V_E(s)|) for s = 0..top by a single cumulative enumeration."""
    out = []
    acc = 0
    for d in range(top + 1):
        pts = level_points(E.m, d)
        acc += int(pts.shape[0] - _dominated(pts, E).sum())
        out.append((d, acc))
    return out


def fit_from_volumes(E: LatticeSet, extra: int = 3) -> FitReport:
    """Independent route to omega_E: sample volumes past the corner order and fit."""
    t_star = sum(E.corner())
    return fit_numerical_polynomial(volume_samples(E, t_star + E.m + extra), E.m)


class PrefixScanner:
    """All points of N^m up to order ``top`` with a domination mask that grows as
    generators are added one at a time.

    Meant for walking the prefixes of a long sequence: each :meth:`add` costs one
    pass over the points, and the Hilbert-Samuel values, volumes and the
    compressedness test of the current prefix are read off the mask.
    """

    def __init__(self, m: int, top: int):
        levels = [level_points(m, d) for d in range(top + 1)]
        self.m = m
        self.top = top
        self.points = np.vstack(levels)
        sizes = np.array([lv.shape[0] for lv in levels])
        self.starts = np.concatenate([[0], np.cumsum(sizes)[:-1]])
        self.sizes = sizes
        self.mask = np.zeros(self.points.shape[0], dtype=bool)
        # position i pairs with i+1 inside the same order
        inner = np.ones(max(self.points.shape[0] - 1, 0), dtype=bool)
        inner[self.starts[1:] - 1] = False
        self._inner = inner
        self.generators: list[tuple[int, ...]] = []

    def add(self, g) -> None:
        g = tuple(int(u) for u in g)
        self.generators.append(g)
        d = sum(g)
        if d <= self.top:
            lo = self.starts[d]
            tail = self.points[lo:]
            self.mask[lo:] |= (tail >= np.array(g, dtype=np.int64)).all(axis=1)

    def hilbert(self) -> list[int]:
        free = np.add.reduceat((~self.mask).astype(np.int64), self.starts)
        return [int(v) for v in free]

    def volumes(self) -> list[tuple[int, int]]:
        return list(enumerate(int(v) for v in np.cumsum(self.hilbert())))

    def compressed(self) -> bool:
        """Dominated points form an initial lex-descending segment of every order <= top."""
        return not np.any(self.mask[1:] & ~self.mask[:-1] & self._inner)


# ---------------------------------------------------------------------------
# naive references


def minimal_elements_quadratic(points) -> set[tuple[int, ...]]:
    pts = {tuple(p) for p in points}
    return {p for p in pts if not any(q != p and all(a <= b for a, b in zip(q, p)) for q in pts)}


def pascal_row_table(n_max: int) -> list[list[int]]:
    rows = [[1]]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        rows.append([1] + [prev[k - 1] + prev[k] for k in range(1, n)] + [1])
    return rows


def d_binomial_reps_exhaustive(a: int, d: int) -> list[tuple[int, ...]]:
    """All strictly decreasing (k_d, ..., k_j) with k_j >= j >= 1 summing to a."""
    found = []
    k_top = d
    while comb(k_top, d) <= a:
        k_top += 1

    def go(i: int, upper: int, rest: int, acc: tuple[int, ...]):
        if rest == 0 and acc:
            found.append(acc)
            return
        if i < 1:
            return
        for k in range(i, upper):
            c = comb(k, i)
            if c > rest:
                break
            go(i - 1, k, rest - c, acc + (k,))

    go(d, k_top, a, ())
    return found


def ackermann_raw(x: int, y: int) -> int:
    """Textbook recursion, with an explicit stack."""
    stack = [x]
    while stack:
        x = stack.pop()
        if x == 0:
            y += 1
        elif y == 0:
            stack.append(x - 1)
            y = 1
        else:
            stack.append(x - 1)
            stack.append(x)
            y -= 1
    return y


def mu_by_definition(r: int, m: int, limit: int = 10**5) -> list[tuple[int, ...]]:
    """Staircase from its defining rule, by enumeration.

    The first element is the ranking-largest point of order r; every later one is
    the ranking-largest point not above an earlier element, taken at order r for
    the second element and one order higher for each element after that.
    """
    if r == 0:
        return [(0,) * m]
    seq = [(r,) + (0,) * (m - 1)]
    d = r
    while len(seq) < limit:
        pts = level_points(m, d)
        mask = _dominated(pts, minimal_elements(seq, m))
        free = np.flatnonzero(~mask)
        if free.size == 0:
            break
        seq.append(tuple(int(u) for u in pts[free[0]]))
        d += 1
    return seq


# ---------------------------------------------------------------------------
# exhaustive lemma checks


@dataclass
class LemmaReport:
    lemma: str
    checked: int = 0
    violations: int = 0
    first: object = None

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def record(self, holds: bool, witness) -> None:
        self.checked += 1
        if not holds:
            self.violations += 1
            if self.first is None:
                self.first = witness


def _br(a: int, d: int) -> int:
    return macaulay_bracket(a, d)


def check_superadditive(a_max: int = 200, d_max: int = 4) -> LemmaReport:
    rep = LemmaReport("superadditive")
    for d in range(1, d_max + 1):
        for a in range(a_max + 1):
            for b in range(a, a_max + 1):
                rep.record(_br(a, d) + _br(b, d) <= _br(a + b, d), (a, b, d))
    return rep


def check_full_block_split(m_max: int = 5, d_max: int = 4) -> LemmaReport:
    """a, b <= K = C(m-1+d, d) and a + b <= K + c imply a^<d> + b^<d> <= K^<d> + c^<d>,
    strictly when a, b > 0 and c = 0."""
    rep = LemmaReport("full-block-split")
    for m in range(1, m_max + 1):
        for d in range(1, d_max + 1):
            K = comb(m - 1 + d, d)
            top = _br(K, d)
            for a in range(K + 1):
                for b in range(a, K + 1):
                    lhs = _br(a, d) + _br(b, d)
                    for c in range(max(0, a + b - K), K + 1):
                        rhs = top + _br(c, d)
                        rep.record(lhs <= rhs, (m, d, a, b, c))
                        if a > 0 and b > 0 and c == 0:
                            rep.record(lhs < rhs, (m, d, a, b, c, "strict"))
    return rep


def _block_cases(t_max: int, s_max: int, m_max: int, d_max: int, positive: bool):
    for m in range(1, m_max + 1):
        for d in range(1, d_max + 1):
            K = comb(m - 1 + d, d)
            low = 1 if positive else 0
            for t in range(1, t_max + 1):
                for a in combinations_with_replacement(range(low, K + 1), t):
                    for s in range(1, s_max + 1):
                        yield m, d, K, a, s


def check_block_domination(t_max: int = 4, s_max: int = 4, m_max: int = 3, d_max: int = 3) -> LemmaReport:
    """a_1 <= ... <= a_t, b_1 <= b_2 = ... = b_s = K with every a_i <= b_s and
    sum a <= sum b imply sum a_i^<d> <= sum b_i^<d>."""
    rep = LemmaReport("block-domination")
    for m, d, K, a, s in _block_cases(t_max, s_max, m_max, d_max, positive=False):
        sa = sum(a)
        lhs = sum(_br(x, d) for x in a)
        # s == 1: b_1 is the only (and last) entry, so it must dominate every a_i
        lows = range(max(a), K + 1) if s == 1 else range(K + 1)
        for b1 in lows:
            b = (b1,) + (K,) * (s - 1)
            if sa > sum(b):
                continue
            rep.record(lhs <= sum(_br(x, d) for x in b), (m, d, a, b))
    return rep


def check_block_rigidity(t_max: int = 4, s_max: int = 4, m_max: int = 3, d_max: int = 3) -> LemmaReport:
    """Positive a_1 <= ... <= a_t <= K, b = (K, ..., K) of length s, sum a <= sum b and
    equal bracket sums force s = t and a = b. Only instances meeting every
    hypothesis are counted."""
    rep = LemmaReport("block-rigidity")
    for m, d, K, a, s in _block_cases(t_max, s_max, m_max, d_max, positive=True):
        if sum(a) > s * K or sum(_br(x, d) for x in a) != s * _br(K, d):
            continue
        rep.record(len(a) == s and all(x == K for x in a), (m, d, a, s))
    return rep


LEMMAS = {
    "superadditive": check_superadditive,
    "full-block-split": check_full_block_split,
    "block-domination": check_block_domination,
    "block-rigidity": check_block_rigidity,
}


def exhaustive_lemma_check(lemma: str, **ranges) -> LemmaReport:
    try:
        fn = LEMMAS[lemma]
    except KeyError:
        raise ValueError(f"unknown lemma {lemma!r}; choose from {sorted(LEMMAS)}") from None
    return fn(**ranges)

