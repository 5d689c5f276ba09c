"""Exact binomial arithmetic, d-binomial representations and Macaulay's bracket."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb


def binomial(n: int, k: int) -> int:
    """C(n, k) for nonnegative n, k; zero when k > n."""
    if n < 0 or k < 0:
        raise ValueError(f"binomial expects nonnegative arguments, got ({n}, {k})")
    return comb(n, k)


def binomial_poly(x: int, i: int) -> int:
    """Value of the polynomial C(x, i) = x(x-1)...(x-i+1)/i! at any integer x."""
    num = 1
    for j in range(i):
        num *= x - j
    den = 1
    for j in range(2, i + 1):
        den *= j
    return num // den


@dataclass(frozen=True)
class DBinomialRep:
    """a = C(ks[0], d) + C(ks[1], d-1) + ... with ks strictly decreasing.

    ``ks[i]`` pairs with the lower index ``d - i``; the last lower index is ``j``.
    """

    d: int
    ks: tuple[int, ...]

    @property
    def j(self) -> int:
        return self.d - len(self.ks) + 1

    def terms(self) -> list[tuple[int, int]]:
        return [(k, self.d - i) for i, k in enumerate(self.ks)]

    def value(self) -> int:
        return sum(comb(k, i) for k, i in self.terms())


def d_binomial_rep(a: int, d: int) -> DBinomialRep:
    """Greedy d-binomial representation of a positive integer ``a``."""
    if a < 1:
        raise ValueError("d-binomial representation needs a >= 1")
    if d < 1:
        raise ValueError("d must be positive")
    ks = []
    i = d
    rest = a
    while rest > 0:
        # i >= 1 is guaranteed: at i == 1 the remainder is absorbed exactly by C(rest, 1)
        k = _largest_top(rest, i)
        ks.append(k)
        rest -= comb(k, i)
        i -= 1
    return DBinomialRep(d, tuple(ks))


def _largest_top(a: int, i: int) -> int:
    """Largest k >= i with C(k, i) <= a (a >= 1), by doubling then bisection."""
    lo, step = i, 1
    while comb(lo + step, i) <= a:
        lo += step
        step *= 2
    hi = lo + step  # C(hi, i) > a >= C(lo, i)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if comb(mid, i) <= a:
            lo = mid
        else:
            hi = mid
    return lo


@lru_cache(maxsize=1 << 16)
def macaulay_bracket(a: int, d: int) -> int:
    """a^<d>: raise every term C(k, i) of the d-binomial representation to C(k+1, i+1)."""
    if d < 1:
        raise ValueError("d must be positive")
    if a < 0:
        raise ValueError("bracket is defined on nonnegative integers")
    if a == 0:
        return 0
    return sum(comb(k + 1, i + 1) for k, i in d_binomial_rep(a, d).terms())
