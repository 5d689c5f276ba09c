"""The extremal staircase sequences mu and their concatenations across variables."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice
from typing import Iterator

from .bounds import C, Cap, CapExceeded, _cap
from .lattice import LatticeSet, Multidegree, minimal_elements, order
from .polynomial import NumericalPolynomial


def successor(xi: Multidegree) -> Multidegree | None:
    """Next staircase element after xi (valid from the second element on).

    If the last nonzero entry among the first m-1 sits at position s < m-1, it
    drops by one and u_m + 2 moves to position s+1; if it sits at m-1, it drops by
    one and u_m grows by 2. None once the first m-1 entries are all zero.
    """
    m = len(xi)
    s = max((k for k in range(m - 1) if xi[k]), default=-1)
    if s < 0:
        return None
    u = list(xi)
    if s < m - 2:
        u[s] -= 1
        u[s + 1] = u[m - 1] + 2
        u[m - 1] = 0
    else:
        u[m - 2] -= 1
        u[m - 1] += 2
    return tuple(u)


def iter_mu(r0: int, m: int) -> Iterator[Multidegree]:
    """Yield the staircase started at (r0, 0, ..., 0)."""
    if r0 < 0 or m < 1:
        raise ValueError("staircase needs r0 >= 0 and m >= 1")
    if r0 == 0:
        yield (0,) * m
        return
    yield (r0,) + (0,) * (m - 1)
    if m == 1:
        return
    xi: Multidegree | None = (r0 - 1, 1) + (0,) * (m - 2)
    while xi is not None:
        yield xi
        xi = successor(xi)


@dataclass(frozen=True)
class MuSequence:
    r0: int
    m: int
    elems: tuple[Multidegree, ...]

    def __len__(self) -> int:
        return len(self.elems)

    @property
    def last(self) -> Multidegree:
        return self.elems[-1]

    def as_set(self, length: int | None = None) -> LatticeSet:
        return minimal_elements(self.elems[:length], self.m)

    def to_doc(self) -> dict:
        return {"m": self.m, "r0": self.r0, "ordered": True,
                "points": [list(p) for p in self.elems]}

    @classmethod
    def from_doc(cls, doc: dict) -> "MuSequence":
        try:
            m, r0 = int(doc["m"]), int(doc["r0"])
            elems = tuple(tuple(int(u) for u in p) for p in doc["points"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed staircase document: {exc}") from exc
        if any(len(p) != m for p in elems):
            raise ValueError("staircase points must have length m")
        return cls(r0, m, elems)


def build_mu(r0: int, m: int, cap: Cap | None = None) -> MuSequence:
    cap = _cap(cap)
    elems = []
    for xi in iter_mu(r0, m):
        elems.append(xi)
        if len(elems) > cap.steps:
            raise CapExceeded(f"mu(r0={r0}, m={m})", f"more than {cap.steps} elements")
    return MuSequence(r0, m, tuple(elems))


def vol_mu(seq: MuSequence) -> int:
    """Sum of the last entries; the number of points outside the staircase."""
    return sum(xi[-1] for xi in seq.elems)


def omega_mu_prefix(seq: MuSequence, length: int) -> NumericalPolynomial:
    """Kolchin polynomial of the first ``length`` elements, in closed form.

    With mu_length = (c_1, ..., c_m) it is sum_{i=1}^{m-1} c_{m-i} C(t+i, i) + c,
    c being the sum of the last entries of the prefix.
    """
    if not 1 <= length <= len(seq):
        raise ValueError(f"prefix length {length} outside 1..{len(seq)}")
    head = seq.elems[length - 1]
    m = seq.m
    c = sum(xi[-1] for xi in seq.elems[:length])
    return NumericalPolynomial((c,) + tuple(head[m - i - 1] for i in range(1, m)))


@dataclass(frozen=True)
class ConcatenatedMu:
    """Blocks j = 1..n; block j starts at C_{r,m}^{j-1} and lives on variable n-j+1."""

    r: int
    m: int
    n: int
    blocks: tuple[MuSequence, ...]

    def variable(self, j: int) -> int:
        return self.n - j + 1

    def vol(self) -> int:
        return sum(vol_mu(b) for b in self.blocks)


def block_start(r: int, m: int, j: int, cap: Cap | None = None) -> int:
    return C(r, m, j - 1, cap)


def build_concatenated(r: int, m: int, n: int, cap: Cap | None = None) -> ConcatenatedMu:
    if r < 0 or m < 1 or n < 1:
        raise ValueError("build_concatenated expects r >= 0, m >= 1, n >= 1")
    cap = _cap(cap)
    blocks = []
    for j in range(1, n + 1):
        try:
            blocks.append(build_mu(block_start(r, m, j, cap), m, cap))
        except CapExceeded as exc:
            raise CapExceeded(f"mu-bar(r={r}, m={m}, n={n}) block {j} starting at C({r},{m},{j - 1})",
                              exc.reason or exc.expression) from None
    return ConcatenatedMu(r, m, n, tuple(blocks))


def m_frak(r: int, m: int, n: int, tau: int, cap: Cap | None = None) -> tuple[int, int]:
    """(value, 1-based position) of the first element of block n whose first
    m-tau-1 entries vanish; the value is its entry at position m-tau."""
    if not 0 <= tau <= m - 1:
        raise ValueError("m_frak expects 0 <= tau <= m-1")
    cap = _cap(cap)
    start = block_start(r, m, n, cap)
    lead = m - tau - 1
    for pos, xi in enumerate(iter_mu(start, m), 1):
        if not any(xi[:lead]):
            return xi[lead], pos
        if pos > cap.steps:
            raise CapExceeded(f"M(r={r}, m={m}, n={n}, tau={tau})", f"more than {cap.steps} elements scanned")
    raise AssertionError("staircase ended without reaching the target shape")


def main_bound_polynomial(r: int, m: int, n: int, tau: int, cap: Cap | None = None) -> NumericalPolynomial:
    """omega of the last block cut at the type-tau position plus the volumes of the others."""
    cap = _cap(cap)
    _, pos = m_frak(r, m, n, tau, cap)
    start = block_start(r, m, n, cap)
    prefix = MuSequence(start, m, tuple(islice(iter_mu(start, m), pos)))
    total = omega_mu_prefix(prefix, pos)
    for j in range(1, n):
        total = total + NumericalPolynomial.constant(vol_mu(build_mu(block_start(r, m, j, cap), m, cap)))
    return total


def terminal_order(seq: MuSequence) -> int:
    return order(seq.last)
