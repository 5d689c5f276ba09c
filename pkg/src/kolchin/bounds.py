"""Ackermann-based order bounds and the typical differential dimension bounds built on them.

Every function either returns an exact integer or raises :class:`CapExceeded`;
nothing is truncated or approximated.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

DEFAULT_BITS = 10**6
DEFAULT_STEPS = 10**6

# Readings that can be switched; the defaults are the ones the staircase
# construction agrees with (see tests/test_bounds.py).
ZERO_ONE_READINGS = ("literal", "alt")
B_READINGS = ("minus-two", "minus-one")
NU_READINGS = ("plain", "plus-one")


class CapExceeded(ArithmeticError):
    """A value or an iteration count went past the configured cap."""

    def __init__(self, expression: str, reason: str = ""):
        self.expression = expression
        self.reason = reason
        super().__init__(f"{expression}: bound astronomically large ({reason})" if reason
                         else f"{expression}: bound astronomically large")


@dataclass(frozen=True)
class Cap:
    bits: int = DEFAULT_BITS
    steps: int = DEFAULT_STEPS

    @classmethod
    def from_env(cls) -> "Cap":
        bits = int(os.environ.get("KOLCHIN_CAP_BITS", DEFAULT_BITS))
        steps = int(os.environ.get("KOLCHIN_CAP_STEPS", DEFAULT_STEPS))
        return cls(bits, steps)


def _cap(cap: Cap | None) -> Cap:
    return Cap.from_env() if cap is None else cap


def _short(v: int) -> str:
    return str(v) if v.bit_length() <= 64 else f"<{v.bit_length()}-bit integer>"


def _fits(value: int, expression: str, cap: Cap) -> int:
    if abs(value).bit_length() > cap.bits:
        raise CapExceeded(expression, f"{abs(value).bit_length()} bits > cap {cap.bits}")
    return value


# ---------------------------------------------------------------------------
# Ackermann


@lru_cache(maxsize=1 << 14)
def _ack(x: int, y: int, bits: int) -> int:
    expr = f"A({x}, {_short(y)})"
    if x == 0:
        return y + 1
    if x == 1:
        return y + 2
    if x == 2:
        return 2 * y + 3
    if x == 3:
        # 2^(y+3) - 3; refuse before materialising it
        if y + 3 > bits:
            raise CapExceeded(expr, f"needs {_short(y + 3)} bits > cap {bits}")
        return (1 << (y + 3)) - 3
    if y >= 2:
        raise CapExceeded(expr, "A(x, y) with x >= 4 and y >= 2 is refused")
    if y == 0:
        return _ack(x - 1, 1, bits)
    return _ack(x - 1, _ack(x, 0, bits), bits)


def ackermann(x: int, y: int, cap: Cap | None = None) -> int:
    """Standard two-argument Ackermann function A(x, y)."""
    if x < 0 or y < 0:
        raise ValueError("ackermann expects nonnegative arguments")
    cap = _cap(cap)
    return _fits(_ack(x, y, cap.bits), f"A({x}, {_short(y)})", cap)


def ackermann_ext(x: int, y: int, cap: Cap | None = None, reading: str = "literal") -> int:
    """Ackermann extended to y = -1 (A(x, -1) = 1 for x > 0).

    ``reading="literal"`` also sets A(0, 1) = 0; ``reading="alt"`` keeps the base
    rule there and only pins A(0, -1) = 0.
    """
    if reading not in ZERO_ONE_READINGS:
        raise ValueError(f"unknown reading {reading!r}")
    if x < 0 or y < -1:
        raise ValueError("ackermann_ext expects x >= 0 and y >= -1")
    if y == -1:
        return 1 if x > 0 else 0
    if x == 0 and y == 1 and reading == "literal":
        return 0
    return ackermann(x, y, cap)


# ---------------------------------------------------------------------------
# order bounds C_{r,m}^n


def _c1(r: int, m: int, cap: Cap) -> int:
    if r > cap.steps:
        raise CapExceeded(f"C({_short(r)}, {m}, 1)", f"{_short(r)} Ackermann steps > cap {cap.steps}")
    return _c1_cached(r, m, cap.bits)


_C1_TABLES: dict[tuple[int, int], list[int]] = {}


def _c1_cached(r: int, m: int, bits: int) -> int:
    # values[k] = C_{k,m}^1, extended one recursion step at a time and kept per (m, bits)
    values = _C1_TABLES.setdefault((m, bits), [0])
    while len(values) <= r:
        try:
            values.append(_ack(m - 1, values[-1], bits))
        except CapExceeded as exc:
            raise CapExceeded(f"C({_short(r)}, {m}, 1)", f"inner {exc.expression}") from None
    return values[r]


def C(r: int, m: int, n: int, cap: Cap | None = None) -> int:
    """C_{r,m}^n: C^0 = r, C_{0,m}^1 = 0, C_{r,m}^1 = A(m-1, C_{r-1,m}^1), C^n = C^1 at C^{n-1}."""
    if r < 0 or m < 1 or n < 0:
        raise ValueError("C expects r >= 0, m >= 1, n >= 0")
    cap = _cap(cap)
    v = r
    for level in range(1, n + 1):
        try:
            v = _c1(v, m, cap)
        except CapExceeded as exc:
            raise CapExceeded(f"C({r}, {m}, {n})", f"level {level}: {exc.reason or exc.expression}") from None
        _fits(v, f"C({r}, {m}, {level})", cap)
    return v


def coefficient_bound(r: int, m: int, n: int, cap: Cap | None = None) -> tuple[int, list[int]]:
    """D = C(C+m-1, C) * C with C = C_{r,m}^n, and the bounds n*D^j for j = 0..m
    on |a_m| + ... + |a_{m-j}|."""
    cap = _cap(cap)
    c = C(r, m, n, cap)
    if c.bit_length() * max(m - 1, 1) > cap.bits:
        raise CapExceeded(f"D(r={r}, m={m}, n={n})", "binomial of the order bound exceeds cap")
    D = comb(c + m - 1, c) * c
    _fits(D, f"D(r={r}, m={m}, n={n})", cap)
    if D.bit_length() * m > cap.bits:
        raise CapExceeded(f"n*D^{m} (r={r}, m={m}, n={n})", "power exceeds cap")
    return D, [n * D**j for j in range(m + 1)]


def type_zero_alt_bound(r: int, m: int, n: int, cap: Cap | None = None) -> int:
    """n * (C_{r,m}^n)^m."""
    cap = _cap(cap)
    c = C(r, m, n, cap)
    if c.bit_length() * m > cap.bits:
        raise CapExceeded(f"{n}*C({r},{m},{n})^{m}", "power exceeds cap")
    return n * c**m


# ---------------------------------------------------------------------------
# staircase entries: B and the rewrite algorithm


def B(r: int, m: int, n: int, i: int, cap: Cap | None = None, reading: str = "minus-two") -> int:
    """B_{r,m,n}^i, the nonzero entry of the first staircase element of block n whose
    first i-1 entries vanish.

    For i >= 3 the recursion is B^i = A(m-i+2, B^{i-1} - k) + 1 with k = 2
    (``reading="minus-two"``) or k = 1 (``reading="minus-one"``).
    """
    if reading not in B_READINGS:
        raise ValueError(f"unknown reading {reading!r}")
    if r < 1 or n < 1:
        raise ValueError("B expects r >= 1 and n >= 1")
    if not 1 <= i <= m:
        raise ValueError("B expects 1 <= i <= m")
    if i >= 3 and m < 3:
        raise ValueError("B^i for i >= 3 needs m >= 3")
    cap = _cap(cap)
    b = C(r, m, n - 1, cap)
    if i == 1:
        return b
    b = C(b - 1, m, 1, cap) + 1
    k = 2 if reading == "minus-two" else 1
    for level in range(3, i + 1):
        try:
            b = ackermann_ext(m - level + 2, b - k, cap) + 1
        except CapExceeded as exc:
            raise CapExceeded(f"B({r}, {m}, {n}, {level})", exc.reason or exc.expression) from None
    return b


def _rewrite(u: list[int]) -> str | None:
    """Apply one staircase rewrite step in place and name the rule used."""
    m = len(u)
    s = max((k for k in range(m - 1) if u[k]), default=-1)
    if s < 0:
        return None
    if s < m - 2:
        u[s] -= 1
        u[s + 1] = u[m - 1] + 2
        u[m - 1] = 0
        return "move"
    u[m - 2] -= 1
    u[m - 1] += 2
    return "grow"


def omega_alg(r: int, m: int, n: int, tau: int, cap: Cap | None = None) -> int:
    """Entry bound for type tau obtained by running the rewrite rules.

    Starts at (C_{r,m}^{n-1} - 1, 1, 0, ..., 0) and stops at the first tuple whose
    first m-tau-1 entries vanish. For tau = m-1 the answer is the start order
    itself, which precedes that tuple.
    """
    if not 0 <= tau <= m - 1:
        raise ValueError("omega_alg expects 0 <= tau <= m-1")
    cap = _cap(cap)
    start = C(r, m, n - 1, cap)
    if tau == m - 1 or start == 0:
        return start
    u = [start - 1, 1] + [0] * (m - 2)
    lead = m - tau - 1
    steps = 0
    while any(u[:lead]):
        assert _rewrite(u), "rewrite rules stalled before reaching the target shape"
        steps += 1
        if steps > cap.steps:
            raise CapExceeded(f"Omega(r={r}, m={m}, n={n}, tau={tau})", f"more than {cap.steps} rewrite steps")
    return u[lead]


def upsilon_alg(r0: int, m: int, cap: Cap | None = None) -> int:
    """Volume of the staircase started at order r0, accumulated along the rewrite rules.

    The accumulator starts at the last entry of (r0-1, 1, 0, ..., 0), which is
    only nonzero for m = 2.
    """
    if r0 < 0 or m < 1:
        raise ValueError("upsilon_alg expects r0 >= 0 and m >= 1")
    cap = _cap(cap)
    if r0 == 0:
        return 0
    if m == 1:
        return r0
    u = [r0 - 1, 1] + [0] * (m - 2)
    acc = u[m - 1]
    steps = 0
    while any(u[:m - 1]):
        if _rewrite(u) == "grow":
            acc += u[m - 1]
        steps += 1
        if steps > cap.steps:
            raise CapExceeded(f"Upsilon(r0={_short(r0)}, m={m})", f"more than {cap.steps} rewrite steps")
    return acc


# ---------------------------------------------------------------------------
# volume formulas F and nu


def F(x: int, y: int, cap: Cap | None = None, reading: str = "literal") -> int:
    """F(0, y) = 1, F(x, y) = sum_{i=-1}^{y-1} F(x-1, A(x, i))."""
    if x < 0 or y < -1:
        raise ValueError("F expects x >= 0, y >= -1")
    cap = _cap(cap)
    return _F(x, y, cap, reading)


def _F(x: int, y: int, cap: Cap, reading: str) -> int:
    if x == 0:
        return 1
    if x == 1:
        # y + 1 summands, each F(0, .) = 1
        return y + 1
    if y + 1 > cap.steps:
        raise CapExceeded(f"F({x}, {_short(y)})", f"{_short(y + 1)} summands > cap {cap.steps}")
    return _F_cached(x, y, cap, reading)


@lru_cache(maxsize=1 << 14)
def _F_cached(x: int, y: int, cap: Cap, reading: str) -> int:
    total = 0
    for i in range(-1, y):
        total += _F(x - 1, ackermann_ext(x, i, cap, reading), cap, reading)
    return _fits(total, f"F({x}, {y})", cap)


def nu(x: int, y: int, cap: Cap | None = None, reading: str = "plain",
       zero_one: str = "literal") -> int:
    """nu(x, 0) = 0 and nu(x, y) = F(x-1, C_{y-1,x}^1 + k) + nu(x, y-1).

    ``reading="plain"`` uses k = 0, ``reading="plus-one"`` uses k = 1.
    """
    if reading not in NU_READINGS:
        raise ValueError(f"unknown reading {reading!r}")
    if x < 1 or y < 0:
        raise ValueError("nu expects x >= 1 and y >= 0")
    cap = _cap(cap)
    if y > cap.steps:
        raise CapExceeded(f"nu({x}, {_short(y)})", f"{_short(y)} terms > cap {cap.steps}")
    k = 1 if reading == "plus-one" else 0
    total = 0
    for z in range(1, y + 1):
        try:
            total += F(x - 1, C(z - 1, x, 1, cap) + k, cap, zero_one)
        except CapExceeded as exc:
            raise CapExceeded(f"nu({x}, {y})", f"term {z}: {exc.expression}") from None
    return _fits(total, f"nu({x}, {y})", cap)


# ---------------------------------------------------------------------------
# dispatch


@dataclass(frozen=True)
class BoundResult:
    value: int | None
    provenance: str
    parameters: dict = field(default_factory=dict)
    expression: str = ""

    @property
    def exceeds_cap(self) -> bool:
        return self.value is None

    def to_doc(self) -> dict:
        doc = {
            "parameters": dict(self.parameters),
            "provenance": self.provenance,
            "value": self.value if self.value is not None else "exceeds-cap",
        }
        if self.expression:
            doc["expression"] = self.expression
        return doc


PROVENANCE = {
    "full-type": "a_m <= n",
    "codimension-one": "a_{m-1} <= n*r",
    "zero-order": "order-zero system: omega = 0 below type m",
    "plane-closed-form": "a_0 <= (4^n - 1)/3 * r^2",
    "staircase-entry": "a_tau <= B_{r,m,n}^{m-tau}",
    "staircase-volume": "a_0 <= sum_{i=1}^{n} nu(m, C_{r,m}^{i-1})",
}


def typical_dim_bound(r: int, m: int, n: int, tau: int, cap: Cap | None = None) -> BoundResult:
    """Best available upper bound on the typical differential dimension a_tau."""
    if r < 0 or m < 1 or n < 1 or not 0 <= tau <= m:
        raise ValueError("typical_dim_bound expects r >= 0, m >= 1, n >= 1, 0 <= tau <= m")
    cap = _cap(cap)
    params = {"r": r, "m": m, "n": n, "tau": tau}

    if tau == m:
        return BoundResult(n, "full-type", params, PROVENANCE["full-type"])
    if tau == m - 1:
        return BoundResult(n * r, "codimension-one", params, PROVENANCE["codimension-one"])
    if r == 0:
        return BoundResult(0, "zero-order", params, PROVENANCE["zero-order"])
    if m == 2:
        geometric, rem = divmod(4**n - 1, 3)
        assert rem == 0
        value = geometric * r * r
        return BoundResult(_fits(value, "(4^n-1)/3*r^2", cap), "plane-closed-form", params,
                           PROVENANCE["plane-closed-form"])
    if tau >= 1:
        expr = f"B({r}, {m}, {n}, {m - tau})"
        try:
            return BoundResult(B(r, m, n, m - tau, cap), "staircase-entry", params, expr)
        except CapExceeded as exc:
            return BoundResult(None, "staircase-entry", params, f"{expr}; {exc}")
    terms = " + ".join(f"nu({m}, C({r},{m},{i - 1}))" for i in range(1, n + 1))
    try:
        value = sum(nu(m, C(r, m, i - 1, cap), cap) for i in range(1, n + 1))
    except CapExceeded as exc:
        return BoundResult(None, "staircase-volume", params, f"{terms}; {exc}")
    return BoundResult(_fits(value, terms, cap), "staircase-volume", params, terms)
