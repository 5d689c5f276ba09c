"""Numerical polynomials written in the basis C(t+i, i)."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .numeric import binomial_poly


def _strip(coeffs) -> tuple[int, ...]:
    coeffs = [int(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class NumericalPolynomial:
    """p(t) = sum_i coeffs[i] * C(t+i, i); the zero polynomial has no coefficients."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    @classmethod
    def basis(cls, i: int, scale: int = 1) -> "NumericalPolynomial":
        return cls((0,) * i + (scale,))

    @classmethod
    def constant(cls, c: int) -> "NumericalPolynomial":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        """Leading standard coefficient (0 for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def padded(self, length: int) -> tuple[int, ...]:
        if length < len(self.coeffs):
            raise ValueError("polynomial does not fit the requested length")
        return self.coeffs + (0,) * (length - len(self.coeffs))

    def __call__(self, s: int) -> int:
        return sum(a * binomial_poly(s + i, i) for i, a in enumerate(self.coeffs))

    def __add__(self, other: "NumericalPolynomial") -> "NumericalPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return NumericalPolynomial(tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    def __neg__(self) -> "NumericalPolynomial":
        return NumericalPolynomial(tuple(-a for a in self.coeffs))

    def __sub__(self, other: "NumericalPolynomial") -> "NumericalPolynomial":
        return self + (-other)

    def scale(self, c: int) -> "NumericalPolynomial":
        return NumericalPolynomial(tuple(c * a for a in self.coeffs))

    def shift_back(self, k: int = 1) -> "NumericalPolynomial":
        """The polynomial t -> p(t - k), for k >= 0.

        One step sends C(t+i, i) to C(t+i, i) - C(t+i-1, i-1); k steps expand
        (1 - nabla)^k where nabla lowers the basis index by one.
        """
        if k < 0:
            raise ValueError("shift_back expects k >= 0")
        a = self.coeffs
        out = []
        for i in range(len(a)):
            acc = 0
            for j in range(len(a) - i):
                term = comb(k, j) * a[i + j]
                acc += -term if j % 2 else term
            out.append(acc)
        return NumericalPolynomial(tuple(out))

    def render(self) -> str:
        """Human readable expansion, highest basis element first."""
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[i]
            if a == 0:
                continue
            if i == 0:
                body = str(abs(a))
            else:
                basis = f"C(t+{i},{i})"
                body = basis if abs(a) == 1 else f"{abs(a)}*{basis}"
            if not parts:
                parts.append(body if a > 0 else f"-{body}")
            else:
                parts.append(("+ " if a > 0 else "- ") + body)
        return " ".join(parts)

    def __str__(self) -> str:
        return self.render()
