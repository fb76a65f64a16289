from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class DomainError(ValueError):
    """Parameters outside the range where a closed form holds."""


@dataclass(frozen=True)
class KarloffParams:
    """Johnson-graph parameters for J(m, m/2, b)."""

    m: int
    b: int

    def __post_init__(self):
        if self.m < 2 or self.m % 2:
            raise DomainError(f"m must be an even integer >= 2, got {self.m}")
        if not 0 <= self.b <= self.m // 2:
            raise DomainError(f"b must lie in [0, m/2], got b={self.b} for m={self.m}")

    @property
    def r(self) -> Fraction:
        return Fraction(self.b, self.m)

    @property
    def half(self) -> int:
        return self.m // 2

    @property
    def in_formula_range(self) -> bool:
        """True when 0 <= b < m/4, where the ratio and Max-Cut formulas are proven."""
        return 4 * self.b < self.m

    @property
    def trivial(self) -> bool:
        return self.b == 0

    @property
    def label(self) -> str:
        return f"J({self.m},{self.half},{self.b})"


@dataclass(frozen=True)
class SrgParams:
    n: int
    k: int
    lam: int
    mu: int

    @property
    def consistent(self) -> bool:
        return 0 < self.k < self.n - 1 and self.k * (self.k - self.lam - 1) == (self.n - self.k - 1) * self.mu

    @property
    def edge_count(self) -> int:
        return self.n * self.k // 2

    @property
    def primitive(self) -> bool:
        # imprimitive SRGs are exactly those with mu = 0 or mu = k
        return 0 < self.mu < self.k

    def __iter__(self):
        return iter((self.n, self.k, self.lam, self.mu))
