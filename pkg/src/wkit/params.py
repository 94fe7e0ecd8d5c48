"""Parameter bundles shared by every layer of the toolkit.

EllipticParams carries (N, q, s, c) and everything derived from them:
the elliptic nome p = s^2, the shifted nome p* = p q^{-2c}, the shifted
root value s* = s q^{-c}, and the multiplicative-to-additive bridge
(zeta, tau) with q = e^{i pi zeta}, p = e^{2 i pi tau}.

The value s plays the role of the designated square root written
"-p^{1/2}" in the structure-function ladders.  It is stored once,
resolved by the surface / abelianity solvers, and never recomputed from
p, so no sign ambiguity can creep into downstream formulas.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

from .errors import ModulusOutOfRange

_I_PI = 1j * cmath.pi


@dataclass(frozen=True)
class TruncationPolicy:
    """Tail-tolerance control for all infinite series and products.

    tail_eps: stop once the next term/factor deviates from the neutral
    element by less than this.  max_terms: hard cap per summation index;
    hitting it before the tail bound raises TruncationBudgetExceeded.
    """

    tail_eps: float = 1e-16
    max_terms: int = 512

    def __post_init__(self):
        if not (0 < self.tail_eps <= 1e-8):
            raise ValueError(f"tail_eps must lie in (0, 1e-8], got {self.tail_eps}")
        if self.max_terms < 64:
            raise ValueError(f"max_terms must be >= 64, got {self.max_terms}")


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class EllipticParams:
    """Parameter point (N, q, s, c) with derived quantities.

    N: rank, >= 2.  q: deformation parameter, 0 < |q| < 1.  s: designated
    value of -p^{1/2} (so p = s^2).  c: central charge (real in all tests).

    Scalar structure functions need only q and the s-ladder, so |p| >= 1 is
    allowed there; R-matrix construction additionally requires |p| < 1 and
    checks it at build time.
    """

    N: int
    q: complex
    s: complex
    c: complex = 0.0

    p: complex = field(init=False)
    p_star: complex = field(init=False)
    s_star: complex = field(init=False)
    omega: complex = field(init=False)
    zeta: complex = field(init=False)

    def __post_init__(self):
        if self.N < 2:
            raise ValueError(f"N must be >= 2, got {self.N}")
        q = complex(self.q)
        if q == 0 or abs(q) >= 1:
            raise ValueError(f"q must satisfy 0 < |q| < 1, got {q}")
        if abs(q ** (2 * self.N) - 1) <= 1e-6:
            raise ValueError("q^(2N) is too close to 1 (root-of-unity degeneracy)")
        s = complex(self.s)
        if s == 0:
            raise ValueError("s must be nonzero")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "c", complex(self.c))
        object.__setattr__(self, "p", s * s)
        object.__setattr__(self, "s_star", s * q ** (-self.c))
        object.__setattr__(self, "p_star", self.s_star**2)
        object.__setattr__(self, "omega", cmath.exp(2j * cmath.pi / self.N))
        object.__setattr__(self, "zeta", cmath.log(q) / _I_PI)

    @property
    def tau(self) -> complex:
        """Additive nome of p: p = e^{2 i pi tau}, principal branch."""
        return cmath.log(self.p) / (2 * _I_PI)

    @property
    def tau_star(self) -> complex:
        """Additive nome of p* = p q^{-2c}."""
        return cmath.log(self.p_star) / (2 * _I_PI)

    def require_elliptic(self):
        """Raise unless |p| < 1 (needed for any R-matrix construction)."""
        if abs(self.p) >= 1 - 1e-9:
            raise ModulusOutOfRange(
                f"|p| = {abs(self.p):.6g} >= 1: parameters unusable for R-matrix work"
            )
        return self

    def with_c(self, c: complex) -> "EllipticParams":
        """Same (N, q, s) at a different central charge."""
        return EllipticParams(self.N, self.q, self.s, c)


def xi_of(z: complex) -> complex:
    """Principal additive spectral variable: z = e^{i pi xi}."""
    if z == 0:
        raise ZeroDivisionError("xi_of(0) undefined")
    return cmath.log(z) / _I_PI


def z_of(xi: complex) -> complex:
    return cmath.exp(_I_PI * xi)
