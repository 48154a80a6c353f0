"""Braid parameter, the Alexander-Conway R-matrix B_t and the intertwiner W_t."""

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from braidlab import cyclotomic as cy
from braidlab.cyclotomic import Cyclotomic, DEFAULT_TOL
from braidlab.graded import GradedOperator, Parity, gl11_generators, kron, residual


@dataclass(frozen=True)
class RootOfUnity:
    """Level (r, s): t = -exp(2 pi i r/s) with gcd(r, s) = 1 and 1 <= r < s."""

    r: int
    s: int
    exact: bool = True

    def __post_init__(self):
        if self.s < 2:
            raise ValueError(f"level s must be >= 2, got {self.s}")
        if not 1 <= self.r < self.s:
            raise ValueError(f"need 1 <= r < s, got r={self.r}, s={self.s}")
        if gcd(self.r, self.s) != 1:
            raise ValueError(f"r={self.r} and s={self.s} are not coprime")

    @property
    def g(self):
        return Fraction(self.r, self.s)

    @property
    def minus_t(self):
        if self.exact:
            return cy.root_of_unity(2 * self.r, 2 * self.s)
        return cmath.exp(2j * cmath.pi * self.r / self.s)

    @property
    def t(self):
        return -self.minus_t

    def describe(self):
        return {"kind": "root_of_unity", "r": self.r, "s": self.s}

    def __str__(self):
        return f"{self.r}/{self.s}"


@dataclass(frozen=True)
class Generic:
    """Any nonzero t, exact (Cyclotomic) or float (complex)."""

    t: object

    def __post_init__(self):
        if isinstance(self.t, Cyclotomic):
            if self.t.ndim or self.t.is_zero():
                raise ValueError("braid parameter t must be a nonzero scalar")
        else:
            object.__setattr__(self, "t", complex(self.t))
            if self.t == 0:
                raise ValueError("braid parameter t must be nonzero (B_t is singular at t = 0)")

    @property
    def exact(self):
        return isinstance(self.t, Cyclotomic)

    @property
    def minus_t(self):
        return -self.t

    @property
    def s(self):
        return None

    def describe(self):
        t = cy.approx(self.t)
        return {"kind": "generic", "t": [float(t.real), float(t.imag)], "exact": self.exact}

    def __str__(self):
        t = cy.approx(self.t)
        return f"t={t.real:g}{t.imag:+g}i"


def level(r, s, exact=True):
    return RootOfUnity(r, s, exact)


def generic(t):
    return Generic(t)


def _mat(rows, exact):
    if exact:
        return Cyclotomic.from_entries(rows)
    return np.array([[complex(cy.approx(x)) for x in row] for row in rows], dtype=complex)


def braid_matrix(p):
    """B_t = [[1,0,0,0],[0,1-t,t,0],[0,1,0,0],[0,0,0,-t]] on the two-qubit space."""
    t = p.t
    rows = [[1, 0, 0, 0], [0, 1 - t, t, 0], [0, 1, 0, 0], [0, 0, 0, -t]]
    return GradedOperator(_mat(rows, p.exact), 2, Parity.EVEN)


def check_yang_baxter(B):
    """Largest entry of (B x I)(I x B)(B x I) - (I x B)(B x I)(I x B)."""
    if B.dim != 4:
        raise ValueError("Yang-Baxter check needs a 4x4 operator")
    I = GradedOperator.identity(1, B.exact)
    B1, B2 = kron(B, I), kron(I, B)
    return residual((B1 @ B2 @ B1).mat, (B2 @ B1 @ B2).mat)


def intertwiner(p):
    """Diagonal W with W gamma = (-t) gamma W.

    Level (r, s): diag(exp(-i pi r/s), exp(i pi r/s)).  Generic t: principal
    square roots diag((-t)**-1/2, (-t)**1/2).
    """
    if isinstance(p, RootOfUnity):
        if p.exact:
            w0, w1 = cy.root_of_unity(-p.r, 2 * p.s), cy.root_of_unity(p.r, 2 * p.s)
        else:
            w1 = cmath.exp(1j * cmath.pi * p.r / p.s)
            w0 = 1 / w1
    elif p.exact:
        w1 = cy.exact_sqrt(p.minus_t)
        if w1 is None:
            raise ValueError("an exact intertwiner needs -t rational or a root of unity; use float mode")
        w0 = 1 / w1
    else:
        w1 = cmath.sqrt(p.minus_t)
        w0 = 1 / w1
    return GradedOperator(_mat([[w0, 0], [0, w1]], p.exact), 1, Parity.EVEN)


def check_exchange(W, gamma, p, tol=DEFAULT_TOL):
    """W gamma == (-t) gamma W."""
    lhs = W @ gamma
    rhs = (gamma @ W) * p.minus_t
    return lhs.equals(rhs, 0 if lhs.exact else tol)


def minimal_order(B, cap):
    """Least k in 1..cap with B**k = I, or None."""
    I = GradedOperator.identity(B.particles, B.exact)
    P = B
    for k in range(1, cap + 1):
        if P.equals(I):
            return k
        P = P @ B
    return None


def braid_order(s, r=1, cap=None):
    """(B**s == I, minimal order) for t = -exp(2 pi i r/s); cap defaults to 4s."""
    if s < 2:
        raise ValueError("s must be >= 2")
    B = braid_matrix(RootOfUnity(r, s))
    holds = B.power(s).equals(GradedOperator.identity(2))
    return holds, minimal_order(B, cap or 4 * s)


def braid_order_alternate(s, cap=None):
    """Same report under the alternative reading t = exp(-2 pi i/s)."""
    B = braid_matrix(Generic(cy.root_of_unity(-1, s)))
    holds = B.power(s).equals(GradedOperator.identity(2))
    return holds, minimal_order(B, cap or 4 * s)


def check_braided_product(p, tol=DEFAULT_TOL):
    """(W gamma) x gamma == B_t ((gamma W) x gamma)."""
    gamma = gl11_generators(p.exact)[2]
    W = intertwiner(p)
    lhs = kron(W @ gamma, gamma)
    rhs = braid_matrix(p) @ kron(gamma @ W, gamma)
    return lhs.equals(rhs, 0 if p.exact else tol)


def random_generic(rng, radius=2.0):
    """A float-mode generic parameter with |t| in (0.25, radius)."""
    while True:
        t = complex(rng.uniform(-radius, radius), rng.uniform(-radius, radius))
        if 0.25 < abs(t) < radius:
            return Generic(t)
