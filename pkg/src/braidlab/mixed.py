"""Mixed brackets (X, Y)_theta = i sin(theta) [X, Y] + cos(theta) {X, Y},
closing angles, and the metaabelian checks on the N-particle generator family.

Angles are stored as Fractions q meaning theta = q*pi, wrapped into [-1, 1).
Since (X, Y)_theta = e^{i theta} XY + e^{-i theta} YX, a pair closes (to zero
or to a multiple of the identity) iff u XY + YX is central for u = e^{2 i theta}.
"""

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import floor

import numpy as np

from braidlab import cyclotomic as cy
from braidlab.cyclotomic import Cyclotomic, DEFAULT_TOL
from braidlab.fock import slot_creation
from braidlab.graded import GradedOperator, Parity, bracket, residual

CENTRAL_ANGLE = Fraction(1, 2)

# commonly quoted witness for the failure of ordinary metaabelianess; on the
# explicit matrices it evaluates to zero, so it is reported, never asserted
WITNESS_TRIPLE = ("+1", "+2", "-2")


def wrap(q):
    """Reduce a multiple of pi into [-1, 1)."""
    q = Fraction(q)
    return q - 2 * floor((q + 1) / 2)


def _phase(q, exact):
    return cy.exp_i_pi(q) if exact else cmath.exp(1j * np.pi * float(q))


def mixed_bracket(X, Y, theta):
    """(X, Y)_theta with theta = q*pi given as the rational ``q``."""
    if X.dim != Y.dim:
        raise ValueError("dimension mismatch")
    z = _phase(theta, X.exact)
    zc = z.conj() if X.exact else z.conjugate()
    mat = (X @ Y).mat * z + (Y @ X).mat * zc
    return GradedOperator(mat, X.particles, X.parity + Y.parity)


def generator_family(p, N):
    """Ordered dict of G_0, G_{+k}, G_{-k}, k = 1..N, keyed "0", "+k", "-k"."""
    if N < 1:
        raise ValueError("need at least one particle")
    gens = {"0": GradedOperator.identity(N, p.exact)}
    ups = [slot_creation(p, N, k) for k in range(1, N + 1)]
    for k, up in enumerate(ups, 1):
        gens[f"+{k}"] = up
    for k, up in enumerate(ups, 1):
        gens[f"-{k}"] = up.dagger()
    return gens


@dataclass
class Closure:
    angle: Fraction
    kind: str  # "zero" or "central"
    coefficient: object = 0

    @property
    def approx_angle(self):
        return float(self.angle) * np.pi


def _central_part(mat):
    # mat - mat[0,0] * I; zero iff mat is a multiple of the identity
    n = mat.shape[0]
    if isinstance(mat, Cyclotomic):
        return mat - Cyclotomic.eye(n) * mat[0, 0]
    return mat - mat[0, 0] * np.eye(n)


def _classify(X, Y, q, tol):
    br = mixed_bracket(X, Y, q).mat
    c = br[0, 0]
    central = _central_part(br)
    if X.exact:
        if not central.is_zero():
            return None
        return Closure(q, "zero" if c.is_zero() else "central", c)
    if residual(central) >= tol:
        return None
    c = complex(c)
    return Closure(q, "zero" if abs(c) < tol else "central", c)


def _solve_phase(A, B, exact, tol):
    """u with u A + B == 0, or "any" if A == B == 0, or None."""
    if exact:
        maskA = A.num.any(axis=-1)
        if not maskA.any():
            return "any" if B.is_zero() else None
        k = tuple(np.argwhere(maskA)[0])
        u = -B[k] / A[k]
        if not (A * u + B).is_zero():
            return None
        found = cy.as_root_of_unity(u)
        return None if found is None else Fraction(2 * found[0], found[1])
    if residual(A) < tol:
        return "any" if residual(B) < tol else None
    k = np.unravel_index(np.argmax(np.abs(A)), A.shape)
    u = -B[k] / A[k]
    if residual(A * u + B) >= tol:
        return None
    return cy.phase_ratio(u, tol)


def solve_angle(X, Y, tol=DEFAULT_TOL):
    """Angle making (X, Y)_theta zero or central, with its classification.

    Of the two solutions theta and theta - pi, a zero closure takes the one
    with cos(theta) < 0 and a central closure the one with cos(theta) > 0; if
    every angle closes, theta = 0.  Returns None when no angle closes the pair.
    """
    A = _central_part((X @ Y).mat)
    B = _central_part((Y @ X).mat)
    two_theta = _solve_phase(A, B, X.exact, tol)
    if two_theta is None:
        return None
    if two_theta == "any":
        return _classify(X, Y, Fraction(0), tol)
    q = wrap(Fraction(two_theta) / 2)
    first = _classify(X, Y, q, tol)
    if first is None:
        return None
    want_negative_cos = first.kind == "zero"
    if abs(q) == CENTRAL_ANGLE:
        return _classify(X, Y, CENTRAL_ANGLE, tol)
    if (abs(q) > CENTRAL_ANGLE) == want_negative_cos:
        return first
    return _classify(X, Y, wrap(q + 1), tol)


@dataclass
class MixedBracketTable:
    level: object
    particles: int
    names: list
    entries: dict = field(default_factory=dict)

    def unresolved(self):
        return [pair for pair, c in self.entries.items() if c is None]

    def angle(self, I, J):
        c = self.entries[(I, J)]
        return None if c is None else c.angle


def build_table(p, N, tol=DEFAULT_TOL, gens=None):
    gens = gens or generator_family(p, N)
    table = MixedBracketTable(p, N, list(gens))
    for I, J in product(gens, repeat=2):
        if I == J == "0":
            # its own swap partner, so only 0 or -pi keep the swap symmetry
            table.entries[(I, J)] = _classify(gens[I], gens[J], Fraction(0), tol)
        elif "0" in (I, J):
            # central-pair convention: pure commutator, which vanishes;
            # the sign keeps theta_JI = -theta_IJ
            q = CENTRAL_ANGLE if J == "0" else -CENTRAL_ANGLE
            table.entries[(I, J)] = _classify(gens[I], gens[J], q, tol)
        else:
            table.entries[(I, J)] = solve_angle(gens[I], gens[J], tol)
    return table


def _is_zero_op(op, tol):
    return op.is_zero() if op.exact else op.is_zero(tol)


def cross_angle(p):
    """Closing angle of (G_{+1}, G_{+2}) predicted for level r/s: (s+2r)/(2s)."""
    return wrap(Fraction(p.s + 2 * p.r, 2 * p.s))


def verify_heisenberg(p, N, tol=DEFAULT_TOL):
    """Build the closure table and list violated Heisenberg-Lie relations."""
    if N < 2:
        raise ValueError("need N >= 2")
    gens = generator_family(p, N)
    table = build_table(p, N, tol, gens)
    G0 = gens["0"]
    violations = [f"({I},{J}) unresolved" for I, J in table.unresolved()]
    for k in range(1, N + 1):
        up, down = gens[f"+{k}"], gens[f"-{k}"]
        for X, Y, a, b in ((up, down, f"+{k}", f"-{k}"), (down, up, f"-{k}", f"+{k}")):
            if not mixed_bracket(X, Y, 0).equals(G0, 0 if p.exact else tol):
                violations.append(f"({a},{b})_0 != G_0")
        for X, a in ((up, f"+{k}"), (down, f"-{k}")):
            if not _is_zero_op(mixed_bracket(X, X, 0), tol):
                violations.append(f"({a},{a})_0 != 0")
    for (I, J), c in table.entries.items():
        if c is None or "0" in (I, J) or I[1:] == J[1:]:
            continue
        if c.kind != "zero":
            violations.append(f"({I},{J}) closes to a nonzero central element")
    if N == 2 and p.s is not None:
        q = cross_angle(p)
        allowed = {q, wrap(-q)}
        for (I, J), c in table.entries.items():
            if c is not None and "0" not in (I, J) and I[1:] != J[1:] and c.angle not in allowed:
                violations.append(f"({I},{J}) angle {c.angle} not in {sorted(allowed)}")
    return table, violations


def check_meta_abelian_mixed(p, N, tol=DEFAULT_TOL, table=None):
    """(G_I, (G_J, G_K)) == 0 for all ordered triples; returns (ok, violations).

    The inner bracket uses the table angle.  A central inner result is bracketed
    with the central-pair angle; anything else gets its own solved angle.
    """
    gens = generator_family(p, N)
    table = table or build_table(p, N, tol, gens)
    inner = {}
    for (J, K), c in table.entries.items():
        inner[(J, K)] = None if c is None else mixed_bracket(gens[J], gens[K], c.angle)
    bad = []
    for I, (J, K) in product(gens, inner):
        Z = inner[(J, K)]
        if Z is None:
            bad.append((I, J, K))
            continue
        central = _central_part(Z.mat)
        if (central.is_zero() if p.exact else residual(central) < tol):
            outer = mixed_bracket(gens[I], Z, CENTRAL_ANGLE)
        else:
            c = solve_angle(gens[I], Z, tol)
            if c is None:
                bad.append((I, J, K))
                continue
            outer = mixed_bracket(gens[I], Z, c.angle)
        if not _is_zero_op(outer, tol):
            bad.append((I, J, K))
    return not bad, bad


def check_meta_abelian_ordinary(p, N, tol=DEFAULT_TOL):
    """Every triple with [G_I, [G_J, G_K]] != 0."""
    gens = generator_family(p, N)
    inner = {(J, K): bracket(gens[J], gens[K]) for J, K in product(gens, repeat=2)}
    return [
        (I, J, K)
        for I, (J, K) in product(gens, inner)
        if not _is_zero_op(bracket(gens[I], inner[(J, K)]), tol)
    ]


def witness_triple_value(p, N=2):
    """[G_I, [G_J, G_K]] for WITNESS_TRIPLE, returned as an operator."""
    gens = generator_family(p, N)
    I, J, K = WITNESS_TRIPLE
    return bracket(gens[I], bracket(gens[J], gens[K]))
