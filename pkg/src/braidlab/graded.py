"""Z2-graded operators and states on N-fold tensor powers of the qubit.

Basis convention (shared by every module): slot 1 is the leftmost tensor
factor and the basis index is the big-endian occupation word, so for N = 2 the
order is |00>, |01>, |10>, |11>.  The parity of a basis state is the number of
occupied slots mod 2.
"""

from dataclasses import dataclass
from enum import Enum
from functools import reduce

import numpy as np

from braidlab import cyclotomic as cy
from braidlab.cyclotomic import Cyclotomic, ModeError, DEFAULT_TOL


class Parity(Enum):
    EVEN = "even"
    ODD = "odd"
    MIXED = "nonhomogeneous"

    @property
    def homogeneous(self):
        return self is not Parity.MIXED

    def __add__(self, other):
        if not (self.homogeneous and other.homogeneous):
            return Parity.MIXED
        return Parity.ODD if (self is Parity.ODD) != (other is Parity.ODD) else Parity.EVEN


def basis_parities(dim):
    """Parity (0/1) of each big-endian occupation word of length log2(dim)."""
    idx = np.arange(dim)
    return np.array([bin(i).count("1") % 2 for i in idx], dtype=np.int8)


def _nonzero_mask(mat, tol):
    if isinstance(mat, Cyclotomic):
        return mat.num.any(axis=-1)
    return np.abs(mat) >= tol


def parity_from_entries(mat, tol=DEFAULT_TOL, row_parity=None, col_parity=None):
    """Classify an operator from its nonzero pattern (zero operator is even)."""
    mask = _nonzero_mask(mat, tol)
    rows, cols = np.nonzero(mask)
    if rows.size == 0:
        return Parity.EVEN
    rp = basis_parities(mask.shape[0]) if row_parity is None else np.asarray(row_parity)
    cp = basis_parities(mask.shape[1]) if col_parity is None else np.asarray(col_parity)
    flips = set((rp[rows] ^ cp[cols]).tolist())
    if len(flips) > 1:
        return Parity.MIXED
    return Parity.ODD if flips.pop() else Parity.EVEN


def _kron(a, b):
    if isinstance(a, Cyclotomic) != isinstance(b, Cyclotomic):
        raise ModeError("kron of exact and float operands")
    if isinstance(a, Cyclotomic):
        return cy.kron(a, b)
    return np.kron(a, b)


def _dagger(a):
    return a.dagger() if isinstance(a, Cyclotomic) else a.conj().T


def _check_same_mode(a, b):
    if isinstance(a, Cyclotomic) != isinstance(b, Cyclotomic):
        raise ModeError("operands are in different scalar modes")


def residual(a, b=None):
    """Largest entry modulus of ``a - b`` (or of ``a``); exact zero gives 0.0."""
    diff = a if b is None else a - b
    if isinstance(diff, Cyclotomic):
        return diff.max_abs()
    diff = np.asarray(diff)
    return float(np.max(np.abs(diff))) if diff.size else 0.0


def identity_matrix(n, exact=True):
    return Cyclotomic.eye(n) if exact else np.eye(n, dtype=complex)


@dataclass(frozen=True, eq=False)
class GradedOperator:
    """Square matrix on the 2**N dimensional N-particle space.

    ``mat`` is an exact :class:`Cyclotomic` array or a complex ndarray.  The
    parity is metadata; when omitted it is read off the entry pattern.
    """

    mat: object
    particles: int
    parity: Parity = None

    def __post_init__(self):
        if self.mat.shape != (2**self.particles, 2**self.particles):
            raise ValueError(f"expected a {2**self.particles}-dim square matrix, got {self.mat.shape}")
        if self.parity is None:
            object.__setattr__(self, "parity", parity_from_entries(self.mat))

    @property
    def dim(self):
        return self.mat.shape[0]

    @property
    def exact(self):
        return isinstance(self.mat, Cyclotomic)

    @classmethod
    def identity(cls, particles, exact=True):
        return cls(identity_matrix(2**particles, exact), particles, Parity.EVEN)

    @classmethod
    def zero(cls, particles, exact=True):
        n = 2**particles
        mat = Cyclotomic.zeros((n, n)) if exact else np.zeros((n, n), dtype=complex)
        return cls(mat, particles, Parity.EVEN)

    def entry_parity(self, tol=DEFAULT_TOL):
        return parity_from_entries(self.mat, tol)

    def __matmul__(self, other):
        if isinstance(other, StateVector):
            return apply(self, other)
        _check_same_mode(self.mat, other.mat)
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return GradedOperator(self.mat @ other.mat, self.particles, self.parity + other.parity)

    def _combine(self, other, sign):
        _check_same_mode(self.mat, other.mat)
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        mat = self.mat + other.mat if sign > 0 else self.mat - other.mat
        par = self.parity if self.parity == other.parity else None
        return GradedOperator(mat, self.particles, par)

    def __add__(self, other):
        return self._combine(other, +1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return GradedOperator(-self.mat, self.particles, self.parity)

    def __mul__(self, scalar):
        return GradedOperator(self.mat * scalar, self.particles, self.parity)

    __rmul__ = __mul__

    def dagger(self):
        return GradedOperator(_dagger(self.mat), self.particles, self.parity)

    def power(self, k):
        out = GradedOperator.identity(self.particles, self.exact)
        for _ in range(k):
            out = out @ self
        return out

    def is_zero(self, tol=DEFAULT_TOL):
        if self.exact:
            return self.mat.is_zero()
        return residual(self.mat) < tol

    def equals(self, other, tol=DEFAULT_TOL):
        return (self - other).is_zero(tol)

    def to_complex(self):
        return self.mat.to_complex() if self.exact else np.asarray(self.mat)


@dataclass(frozen=True, eq=False)
class StateVector:
    amplitudes: object
    particles: int

    def __post_init__(self):
        if self.amplitudes.shape != (2**self.particles,):
            raise ValueError(f"expected {2**self.particles} amplitudes, got {self.amplitudes.shape}")

    @classmethod
    def basis(cls, word, exact=True):
        """Basis state from an occupation word such as ``"10"``."""
        n = 2 ** len(word)
        idx = int(word, 2)
        if exact:
            num = np.zeros((n, 1), dtype=np.int64)
            num[idx, 0] = 1
            return cls(Cyclotomic(num), len(word))
        amp = np.zeros(n, dtype=complex)
        amp[idx] = 1
        return cls(amp, len(word))

    @property
    def exact(self):
        return isinstance(self.amplitudes, Cyclotomic)

    def __add__(self, other):
        _check_same_mode(self.amplitudes, other.amplitudes)
        return StateVector(self.amplitudes + other.amplitudes, self.particles)

    def __sub__(self, other):
        _check_same_mode(self.amplitudes, other.amplitudes)
        return StateVector(self.amplitudes - other.amplitudes, self.particles)

    def __mul__(self, scalar):
        return StateVector(self.amplitudes * scalar, self.particles)

    __rmul__ = __mul__

    def norm2(self):
        """Hermitian squared norm: an exact rational-or-cyclotomic real, or a float."""
        a = self.amplitudes
        if self.exact:
            return (a.conj().reshape(1, -1) @ a)[0]
        return float(np.vdot(a, a).real)

    def is_zero(self, tol=DEFAULT_TOL):
        if self.exact:
            return self.amplitudes.is_zero()
        return residual(self.amplitudes) < tol

    def support(self, tol=DEFAULT_TOL):
        """Indices of nonzero amplitudes."""
        a = self.amplitudes
        mask = a.num.any(axis=-1) if self.exact else np.abs(a) >= tol
        return np.nonzero(mask)[0]

    def equals(self, other, tol=DEFAULT_TOL):
        return (self - other).is_zero(tol)

    def to_complex(self):
        return self.amplitudes.to_complex() if self.exact else np.asarray(self.amplitudes)


# ------------------------------------------------------------------ gl(1|1)

def gl11_generators(exact=True):
    """alpha, beta, gamma, delta acting on the graded qubit |0>, |1>."""
    def op(rows, parity):
        arr = np.array(rows)
        mat = Cyclotomic.from_int_array(arr) if exact else arr.astype(complex)
        return GradedOperator(mat, 1, parity)

    alpha = op([[1, 0], [0, 0]], Parity.EVEN)
    beta = op([[0, 1], [0, 0]], Parity.ODD)
    gamma = op([[0, 0], [1, 0]], Parity.ODD)
    delta = op([[0, 0], [0, 1]], Parity.EVEN)
    return alpha, beta, gamma, delta


def bracket(X, Y, kind="commutator"):
    """XY - YX, XY + YX, or the graded choice (anticommutator iff both odd)."""
    if X.dim != Y.dim:
        raise ValueError("dimension mismatch")
    if kind == "graded":
        if not (X.parity.homogeneous and Y.parity.homogeneous):
            raise ValueError("graded bracket needs homogeneous operands")
        kind = "anticommutator" if (X.parity is Parity.ODD and Y.parity is Parity.ODD) else "commutator"
    XY, YX = X @ Y, Y @ X
    if kind == "commutator":
        return XY - YX
    if kind == "anticommutator":
        return XY + YX
    raise ValueError(f"unknown bracket kind {kind!r}")


def check_gl11(alpha, beta, gamma, delta, tol=DEFAULT_TOL):
    """Evaluate the defining gl(1|1) brackets; return the names of violated ones."""
    for g in (alpha, beta, gamma, delta):
        if g.dim != 2:
            raise ValueError("gl(1|1) generators are 2x2")
    zero = GradedOperator.zero(1, alpha.exact)
    relations = [
        ("[alpha,beta] = beta", bracket(alpha, beta), beta),
        ("[alpha,gamma] = -gamma", bracket(alpha, gamma), -gamma),
        ("[alpha,delta] = 0", bracket(alpha, delta), zero),
        ("[delta,beta] = -beta", bracket(delta, beta), -beta),
        ("[delta,gamma] = gamma", bracket(delta, gamma), gamma),
        ("{beta,beta} = 0", bracket(beta, beta, "anticommutator"), zero),
        ("{gamma,gamma} = 0", bracket(gamma, gamma, "anticommutator"), zero),
        ("{beta,gamma} = alpha + delta", bracket(beta, gamma, "anticommutator"), alpha + delta),
    ]
    return [name for name, lhs, rhs in relations if not lhs.equals(rhs, tol)]


def kron(A, B):
    """Ordinary Kronecker product; parities add, particles add."""
    return GradedOperator(_kron(A.mat, B.mat), A.particles + B.particles, A.parity + B.parity)


def kron_all(ops):
    return reduce(kron, ops)


def apply(A, v):
    _check_same_mode(A.mat, v.amplitudes)
    if A.dim != v.amplitudes.shape[0]:
        raise ValueError("dimension mismatch")
    return StateVector(A.mat @ v.amplitudes, v.particles)


def is_superselected(v, tol=DEFAULT_TOL):
    """True iff every nonzero amplitude sits on basis states of one parity."""
    par = basis_parities(2**v.particles)[v.support(tol)]
    return len(set(par.tolist())) <= 1
