"""N-particle creation operators, Hamiltonian, coproduct ladder and spectrum.

The braided coproduct of gamma is evaluated through the intertwiner: the
k-th slot operator is W x ... x W x gamma x I x ... x I (k-1 copies of W).
"""

from dataclasses import dataclass, field
from math import gcd

from braidlab import cyclotomic as cy
from braidlab.braid import RootOfUnity, intertwiner
from braidlab.cyclotomic import DEFAULT_TOL
from braidlab.graded import (
    GradedOperator,
    Parity,
    StateVector,
    basis_parities,
    gl11_generators,
    is_superselected,
    kron_all,
)


def vacuum(N, exact=True):
    if N < 1:
        raise ValueError("need at least one particle")
    return StateVector.basis("0" * N, exact)


def slot_creation(p, N, k):
    """Creation operator on slot k (1-based) with W on the k-1 slots to its left."""
    if not 1 <= k <= N:
        raise ValueError(f"slot {k} outside 1..{N}")
    gamma = gl11_generators(p.exact)[2]
    W = intertwiner(p)
    I = GradedOperator.identity(1, p.exact)
    return kron_all([W] * (k - 1) + [gamma] + [I] * (N - k))


def creation_total(p, N):
    if N < 1:
        raise ValueError("need at least one particle")
    ops = [slot_creation(p, N, k) for k in range(1, N + 1)]
    total = ops[0]
    for op in ops[1:]:
        total = total + op
    return GradedOperator(total.mat, N, Parity.ODD)


def annihilation_total(p, N):
    return creation_total(p, N).dagger()


def hamiltonian(N, exact=True):
    """Total occupation number: diag(popcount(word))."""
    if N < 1:
        raise ValueError("need at least one particle")
    delta = gl11_generators(exact)[3]
    I = GradedOperator.identity(1, exact)
    total = None
    for k in range(N):
        term = kron_all([I] * k + [delta] + [I] * (N - k - 1))
        total = term if total is None else total + term
    return GradedOperator(total.mat, N, Parity.EVEN)


def _energy(H, v, tol):
    """Eigenvalue of the diagonal H on v, or None if v is not an eigenvector."""
    support = v.support(tol)
    counts = {bin(int(i)).count("1") for i in support}
    if len(counts) != 1:
        return None
    e = counts.pop()
    ok = (H @ v).equals(v * e, 0 if v.exact else tol)
    return e if ok else None


@dataclass
class LadderEntry:
    n: int
    norm2: object
    energy: int = None
    vanished: bool = False
    superselected: bool = True


@dataclass
class LadderReport:
    level: object
    particles: int
    entries: list
    truncation_index: int = None
    states: list = field(default_factory=list, repr=False)

    @property
    def energies(self):
        return sorted(e.energy for e in self.entries if not e.vanished and e.energy is not None)


@dataclass
class SpectrumReport:
    level: object
    particles: int
    energies: list
    plateau: int = None


def ladder(p, N, n_max=None, tol=DEFAULT_TOL):
    """v_n = Q_N**n |0>_N for n = 0..n_max (unnormalized); n_max defaults to N+1."""
    if n_max is None:
        n_max = N + 1
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    Q = creation_total(p, N)
    H = hamiltonian(N, p.exact)
    v = vacuum(N, p.exact)
    entries, states = [], []
    trunc = None
    for n in range(n_max + 1):
        gone = v.is_zero(tol)
        if gone and trunc is None:
            trunc = n
        entries.append(LadderEntry(
            n=n,
            norm2=v.norm2(),
            energy=None if gone else _energy(H, v, tol),
            vanished=gone,
            superselected=is_superselected(v, tol),
        ))
        states.append(v)
        v = Q @ v
    return LadderReport(p, N, entries, trunc, states)


def spectrum(p, N, tol=DEFAULT_TOL):
    rep = ladder(p, N, N + 1, tol)
    energies = rep.energies
    plateau = None
    if rep.truncation_index is not None and rep.truncation_index <= N:
        plateau = rep.truncation_index - 1
    return SpectrumReport(p, N, energies, plateau)


def nilpotency_index(p, N, cap=None):
    """Least m with Q_N**m = 0 (None if not reached by ``cap``, default N+2)."""
    Q = creation_total(p, N)
    P = Q
    for m in range(1, (cap or N + 2) + 1):
        if P.is_zero():
            return m
        P = P @ Q
    return None


def parity_of_state(v, tol=DEFAULT_TOL):
    """0/1 parity of a superselected nonzero state."""
    par = set(basis_parities(2**v.particles)[v.support(tol)].tolist())
    return par.pop() if len(par) == 1 else None


def exchange_order(p, tol=DEFAULT_TOL):
    """Multiplicative order of -t, or None if -t is not a root of unity."""
    if isinstance(p, RootOfUnity):
        return p.s
    m = p.minus_t
    if p.exact:
        found = cy.as_root_of_unity(m)
        return None if found is None else found[1]
    ratio = cy.phase_ratio(m, tol)
    if ratio is None:
        return None
    # exp(i pi a/b) has order 2b / gcd(a, 2b)
    return 2 * ratio.denominator // gcd(ratio.numerator, 2 * ratio.denominator)


def predicted_energies(p, N, tol=DEFAULT_TOL):
    """Expected ladder energies: 0..min(N, m-1) when -t has order m >= 2,
    else 0..N."""
    m = exchange_order(p, tol)
    top = N if m is None or m < 2 else min(N, m - 1)
    return list(range(top + 1))
