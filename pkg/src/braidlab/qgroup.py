"""Lowest-weight representation of U_q(osp(1|2)), its coproduct tower, and the
projected-spectrum cross-check against the braided Fock ladder.

Representation on the unnormalized basis |n> = F_+^n |0>, n = 0..M:

    H |n>   = (lam + n/2) |n>
    F_+ |n> = |n+1>            (|M+1> truncated away)
    F_- |n> = c_n |n-1>,       c_0 = 0,  c_{n+1} = S_n - c_n,
    S_n     = sinh(eta (lam + n/2)) / sinh(2 eta)

The recursion is what {F_+, F_-}|n> = S_n |n> forces.  Coproducts are
evaluated in the graded tensor product: an operator string a_1 x ... x a_k acts
as  (a_1 P^{|a_2|+...+|a_k|}) x ... x a_k  with P = (-1)^n the slot parity.
"""

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

import numpy as np

from braidlab import cyclotomic as cy
from braidlab.braid import RootOfUnity
from braidlab.cyclotomic import Cyclotomic, DEFAULT_TOL
from braidlab.graded import residual


class SingularLevelError(ValueError):
    """sinh(2 eta) = 0: the deformed anticommutator is undefined."""


@dataclass(frozen=True)
class PhaseEta:
    """Exact purely imaginary deformation parameter eta = i*pi*ratio."""

    ratio: Fraction

    def __post_init__(self):
        object.__setattr__(self, "ratio", Fraction(self.ratio))

    def __complex__(self):
        return complex(0, float(self.ratio) * np.pi)


def eta_for_level(r, s):
    """eta = -2 pi i (2g - 1) with g = r/s, i.e. exp(-eta/2) = t."""
    return PhaseEta(-2 * (2 * Fraction(r, s) - 1))


def _exp(eta, y):
    """exp(eta * y) for rational y (exact) or any y (float)."""
    if isinstance(eta, PhaseEta):
        return cy.exp_i_pi(eta.ratio * y)
    return cmath.exp(eta * y)


def _sinh(eta, y):
    return (_exp(eta, y) - _exp(eta, -y)) * Fraction(1, 2)


def _is_zero(x):
    return x.is_zero() if isinstance(x, Cyclotomic) else abs(x) < 1e-14


def _diag(values, exact):
    n = len(values)
    rows = [[values[i] if i == j else 0 for j in range(n)] for i in range(n)]
    if exact:
        return Cyclotomic.from_entries(rows)
    return np.diag(np.array([complex(v) for v in values]))


def _from_rows(rows, exact):
    if exact:
        return Cyclotomic.from_entries(rows)
    return np.array([[complex(cy.approx(v)) for v in row] for row in rows], dtype=complex)


@dataclass
class QGroupRep:
    eta: object
    lam: object
    cutoff: int
    H: object
    Fp: object
    Fm: object
    K: object
    Kinv: object
    S: object
    coeffs: list

    @property
    def exact(self):
        return isinstance(self.eta, PhaseEta)

    @property
    def q(self):
        return _exp(self.eta, 1)

    @property
    def parities(self):
        return np.arange(self.cutoff + 1) % 2

    def generator(self, name):
        if name == "1":
            n = self.cutoff + 1
            return Cyclotomic.eye(n) if self.exact else np.eye(n, dtype=complex)
        return getattr(self, name)


def build_rep(eta, lam=0, cutoff=2):
    """Truncated lowest-weight module with basis |0>..|cutoff>."""
    exact = isinstance(eta, PhaseEta)
    if cutoff < 2:
        raise ValueError("cutoff must be >= 2")
    if (exact and eta.ratio == 0) or (not exact and eta == 0):
        raise SingularLevelError("eta = 0: singular level")
    if exact:
        lam = Fraction(lam)
    else:
        eta, lam = complex(eta), complex(lam)
    sinh2 = _sinh(eta, 2)
    if _is_zero(sinh2):
        raise SingularLevelError(f"sinh(2 eta) = 0 for eta = {eta}; the anticommutator is undefined")
    inv = 1 / sinh2
    M = cutoff
    weights = [lam + Fraction(n, 2) if exact else lam + n / 2 for n in range(M + 1)]
    S = [_sinh(eta, w) * inv for w in weights]
    c = [0 * inv]
    for n in range(M):
        c.append(S[n] - c[n])
    Fp = [[1 if i == j + 1 else 0 for j in range(M + 1)] for i in range(M + 1)]
    Fm = [[c[j] if i == j - 1 else 0 for j in range(M + 1)] for i in range(M + 1)]
    return QGroupRep(
        eta=eta,
        lam=lam,
        cutoff=M,
        H=_diag(weights, exact),
        Fp=_from_rows(Fp, exact),
        Fm=_from_rows(Fm, exact),
        K=_diag([_exp(eta, w / 2) for w in weights], exact),
        Kinv=_diag([_exp(eta, -w / 2) for w in weights], exact),
        S=_diag(S, exact),
        coeffs=c,
    )


def relation_residuals(rep):
    """Per-relation residuals on the interior columns n <= M-1."""
    H, Fp, Fm = rep.H, rep.Fp, rep.Fm
    half = Fraction(1, 2) if rep.exact else 0.5
    rels = {
        "[H,F+] - F+/2": H @ Fp - Fp @ H - Fp * half,
        "[H,F-] + F-/2": H @ Fm - Fm @ H + Fm * half,
        "{F+,F-} - sinh(eta H)/sinh(2 eta)": Fp @ Fm + Fm @ Fp - rep.S,
    }
    M = rep.cutoff
    return {k: residual(v[:, :M]) for k, v in rels.items()}


def check_relations(rep):
    return max(relation_residuals(rep).values())


# ------------------------------------------------------------- coproducts

_PARITY = {"1": 0, "H": 0, "K": 0, "Kinv": 0, "Fp": 1, "Fm": 1}

_DELTA = {
    "1": [("1", "1")],
    "H": [("H", "1"), ("1", "H")],
    "Fp": [("Fp", "K"), ("Kinv", "Fp")],
    "Fm": [("Fm", "K"), ("Kinv", "Fm")],
    "K": [("K", "K")],
    "Kinv": [("Kinv", "Kinv")],
}


def apply_delta(terms, slot):
    """Apply the coproduct to one slot of a sum of operator strings."""
    out = []
    for term in terms:
        for pair in _DELTA[term[slot]]:
            out.append(term[:slot] + pair + term[slot + 1:])
    return out


def coproduct_terms(name, slots, side="left"):
    """Operator strings of Delta^(slots-1)(name); ``side`` picks (Delta x id)
    or (id x Delta) at every step."""
    terms = [(name,)]
    for _ in range(slots - 1):
        terms = apply_delta(terms, 0 if side == "left" else len(terms[0]) - 1)
    return terms


def _signed_factors(rep, term, graded=True):
    """Per-slot matrices of one operator string, Koszul signs included unless
    ``graded`` is False (plain Kronecker product)."""
    sign = np.where(rep.parities % 2 == 1, -1, 1)
    if rep.exact:
        P = Cyclotomic.from_int_array(np.diag(sign))
    else:
        P = np.diag(sign).astype(complex)
    mats = []
    for i, name in enumerate(term):
        m = rep.generator(name)
        if graded and sum(_PARITY[b] for b in term[i + 1:]) % 2:
            m = m @ P
        mats.append(m)
    return mats


def _kron(a, b):
    return cy.kron(a, b) if isinstance(a, Cyclotomic) else np.kron(a, b)


def evaluate_terms(rep, terms, graded=True):
    """Dense matrix of a sum of operator strings on the full tensor space."""
    total = None
    for term in terms:
        m = reduce(_kron, _signed_factors(rep, term, graded))
        total = m if total is None else total + m
    return total


def coproduct_raise(rep, slots, graded=True):
    """Evaluated Delta^(slots-1)(F_+) on (cutoff+1)**slots dimensions."""
    if slots < 2:
        raise ValueError("need at least two slots")
    return evaluate_terms(rep, coproduct_terms("Fp", slots), graded)


def coproduct_hamiltonian(rep, slots):
    return evaluate_terms(rep, coproduct_terms("H", slots))


def coassociativity_residual(rep, name="Fp"):
    """(Delta x id)Delta vs (id x Delta)Delta on three slots."""
    left = evaluate_terms(rep, coproduct_terms(name, 3, "left"))
    right = evaluate_terms(rep, coproduct_terms(name, 3, "right"))
    return residual(left, right)


def _apply_axis(op, state, axis):
    if isinstance(state, Cyclotomic):
        moved = np.moveaxis(state.num, axis, 0)
        shp = moved.shape
        flat = Cyclotomic(moved.reshape(shp[0], -1, shp[-1]), state.den, state.order)
        res = op @ flat
        num = np.moveaxis(res.num.reshape(shp[:-1] + (res.num.shape[-1],)), 0, axis)
        return Cyclotomic(np.ascontiguousarray(num), res.den, res.order)
    return np.moveaxis(np.tensordot(op, state, axes=([1], [axis])), 0, axis)


def apply_terms(rep, terms, state, graded=True):
    """Act with a sum of operator strings on a tensor of shape (cutoff+1,)*slots
    without forming the dense operator."""
    total = None
    for term in terms:
        v = state
        for axis, m in enumerate(_signed_factors(rep, term, graded)):
            if term[axis] != "1":
                v = _apply_axis(m, v, axis)
        total = v if total is None else total + v
    return total


# --------------------------------------------------------- projected tower

@dataclass
class TowerEntry:
    n: int
    norm2: object
    vanished: bool
    energy: int = None


@dataclass
class ProjectedTower:
    level: object
    slots: int
    cutoff: int
    entries: list
    states: list = field(default_factory=list, repr=False)

    @property
    def energies(self):
        return sorted(e.energy for e in self.entries if not e.vanished and e.energy is not None)

    @property
    def vanishing_index(self):
        return next((e.n for e in self.entries if e.vanished), None)


def identification_residual(p):
    """|exp(-eta/2) - t| for eta = eta_for_level(r, s); exact zero expected."""
    eta = eta_for_level(p.r, p.s)
    if not p.exact:
        return abs(cmath.exp(-complex(eta) / 2) - p.t)
    return (_exp(eta, Fraction(-1, 2)) - p.t).max_abs()


def _vacuum_tensor(slots, n, exact):
    if exact:
        num = np.zeros((n,) * slots + (1,), dtype=np.int64)
        num[(0,) * slots] = 1
        return Cyclotomic(num)
    v = np.zeros((n,) * slots, dtype=complex)
    v[(0,) * slots] = 1
    return v


def _normalized_hamiltonian_2slot(rep, slots):
    # 2 * Kronecker sum of H restricted to span{|0>, |1>}
    h1 = rep.H[:2, :2] * 2
    eye = Cyclotomic.eye(2) if rep.exact else np.eye(2, dtype=complex)
    total = None
    for k in range(slots):
        m = reduce(_kron, [eye] * k + [h1] + [eye] * (slots - k - 1))
        total = m if total is None else total + m
    return total


def projected_tower(p, N, n_max, tol=DEFAULT_TOL, graded=True):
    """(P x ... x P) Delta^(N)(F_+^n) |0...0> on N+1 slots for n = 0..n_max.

    ``p`` is a root-of-unity level; lam = 0, per-slot cutoff M = n_max.
    """
    exact = p.exact
    eta = eta_for_level(p.r, p.s)
    if not exact:
        eta = complex(eta)
    rep = build_rep(eta, 0, max(n_max, 2))
    slots = N + 1
    terms = coproduct_terms("Fp", slots)
    Hn = _normalized_hamiltonian_2slot(rep, slots)
    state = _vacuum_tensor(slots, rep.cutoff + 1, exact)
    entries, states = [], []
    for n in range(n_max + 1):
        vec = state[(slice(0, 2),) * slots].reshape(2**slots)
        if exact:
            gone = vec.is_zero()
            norm2 = (vec.conj().reshape(1, -1) @ vec)[0]
        else:
            gone = residual(vec) < tol
            norm2 = float(np.vdot(vec, vec).real)
        energy = None
        if not gone:
            hv = Hn @ vec
            ok = (hv - vec * n).is_zero() if exact else residual(hv, vec * n) < tol
            energy = n if ok else None
        entries.append(TowerEntry(n, norm2, gone, energy))
        states.append(vec)
        state = apply_terms(rep, terms, state, graded)
    return ProjectedTower(p, slots, rep.cutoff, entries, states)


def match_spectrum(p, particles, tol=DEFAULT_TOL):
    """Compare projected-tower energies on ``particles`` slots with the braided
    Fock spectrum of the same level.  Returns (match, report dict)."""
    from braidlab.fock import spectrum

    tower = projected_tower(p, particles - 1, particles + 1, tol)
    fock = spectrum(p, particles, tol)
    ok = tower.energies == fock.energies
    return ok, {
        "level": p.describe(),
        "particles": particles,
        "tower_energies": tower.energies,
        "fock_energies": fock.energies,
        "vanishing_index": tower.vanishing_index,
    }
