"""Exact arithmetic in cyclotomic fields.

An element of Q(zeta_m) is stored in the power basis ``1, z, ..., z**(d-1)``
with ``d = phi(m)``, reduced modulo the cyclotomic polynomial ``Phi_m``.  The
reduced form is canonical, so equality and zero tests are plain coefficient
comparisons.  Arrays of such elements share one order ``m`` and one positive
integer denominator; a 0-d array is a scalar.

Float-mode values are ordinary python ``complex`` numbers and numpy complex
arrays.  Mixing the two modes raises :class:`ModeError`; nothing is promoted
silently.
"""

import cmath
import numbers
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm

import numpy as np

from braidlab import kernels

# int64 headroom; beyond this the python-int (object) path is used
INT_LIMIT = 2**62

DEFAULT_TOL = 1e-9


class ModeError(TypeError):
    """Exact and floating values were combined without explicit coercion."""


def _polydiv_exact(num, den):
    num = list(num)
    n_out = len(num) - len(den) + 1
    out = [0] * n_out
    for i in range(n_out - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, dc in enumerate(den):
                num[i + j] -= c * dc
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m):
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError(f"cyclotomic order must be >= 1, got {m}")
    poly = [-1] + [0] * (m - 1) + [1]
    for k in range(1, m):
        if m % k == 0:
            poly = _polydiv_exact(poly, cyclotomic_poly(k))
    return tuple(poly)


def field_degree(m):
    return len(cyclotomic_poly(m)) - 1


@lru_cache(maxsize=None)
def _tables(m):
    # rows: x**j mod Phi_m for j < max(m, 2d-1)
    phi = cyclotomic_poly(m)
    d = len(phi) - 1
    rows = []
    cur = [1] + [0] * (d - 1)
    for _ in range(max(m, 2 * d - 1)):
        rows.append(cur)
        top = cur[-1]
        nxt = [0] + cur[:-1]
        if top:
            nxt = [nxt[i] - top * phi[i] for i in range(d)]
        cur = nxt
    obj = np.empty((len(rows), d), dtype=object)
    for j, r in enumerate(rows):
        obj[j, :] = r
    colsum = max(sum(abs(r[e]) for r in rows) for e in range(d))
    return obj, obj.astype(np.int64), int(colsum)


def _maxabs(num):
    if num.size == 0:
        return 0
    if num.dtype == object:
        return max(abs(v) for v in num.flat)
    return int(np.abs(num).max())


def _cast(arr, bound):
    if bound < INT_LIMIT:
        if arr.dtype == object:
            return arr.astype(np.int64)
        return arr
    return arr.astype(object)


def _reduce_table(m, bound):
    obj, i64, _ = _tables(m)
    return i64 if bound < INT_LIMIT else obj


def _exponent_map(num, m, exponents, target_m):
    """Send coefficient k (of z_m**k) to z_target**exponents[k], reduced."""
    obj, _, colsum = _tables(target_m)
    T = obj[[e % target_m for e in exponents]]
    bound = _maxabs(num) * num.shape[-1] * colsum
    T = T.astype(np.int64) if bound < INT_LIMIT else T
    return _cast(num, bound) @ T


class Cyclotomic:
    """Array of elements of Q(zeta_order); the trailing axis of ``num`` holds
    power-basis coefficients and ``den`` is a common positive denominator."""

    __slots__ = ("num", "den", "order")
    __array_ufunc__ = None

    def __init__(self, num, den=1, order=1):
        num = np.asarray(num)
        if num.dtype.kind not in "iuO":
            raise ModeError("exact coefficients must be integers")
        d = field_degree(order)
        if num.shape[-1:] != (d,):
            raise ValueError(f"trailing axis must have length phi({order}) = {d}")
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        if num.dtype != object:
            num = num.astype(np.int64)
        if not num.any():
            num = np.zeros(num.shape, dtype=np.int64)
            den = 1
        else:
            if num.dtype == object:
                g = reduce(gcd, (int(v) for v in num.flat), den)
            else:
                g = gcd(int(np.gcd.reduce(num, axis=None)), den)
            if g > 1:
                num = num // g
                den //= g
            if num.dtype == object and _maxabs(num) < INT_LIMIT:
                num = num.astype(np.int64)
        self.num = num
        self.den = den
        self.order = int(order)

    # ------------------------------------------------------------------ build
    @classmethod
    def zeros(cls, shape, order=1):
        if isinstance(shape, int):
            shape = (shape,)
        return cls(np.zeros(tuple(shape) + (field_degree(order),), dtype=np.int64), 1, order)

    @classmethod
    def eye(cls, n, order=1):
        num = np.zeros((n, n, field_degree(order)), dtype=np.int64)
        num[np.arange(n), np.arange(n), 0] = 1
        return cls(num, 1, order)

    @classmethod
    def from_rational(cls, value, shape=()):
        value = _as_fraction(value)
        num = np.zeros(tuple(shape) + (1,), dtype=object)
        num[...] = value.numerator
        return cls(num, value.denominator, 1)

    @classmethod
    def from_int_array(cls, arr, order=1):
        arr = np.asarray(arr)
        if arr.dtype.kind not in "iuO":
            raise ModeError("from_int_array needs an integer array")
        num = np.zeros(arr.shape + (field_degree(order),), dtype=arr.dtype if arr.dtype == object else np.int64)
        num[..., 0] = arr
        return cls(num, 1, order)

    @classmethod
    def from_entries(cls, entries):
        """Build an array from a (nested) list of exact scalars, ints or Fractions."""
        shape, items = _flatten(entries)
        items = [as_exact(v) for v in items]
        if not items:
            return cls.zeros(shape)
        M = reduce(lcm, (x.order for x in items), 1)
        L = reduce(lcm, (x.den for x in items), 1)
        num = np.zeros((len(items), field_degree(M)), dtype=object)
        for i, x in enumerate(items):
            e = x.embed(M)
            num[i] = e.num.astype(object) * (L // e.den)
        return cls(num.reshape(shape + (num.shape[-1],)), L, M)

    # ------------------------------------------------------------- structure
    @property
    def shape(self):
        return self.num.shape[:-1]

    @property
    def ndim(self):
        return self.num.ndim - 1

    @property
    def T(self):
        if self.ndim != 2:
            raise ValueError("transpose needs a 2-d array")
        return Cyclotomic(self.num.transpose(1, 0, 2), self.den, self.order)

    def reshape(self, *shape):
        if len(shape) == 1 and isinstance(shape[0], tuple):
            shape = shape[0]
        return Cyclotomic(self.num.reshape(tuple(shape) + (self.num.shape[-1],)), self.den, self.order)

    def __getitem__(self, idx):
        if not isinstance(idx, tuple):
            idx = (idx,)
        if Ellipsis in idx:
            raise IndexError("ellipsis indexing is not supported")
        return Cyclotomic(np.array(self.num[idx + (slice(None),)]), self.den, self.order)

    def __len__(self):
        if self.ndim == 0:
            raise TypeError("len() of a scalar")
        return self.shape[0]

    def embed(self, M):
        """Re-express in Q(zeta_M); requires ``order | M``."""
        if M == self.order:
            return self
        if M % self.order:
            raise ValueError(f"cannot embed order {self.order} into {M}")
        f = M // self.order
        d = self.num.shape[-1]
        return Cyclotomic(_exponent_map(self.num, self.order, [k * f for k in range(d)], M), self.den, M)

    def galois(self, j):
        """Apply the automorphism zeta -> zeta**j (j coprime to the order)."""
        m = self.order
        if gcd(j, m) != 1:
            raise ValueError(f"{j} is not a unit mod {m}")
        d = self.num.shape[-1]
        return Cyclotomic(_exponent_map(self.num, m, [k * j for k in range(d)], m), self.den, m)

    def conj(self):
        return self.galois(self.order - 1 if self.order > 1 else 1)

    def dagger(self):
        return self.conj().T

    # ------------------------------------------------------------ arithmetic
    def _aligned(self, other):
        other = as_exact(other)
        M = lcm(self.order, other.order)
        a, b = self.embed(M), other.embed(M)
        L = lcm(a.den, b.den)
        fa, fb = L // a.den, L // b.den
        bound = _maxabs(a.num) * fa + _maxabs(b.num) * fb
        na = _cast(a.num, bound) * fa
        nb = _cast(b.num, bound) * fb
        return na, nb, L, M

    def __add__(self, other):
        na, nb, L, M = self._aligned(other)
        return Cyclotomic(na + nb, L, M)

    __radd__ = __add__

    def __sub__(self, other):
        na, nb, L, M = self._aligned(other)
        return Cyclotomic(na - nb, L, M)

    def __rsub__(self, other):
        return as_exact(other) - self

    def __neg__(self):
        return Cyclotomic(-self.num, self.den, self.order)

    def __pos__(self):
        return self

    def __mul__(self, other):
        other = as_exact(other)
        M = lcm(self.order, other.order)
        a, b = self.embed(M), other.embed(M)
        return Cyclotomic(_polymul(a.num, b.num, M), a.den * b.den, M)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_exact(other)
        if other.ndim:
            raise ValueError("division is only defined by a scalar")
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_exact(other) / self

    def __pow__(self, k):
        if self.ndim:
            raise ValueError("elementwise powers are not supported; use matrix_power")
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyclotomic.from_rational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __matmul__(self, other):
        if not isinstance(other, Cyclotomic):
            raise ModeError("exact matrix product needs exact operands")
        M = lcm(self.order, other.order)
        a, b = self.embed(M), other.embed(M)
        vec = b.ndim == 1
        A = a.num
        B = b.num[:, None, :] if vec else b.num
        if A.ndim != 3 or B.ndim != 3 or A.shape[1] != B.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        d = A.shape[-1]
        _, _, colsum = _tables(M)
        bound = A.shape[1] * d * _maxabs(A) * _maxabs(B) * colsum
        A, B = _cast(A, bound), _cast(B, bound)
        red = _reduce_table(M, bound)
        C = kernels.cyclo_matmul(np.ascontiguousarray(A), np.ascontiguousarray(B), red)
        if vec:
            C = C[:, 0, :]
        return Cyclotomic(C, a.den * b.den, M)

    def __rmatmul__(self, other):
        raise ModeError("exact matrix product needs exact operands")

    def inverse(self):
        if self.ndim:
            raise ValueError("inverse is defined for scalars only")
        if self.is_zero():
            raise ZeroDivisionError("division by exact zero")
        m = self.order
        rest = Cyclotomic.from_rational(1)
        for j in range(2, m):
            if gcd(j, m) == 1:
                rest = rest * self.galois(j)
        norm = self * rest
        if norm.num[1:].any():
            raise ArithmeticError("field norm is not rational")
        return rest * Fraction(norm.den, int(norm.num[0]))

    # ----------------------------------------------------------- inspection
    def is_zero(self):
        return not self.num.any()

    def __eq__(self, other):
        if isinstance(other, (complex, float, np.ndarray)):
            return False
        try:
            na, nb, _, _ = self._aligned(other)
        except ModeError:
            return NotImplemented
        return na.shape == nb.shape and bool((na == nb).all())

    __hash__ = None

    def to_complex(self):
        d = self.num.shape[-1]
        z = np.exp(2j * np.pi * np.arange(d) / self.order)
        if self.num.dtype == object:
            vals = np.array([complex(sum(Fraction(int(c), self.den) * zz for c, zz in zip(row, z)))
                             for row in self.num.reshape(-1, d)]).reshape(self.shape)
        else:
            vals = (self.num.astype(np.float64) @ z) / self.den
        return complex(vals) if self.ndim == 0 else vals

    def __complex__(self):
        if self.ndim:
            raise TypeError("only scalars convert to complex")
        return self.to_complex()

    def rational(self):
        """The value as a Fraction when it lies in Q, else ValueError."""
        if self.ndim:
            raise ValueError("rational() is defined for scalars only")
        if self.num[1:].any():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(int(self.num[0]), self.den)

    def max_abs(self):
        if self.is_zero():
            return 0.0
        return float(np.max(np.abs(self.to_complex())))

    def coefficients(self):
        """Power-basis coefficients as Fractions (scalars only)."""
        if self.ndim:
            raise ValueError("coefficients() is defined for scalars only")
        return [Fraction(int(c), self.den) for c in self.num]

    def __repr__(self):
        if self.ndim:
            return f"Cyclotomic(shape={self.shape}, order={self.order})"
        terms = []
        for k, c in enumerate(self.coefficients()):
            if c:
                terms.append(f"{c}" if k == 0 else f"({c})*z{self.order}^{k}")
        return " + ".join(terms) or "0"


def _flatten(entries):
    if isinstance(entries, (list, tuple)):
        if not entries:
            return (0,), []
        parts = [_flatten(e) for e in entries]
        inner = parts[0][0]
        if any(p[0] != inner for p in parts):
            raise ValueError("ragged nested entries")
        return (len(entries),) + inner, [x for p in parts for x in p[1]]
    if isinstance(entries, Cyclotomic) and entries.ndim:
        return entries.shape, [entries[idx] for idx in np.ndindex(*entries.shape)]
    return (), [entries]


def _as_fraction(value):
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, Fraction):
        return value
    raise ModeError(f"cannot treat {type(value).__name__} as an exact value")


def as_exact(value):
    if isinstance(value, Cyclotomic):
        return value
    if isinstance(value, (numbers.Complex, np.ndarray)) and not isinstance(value, (numbers.Rational, np.integer)):
        raise ModeError("float value mixed into exact arithmetic; coerce explicitly")
    return Cyclotomic.from_rational(_as_fraction(value))


def _polymul(A, B, m):
    d = A.shape[-1]
    _, _, colsum = _tables(m)
    bound = d * _maxabs(A) * _maxabs(B) * colsum
    A, B = _cast(A, bound), _cast(B, bound)
    shape = np.broadcast_shapes(A.shape[:-1], B.shape[:-1])
    full = np.zeros(shape + (2 * d - 1,), dtype=object if A.dtype == object else np.int64)
    a_live = [a for a in range(d) if A[..., a].any()]
    b_live = [b for b in range(d) if B[..., b].any()]
    for a in a_live:
        for b in b_live:
            full[..., a + b] += A[..., a] * B[..., b]
    return full @ _reduce_table(m, bound)[: 2 * d - 1]


def kron(a, b):
    """Kronecker product of two exact 2-d (or two 1-d) arrays."""
    if not (isinstance(a, Cyclotomic) and isinstance(b, Cyclotomic)):
        raise ModeError("exact kron needs exact operands")
    M = lcm(a.order, b.order)
    a, b = a.embed(M), b.embed(M)
    if a.ndim == 2 and b.ndim == 2:
        (n1, m1), (n2, m2) = a.shape, b.shape
        P = _polymul(a.num[:, None, :, None, :], b.num[None, :, None, :, :], M)
        out = P.reshape(n1 * n2, m1 * m2, -1)
    elif a.ndim == 1 and b.ndim == 1:
        P = _polymul(a.num[:, None, :], b.num[None, :, :], M)
        out = P.reshape(a.shape[0] * b.shape[0], -1)
    else:
        raise ValueError("kron needs two matrices or two vectors")
    return Cyclotomic(out, a.den * b.den, M)


# ---------------------------------------------------------------- scalar API

def root_of_unity(k, m):
    """Exact zeta_m**k (k reduced mod m)."""
    if m < 1:
        raise ValueError(f"cyclotomic order must be >= 1, got {m}")
    obj, _, _ = _tables(m)
    row = obj[k % m].astype(np.int64)
    return Cyclotomic(row, 1, m)


def exp_i_pi(ratio):
    """Exact exp(i*pi*ratio) for rational ``ratio``."""
    ratio = _as_fraction(ratio)
    return root_of_unity(ratio.numerator, 2 * ratio.denominator)


def embed_complex(re, im=0.0):
    """A float-mode scalar."""
    return complex(float(re), float(im))


def is_exact(value):
    return isinstance(value, Cyclotomic)


def is_zero(value, tol=0):
    """Zero test: exact coefficient test (tol must be 0) or modulus below tol."""
    if isinstance(value, Cyclotomic):
        if tol:
            raise ValueError("a positive tolerance would mask exactness; exact mode needs tol=0")
        return value.is_zero()
    if tol <= 0:
        raise ValueError("float mode needs a positive tolerance")
    arr = np.asarray(value)
    return bool(arr.size == 0 or np.max(np.abs(arr)) < tol)


def approx(value):
    if isinstance(value, Cyclotomic):
        return value.to_complex()
    return value


def field_op(a, b, op):
    """Binary/unary field operation with strict mode checking.

    ``op`` is one of add, sub, mul, div, conj, neg; unary ops ignore ``b``.
    """
    if op in ("conj", "neg"):
        if isinstance(a, Cyclotomic):
            return a.conj() if op == "conj" else -a
        a = complex(a)
        return a.conjugate() if op == "conj" else -a
    if isinstance(a, Cyclotomic) != isinstance(b, Cyclotomic):
        # rationals on the exact side are fine; floats are not
        exact, other = (a, b) if isinstance(a, Cyclotomic) else (b, a)
        other = as_exact(other)
        a, b = (exact, other) if isinstance(a, Cyclotomic) else (other, exact)
    if isinstance(a, Cyclotomic):
        if op == "add":
            return a + b
        if op == "sub":
            return a - b
        if op == "mul":
            return a * b
        if op == "div":
            return a / b
    else:
        a, b = complex(a), complex(b)
        if op == "add":
            return a + b
        if op == "sub":
            return a - b
        if op == "mul":
            return a * b
        if op == "div":
            if b == 0:
                raise ZeroDivisionError("division by zero")
            return a / b
    raise ValueError(f"unknown field operation {op!r}")


def cos_pi(ratio):
    """Exact cos(pi*ratio)."""
    z = exp_i_pi(ratio)
    return (z + z.conj()) * Fraction(1, 2)


def i_sin_pi(ratio):
    """Exact i*sin(pi*ratio)."""
    z = exp_i_pi(ratio)
    return (z - z.conj()) * Fraction(1, 2)


def as_root_of_unity(value):
    """Return (k, m) with value == zeta_m**k if ``value`` is a root of unity in
    its field, else None.  Roots of unity in Q(zeta_m) have order dividing
    lcm(2, m), so a bounded search is exhaustive."""
    if not isinstance(value, Cyclotomic) or value.ndim:
        raise ValueError("as_root_of_unity needs an exact scalar")
    m = lcm(2, value.order)
    v = value.embed(m)
    for k in range(m):
        if v == root_of_unity(k, m):
            g = gcd(k, m)
            return k // g, m // g
    return None


def phase_ratio(value, tol=DEFAULT_TOL, max_den=10**4):
    """Rational p/q with value ~= exp(i*pi*p/q), for float unit-modulus values."""
    value = complex(value)
    if abs(abs(value) - 1.0) > tol:
        return None
    ratio = Fraction(cmath.phase(value) / np.pi).limit_denominator(max_den)
    if abs(cmath.exp(1j * np.pi * float(ratio)) - value) > tol:
        return None
    return ratio


def _squarefree_split(n):
    # n = m**2 * k with k squarefree; trial division is plenty at these sizes
    m, k, p = 1, 1, 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        m *= p ** (e // 2)
        if e % 2:
            k *= p
        p += 1
    return m, k * n


def _sqrt_prime(p):
    """Positive sqrt(p) via the quadratic Gauss sum."""
    if p == 2:
        return root_of_unity(1, 8) + root_of_unity(7, 8)
    g = root_of_unity(0, p) * 0
    for a in range(1, p):
        legendre = 1 if pow(a, (p - 1) // 2, p) == 1 else -1
        g = g + root_of_unity(a, p) * legendre
    if p % 4 == 3:
        g = g * root_of_unity(3, 4)  # g = i sqrt(p)
    return g if g.to_complex().real > 0 else -g


def sqrt_rational(q):
    """Principal square root of a rational, exactly."""
    q = Fraction(q)
    if q == 0:
        return Cyclotomic.from_rational(0)
    m, k = _squarefree_split(abs(q.numerator) * q.denominator)
    out = Cyclotomic.from_rational(Fraction(m, q.denominator))
    p, rest = 2, k
    while rest > 1:
        if rest % p == 0:
            out = out * _sqrt_prime(p)
            rest //= p
        p += 1
    return out * root_of_unity(1, 4) if q < 0 else out


def exact_sqrt(value):
    """Principal square root of an exact rational or root of unity; None when
    neither applies."""
    value = as_exact(value)
    if value.ndim:
        raise ValueError("exact_sqrt needs a scalar")
    try:
        return sqrt_rational(value.rational())
    except ValueError:
        pass
    found = as_root_of_unity(value)
    if found is None:
        return None
    k, m = found
    ratio = Fraction(2 * k, m)  # value = exp(i pi ratio)
    if ratio > 1:
        ratio -= 2
    return exp_i_pi(ratio / 2)
