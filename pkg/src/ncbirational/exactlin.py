"""Exact scalars and dense linear algebra over F_p or Q.

Prime-field matrices are ``int64`` numpy arrays of canonical residues;
rational matrices are ``object`` arrays of :class:`fractions.Fraction`.
Linear maps act on column vectors (shape ``(dim_target, dim_source)``);
subspaces store a reduced row-echelon basis as rows.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import total_ordering

import numpy as np

DEFAULT_PRIME = 10007


class FieldError(ArithmeticError):
    pass


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@total_ordering
class Fp:
    """Element of a prime field, stored as a canonical residue."""

    __slots__ = ("v", "field")

    def __init__(self, v, field):
        self.v = v % field.p
        self.field = field

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.field.p != self.field.p:
                raise FieldError("mixing elements of different prime fields")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.field.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v + o, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v - o, self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o - self.v, self.field)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v * o, self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.field.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.field.p)
        return Fp(self.v * pow(o, -1, self.field.p), self.field)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o, self.field) / self

    def __neg__(self):
        return Fp(-self.v, self.field)

    def __pow__(self, n):
        if n < 0:
            return Fp(pow(self.v, -1, self.field.p), self.field) ** (-n)
        return Fp(pow(self.v, n, self.field.p), self.field)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.v == other.v and self.field.p == other.field.p
        if isinstance(other, int):
            return self.v == other % self.field.p
        return NotImplemented

    def __lt__(self, other):
        return self.v < self._coerce(other)

    def __hash__(self):
        return hash((self.v, self.field.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return "%d" % self.v


class PrimeField:
    """The field F_p for a prime p > 3."""

    dtype = np.int64
    is_prime = True

    def __init__(self, p=DEFAULT_PRIME):
        if not _is_prime(p) or p <= 3:
            raise FieldError("modulus must be a prime > 3, got %r" % (p,))
        if p >= 3_000_000_000:
            raise FieldError("modulus too large for int64 dense arithmetic")
        self.p = p
        self.zero = Fp(0, self)
        self.one = Fp(1, self)

    def __call__(self, v):
        if isinstance(v, Fp):
            return v
        if isinstance(v, Fraction):
            return Fp(v.numerator, self) / v.denominator
        if isinstance(v, str) and "/" in v:
            num, den = v.split("/")
            return Fp(int(num), self) / int(den)
        return Fp(int(v), self)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return "F_%d" % self.p

    def descriptor(self):
        return self.p

    # -- scalars
    def sqrt(self, a):
        """A square root of ``a`` or ``None``; the smaller residue is returned."""
        a = self(a).v
        p = self.p
        if a == 0:
            return self.zero
        if pow(a, (p - 1) // 2, p) != 1:
            return None
        if p % 4 == 3:
            r = pow(a, (p + 1) // 4, p)
        else:
            r = _tonelli_shanks(a, p)
        return Fp(min(r, p - r), self)

    def random_element(self, rng):
        return Fp(rng.randrange(self.p), self)

    def sort_key(self, a):
        return a.v

    def to_json(self, a):
        return a.v

    def elements(self):
        return (Fp(v, self) for v in range(self.p))

    # -- arrays
    def entry(self, a):
        return self(a).v

    def scalar(self, e):
        return Fp(int(e), self)

    def array(self, rows, shape=None):
        out = np.array([[self.entry(a) for a in row] for row in rows], dtype=np.int64)
        return out.reshape(shape) if shape is not None else out

    def vector(self, entries):
        return np.array([self.entry(a) for a in entries], dtype=np.int64)

    def zeros(self, shape):
        return np.zeros(shape, dtype=np.int64)

    def identity(self, n):
        return np.eye(n, dtype=np.int64)

    def reduce(self, arr):
        return np.mod(arr, self.p)

    def matmul(self, a, b):
        return np.mod(a @ b, self.p)

    def inv_entry(self, e):
        return pow(int(e), -1, self.p)

    def random_array(self, shape, rng):
        return np.array(
            [rng.randrange(self.p) for _ in range(int(np.prod(shape)))], dtype=np.int64
        ).reshape(shape)


class RationalField:
    """The field Q of rational numbers (exact, via Fraction)."""

    dtype = object
    is_prime = False
    p = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __call__(self, v):
        if isinstance(v, Fp):
            raise FieldError("cannot coerce a prime-field element into Q")
        return Fraction(v)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"

    def descriptor(self):
        return "Q"

    def sqrt(self, a):
        a = Fraction(a)
        if a < 0:
            return None
        n = _isqrt_exact(a.numerator)
        d = _isqrt_exact(a.denominator)
        if n is None or d is None:
            return None
        return Fraction(n, d)

    def random_element(self, rng):
        return Fraction(rng.randint(-50, 50), rng.randint(1, 10))

    def sort_key(self, a):
        return a

    def to_json(self, a):
        a = Fraction(a)
        if a.denominator == 1:
            return "%d" % a.numerator
        return "%d/%d" % (a.numerator, a.denominator)

    def entry(self, a):
        return Fraction(a)

    def scalar(self, e):
        return Fraction(e)

    def array(self, rows, shape=None):
        if shape is not None and len(rows) == 0:
            return self.zeros(shape)
        out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
        for i, row in enumerate(rows):
            for j, a in enumerate(row):
                out[i, j] = Fraction(a)
        return out

    def vector(self, entries):
        out = np.empty(len(entries), dtype=object)
        for i, a in enumerate(entries):
            out[i] = Fraction(a)
        return out

    def zeros(self, shape):
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out

    def identity(self, n):
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = Fraction(1)
        return out

    def reduce(self, arr):
        return arr

    def matmul(self, a, b):
        if a.shape[-1] == 0:
            return self.zeros(a.shape[:-1] + b.shape[1:])
        return a @ b

    def inv_entry(self, e):
        return 1 / Fraction(e)

    def random_array(self, shape, rng):
        out = self.zeros(shape)
        for idx in np.ndindex(*shape):
            out[idx] = Fraction(rng.randint(-9, 9))
        return out


def _isqrt_exact(n):
    import math

    r = math.isqrt(n)
    return r if r * r == n else None


def _tonelli_shanks(a, p):
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def make_field(spec):
    """Build a field from ``"Q"`` or a prime modulus (int or numeric string)."""
    if isinstance(spec, (PrimeField, RationalField)):
        return spec
    if spec in ("Q", "q", "QQ"):
        return RationalField()
    return PrimeField(int(spec))


# ---------------------------------------------------------------- elimination


def rref(m, field):
    """Reduced row-echelon form of ``m``.

    Returns ``(r, pivots)`` where ``r`` has only the nonzero rows. Pivots are
    found column by column in natural order, the pivot row being the first
    remaining row with a nonzero entry, so the output is deterministic.
    """
    m = np.array(m, dtype=field.dtype, copy=True)
    if m.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c] != 0)[0]
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            m[[r, k]] = m[[k, r]]
        inv = field.inv_entry(m[r, c])
        m[r] = field.reduce(m[r] * inv)
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col != 0)[0]
        if len(nzr):
            m[nzr] = field.reduce(m[nzr] - np.outer(col[nzr], m[r]))
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(m, field):
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return len(rref(m, field)[1])


def kernel(m, field):
    """Null space of ``m`` (acting on columns) as a :class:`Subspace`."""
    m = np.asarray(m, dtype=field.dtype)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return Subspace.full(cols, field)
    r, pivots = rref(m, field)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = field.zeros((len(free), cols))
    for i, f in enumerate(free):
        basis[i, f] = 1
        for j, pc in enumerate(pivots):
            basis[i, pc] = field.reduce(-r[j, f])
    return Subspace(basis, cols, field)


def image(m, field):
    """Column space of ``m`` as a :class:`Subspace` of the target."""
    m = np.asarray(m, dtype=field.dtype)
    return Subspace(m.T, m.shape[0], field)


def solve(m, b, field):
    """Some ``x`` with ``m @ x == b`` (``b`` a vector or matrix), or ``None``."""
    m = np.asarray(m, dtype=field.dtype)
    b = np.asarray(b, dtype=field.dtype)
    vec = b.ndim == 1
    if vec:
        b = b.reshape(-1, 1)
    aug = np.concatenate([m, b], axis=1)
    r, pivots = rref(aug, field)
    n = m.shape[1]
    if pivots and pivots[-1] >= n:
        return None
    x = field.zeros((n, b.shape[1]))
    for j, pc in enumerate(pivots):
        x[pc] = r[j, n:]
    return x[:, 0] if vec else x


class Subspace:
    """A subspace of ``field^ambient`` held as a reduced row-echelon basis."""

    __slots__ = ("basis", "pivots", "ambient", "field")

    def __init__(self, rows, ambient, field):
        rows = np.asarray(rows, dtype=field.dtype)
        if rows.size == 0:
            rows = field.zeros((0, ambient))
        if rows.shape[1] != ambient:
            raise ValueError("rows have length %d, ambient is %d" % (rows.shape[1], ambient))
        self.basis, self.pivots = rref(rows, field)
        self.ambient = ambient
        self.field = field

    @classmethod
    def zero(cls, ambient, field):
        return cls(field.zeros((0, ambient)), ambient, field)

    @classmethod
    def full(cls, ambient, field):
        return cls(field.identity(ambient), ambient, field)

    @property
    def dim(self):
        return self.basis.shape[0]

    def __len__(self):
        return self.dim

    def _check(self, other):
        if self.ambient != other.ambient:
            raise ValueError("ambient dimension mismatch: %d vs %d" % (self.ambient, other.ambient))

    def contains(self, v):
        v = np.asarray(v, dtype=self.field.dtype)
        if v.ndim == 1:
            v = v.reshape(1, -1)
        if v.shape[1] != self.ambient:
            raise ValueError("vector length does not match ambient dimension")
        # reduce against the echelon basis
        w = v.copy()
        for j, pc in enumerate(self.pivots):
            coef = w[:, pc].copy()
            if np.any(coef != 0):
                w = self.field.reduce(w - np.outer(coef, self.basis[j]))
        return bool(np.all(w == 0))

    def __contains__(self, v):
        return self.contains(v)

    def coordinates(self, v):
        """Coordinates of ``v`` with respect to ``self.basis`` (raises if absent)."""
        v = np.asarray(v, dtype=self.field.dtype)
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return np.array([v[..., pc] for pc in self.pivots], dtype=self.field.dtype).T

    def sum(self, other):
        self._check(other)
        return Subspace(np.concatenate([self.basis, other.basis]), self.ambient, self.field)

    __add__ = sum

    def intersect(self, other):
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient, self.field)
        # x·B1 = y·B2  <=>  (x, y) in ker of [B1; -B2]^T
        stacked = np.concatenate([self.basis, self.field.reduce(-other.basis)]).T
        ker = kernel(stacked, self.field)
        if ker.dim == 0:
            return Subspace.zero(self.ambient, self.field)
        coeffs = ker.basis[:, : self.dim]
        return Subspace(self.field.matmul(coeffs, self.basis), self.ambient, self.field)

    __and__ = intersect

    def issubspace(self, other):
        self._check(other)
        return self.dim == 0 or other.contains(self.basis)

    def __le__(self, other):
        return self.issubspace(other)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient == other.ambient
            and self.dim == other.dim
            and self.issubspace(other)
            and other.issubspace(self)
        )

    def __hash__(self):
        return hash((self.ambient, self.dim, self.basis.tobytes()))

    def complement_indices(self):
        """Coordinate indices spanning a complement (the non-pivot columns)."""
        piv = set(self.pivots)
        return [c for c in range(self.ambient) if c not in piv]

    def quotient_map(self):
        """Matrix of the projection onto ``field^ambient / self``.

        The quotient is coordinatized by :meth:`complement_indices`.
        """
        comp = self.complement_indices()
        q = self.field.zeros((len(comp), self.ambient))
        for i, c in enumerate(comp):
            q[i, c] = 1
        for j, pc in enumerate(self.pivots):
            q[:, pc] = self.field.reduce(-self.basis[j, comp])
        return q

    def image_under(self, m):
        """Image of the subspace under the linear map ``m`` (column convention)."""
        if self.dim == 0:
            return Subspace.zero(m.shape[0], self.field)
        return Subspace(self.field.matmul(m, self.basis.T).T, m.shape[0], self.field)

    def preimage_under(self, m):
        """``{v : m @ v in self}`` for a map into ``self``'s ambient space."""
        q = self.quotient_map()
        return kernel(self.field.matmul(q, m), self.field)

    def __repr__(self):
        return "Subspace(dim=%d, ambient=%d, %r)" % (self.dim, self.ambient, self.field)


def random_matrix(shape, field, seed=0):
    return field.random_array(shape, random.Random(seed))
