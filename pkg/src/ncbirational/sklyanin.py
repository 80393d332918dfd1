"""Sklyanin algebras from elliptic data, and their map to the coordinate ring.

The twisted coordinate ring is modelled with absolute divisors: the piece
with indices (i, j) is L(Delta_{i,j}), Delta_{i,j} = sum_{l=i}^{j-1} sigma^{-l} D0,
and products are plain products of functions. A word x_1 ... x_n taken at
base index i becomes the function Q -> prod_l f_{x_l}(Q + (i+l) t), where
f_x is the x-th basis section of L(D0). Everything on the algebra side is
done by evaluating such products at sample points.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count

import numpy as np

from . import exactlin, freealg
from .curve import Divisor, EllipticCurve, riemann_roch_space, point_sort_key
from .exactlin import PrimeField

KINDS = {"quadratic": (3, 2), "cubic": (2, 3)}


class GeometricDataError(ValueError):
    pass


class NonGenericData(ValueError):
    pass


class GeometricData:
    """(E, sigma = translation by t, L = O(D0)) of quadratic or cubic kind."""

    def __init__(self, curve, t, D0, kind):
        if kind not in KINDS:
            raise GeometricDataError("kind must be 'quadratic' or 'cubic', got %r" % (kind,))
        if not isinstance(D0, Divisor):
            D0 = Divisor.of_points(curve, D0)
        self.curve = curve
        self.field = curve.field
        self.t = t
        self.D0 = D0
        self.kind = kind
        self.r, self.s = KINDS[kind]
        if t not in curve:
            raise GeometricDataError("t is not on the curve")
        if not D0.is_effective() or D0.degree != self.r:
            raise GeometricDataError("D0 must be effective of degree %d" % self.r)
        self._shift_cache = {}
        self._basis = None

    @property
    def tau_point(self):
        return self.curve.mul(self.s + 1, self.t)

    def sigma_power(self, k, D):
        """sigma^k applied to a divisor via the pullback rule: points move by -k t."""
        return D.translate(self.curve.mul(-k, self.t))

    def delta(self, i, j):
        """Delta_{i,j} = sum_{l=i}^{j-1} sigma^{-l} D0."""
        out = Divisor(self.curve)
        for l in range(i, j):
            out = out + self.D0.translate(self.curve.mul(-l, self.t))
        return out

    def shift(self, Q, k):
        """Q + k t (cached)."""
        key = (Q, k)
        R = self._shift_cache.get(key)
        if R is None:
            R = self.curve.add(Q, self.curve.mul(k, self.t))
            self._shift_cache[key] = R
        return R

    @property
    def generators(self):
        """Basis f_0..f_{r-1} of L(D0), the degree-one generators."""
        if self._basis is None:
            self._basis = riemann_roch_space(self.D0)
            if len(self._basis) != self.r:
                raise NonGenericData("L(D0) has dimension %d" % len(self._basis))
        return self._basis

    def generator_values(self, Q):
        """Vector (f_x(Q))_x of field entries; raises ZeroDivisionError at a pole."""
        F = self.field
        return [F.entry(f.evaluate(Q)) for f in self.generators]

    def pole_points(self, shifts):
        """Points of D0 - k t for k in ``shifts``: where the avatar can have poles."""
        out = set()
        for k in shifts:
            for P in self.D0.support:
                out.add(self.curve.add(P, self.curve.mul(-k, self.t)))
        return out

    def sample_points(self, count_, shifts, avoid=()):
        """Deterministic affine points Q such that Q + k t avoids the x-coordinates
        of supp D0 for every k in ``shifts`` (so evaluation is direct)."""
        bad_x = {P.x for P in self.D0.support if not P.is_infinity}
        bad_pts = set(avoid)
        out = []
        for Q in self._candidates():
            if Q in bad_pts or Q.is_infinity:
                continue
            ok = True
            for k in shifts:
                R = self.shift(Q, k)
                if R.is_infinity or R.x in bad_x:
                    ok = False
                    break
            if ok:
                out.append(Q)
                bad_pts.add(Q)
                if len(out) == count_:
                    return out
        raise NonGenericData("could not find %d sample points" % count_)

    def _candidates(self):
        C = self.curve
        if isinstance(self.field, PrimeField):
            for x in range(self.field.p):
                for Q in C.lift_x(x):
                    yield Q
            return
        for x in range(-60, 400):
            for Q in C.lift_x(x):
                yield Q
        seeds = [P for P in self.D0.support if not P.is_infinity] + [self.t]
        for k in count(1):
            for P in seeds:
                for j in range(-k, k + 1):
                    yield C.add(C.mul(k, P), C.mul(j, self.t))

    # -- serialization
    def to_json(self):
        F = self.field
        return {
            "field": F.descriptor(),
            "curve": {"a": F.to_json(self.curve.a), "b": F.to_json(self.curve.b)},
            "kind": self.kind,
            "t": self.t.to_json(),
            "D0": [P.to_json() for P, k in self.D0.items() for _ in range(k)],
        }

    @classmethod
    def from_json(cls, data):
        C = EllipticCurve(data["curve"]["a"], data["curve"]["b"], data.get("field", 10007))
        t = parse_point(C, data["t"])
        D0 = Divisor.of_points(C, [parse_point(C, P) for P in data["D0"]])
        return cls(C, t, D0, data["kind"])

    def __repr__(self):
        return "GeometricData(%s, t=%r, D0=%r)" % (self.kind, self.t, self.D0)


def parse_point(curve, obj):
    if obj == "O" or obj is None:
        return curve.O
    x, y = obj
    return curve.point(x, y)


# ---------------------------------------------------------------- avatars


def avatar_values(A, gd, i, n, points):
    """Matrix (len(points) x dim A_n): avatar of each basis word at base i, at each point."""
    F = gd.field
    vals = np.ones((len(points), 1), dtype=F.dtype)
    if F.dtype == object:
        vals = F.zeros((len(points), 1)) + 1
    for m in range(1, n + 1):
        G = np.array(
            [gd.generator_values(gd.shift(Q, i + m - 1)) for Q in points], dtype=F.dtype
        ).reshape(len(points), gd.r)
        kp = np.array([k for k, _ in A.lifts[m]], dtype=np.int64)
        xs = np.array([x for _, x in A.lifts[m]], dtype=np.int64)
        vals = F.reduce(vals[:, kp] * G[:, xs])
    return vals


def word_values(gd, base, words, points):
    """Evaluate tensor words (tuples of generator indices) at base ``base``."""
    F = gd.field
    out = F.zeros((len(points), len(words)))
    for a, Q in enumerate(points):
        gv = [gd.generator_values(gd.shift(Q, base + l)) for l in range(max(map(len, words)))]
        for b, w in enumerate(words):
            v = F.entry(1)
            for l, x in enumerate(w):
                v = F.reduce(v * gv[l][x])
            out[a, b] = v
    return out


def construct_sklyanin(gd):
    """Presentation of the Sklyanin algebra: relations are the kernel of
    V^{(x) s} -> L(Delta_{0,s}), f_1 (x) ... (x) f_s -> prod f_l o sigma^{l}."""
    F = gd.field
    r, s = gd.r, gd.s
    gd.generators
    words = [_digits(k, r, s) for k in range(r**s)]
    pts = gd.sample_points(r * s + 4, range(s))
    M = word_values(gd, 0, words, pts)
    ker = exactlin.kernel(M, F)
    expected = r**s - r * s
    if ker.dim != expected:
        raise NonGenericData(
            "relation space has dimension %d, expected %d" % (ker.dim, expected)
        )
    return freealg.GradedPresentation(F, r, s, ker, "sklyanin-" + gd.kind)


def _digits(k, r, length):
    out = []
    for _ in range(length):
        out.append(k % r)
        k //= r
    return tuple(reversed(out))


def sklyanin_algebra(gd, N=None):
    """Materialized Sklyanin algebra with ``geometry`` attached."""
    if N is None:
        N = 10 if gd.kind == "quadratic" else 12
    A = freealg.materialize(construct_sklyanin(gd), N)
    A.geometry = gd
    return A


@dataclass
class ThcrPiece:
    indices: tuple
    divisor: Divisor
    basis: list

    @property
    def dim(self):
        return len(self.basis)


def thcr_piece(gd, i, j):
    if j < i:
        raise ValueError("need i <= j")
    D = gd.delta(i, j)
    from .curve import FunctionFieldElement

    if j == i:
        return ThcrPiece((i, j), D, [FunctionFieldElement.constant(gd.curve, gd.field.one)])
    return ThcrPiece((i, j), D, riemann_roch_space(D))


@dataclass
class AvatarMap:
    """A_n -> L(Delta_{i,i+n}) in coordinates of the Riemann-Roch basis of ``piece``."""

    base: int
    degree: int
    piece: ThcrPiece
    matrix: np.ndarray
    field: object

    @property
    def kernel(self):
        return exactlin.kernel(self.matrix, self.field)

    @property
    def rank(self):
        return exactlin.rank(self.matrix, self.field)

    def is_surjective(self):
        return self.rank == self.piece.dim

    def image_function(self, coords):
        """The function-field element image of a coordinate vector of A_n."""
        c = self.field.matmul(self.matrix, np.asarray(coords, dtype=self.field.dtype))
        F = self.field
        out = None
        for coef, f in zip(c, self.piece.basis):
            term = f * F.scalar(coef)
            out = term if out is None else out + term
        return out


def algebra_to_thcr(A, gd, i, n):
    """Coordinates, in the Riemann-Roch basis of L(Delta_{i,i+n}), of the avatars
    at base i of the basis words of A_n."""
    F = gd.field
    piece = thcr_piece(gd, i, i + n)
    pts = gd.sample_points(gd.r * n + 4, range(i, i + n))
    E_rr = _eval_functions(piece.basis, pts, F)
    E_A = avatar_values(A, gd, i, n, pts)
    M = exactlin.solve(E_rr, E_A, F)
    if M is None:
        raise RuntimeError("avatar evaluations are not in L(Delta)")
    return AvatarMap(i, n, piece, M, F)


def _eval_functions(functions, points, F):
    return np.array(
        [[F.entry(f.evaluate(Q)) for f in functions] for Q in points], dtype=F.dtype
    ).reshape(len(points), len(functions))


def avatar_kernel(A, gd, i, n):
    """ker(A_n -> B) computed by evaluation at more than deg Delta points."""
    pts = gd.sample_points(gd.r * n + 3, range(i, i + n))
    return exactlin.kernel(avatar_values(A, gd, i, n, pts), gd.field)


def point_functionals(gd, q, N):
    """lambda_n[x] = f_x(q + n t) for n < N: the point module of q."""
    out = []
    for n in range(N):
        Q = gd.shift(q, n)
        try:
            v = gd.generator_values(Q)
        except ZeroDivisionError:
            raise NonGenericData("sections have a pole at the orbit point %r" % (Q,))
        if not any(v):
            raise NonGenericData("all sections vanish at the orbit point %r" % (Q,))
        out.append(v)
    return out


def sorted_points(points):
    return sorted(points, key=point_sort_key)
