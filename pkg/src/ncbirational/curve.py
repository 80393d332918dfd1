"""Weierstrass elliptic curves y^2 = x^3 + a x + b over an exact field.

Group law, divisors and their classes, function-field elements
``(a(x) + b(x) y) / den(x)`` with valuations from local power-series
expansions, and Riemann-Roch spaces computed by imposing order conditions
on a spanning superset.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, total_ordering

from . import exactlin
from .exactlin import PrimeField


class CurveError(ValueError):
    pass


class TorsionNotRational(ArithmeticError):
    """Raised when a division by n has no solution over the base field."""


# ------------------------------------------------------------- polynomials
# Univariate polynomials are tuples of coefficients, lowest degree first,
# with no trailing zeros (the zero polynomial is the empty tuple).


def ptrim(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def pdeg(c):
    return len(c) - 1


def padd(f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else None
        b = g[i] if i < len(g) else None
        out.append(a if b is None else b if a is None else a + b)
    return ptrim(out)


def pneg(f):
    return tuple(-c for c in f)


def psub(f, g):
    return padd(f, pneg(g))


def pscale(f, s):
    return ptrim(c * s for c in f)


def pmul(f, g):
    if not f or not g:
        return ()
    out = [None] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            t = a * b
            out[i + j] = t if out[i + j] is None else out[i + j] + t
    zero = f[0] * 0
    return ptrim(zero if c is None else c for c in out)


def peval(f, x):
    acc = x * 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


# ------------------------------------------------------ truncated series


def smul(f, g, prec):
    zero = f[0] * 0
    out = [zero] * prec
    for i in range(min(prec, len(f))):
        a = f[i]
        if not a:
            continue
        for j in range(min(prec - i, len(g))):
            out[i + j] = out[i + j] + a * g[j]
    return out


def sinv(f, prec):
    if not f[0]:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    inv0 = 1 / f[0]
    out = [inv0]
    for n in range(1, prec):
        acc = f[0] * 0
        for k in range(1, min(n, len(f) - 1) + 1):
            acc = acc + f[k] * out[n - k]
        out.append(-acc * inv0)
    return out


def seval_poly(p, s, prec, zero):
    """Compose the polynomial ``p`` with the series ``s`` (Horner)."""
    acc = [zero] * prec
    for c in reversed(p):
        acc = smul(acc, s, prec)
        acc[0] = acc[0] + c
    return acc


# ------------------------------------------------------------------- curves


class EllipticCurve:
    """The smooth curve y^2 = x^3 + a x + b."""

    def __init__(self, a, b, field):
        self.field = exactlin.make_field(field)
        self.a = self.field(a)
        self.b = self.field(b)
        if not (4 * self.a**3 + 27 * self.b**2):
            raise CurveError("singular curve: 4a^3 + 27b^2 = 0")
        self.O = CurvePoint(self, None, None)
        self._division_cache = {}

    def __eq__(self, other):
        return (
            isinstance(other, EllipticCurve)
            and self.field == other.field
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self):
        return hash((self.field, self.a, self.b))

    def __repr__(self):
        return "EllipticCurve(y^2 = x^3 + %r x + %r over %r)" % (self.a, self.b, self.field)

    @property
    def rhs(self):
        """x^3 + a x + b as a coefficient tuple."""
        F = self.field
        return ptrim((self.b, self.a, F.zero, F.one))

    def rhs_at(self, x):
        return x * x * x + self.a * x + self.b

    def __contains__(self, P):
        return isinstance(P, CurvePoint) and P.curve == self and (
            P.is_infinity or P.y * P.y == self.rhs_at(P.x)
        )

    def point(self, x, y):
        x, y = self.field(x), self.field(y)
        if y * y != self.rhs_at(x):
            raise CurveError("(%r, %r) is not on %r" % (x, y, self))
        return CurvePoint(self, x, y)

    def lift_x(self, x):
        """Points with the given x-coordinate (zero, one or two of them)."""
        x = self.field(x)
        y = self.field.sqrt(self.rhs_at(x))
        if y is None:
            return []
        if not y:
            return [CurvePoint(self, x, y)]
        return [CurvePoint(self, x, y), CurvePoint(self, x, -y)]

    # -- group law
    def add(self, P, Q):
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        if P.x == Q.x:
            if not (P.y + Q.y):
                return self.O
            lam = (3 * P.x * P.x + self.a) / (2 * P.y)
        else:
            lam = (Q.y - P.y) / (Q.x - P.x)
        x3 = lam * lam - P.x - Q.x
        y3 = lam * (P.x - x3) - P.y
        return CurvePoint(self, x3, y3)

    def neg(self, P):
        if P.is_infinity:
            return P
        return CurvePoint(self, P.x, -P.y)

    def mul(self, n, P):
        if n < 0:
            return self.mul(-n, self.neg(P))
        R, A = self.O, P
        while n:
            if n & 1:
                R = self.add(R, A)
            A = self.add(A, A)
            n >>= 1
        return R

    def order_of(self, P, bound=None):
        """Order of P, searching up to ``bound`` (None if not found)."""
        bound = bound or (self.cardinality() if isinstance(self.field, PrimeField) else 100)
        Q = P
        for k in range(1, bound + 1):
            if Q.is_infinity:
                return k
            Q = self.add(Q, P)
        return None

    # -- finite-field enumeration
    @cached_property
    def _affine_points(self):
        if not isinstance(self.field, PrimeField):
            raise CurveError("point enumeration needs a finite base field")
        p = self.field.p
        a, b = self.a.v, self.b.v
        F = self.field
        pts = []
        half = (p - 1) // 2
        for x in range(p):
            r = (x * x * x + a * x + b) % p
            if r == 0:
                pts.append(CurvePoint(self, F(x), F(0)))
            elif pow(r, half, p) == 1:
                y = F.sqrt(r)
                pts.append(CurvePoint(self, F(x), y))
                pts.append(CurvePoint(self, F(x), -y))
        return pts

    def points(self):
        """All rational points (prime fields only), O first."""
        return [self.O] + list(self._affine_points)

    def cardinality(self):
        return 1 + len(self._affine_points)

    def random_point(self, rng, affine=True):
        if isinstance(self.field, PrimeField):
            pts = self._affine_points
            return pts[rng.randrange(len(pts))]
        raise CurveError("random points need a finite base field")

    def divide(self, P, n):
        """All rational u with n*u = P, sorted by the canonical point order.

        Raises :class:`TorsionNotRational` when there is none. The list may be
        shorter than n^2 when the n-torsion is not entirely rational; see
        :meth:`torsion_is_rational`.
        """
        if n <= 0:
            raise ValueError("n must be positive")
        if isinstance(self.field, PrimeField):
            sols = self._divide_finite(P, n)
        else:
            sols = self._divide_rational(P, n)
        if not sols:
            raise TorsionNotRational(
                "torsion not rational over base field: no rational u with %d*u = %r" % (n, P)
            )
        return sorted(sols, key=point_sort_key)

    def torsion_is_rational(self, n):
        return len(self.divide(self.O, n)) == n * n

    def _divide_finite(self, P, n):
        N = self.cardinality()
        if math.gcd(n, N) == 1:
            return [self.mul(pow(n, -1, N), P)]
        table = self._division_cache.get(n)
        if table is None:
            table = {}
            for Q in self.points():
                table.setdefault(self.mul(n, Q), []).append(Q)
            self._division_cache[n] = table
        return list(table.get(P, []))

    def _divide_rational(self, P, n):
        import sympy

        x = sympy.Symbol("x")
        a, b = sympy.Rational(self.a), sympy.Rational(self.b)
        F = x**3 + a * x + b
        psi = division_polynomials(n + 1, a, b, x)
        # psi[k] = (poly in x, has_y_factor); psi_n^2 and psi_{n-1} psi_{n+1} are pure in x
        def sq(k):
            c, y = psi[k]
            return sympy.expand(c * c * (F if y else 1))

        def prod(i, j):
            ci, yi = psi[i]
            cj, yj = psi[j]
            assert yi == yj
            return sympy.expand(ci * cj * (F if yi else 1))

        if P.is_infinity:
            target = sympy.Poly(sq(n), x)
            sols = [self.O]
        else:
            xp = sympy.Rational(P.x)
            target = sympy.Poly(sympy.expand(x * sq(n) - prod(n - 1, n + 1) - xp * sq(n)), x)
            sols = []
        for root in target.ground_roots():
            for Q in self.lift_x(Fraction(int(root.p), int(root.q))):
                if self.mul(n, Q) == P:
                    sols.append(Q)
        return list(dict.fromkeys(sols))


def division_polynomials(upto, a, b, x):
    """psi_0..psi_upto as (x-polynomial, carries-a-factor-y) pairs (sympy)."""
    import sympy

    F = x**3 + a * x + b
    # represent psi_k = c_k * y^e with e in {0, 1}; y^2 -> F
    psi = {
        0: (sympy.Integer(0), False),
        1: (sympy.Integer(1), False),
        2: (sympy.Integer(2), True),
        3: (3 * x**4 + 6 * a * x**2 + 12 * b * x - a**2, False),
        4: (4 * (x**6 + 5 * a * x**4 + 20 * b * x**3 - 5 * a**2 * x**2 - 4 * a * b * x - 8 * b**2 - a**3), True),
    }

    def mul(*terms):
        c, e = sympy.Integer(1), 0
        for tc, te in terms:
            c, e = c * tc, e + int(te)
        c = c * F ** (e // 2)
        return sympy.expand(c), bool(e % 2)

    k = 5
    while k <= upto:
        m = k // 2
        if k % 2:
            c1, e1 = mul(psi[m + 2], psi[m], psi[m], psi[m])
            c2, e2 = mul(psi[m - 1], psi[m + 1], psi[m + 1], psi[m + 1])
            assert e1 == e2
            psi[k] = (sympy.expand(c1 - c2), e1)
        else:
            c1, e1 = mul(psi[m + 2], psi[m - 1], psi[m - 1])
            c2, e2 = mul(psi[m - 2], psi[m + 1], psi[m + 1])
            assert e1 == e2
            c, e = mul((sympy.expand(c1 - c2), e1), psi[m])
            # divide by 2y
            if e:
                psi[k] = (sympy.expand(c / 2), False)
            else:
                psi[k] = (sympy.cancel(c / (2 * F)), True)
        k += 1
    return psi


def point_sort_key(P):
    if P.is_infinity:
        return (0, 0, 0)
    F = P.curve.field
    return (1, F.sort_key(P.x), F.sort_key(P.y))


@total_ordering
class CurvePoint:
    __slots__ = ("curve", "x", "y")

    def __init__(self, curve, x, y):
        self.curve = curve
        self.x = x
        self.y = y

    @property
    def is_infinity(self):
        return self.x is None

    def __add__(self, other):
        return self.curve.add(self, other)

    def __neg__(self):
        return self.curve.neg(self)

    def __sub__(self, other):
        return self.curve.add(self, self.curve.neg(other))

    def __rmul__(self, n):
        return self.curve.mul(n, self)

    def __mul__(self, n):
        return self.curve.mul(n, self)

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        return self.x == other.x and self.y == other.y and self.curve == other.curve

    def __lt__(self, other):
        return point_sort_key(self) < point_sort_key(other)

    def __hash__(self):
        return hash((self.x, self.y))

    def __repr__(self):
        if self.is_infinity:
            return "O"
        return "(%r, %r)" % (self.x, self.y)

    def to_json(self):
        if self.is_infinity:
            return "O"
        F = self.curve.field
        return [F.to_json(self.x), F.to_json(self.y)]


# ----------------------------------------------------------------- divisors


class Divisor:
    """A finite formal sum of points; zero multiplicities are dropped."""

    __slots__ = ("curve", "_m")

    def __init__(self, curve, mults=None):
        self.curve = curve
        m = {}
        for P, k in (mults or {}).items():
            if P not in curve:
                raise CurveError("%r is not on the curve" % (P,))
            if k:
                m[P] = m.get(P, 0) + k
        self._m = {P: k for P, k in m.items() if k}

    @classmethod
    def of_points(cls, curve, points):
        m = {}
        for P in points:
            m[P] = m.get(P, 0) + 1
        return cls(curve, m)

    @property
    def degree(self):
        return sum(self._m.values())

    def items(self):
        return sorted(self._m.items(), key=lambda kv: point_sort_key(kv[0]))

    @property
    def support(self):
        return [P for P, _ in self.items()]

    def __getitem__(self, P):
        return self._m.get(P, 0)

    def is_effective(self):
        return all(k > 0 for k in self._m.values())

    def __add__(self, other):
        m = dict(self._m)
        for P, k in other._m.items():
            m[P] = m.get(P, 0) + k
        return Divisor(self.curve, m)

    def __neg__(self):
        return Divisor(self.curve, {P: -k for P, k in self._m.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, n):
        return Divisor(self.curve, {P: n * k for P, k in self._m.items()})

    def __eq__(self, other):
        return isinstance(other, Divisor) and self._m == other._m

    def __hash__(self):
        return hash(frozenset(self._m.items()))

    def translate(self, t):
        """Push every point forward by the translation P -> P + t."""
        return Divisor(self.curve, {P + t: k for P, k in self._m.items()})

    def sum_point(self):
        S = self.curve.O
        for P, k in self._m.items():
            S = S + self.curve.mul(k, P)
        return S

    def pic_class(self):
        return PicClass(self.degree, self.sum_point())

    def __repr__(self):
        if not self._m:
            return "0"
        return " + ".join("%d*%r" % (k, P) for P, k in self.items())

    def to_json(self):
        return [[P.to_json(), k] for P, k in self.items()]


def pic_class(D):
    return D.pic_class()


@dataclass(frozen=True)
class PicClass:
    """Isomorphism class of a line bundle: (degree, group-law sum)."""

    degree: int
    point: CurvePoint

    def __add__(self, other):
        return PicClass(self.degree + other.degree, self.point + other.point)

    def __neg__(self):
        return PicClass(-self.degree, -self.point)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, n):
        return PicClass(n * self.degree, self.curve.mul(n, self.point))

    @property
    def curve(self):
        return self.point.curve

    @property
    def is_trivial(self):
        return self.degree == 0 and self.point.is_infinity

    def translate(self, t):
        """Pullback along translation by t: the sum moves by -degree*t."""
        return PicClass(self.degree, self.point - self.curve.mul(self.degree, t))

    def to_json(self):
        return {"degree": self.degree, "sum": self.point.to_json()}


def translate_class(c, t):
    return c.translate(t)


# ---------------------------------------------------- function-field elements


class FunctionFieldElement:
    """(a(x) + b(x) y) / den(x) in the function field of a curve."""

    __slots__ = ("curve", "a", "b", "den")

    def __init__(self, curve, a, b=(), den=None):
        F = curve.field
        self.curve = curve
        a = ptrim(F(c) for c in a)
        b = ptrim(F(c) for c in b)
        den = ptrim(F(c) for c in (den if den is not None else (F.one,)))
        if not den:
            raise ZeroDivisionError("zero denominator")
        lc = den[-1]
        if lc != 1:
            a, b, den = pscale(a, 1 / lc), pscale(b, 1 / lc), pscale(den, 1 / lc)
        self.a, self.b, self.den = a, b, den

    @classmethod
    def constant(cls, curve, c):
        return cls(curve, (curve.field(c),))

    @classmethod
    def x(cls, curve):
        F = curve.field
        return cls(curve, (F.zero, F.one))

    @classmethod
    def y(cls, curve):
        return cls(curve, (), (curve.field.one,))

    @property
    def u(self):
        """Rational function u(x) = a/den, as (numerator, denominator)."""
        return self.a, self.den

    @property
    def v(self):
        return self.b, self.den

    def is_zero(self):
        return not self.a and not self.b

    def __bool__(self):
        return not self.is_zero()

    def _lift(self, other):
        if isinstance(other, FunctionFieldElement):
            return other
        return FunctionFieldElement.constant(self.curve, other)

    def __add__(self, other):
        o = self._lift(other)
        a = padd(pmul(self.a, o.den), pmul(o.a, self.den))
        b = padd(pmul(self.b, o.den), pmul(o.b, self.den))
        return FunctionFieldElement(self.curve, a, b, pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return FunctionFieldElement(self.curve, pneg(self.a), pneg(self.b), self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        rhs = self.curve.rhs
        a = padd(pmul(self.a, o.a), pmul(pmul(self.b, o.b), rhs))
        b = padd(pmul(self.a, o.b), pmul(self.b, o.a))
        return FunctionFieldElement(self.curve, a, b, pmul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero function")
        # 1/(a + b y) = (a - b y) / (a^2 - b^2 F)
        norm = psub(pmul(self.a, self.a), pmul(pmul(self.b, self.b), self.curve.rhs))
        return FunctionFieldElement(
            self.curve, pmul(self.a, self.den), pneg(pmul(self.b, self.den)), norm
        )

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __eq__(self, other):
        if not isinstance(other, FunctionFieldElement):
            other = self._lift(other)
        return (
            pmul(self.a, other.den) == pmul(other.a, self.den)
            and pmul(self.b, other.den) == pmul(other.b, self.den)
        )

    def __hash__(self):
        return hash(self.den)

    def __repr__(self):
        return "FunctionFieldElement(a=%r, b=%r, den=%r)" % (self.a, self.b, self.den)

    # -- local analysis
    def _series(self, P, prec):
        X, Y = local_expansion(P, prec)
        zero = self.curve.field.zero
        num = seval_poly(self.a, X, prec, zero)
        if self.b:
            num = [s + t for s, t in zip(num, smul(seval_poly(self.b, X, prec, zero), Y, prec))]
        den = seval_poly(self.den, X, prec, zero)
        return num, den

    def ord_at(self, P):
        if self.is_zero():
            raise ValueError("order of the zero function is undefined")
        if P.is_infinity:
            w = max(2 * pdeg(self.a) if self.a else -1, 2 * pdeg(self.b) + 3 if self.b else -1)
            return 2 * pdeg(self.den) - w
        prec = 2 * (len(self.a) + len(self.b) + len(self.den)) + 4
        while True:
            num, den = self._series(P, prec)
            on, od = _first_nonzero(num), _first_nonzero(den)
            if on is not None and od is not None:
                return on - od
            prec *= 2

    def leading(self, P):
        """(order, leading coefficient) of the local expansion at P."""
        k = self.ord_at(P)
        if P.is_infinity:
            # only the x-part can reach the even weight of den
            return k, (self.a[-1] / self.den[-1] if k == 0 else None)
        prec = 2 * (len(self.a) + len(self.b) + len(self.den)) + 4 + abs(k)
        num, den = self._series(P, prec)
        on, od = _first_nonzero(num), _first_nonzero(den)
        return on - od, num[on] / den[od]

    def __call__(self, P):
        return self.evaluate(P)

    def evaluate(self, P):
        """Value at P; raises ZeroDivisionError at a pole."""
        F = self.curve.field
        if not P.is_infinity:
            d = peval(self.den, P.x)
            if d:
                return (peval(self.a, P.x) + peval(self.b, P.x) * P.y) / d
        if self.is_zero():
            return F.zero
        k, c = self.leading(P)
        if k < 0:
            raise ZeroDivisionError("function has a pole at %r" % (P,))
        if k > 0:
            return F.zero
        return c


def _first_nonzero(s):
    for i, c in enumerate(s):
        if c:
            return i
    return None


def local_expansion(P, prec):
    """Series (X(t), Y(t)) of the coordinates in a uniformizer t at affine P.

    t = x - x0 away from 2-torsion, t = y at points with y0 = 0.
    """
    C = P.curve
    F = C.field
    zero, one = F.zero, F.one
    x0, y0 = P.x, P.y
    if y0:
        X = [x0, one] + [zero] * (prec - 2)
        rhs = seval_poly(C.rhs, X, prec, zero)
        Y = [y0] + [zero] * (prec - 1)
        inv2y = 1 / (2 * y0)
        for n in range(1, prec):
            acc = rhs[n]
            for j in range(1, n):
                acc = acc - Y[j] * Y[n - j]
            Y[n] = acc * inv2y
        return X[:prec], Y
    # F(x) = (x - x0) * G(x), G(x) = x^2 + x0 x + (x0^2 + a)
    G = (x0 * x0 + C.a, x0, one)
    Y = [zero, one] + [zero] * (prec - 2)
    t2 = [zero, zero, one][:prec] + [zero] * max(0, prec - 3)
    s = [zero] * prec
    for _ in range(prec):
        Xs = list(s)
        Xs[0] = Xs[0] + x0
        g = seval_poly(G, Xs, prec, zero)
        s = smul(t2, sinv(g, prec), prec)
    X = list(s)
    X[0] = X[0] + x0
    return X[:prec], Y[:prec]


def ord_at(f, P):
    return f.ord_at(P)


def riemann_roch_space(D):
    """A basis of L(D) = {f : div(f) + D >= 0} (plus 0).

    Spanning superset {x^i / den, y x^j / den} with den the product of
    (x - x_P)^{m_P} over affine poles; order conditions are then imposed at
    every affine point where D or den is nonzero.
    """
    C = D.curve
    F = C.field
    if D.degree < 0:
        return []
    den = (F.one,)
    for P, k in D.items():
        if k > 0 and not P.is_infinity:
            for _ in range(k):
                den = pmul(den, (-P.x, F.one))
    weight = D[C.O] + 2 * pdeg(den)
    if weight < 0:
        return []
    xs = [i for i in range(weight // 2 + 1)]
    ys = [j for j in range((weight - 3) // 2 + 1)] if weight >= 3 else []
    nmon = len(xs) + len(ys)
    # constraint points: affine support of D and zeros of den
    pts = {P for P in D.support if not P.is_infinity}
    for P in list(pts):
        if D[P] > 0:
            pts.add(-P)
    rows = []
    for Q in sorted(pts, key=point_sort_key):
        need_den = FunctionFieldElement(C, den).ord_at(Q) if pdeg(den) > 0 else 0
        need = need_den - D[Q]
        if need <= 0:
            continue
        X, Y = local_expansion(Q, need)
        powers = [[F.one] + [F.zero] * (need - 1)]
        for _ in range(max(xs[-1] if xs else 0, ys[-1] if ys else 0)):
            powers.append(smul(powers[-1], X, need))
        cols = [powers[i] for i in xs] + [smul(powers[j], Y, need) for j in ys]
        for k in range(need):
            rows.append([c[k] for c in cols])
    if rows:
        ker = exactlin.kernel(F.array(rows), F)
    else:
        ker = exactlin.Subspace.full(nmon, F)
    basis = []
    for row in ker.basis:
        coeffs = [F.scalar(e) for e in row]
        a = tuple(coeffs[: len(xs)])
        b = tuple(coeffs[len(xs):])
        basis.append(FunctionFieldElement(C, a, b, den))
    return basis


# -------------------------------------------------------------------- helix


def helix_divisor(gd, d, i):
    """Divisor of the i-th helix bundle: sigma^{-2i} D0 + sigma^{-2i-1} D0 - tau^{-i} d.

    ``sigma^{-k} D`` translates every point of D by -k*t; tau = sigma^{s+1}.
    """
    C = gd.curve
    t = gd.t
    return (
        gd.D0.translate(C.mul(-2 * i, t))
        + gd.D0.translate(C.mul(-2 * i - 1, t))
        - d.translate(C.mul(-i * (gd.s + 1), t))
    )


def helix_from_data(gd, d, indices):
    """[(i, divisor, class)] for the helix attached to (gd, d)."""
    out = []
    for i in indices:
        E = helix_divisor(gd, d, i)
        out.append((i, E, E.pic_class()))
    return out


def helix_defect(classes):
    """[L_i] - 2[L_{i+1}] + [L_{i+2}] for consecutive classes."""
    return [
        classes[k] - 2 * classes[k + 1] + classes[k + 2] for k in range(len(classes) - 2)
    ]


def evaluation_matrix(functions, points, field):
    """Matrix whose (j, k) entry is functions[k](points[j])."""
    return field.array([[f.evaluate(Q) for f in functions] for Q in points]).reshape(
        len(points), len(functions)
    )

