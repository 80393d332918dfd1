"""Connected graded algebras given by generators and relations.

An algebra is materialized degree by degree: A_{n+1} is the quotient of
A_n (x) V by the image of A_{n+1-s} (x) R, so the free algebra is never
expanded. Each basis element of A_{n+1} is the class of a pair
(basis element of A_n, generator), which makes every basis element a word.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from . import exactlin
from .exactlin import Subspace


class DegreeOverflow(ValueError):
    """Requested degree lies beyond the materialized bound."""


class TruncationError(ValueError):
    pass


@dataclass(frozen=True)
class GradedPresentation:
    """r degree-one generators and a space of relations in V^{(x) s}.

    Relation coordinates use the lexicographic word order:
    the word (x_1, ..., x_s) has index sum x_l r^(s-l).
    """

    field: object
    ngens: int
    relation_degree: int
    relations: Subspace
    name: str = ""

    def __post_init__(self):
        if self.relations.ambient != self.ngens**self.relation_degree:
            raise ValueError("relations must live in V^(x)%d" % self.relation_degree)

    @property
    def shape(self):
        return (self.ngens, self.relation_degree, self.relations.dim)

    def is_as_shape(self):
        return self.shape in {(3, 2, 3), (2, 3, 2)}


def word_index(word, r):
    k = 0
    for x in word:
        k = k * r + x
    return k


def commutative_presentation(field, r=3):
    """Polynomial ring in r variables: relations x_i x_j - x_j x_i."""
    rows = []
    for i in range(r):
        for j in range(i + 1, r):
            v = [0] * (r * r)
            v[word_index((i, j), r)] = 1
            v[word_index((j, i), r)] = -1
            rows.append(v)
    F = exactlin.make_field(field)
    return GradedPresentation(F, r, 2, Subspace(F.array(rows), r * r, F), "polynomial")


class GradedAlgebra:
    """Degreewise materialization of a presented algebra up to ``top``."""

    def __init__(self, presentation, top):
        s = presentation.relation_degree
        if top < s + 1:
            raise ValueError("truncation must be at least s+1 = %d" % (s + 1))
        self.presentation = presentation
        self.field = presentation.field
        self.r = presentation.ngens
        self.s = s
        self.top = top
        self.geometry = None
        self.dims = [1]
        self.lifts = [[]]
        self._right = []  # _right[n][x]: A_n -> A_{n+1}
        self._build()

    # -- construction
    def _build(self):
        F, r, s = self.field, self.r, self.s
        rel = self.presentation.relations.basis
        words = [self._digits(k, s) for k in range(r**s)]
        for n in range(self.top):
            dn = self.dims[n]
            amb = dn * r
            base = n + 1 - s
            if base < 0 or rel.shape[0] == 0:
                proj = F.identity(amb)
                quotient = list(range(amb))
            else:
                rows = []
                for k in range(self.dims[base]):
                    e = F.zeros(self.dims[base])
                    e[k] = 1
                    # e * x_1 ... x_{s-1} for every prefix, then tensor the last letter
                    prefix = {(): e}
                    for length in range(1, s):
                        nxt = {}
                        for w, vec in prefix.items():
                            for x in range(r):
                                nxt[w + (x,)] = F.matmul(self._right[base + length - 1][x], vec)
                        prefix = nxt
                    for rho in rel:
                        v = F.zeros(amb)
                        for idx in np.nonzero(rho)[0]:
                            w = words[idx]
                            v[w[-1]::r] = F.reduce(v[w[-1]::r] + rho[idx] * prefix[w[:-1]])
                        rows.append(v)
                W = Subspace(np.array(rows, dtype=F.dtype), amb, F)
                proj = W.quotient_map()
                quotient = W.complement_indices()
            self._right.append([proj[:, x::r] for x in range(r)])
            self.dims.append(len(quotient))
            self.lifts.append([(c // r, c % r) for c in quotient])

    def _digits(self, k, length):
        out = []
        for _ in range(length):
            out.append(k % self.r)
            k //= self.r
        return tuple(reversed(out))

    # -- queries
    def dim(self, n):
        self._check(n)
        return self.dims[n] if n >= 0 else 0

    def hilbert(self, upto=None):
        return list(self.dims[: (self.top if upto is None else upto) + 1])

    def _check(self, n):
        if n > self.top:
            raise DegreeOverflow("degree %d exceeds materialized bound %d" % (n, self.top))

    def right(self, n, x):
        """Matrix of right multiplication by generator x, A_n -> A_{n+1}."""
        self._check(n + 1)
        return self._right[n][x]

    def word(self, n, k):
        """The monomial (tuple of generator indices) lifting basis element k of A_n."""
        w = []
        while n > 0:
            k, x = self.lifts[n][k]
            w.append(x)
            n -= 1
        return tuple(reversed(w))

    def word_maps(self, j, l):
        """Array M with M[k] the matrix of a -> a * (basis word k of A_l) on A_j."""
        return self._word_maps(j, l)

    @lru_cache(maxsize=256)
    def _word_maps(self, j, l):
        self._check(j + l)
        F = self.field
        maps = [F.identity(self.dims[j])]
        for m in range(1, l + 1):
            maps = [F.matmul(self._right[j + m - 1][x], maps[kp]) for kp, x in self.lifts[m]]
        return np.array(maps, dtype=F.dtype).reshape(len(maps), self.dims[j + l], self.dims[j])

    def right_mult(self, b, l, j):
        """Matrix of a -> a*b on A_j for b in A_l (coordinate vector)."""
        M = self.word_maps(j, l)
        return self.field.reduce(np.tensordot(np.asarray(b, dtype=self.field.dtype), M, axes=(0, 0)))

    def left_mult(self, a, j, l):
        """Matrix of c -> a*c on A_l for a in A_j: column k is a * word_k."""
        self._check(j + l)
        F = self.field
        cols = np.asarray(a, dtype=F.dtype).reshape(-1, 1)
        for m in range(1, l + 1):
            images = [F.matmul(self._right[j + m - 1][x], cols) for x in range(self.r)]
            cols = np.stack([images[x][:, kp] for kp, x in self.lifts[m]], axis=1)
            cols = cols.reshape(self.dims[j + m], self.dims[m])
        return cols

    def multiply_vectors(self, a, j, b, l):
        return self.field.matmul(self.left_mult(a, j, l), np.asarray(b, dtype=self.field.dtype))

    def element(self, n, coords):
        return GradedElement(self, n, np.asarray(self.field.reduce(np.asarray(coords, dtype=self.field.dtype))))

    def one(self):
        return self.element(0, [1])

    def generator(self, x):
        v = self.field.zeros(self.r)
        v[x] = 1
        return self.element(1, v)

    def basis_element(self, n, k):
        v = self.field.zeros(self.dims[n])
        v[k] = 1
        return self.element(n, v)

    def random_element(self, n, rng):
        return self.element(n, self.field.random_array((self.dims[n],), rng))

    def left_generator_mult(self, x, n):
        """Matrix of c -> x*c on A_n for a generator x."""
        e = self.field.zeros(self.r)
        e[x] = 1
        return self.left_mult(e, 1, n)


@dataclass(frozen=True, eq=False)
class GradedElement:
    algebra: GradedAlgebra
    degree: int
    coords: np.ndarray = dc_field(repr=False)

    def __mul__(self, other):
        if isinstance(other, GradedElement):
            A = self.algebra
            if self.degree + other.degree > A.top:
                raise DegreeOverflow(
                    "product degree %d exceeds bound %d" % (self.degree + other.degree, A.top)
                )
            v = A.multiply_vectors(self.coords, self.degree, other.coords, other.degree)
            return GradedElement(A, self.degree + other.degree, v)
        return self.algebra.element(self.degree, self.coords * self.algebra.field.entry(other))

    def __rmul__(self, c):
        return self.algebra.element(self.degree, self.coords * self.algebra.field.entry(c))

    def __add__(self, other):
        if other.degree != self.degree:
            raise ValueError("elements are not homogeneous of the same degree")
        return self.algebra.element(self.degree, self.coords + other.coords)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __eq__(self, other):
        return (
            isinstance(other, GradedElement)
            and self.degree == other.degree
            and np.array_equal(self.coords, other.coords)
        )

    def is_zero(self):
        return not np.any(self.coords != 0)


def materialize(presentation, N):
    return GradedAlgebra(presentation, N)


def multiply(a, b):
    return a * b


def central_element(A, degree):
    """{z in A_degree : z x = x z for every generator x} as a subspace."""
    F = A.field
    blocks = [
        F.reduce(A.right(degree, x) - A.left_generator_mult(x, degree)) for x in range(A.r)
    ]
    return exactlin.kernel(np.concatenate(blocks, axis=0), F)


def left_image_dim(A, g, gdeg, n):
    """dim g*A_n."""
    return exactlin.rank(A.left_mult(g, gdeg, n), A.field)


# ------------------------------------------------------------------ modules


class FreeModule:
    """Direct sum of shifted copies A(-d), truncated at the algebra's bound."""

    def __init__(self, A, shifts, top=None):
        self.A = A
        self.shifts = list(shifts)
        self.top = A.top if top is None else top
        self.field = A.field

    def dim(self, n):
        return sum(self.A.dims[n - d] for d in self.shifts if 0 <= n - d <= self.A.top)

    def offsets(self, n):
        out, k = [], 0
        for d in self.shifts:
            out.append(k)
            if 0 <= n - d <= self.A.top:
                k += self.A.dims[n - d]
        return out

    def act(self, n, x):
        F = self.field
        M = F.zeros((self.dim(n + 1), self.dim(n)))
        r0, c0 = 0, 0
        for d in self.shifts:
            src = n - d
            rows = self.A.dims[src + 1] if 0 <= src + 1 <= self.A.top else 0
            cols = self.A.dims[src] if 0 <= src <= self.A.top else 0
            if rows and cols:
                M[r0 : r0 + rows, c0 : c0 + cols] = self.A.right(src, x)
            r0 += rows
            c0 += cols
        return M

    def generator_vector(self, j):
        v = self.field.zeros(self.dim(self.shifts[j]))
        v[self.offsets(self.shifts[j])[j]] = 1
        return v


class PointModuleData:
    """Right module with one-dimensional pieces k e_n, n = 0..N.

    ``functionals[n][x]`` is the scalar with e_n * x = functionals[n][x] e_{n+1}.
    """

    def __init__(self, A, q, functionals):
        self.A = A
        self.q = q
        self.field = A.field
        self.functionals = [np.asarray(f, dtype=A.field.dtype) for f in functionals]
        self.top = len(self.functionals)

    def dim(self, n):
        return 1 if 0 <= n <= self.top else 0

    def hilbert(self):
        return [self.dim(n) for n in range(self.top + 1)]

    def act(self, n, x):
        if 0 <= n < self.top:
            return np.array([[self.functionals[n][x]]], dtype=self.field.dtype)
        return self.field.zeros((self.dim(n + 1), self.dim(n)))

    def annihilator(self, n=0):
        """Degree-one annihilator of e_n: {v in V : e_n v = 0}."""
        return exactlin.kernel(self.functionals[n].reshape(1, -1), self.field)

    def action_of(self, n, a, deg):
        """Scalar c with e_n * a = c e_{n+deg} for a in A_deg."""
        vec = np.ones(1, dtype=self.field.dtype)
        out = orbit_matrix(self, n, vec, deg)
        return self.field.matmul(out, np.asarray(a, dtype=self.field.dtype))[0]


class DirectSum:
    def __init__(self, modules):
        self.modules = list(modules)
        self.A = self.modules[0].A
        self.field = self.modules[0].field
        self.top = min(m.top for m in self.modules)

    def dim(self, n):
        return sum(m.dim(n) for m in self.modules)

    def act(self, n, x):
        F = self.field
        M = F.zeros((self.dim(n + 1), self.dim(n)))
        r0, c0 = 0, 0
        for m in self.modules:
            blk = m.act(n, x)
            M[r0 : r0 + blk.shape[0], c0 : c0 + blk.shape[1]] = blk
            r0 += blk.shape[0]
            c0 += blk.shape[1]
        return M


def point_module(A, q, N):
    """Point module of q (requires ``A.geometry``, set by the Sklyanin builder)."""
    if A.geometry is None:
        raise ValueError("point modules need an algebra built from geometric data")
    from .sklyanin import point_functionals

    return PointModuleData(A, q, point_functionals(A.geometry, q, N))


def orbit_matrix(M, d, v, l):
    """Columns v * w for the basis words w of A_l, v in M_d."""
    A = M.A
    F = A.field
    cols = np.asarray(v, dtype=F.dtype).reshape(-1, 1)
    for m in range(1, l + 1):
        images = [F.matmul(M.act(d + m - 1, x), cols) for x in range(A.r)]
        cols = np.stack([images[x][:, kp] for kp, x in A.lifts[m]], axis=1)
        cols = cols.reshape(M.dim(d + m), A.dims[m])
    return cols


@dataclass
class BettiTable:
    """Graded Betti numbers: ``steps[i]`` maps degree -> count (None = undetermined)."""

    steps: list
    truncation: int
    submodule_dims: list

    def shape(self):
        return [dict(s) if s is not None else None for s in self.steps]

    def nonzero_steps(self):
        return [s for s in self.steps if s]

    def to_json(self):
        return {
            "truncation": self.truncation,
            "steps": [
                None if s is None else {str(k): v for k, v in sorted(s.items())} for s in self.steps
            ],
        }

    def __str__(self):
        parts = []
        for s in self.steps:
            if s is None:
                parts.append("?")
            elif s:
                parts.append(" + ".join("%d(-%d)" % (v, k) for k, v in sorted(s.items())))
        return " <- ".join(parts) if parts else "0"


def _span_image(M, spaces, n):
    """span of S_{n-1} * V inside M_n."""
    F = M.field
    prev = spaces.get(n - 1)
    if prev is None or prev.dim == 0:
        return Subspace.zero(M.dim(n), F)
    A = M.A
    rows = [F.matmul(M.act(n - 1, x), prev.basis.T).T for x in range(A.r)]
    return Subspace(np.concatenate(rows, axis=0), M.dim(n), F)


def generated_submodule(M, gens, N):
    """Degreewise spaces of the submodule of M generated by ``gens``.

    ``gens`` is a list of (degree, vector in M_degree). Returns
    ``(spaces, minimal)`` with ``minimal`` a minimal generating list.
    """
    F = M.field
    spaces, minimal = {}, []
    lo = min((d for d, _ in gens), default=N + 1)
    for n in range(lo, N + 1):
        S = _span_image(M, spaces, n)
        for d, v in gens:
            if d == n and not S.contains(v):
                S = S + Subspace(np.asarray(v, dtype=F.dtype).reshape(1, -1), M.dim(n), F)
                minimal.append((n, np.asarray(v, dtype=F.dtype)))
        spaces[n] = S
    return spaces, minimal


def _minimal_generators(M, spaces, N):
    minimal = []
    todo = sorted(spaces)
    done = {}
    for n in todo:
        S = _span_image(M, done, n)
        K = spaces[n]
        for row in K.basis:
            if not S.contains(row):
                S = S + Subspace(row.reshape(1, -1), K.ambient, M.field)
                minimal.append((n, row))
        done[n] = K
    return minimal


def betti_table(A, M, gens, steps, N):
    """Graded Betti numbers of the submodule of M generated by ``gens``.

    Computed by exact linear algebra through degree N; a step whose
    generators must all lie above N is reported as undetermined (None).
    """
    if N > A.top:
        raise TruncationError("truncation %d exceeds the algebra bound %d" % (N, A.top))
    F = A.field
    spaces, minimal = generated_submodule(M, gens, N)
    table = [dict()]
    dims = [[spaces[n].dim if n in spaces else 0 for n in range(N + 1)]]
    for d, _ in minimal:
        table[0][d] = table[0].get(d, 0) + 1
    target = M
    for i in range(1, steps + 1):
        if not minimal:
            table.append({})
            dims.append([0] * (N + 1))
            continue
        lowest = min(d for d, _ in minimal) + 1
        if lowest > N:
            table.append(None)
            dims.append(None)
            minimal = []
            continue
        shifts = [d for d, _ in minimal]
        free = FreeModule(A, shifts, N)
        kern = {}
        for n in range(min(shifts), N + 1):
            blocks = []
            for d, v in minimal:
                if n - d >= 0:
                    blocks.append(orbit_matrix(target, d, v, n - d))
            phi = np.concatenate(blocks, axis=1) if blocks else F.zeros((target.dim(n), 0))
            kern[n] = exactlin.kernel(phi, F) if phi.shape[1] else Subspace.zero(0, F)
        minimal = _minimal_generators(free, kern, N)
        step = {}
        for d, _ in minimal:
            step[d] = step.get(d, 0) + 1
        table.append(step)
        dims.append([kern[n].dim if n in kern else 0 for n in range(N + 1)])
        target = free
    return BettiTable(table, N, dims)


def point_ideal(P, n):
    """I_n = {a in A_n : e_0 a = 0} for a point module P."""
    row = orbit_matrix(P, 0, np.ones(1, dtype=P.field.dtype), n)
    return exactlin.kernel(row, P.field)


@dataclass
class ExtendedComplexCheck:
    """Betti data of J = I_2 A inside A, and the defect dim I_n - dim J_n."""

    betti: BettiTable
    defect: list

    def to_json(self):
        return {"betti": self.betti.to_json(), "defect": list(self.defect)}


def extended_complex_check(A, P, N, steps=3):
    """Compare ker(A -> P) with the right ideal generated by its degree-2 part.

    For a point module of a cubic regular algebra the generated ideal J has
    the Betti shape of the complex A(-5) -> A(-4)^2 + A(-3) -> A(-2)^3 -> A,
    and the cohomology at A, dim I_n - dim J_n, is one-dimensional in degree 1.
    """
    I2 = point_ideal(P, 2)
    free = FreeModule(A, [0], N)
    gens = [(2, row) for row in I2.basis]
    table = betti_table(A, free, gens, steps, N)
    spaces, _ = generated_submodule(free, gens, N)
    defect = []
    for n in range(N + 1):
        In = point_ideal(P, n).dim if n > 0 else 0
        Jn = spaces[n].dim if n in spaces else 0
        defect.append(In - Jn)
    return ExtendedComplexCheck(table, defect)
