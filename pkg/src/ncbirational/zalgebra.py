"""Z-algebras inside the 2-Veronese of a graded algebra.

The check construction turns a graded algebra A into the Z-algebra with
pieces A_{m,n} = A_{n-m}; its 2-Veronese has pieces A_{2(n-m)}. A
sub-Z-algebra is stored as a Subspace of A_{2(n-m)} for every (m, n) in a
window, built from degree-one pieces by taking products.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import exactlin
from .curve import helix_divisor, riemann_roch_space
from .exactlin import Subspace
from .sklyanin import NonGenericData, avatar_values, _eval_functions


@dataclass(frozen=True)
class Window:
    """Row indices m0..m1 and column offsets a = 0..amax."""

    m0: int = 0
    m1: int = 2
    amax: int = 4

    @classmethod
    def parse(cls, text):
        m = re.fullmatch(r"\s*(-?\d+)\.\.(-?\d+),(\d+)\s*", text)
        if not m:
            raise ValueError("window must look like m0..m1,aMax (got %r)" % text)
        m0, m1, amax = map(int, m.groups())
        if m1 < m0:
            raise ValueError("window row range is empty")
        return cls(m0, m1, amax)

    @property
    def rows(self):
        return range(self.m0, self.m1 + 1)

    @property
    def offsets(self):
        return range(self.amax + 1)

    def cells(self):
        return [(m, m + a) for m in self.rows for a in self.offsets]

    @property
    def piece_indices(self):
        """Indices l whose degree-one piece D_{l,l+1} is needed."""
        return range(self.m0, self.m1 + self.amax)

    def __str__(self):
        return "%d..%d,%d" % (self.m0, self.m1, self.amax)


class CheckZAlgebra:
    """The check construction of A, optionally Veronesed: piece (m, n) is A_{step(n-m)}."""

    def __init__(self, A, step=1):
        self.A = A
        self.step = step

    def degree(self, m, n):
        return self.step * (n - m)

    def dim(self, m, n):
        if n < m:
            return 0
        return self.A.dim(self.degree(m, n))

    def piece(self, m, n):
        return Subspace.full(self.dim(m, n), self.A.field)

    def multiply(self, m, n, p, a, b):
        return self.A.multiply_vectors(a, self.degree(m, n), b, self.degree(n, p))


def check_algebra(A):
    return CheckZAlgebra(A, 1)


def veronese(A, step=2):
    return CheckZAlgebra(A, step)


@dataclass
class HilbertTable:
    entries: dict

    def __getitem__(self, key):
        return self.entries[key]

    def rows(self):
        return sorted({m for m, _ in self.entries})

    def to_json(self):
        out = {}
        for (m, a), v in sorted(self.entries.items()):
            out.setdefault(str(m), []).append(v)
        return out


class ZSubalgebra:
    """Subspaces D_{m,n} of A_{2(n-m)} for (m, n) in a window."""

    def __init__(self, A, window, pieces, cells, geometry=None, points=None):
        self.A = A
        self.window = window
        self.degree_one = dict(pieces)
        self.cells = cells
        self.geometry = geometry
        self.points = points
        self.generated_in_degree_one = True

    @property
    def field(self):
        return self.A.field

    def __getitem__(self, key):
        m, n = key
        if n < m:
            return Subspace.zero(0, self.field)
        return self.cells[key]

    def dim(self, m, n):
        return self[m, n].dim

    def product_span(self, m, n, p):
        """span(D_{m,n} * D_{n,p}) inside A_{2(p-m)}."""
        return product_span(self.A, self[m, n], 2 * (n - m), self[n, p], 2 * (p - n))

    def closure_violations(self):
        """Triples (m, n, p) in the window where D_{m,n} D_{n,p} is not D_{m,p}."""
        bad = []
        for m, p in self.window.cells():
            for n in range(m + 1, p):
                if not (self.product_span(m, n, p) == self[m, p]):
                    bad.append((m, n, p))
        return bad


def product_span(A, S, j, T, l):
    F = A.field
    target = A.dim(j + l)
    if S.dim == 0 or T.dim == 0:
        return Subspace.zero(target, F)
    cols = []
    for c in T.basis:
        R = A.right_mult(c, l, j)
        cols.append(F.matmul(R, S.basis.T))
    return Subspace(np.concatenate(cols, axis=1).T, target, F)


def vanishing_points(gd, d, m):
    """tau^{-m} d: the points of d moved by -m (s+1) t."""
    C = gd.curve
    shift = C.mul(-m * (gd.s + 1), gd.t)
    pts = []
    for P, k in d.items():
        if k != 1:
            raise NonGenericData("vanishing points must be distinct")
        pts.append(C.add(P, shift))
    return pts


def degree_one_piece(A, gd, d, m):
    """{a in A_2 : the avatar of a at base 2m vanishes on tau^{-m} d}."""
    expected_deg = 3 if gd.kind == "quadratic" else 1
    if d.degree != expected_deg or not d.is_effective():
        raise NonGenericData("d must be effective of degree %d" % expected_deg)
    pts = vanishing_points(gd, d, m)
    try:
        M = avatar_values(A, gd, 2 * m, 2, pts)
    except ZeroDivisionError:
        raise NonGenericData("a vanishing point meets a pole of the sections")
    S = exactlin.kernel(M, A.field)
    if S.dim != 3:
        raise NonGenericData(
            "degree-one piece at index %d has dimension %d, expected 3" % (m, S.dim)
        )
    return S


def generate(A, pieces, window, geometry=None, points=None):
    """D_{m,n} = span of products D_{m,m+1} ... D_{n-1,n}."""
    need = 2 * window.amax
    if need > A.top:
        raise ValueError("window needs degree %d but A is materialized to %d" % (need, A.top))
    F = A.field
    cells = {}
    last = window.m1 + window.amax
    # rows past m1 are kept too: closure checks need D_{n,p} for window triples
    for m in range(window.m0, last):
        cur = Subspace.full(1, F)
        cells[(m, m)] = cur
        for a in range(1, min(window.amax, last - m) + 1):
            cur = product_span(A, cur, 2 * (a - 1), pieces[m + a - 1], 2)
            cells[(m, m + a)] = cur
    return ZSubalgebra(A, window, pieces, cells, geometry, points)


def build_D(A, gd, d, window=Window()):
    pieces = {l: degree_one_piece(A, gd, d, l) for l in window.piece_indices}
    return generate(A, pieces, window, gd, d)


def hilbert_table(D):
    return HilbertTable({(m, n - m): D.dim(m, n) for m, n in D.window.cells()})


def colength_table(D):
    return HilbertTable(
        {(m, n - m): D.A.dim(2 * (n - m)) - D.dim(m, n) for m, n in D.window.cells()}
    )


def expected_dim(a):
    return (a + 1) * (a + 2) // 2


def expected_colength(kind, a):
    return 3 * a * (a + 1) // 2 if kind == "quadratic" else a * (a + 1) // 2


# --------------------------------------------------------------- relations


def quadratic_relations(D, m):
    """ker(D_{m,m+1} (x) D_{m+1,m+2} -> D_{m,m+2}); coordinate i*dim2 + j pairs
    basis element i of D_{m,m+1} with basis element j of D_{m+1,m+2}."""
    A, F = D.A, D.field
    S, T = D[m, m + 1], D[m + 1, m + 2]
    cols = []
    for b in S.basis:
        for c in T.basis:
            cols.append(A.multiply_vectors(b, 2, c, 2))
    M = np.array(cols, dtype=F.dtype).T
    return exactlin.kernel(M, F)


@dataclass
class RelationComparison:
    index: int
    dim_D: int
    dim_curve: int
    transport_invertible: bool
    equal: bool


def avatar_transport(D, gd, d, m, points):
    """Matrix T with T @ (D_{m,m+1} coords) = coords in the RR basis of L(E_m)."""
    F = D.field
    E = helix_divisor(gd, d, m)
    basis = riemann_roch_space(E)
    E_rr = _eval_functions(basis, points, F)
    E_D = F.matmul(avatar_values(D.A, gd, 2 * m, 2, points), D[m, m + 1].basis.T)
    T = exactlin.solve(E_rr, E_D, F)
    if T is None:
        raise RuntimeError("avatars of D_{%d,%d} are not sections of L(E_%d)" % (m, m + 1, m))
    return T, basis


def curve_relations(basis0, basis1, points, F):
    """ker(L(E_m) (x) L(E_{m+1}) -> L(E_m + E_{m+1})), lexicographic coordinates."""
    V0 = _eval_functions(basis0, points, F)
    V1 = _eval_functions(basis1, points, F)
    cols = [F.reduce(V0[:, i] * V1[:, j]) for i in range(V0.shape[1]) for j in range(V1.shape[1])]
    return exactlin.kernel(np.array(cols, dtype=F.dtype).T, F)


def compare_relations(D, gd, d, m):
    F = D.field
    pts = gd.sample_points(20, range(2 * m, 2 * m + 4))
    T0, b0 = avatar_transport(D, gd, d, m, pts)
    T1, b1 = avatar_transport(D, gd, d, m + 1, pts)
    R_D = quadratic_relations(D, m)
    R_Y = curve_relations(b0, b1, pts, F)
    inv = exactlin.rank(T0, F) == T0.shape[0] == T0.shape[1] and exactlin.rank(T1, F) == T1.shape[0] == T1.shape[1]
    K = _kron(T0, T1, F)
    moved = Subspace(F.matmul(K, R_D.basis.T).T, R_Y.ambient, F) if R_D.dim else Subspace.zero(R_Y.ambient, F)
    equal = R_D.dim == moved.dim and moved <= R_Y and R_Y <= moved
    return RelationComparison(m, R_D.dim, R_Y.dim, bool(inv), bool(equal))


def _kron(X, Y, F):
    out = F.zeros((X.shape[0] * Y.shape[0], X.shape[1] * Y.shape[1]))
    for i in range(X.shape[0]):
        for j in range(X.shape[1]):
            out[i * Y.shape[0] : (i + 1) * Y.shape[0], j * Y.shape[1] : (j + 1) * Y.shape[1]] = F.reduce(X[i, j] * Y)
    return out


# ------------------------------------------------------------------- D -> D_Y


@dataclass
class DYCell:
    m: int
    n: int
    source_dim: int
    target_dim: int
    rank: int
    lands_in_target: bool

    @property
    def kernel_dim(self):
        return self.source_dim - self.rank

    @property
    def surjective(self):
        return self.rank == self.target_dim

    def to_json(self):
        return {
            "m": self.m,
            "n": self.n,
            "dim_D": self.source_dim,
            "dim_DY": self.target_dim,
            "rank": self.rank,
            "kernel": self.kernel_dim,
            "surjective": self.surjective,
            "lands_in_target": self.lands_in_target,
        }


def dy_divisor(gd, d, m, n):
    """Delta_{2m,2n} - sum_{l=m}^{n-1} tau^{-l} d."""
    C = gd.curve
    T = gd.delta(2 * m, 2 * n)
    for l in range(m, n):
        T = T - d.translate(C.mul(-l * (gd.s + 1), gd.t))
    return T


def map_to_DY(D, gd, d, explicit_rr=False):
    """Per-cell rank and kernel of D_{m,n} -> L(Delta_{2m,2n} - sum tau^{-l} d)."""
    F = D.field
    out = []
    for m, n in D.window.cells():
        a = n - m
        if a == 0:
            continue
        S = D[m, n]
        T = dy_divisor(gd, d, m, n)
        target = len(riemann_roch_space(T)) if explicit_rr else max(T.degree, 0)
        pts = gd.sample_points(2 * gd.r * a + 4, range(2 * m, 2 * n))
        vals = F.matmul(avatar_values(D.A, gd, 2 * m, 2 * a, pts), S.basis.T)
        rank = exactlin.rank(vals, F)
        zeros = [P for l in range(m, n) for P in vanishing_points(gd, d, l)]
        zvals = F.matmul(avatar_values(D.A, gd, 2 * m, 2 * a, zeros), S.basis.T)
        out.append(DYCell(m, n, S.dim, target, rank, not np.any(zvals != 0)))
    return out


# ---------------------------------------------------------------- certificate


@dataclass
class Certificate:
    passed: bool
    clauses: list = dc_field(default_factory=list)

    @property
    def failed_clause(self):
        for name, ok, _ in self.clauses:
            if not ok:
                return name
        return None

    @property
    def verdict(self):
        return "PASS" if self.passed else "FAIL"

    def to_json(self):
        return {
            "verdict": self.verdict,
            "failed_clause": self.failed_clause,
            "clauses": [{"name": n, "ok": ok, "detail": det} for n, ok, det in self.clauses],
        }


def helix_conditions(gd, d, indices):
    """(ok, detail) for the elliptic helix conditions on the classes [E_i]."""
    classes = [helix_divisor(gd, d, i).pic_class() for i in indices]
    degs = [c.degree for c in classes]
    defects = [
        (classes[k] - 2 * classes[k + 1] + classes[k + 2]).is_trivial
        for k in range(len(classes) - 2)
    ]
    distinct = classes[0] != classes[1]
    ok = all(x == 3 for x in degs) and distinct and all(defects)
    return ok, {"degrees": degs, "L0_ne_L1": distinct, "defect_trivial": defects}


def collinear_indices(gd, d, indices):
    """Indices m where the points d - m t (the base-0 form of the conditions on
    D_{m,m+1}) lie on a line of the plane embedding by L(D0)."""
    C = gd.curve
    target = gd.D0.sum_point()
    return [m for m in indices if d.sum_point() - C.mul(3 * m, gd.t) == target]


def certify_as_regular(D, helix=None):
    """PASS iff the non-collinearity hypothesis (quadratic ambient), Hilbert table,
    generation in degree one, relations and helix conditions all hold.

    Clauses are evaluated in order and the report stops at the first failure.
    """
    gd, d, W = D.geometry, D.points, D.window
    if W.amax < 4:
        raise ValueError("certification needs at least five columns (aMax >= 4)")
    clauses = []

    if gd.kind == "quadratic":
        # the resolution argument needs non-collinear points at every index;
        # collinear data is not detected by the dimension clauses below
        bad = collinear_indices(gd, d, W.piece_indices)
        clauses.append(("non_collinear", not bad, {"collinear_at": bad}))
        if bad:
            return Certificate(False, clauses)

    table = hilbert_table(D)
    bad = {"%d,%d" % k: v for k, v in table.entries.items() if v != expected_dim(k[1])}
    clauses.append(("hilbert", not bad, {"mismatches": bad}))
    if bad:
        return Certificate(False, clauses)

    viol = D.closure_violations()
    clauses.append(("generated_in_degree_one", not viol, {"violations": viol}))
    if viol:
        return Certificate(False, clauses)

    comps = [compare_relations(D, gd, d, m) for m in W.rows]
    ok = all(c.dim_D == 3 and c.dim_curve == 3 and c.transport_invertible and c.equal for c in comps)
    clauses.append(
        (
            "relations",
            ok,
            {"indices": [c.index for c in comps], "dims": [c.dim_D for c in comps],
             "match": [c.equal for c in comps]},
        )
    )
    if not ok:
        return Certificate(False, clauses)

    indices = helix if helix is not None else list(range(W.m0, W.m1 + 3))
    ok, detail = helix_conditions(gd, d, indices)
    clauses.append(("helix", ok, detail))
    return Certificate(ok, clauses)
