import itertools
import random
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ncbirational import exactlin, freealg
from ncbirational.exactlin import PrimeField, Subspace
from ncbirational.freealg import (
    DegreeOverflow, DirectSum, FreeModule, GradedPresentation, betti_table, central_element,
    commutative_presentation, extended_complex_check, left_image_dim, materialize, point_ideal,
    point_module,
)

F = PrimeField()
CUBIC_DIMS = [1, 2, 4, 6, 9, 12, 16, 20, 25, 30, 36, 42, 49]


def word_image(A, word):
    v = np.ones(1, dtype=np.int64)
    for k, x in enumerate(word):
        v = F.matmul(A.right(k, x), v)
    return v


def free_ideal(P, n):
    """Span of u rho v in V^{(x)n}, the degree-n part of the two-sided ideal."""
    r, s = P.ngens, P.relation_degree
    rows = []
    for left in range(n - s + 1):
        right = n - s - left
        for rho in P.relations.basis:
            for u in itertools.product(range(r), repeat=left):
                for v in itertools.product(range(r), repeat=right):
                    row = np.zeros(r**n, dtype=np.int64)
                    for k in np.nonzero(rho)[0]:
                        mid = tuple(int(c) for c in np.base_repr(k, r).zfill(s))
                        row[freealg.word_index(u + mid + v, r)] = rho[k]
                    rows.append(row)
    return Subspace(np.array(rows, dtype=np.int64).reshape(-1, r**n), r**n, F)


def test_polynomial_ring():
    A = materialize(commutative_presentation(F), 6)
    assert A.dims == [comb(n + 2, 2) for n in range(7)]
    assert central_element(A, 1).dim == 3


def test_presentation_shape_invariant(quad_algebra, cubic_algebra):
    assert quad_algebra.presentation.shape == (3, 2, 3)
    assert cubic_algebra.presentation.shape == (2, 3, 2)
    assert quad_algebra.presentation.is_as_shape()
    with pytest.raises(ValueError):
        GradedPresentation(F, 3, 2, Subspace.zero(8, F))


def test_quadratic_hilbert(quad_algebra):
    assert quad_algebra.dims == [comb(n + 2, 2) for n in range(11)]
    assert quad_algebra.dim(3) == 10


def test_cubic_hilbert(cubic_algebra):
    assert cubic_algebra.dims == CUBIC_DIMS
    assert cubic_algebra.dim(4) == 9


@pytest.mark.parametrize("which,top", [("quad", 4), ("cubic", 6)])
def test_materialization_matches_free_quotient(which, top, quad_algebra, cubic_algebra):
    # oracle: the full free algebra in degree n modulo the two-sided ideal
    A = quad_algebra if which == "quad" else cubic_algebra
    for n in range(1, top + 1):
        I = free_ideal(A.presentation, n)
        words = list(itertools.product(range(A.r), repeat=n))
        phi = np.array([word_image(A, w) for w in words], dtype=np.int64).T
        assert A.r**n - I.dim == A.dim(n)
        assert exactlin.rank(phi, F) == A.dim(n)
        if I.dim:
            assert not np.any(F.matmul(phi, I.basis.T))


def test_products_match_word_concatenation(quad_algebra):
    A = quad_algebra
    rng = random.Random(4)
    for _ in range(20):
        u = tuple(rng.randrange(3) for _ in range(rng.randrange(1, 4)))
        v = tuple(rng.randrange(3) for _ in range(rng.randrange(1, 4)))
        lhs = A.multiply_vectors(word_image(A, u), len(u), word_image(A, v), len(v))
        assert np.array_equal(lhs, word_image(A, u + v))


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32), i=st.integers(0, 2), j=st.integers(0, 2), k=st.integers(0, 2))
def test_associativity(seed, i, j, k, quad_algebra):
    A, rng = quad_algebra, random.Random(seed)
    a, b, c = (A.random_element(n, rng) for n in (i, j, k))
    assert (a * b) * c == a * (b * c)


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 2**32))
def test_associativity_cubic(seed, cubic_algebra):
    A, rng = cubic_algebra, random.Random(seed)
    a, b, c = (A.random_element(n, rng) for n in (2, 1, 3))
    assert (a * b) * c == a * (b * c)


def test_unit_and_overflow(quad_algebra):
    A = quad_algebra
    b = A.random_element(3, random.Random(0))
    assert A.one() * b == b and b * A.one() == b
    with pytest.raises(DegreeOverflow):
        A.random_element(6, random.Random(1)) * A.random_element(5, random.Random(2))


@pytest.mark.parametrize("which", ["quad", "cubic"])
def test_central_element_and_regularity(which, quad_algebra, cubic_algebra):
    A = quad_algebra if which == "quad" else cubic_algebra
    s = A.s
    assert [central_element(A, k).dim for k in range(1, s + 2)] == [0] * s + [1]
    g = A.element(s + 1, central_element(A, s + 1).basis[0])
    for x in range(A.r):
        assert g * A.generator(x) == A.generator(x) * g
    for n in range(A.top - s):
        assert left_image_dim(A, g.coords, s + 1, n) == A.dim(n)
    for n in range(1, A.top + 1):
        img = left_image_dim(A, g.coords, s + 1, n - s - 1) if n > s else 0
        assert A.dim(n) - img == A.r * n


def test_point_module(quad_algebra, quad_config):
    A, gd = quad_algebra, quad_config[0]
    C = gd.curve
    rng = random.Random(9)
    q1, q2 = C.random_point(rng), C.random_point(rng)
    P1, P2 = point_module(A, q1, 8), point_module(A, q2, 8)
    assert P1.hilbert() == [1] * 9
    g = central_element(A, 3).basis[0]
    for n in range(6):
        assert P1.action_of(n, g, 3) == 0
    assert not (P1.annihilator() == P2.annihilator())


def test_betti_free_module(quad_algebra):
    A = quad_algebra
    M = FreeModule(A, [0])
    table = betti_table(A, M, [(0, np.ones(1, dtype=np.int64))], 2, 6)
    assert table.steps == [{0: 1}, {}, {}]


def test_koszul_resolution_of_polynomial_ring():
    A = materialize(commutative_presentation(F), 6)
    gens = [(1, row) for row in np.eye(3, dtype=np.int64)]
    table = betti_table(A, FreeModule(A, [0]), gens, 3, 6)
    assert table.steps == [{1: 3}, {2: 3}, {3: 1}, {}]


def _noncollinear(gd, rng):
    C = gd.curve
    while True:
        qs = [C.random_point(rng) for _ in range(3)]
        if len(set(qs)) == 3 and qs[0] + qs[1] + qs[2] != gd.D0.sum_point():
            return qs


def test_betti_three_point_modules(quad_algebra, quad_config):
    A, gd = quad_algebra, quad_config[0]
    qs = _noncollinear(gd, random.Random(17))
    M = DirectSum([point_module(A, q, 8) for q in qs])
    table = betti_table(A, M, [(0, np.ones(3, dtype=np.int64))], 3, 8)
    assert table.steps == [{0: 1}, {2: 3}, {3: 2}, {}]


def test_cubic_point_module_resolution(cubic_algebra, cubic_config):
    A, pts = cubic_algebra, cubic_config[1]
    P = point_module(A, pts[0], 8)
    table = betti_table(A, P, [(0, np.ones(1, dtype=np.int64))], 3, 8)
    assert table.steps == [{0: 1}, {1: 1, 2: 1}, {3: 1}, {}]
    assert point_ideal(P, 1).dim == 1


def test_extended_complex(cubic_algebra, cubic_config):
    A, pts = cubic_algebra, cubic_config[1]
    ec = extended_complex_check(A, point_module(A, pts[0], 8), 8)
    assert ec.betti.steps == [{2: 3}, {3: 1, 4: 2}, {5: 1}, {}]
    assert ec.defect == [0, 1] + [0] * 7


def test_undetermined_step_reported(quad_algebra):
    A = quad_algebra
    table = betti_table(A, FreeModule(A, [0]), [(3, F.identity(10)[0])], 2, 3)
    assert table.steps[0] == {3: 1}
    assert table.steps[1] is None
