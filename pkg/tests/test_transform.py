import json
import random
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from ncbirational import transform, zalgebra
from ncbirational.curve import Divisor, helix_divisor
from ncbirational.freealg import point_module
from ncbirational.sklyanin import GeometricData, sklyanin_algebra
from ncbirational.transform import (
    CertificateFailure, GenericityError, cremona, first_positive_bound, function_field_witness,
    quadric_to_plane, validate_genericity, witness_lower_bound,
)

GOLDEN = json.loads((Path(__file__).parent / "golden" / "transforms.json").read_text())


@pytest.fixture(scope="module")
def cubic_report(cubic_config):
    gd, pts = cubic_config
    return quadric_to_plane(gd, pts[0], witness=1)


@pytest.fixture(scope="module")
def quad_report(quad_config):
    gd, pts = quad_config
    return cremona(gd, *pts, witness=1)


def test_generic_configs_validate(quad_config, cubic_config):
    for gd, pts in (quad_config, cubic_config):
        assert validate_genericity(gd, pts).ok


def test_collinear_rejected():
    gd, pts = transform.collinear_config(random.Random(3))
    rep = validate_genericity(gd, pts)
    assert "collinear" in rep.codes
    with pytest.raises(GenericityError) as e:
        cremona(gd, *pts)
    assert "collinear" in str(e.value)


@pytest.mark.parametrize("kind", ["quadratic", "cubic"])
def test_torsion_rejected(kind):
    gd, pts = transform.torsion_config(kind, random.Random(5))
    codes = validate_genericity(gd, pts).codes
    assert "sigma_torsion" in codes
    msg = dict(validate_genericity(gd, pts).violations)["sigma_torsion"]
    assert str(transform.TORSION[kind]) in msg


def test_trivial_translation_rejected(quad_config):
    gd, pts = quad_config
    bad = GeometricData(gd.curve, gd.curve.O, gd.D0, "quadratic")
    rep = validate_genericity(bad, pts)
    assert {"tau_trivial", "sigma_torsion"} <= set(rep.codes)


def test_point_count_and_distinctness(quad_config):
    gd, pts = quad_config
    assert validate_genericity(gd, pts[:2]).codes == ["point_count"]
    assert validate_genericity(gd, [pts[0], pts[0], pts[1]]).codes == ["distinct"]


def test_wrong_kind(quad_config, cubic_config):
    with pytest.raises(ValueError):
        quadric_to_plane(quad_config[0], quad_config[1][0])
    with pytest.raises(ValueError):
        cremona(cubic_config[0], *cubic_config[1] * 3)


def test_quadric_to_plane(cubic_report, cubic_config):
    rep = cubic_report
    gd = cubic_config[0]
    C = gd.curve
    assert rep.passed
    assert C.mul(3, rep.output_translation) == C.mul(4, gd.t)
    assert rep.torsion["exact"] and rep.torsion["class_shift_matches"]
    assert rep.output_class.degree == 3
    L1 = helix_divisor(gd, Divisor.of_points(C, rep.points), 1)
    assert rep.output_class != L1.pic_class()


def test_cremona(quad_report, quad_config):
    rep = quad_report
    gd = quad_config[0]
    assert rep.passed
    assert rep.output_translation == gd.t
    assert rep.torsion["class_matches_prediction"] and rep.torsion["exact"]
    assert rep.output_class.degree == 3


@pytest.mark.parametrize("which", ["quad", "cubic"])
def test_helix_relation(which, quad_report, cubic_report):
    rep = quad_report if which == "quad" else cubic_report
    gd, C = rep.input, rep.input.curve
    d = Divisor.of_points(C, rep.points)
    cls = [helix_divisor(gd, d, i).pic_class() for i in range(5)]
    for i in range(3):
        assert (cls[i] - cls[i + 1] - cls[i + 1] + cls[i + 2]).is_trivial
    assert cls[0] != cls[1]


@pytest.mark.parametrize("which", ["quad", "cubic"])
def test_output_data_is_quadratic_sklyanin(which, quad_report, cubic_report):
    rep = quad_report if which == "quad" else cubic_report
    out = rep.output_data()
    assert out.kind == "quadratic" and out.D0.pic_class() == rep.output_class
    A = sklyanin_algebra(out, 5)
    assert A.hilbert() == [1, 3, 6, 10, 15, 21]


def test_point_module_of_output(cubic_report):
    out = cubic_report.output_data()
    A = sklyanin_algebra(out, 5)
    P = point_module(A, out.sample_points(1, range(6))[0], 5)
    assert P.hilbert() == [1] * 6


def test_golden_cubic(cubic_report):
    g = GOLDEN["cubic_seed_202"]
    assert cubic_report.output_translation.to_json() == g["u"]
    assert cubic_report.output_class.to_json() == g["L0_class"]
    assert cubic_report.witness.N == g["witness_N"]


def test_golden_quadratic(quad_report):
    g = GOLDEN["quadratic_seed_101"]
    assert quad_report.output_translation.to_json() == g["translation"]
    assert quad_report.output_class.to_json() == g["L0_class"]
    w = quad_report.witness
    assert w.N == g["witness_N"]
    assert {str(k): v for k, v in w.searched.items()} == g["witness_searched"]


def test_witness_bound_closed_form():
    assert first_positive_bound("quadratic", 1) == 5
    assert [witness_lower_bound("quadratic", 1, N) for N in range(1, 6)] == [-3, -3, -2, 0, 3]
    assert first_positive_bound("cubic", 1) < 5


@given(n=st.integers(0, 6), N=st.integers(0, 40))
def test_witness_bound_is_dimension_difference(n, N):
    # dim A_{2N} minus the colength of D_{i,i+n+N}
    a = n + N
    q = witness_lower_bound("quadratic", n, N)
    assert q == (2 * N + 2) * (2 * N + 1) // 2 - zalgebra.expected_colength("quadratic", a)
    c = witness_lower_bound("cubic", n, N)
    assert c == (N + 1) ** 2 - zalgebra.expected_colength("cubic", a)


@pytest.mark.parametrize("which", ["quad", "cubic"])
def test_witness_membership(which, quad_report, cubic_report, quad_D, cubic_D):
    D = quad_D if which == "quad" else cubic_D
    w = (quad_report if which == "quad" else cubic_report).witness
    assert w.verified and w.N <= 5
    assert all(v <= 0 for k, v in w.searched.items() if k < w.N)
    # independent membership check: multiply by every basis word of A_{2n}
    A = transform._materialize_to(D.A, 2 * (w.n + w.N))
    pieces = dict(D.degree_one)
    for l in range(w.n + w.N):
        pieces.setdefault(l, zalgebra.degree_one_piece(A, D.geometry, D.points, l))
    target = transform._chain(A, pieces, 0, w.n + w.N)
    F = A.field
    for a in F.identity(A.dim(2 * w.n)):
        assert target.contains(A.multiply_vectors(a, 2 * w.n, w.h, 2 * w.N))
    assert any(w.h)


def test_witness_none_when_capped(quad_D):
    assert function_field_witness(quad_D, 1, Nmax=2) is None


def test_certificate_failure_raised(monkeypatch):
    # with the validator bypassed, collinear data reaches the certificate and fails there
    gd, pts = transform.collinear_config(random.Random(8))
    monkeypatch.setattr(transform, "validate_genericity", lambda *a: transform.GenericityReport())
    with pytest.raises(CertificateFailure) as e:
        cremona(gd, *pts)
    assert e.value.report.certificate.failed_clause == "non_collinear"
    assert e.value.report.witness is None


def test_deterministic():
    a = transform.random_generic_config("quadratic", random.Random(77))
    b = transform.random_generic_config("quadratic", random.Random(77))
    assert a[0].to_json() == b[0].to_json() and a[1] == b[1]
    r1 = quadric_to_plane(*_cubic(78))
    r2 = quadric_to_plane(*_cubic(78))
    assert json.dumps(r1.to_json(), sort_keys=True) == json.dumps(r2.to_json(), sort_keys=True)


def _cubic(seed):
    gd, pts = transform.random_generic_config("cubic", random.Random(seed))
    return gd, pts[0]


@settings(max_examples=5, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_random_cubic_transform_passes(seed):
    rep = quadric_to_plane(*_cubic(seed))
    assert rep.passed and rep.torsion["exact"]
