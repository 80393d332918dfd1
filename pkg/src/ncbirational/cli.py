"""Command-line front end.

Reads a JSON run configuration, writes a JSON report (stdout or --out).
Exit codes: 0 ok, 1 internal error or certificate failure, 2 genericity
violation, 3 malformed configuration.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import traceback

from . import __version__, exactlin, freealg, transform, zalgebra
from .curve import CurveError, Divisor, EllipticCurve
from .sklyanin import GeometricData, GeometricDataError, NonGenericData, sklyanin_algebra

SCHEMA = "ncbirational.report/1"

EXIT_OK, EXIT_INTERNAL, EXIT_GENERICITY, EXIT_CONFIG = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


# ------------------------------------------------------------------ config


def load_config(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as e:
        raise ConfigError("config: cannot read %s (%s)" % (path, e.strerror))
    except json.JSONDecodeError as e:
        raise ConfigError("config: invalid JSON (%s)" % e)
    if not isinstance(data, dict):
        raise ConfigError("config: top level must be an object")
    return data


def apply_overrides(cfg, args):
    cfg = dict(cfg)
    if getattr(args, "field", None) is not None:
        cfg["field"] = args.field if args.field == "Q" else _int(args.field, "--field")
    if getattr(args, "truncation", None) is not None:
        cfg["truncation"] = args.truncation
    if getattr(args, "window", None) is not None:
        cfg["window"] = args.window
    if getattr(args, "seed", None) is not None:
        cfg["seed"] = args.seed
    return cfg


def _int(v, name):
    try:
        return int(v)
    except (TypeError, ValueError):
        raise ConfigError("%s: expected an integer, got %r" % (name, v))


def config_hash(cfg):
    blob = json.dumps(cfg, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(blob.encode()).hexdigest()


def parse_field(cfg):
    spec = cfg.get("field", exactlin.DEFAULT_PRIME)
    try:
        return exactlin.make_field(spec)
    except (ValueError, exactlin.FieldError) as e:
        raise ConfigError("field: %s" % e)


def parse_point(C, obj, name):
    if obj == "O":
        return C.O
    if not (isinstance(obj, (list, tuple)) and len(obj) == 2):
        raise ConfigError('%s: a point is "O" or [x, y]' % name)
    try:
        return C.point(*obj)
    except (CurveError, ValueError, ZeroDivisionError) as e:
        raise ConfigError("%s: %s" % (name, e))


def parse_geometry(cfg):
    F = parse_field(cfg)
    if "curve" not in cfg:
        raise ConfigError("curve: missing")
    cv = cfg["curve"]
    if not isinstance(cv, dict) or "a" not in cv or "b" not in cv:
        raise ConfigError("curve: expected {\"a\": ..., \"b\": ...}")
    try:
        C = EllipticCurve(cv["a"], cv["b"], F)
    except (CurveError, ValueError, ZeroDivisionError) as e:
        raise ConfigError("curve: %s" % e)
    kind = cfg.get("kind")
    if kind not in ("quadratic", "cubic"):
        raise ConfigError("kind: must be 'quadratic' or 'cubic'")
    if "t" not in cfg:
        raise ConfigError("t: missing")
    t = parse_point(C, cfg["t"], "t")
    if not isinstance(cfg.get("D0"), list):
        raise ConfigError("D0: expected a list of points")
    D0 = [parse_point(C, P, "D0[%d]" % i) for i, P in enumerate(cfg["D0"])]
    try:
        gd = GeometricData(C, t, Divisor.of_points(C, D0), kind)
    except GeometricDataError as e:
        raise ConfigError("D0: %s" % e)
    pts = cfg.get("points", [])
    if not isinstance(pts, list):
        raise ConfigError("points: expected a list of points")
    points = [parse_point(C, P, "points[%d]" % i) for i, P in enumerate(pts)]
    return gd, points


def parse_window(cfg):
    w = cfg.get("window")
    if w is None:
        return zalgebra.Window()
    try:
        return zalgebra.Window.parse(w) if isinstance(w, str) else zalgebra.Window(*w)
    except (ValueError, TypeError) as e:
        raise ConfigError("window: %s" % e)


def parse_truncation(cfg, default=None):
    N = cfg.get("truncation", default)
    if N is None:
        return None
    N = _int(N, "truncation")
    if N < 4:
        raise ConfigError("truncation: must be at least 4")
    return N


# ------------------------------------------------------------------ commands


def cmd_construct(cfg):
    gd, points = parse_geometry(cfg)
    # the algebra only depends on (E, t, D0); point conditions belong to the transforms
    viol = transform.translation_violations(gd)
    if viol:
        raise transform.GenericityError(transform.GenericityReport(viol))
    N = parse_truncation(cfg, 10 if gd.kind == "quadratic" else 12)
    s, r = gd.s, gd.r
    # the centrality test multiplies degree s+1 by generators
    A = sklyanin_algebra(gd, max(N, s + 2))
    central = freealg.central_element(A, s + 1)
    g = central.basis[0] if central.dim == 1 else None
    regular, quotient = None, []
    if g is not None:
        regular = all(
            freealg.left_image_dim(A, g, s + 1, n) == A.dim(n) for n in range(A.top - s)
        )
        for n in range(1, N + 1):
            img = freealg.left_image_dim(A, g, s + 1, n - s - 1) if n >= s + 1 else 0
            quotient.append(A.dim(n) - img)
    return {
        "geometry": gd.to_json(),
        "truncation": N,
        "hilbert": A.hilbert()[: N + 1],
        "generators": r,
        "relation_degree": s,
        "relation_count": A.presentation.relations.dim,
        "central": {"degree": s + 1, "dim": central.dim, "regular": regular},
        "quotient_by_g": quotient,
    }


def _require_points(gd, points, k, name):
    if len(points) != k:
        raise ConfigError("points: %s needs exactly %d point(s), got %d" % (name, k, len(points)))


def _witness_n(cfg):
    w = cfg.get("witness")
    if w is None or w is False:
        return None, 8
    if w is True:
        return 1, 8
    if isinstance(w, dict):
        return _int(w.get("n", 1), "witness.n"), _int(w.get("Nmax", 8), "witness.Nmax")
    return _int(w, "witness"), 8


def run_transform(cfg, which):
    gd, points = parse_geometry(cfg)
    window = parse_window(cfg)
    N = parse_truncation(cfg)
    n, Nmax = _witness_n(cfg)
    if which == "quadric-to-plane":
        if gd.kind != "cubic":
            raise ConfigError("kind: quadric-to-plane needs cubic data")
        _require_points(gd, points, 1, which)
        rep = _run(transform.quadric_to_plane, gd, points[0], window=window, truncation=N,
                   witness=n, witness_max=Nmax)
    else:
        if gd.kind != "quadratic":
            raise ConfigError("kind: cremona needs quadratic data")
        _require_points(gd, points, 3, which)
        rep = _run(transform.cremona, gd, *points, window=window, truncation=N,
                   witness=n, witness_max=Nmax)
    return rep.to_json(), rep.passed


def _run(fn, *args, **kw):
    try:
        return fn(*args, **kw)
    except transform.CertificateFailure as e:
        return e.report


def cmd_hilbert(cfg):
    gd, points = parse_geometry(cfg)
    window = parse_window(cfg)
    viol = transform.validate_genericity(gd, points, window)
    if not viol.ok:
        raise transform.GenericityError(viol)
    A = sklyanin_algebra(gd, max(parse_truncation(cfg) or 0, 2 * window.amax))
    D = zalgebra.build_D(A, gd, Divisor.of_points(gd.curve, points), window)
    return {
        "window": str(window),
        "hilbert": zalgebra.hilbert_table(D).to_json(),
        "colength": zalgebra.colength_table(D).to_json(),
        "expected_hilbert": [zalgebra.expected_dim(a) for a in window.offsets],
        "expected_colength": [zalgebra.expected_colength(gd.kind, a) for a in window.offsets],
    }


def cmd_witness(cfg):
    gd, points = parse_geometry(cfg)
    window = parse_window(cfg)
    viol = transform.validate_genericity(gd, points, window)
    if not viol.ok:
        raise transform.GenericityError(viol)
    n, Nmax = _witness_n(cfg)
    n = 1 if n is None else n
    A = sklyanin_algebra(gd, max(parse_truncation(cfg) or 0, 2 * window.amax))
    D = zalgebra.build_D(A, gd, Divisor.of_points(gd.curve, points), window)
    w = transform.function_field_witness(D, n, Nmax)
    return {
        "n": n,
        "Nmax": Nmax,
        "first_positive_bound": transform.first_positive_bound(gd.kind, n),
        "witness": None if w is None else w.to_json(gd.field),
    }


def cmd_sweep(cfg):
    if "seed" not in cfg:
        raise ConfigError("seed: sweep needs a seed (config or --seed)")
    seed = _int(cfg["seed"], "seed")
    runs = _int(cfg.get("runs", 20), "runs")
    kinds = cfg.get("kinds", ["cubic", "quadratic"])
    engineered = cfg.get("engineered", [])
    field = cfg.get("field", exactlin.DEFAULT_PRIME)
    if field == "Q":
        raise ConfigError("field: sweeps need a prime field")
    field = _int(field, "field")
    window = parse_window(cfg)
    rows, rejected, failures = [], [], 0
    for kind in kinds:
        if kind not in ("quadratic", "cubic"):
            raise ConfigError("kinds: unknown kind %r" % (kind,))
        rng = random.Random("%d:%s" % (seed, kind))
        for i in range(runs):
            gd, pts = transform.random_generic_config(kind, rng, field, window)
            if kind == "cubic":
                rep = _run(transform.quadric_to_plane, gd, pts[0], window=window)
            else:
                rep = _run(transform.cremona, gd, *pts, window=window)
            failures += not rep.passed
            rows.append({
                "kind": kind, "run": i, "verdict": rep.certificate.verdict,
                "failed_clause": rep.certificate.failed_clause,
                "torsion": rep.torsion["verdict"],
            })
    for name in engineered:
        rng = random.Random("%d:%s" % (seed, name))
        if name == "collinear":
            gd, pts = transform.collinear_config(rng, field)
            expect = "collinear"
        elif name in ("torsion3", "torsion4"):
            kind = "quadratic" if name == "torsion3" else "cubic"
            gd, pts = transform.torsion_config(kind, rng, field)
            expect = "sigma_torsion"
        else:
            raise ConfigError("engineered: unknown case %r" % (name,))
        v = transform.validate_genericity(gd, pts, window)
        ok = expect in v.codes
        failures += not ok
        rejected.append({"case": name, "rejected": ok, "codes": v.codes})
    return {
        "seed": seed,
        "runs": rows,
        "passed": sum(r["verdict"] == "PASS" for r in rows),
        "failed": sum(r["verdict"] != "PASS" for r in rows),
        "engineered": rejected,
    }, failures == 0


# ------------------------------------------------------------------- driver


def build_parser():
    p = argparse.ArgumentParser(prog="ncbirational", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="JSON run configuration")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, help="random seed (sweep)")
    common.add_argument("--window", help="m0..m1,aMax (default 0..2,4)")
    common.add_argument("--truncation", type=int, help="degree bound N for the ambient algebra")
    common.add_argument("--field", help="prime p or Q")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("construct", parents=[common], help="build a Sklyanin algebra")
    tr = sub.add_parser("transform", help="quadric-to-plane or cremona")
    trs = tr.add_subparsers(dest="which", required=True)
    trs.add_parser("quadric-to-plane", parents=[common])
    trs.add_parser("cremona", parents=[common])
    sub.add_parser("sweep", parents=[common], help="randomized certification sweep")
    sub.add_parser("hilbert", parents=[common], help="Hilbert and colength tables of D")
    sub.add_parser("witness", parents=[common], help="function-field witness search")
    return p


def envelope(command, cfg, result, status):
    return {
        "schema": SCHEMA,
        "library_version": __version__,
        "command": command,
        "config_hash": config_hash(cfg),
        "status": status,
        "result": result,
    }


def emit(report, out):
    text = json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    args = build_parser().parse_args(argv)
    command = args.command if args.command != "transform" else "transform " + args.which
    cfg = {}
    try:
        cfg = apply_overrides(load_config(args.config), args)
        if args.command == "construct":
            result, ok = cmd_construct(cfg), True
        elif args.command == "transform":
            result, ok = run_transform(cfg, args.which)
        elif args.command == "sweep":
            result, ok = cmd_sweep(cfg)
        elif args.command == "hilbert":
            result, ok = cmd_hilbert(cfg), True
        else:
            result, ok = cmd_witness(cfg), True
    except ConfigError as e:
        print("config error: %s" % e, file=sys.stderr)
        emit(envelope(command, cfg, {"error": str(e)}, "config_error"), args.out)
        return EXIT_CONFIG
    except transform.GenericityError as e:
        print("genericity violation: %s" % e, file=sys.stderr)
        emit(envelope(command, cfg, e.report.to_json(), "genericity_violation"), args.out)
        return EXIT_GENERICITY
    except NonGenericData as e:
        print("genericity violation: %s" % e, file=sys.stderr)
        emit(envelope(command, cfg, {"ok": False, "violations": [
            {"code": "non_generic", "message": str(e)}]}, "genericity_violation"), args.out)
        return EXIT_GENERICITY
    except Exception as e:  # noqa: BLE001 - reported as an internal error
        traceback.print_exc()
        emit(envelope(command, cfg, {"error": "%s: %s" % (type(e).__name__, e)}, "internal_error"),
             args.out)
        return EXIT_INTERNAL
    emit(envelope(command, cfg, result, "ok" if ok else "failed"), args.out)
    return EXIT_OK if ok else EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
