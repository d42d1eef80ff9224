"""Command-line front end.

Exit codes: 0 when every check passes, 1 for usage or configuration errors,
2 when a mathematical violation is detected.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys

import numpy as np

from . import analysis as A
from . import mappings as M
from . import sampler
from .errors import ConvexHarmError, NoAdmissiblePair, NotHerglotz, DegenerateAlpha
from .series import DEFAULT_ORDER
from .transforms import A_CAP, koebe_transform, transformed_dilatation

SCHEMA = 1
EXIT_OK, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2
N_COEFFS = 16


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _clean(x):
    """Make ``x`` JSON-safe: complex -> [re, im], non-finite -> None."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, (complex, np.complexfloating)):
        return [_clean(float(x.real)), _clean(float(x.imag))]
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x) if math.isfinite(x) else None
    return x


def _dump_json(obj) -> str:
    return json.dumps(_clean(obj), indent=2, sort_keys=False, allow_nan=False) + "\n"


def _dump_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in r])
    return buf.getvalue()


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config(args) -> dict:
    keys = ("command", "seed", "order", "rmax", "grid", "format", "envelope_scale", "shear")
    return {k: getattr(args, k) for k in keys if hasattr(args, k)}


def _resolve_map(args) -> M.HarmonicMap:
    if getattr(args, "shear", None):
        phi_name, omega_text, theta_text = args.shear
        phi = sampler.get_analytic(phi_name, args.order)
        omega = sampler.parse_dilatation(omega_text, args.order)
        return M.shear(phi, omega, _parse_angle(theta_text))
    if not args.map:
        raise UsageError("a map name or --shear is required")
    return sampler.get_harmonic(args.map, args.order)


_ANGLE = re.compile(r"^([-+]?\d*\.?\d*)\*?pi(?:/(\d*\.?\d+))?$")


def _parse_angle(text: str) -> float:
    """A float, or a multiple of pi such as ``pi/2``, ``-pi/4``, ``3*pi/4``."""
    t = text.strip().replace(" ", "")
    try:
        return float(t)
    except ValueError:
        pass
    m = _ANGLE.match(t)
    if not m:
        raise UsageError(f"cannot parse angle {text!r}")
    coef, den = m.groups()
    c = {"": 1.0, "+": 1.0, "-": -1.0}.get(coef)
    c = float(coef) if c is None else c
    return c * math.pi / (float(den) if den else 1.0)


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise UsageError(f"cannot parse complex number {text!r}") from exc


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_catalog(args) -> int:
    maps = [
        {"name": name, "kind": kind, "formula": formula, "dilatation": dil}
        for name, (kind, formula, dil) in sampler.CATALOG_DESCRIPTIONS.items()
    ]
    dils = ["0", "lam*z^m (m = 1..3, |lam| = 1)", "blaschke:c  ->  z(c+z)/(1+conj(c)z), |c| < 1"]
    recipes = [
        {"label": s.label, "recipe": s.recipe} for s in sampler.build_catalog(args.seed, args.order)
    ]
    if args.json or args.format == "json":
        _emit(_dump_json({"schema": SCHEMA, "maps": maps, "dilatations": dils, "shear_recipes": recipes}), args.out)
        return EXIT_OK
    lines = ["maps:"]
    lines += [f"  {m['name']:<12} {m['kind']:<9} {m['formula']:<24} dilatation {m['dilatation']}" for m in maps]
    lines += ["dilatations:"] + [f"  {d}" for d in dils]
    lines += [f"shear recipes (seed {args.seed}):"] + [f"  {r['label']}" for r in recipes]
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _check(check, label, passed, details=None, **extra) -> dict:
    out = {"check": check, "label": label, "pass": bool(passed)}
    for k, v in {**(details or {}), **extra}.items():
        out.setdefault(k, v)
    return out


def _verify_sample(s, radii, angles, envelope_scale) -> list:
    f = s.f
    checks = []
    grid = A.polar_points(radii, angles)

    hb = A.check_h_bounds(f, radii, angles, envelope_scale=envelope_scale, certify=False)
    checks.append(_check("h-bounds", s.label, hb.passed, hb.to_dict()))
    cf = A.coefficient_check(f)
    checks.append(_check("coefficients", s.label, cf.passed, cf.to_dict()))

    try:
        pair = A.css2_search(f, certify=False)
        checks.append(_check("css2", s.label, True, pair.to_dict()))
    except NoAdmissiblePair as exc:
        checks.append(_check("css2", s.label, False, error=str(exc)))
        pair = None
    if pair is not None:
        sb = A.check_sum_bound(f, pair.alpha, grid)
        checks.append(_check("sum-bound", s.label, sb.passed, sb.to_dict(), alpha=pair.alpha))
        try:
            A.herglotz_delta(A.css_q(f, pair.alpha, pair.beta), pair.alpha + pair.beta)
            checks.append(_check("herglotz", s.label, True))
        except (NotHerglotz, DegenerateAlpha) as exc:
            checks.append(_check("herglotz", s.label, False, error=str(exc)))

    rd = A.refined_distortion_check(f, grid)
    checks.append(_check("refined-distortion", s.label, rd.passed, rd.to_dict()))

    rig = A.rigidity_probe(f)
    checks.append(_check("rigidity", s.label, rig.status != "VIOLATION", rig.to_dict()))

    kd = A.koebe_distance(f.h)
    checks.append(_check("koebe-exclusion", s.label, kd > 0.1, distance=kd))

    hits = hb.equality_hits(quantities=("h-growth", "h-distortion"))
    eq_ok = not hits or rig.status == "PASS"
    checks.append(_check("equality-only-at-L", s.label, eq_ok, hits=len(hits)))
    return checks


def cmd_verify(args) -> int:
    if args.grid < 1 or not 0 < args.rmax < 1:
        raise UsageError("--grid must be >= 1 and --rmax in (0, 1)")
    radii = np.linspace(0.1, args.rmax, args.grid) if args.grid > 1 else np.array([args.rmax])
    angles = 2 * np.pi * np.arange(args.grid) / args.grid
    samples, checks = [], []
    for s in sampler.build_catalog(args.seed, args.order):
        m = s.membership
        samples.append({"label": s.label, "recipe": s.recipe, "certified": s.certified, "membership": m.to_dict()})
        if s.certified:
            checks += _verify_sample(s, radii, angles, args.envelope_scale)
    n_cert = sum(1 for s in samples if s["certified"])
    passed = all(c["pass"] for c in checks)
    report = {
        "schema": SCHEMA,
        "config": _config(args),
        "n_samples": len(samples),
        "n_certified": n_cert,
        "samples": samples,
        "checks": checks,
        "pass": passed,
    }
    if args.format == "csv":
        rows = [(c["label"], c["check"], c["pass"], c.get("min_margin", "")) for c in checks]
        _emit(_dump_csv(["label", "check", "pass", "min_margin"], rows), args.out)
    else:
        _emit(_dump_json(report), args.out)
    return EXIT_OK if passed else EXIT_VIOLATION


def cmd_curve(args) -> int:
    f = _resolve_map(args)
    if not 0 < args.r < 1:
        raise UsageError("r must lie in (0, 1)")
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    t = 2 * np.pi * np.arange(args.samples) / args.samples
    w = np.asarray(f(args.r * np.exp(1j * t)), dtype=np.complex128)
    if args.format == "json":
        _emit(_dump_json({"schema": SCHEMA, "config": _config(args), "map": f.label, "r": args.r,
                          "points": [[float(a), float(b.real), float(b.imag)] for a, b in zip(t, w)]}), args.out)
    else:
        _emit(_dump_csv(["t", "re", "im"], [(a, b.real, b.imag) for a, b in zip(t, w)]), args.out)
    return EXIT_OK


def cmd_sharpness(args) -> int:
    radii = [float(r) for r in args.radii]
    if any(not 0 < r < 1 for r in radii):
        raise UsageError("radii must lie in (0, 1)")
    rows = A.sharpness_table(radii)
    ok = all(r.relative_gap >= -1e-10 for r in rows)
    if args.format == "csv":
        _emit(_dump_csv(["r", "quantity", "value", "envelope", "relative_gap"],
                        [(r.r, r.quantity, r.value_at_extremal, r.envelope_value, r.relative_gap) for r in rows]),
              args.out)
    else:
        _emit(_dump_json({"schema": SCHEMA, "config": _config(args), "rows": [r.to_dict() for r in rows],
                          "pass": ok}), args.out)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_transform(args) -> int:
    f = _resolve_map(args)
    a = _parse_complex(args.a)
    res = koebe_transform(f, a)
    om = transformed_dilatation(f, a)
    ok = res.max_residual <= 1e-8
    n = N_COEFFS
    out = {
        "schema": SCHEMA,
        "config": _config(args),
        "map": f.label,
        "a": a,
        "mu": res.mu,
        "omega_at_a": res.omega_at_a,
        "H_a": list(res.F.h.series.coeffs[:n]),
        "G_a": list(res.F.g.series.coeffs[:n]),
        "omega_a": list(om.series.coeffs[:n]),
        "residuals": res.normalization_report,
        "pass": ok,
    }
    if args.format == "csv":
        rows = [(k, res.F.h.series.coeffs[k].real, res.F.h.series.coeffs[k].imag,
                 res.F.g.series.coeffs[k].real, res.F.g.series.coeffs[k].imag,
                 om.series.coeffs[k].real, om.series.coeffs[k].imag) for k in range(n)]
        _emit(_dump_csv(["n", "H_re", "H_im", "G_re", "G_im", "omega_re", "omega_im"], rows), args.out)
    else:
        _emit(_dump_json(out), args.out)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_eval(args) -> int:
    f = _resolve_map(args)
    zs = np.array([_parse_complex(z) for z in args.z])
    if np.any(np.abs(zs) >= 1):
        raise UsageError("points must lie in the open unit disk")
    rows = [{"z": z, "f": complex(f(np.array([z]))[0]), "h": complex(f.h(np.array([z]))[0]),
             "g": complex(f.g(np.array([z]))[0]), "jacobian": float(f.jacobian(np.array([z]))[0])} for z in zs]
    if args.format == "csv":
        _emit(_dump_csv(["z_re", "z_im", "f_re", "f_im"],
                        [(r["z"].real, r["z"].imag, r["f"].real, r["f"].imag) for r in rows]), args.out)
    else:
        _emit(_dump_json({"schema": SCHEMA, "config": _config(args), "map": f.label, "values": rows}), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _common(fmt_default: str) -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--seed", type=int, default=0, help="sampler seed (default 0)")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER, help="series truncation order")
    p.add_argument("--rmax", type=float, default=0.99, help="largest radius of the bound grid")
    p.add_argument("--grid", type=int, default=10, help="radii and angles per axis of the bound grid")
    p.add_argument("--format", choices=("json", "csv"), default=fmt_default)
    p.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")
    p.add_argument("--envelope-scale", type=float, default=1.0,
                   help="scale the h-envelopes (test hook; values < 1 must make verify fail)")
    p.add_argument("--shear", nargs=3, metavar=("PHI", "OMEGA", "THETA"),
                   help="use shear(PHI, OMEGA, THETA) instead of a named map")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="convexharm", description="Convex harmonic mappings: catalog, transforms, bound checks.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("catalog", parents=[_common("json")], help="list maps, dilatations and shear recipes")
    p.add_argument("--json", action="store_true", help="machine-readable listing")
    p.set_defaults(func=cmd_catalog, format=None)

    p = sub.add_parser("verify", parents=[_common("json")], help="run the verification sweep")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("curve", parents=[_common("csv")], help="sample the image of |z| = r")
    p.add_argument("map", nargs="?")
    p.add_argument("r", type=float)
    p.add_argument("--samples", "-M", type=int, default=1024)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("sharpness", parents=[_common("json")], help="sharpness table at the half-plane map")
    p.add_argument("radii", nargs="*", type=float)
    p.set_defaults(func=cmd_sharpness)

    p = sub.add_parser("transform", parents=[_common("json")], help=f"transform F_a (|a| <= {A_CAP})")
    p.add_argument("map", nargs="?")
    p.add_argument("a")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("eval", parents=[_common("json")], help="evaluate a map at points")
    p.add_argument("map", nargs="?")
    p.add_argument("z", nargs="+")
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"convexharm: error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"convexharm: error: {exc}\n")
        return EXIT_USAGE
    except ConvexHarmError as exc:
        sys.stderr.write(f"convexharm: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        sys.stderr.write(f"convexharm: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
