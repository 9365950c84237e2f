"""Command-line interface: grid evaluations, transforms, probes, verification.

Exit codes: 0 success (for `verify`: overall pass), 1 verification failure,
2 usage error, 3 numerical failure.  All outputs are deterministic given
identical flags; CSV columns use repeatable %.17g formatting.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .convolution import convolve_oracle
from .functions import RadialFunction, read_radial_csv
from .group import RankOneGroup
from .hypergeom import HypergeomConvergenceError
from .quadrature import TruncationError
from .spherical import ResonanceError, c_pair, phi
from .transforms import (SpectralFunction, decomposition_probe,
                         hxi1_regularized, inverse_transform,
                         k_average_halfplane, radial_about_i,
                         radial_about_point, seminorm_mu_p,
                         spherical_transform_horocycle,
                         spherical_transform_polar, symmetric_transform,
                         transform_on_grid)
from .verify import SUITES, run_suite

USAGE_EXIT = 2
NUMERICAL_EXIT = 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# flag parsing helpers


def parse_complex(text: str, flag: str) -> complex:
    cleaned = text.strip().replace("i", "j")
    try:
        return complex(cleaned)
    except ValueError:
        raise UsageError(f"{flag}: cannot parse {text!r} as a complex number")


def parse_grid(text: str, flag: str) -> np.ndarray:
    """start:stop:step inclusive grid, or a single number."""
    parts = text.split(":")
    if len(parts) == 1:
        return np.array([float(parse_complex(text, flag).real)])
    if len(parts) != 3:
        raise UsageError(f"{flag}: expected start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise UsageError(f"{flag}: non-numeric bound in {text!r}")
    if step <= 0:
        raise UsageError(f"{flag}: step must be positive in {text!r}")
    if stop < start:
        raise UsageError(f"{flag}: empty range {text!r} (stop < start)")
    return np.arange(start, stop + step * 0.5, step)


def parse_function_spec(text: str, flag: str) -> RadialFunction:
    """Grammar: bump:c=<real>,w=<real> | gauss:s=<real> | file:<path>."""
    kind, sep, rest = text.partition(":")
    if not sep:
        raise UsageError(f"{flag}: malformed function spec {text!r}")
    if kind == "file":
        try:
            return read_radial_csv(rest)
        except OSError as exc:
            raise UsageError(f"{flag}: cannot read {rest!r} ({exc})")
    keys = {}
    for item in rest.split(","):
        k, eq, v = item.partition("=")
        if not eq:
            raise UsageError(f"{flag}: malformed parameter {item!r} in {text!r}")
        try:
            keys[k.strip()] = float(v)
        except ValueError:
            raise UsageError(f"{flag}: non-numeric value in {item!r}")
    if kind == "bump":
        if set(keys) != {"c", "w"}:
            raise UsageError(f"{flag}: bump spec takes exactly c=,w= (got {sorted(keys)})")
        return RadialFunction.bump(keys["c"], keys["w"])
    if kind == "gauss":
        if set(keys) != {"s"}:
            raise UsageError(f"{flag}: gauss spec takes exactly s= (got {sorted(keys)})")
        return RadialFunction.gauss(keys["s"])
    raise UsageError(f"{flag}: unknown function kind {kind!r}")


def load_config(path: str) -> dict:
    values = {}
    try:
        with open(path) as fh:
            for line_no, line in enumerate(fh, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                key, eq, val = line.partition("=")
                if not eq:
                    raise UsageError(f"--config {path}:{line_no}: expected key=value")
                values[key.strip().replace("-", "_")] = val.strip()
    except OSError as exc:
        raise UsageError(f"--config: cannot read {path!r} ({exc})")
    return values


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _group(args) -> RankOneGroup:
    try:
        if (args.p, args.q) == (1, 0):
            return RankOneGroup.sl2r()
        return RankOneGroup(args.p, args.q)
    except ValueError as exc:
        raise UsageError(f"--p/--q: {exc}")


# ---------------------------------------------------------------------------
# subcommands


def cmd_phi(args) -> int:
    group = _group(args)
    lam = parse_complex(args.lam, "--lambda")
    ts = parse_grid(args.t, "--t")
    vals = phi(group, lam, ts)
    rows = ["t,re_phi,im_phi"]
    rows += [f"{t:.17g},{v.real:.17g},{v.imag:.17g}" for t, v in zip(ts, vals)]
    _emit("\n".join(rows) + "\n", args.out)
    return 0


def cmd_transform(args) -> int:
    group = _group(args)
    f = parse_function_spec(args.fn, "--fn")
    lams = parse_grid(args.lam, "--lambda")
    if args.method == "polar":
        ims = parse_grid(args.im, "--im") if args.im else None
        F = transform_on_grid(group, f, lams, ims)
    elif args.method == "horocycle":
        vals = np.array([spherical_transform_horocycle(group, f, l) for l in lams])
        F = SpectralFunction(lams, np.array([0.0]), vals[None, :])
    else:
        raise UsageError(f"--method: unknown transform method {args.method!r}")
    _emit(F.to_csv_text(), args.out)
    return 0


def cmd_invert(args) -> int:
    group = _group(args)
    try:
        F = SpectralFunction.from_csv(args.input)
    except (OSError, ValueError) as exc:
        raise UsageError(f"--input: {exc}")
    ts = parse_grid(args.t, "--t")
    vals = inverse_transform(group, F, ts)
    rows = ["t,re_value,im_value"]
    rows += [f"{t:.17g},{v.real:.17g},{v.imag:.17g}" for t, v in zip(ts, vals)]
    _emit("\n".join(rows) + "\n", args.out)
    return 0


def cmd_cfun(args) -> int:
    group = _group(args)
    lams = parse_grid(args.lam, "--lambda")
    rows = ["re_lambda,im_lambda,re_c,im_c"]
    for l in lams:
        cp, _ = c_pair(group, complex(l))
        rows.append(f"{l:.17g},0,{cp.real:.17g},{cp.imag:.17g}")
    _emit("\n".join(rows) + "\n", args.out)
    return 0


def cmd_convolve(args) -> int:
    group = _group(args)
    group.require_sl2r()
    f = parse_function_spec(args.f, "--f")
    g = parse_function_spec(args.g, "--g")
    ts = parse_grid(args.t, "--t")
    if args.method == "oracle":
        vals = np.atleast_1d(convolve_oracle(f, g, ts, group))
    elif args.method == "spectral":
        from .transforms import default_inversion_grid, plancherel_constant

        lams = default_inversion_grid()
        hf = spherical_transform_polar(group, f, lams)
        hg = spherical_transform_polar(group, g, lams)
        F = SpectralFunction(lams, np.array([0.0]), (hf * hg)[None, :])
        vals = np.real(inverse_transform(group, F, ts))
    else:
        raise UsageError(f"--method: unknown convolve method {args.method!r}")
    rows = ["t,value"]
    rows += [f"{t:.17g},{float(np.real(v)):.17g}" for t, v in zip(ts, vals)]
    _emit("\n".join(rows) + "\n", args.out)
    return 0


def cmd_seminorm(args) -> int:
    group = _group(args)
    f = parse_function_spec(args.fn, "--fn")
    if not 0 < args.schwartz_p <= 2:
        raise UsageError("--schwartz-p: must lie in (0, 2]")
    if args.order not in (0, 1, 2):
        raise UsageError("--order: must be 0, 1 or 2")
    val = seminorm_mu_p(group, f, args.schwartz_p, args.m, args.order)
    payload = {"seminorm": {"p": args.schwartz_p, "m": args.m, "order": args.order},
               "finite": math.isfinite(val),
               "value": val if math.isfinite(val) else None}
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.json)
    return 0


def cmd_probe(args) -> int:
    group = _group(args)
    if args.claim == "hxi1":
        lam = parse_complex(args.lam, "--lambda") if args.lam else 1.0 + 0.0j
        try:
            umaxes = [float(x) for x in args.umax.split(",")]
        except ValueError:
            raise UsageError(f"--umax: expected comma-separated reals, got {args.umax!r}")
        results = [hxi1_regularized(group, lam, um) for um in umaxes]
        mags = [abs(r.value) for r in results]
        payload = {
            "claim": "hxi1",
            "lambda": [lam.real, lam.imag],
            "u_max": [r.u_max for r in results],
            "x_max": [r.x_max for r in results],
            "values": [[r.value.real, r.value.imag] for r in results],
            "magnitudes": mags,
            "divergent": bool(len(mags) >= 2 and mags[-1] > 1.5 * mags[0]),
            "stabilized_1e-4": bool(len(mags) >= 2 and
                                    abs(mags[-1] - mags[-2]) <= 1e-4 * (1 + mags[-1])),
        }
    elif args.claim == "k-independence":
        lam = parse_complex(args.lam, "--lambda") if args.lam else 0.7 + 0.0j
        group.require_sl2r()
        k_angles = np.linspace(0.0, 2 * np.pi, 8, endpoint=False)
        bump = RadialFunction.bump(1.0, 0.5)
        displaced_profile = RadialFunction.bump(0.8, 0.5)
        center = 0.6 + 1.4j
        from .transforms import hyperbolic_distance

        reach = float(hyperbolic_distance(1j, center)) \
            + displaced_profile.support_radius() + 0.3
        witnesses = {
            "biinvariant": (radial_about_i(bump), 2.0),
            "displaced": (radial_about_point(displaced_profile, center), reach),
            "sharp_projected": (k_average_halfplane(
                radial_about_point(displaced_profile, center)), reach),
        }
        payload = {"claim": "k-independence", "lambda": [lam.real, lam.imag],
                   "k_angles": k_angles.tolist(), "witnesses": {}}
        for name, (fz, radius) in witnesses.items():
            vals = [symmetric_transform(group, fz, th, lam, support_radius=radius)
                    for th in k_angles]
            arr = np.array(vals)
            payload["witnesses"][name] = {
                "values": [[v.real, v.imag] for v in vals],
                "variation": float(np.max(np.abs(arr - arr.mean()))),
            }
    elif args.claim == "thm38":
        group.require_sl2r()
        from .convolution import PolarSamples

        bump = RadialFunction.bump(1.0, 0.5)
        samples = PolarSamples.from_function(
            lambda a, t, b: bump(t) * np.cos(a), t_max=4.0)
        lam_grid = parse_grid(args.lam, "--lambda") if args.lam \
            else np.arange(0.25, 5.0001, 0.25)
        payload = decomposition_probe(group, samples, lam_grid)
        payload["claim"] = "thm38"
        payload["witness"] = "bump(1,0.5)(t) * cos(theta1)"
    else:
        raise UsageError(f"--claim: unknown probe claim {args.claim!r}")
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.json)
    return 0


def cmd_verify(args) -> int:
    overrides = {}
    for item in args.tol or []:
        key, eq, val = item.partition("=")
        if not eq:
            raise UsageError(f"--tol: expected id=value, got {item!r}")
        try:
            overrides[key.strip()] = float(val)
        except ValueError:
            raise UsageError(f"--tol: non-numeric tolerance in {item!r}")
    try:
        report = run_suite(args.suite, overrides)
    except ValueError as exc:
        raise UsageError(str(exc))
    for line in report.lines():
        print(line)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report.as_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hc-rankone",
        description="Spherical harmonic analysis engine for rank-one groups")
    parser.add_argument("--config", help="key=value file of default flags")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_group_flags(p):
        p.add_argument("--p", type=int, default=1, help="multiplicity of alpha")
        p.add_argument("--q", type=int, default=0, help="multiplicity of 2*alpha")

    p = sub.add_parser("phi", help="evaluate the spherical function on a t-grid")
    add_group_flags(p)
    p.add_argument("--lambda", dest="lam", required=True,
                   help="spectral parameter (complex, e.g. 1.5 or 0.3i)")
    p.add_argument("--t", required=True, help="t-grid start:stop:step")
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.set_defaults(fn_impl=cmd_phi)

    p = sub.add_parser("transform", help="spherical Fourier transform on a grid")
    add_group_flags(p)
    p.add_argument("--fn", required=True, help="bump:c=,w= | gauss:s= | file:path")
    p.add_argument("--lambda", dest="lam", required=True, help="real grid start:stop:step")
    p.add_argument("--im", help="optional imaginary grid start:stop:step")
    p.add_argument("--method", default="polar", choices=("polar", "horocycle"))
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.set_defaults(fn_impl=cmd_transform)

    p = sub.add_parser("invert", help="wave-packet inversion of spectral samples")
    add_group_flags(p)
    p.add_argument("--input", required=True, help="SpectralFunction CSV")
    p.add_argument("--t", required=True, help="t-grid start:stop:step")
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.set_defaults(fn_impl=cmd_invert)

    p = sub.add_parser("cfun", help="Harish-Chandra c-function on a real grid")
    add_group_flags(p)
    p.add_argument("--lambda", dest="lam", required=True, help="real grid start:stop:step")
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.set_defaults(fn_impl=cmd_cfun)

    p = sub.add_parser("convolve", help="convolution by quadrature or via transforms")
    add_group_flags(p)
    p.add_argument("--f", required=True, help="first factor (function spec)")
    p.add_argument("--g", required=True, help="second factor (function spec)")
    p.add_argument("--method", default="oracle", choices=("oracle", "spectral"))
    p.add_argument("--t", required=True, help="evaluation t or grid start:stop:step")
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.set_defaults(fn_impl=cmd_convolve)

    p = sub.add_parser("seminorm", help="Schwartz seminorm of a radial function")
    add_group_flags(p)
    p.add_argument("--fn", required=True, help="function spec")
    p.add_argument("--schwartz-p", dest="schwartz_p", type=float, default=2.0,
                   help="Schwartz index p in (0, 2]")
    p.add_argument("--m", type=int, default=0, help="polynomial weight order")
    p.add_argument("--order", type=int, default=0, help="derivative order 0|1|2")
    p.add_argument("--json", help="JSON output path (default stdout)")
    p.set_defaults(fn_impl=cmd_seminorm)

    p = sub.add_parser("probe", help="regularized numerical probes")
    add_group_flags(p)
    p.add_argument("--claim", required=True,
                   choices=("hxi1", "k-independence", "thm38"))
    p.add_argument("--umax", default="5,10,20", help="comma list of truncations")
    p.add_argument("--lambda", dest="lam", help="spectral parameter or grid")
    p.add_argument("--json", help="JSON output path (default stdout)")
    p.set_defaults(fn_impl=cmd_probe)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, help="|".join(SUITES))
    p.add_argument("--tol", action="append", help="override id=value (repeatable)")
    p.add_argument("--json", help="write the report JSON here")
    p.set_defaults(fn_impl=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)

    # pre-scan for --config so its values become subcommand defaults
    if "--config" in argv:
        idx = argv.index("--config")
        if idx + 1 >= len(argv):
            print("--config: missing path", file=sys.stderr)
            return USAGE_EXIT
        try:
            config = load_config(argv[idx + 1])
        except UsageError as exc:
            print(exc, file=sys.stderr)
            return USAGE_EXIT
        subparsers = parser._subparsers._group_actions[0].choices.values()
        known = {act.dest for sp in subparsers for act in sp._actions}
        unknown = set(config) - known
        if unknown:
            print(f"--config: unknown keys {sorted(unknown)}", file=sys.stderr)
            return USAGE_EXIT
        for sp in subparsers:
            defaults = {}
            for act in sp._actions:
                if act.dest in config:
                    raw = config[act.dest]
                    try:
                        defaults[act.dest] = act.type(raw) if act.type else raw
                    except (TypeError, ValueError):
                        print(f"--config: bad value for {act.dest}: {raw!r}",
                              file=sys.stderr)
                        return USAGE_EXIT
                    act.required = False
            if defaults:
                sp.set_defaults(**defaults)

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else USAGE_EXIT
    try:
        return args.fn_impl(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return USAGE_EXIT
    except (TruncationError, ResonanceError, HypergeomConvergenceError,
            ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return NUMERICAL_EXIT


if __name__ == "__main__":
    sys.exit(main())
