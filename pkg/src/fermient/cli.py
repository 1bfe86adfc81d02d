"""Command-line interface.

Subcommands are thin shells over the library modules: ``entropy`` and
``fcs`` build kernel states, ``oracle-check`` runs the brute-force identity
suite, ``analytic`` evaluates the closed-form models, ``sweep`` drives the
scaling harness (optionally from a key = value config file), and ``widom``
reports the trace-formula coefficients.

Exit codes: 0 success, 1 numerical failure, 2 usage or config error. All
entropies are printed in nats unless --bits is given, which divides by ln 2
at presentation time only.
"""

import argparse
import dataclasses
import json
import math
import sys
from pathlib import Path

from . import analytic, fcs, oracle, spectrum, sweep
from .errors import ConfigError, FermientError
from .kernel import FiniteRing, RegionSpec, SineKernel1D, SquareSea2D, build_correlation

_ENTROPY_FIELDS = ("S_A", "S_m", "S_res", "delta_S", "S_m_asymptotic")


def parse_pi(text: str) -> float:
    """Parse a float with an optional 'pi' suffix, e.g. '0.5pi' or 'pi'."""
    t = str(text).strip().lower()
    if t.endswith("pi"):
        head = t[:-2].rstrip("*").strip()
        return (float(head) if head else 1.0) * math.pi
    return float(t)


def _parse_scales(text: str):
    try:
        return tuple(int(part) for part in str(text).split(",") if part.strip())
    except ValueError as exc:
        raise ConfigError(f"scales must be a comma list of integers, got {text!r}") from exc


def _parse_quantities(text: str):
    return tuple(part.strip() for part in str(text).split(",") if part.strip())


def _emit(payload: dict, output) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if output:
        Path(output).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _report_payload(report: spectrum.EntropyReport, bits: bool) -> dict:
    out = dataclasses.asdict(report)
    if bits:
        for field in _ENTROPY_FIELDS:
            if out.get(field) is not None:
                out[field] = out[field] / math.log(2.0)
    out["units"] = "bits" if bits else "nats"
    return out


def _sea_and_region(args):
    if args.model in ("sine1d", "square2d"):
        if args.kf is None:
            raise ConfigError(f"--kf is required for model {args.model}")
        if args.ring_sites is not None or args.ring_filled is not None:
            raise ConfigError("--ring-sites/--ring-filled only apply to --model ring")
        if args.model == "sine1d":
            return SineKernel1D(args.kf), RegionSpec.interval(args.length)
        return SquareSea2D(args.kf), RegionSpec.square(args.length)
    if args.model == "ring":
        if args.kf is not None:
            raise ConfigError("--kf does not apply to --model ring")
        if args.ring_sites is None or args.ring_filled is None:
            raise ConfigError("--model ring requires --ring-sites and --ring-filled")
        sea = FiniteRing(args.ring_sites, args.ring_filled)
        return sea, RegionSpec.interval(args.length)
    raise ConfigError(f"unknown model {args.model!r}")


def _cmd_entropy(args) -> int:
    sea, region = _sea_and_region(args)
    report = spectrum.report(build_correlation(sea, region))
    payload = {"model": args.model, "length": args.length}
    payload.update(_report_payload(report, args.bits))
    _emit(payload, args.output)
    return 0


def _cmd_fcs(args) -> int:
    sea, region = _sea_and_region(args)
    spec = spectrum.occupation_spectrum(build_correlation(sea, region))
    c_1, c_2 = spectrum.cumulants(spec)
    dist = fcs.charge_distribution(spec)
    s_m = fcs.measurement_entropy(dist)
    payload = {
        "model": args.model,
        "length": args.length,
        "C_1": c_1,
        "C_2": c_2,
        "S_m": s_m / math.log(2.0) if args.bits else s_m,
        "p": [float(v) for v in dist.p],
        "units": "bits" if args.bits else "nats",
    }
    _emit(payload, args.output)
    return 0


def _cmd_oracle_check(args) -> int:
    worst = oracle.identity_check(args.modes, args.trials, args.seed)
    print(f"oracle-check: modes={args.modes} trials={args.trials} seed={args.seed}")
    print(f"max |S_res - (S_A - S_m)| = {worst:.3e}")
    if worst < args.threshold:
        print(f"PASS (threshold {args.threshold:g})")
        return 0
    print(f"FAIL (threshold {args.threshold:g})")
    return 1


def _cmd_analytic_qpc(args) -> int:
    report = analytic.qpc_switch_report(analytic.QpcSwitchParams(args.D, args.ratio))
    payload = {"system": "qpc-switch", "D": args.D, "ratio": args.ratio}
    payload.update(_report_payload(report, args.bits))
    _emit(payload, args.output)
    return 0


def _cmd_analytic_binomial(args) -> int:
    report = analytic.binomial_report(args.N, args.D)
    payload = {"system": "binomial", "N": args.N, "D": args.D}
    payload.update(_report_payload(report, args.bits))
    _emit(payload, args.output)
    return 0


def _cmd_analytic_luttinger(args) -> int:
    report = analytic.luttinger_report(args.g, args.kfl)
    payload = {"system": "luttinger", "g": args.g, "kfl": args.kfl}
    payload.update(_report_payload(report, args.bits))
    _emit(payload, args.output)
    return 0


_SWEEP_KEYS = (
    "model",
    "kf",
    "ring-sites",
    "ring-filled",
    "scales",
    "quantities",
    "format",
    "output",
    "svg",
)


def read_config(path) -> dict:
    """Parse a flat key = value config file mirroring the sweep flags."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip().lower().replace("_", "-")
        if key not in _SWEEP_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value.strip()
    return values


def _sweep_config(args) -> sweep.SweepConfig:
    file_values = read_config(args.config) if args.config else {}

    def pick(flag_value, key, convert=None):
        if flag_value is not None:
            return flag_value
        if key in file_values:
            raw = file_values[key]
            return convert(raw) if convert else raw
        return None

    model = pick(args.model, "model")
    if model is None:
        raise ConfigError("a sweep needs a model (flag --model or config key model)")
    scales = pick(args.scales, "scales", _parse_scales)
    if scales is None:
        raise ConfigError("a sweep needs scales (flag --scales or config key scales)")
    quantities = pick(args.quantities, "quantities", _parse_quantities)
    if quantities is None:
        quantities = sweep.SWEEP_QUANTITIES
    fmt = pick(args.format, "format") or "csv"
    output = pick(args.output, "output")
    svg = pick(args.svg, "svg")

    if model == "sine1d" or model == "square2d":
        kf = pick(args.kf, "kf", parse_pi)
        if kf is None:
            raise ConfigError(f"model {model} needs kf")
        sea = SineKernel1D(kf) if model == "sine1d" else SquareSea2D(kf)
    elif model == "ring":
        n_sites = pick(args.ring_sites, "ring-sites", int)
        n_filled = pick(args.ring_filled, "ring-filled", int)
        if n_sites is None or n_filled is None:
            raise ConfigError("model ring needs ring-sites and ring-filled")
        sea = FiniteRing(n_sites, n_filled)
    else:
        raise ConfigError(f"unknown model {model!r}")
    return sweep.SweepConfig(
        sea=sea, scales=scales, quantities=quantities, output=output, fmt=fmt, svg=svg
    )


def _cmd_sweep(args) -> int:
    config = _sweep_config(args)
    table = sweep.run_sweep(config)
    if args.bits:
        scale = 1.0 / math.log(2.0)
        table = [
            (
                L,
                dataclasses.replace(
                    rep,
                    S_A=rep.S_A * scale,
                    S_m=rep.S_m * scale,
                    S_res=rep.S_res * scale,
                    delta_S=rep.delta_S * scale,
                    S_m_asymptotic=None
                    if rep.S_m_asymptotic is None
                    else rep.S_m_asymptotic * scale,
                ),
            )
            for L, rep in table
        ]
    if config.output:
        target = config.output
        if config.fmt == "csv":
            sweep.write_csv(table, target)
        else:
            sweep.write_json(table, target)
    else:
        if config.fmt == "csv":
            header = ",".join(sweep.CSV_COLUMNS)
            sys.stdout.write(header + "\n")
            for L, rep in table:
                cells = [str(L)] + [
                    f"{getattr(rep, col):.17g}" for col in sweep.CSV_COLUMNS[1:]
                ]
                sys.stdout.write(",".join(cells) + "\n")
        else:
            payload = {"rows": [dict(L=L, **dataclasses.asdict(rep)) for L, rep in table]}
            sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    if config.svg:
        sweep.write_svg(table, config.quantities, config.svg)
    if args.fit:
        model = sweep.ScalingModel.L_LN_L if args.fit_model == "LlnL" else sweep.ScalingModel.LN_L
        fit = sweep.fit_scaling(table, args.fit, model)
        print(
            f"fit {args.fit} ~ {args.fit_model}: slope={fit.slope:.8g} "
            f"intercept={fit.intercept:.8g} r2={fit.r_squared:.8g}",
            file=sys.stderr,
        )
    return 0


def _cmd_widom(args) -> int:
    if args.dim == 1:
        if len(args.region_size) != 1 or len(args.sea_size) != 1:
            raise ConfigError("d = 1 takes a single size per set")
        region = args.region_size[0]
        sea = args.sea_size[0]
    else:
        if len(args.region_size) != 2 or len(args.sea_size) != 2:
            raise ConfigError("d = 2 needs two comma-separated sizes per set")
        region = tuple(args.region_size)
        sea = tuple(args.sea_size)
    spec = analytic.widom_coefficients(region, sea, args.dim)
    payload = {"d": spec.d, "c1": spec.c1, "c2": spec.c2}
    if args.lam is not None:
        payload["lambda"] = args.lam
        payload["U_quadrature"] = analytic.widom_U(analytic.counting_function(args.lam))
        payload["U_closed_form"] = spec.u_of_lambda(args.lam)
    _emit(payload, args.output)
    return 0


def _sizes(text: str):
    return tuple(parse_pi(part) for part in str(text).split(",") if part.strip())


def _add_model_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", required=True, choices=("sine1d", "square2d", "ring"))
    parser.add_argument("--kf", type=parse_pi, help="Fermi momentum; accepts a pi suffix, e.g. 0.5pi")
    parser.add_argument("--length", type=int, required=True, help="region length (side in 2d)")
    parser.add_argument("--ring-sites", type=int, help="ring size for --model ring")
    parser.add_argument("--ring-filled", type=int, help="filled modes for --model ring")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fermient",
        description="Entanglement, counting statistics, and accessible entropy of free fermions.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p_entropy = commands.add_parser("entropy", help="entropy report of a kernel-built region")
    _add_model_arguments(p_entropy)
    p_entropy.add_argument("--bits", action="store_true", help="print entropies in bits")
    p_entropy.add_argument("--output", help="write JSON here instead of stdout")
    p_entropy.set_defaults(handler=_cmd_entropy)

    p_fcs = commands.add_parser("fcs", help="charge distribution and measurement entropy")
    _add_model_arguments(p_fcs)
    p_fcs.add_argument("--bits", action="store_true")
    p_fcs.add_argument("--output")
    p_fcs.set_defaults(handler=_cmd_fcs)

    p_oracle = commands.add_parser(
        "oracle-check", help="brute-force check of S_res = S_A - S_m on random states"
    )
    p_oracle.add_argument("--modes", type=int, required=True)
    p_oracle.add_argument("--trials", type=int, required=True)
    p_oracle.add_argument("--seed", type=int, required=True)
    p_oracle.add_argument("--threshold", type=float, default=1e-9)
    p_oracle.set_defaults(handler=_cmd_oracle_check)

    p_analytic = commands.add_parser("analytic", help="closed-form reference models")
    analytic_commands = p_analytic.add_subparsers(dest="system", required=True)

    p_qpc = analytic_commands.add_parser("qpc-switch", help="switched point contact")
    p_qpc.add_argument("--D", type=float, required=True, help="transmission in [0, 1]")
    p_qpc.add_argument("--ratio", type=float, required=True, help="time window over cutoff")
    p_qpc.add_argument("--bits", action="store_true")
    p_qpc.add_argument("--output")
    p_qpc.set_defaults(handler=_cmd_analytic_qpc)

    p_binom = analytic_commands.add_parser("binomial", help="dc-biased contact")
    p_binom.add_argument("--N", type=int, required=True, help="transmission attempts")
    p_binom.add_argument("--D", type=float, required=True, help="transmission in [0, 1]")
    p_binom.add_argument("--bits", action="store_true")
    p_binom.add_argument("--output")
    p_binom.set_defaults(handler=_cmd_analytic_binomial)

    p_lutt = analytic_commands.add_parser("luttinger", help="chiral Luttinger liquid")
    p_lutt.add_argument("--g", type=float, required=True, help="interaction parameter")
    p_lutt.add_argument("--kfl", type=float, required=True, help="k_F L, at least 1")
    p_lutt.add_argument("--bits", action="store_true")
    p_lutt.add_argument("--output")
    p_lutt.set_defaults(handler=_cmd_analytic_luttinger)

    p_sweep = commands.add_parser("sweep", help="scaling sweep over system size")
    p_sweep.add_argument("--config", help="key = value file mirroring these flags")
    p_sweep.add_argument("--model", choices=("sine1d", "square2d", "ring"))
    p_sweep.add_argument("--kf", type=parse_pi)
    p_sweep.add_argument("--ring-sites", type=int)
    p_sweep.add_argument("--ring-filled", type=int)
    p_sweep.add_argument("--scales", type=_parse_scales, help="comma list, e.g. 64,128,256")
    p_sweep.add_argument("--quantities", type=_parse_quantities, help="comma subset of "
                         + ",".join(sweep.SWEEP_QUANTITIES))
    p_sweep.add_argument("--format", choices=("csv", "json"))
    p_sweep.add_argument("--output")
    p_sweep.add_argument("--svg", help="also write a minimal SVG line chart here")
    p_sweep.add_argument("--fit", choices=sweep.CSV_COLUMNS[1:], help="print a scaling fit")
    p_sweep.add_argument("--fit-model", choices=("lnL", "LlnL"), default="lnL")
    p_sweep.add_argument("--bits", action="store_true")
    p_sweep.set_defaults(handler=_cmd_sweep)

    p_widom = commands.add_parser("widom", help="trace-formula coefficients c1, c2")
    p_widom.add_argument("--dim", type=int, choices=(1, 2), required=True)
    p_widom.add_argument("--region-size", type=_sizes, required=True,
                         help="region extents, comma-separated in 2d; pi suffix ok")
    p_widom.add_argument("--sea-size", type=_sizes, required=True,
                         help="momentum-sea extents, comma-separated in 2d; pi suffix ok")
    p_widom.add_argument("--lam", type=float, help="also evaluate U on the counting function")
    p_widom.add_argument("--output")
    p_widom.set_defaults(handler=_cmd_widom)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return int(args.handler(args))
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FermientError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
