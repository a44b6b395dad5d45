"""Command-line front end.

A problem file is a JSON object::

    {"command": "theorem-check",
     "test_configuration": {"base": {...}, "xi": [1], "c": "2"},
     "charge": "dhym",
     "seed": 0}

``polytope`` may replace ``test_configuration`` for commands that only need
the base, ``param`` carries an explicit direction for futaki and fz.
Exit status is 0 on success, 2 when the input is mathematically
inadmissible and 1 when the input cannot be read or parsed.
"""

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field

from .charge import charge_from_json, charge_value
from .errors import ConfigError, DomainError, ParseError, SchemaError, ZeroCentralCharge
from .exact import format_rational
from .invariants import (InvariantReport, central_fibre,
                         df_hat_table, donaldson_futaki, df_futaki_ratio, futaki, fz_hat,
                         intersection_numbers, stability_indicator, z_hat)
from .localize import LocalizedValue, generic_parameter
from .polytope import polytope_from_json
from .testconfig import tc_from_json

COMMANDS = ("validate", "futaki", "df", "charge-eval", "z-hat", "stability", "fz",
            "theorem-check")
NEEDS_TC = {"df", "z-hat", "stability", "theorem-check"}
NEEDS_CHARGE = {"charge-eval", "z-hat", "stability", "fz", "theorem-check"}
NEEDS_PARAM = {"futaki", "fz"}

VERDICT_LINES = {
    "positive": "STABLE (σ > 0)",
    "zero": "BOUNDARY (σ = 0)",
    "negative": "UNSTABLE (σ < 0)",
}


@dataclass
class ProblemConfig:
    command: str
    raw: dict
    polytope: object = None
    tc: object = None
    charge: object = None
    param: tuple | None = None
    seed: int = 0
    output: str | None = None

    @property
    def digest(self):
        return _digest(self.raw)


@dataclass
class RunReport:
    command: str
    digest: str
    reports: list = field(default_factory=list)
    parameters: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)
    errors: list = field(default_factory=list)
    exit_status: int = 0

    def to_json(self):
        return {
            "command": self.command,
            "digest": self.digest,
            "reports": [r.to_json() for r in self.reports],
            "parameters": self.parameters,
            "warnings": list(self.warnings),
            "errors": list(self.errors),
            "exit_status": self.exit_status,
        }

    @classmethod
    def from_json(cls, obj):
        return cls(command=obj["command"], digest=obj["digest"],
                   reports=[InvariantReport.from_json(r) for r in obj["reports"]],
                   parameters=obj["parameters"], warnings=list(obj["warnings"]),
                   errors=list(obj["errors"]), exit_status=obj["exit_status"])

    def __eq__(self, other):
        if not isinstance(other, RunReport):
            return NotImplemented
        return self.to_json() == other.to_json()


# -- loading -------------------------------------------------------------------

def parse_param(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ParseError(f"parameter {text!r} is not a comma-separated integer list",
                         field="param") from None


def config_from_obj(obj):
    """Validate a decoded problem object and build its domain objects."""
    if not isinstance(obj, dict):
        raise SchemaError("command", "problem file must hold a JSON object")
    if "command" not in obj:
        raise SchemaError("command")
    command = obj["command"]
    if command not in COMMANDS:
        raise SchemaError("command", f"unknown command {command!r}")
    seed = obj.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise SchemaError("seed", "seed must be an integer")

    param = obj.get("param")
    if param is not None:
        if isinstance(param, str):
            param = parse_param(param)
        elif isinstance(param, list) and all(isinstance(x, int) and not isinstance(x, bool)
                                             for x in param):
            param = tuple(param)
        else:
            raise SchemaError("param", "param must be a list of integers")

    tc = None
    if "test_configuration" in obj:
        tc = tc_from_json(obj["test_configuration"])
        polytope = tc.base
    elif "polytope" in obj:
        polytope = polytope_from_json(obj["polytope"])
    else:
        raise SchemaError("polytope", "need a polytope or a test_configuration")
    if command in NEEDS_TC and tc is None:
        raise SchemaError("test_configuration")

    charge = None
    if command in NEEDS_CHARGE:
        if "charge" not in obj:
            raise SchemaError("charge")
        charge = charge_from_json(obj["charge"], polytope.dim)
    if command in NEEDS_PARAM:
        if param is None:
            raise SchemaError("param", f"{command} needs an explicit direction")
        if len(param) != polytope.dim:
            raise SchemaError("param", f"param has length {len(param)}, expected {polytope.dim}")

    return ProblemConfig(command=command, raw=obj, polytope=polytope, tc=tc, charge=charge,
                         param=param, seed=seed, output=obj.get("output"))


def read_problem(path, command=None, param=None, seed=None, charge_preset=None):
    """Decode a problem file and fold command-line overrides into it."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    if isinstance(obj, dict):
        if command is not None:
            obj["command"] = command
        if param is not None:
            obj["param"] = list(parse_param(param))
        if seed is not None:
            obj["seed"] = seed
        if charge_preset is not None:
            obj["charge"] = charge_preset
    return obj


def load_config(path, **overrides):
    return config_from_obj(read_problem(path, **overrides))


# -- running -------------------------------------------------------------------

def _weights(Z):
    return {kl: a / (kl[1] + 1) for kl, a in Z.nonzero_entries().items()}


def _charge_report(cfg, digest):
    Z, P = cfg.charge, cfg.polytope
    n = P.dim
    nums = intersection_numbers(P, cfg.seed)
    breakdown = {(k, l): LocalizedValue(Z.theta[n - k - l] * nums[l], n)
                 for (k, l) in Z.nonzero_entries()}
    value = charge_value(Z, P, cfg.seed)
    return InvariantReport("charge", value, breakdown, Z.nonzero_entries(), digest=digest)


def _fz_reports(P, direction, Z, lift, seed, digest):
    tau, table = fz_hat(P, direction, Z, lift_shift=lift, seed=seed)
    n = P.dim
    return InvariantReport("fz_hat", LocalizedValue(tau, 2 * n), table, _weights(Z),
                           digest=digest)


def _sigma_report(cfg, digest):
    sigma, verdict = stability_indicator(cfg.tc, cfg.charge, cfg.seed)
    n = cfg.tc.dim
    return InvariantReport("sigma", LocalizedValue(sigma, 2 * n + 1), verdict=verdict,
                           digest=digest)


def _z_hat_report(cfg, digest):
    table = df_hat_table(cfg.tc, cfg.charge, cfg.seed)
    return InvariantReport("z_hat", z_hat(cfg.tc, cfg.charge, cfg.seed), table,
                           _weights(cfg.charge), digest=digest)


def _compute(cfg, report):
    digest = report.digest
    P, tc, Z = cfg.polytope, cfg.tc, cfg.charge
    out = report.reports
    if Z is not None:
        report.warnings.extend(Z.warnings)
    cmd = cfg.command

    if cmd == "validate":
        n = P.dim
        vol = intersection_numbers(P, cfg.seed)[n]
        out.append(InvariantReport("alpha^n", LocalizedValue(vol, n), digest=digest))
        if tc is not None:
            out.append(InvariantReport("A^(n+1)", LocalizedValue(
                intersection_numbers(tc.total, cfg.seed)[n + 1], n + 1), digest=digest))
    elif cmd == "futaki":
        out.append(InvariantReport("futaki", futaki(P, cfg.param, cfg.seed), digest=digest))
    elif cmd == "df":
        out.append(InvariantReport("donaldson_futaki", donaldson_futaki(tc, cfg.seed),
                                   digest=digest))
        ratio = df_futaki_ratio(tc, cfg.seed)
        if ratio is not None and ratio != -1:
            report.warnings.append(
                f"DF / (pi F(X0)(V0)) = {format_rational(ratio)}, not -1")
    elif cmd == "charge-eval":
        out.append(_charge_report(cfg, digest))
    elif cmd == "z-hat":
        if not charge_value(Z, P, cfg.seed).value:
            report.warnings.append("ZeroCentralCharge: Z(X, alpha) = 0")
        out.append(_z_hat_report(cfg, digest))
    elif cmd == "stability":
        if Z.is_real:
            report.warnings.append("real charge: use df")
        out.append(_z_hat_report(cfg, digest))
        out.append(_sigma_report(cfg, digest))
    elif cmd == "fz":
        out.append(_fz_reports(P, cfg.param, Z, 0, cfg.seed, digest))
    elif cmd == "theorem-check":
        sig = _sigma_report(cfg, digest)
        cf = central_fibre(tc)
        tau = _fz_reports(cf.polytope, cf.direction, Z, cf.lift_constant, cfg.seed, digest)
        residual = sig.value.value + tau.value.value
        out.extend([sig, tau, InvariantReport(
            "residual", LocalizedValue(residual, 2 * tc.dim + 1), digest=digest)])


def run_command(cfg):
    report = RunReport(command=cfg.command, digest=cfg.digest)
    report.parameters["seed"] = cfg.seed
    report.parameters["generic_P"] = [format_rational(x) for x in
                                      generic_parameter(cfg.polytope.frames, cfg.seed)]
    if cfg.tc is not None:
        report.parameters["generic_Q"] = [format_rational(x) for x in
                                          generic_parameter(cfg.tc.frames, cfg.seed)]
    if cfg.param is not None:
        report.parameters["xi"] = [format_rational(x) for x in cfg.param]
    try:
        _compute(cfg, report)
    except ZeroCentralCharge as exc:
        report.warnings.append(f"ZeroCentralCharge: {exc}")
        report.errors.append(f"{type(exc).__name__}: {exc}")
        report.exit_status = 2
    except DomainError as exc:
        report.errors.append(f"{type(exc).__name__}: {exc}")
        report.exit_status = 2
    return report


# -- output --------------------------------------------------------------------

def _render_text(report):
    lines = [f"command: {report.command}", f"inputs: {report.digest}"]
    for key, val in report.parameters.items():
        lines.append(f"{key}: {val}")
    for r in report.reports:
        lines.append(f"{r.name}: {r.value}")
        for kl, v in sorted(r.breakdown.items()):
            w = r.weights.get(kl)
            wtext = f" (weight {w})" if w is not None else ""
            lines.append(f"  [{kl[0]},{kl[1]}]{wtext}: {v}")
        if r.verdict is not None:
            lines.append(f"verdict: {VERDICT_LINES[r.verdict]}")
    lines.extend(f"warning: {w}" for w in report.warnings)
    lines.extend(f"error: {e}" for e in report.errors)
    lines.append(f"exit status: {report.exit_status}")
    return "\n".join(lines) + "\n"


def emit_report(report, fmt="json"):
    if fmt == "json":
        return (json.dumps(report.to_json(), indent=2, sort_keys=True, ensure_ascii=False)
                + "\n").encode("utf-8")
    if fmt == "text":
        return _render_text(report).encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")


def parse_report(data):
    return RunReport.from_json(json.loads(data))


def build_parser():
    p = argparse.ArgumentParser(prog="zloc", description=__doc__.splitlines()[0])
    p.add_argument("command", nargs="?", choices=COMMANDS,
                   help="overrides the command in the input file")
    p.add_argument("--input", required=True, help="JSON problem file")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--param", help='explicit direction, e.g. "0,1"')
    p.add_argument("--seed", type=int)
    p.add_argument("--charge-preset", choices=("kstability", "dhym"))
    return p


def _write(data, path):
    if path:
        with open(path, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _digest(obj):
    canon = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        obj = read_problem(args.input, command=args.command, param=args.param,
                           seed=args.seed, charge_preset=args.charge_preset)
        cfg = config_from_obj(obj)
    except (OSError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        command = obj.get("command") if isinstance(obj, dict) else None
        report = RunReport(command=str(command), digest=_digest(obj),
                           errors=[f"{type(exc).__name__}: {exc}"], exit_status=2)
        _emit_or_fail(report, args, None)
        return 2

    report = run_command(cfg)
    if _emit_or_fail(report, args, cfg.output) != 0:
        return 1
    return report.exit_status


def _emit_or_fail(report, args, cfg_output):
    try:
        _write(emit_report(report, args.format), args.output or cfg_output)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
