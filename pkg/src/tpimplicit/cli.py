"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 verification failure, 3 internal
assertion failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .algebra import BidegreeError, ParseError, SurfaceParam, parse_xform, transpose_params
from .detrep import (ComplexError, assemble_complex, assemble_d2, assemble_mpq, admissible_subsets,
                     minor_ratio, mpq_determinant)
from .fields import parse_field
from .oracle import NotASurfaceError, SamplingError, implicit_equation, power_check
from .syzygy import (ContainmentError, moving_planes, plane_generated_quadrics,
                     quadratic_relations, reduced_quadrics, saturated_quadrics)
from .thresholds import BoundViolation, StabilizationError, analyze, mu0

COMMANDS = ("analyze", "planes", "quadrics", "matrix", "complex", "implicitize", "verify")
NEEDS_BIDEGREE = ("planes", "quadrics", "matrix", "complex")


class VerificationFailure(Exception):
    pass


@dataclass
class JobConfig:
    input: str
    command: str
    mu: int | None = None
    nu: int | None = None
    field: str = "rational"
    seed: int = 0
    quadric_source: str = "default"
    output: str = "text"
    transpose: bool = False
    verify: bool = True
    form: str | None = None
    power: int | None = None
    trials: int = 3

    def validate(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        has = self.mu is not None and self.nu is not None
        if self.command in NEEDS_BIDEGREE and not has:
            raise ValueError(f"{self.command} requires --mu and --nu")
        if self.command not in NEEDS_BIDEGREE and (self.mu is not None or self.nu is not None):
            raise ValueError(f"{self.command} does not take --mu/--nu")
        if self.command == "verify" and not self.form:
            raise ValueError("verify requires --form")


def _oracle_verdict(P: SurfaceParam, form, seed: int, power: int | None = None) -> dict:
    res = implicit_equation(P, seed)
    k = power or res.degphi_lci or 1
    # a positive residual degree points at extraneous factors from non-l.c.i. base points
    return {"oracle_F": str(res.F), "oracle_degF": res.degF, "degphi_lci": res.degphi_lci,
            "power": k, "verified": power_check(form, res.F, k),
            "residual_degree": form.xdeg - k * res.degF}


def _space_report(S) -> dict:
    return {"mu": S.mu, "nu": S.nu, "xdeg": S.xdeg, "dim": S.dim, "status": S.status,
            "basis": [[str(e) for e in L.entries] for L in S.basis]}


def _run(cfg: JobConfig) -> tuple[dict, bool]:
    field = parse_field(cfg.field)
    P = SurfaceParam.from_json(cfg.input, field)
    if cfg.transpose:
        P = transpose_params(P)
    ok = True
    out: dict = {"command": cfg.command, "input": Path(cfg.input).name, "field": repr(field),
                 "seed": cfg.seed, "transpose": cfg.transpose}
    if cfg.command == "analyze":
        out["report"] = json.loads(analyze(P, cfg.trials, cfg.seed).to_json())
    elif cfg.command == "planes":
        out["planes"] = _space_report(moving_planes(P, cfg.mu, cfg.nu))
    elif cfg.command == "quadrics":
        if cfg.quadric_source == "saturated":
            W = saturated_quadrics(P, cfg.mu, cfg.nu)
        else:
            W = quadratic_relations(P, cfg.mu, cfg.nu)
        Vp = plane_generated_quadrics(moving_planes(P, cfg.mu, cfg.nu))
        out["quadrics"] = _space_report(W)
        out["plane_generated_dim"] = Vp.dim
        out["reduced"] = _space_report(reduced_quadrics(W, Vp))
    elif cfg.command == "matrix":
        M = assemble_mpq(P, cfg.mu, cfg.nu, cfg.quadric_source)
        out["matrix"] = M.to_json()
        out["shape"] = [M.nrows, M.ncols]
        out["planes"], out["quadrics"] = M.nplanes, M.nquadrics
        out["square"] = M.is_square
        if M.is_square:
            d = mpq_determinant(M)
            out["determinant"] = str(d)
            if cfg.verify:
                out["oracle"] = _oracle_verdict(P, d, cfg.seed, cfg.power)
                ok = out["oracle"]["verified"]
    elif cfg.command == "complex":
        C = assemble_d2(P, cfg.mu, cfg.nu, assemble_mpq(P, cfg.mu, cfg.nu, cfg.quadric_source))
        out["shape"] = {"target": C.d1.nrows, "planes": C.d1.nplanes,
                        "quadrics": C.d1.nquadrics, "second": C.z2_dim}
        out["d1"] = C.d1.to_json()
        out["d2"] = [[str(e) for e in row] for row in C.d2]
        subsets = admissible_subsets(C, 1, cfg.seed)
        det = minor_ratio(C, subsets[0])
        out["minor_rows"] = list(subsets[0])
        out["determinant"] = str(det)
        out["determinant_degree"] = det.xdeg
        if cfg.verify:
            out["oracle"] = _oracle_verdict(P, det, cfg.seed, cfg.power)
            ok = out["oracle"]["verified"]
    elif cfg.command == "implicitize":
        rep = analyze(P, cfg.trials, cfg.seed)
        mu = rep.mu0
        if rep.window:
            d = mpq_determinant(assemble_mpq(P, mu - 1, P.n - 1, cfg.quadric_source))
            out["method"] = f"determinant of M_({mu - 1},{P.n - 1})"
        else:
            C = assemble_complex(P, mu, cfg.quadric_source, rep.mu0)
            d = minor_ratio(C, admissible_subsets(C, 1, cfg.seed)[0])
            out["method"] = f"determinant of the complex at ({mu - 1},{P.n - 1})"
        out["F"] = str(d)
        out["degree"] = d.xdeg
        if cfg.verify:
            out["oracle"] = _oracle_verdict(P, d, cfg.seed, cfg.power)
            ok = out["oracle"]["verified"]
    elif cfg.command == "verify":
        form = parse_xform(cfg.form, None, field)
        out["form_degree"] = form.xdeg
        out["oracle"] = _oracle_verdict(P, form, cfg.seed, cfg.power)
        ok = out["oracle"]["verified"]
    return out, ok


def _format_text(out: dict, indent: str = "") -> str:
    lines = []
    for key, value in out.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_format_text(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"{indent}{key}:")
            for row in value:
                lines.append(f"{indent}  " + "  ".join(str(v) for v in row))
        else:
            lines.append(f"{indent}{key}: {value}")
    return "\n".join(lines)


def run(cfg: JobConfig) -> tuple[int, str]:
    """Execute a job; returns ``(exit code, rendered report)``."""
    try:
        cfg.validate()
        out, ok = _run(cfg)
    except (BoundViolation, ComplexError, ContainmentError, AssertionError) as exc:
        return 3, f"internal assertion failed: {exc}"
    except (FileNotFoundError, json.JSONDecodeError, KeyError, ParseError, BidegreeError,
            StabilizationError, ValueError, SamplingError, NotASurfaceError) as exc:
        return 1, f"input error: {exc}"
    if cfg.output == "json":
        text = json.dumps(out, indent=2)
    else:
        text = _format_text(out)
    return (0 if ok else 2), text


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tpimplicit",
                                 description="Moving planes and quadrics for tensor-product surfaces")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("input", help='JSON file {"m":..,"n":..,"f":[four polynomial strings]}')
    ap.add_argument("--mu", type=int)
    ap.add_argument("--nu", type=int)
    ap.add_argument("--field", default="rational", help="rational | fp | fp:<prime>")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=3, help="random draws for eta0/zeta0")
    ap.add_argument("--quadric-source", choices=("default", "saturated"), default="default")
    ap.add_argument("--output", choices=("text", "json"), default="text")
    ap.add_argument("--transpose", action="store_true", help="swap the roles of s and t")
    ap.add_argument("--no-verify", dest="verify", action="store_false")
    ap.add_argument("--form", help="form in x0..x3 for the verify command")
    ap.add_argument("--power", type=int, help="exponent for the oracle comparison")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = JobConfig(input=args.input, command=args.command, mu=args.mu, nu=args.nu,
                    field=args.field, seed=args.seed, quadric_source=args.quadric_source,
                    output=args.output, transpose=args.transpose, verify=args.verify,
                    form=args.form, power=args.power, trials=args.trials)
    code, text = run(cfg)
    stream = sys.stdout if code in (0, 2) else sys.stderr
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
