"""Command-line front end: run a verification suite and write a JSON or Markdown report.

Exit status is 0 when every check passes (or only box-relative claims were
made), 1 when a check fails and 2 on bad arguments.  Reports are byte-stable:
``timing_ms`` is 0 unless ``--timing`` is given.  Randomized vectors come from
``random.Random(seed)``, so a failing run replays exactly from its report.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import dualizer, fischer, reps, singular, verma
from .liealg import basis
from .scalars import GaussScalar, parse_scalar
from .weyl import FOURIER, PolyVec, VarSpace, slice_basis

__all__ = ["RunReport", "run", "main"]

MAX_N = 6
MAX_A = 12
MAX_BOX = 8


class UsageError(ValueError):
    pass


@dataclass
class RunReport:
    command: str
    params: dict
    status: str = "pass"
    details: list = field(default_factory=list)
    timing_ms: int = 0
    extra: dict = field(default_factory=dict)

    def check(self, name, expected, got, defect_terms=0):
        self.details.append({"name": name, "expected": str(expected), "got": str(got),
                             "defect_terms": int(defect_terms)})

    def finish(self, truncated=False):
        if any(d["defect_terms"] for d in self.details):
            self.status = "fail"
        elif truncated:
            self.status = "truncated"
        else:
            self.status = "pass"
        return self

    def to_json(self) -> dict:
        out = {"command": self.command, "params": self.params, "status": self.status,
               "details": self.details, "timing_ms": self.timing_ms}
        out.update(self.extra)
        return out

    def to_markdown(self) -> str:
        lines = [f"# {self.command}", ""]
        lines += [f"- {k}: {v}" for k, v in self.params.items()]
        lines += [f"- status: **{self.status}**", f"- timing_ms: {self.timing_ms}", "",
                  "| check | expected | got | defect terms |", "|---|---|---|---|"]
        for d in self.details:
            row = [d["name"], d["expected"], d["got"], str(d["defect_terms"])]
            lines.append("| " + " | ".join(c.replace("|", "\\|") for c in row) + " |")
        for k, v in self.extra.items():
            lines += ["", f"## {k}", "", "```", json.dumps(v, indent=2), "```"]
        return "\n".join(lines) + "\n"


# -- argument helpers ---------------------------------------------------------

def _lam(args) -> GaussScalar:
    if args.lam is None:
        raise UsageError("--lambda is required")
    try:
        return parse_scalar(args.lam)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed --lambda {args.lam!r}: {exc}") from None


def _a(args) -> int:
    if args.a is None:
        raise UsageError("--a is required")
    if not 1 <= args.a <= MAX_A:
        raise UsageError(f"--a must lie in 1..{MAX_A}")
    return args.a


def _validate(args):
    if not 1 <= args.n <= MAX_N:
        raise UsageError(f"--n must lie in 1..{MAX_N}")
    for flag in ("max_m", "max_q"):
        if not 0 <= getattr(args, flag) <= MAX_BOX:
            raise UsageError(f"--{flag.replace('_', '-')} must lie in 0..{MAX_BOX}")


def _terms(x) -> int:
    return len(x) if x else 0


# -- subcommands --------------------------------------------------------------

REALIZATIONS = {
    "hat": lambda p: reps.pi_hat(p),
    "hat-ssw": lambda p: reps.pi_hat_sigma(p, reps.ssw),
    "geom-ssw": lambda p: reps.pi_geom(p, reps.ssw),
    "geom-ssw-dual": lambda p: reps.pi_geom(p, reps.ssw_dual),
}


def cmd_verify_rep(args, rep):
    params = reps.RepParams(args.n, _lam(args))
    rep.params["lambda"] = str(params.lam)
    names = list(REALIZATIONS) if args.model == "all" else [args.model]
    for name in names:
        res = reps.check_homomorphism(REALIZATIONS[name](params))
        rep.check(f"homomorphism {name}", f"0 defects over {res.pairs_checked} pairs",
                  f"{len(res.defects)} defects", sum(_terms(d) for _, _, d in res.defects))
        if res.defects:
            rep.extra.setdefault("defects", []).extend(res.to_json()["defects"][:10])
    return rep.finish()


def cmd_verify_sl2(args, rep):
    for name, d in fischer.sl2_relations(args.n):
        rep.check(name, 0, d, _terms(d))
    return rep.finish()


def _random_zfree(rng, n, m, q_max):
    space = VarSpace(n, FOURIER)
    monos = slice_basis(space, m, q_max, z_free=True)
    picks = rng.sample(monos, min(4, len(monos)))
    return PolyVec(space, {k: GaussScalar(rng.randint(-5, 5), rng.randint(-5, 5)) for k in picks})


def cmd_verify_fischer(args, rep):
    n = args.n
    failures = 0
    checks = 0
    for m in range(args.max_m + 1):
        for v in fischer.mm_basis(n, m, args.max_q).basis:
            for r in range(args.max_r + 1):
                res = fischer.ladder_check(n, m, r, v)
                checks += 1
                failures += sum(_terms(d) for _, d in res.failures)
    rep.check(f"ladder identities (m <= {args.max_m}, r <= {args.max_r})",
              f"{checks} identities hold", f"{checks} checked", failures)
    rng = random.Random(args.seed)
    bad = 0
    for trial in range(args.trials):
        m = rng.randint(0, args.max_m)
        v = _random_zfree(rng, n, m, args.max_q)
        comps = fischer.decompose(n, v, args.max_q)
        back = fischer.reconstruct(n, comps)
        D, _, _ = fischer.build_sl2_ops(n)
        bad += _terms(back - v) + sum(_terms(D(c.vec)) for c in comps)
    rep.check(f"decompose/reconstruct ({args.trials} random vectors)", "exact round trip",
              "checked", bad)
    return rep.finish()


def cmd_scan_singular(args, rep):
    # --lambda is the Verma-module weight, as for classify
    lam = _lam(args)
    params = reps.RepParams(args.n, lam + (args.n + 1))
    rep.params["lambda"] = str(lam)
    rep.extra["realization_lambda"] = str(params.lam)
    slices = []
    bad = 0
    for m in range(args.max_m + 1):
        ks = singular.kernel_search(params, m, args.max_q)
        bad += sum(not singular.annihilates(params, v) for v in ks.vectors)
        slices.append({"m": m, "q_max": args.max_q, "dim": ks.dim,
                       "basis": [str(v) for v in ks.vectors[:8]]})
    rep.check("found vectors are singular", "all annihilated", f"{sum(s['dim'] for s in slices)} vectors", bad)
    rep.extra["slices"] = slices
    return rep.finish(truncated=True)


def cmd_classify(args, rep):
    lam = _lam(args)
    rep.params["lambda"] = str(lam)
    t0 = time.perf_counter()
    res = singular.classify(args.n, lam, args.max_m, args.max_q)
    res.seconds = time.perf_counter() - t0
    for b in res.boxes:
        rep.check(f"box m={b.m} q<={b.q_max}" + (" (witness)" if b.witness else ""),
                  f"dim {b.predicted_dim}, generators inside",
                  f"dim {b.kernel_dim}, generators {'inside' if b.generators_in_kernel else 'missing'}",
                  0 if b.match else 1)
    rep.check("lemma pieces", res.lemma_pieces, res.pieces,
              0 if sorted(res.pieces) == sorted(res.lemma_pieces) else 1)
    rep.extra["singular_report"] = res.to_json(timing=args.timing)
    return rep.finish()


def cmd_build_t(args, rep):
    n, a = args.n, _a(args)
    coeffs = singular.t_coefficients(n, a)
    T = singular.t_operator(n, a)
    rep.check("coefficient recurrence", True, singular.recurrence_verify(n, a, coeffs),
              0 if singular.recurrence_verify(n, a, coeffs) else 1)
    params = reps.RepParams(n, GaussScalar(Fraction(a, 2)))
    bad = sum(not singular.annihilates(params, T(v)) for v in fischer.mm_basis(n, 0, args.max_q).basis)
    rep.check(f"T v0 singular at parameter {Fraction(a, 2)} (q <= {args.max_q})", "annihilated",
              "annihilated" if not bad else f"{bad} failures", bad)
    rep.extra["coefficients"] = [str(c) for c in coeffs]
    rep.extra["operator"] = str(T)
    return rep.finish()


def cmd_build_phi0(args, rep):
    n, a = args.n, _a(args)
    hom = verma.phi0_build(n, a)
    if a <= 4:
        d = hom.element - verma.printed_phi0(n, a)
        rep.check("closed form", "equal", "equal" if not d else "differs", _terms(d.terms))
    rep.check("filtration degree", a, hom.element.filtration_degree(),
              0 if hom.element.filtration_degree() == a else 1)
    params = reps.RepParams(n, hom.realization_lam)
    T = singular.t_operator(n, a)
    bad = 0
    for v in fischer.mm_basis(n, 0, args.max_q).basis:
        img = verma.tau_phi_apply(params, verma.apply_end_s(hom.element, v))
        bad += _terms(img - T(v).scale(hom.square_sign))
    rep.check("image of phi0 v", f"{hom.square_sign:+d} * T v", "checked", bad)
    rep.extra["lambda"] = str(hom.lam)
    rep.extra["mu"] = str(hom.mu)
    rep.extra["element"] = str(hom.element)
    return rep.finish()


def cmd_build_d(args, rep):
    n, a = args.n, _a(args)
    D = dualizer.dualize(verma.phi0_build(n, a).element)
    if a <= 4:
        d = D - dualizer.explicit_Da(n, a).op
        rep.check("closed form", "equal", "equal" if not d else "differs", _terms(d))
    d = D - dualizer.factorized_Da(n, a).op
    rep.check("product formula", "equal", "equal" if not d else "differs", _terms(d))
    rep.extra["operator"] = str(D)
    return rep.finish()


def _operator(kind, n, a):
    if kind == "dual":
        return dualizer.dualize(verma.phi0_build(n, a).element)
    if kind == "explicit":
        return dualizer.explicit_Da(n, a).op
    if kind == "factorized":
        return dualizer.factorized_Da(n, a).op
    if kind == "bare":
        return dualizer.dual_ops(n)[0]
    raise UsageError(f"unknown operator {kind}")


def _intertwine_checks(rep, n, a, D):
    for X in basis(n):
        d = dualizer.intertwine_defect(n, a, D, X)
        rep.check(f"intertwines {X.name}", 0, "0" if not d else f"{len(d)} terms", _terms(d))


def cmd_check_intertwine(args, rep):
    n, a = args.n, _a(args)
    if args.operator == "explicit" and a > 4:
        raise UsageError("closed forms exist for a <= 4; use --operator dual or factorized")
    _intertwine_checks(rep, n, a, _operator(args.operator, n, a))
    return rep.finish()


def cmd_check_factorization(args, rep):
    n, a = args.n, _a(args)
    F = dualizer.factorized_Da(n, a).op
    if a <= 4:
        d = F - dualizer.explicit_Da(n, a).op
        rep.check("matches closed form", "equal", "equal" if not d else "differs", _terms(d))
    _intertwine_checks(rep, n, a, F)
    return rep.finish()


COMMANDS = {
    "verify-rep": cmd_verify_rep,
    "verify-sl2": cmd_verify_sl2,
    "verify-fischer": cmd_verify_fischer,
    "scan-singular": cmd_scan_singular,
    "classify": cmd_classify,
    "build-T": cmd_build_t,
    "build-phi0": cmd_build_phi0,
    "build-D": cmd_build_d,
    "check-intertwine": cmd_check_intertwine,
    "check-factorization": cmd_check_factorization,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=1)
    common.add_argument("--lambda", dest="lam", default=None,
                        help="fraction string, e.g. 1/3 or -3/2; for classify and scan-singular "
                             "the inducing weight, elsewhere the realization parameter")
    common.add_argument("--a", type=int, default=None)
    common.add_argument("--max-m", type=int, default=4)
    common.add_argument("--max-q", type=int, default=3)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None)
    common.add_argument("--format", choices=("json", "markdown"), default="json")
    common.add_argument("--timing", action="store_true", help="record wall-clock time (breaks byte stability)")

    parser = argparse.ArgumentParser(prog="contact-fmethod", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "verify-rep":
            p.add_argument("--model", choices=(*REALIZATIONS, "all"), default="hat")
        elif name == "verify-fischer":
            p.add_argument("--max-r", type=int, default=6)
            p.add_argument("--trials", type=int, default=10)
        elif name == "check-intertwine":
            p.add_argument("--operator", choices=("dual", "explicit", "factorized", "bare"), default="dual")
    return parser


def _join_negative_values(argv):
    # argparse reads "-1/2" as an option; glue it to its flag
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--lambda" and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"--lambda={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def run(argv=None) -> tuple[int, RunReport | None]:
    parser = build_parser()
    argv = _join_negative_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else 2), None
    params = {k: v for k, v in sorted(vars(args).items())
              if k not in ("command", "out", "format", "timing") and v is not None}
    if "lam" in params:
        params["lambda"] = params.pop("lam")
    rep = RunReport(args.command, params)
    t0 = time.perf_counter()
    try:
        _validate(args)
        COMMANDS[args.command](args, rep)
    except UsageError as exc:
        print(f"contact-fmethod: error: {exc}", file=sys.stderr)
        return 2, None
    if args.timing:
        rep.timing_ms = round((time.perf_counter() - t0) * 1000)
    text = rep.to_markdown() if args.format == "markdown" else json.dumps(rep.to_json(), indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return (1 if rep.status == "fail" else 0), rep


def main(argv=None) -> int:
    return run(argv)[0]


if __name__ == "__main__":
    sys.exit(main())
