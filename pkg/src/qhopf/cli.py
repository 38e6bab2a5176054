"""Command-line entry point.

Builds the requested algebra, runs the applicable verification suite,
and emits a machine-readable JSON report.  Exit codes: 0 when every
check passes, 1 when a verification check fails, 2 on usage or
configuration errors.  Malformed input never raises past main().
"""

import argparse
import cmath
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .scalars import ExactScalar, parse_rational
from .algebras import build_uq_sl2, build_sl2_pair, build_k_xi
from .superalg import build_uq_d21e, build_max_ext_sl22, DegenerateParameter
from .rmatrix import rmat_uq_sl2, rmat_k_xi, rmat_d21e, rmat_max_ext
from .contraction import ContractionMap, falloff_ratio
from . import classical
from . import algfile
from .scattering import (
    Momentum3,
    ScatterConfig,
    scatter,
    conservation_report,
    sixth_law_contrast,
    random_momentum,
    SingularKinematics,
    BranchAmbiguity,
)

ALGEBRAS = ("uq_sl2", "sl2_tensor", "k_xi_iso3", "d21e", "max_ext_sl22")

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class ConfigError(ValueError):
    """Invalid command-line configuration (maps to exit code 2)."""


# ---------------------------------------------------------------------------
# report plumbing
# ---------------------------------------------------------------------------


def entry(name, paper_ref, status, detail):
    return {
        "name": name,
        "paper_ref": paper_ref,
        "status": status,
        "detail": detail,
    }


def _status(ok):
    return "pass" if ok else "fail"


def thread_count():
    raw = os.environ.get("HOPF_CONTRACT_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def run_checks(jobs):
    """jobs: list of (name, paper_ref, callable -> (ok, detail)).

    Runs the callables (in parallel when HOPF_CONTRACT_THREADS > 1) and
    returns report entries sorted by check name.
    """
    def run_one(job):
        name, ref, fn = job
        try:
            ok, detail = fn()
        except Exception as exc:  # a check must report, not crash
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        return entry(name, ref, _status(ok), detail)

    workers = thread_count()
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(run_one, jobs))
    else:
        entries = [run_one(j) for j in jobs]
    return sorted(entries, key=lambda e: e["name"])


def emit(report, out_path):
    text = json.dumps(report, indent=2, default=str)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def finish(report, out_path):
    ok = all(e["status"] == "pass" for e in report["checks"])
    report["status"] = _status(ok)
    emit(report, out_path)
    return EXIT_PASS if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# argument parsing helpers
# ---------------------------------------------------------------------------


def parse_exact(text, flag):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"invalid exact rational for {flag}: {text!r} ({exc})")


def exact_to_fraction(x: ExactScalar, flag):
    if not x.im == 0:
        raise ConfigError(f"{flag} must be real, got {x}")
    q = x.re
    return Fraction(int(q.numerator), int(q.denominator))


def parse_kappa(text):
    try:
        return complex(text.replace("i", "j").replace(" ", ""))
    except ValueError:
        raise ConfigError(f"invalid kappa: {text!r}")


def parse_momentum(text, flag):
    try:
        pairs = json.loads(text)
        comps = [complex(re, im) for re, im in pairs]
        if len(comps) != 3:
            raise ValueError("need exactly three components")
        return Momentum3(*comps)
    except (ValueError, TypeError) as exc:
        raise ConfigError(
            f"invalid momentum for {flag}: {text!r} "
            f"(expected JSON [[re,im],[re,im],[re,im]]): {exc}"
        )


def momentum_json(p: Momentum3):
    return [[c.real, c.imag] for c in p.as_tuple()]


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _build(args):
    xi = parse_exact(args.xi, "--xi")
    eps_exact = parse_exact(args.epsilon, "--epsilon")
    if args.algebra == "uq_sl2":
        return build_uq_sl2(1, args.order), {"alpha": "1"}
    if args.algebra == "sl2_tensor":
        eps = exact_to_fraction(eps_exact, "--epsilon")
        teps = -eps + exact_to_fraction(xi, "--xi") * eps * eps
        return build_sl2_pair(eps, teps, args.order), {
            "epsilon": str(eps), "tilde_epsilon": str(teps),
        }
    if args.algebra == "k_xi_iso3":
        return build_k_xi(xi, args.order), {"xi": str(xi)}
    if args.algebra == "d21e":
        eps = exact_to_fraction(eps_exact, "--epsilon")
        try:
            return build_uq_d21e(eps, args.order), {"epsilon": str(eps)}
        except DegenerateParameter as exc:
            raise ConfigError(str(exc))
    if args.algebra == "max_ext_sl22":
        return build_max_ext_sl22(xi, args.order), {"xi": str(xi)}
    raise ConfigError(f"unknown algebra {args.algebra!r}")


def _rmatrix_for(args, hopf):
    if args.algebra == "uq_sl2":
        return rmat_uq_sl2(hopf, 1)
    if args.algebra == "k_xi_iso3":
        return rmat_k_xi(hopf, parse_exact(args.xi, "--xi"))
    if args.algebra == "d21e":
        return rmat_d21e(hopf)
    if args.algebra == "max_ext_sl22":
        return rmat_max_ext(hopf)
    return None  # no closed-form R-matrix for the tensor-pair presentation


def cmd_verify(args):
    if args.order < 1:
        raise ConfigError(f"--order must be at least 1, got {args.order}")

    if args.table:
        try:
            with open(args.table) as fh:
                alg, name, params = algfile.load_table(fh.read())
        except OSError as exc:
            raise ConfigError(f"cannot read table file: {exc}")
        except ValueError as exc:
            raise ConfigError(f"malformed table file: {exc}")
        def table_confluence():
            bad = alg.check_local_confluence()
            if bad:
                return False, f"unresolved overlaps: {bad}"
            return True, f"{len(alg.rules)} rules, all overlaps resolve"

        jobs = [("confluence", f"table:{name}", table_confluence)]
        report = {
            "command": "verify",
            "config": {"table": args.table, "name": name,
                       "params": {k: str(v) for k, v in params.items()}},
            "checks": run_checks(jobs),
        }
        return finish(report, args.out)

    hopf, params = _build(args)
    alg = hopf.alg

    jobs = [
        (
            "confluence",
            f"{args.algebra}:rewrite-rules",
            lambda: (
                not alg.check_local_confluence(),
                f"{len(alg.rules)} rules, all overlaps resolve",
            ),
        ),
    ]
    axiom_cache = {}

    def all_axioms():
        if "result" not in axiom_cache:
            axiom_cache["result"] = hopf.check_all_axioms()
        return axiom_cache["result"]

    for label in ("coproduct_homomorphism", "coassociativity",
                  "counit", "antipode"):
        def axiom(label=label):
            failures = all_axioms().get(label, {})
            return not failures, (
                "exact at every order" if not failures
                else f"failing generators/rules: {sorted(failures)}"
            )
        jobs.append((f"hopf.{label}", f"{args.algebra}:hopf-axioms", axiom))

    rmat = _rmatrix_for(args, hopf)
    if rmat is not None:
        jobs.append((
            "rmatrix.quasi_cocommutativity",
            f"{args.algebra}:rmatrix",
            lambda: (
                not rmat.check_quasi_cocommutativity(),
                "R conjugates the coproduct to its flip, exactly",
            ),
        ))
        jobs.append((
            "rmatrix.yang_baxter",
            f"{args.algebra}:rmatrix",
            lambda: (rmat.check_ybe().is_zero(), "R12 R13 R23 = R23 R13 R12"),
        ))
        if args.strict:
            jobs.append((
                "rmatrix.hexagons",
                f"{args.algebra}:rmatrix",
                lambda: (
                    not rmat.check_hexagons(),
                    "both coproduct-factorisation identities",
                ),
            ))

    report = {
        "command": "verify",
        "config": {"algebra": args.algebra, "order": args.order,
                   "strict": bool(args.strict), **params},
        "checks": run_checks(jobs),
    }
    return finish(report, args.out)


# ---------------------------------------------------------------------------
# scatter
# ---------------------------------------------------------------------------


def cmd_scatter(args):
    cfg_kwargs = {
        "kappa": parse_kappa(args.kappa),
        "branch": bool(args.branch),
        "tolerance": args.tolerance,
    }
    try:
        cfg = ScatterConfig(**cfg_kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc))

    if args.p is not None or args.q is not None:
        if args.p is None or args.q is None:
            raise ConfigError("provide both --p and --q, or neither")
        p = parse_momentum(args.p, "--p")
        q = parse_momentum(args.q, "--q")
    else:
        import random

        rng = random.Random(args.seed)
        p, q = random_momentum(rng), random_momentum(rng)

    report = {
        "command": "scatter",
        "config": {"kappa": str(cfg.kappa), "branch": cfg.branch,
                   "tolerance": cfg.tolerance, "seed": args.seed},
        "input": {"p": momentum_json(p), "q": momentum_json(q)},
    }
    try:
        pp, qp = scatter(p, q, cfg)
    except (SingularKinematics, BranchAmbiguity) as exc:
        report["checks"] = [entry(
            "scatter.kinematics", "scattering-map",
            "fail", f"{type(exc).__name__}: {exc}",
        )]
        report["status"] = "fail"
        emit(report, args.out)
        return EXIT_FAIL

    report["output"] = {"p_prime": momentum_json(pp), "q_prime": momentum_json(qp)}
    residuals = conservation_report(p, q, pp, qp, cfg)
    contrast = sixth_law_contrast(p, q, cfg)
    checks = [
        entry(f"conservation.{k}", "conservation-laws",
              _status(abs(v) < cfg.tolerance), f"|residual| = {abs(v):.3e}")
        for k, v in residuals.items()
    ]
    checks.append(entry(
        "sixth_law.contrast", "conservation-laws", "pass",
        {k: f"{abs(v):.3e}" if isinstance(v, complex) else v
         for k, v in contrast.items()},
    ))
    report["checks"] = sorted(checks, key=lambda e: e["name"])
    return finish(report, args.out)


# ---------------------------------------------------------------------------
# contract-residual
# ---------------------------------------------------------------------------


def cmd_contract_residual(args):
    xi = parse_exact(args.xi, "--xi")
    eps = exact_to_fraction(parse_exact(args.epsilon, "--epsilon"), "--epsilon")
    if eps == 0:
        raise ConfigError("--epsilon must be nonzero")
    if args.order < 1:
        raise ConfigError(f"--order must be at least 1, got {args.order}")
    beta = 1 if args.beta_plus else -1
    xi_frac = exact_to_fraction(xi, "--xi")

    checks = []
    ratios = []
    for label, e0 in (("ratio_eps", eps), ("ratio_eps_half", eps / 2)):
        r = falloff_ratio(xi_frac, args.order, epsilon=e0, beta=beta)
        ratio = Fraction(int(r.numerator), int(r.denominator))
        ratios.append(ratio)
        ok = Fraction(3, 2) <= ratio <= Fraction(5, 2)
        detail = f"residual({e0}) / residual({e0 / 2}) = {float(ratio):.4f}"
        if not ok and beta == 1:
            detail += (
                "; ratio near 1/2 means the residual grows as the scale "
                "shrinks: the misconfigured sign keeps a 1/epsilon term in "
                "the coproduct, so the limit diverges"
            )
        checks.append(entry(label, "contraction-falloff", _status(ok), detail))

    exact = ContractionMap(eps, xi_frac, args.order, beta=beta)
    emb = exact.check_prelimit_embedding()
    checks.append(entry(
        "prelimit_embedding", "contraction-falloff",
        _status(not emb),
        "rescaled generators satisfy the pre-limit relations exactly"
        if not emb else f"failing relations: {sorted(emb)}",
    ))

    report = {
        "command": "contract-residual",
        "config": {"epsilon": str(eps), "xi": str(xi_frac),
                   "order": args.order, "beta": beta},
        "ratios": [str(r) for r in ratios],
        "checks": sorted(checks, key=lambda e: e["name"]),
    }
    return finish(report, args.out)


# ---------------------------------------------------------------------------
# classical
# ---------------------------------------------------------------------------


def cmd_classical(args):
    d = args.dim
    if not 2 <= d <= 6:
        raise ConfigError(f"--dim must be between 2 and 6, got {d}")
    xi = parse_exact(args.xi, "--xi")

    checks = []
    if d == 3 and not args.null_n:
        lie = classical.build_iso3()
        r = classical.classical_r(lie, xi)
        rh = classical.r_hat(lie, xi)
        om = classical.omega(lie, xi)
        x = classical.casimir_x(lie, xi)
        checks.append(entry(
            "cybe.r", "classical-r-matrix",
            _status(classical.cybe_lhs(r).is_zero()), "[[r, r]] = 0"))
        checks.append(entry(
            "mcybe.r_hat", "classical-r-matrix",
            _status((classical.cybe_lhs(rh) - om).is_zero()),
            "[[r_hat, r_hat]] = omega"))
        checks.append(entry(
            "mcybe.casimir", "classical-r-matrix",
            _status((classical.cybe_lhs(x) + om).is_zero()),
            "[[x, x]] = -omega"))
        from .algebras import build_rot_momentum

        delta = classical.cobracket_from_hopf(build_rot_momentum(xi, 2))
        for gen in lie.names:
            expected = classical.Tensor(lie, 2, delta[gen].terms)
            checks.append(entry(
                f"coboundary.{gen}", "lie-bialgebra",
                _status((classical.coboundary(lie, r, gen)
                         - expected).is_zero()),
                "[a (x) 1 + 1 (x) a, r] matches the first-order cobracket"))
        sols = classical.completion_solutions_3d(xi)
        ok = bool(sols)
        checks.append(entry(
            "completion.d3", "symmetric-completion", _status(ok),
            f"exact solutions (a, b): {sols}" if ok else "no solution found"))
    else:
        lie = classical.build_iso_d(d)
        n = None
        if args.null_n:
            n = [1, 1] + [0] * (d - 2)
        rh = classical.r_hat_d(lie, d, n)
        om = classical.omega_d(lie, d, n)
        checks.append(entry(
            f"mcybe.r_hat_d{d}", "classical-r-matrix",
            _status((classical.cybe_lhs(rh) - om).is_zero()),
            "[[r_hat_d, r_hat_d]] = omega_d"
            + (" = 0 (null direction vector)" if args.null_n else "")))
        if args.null_n:
            checks.append(entry(
                f"null_n.d{d}", "classical-r-matrix",
                _status(classical.cybe_lhs(rh).is_zero()),
                "[[r_hat_d, r_hat_d]] = 0 for a null n"))
        if not args.null_n:
            obs = classical.completion_obstruction_d(d)
            expected = (d == 3)
            checks.append(entry(
                f"completion.d{d}", "symmetric-completion",
                _status(obs["solvable"] == expected),
                "symmetric completion exists" if obs["solvable"]
                else "no symmetric completion: the cross term vanishes "
                     "while [[r_hat_d, r_hat_d]] does not"))

    report = {
        "command": "classical",
        "config": {"dim": d, "xi": str(xi), "null_n": bool(args.null_n)},
        "checks": sorted(checks, key=lambda e: e["name"]),
    }
    return finish(report, args.out)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qhopf",
        description="Exact verification suite for q-deformed Hopf algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("verify", help="build an algebra and run its checks")
    pv.add_argument("--algebra", choices=ALGEBRAS, default="uq_sl2")
    pv.add_argument("--order", type=int, default=None,
                    help="series truncation order (default 3; 4 for uq_sl2)")
    pv.add_argument("--xi", default="0")
    pv.add_argument("--epsilon", default="1/10")
    pv.add_argument("--table", default=None,
                    help="verify a saved rule table instead of building")
    pv.add_argument("--strict", action="store_true",
                    help="also check the hexagon identities")
    pv.add_argument("--out", default=None)
    pv.set_defaults(fn=cmd_verify)

    ps = sub.add_parser("scatter", help="apply the momentum scattering map")
    ps.add_argument("--p", default=None,
                    help='momentum as JSON [[re,im],[re,im],[re,im]]')
    ps.add_argument("--q", default=None)
    ps.add_argument("--kappa", default="1")
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--tolerance", type=float, default=1e-12)
    ps.add_argument("--branch", action="store_true",
                    help="take the other sheet of sqrt/log")
    ps.add_argument("--out", default=None)
    ps.set_defaults(fn=cmd_scatter)

    pc = sub.add_parser("contract-residual",
                        help="falloff-rate test for the contraction limit")
    pc.add_argument("--epsilon", default="1/10")
    pc.add_argument("--xi", default="0")
    pc.add_argument("--order", type=int, default=2)
    pc.add_argument("--beta-plus", action="store_true",
                    help="use the divergent sign choice beta = +1")
    pc.add_argument("--out", default=None)
    pc.set_defaults(fn=cmd_contract_residual)

    pl = sub.add_parser("classical",
                        help="classical r-matrix and bialgebra checks")
    pl.add_argument("--dim", type=int, default=3)
    pl.add_argument("--xi", default="0")
    pl.add_argument("--null-n", action="store_true",
                    help="use a null direction vector n")
    pl.add_argument("--out", default=None)
    pl.set_defaults(fn=cmd_classical)

    return parser


def default_order(args):
    if getattr(args, "order", None) is None and args.command == "verify":
        args.order = 4 if args.algebra == "uq_sl2" else 3


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed a usage message
        return EXIT_USAGE if exc.code not in (0,) else 0
    default_order(args)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # contract: never panic on bad input
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
