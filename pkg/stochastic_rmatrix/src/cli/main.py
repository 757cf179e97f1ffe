"""
Command-line front end for the stochastic R-matrix engine

FEATURES:
- verify: run identity suites at random exact rational points, JSON report
- build: export R, L, M, K, T, H or the Markov generator with exact entries
- simulate: Gillespie cross-check of the open-chain generator
- exit codes: 0 all pass, 1 failed check or refused rates, 2 bad configuration or a pole at the requested point
"""

import argparse
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import pandas as pd
from tqdm import tqdm

from ..boundary import (
    RIGHT_UPPER,
    STOCHASTIC_FAMILIES,
    build_K,
    build_Ktilde,
    family_factory,
    k_to_kbar,
    kbar_factory,
    twisted_factory,
    verify_dual_reflection,
    verify_family_structure,
    verify_recurrences,
    verify_reference_matrices,
    verify_reflection,
    verify_reflection_bar,
    verify_reflection_nondiff,
    verify_reflection_nondiff_bar,
    verify_nondiff_stochastic,
    verify_trace_lambda,
    verify_trace_roundtrip,
)
from ..boundary.golden import REFERENCE
from ..chain import (
    ChainSpec,
    double_row_transfer,
    hamiltonian_local,
    histogram_frame,
    jump_frame,
    simulate_many,
    stationary_exact,
    verify_hamiltonian,
    verify_transfer,
)
from ..config import settings
from ..exactnum import Budget, ConfigError, NegativeRate, RKQError, VerificationReport, parse_rat
from ..identities import (
    verify_appendixB,
    verify_orthogonality,
    verify_star_star,
    verify_sum1,
    verify_sum2,
    verify_sum2_from_star_star,
)
from ..rmat import (
    FIRST,
    SECOND,
    ModelConfig,
    build_L,
    build_M,
    build_Rbar,
    build_S,
    verify_crossing,
    verify_l_operators,
    verify_m_invariance,
    verify_modified_ybe,
    verify_nondiff_inverse,
    verify_nondiff_specialization,
    verify_regularity,
    verify_rtilde_methods,
    verify_stochastic,
    verify_symmetries,
    verify_unitarity,
    verify_ybe,
)
from .reports import CheckRecord, RunReport, print_summary, write_matrix

logger = logging.getLogger(__name__)

SUITES = (
    "ybe", "unitarity", "crossing", "symmetries", "reflection", "dual", "recurrences",
    "starstar", "sums", "appendixB", "appendixD", "transfer", "hamiltonian", "nondiff",
)
OBJECTS = ("S", "Rbar", "L", "M", "K", "Kbar", "Ktilde", "T", "H", "generator")

Task = Tuple[str, Dict[str, object], Callable[[], object]]


# suites ----------------------------------------------------------------------

def _single(name: str, params: Dict[str, object], fn: Callable[[], VerificationReport]) -> Task:
    return name, params, fn


def suite_tasks(suite: str, args: argparse.Namespace, budget: Budget) -> List[Task]:
    """Verifier calls making up one suite; each returns a report or a dict of reports."""
    n, I, J, cap = args.n, args.I, args.J, args.cap
    cfg = ModelConfig(n, I, J)
    base = {"n": n, "I": I, "J": J}
    families = [args.family] if args.family else list(STOCHASTIC_FAMILIES)

    if suite == "ybe":
        ModelConfig(n, J, args.K)
        return [
            _single("ybe", {**base, "K": args.K}, lambda: verify_ybe(n, I, J, args.K, budget)),
            _single("l-operators", {"n": n, "J": J}, lambda: verify_l_operators(n, J, budget)),
        ]
    if suite == "unitarity":
        return [
            _single("unitarity", base, lambda: verify_unitarity(cfg, budget)),
            _single("stochastic", base, lambda: verify_stochastic(cfg, budget)),
        ]
    if suite == "crossing":
        return [
            _single("crossing", base, lambda: verify_crossing(cfg, budget)),
            _single("m-invariance", base, lambda: verify_m_invariance(cfg, budget)),
            _single("rtilde-methods", base, lambda: verify_rtilde_methods(cfg, budget)),
            _single("modified-ybe", {"n": n, "J": J}, lambda: verify_modified_ybe(n, J, budget)),
        ]
    if suite == "symmetries":
        return [
            _single("regularity", {"n": n, "I": I}, lambda: verify_regularity(n, I, budget)),
            _single("symmetries", base, lambda: verify_symmetries(cfg, budget)),
        ]
    if suite == "reflection":
        tasks: List[Task] = []
        for family in families:
            params = {**base, "family": family}
            tasks.append(_single(f"structure {family}", params,
                                 lambda f=family: verify_family_structure(n, J, f, budget)))
            tasks.append(_single(f"reflection {family}", params,
                                 lambda f=family: verify_reflection(cfg, family_factory(n, f), budget=budget)))
            tasks.append(_single(f"reflection-bar {family}", params,
                                 lambda f=family: verify_reflection_bar(cfg, kbar_factory(n, f), budget=budget)))
        tasks.append(_single("reflection sigma-twist", {**base, "family": RIGHT_UPPER},
                             lambda: verify_reflection(cfg, twisted_factory(n, RIGHT_UPPER), budget=budget,
                                                       extra_symbols=("mu",))))
        return tasks
    if suite == "dual":
        tasks = [_single("dual-reflection", base, lambda: verify_dual_reflection(cfg, budget=budget))]
        if I == J:
            tasks.append(_single("trace-roundtrip", {"n": n, "J": J}, lambda: verify_trace_roundtrip(n, J, budget)))
            tasks.append(_single("trace-lambda", {"n": n, "J": J}, lambda: verify_trace_lambda(n, J, budget)))
        return tasks
    if suite == "recurrences":
        return [_single("recurrences", {"n": n, "J": J}, lambda: verify_recurrences(n, J, RIGHT_UPPER, budget))]
    if suite == "starstar":
        m = n - 1
        return [
            _single("star-star", {"m": m, "cap": cap}, lambda: verify_star_star(m, cap, budget)),
            _single("sum2-from-star-star", {"m": m, "cap": cap}, lambda: verify_sum2_from_star_star(m, cap, budget)),
        ]
    if suite == "sums":
        m = n - 1
        return [
            _single("sum1", {"n": n, "J": J, "cap": cap}, lambda: verify_sum1(n, J, cap, budget)),
            _single("sum2", {"m": m, "cap": cap}, lambda: verify_sum2(m, cap, budget)),
            _single("orthogonality", {"m": m, "cap": cap}, lambda: verify_orthogonality(m, cap, budget)),
        ]
    if suite == "appendixB":
        return [_single("summation formulas", {}, lambda: verify_appendixB(budget))]
    if suite == "appendixD":
        if (n, J) not in REFERENCE:
            raise ConfigError(f"no reference matrices for n={n}, J={J}; available: {sorted(REFERENCE)}")
        return [_single("reference matrices", {"n": n, "J": J}, lambda: verify_reference_matrices(n, J, budget))]
    if suite in ("transfer", "hamiltonian"):
        spec = chain_spec(args)
        params = {"n": n, "J": J, "N": args.N}
        if suite == "transfer":
            return [_single("transfer", params, lambda: verify_transfer(spec, budget))]
        return [_single("hamiltonian", params, lambda: verify_hamiltonian(spec, budget))]
    if suite == "nondiff":
        params = {"n": n, "cap": cap}
        return [
            _single("nondiff-inverse", params, lambda: verify_nondiff_inverse(n, cap, budget)),
            _single("nondiff-reflection", params, lambda: verify_reflection_nondiff(n, cap, budget)),
            _single("nondiff-reflection-bar", params, lambda: verify_reflection_nondiff_bar(n, cap, budget)),
            _single("nondiff-stochastic", params, lambda: verify_nondiff_stochastic(n, cap, budget)),
            _single("nondiff-specialization", base, lambda: verify_nondiff_specialization(cfg, budget)),
        ]
    raise ConfigError(f"unknown suite {suite!r}")


def _records(params: Dict[str, object], result) -> List[CheckRecord]:
    if isinstance(result, dict):
        return [CheckRecord.from_report(r, {**params, "part": key}) for key, r in result.items()]
    return [CheckRecord.from_report(result, params)]


def run_suites(suites: Sequence[str], args: argparse.Namespace, budget: Budget, jobs: int = 1) -> RunReport:
    name = "all" if len(suites) > 1 else suites[0]
    tasks: List[Task] = []
    for suite in suites:
        if suite == "appendixD" and (args.n, args.J) not in REFERENCE and len(suites) > 1:
            logger.info(f"⚠️ skipping appendixD for n={args.n}, J={args.J}")
            continue
        tasks.extend(suite_tasks(suite, args, budget))

    start = time.perf_counter()
    logger.info(f"🚀 verify {name}: {len(tasks)} checks, {budget.points} points each, seed {budget.seed}")
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        futures = [pool.submit(fn) for _, _, fn in tasks]
        results = [f.result() for f in tqdm(futures, desc=f"verify {name}", disable=not args.progress)]

    report = RunReport(suite=name, seed=budget.seed)
    for (_, params, _), result in zip(tasks, results):
        report.checks.extend(_records(params, result))
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report


# chain helpers -----------------------------------------------------------------

def chain_spec(args: argparse.Namespace) -> ChainSpec:
    right = args.family or "right-lower"
    return ChainSpec(args.n, args.J, args.N, parse_rat(args.q), parse_rat(args.nu), right_family=right)


# commands ----------------------------------------------------------------------

def cmd_verify(args: argparse.Namespace) -> int:
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    budget = Budget(args.points, args.seed, args.bound, settings.max_resample, args.perturb)
    report = run_suites(suites, args, budget, args.jobs)
    path = Path(args.report) if args.report else settings.report_dir / f"verify_{report.suite}.json"
    report.save(path)
    print_summary(report)
    if report.passed:
        print(f"✅ all {len(report.checks)} checks passed")
    else:
        for failure in report.failures:
            print(f"❌ {failure.id}: {failure.status} {failure.witness or ''}")
    return report.exit_code()


def build_object(args: argparse.Namespace):
    """(operator, header, params) for the requested object."""
    n, I, J = args.n, args.I, args.J
    q, nu = parse_rat(args.q), parse_rat(args.nu)
    u, w, x = parse_rat(args.u), parse_rat(args.w), parse_rat(args.x)
    header: Dict[str, object] = {"object": args.object, "n": n, "I": I, "J": J}
    obj = args.object
    if obj == "S":
        return build_S(ModelConfig(n, I, J), u, q), header, {"q": q, "u": u}
    if obj == "Rbar":
        return build_Rbar(ModelConfig(n, I, J), x, q), header, {"q": q, "x": x}
    if obj == "L":
        header["side"] = args.side
        return build_L(n, J, args.side, u, q), header, {"q": q, "u": u}
    if obj == "M":
        return build_M(n, J, q), header, {"q": q}
    family = args.family or RIGHT_UPPER
    if obj == "K":
        header["family"] = family
        return build_K(n, J, w, nu, q, family).op, header, {"q": q, "nu": nu, "w": w}
    if obj == "Kbar":
        header["family"] = f"bar({family})"
        return k_to_kbar(build_K(n, J, 1 / w, nu, q, family)).op, header, {"q": q, "nu": nu, "w": w}
    if obj == "Ktilde":
        return build_Ktilde(n, J, u, nu, q).op, header, {"q": q, "nu": nu, "u": u}
    spec = chain_spec(args)
    header.update({"N": spec.N, "right_family": spec.right_family, "left_family": spec.left_family})
    if obj == "T":
        return double_row_transfer(spec, u).op, header, {"q": q, "nu": nu, "u": u}
    H = hamiltonian_local(spec)
    if obj == "H":
        return H.op, header, {"q": q, "nu": nu}
    return H.to_generator().op, header, {"q": q, "nu": nu}


def cmd_build(args: argparse.Namespace) -> int:
    op, header, params = build_object(args)
    suffix = "csv" if args.format == "csv" else "json"
    path = Path(args.out) if args.out else settings.report_dir / f"{args.object}.{suffix}"
    write_matrix(op, header, params, path, args.format)
    print(f"✅ {args.object} ({op.dim}x{op.dim}, {op.nnz()} nonzero) written to {path}")
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    spec = chain_spec(args)
    generator = hamiltonian_local(spec).to_generator()
    seeds = [args.seed + k for k in range(args.trajectories)]
    results = simulate_many(generator, args.tmax, seeds, args.jobs, args.events, progress=args.progress)
    pi = stationary_exact(generator)

    out = Path(args.out) if args.out else settings.report_dir / "simulation"
    out.mkdir(parents=True, exist_ok=True)
    jumps = pd.concat(
        [jump_frame(r).assign(trajectory=k) for k, r in enumerate(results)], ignore_index=True
    )
    jumps.to_csv(out / "jumps.csv", index=False)
    histogram = histogram_frame(results, pi)
    histogram.to_csv(out / "histogram.csv", index=False)
    print(f"💾 jumps and histogram saved to {out}")
    print(histogram.to_string(index=False))
    return 0


# parser ------------------------------------------------------------------------

def _model_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--n', type=int, default=2, help='rank n of sl_n (default: 2)')
    parser.add_argument('--I', type=int, default=1, help='spin of the first factor (default: 1)')
    parser.add_argument('--J', type=int, default=1, help='spin of the second factor (default: 1)')
    parser.add_argument('--N', type=int, default=2, help='number of chain sites (default: 2)')
    parser.add_argument('--q', default="2", help='q as "a/b" (default: 2)')
    parser.add_argument('--nu', default="1", help='boundary parameter nu (default: 1)')
    parser.add_argument('--family', choices=STOCHASTIC_FAMILIES, help='boundary family')
    parser.add_argument('--jobs', type=int, default=settings.jobs, help='worker threads')
    parser.add_argument('--progress', action='store_true', help='show a progress bar')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rkq",
        description="Exact construction and verification of stochastic R- and K-matrices",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python rkq.py verify appendixD --n 3 --J 2                 # Compare against reference matrices
  python rkq.py verify ybe --n 3 --I 1 --J 2 --K 2           # Yang-Baxter at 3 random points
  python rkq.py verify reflection --n 3 --perturb            # Negative control, expect failure
  python rkq.py build K --family right-upper --q 2 --nu 1/3 --w 4
  python rkq.py build S --q 2 --u 9 --format csv --out S.csv
  python rkq.py simulate --N 2 --q 2 --nu 1 --tmax 1000      # Gillespie cross-check
        """
    )
    parser.add_argument('--log-level', default=settings.log_level, help='logging level (default: RKQ_LOG_LEVEL)')
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser('verify', help='run a verification suite')
    verify.add_argument('suite', choices=SUITES + ("all",))
    _model_flags(verify)
    verify.add_argument('--K', type=int, default=1, help='third spin for ybe (default: 1)')
    verify.add_argument('--cap', type=int, default=2, help='component cap / sector cap (default: 2)')
    verify.add_argument('--seed', type=int, default=settings.seed)
    verify.add_argument('--points', type=int, default=settings.points)
    verify.add_argument('--bound', type=int, default=settings.bound)
    verify.add_argument('--report', help='JSON report path (default: RKQ_REPORT_DIR/verify_<suite>.json)')
    verify.add_argument('--perturb', action='store_true', help='perturb one entry; every check should fail')

    build = sub.add_parser('build', help='export a matrix with exact entries')
    build.add_argument('object', choices=OBJECTS)
    _model_flags(build)
    build.add_argument('--u', default="3", help='spectral parameter u = x^2')
    build.add_argument('--w', default="3", help='boundary parameter w = y^2')
    build.add_argument('--x', default="3", help='parameter of R-bar')
    build.add_argument('--side', choices=(FIRST, SECOND), default=FIRST, help='L-operator S_{1,J} or S_{J,1}')
    build.add_argument('--out', help='output file')
    build.add_argument('--format', choices=("json", "csv"), default="json")

    simulate = sub.add_parser('simulate', help='Gillespie simulation of the open chain')
    _model_flags(simulate)
    simulate.add_argument('--tmax', type=float, default=1000.0, help='simulated time per trajectory')
    simulate.add_argument('--events', type=int, default=settings.sim_events, help='max jumps per trajectory')
    simulate.add_argument('--trajectories', type=int, default=1)
    simulate.add_argument('--seed', type=int, default=settings.seed)
    simulate.add_argument('--out', help='output directory for jumps.csv and histogram.csv')
    return parser


COMMANDS = {"verify": cmd_verify, "build": cmd_build, "simulate": cmd_simulate}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.INFO),
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except NegativeRate as e:
        print(f"❌ Refusing to simulate: {e}")
        return 1
    except ZeroDivisionError as e:
        print(f"❌ Pole at the requested parameters: {e}")
        return 2
    except (RKQError, ValueError) as e:
        print(f"❌ Error: {e}")
        return 2
    except KeyboardInterrupt:
        print(f"\n🛑 Operation interrupted by user")
        return 1


if __name__ == "__main__":
    exit(main())
