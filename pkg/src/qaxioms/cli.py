"""
Command-line interface.

Exit codes: 0 success, 1 invalid input, 2 singular (inadmissible) operator,
3 numerical contract violation.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import serialization as ser
from .errors import InvalidInputError, NumericContractError, SingularOperatorError
from .evolution import (
    EvolutionOperator,
    evolve_linear_B,
    evolve_manual_norm_A,
    evolve_unitary,
    theorem1_lab,
)
from .linalg_core import DEFAULT_TOL, OperatorTag, classify_operator
from .measurement import born_probabilities_A, born_probabilities_B, sample_measurement
from .signaling import (
    SignalingConfig,
    error_rate_sweep,
    formulation_A_distribution,
    no_comm_report_to_json,
    no_communication_check,
    run_protocol,
    signaling_report_to_json,
    signaling_report_to_tsv,
    sweep_to_tsv,
)
from .states import CanonicalRay, RawState, UnitState, normalize

EXIT_OK, EXIT_INVALID, EXIT_SINGULAR, EXIT_NUMERIC = 0, 1, 2, 3

DEFAULT_EPSILON = 0.1
DEFAULT_TRIALS = 100_000
DEFAULT_SEED = 0
DEFAULT_SAMPLES = 1000

VERDICTS = {
    OperatorTag.UNITARY: "UNITARY",
    OperatorTag.PROPORTIONAL_UNITARY: "PROPORTIONAL-UNITARY (physically standard)",
    OperatorTag.GENERAL_INVERTIBLE: "NON-UNITARY (B′ only)",
    OperatorTag.SINGULAR: "SINGULAR (inadmissible)",
}


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which is reserved for singular operators
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _positive_float(text: str) -> float:
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text}")
    return x


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return ser.loads(fh.read())
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from None


def _fmt(z: complex) -> str:
    return f"{z.real:+.12g}{z.imag:+.12g}j"


class _Out:
    def __init__(self, path: str | None):
        self.path = path
        self.parts: list[str] = []

    def write(self, text: str):
        self.parts.append(text if text.endswith("\n") else text + "\n")

    def flush(self):
        text = "".join(self.parts)
        if self.path:
            with open(self.path, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


def cmd_classify(args, out: _Out) -> int:
    m = ser.matrix_from_json(_read_json(args.matrix))
    c = classify_operator(m, args.tol)
    verdict = VERDICTS[c.tag]
    if args.format == "json":
        out.write(ser.dumps({"verdict": verdict, "operator_class": ser.operator_class_to_json(c)}))
    elif args.format == "tsv":
        out.write("verdict\ttag\tgram_residual\tcondition_number")
        out.write(f"{verdict}\t{c.tag.value}\t{c.gram_residual!r}\t{c.condition_number!r}")
    else:
        out.write(verdict)
        out.write(f"  ||U^dagger U - I||_F = {c.gram_residual:.6e}")
        out.write(f"  condition number   = {c.condition_number:.6e}")
        if c.scale is not None:
            out.write(f"  scale              = {_fmt(c.scale)} (|scale| = {abs(c.scale):.12g})")
        out.write(ser.dumps(ser.operator_class_to_json(c)))
    return EXIT_SINGULAR if c.tag is OperatorTag.SINGULAR else EXIT_OK


def cmd_evolve(args, out: _Out) -> int:
    state = ser.state_from_json(_read_json(args.state))
    if isinstance(state, CanonicalRay):
        state = UnitState(state.vec)
    op = EvolutionOperator(ser.matrix_from_json(_read_json(args.matrix)), args.matrix)
    if args.engine == "unitary":
        result = evolve_unitary(state, op)
    elif args.engine == "linear-B":
        result = evolve_linear_B(state, op)
    else:
        result = evolve_manual_norm_A(state if isinstance(state, UnitState) else normalize(state), op)
    if args.format == "json":
        out.write(ser.dumps(ser.state_to_json(result)))
    elif args.format == "tsv":
        out.write("index\tre\tim")
        for k, z in enumerate(result.vec):
            out.write(f"{k}\t{z.real!r}\t{z.imag!r}")
    else:
        out.write(f"operator class: {VERDICTS[op.tag]}")
        out.write(f"engine: {args.engine}; output norm = {np.linalg.norm(result.vec):.15g}")
        for k, z in enumerate(result.vec):
            out.write(f"  [{k}] {_fmt(z)}")
    return EXIT_OK


def cmd_measure(args, out: _Out) -> int:
    state = ser.state_from_json(_read_json(args.state))
    obs = ser.observable_from_json(_read_json(args.observable))
    raw = RawState(state.vec)
    dist_b = born_probabilities_B(raw, obs)
    dist_a = born_probabilities_A(normalize(raw), obs)
    record = None
    if args.sample:
        record = sample_measurement(raw, obs, args.seed)
    if args.format == "json":
        payload = {
            "formulation_A": ser.distribution_to_json(dist_a),
            "formulation_B": ser.distribution_to_json(dist_b),
        }
        if record is not None:
            payload["sample"] = {
                "observed_eigenvalue": record.observed_eigenvalue,
                "post_state": ser.state_to_json(record.post_state),
                "rng_seed_used": record.rng_seed_used,
            }
        out.write(ser.dumps(payload))
    elif args.format == "tsv":
        out.write("eigenvalue\tP_A\tP_B")
        for (lam, pa), (_, pb) in zip(dist_a.outcomes, dist_b.outcomes):
            out.write(f"{lam!r}\t{pa!r}\t{pb!r}")
    else:
        out.write(f"{'eigenvalue':>14}  {'P (unit vector)':>18}  {'P (projective)':>18}")
        for (lam, pa), (_, pb) in zip(dist_a.outcomes, dist_b.outcomes):
            out.write(f"{lam:>14.8g}  {pa:>18.15f}  {pb:>18.15f}")
        if record is not None:
            out.write(f"sampled outcome (seed {record.rng_seed_used}): {record.observed_eigenvalue:.8g}")
    return EXIT_OK


def cmd_bell_signal(args, out: _Out) -> int:
    cfg = SignalingConfig(args.epsilon, args.bit, args.trials, args.seed)
    rep = run_protocol(cfg, workers=args.workers)
    if args.format == "json":
        out.write(ser.dumps(signaling_report_to_json(rep)))
    elif args.format == "tsv":
        out.write(signaling_report_to_tsv(rep))
    else:
        eps = cfg.epsilon
        p_b = rep.analytic_bob_distribution.probabilities
        p_a = formulation_A_distribution(cfg.bit_to_send, eps).probabilities
        emp = np.array(rep.empirical_counts) / cfg.n_trials
        formula = np.array([1.0, eps**2]) / (1 + eps**2)
        if cfg.bit_to_send == 1:
            formula = formula[::-1]
        out.write(f"epsilon = {eps!r}, bit sent = {cfg.bit_to_send}, trials = {cfg.n_trials}, seed = {cfg.rng_seed}")
        out.write(f"{'Bob bit':>8}  {'formula':>16}  {'projective':>16}  {'unit vector':>16}  {'empirical':>10}  {'count':>9}")
        for k in (0, 1):
            out.write(
                f"{k:>8}  {formula[k]:>16.13f}  {p_b[k]:>16.13f}  {p_a[k]:>16.13f}"
                f"  {emp[k]:>10.6f}  {rep.empirical_counts[k]:>9d}"
            )
        out.write(
            f"error rate: analytic {rep.analytic_error_rate:.10f}, empirical {rep.empirical_error_rate:.6f}"
            f" ({(rep.empirical_error_rate - rep.analytic_error_rate) / rep.sigma:+.2f} sigma)"
        )
        d = rep.reduced_density_unnormalized.diagonal
        out.write(f"Bob's reduced density matrix (unnormalized): diag({float(d[0])!r}, {float(d[1])!r})")
    return EXIT_OK


def cmd_no_comm_check(args, out: _Out) -> int:
    rep = no_communication_check(args.unitaries, args.seed)
    if args.format == "json":
        out.write(ser.dumps(no_comm_report_to_json(rep)))
    elif args.format == "tsv":
        out.write("n_unitaries\tseed\tmax_marginal_deviation")
        out.write(f"{rep.n_unitaries}\t{rep.seed}\t{rep.max_marginal_deviation!r}")
    else:
        out.write(f"{rep.n_unitaries} random unitary gates on Alice's qubit")
        out.write(f"max |P_Bob - 1/2| = {rep.max_marginal_deviation:.3e}")
    return EXIT_OK


def _theorem_verdict(tag: OperatorTag) -> str:
    return {
        OperatorTag.UNITARY: "admissible under A′ and B′",
        OperatorTag.PROPORTIONAL_UNITARY: "proportional-unitary: physically standard under manual normalization",
        OperatorTag.GENERAL_INVERTIBLE: "admissible under B′ only",
        OperatorTag.SINGULAR: "inadmissible under A′ and B′ (singular)",
    }[tag]


def cmd_theorem_check(args, out: _Out) -> int:
    m = ser.matrix_from_json(_read_json(args.matrix))
    rep = theorem1_lab(EvolutionOperator(m, args.matrix), args.samples, args.seed)
    tag = rep.operator_class.tag
    if args.format == "json":
        payload = ser.theorem_report_to_json(rep)
        payload["verdict"] = _theorem_verdict(tag)
        out.write(ser.dumps(payload))
    elif args.format == "tsv":
        out.write("tag\tmax_unit_norm_deviation\tpolarization_residual\tgram_residual\twitness_norm_deviation")
        out.write(
            f"{tag.value}\t{rep.max_unit_norm_deviation!r}\t{rep.polarization_residual!r}"
            f"\t{rep.gram_residual!r}\t{rep.witness_norm_deviation!r}"
        )
    else:
        out.write(VERDICTS[tag])
        out.write(f"verdict: {_theorem_verdict(tag)}")
        out.write(f"  max | ||U psi|| - 1 | over {rep.n_samples} unit vectors = {rep.max_unit_norm_deviation:.6e}")
        out.write(f"  ||U^dagger U - I||_F = {rep.gram_residual:.6e}")
        out.write(f"  polarization residual = {rep.polarization_residual:.3e}")
        if rep.witness is not None:
            out.write(f"  witness (| ||U w|| - 1 | = {rep.witness_norm_deviation:.6e}):")
            for k, z in enumerate(rep.witness):
                out.write(f"    [{k}] {_fmt(z)}")
    return EXIT_SINGULAR if tag is OperatorTag.SINGULAR else EXIT_OK


def _epsilons(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def cmd_sweep(args, out: _Out) -> int:
    rows = error_rate_sweep(args.epsilons, args.trials, args.seed, args.workers)
    if args.format == "json":
        out.write(ser.dumps([vars(r) for r in rows]))
    elif args.format == "tsv":
        out.write(sweep_to_tsv(rows))
    else:
        out.write(f"{'epsilon':>8}  {'analytic error':>15}  {'empirical error':>15}")
        for r in rows:
            out.write(f"{r.epsilon:>8.4g}  {r.analytic_error:>15.8e}  {r.empirical_error:>15.8e}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["human", "json", "tsv"], default="human")
    common.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")

    parser = _Parser(prog="qaxioms", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", parents=[common], help="classify an evolution operator")
    p.add_argument("matrix", help="matrix JSON file")
    p.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("evolve", parents=[common], help="evolve a state with one of the three engines")
    p.add_argument("--state", required=True)
    p.add_argument("--matrix", required=True)
    p.add_argument("--engine", choices=["unitary", "linear-B", "manual-A"], default="linear-B")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("measure", parents=[common], help="Born probabilities under both rules")
    p.add_argument("--state", required=True)
    p.add_argument("--observable", required=True)
    p.add_argument("--sample", action="store_true", help="also draw one seeded outcome")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("bell-signal", parents=[common], help="run the entanglement signaling protocol")
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    p.add_argument("--bit", type=int, choices=[0, 1], default=0)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_bell_signal)

    p = sub.add_parser("no-comm-check", parents=[common], help="unitary control experiment")
    p.add_argument("--unitaries", type=int, default=100)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_no_comm_check)

    p = sub.add_parser("theorem-check", parents=[common], help="norm-preservation laboratory for one operator")
    p.add_argument("matrix")
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_theorem_check)

    p = sub.add_parser("sweep", parents=[common], help="error rate versus epsilon, both bits")
    p.add_argument("--epsilons", type=_epsilons, default=[k / 10 for k in range(1, 10)])
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Out(args.out)
    try:
        code = args.func(args, out)
    except SingularOperatorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except NumericContractError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (InvalidInputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
