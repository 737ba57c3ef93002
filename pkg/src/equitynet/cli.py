"""Command-line front end.

Subcommands: eval, equity, features, gen-dataset, train, infer, bench,
convergence.

Exit codes: 0 success, 1 usage error, 2 domain error (bad cards/states,
malformed model or dataset files, bad values), 3 I/O error (missing
files, refusing to overwrite without --force, write failures).

Any subcommand accepts `--config FILE` with `key=value` lines supplying
defaults for its own options; explicit command-line flags still win.
Subcommands that consume randomness print the seeds they used.
"""

from __future__ import annotations

import argparse
import os
import sys

from .bench import run_bench, training_cost_projection, PUBLISHED_MC_SECONDS
from .cards import CardParseError, evaluate_best, parse_cards, RANK_CODES
from .dataset import (
    DatasetFormatError,
    GenConfig,
    features_matrix,
    generate,
    labels_matrix,
    load_csv,
    save_csv,
    split,
)
from .equity import (
    GameState,
    InvalidStateError,
    UnsupportedStageError,
    convergence_trace,
    exact_equity,
    simulate_equity,
)
from .features import extract_features, feature_names
from .model import EquityNetwork
from .network import ModelFormatError


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_mix(text: str) -> tuple[float, float, float, float]:
    parts = [float(x) for x in text.split(",")]
    if len(parts) != 4:
        raise ValueError("stage mix needs 4 comma-separated weights")
    return tuple(parts)


def _join_codes(value) -> str:
    # flag values arrive as a list; config-file values arrive as one string
    return value if isinstance(value, str) else " ".join(value)


def _state_from_flags(args) -> GameState:
    codes = _join_codes(args.hole) + " " + _join_codes(args.board)
    return GameState.from_codes(codes.strip())


def _check_overwrite(path: str, force: bool) -> None:
    if os.path.exists(path) and not force:
        raise FileExistsError(f"{path} exists; pass --force to overwrite")


def _add_state_flags(p: _Parser) -> None:
    p.add_argument("--hole", nargs="+", help='two hole card codes, e.g. --hole As Ah')
    p.add_argument("--board", nargs="*", default=[], help="0/3/4/5 board card codes")


# flags that must be present after the config file is merged in
_REQUIRED = {
    "eval": ("cards",),
    "equity": ("hole",),
    "features": ("hole",),
    "gen-dataset": ("out", "count"),
    "train": ("data", "out"),
    "infer": ("model", "hole"),
    "bench": ("model",),
    "convergence": ("hole",),
}


def build_parser() -> tuple[_Parser, dict[str, _Parser]]:
    parser = _Parser(prog="equitynet", description=__doc__.strip().split("\n")[0])
    subs = parser.add_subparsers(dest="command", required=True)
    by_name: dict[str, _Parser] = {}

    def sub(name: str, help_text: str) -> _Parser:
        p = subs.add_parser(name, help=help_text)
        p.add_argument("--config", help="file with key=value default overrides")
        by_name[name] = p
        return p

    p = sub("eval", "rank a hand of 2-7 cards")
    p.add_argument("--cards", nargs="+", help="card codes like Ah Kd Ts")

    p = sub("equity", "win/tie probability for a state")
    _add_state_flags(p)
    p.add_argument("--exact", action="store_true", help="full enumeration (post-flop)")
    p.add_argument("--n", type=int, default=1000, help="Monte Carlo sample size")
    p.add_argument("--seed", type=int, default=0)

    p = sub("features", "print the 29 feature values for a state")
    _add_state_flags(p)
    p.add_argument("--csv", action="store_true", help="emit a 29-column CSV row")
    p.add_argument("--out", help="optional path for the CSV output")
    p.add_argument("--force", action="store_true", help="overwrite existing output")

    p = sub("gen-dataset", "generate a labeled training CSV")
    p.add_argument("--out", help="output CSV path")
    p.add_argument("--count", type=int, help="number of records")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--label-rollouts", type=int, default=1000)
    p.add_argument(
        "--stage-mix",
        type=_parse_mix,
        default=(0.25, 0.25, 0.25, 0.25),
        help="preflop,flop,turn,river weights (default uniform)",
    )
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--force", action="store_true", help="overwrite existing output")

    p = sub("train", "fit the network on a dataset CSV")
    p.add_argument("--data", help="dataset CSV from gen-dataset")
    p.add_argument("--out", help="model file to write")
    p.add_argument("--report", help="optional metrics CSV to write")
    p.add_argument("--epochs", type=int, default=10000)
    p.add_argument("--batch", type=int, default=250)
    p.add_argument("--lr", type=float, default=1e-3)
    p.add_argument("--train-fraction", type=float, default=0.9)
    p.add_argument("--split-seed", type=int, default=0)
    p.add_argument("--init-seed", type=int, default=0)
    p.add_argument("--shuffle-seed", type=int, default=0)
    p.add_argument("--force", action="store_true", help="overwrite existing output")

    p = sub("infer", "network win/tie prediction for a state")
    p.add_argument("--model", help="model file from train")
    _add_state_flags(p)

    p = sub("bench", "time Monte Carlo vs inference per stage")
    p.add_argument("--model", help="model file from train")
    p.add_argument("--states", type=int, default=100, help="timed calls per stage")
    p.add_argument("--rollouts", type=int, default=1000)
    p.add_argument("--warmup", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="optional CSV path for the timing rows")
    p.add_argument("--force", action="store_true", help="overwrite existing output")

    p = sub("convergence", "running MC estimate traces vs sample count")
    _add_state_flags(p)
    p.add_argument("--nmax", type=int, default=1000, help="rollouts per run")
    p.add_argument("--runs", type=int, default=1, help="independent traces")
    p.add_argument("--every", type=int, default=100, help="samples between points")
    p.add_argument("--seed", type=int, default=0, help="run r is seeded seed+r")
    p.add_argument("--out", help="optional CSV path for the traces")
    p.add_argument("--force", action="store_true", help="overwrite existing output")

    return parser, by_name


def _read_config(path: str) -> dict[str, str]:
    overrides = {}
    with open(path) as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path} line {line_no}: expected key=value")
            key, value = line.split("=", 1)
            overrides[key.strip().replace("-", "_")] = value.strip()
    return overrides


def _apply_config(parser: _Parser, sub: _Parser, argv: list[str], args):
    overrides = _read_config(args.config)
    valued = {
        a.dest: a for a in sub._actions if a.nargs != 0 and a.dest != "help"
    }
    for key in overrides:
        if key not in valued:
            sub.error(f"config key {key!r} is not a value option of this command")
    sub.set_defaults(**overrides)
    return parser.parse_args(argv)


def _cmd_eval(args) -> int:
    cards = parse_cards(_join_codes(args.cards))
    if not 2 <= len(cards) <= 7:
        raise InvalidStateError(f"eval takes 2-7 cards, got {len(cards)}")
    if len(set(cards)) != len(cards):
        raise InvalidStateError("duplicate card")
    rank = evaluate_best(tuple(cards))
    ranks = " ".join(RANK_CODES[r - 2] for r in rank.tiebreakers)
    print(f"{rank.category.name.lower()} {ranks}")
    return 0


def _cmd_equity(args) -> int:
    state = _state_from_flags(args)
    if args.exact:
        est = exact_equity(state)
        print(f"method=exact stage={state.stage}")
    else:
        est = simulate_equity(state, args.n, seed=args.seed)
        print(f"method=mc stage={state.stage} n={args.n} seed={args.seed}")
    print(f"p_win={est.p_win:.6f} p_tie={est.p_tie:.6f} n={est.n}")
    return 0


def _cmd_features(args) -> int:
    if args.out:
        _check_overwrite(args.out, args.force)
    state = _state_from_flags(args)
    vec = extract_features(state)
    if args.csv:
        text = ",".join(feature_names()) + "\n"
        text += ",".join(f"{v:.17g}" for v in vec) + "\n"
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
            print(f"wrote features to {args.out}")
        else:
            print(text, end="")
    else:
        for name, value in zip(feature_names(), vec):
            print(f"{name}={value:.6f}")
    return 0


def _cmd_gen_dataset(args) -> int:
    _check_overwrite(args.out, args.force)
    config = GenConfig(
        n_records=args.count,
        master_seed=args.seed,
        label_rollouts=args.label_rollouts,
        stage_mix=args.stage_mix,
    )
    records = generate(config, jobs=args.jobs)
    save_csv(records, args.out)
    print(f"wrote {len(records)} records to {args.out} seed={args.seed}")
    return 0


def _cmd_train(args) -> int:
    _check_overwrite(args.out, args.force)
    if args.report:
        _check_overwrite(args.report, args.force)
    records = load_csv(args.data)
    train_recs, test_recs = split(records, args.train_fraction, seed=args.split_seed)
    if not train_recs:
        raise ValueError("training split is empty")
    model = EquityNetwork(
        lr=args.lr,
        epochs=args.epochs,
        batch_size=args.batch,
        init_seed=args.init_seed,
        shuffle_seed=args.shuffle_seed,
    )
    eval_set = None
    if test_recs:
        eval_set = (features_matrix(test_recs), labels_matrix(test_recs))
    print(
        f"training on {len(train_recs)} records, testing on {len(test_recs)} "
        f"split_seed={args.split_seed} init_seed={args.init_seed} "
        f"shuffle_seed={args.shuffle_seed}"
    )
    model.fit(features_matrix(train_recs), labels_matrix(train_recs), eval_set=eval_set)
    size = model.save(args.out)
    report = model.report_
    print(f"wrote model to {args.out} ({size} bytes)")
    print(f"final epoch mse={report.epoch_mse[-1]:.6f}")
    print(f"train mae_win={report.train.mae_win:.4f} mae_tie={report.train.mae_tie:.4f}")
    if report.test is not None:
        print(f"test  mae_win={report.test.mae_win:.4f} mae_tie={report.test.mae_tie:.4f}")
    if args.report:
        report.to_csv(args.report)
        print(f"wrote report to {args.report}")
    return 0


def _cmd_infer(args) -> int:
    model = EquityNetwork.load(args.model)
    state = _state_from_flags(args)
    p_win, p_tie = model.infer(state)
    print(f"p_win={p_win:.6f} p_tie={p_tie:.6f} stage={state.stage}")
    return 0


def _cmd_bench(args) -> int:
    if args.out:
        _check_overwrite(args.out, args.force)
    model = EquityNetwork.load(args.model)
    print(f"seed={args.seed}")
    report = run_bench(
        model,
        n_states=args.states,
        n_rollouts=args.rollouts,
        warmup=args.warmup,
        seed=args.seed,
    )
    print(report.format_table())
    mc_mean = sum(r.mean_s for r in report.rows if r.method == "mc") / 4
    print(
        "projected hours to label 1e6 states by simulation: "
        f"measured {training_cost_projection(mc_mean):.1f}, "
        f"published {training_cost_projection(PUBLISHED_MC_SECONDS):.1f}"
    )
    if args.out:
        report.to_csv(args.out)
        print(f"wrote timings to {args.out}")
    return 0


def _cmd_convergence(args) -> int:
    if args.out:
        _check_overwrite(args.out, args.force)
    if args.runs < 1:
        raise ValueError(f"runs must be positive, got {args.runs}")
    state = _state_from_flags(args)
    print(
        f"stage={state.stage} nmax={args.nmax} runs={args.runs} "
        f"every={args.every} seed={args.seed}"
    )
    lines = ["run,n,p_win,p_tie"]
    for run in range(args.runs):
        trace = convergence_trace(state, args.nmax, seed=args.seed + run, every=args.every)
        lines += [f"{run},{n},{w:.6f},{t:.6f}" for n, w, t in trace]
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        print(f"wrote {args.runs} traces to {args.out}")
    else:
        print("\n".join(lines))
    return 0


_COMMANDS = {
    "eval": _cmd_eval,
    "equity": _cmd_equity,
    "features": _cmd_features,
    "gen-dataset": _cmd_gen_dataset,
    "train": _cmd_train,
    "infer": _cmd_infer,
    "bench": _cmd_bench,
    "convergence": _cmd_convergence,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser, by_name = build_parser()
    args = parser.parse_args(argv)
    sub = by_name[args.command]
    try:
        if args.config:
            args = _apply_config(parser, sub, argv, args)
        missing = [n for n in _REQUIRED[args.command] if getattr(args, n) is None]
        if missing:
            sub.error(
                "the following arguments are required: "
                + ", ".join("--" + n for n in missing)
            )
        return _COMMANDS[args.command](args)
    except (
        CardParseError,
        InvalidStateError,
        UnsupportedStageError,
        ModelFormatError,
        DatasetFormatError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
