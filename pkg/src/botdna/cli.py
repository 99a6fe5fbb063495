"""Command-line interface: one subcommand per pipeline stage plus `run`.

Exit codes: 0 success, 2 input/parse error, 3 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .clustering import cluster_with_rounds
from .codec import (
    ParseError,
    encode_timeline,
    load_labels,
    parse_timelines,
    read_dna_file,
    split_quarantine,
    write_dna_file,
    write_labels_csv,
    write_timelines_jsonl,
)
from .lcs import build_index, lcs_curve
from .pipeline import (
    ConfigError,
    InputError,
    RunConfig,
    assignments_json,
    curve_csv,
    curve_json,
    groups_json,
    label_accounts,
    load_dna_for_clustering,
    metrics_json,
    predictions_csv,
    quarantine_json,
    read_groups_json,
    read_predictions_csv,
    read_species_json,
    run_pipeline,
    species_json,
    write_text_atomic,
)
from .seeding import SeedSelectionError, form_initial_groups
from .classify import classify_species
from .synth import SynthSpec, evaluate_metrics, generate_synthetic


def _set_by_path(tree: dict, dotted: str, value):
    node = tree
    parts = dotted.split(".")
    for part in parts[:-1]:
        node = node.setdefault(part, {})
        if not isinstance(node, dict):
            raise ConfigError(f"--set path {dotted!r} crosses a non-object value")
    node[parts[-1]] = value


def load_config(args: argparse.Namespace) -> RunConfig:
    """Resolve config file plus --set overrides into a validated RunConfig."""
    raw: dict = {}
    if args.config is not None:
        try:
            raw = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from None
        if not isinstance(raw, dict):
            raise ConfigError("config file must contain a JSON object")
    for item in args.set or []:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        key, _, value = item.partition("=")
        try:
            parsed = json.loads(value)
        except json.JSONDecodeError:
            parsed = value
        _set_by_path(raw, key, parsed)
    return RunConfig.from_dict(raw)


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_synth(args) -> int:
    spec = SynthSpec(
        n_bots=args.bots,
        n_genuine=args.genuine,
        seq_length=args.length,
        template_length=args.template_length,
        noise_rate=args.noise,
        rng_seed=args.seed,
    )
    config = load_config(args)
    timelines = generate_synthetic(spec, config.alphabet)
    out = _out_dir(args)
    write_text_atomic(out / "timelines.jsonl", write_timelines_jsonl(timelines))
    write_text_atomic(out / "labels.csv", write_labels_csv(timelines))
    print(f"wrote {len(timelines)} timelines to {out}")
    return 0


def cmd_encode(args) -> int:
    config = load_config(args)
    with open(args.timelines, encoding="utf-8") as fh:
        timelines = parse_timelines(fh, config.alphabet)
    if not timelines:
        raise InputError(f"no timeline records in {args.timelines}")
    kept, quarantined = split_quarantine(timelines, config.min_dna_length)
    dna = [encode_timeline(t, config.alphabet) for t in timelines]
    out = _out_dir(args)
    write_text_atomic(out / "dna.tsv", write_dna_file(dna))
    write_text_atomic(
        out / "quarantine.json",
        quarantine_json([t.account_id for t in quarantined], config.min_dna_length),
    )
    print(f"encoded {len(dna)} accounts ({len(quarantined)} quarantined)")
    return 0


def cmd_curve(args) -> int:
    config = load_config(args)
    with open(args.dna, encoding="utf-8") as fh:
        dna = read_dna_file(fh, config.alphabet)
    if len(dna) < 2:
        raise InputError("curve requires at least 2 DNA sequences")
    curve = lcs_curve(build_index(dna))
    out = _out_dir(args)
    write_text_atomic(out / "curve.csv", curve_csv(curve))
    if args.json:
        write_text_atomic(out / "curve.json", curve_json(curve, [s.account_id for s in dna]))
    print(f"curve over {len(dna)} accounts: k=2 length {curve.points[0].length}")
    return 0


def cmd_cluster(args) -> int:
    config = load_config(args)
    dna, _quarantined = load_dna_for_clustering(args.dna, config)
    if len(dna) < 2:
        raise InputError("clustering requires at least 2 non-quarantined accounts")
    result = cluster_with_rounds(dna, config.clustering)
    out = _out_dir(args)
    for rnd in result.rounds:
        if rnd.curve is not None:
            write_text_atomic(out / "rounds" / f"round_{rnd.round_no:03d}.csv", curve_csv(rnd.curve))
    write_text_atomic(out / "species.json", species_json(result.species))
    print(f"{len(result.species)} species over {len(dna)} accounts")
    return 0


def cmd_seed(args) -> int:
    config = load_config(args)
    species = read_species_json(Path(args.species).read_text(encoding="utf-8"))
    dna, _quarantined = load_dna_for_clustering(args.dna, config)
    dna_by_id = {s.account_id: s.sequence for s in dna}
    groups = form_initial_groups(species, dna_by_id, total_accounts=len(dna), params=config.seeding)
    out = _out_dir(args)
    write_text_atomic(out / "groups.json", groups_json(groups))
    print(
        f"bot seed: {len(groups.g_spambot.member_ids)} accounts; "
        f"genuine seed: {len(groups.g_genuine.member_ids)}; "
        f"{len(groups.unlabeled)} species unlabeled"
    )
    return 0


def cmd_classify(args) -> int:
    config = load_config(args)
    species = read_species_json(Path(args.species).read_text(encoding="utf-8"))
    groups = read_groups_json(Path(args.groups).read_text(encoding="utf-8"), species)
    dna, _quarantined = load_dna_for_clustering(args.dna, config)
    dna_by_id = {s.account_id: s.sequence for s in dna}
    by_id = {s.species_id: s for s in species}
    unlabeled = [by_id[sid] for sid in groups.unlabeled]
    assignments = classify_species(unlabeled, groups, dna_by_id, config.affinity, config.scoring)
    predictions = label_accounts(species, groups, assignments)
    out = _out_dir(args)
    write_text_atomic(out / "assignments.json", assignments_json(assignments))
    write_text_atomic(out / "predictions.csv", predictions_csv(dna, predictions))
    n_bot = sum(1 for v in predictions.values() if v == "bot")
    print(f"classified {len(predictions)} accounts ({n_bot} predicted bot)")
    return 0


def cmd_evaluate(args) -> int:
    predictions = read_predictions_csv(Path(args.predictions).read_text(encoding="utf-8"))
    with open(args.labels, encoding="utf-8") as fh:
        truth = load_labels(fh)
    n_quarantined = 0
    if args.quarantine:
        n_quarantined = len(
            json.loads(Path(args.quarantine).read_text(encoding="utf-8"))["account_ids"]
        )
    metrics = evaluate_metrics(predictions, truth)
    out = _out_dir(args)
    write_text_atomic(out / "metrics.json", metrics_json(metrics, n_quarantined))
    print(
        f"precision {metrics.precision:.3f}  recall {metrics.recall:.3f}  "
        f"f1 {metrics.f1:.3f}  accuracy {metrics.accuracy:.3f}  mcc {metrics.mcc:.3f}"
    )
    return 0


def cmd_run(args) -> int:
    config = load_config(args)
    result = run_pipeline(
        args.timelines,
        args.out,
        config=config,
        labels_path=args.labels,
        threads=args.threads,
    )
    n_bot = sum(1 for v in result.predictions.values() if v == "bot")
    line = (
        f"{len(result.predictions)} accounts classified ({n_bot} bot), "
        f"{len(result.quarantined_ids)} quarantined, {len(result.species)} species"
    )
    if result.metrics is not None:
        line += f"; f1 {result.metrics.f1:.3f}"
    print(line)
    return 0


def cmd_config(args) -> int:
    if args.defaults:
        config = RunConfig.default()
    else:
        config = load_config(args)
    print(json.dumps(config.to_dict(), indent=2, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file")
    common.add_argument(
        "--set",
        action="append",
        metavar="KEY=VALUE",
        help="override a config key (dotted path, e.g. clustering.drop_threshold=0.5)",
    )
    common.add_argument("--seed", type=int, default=0, help="RNG seed (synthetic data)")
    common.add_argument("--threads", type=int, default=1, help="worker threads (results are identical at any value)")
    common.add_argument("--out", default="run", help="output directory")

    parser = argparse.ArgumentParser(
        prog="botdna",
        description="Detect coordinated bot accounts from behavioral DNA timelines.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", parents=[common], help="generate a labeled synthetic dataset")
    p.add_argument("--bots", type=int, required=True)
    p.add_argument("--genuine", type=int, required=True)
    p.add_argument("--length", type=int, default=200, help="timeline length")
    p.add_argument("--template-length", type=int, default=40)
    p.add_argument("--noise", type=float, default=0.05)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("encode", parents=[common], help="encode timelines into DNA strings")
    p.add_argument("timelines", help="timeline JSONL file")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("curve", parents=[common], help="LCS curve of a DNA file")
    p.add_argument("dna", help="DNA TSV file")
    p.add_argument("--json", action="store_true", help="also write curve.json with witnesses")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("cluster", parents=[common], help="cluster accounts into species")
    p.add_argument("dna", help="DNA TSV file")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("seed", parents=[common], help="form initial bot/genuine groups")
    p.add_argument("--species", required=True, help="species.json from `cluster`")
    p.add_argument("--dna", required=True, help="DNA TSV file")
    p.set_defaults(func=cmd_seed)

    p = sub.add_parser("classify", parents=[common], help="label remaining species")
    p.add_argument("--species", required=True)
    p.add_argument("--groups", required=True, help="groups.json from `seed`")
    p.add_argument("--dna", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("evaluate", parents=[common], help="score predictions against labels")
    p.add_argument("--predictions", required=True)
    p.add_argument("--labels", required=True)
    p.add_argument("--quarantine", help="quarantine.json (for the quarantined count)")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("run", parents=[common], help="full pipeline on a timeline file")
    p.add_argument("timelines", help="timeline JSONL file")
    p.add_argument("--labels", help="ground-truth CSV for evaluation")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("config", parents=[common], help="print the resolved configuration")
    p.add_argument("--defaults", action="store_true", help="print built-in defaults")
    p.set_defaults(func=cmd_config)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 3
    except (ParseError, InputError, SeedSelectionError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
