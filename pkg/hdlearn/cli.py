"""
Command Line Interface for hdlearn

Subcommands for classification, clustering, regression and graph encoding,
driven by YAML configuration with per-flag overrides.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from hdlearn.config_parser import Config, ConfigManager
from hdlearn.dataset import CLASSIFICATION, REGRESSION, UNLABELED, load_dataset, load_edge_list
from hdlearn.exceptions import ConfigurationError, HDLearnError, InvalidInputError
from hdlearn.models import ClassificationModel, ClusteringModel, GraphModel, RegressionModel
from hdlearn.persistence import load_model
from hdlearn.runner import ExperimentRunner, save_trained

logger = logging.getLogger(__name__)


class CLIArgumentParser(argparse.ArgumentParser):
    """Argument parser whose usage errors follow the one-line error format."""

    def error(self, message):
        sys.stderr.write(f"error[usage]: {message}\n")
        sys.exit(2)


def fail(error: HDLearnError) -> int:
    message = " ".join(str(error).split())
    sys.stderr.write(f"error[{error.code}]: {message}\n")
    return 1


def configure_logging(level: str):
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def _load_typed_model(path: str, expected):
    model = load_model(path)
    if not isinstance(model, expected):
        raise InvalidInputError(f"{path} holds a {model.name} model, not a {expected.name} model")
    return model


def _overrides(args: argparse.Namespace, mapping: Dict[str, str]) -> Dict[str, Any]:
    return {key: getattr(args, attr, None) for key, attr in mapping.items()}


def _finish(runner: ExperimentRunner, results: Dict[str, Any], args: argparse.Namespace):
    runner.print_summary(results)
    output_file = args.output
    if output_file is None and runner.config.output.get("save_results"):
        output_file = runner.config.output.get("output_file")
    if output_file:
        runner.save_results(results, output_file)
    if getattr(args, "table", None):
        runner.write_rows(results, args.table)


# ----------------------------------------------------------------------
# classify
# ----------------------------------------------------------------------

CLASSIFY_FLAGS = {
    "dim": "dim",
    "levels": "levels",
    "retrain_epochs": "retrain",
    "folds": "folds",
    "seed": "seed",
    "direction": "direction",
    "threshold": "threshold",
    "per_feature_ranges": "per_feature_ranges",
    "grid_dims": "grid_dim",
    "grid_levels": "grid_levels",
    "grid_retrain": "grid_retrain",
    "quantum": "quantum",
    "shots": "shots",
}


def classify_command(runner: ExperimentRunner, args: argparse.Namespace):
    if args.action == "predict":
        model = _load_typed_model(args.model, ClassificationModel)
        dataset = load_dataset(args.data, UNLABELED if args.unlabeled else CLASSIFICATION)
        return runner.predict_classifier(model, dataset)

    settings = runner.settings("classification", _overrides(args, CLASSIFY_FLAGS))
    dataset = load_dataset(args.data, CLASSIFICATION)
    if args.action == "fit":
        model, results = runner.fit_classifier(dataset, settings)
        if args.model:
            save_trained(model, args.model)
        return results
    if args.action == "cv":
        return runner.cross_validate(dataset, settings)
    if args.action == "select":
        return runner.select_features(dataset, settings)
    return runner.tune(dataset, settings)


# ----------------------------------------------------------------------
# cluster
# ----------------------------------------------------------------------

CLUSTER_FLAGS = {"k": "k", "max_iterations": "max_iter", "dim": "dim", "levels": "levels", "seed": "seed"}


def cluster_command(runner: ExperimentRunner, args: argparse.Namespace):
    dataset = load_dataset(args.data, UNLABELED if args.unlabeled else CLASSIFICATION)
    if args.action == "predict":
        return runner.predict_clustering(_load_typed_model(args.model, ClusteringModel), dataset)

    settings = runner.settings("clustering", _overrides(args, CLUSTER_FLAGS))
    model, results = runner.fit_clustering(dataset, settings)
    if args.model:
        save_trained(model, args.model)
    return results


# ----------------------------------------------------------------------
# regress
# ----------------------------------------------------------------------

REGRESS_FLAGS = {
    "dim": "dim",
    "k": "k",
    "learning_rate": "lr",
    "epochs": "epochs",
    "temperature": "temperature",
    "quantized": "quantized",
    "seed": "seed",
}


def regress_command(runner: ExperimentRunner, args: argparse.Namespace):
    if args.action == "predict":
        model = _load_typed_model(args.model, RegressionModel)
        dataset = load_dataset(args.data, UNLABELED if args.unlabeled else REGRESSION)
        return runner.predict_regression(model, dataset, args.quantized)

    settings = runner.settings("regression", _overrides(args, REGRESS_FLAGS))
    dataset = load_dataset(args.data, REGRESSION)
    model, results = runner.fit_regression(dataset, settings)
    if args.model:
        save_trained(model, args.model)
    return results


# ----------------------------------------------------------------------
# graph
# ----------------------------------------------------------------------

GRAPH_FLAGS = {"dim": "dim", "directed": "directed", "seed": "seed"}


def _query_pairs(args: argparse.Namespace) -> List[Tuple[str, str]]:
    pairs = [tuple(pair) for pair in (args.pair or [])]
    if args.pairs:
        pairs.extend((u, v) for u, v, _ in load_edge_list(args.pairs).edges)
    if not pairs:
        raise InvalidInputError("Give node pairs with --pair SOURCE TARGET or --pairs FILE")
    return pairs


def graph_command(runner: ExperimentRunner, args: argparse.Namespace):
    if args.action == "build":
        settings = runner.settings("graph", _overrides(args, GRAPH_FLAGS))
        model, results = runner.build_graph(load_edge_list(args.edges), settings, args.weight_levels)
        if args.model:
            save_trained(model, args.model)
        return results

    model = _load_typed_model(args.model, GraphModel)
    if args.action == "query":
        return runner.query_graph(model, _query_pairs(args))
    if args.action == "predict":
        return runner.predict_graph(model, _query_pairs(args))

    rounds = args.rounds if args.rounds is not None else runner.config.graph.rounds
    results = runner.mitigate_graph(model, rounds)
    save_trained(model, args.save or args.model)
    return results


# ----------------------------------------------------------------------
# create-config
# ----------------------------------------------------------------------

def create_config_command(args) -> bool:
    """Create default configuration file."""
    config_file = args.output or ConfigManager.DEFAULT_CONFIG_FILE

    if Path(config_file).exists() and not args.force:
        print(f"❌ Config file {config_file} already exists. Use --force to overwrite.")
        return False

    created_file = ConfigManager.save_default_config(config_file)
    print(f"✅ Created configuration file: {created_file}")
    print(f"\n📝 Next steps:")
    print(f"   1. Edit {created_file} to set model defaults")
    print(f"   2. Run: hdlearn classify cv data.tsv --config {created_file}")
    return True


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------

def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", "-c", help="Configuration file path")
    common.add_argument("--verbose", "-v", action="store_true", help="Debug logging")
    common.add_argument("--seed", type=int, help="Random seed")
    common.add_argument("--output", "-o", help="Write the results as JSON to this file")
    common.add_argument("--table", help="Write the result table as tab-delimited text to this file")
    return common


def _true_flag(parser: argparse.ArgumentParser, name: str, help_text: str):
    # None when absent so the config file value stands
    parser.add_argument(name, action="store_const", const=True, default=None, help=help_text)


def build_parser() -> argparse.ArgumentParser:
    parser = CLIArgumentParser(
        prog="hdlearn",
        description="hdlearn - hyperdimensional computing models from the command line",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  hdlearn classify cv data.tsv --folds 5 --seed 7
  hdlearn classify fit data.tsv --model clf.hdm
  hdlearn classify predict new.tsv --model clf.hdm --unlabeled
  hdlearn cluster fit points.tsv --k 3 --unlabeled
  hdlearn regress fit series.tsv --lr 0.02 --model reg.hdm
  hdlearn graph build edges.tsv --directed --model graph.hdm
  hdlearn graph query --model graph.hdm --pair a b
  hdlearn create-config --output my_config.yml
        """,
    )
    common = _common_parser()
    groups = parser.add_subparsers(dest="command", parser_class=CLIArgumentParser)

    # classify
    classify = groups.add_parser("classify", help="Supervised classification")
    classify_actions = classify.add_subparsers(dest="action", required=True, parser_class=CLIArgumentParser)
    for action in ("fit", "predict", "cv", "select", "tune"):
        sub = classify_actions.add_parser(action, parents=[common])
        sub.add_argument("data", help="Delimited dataset (id, features..., label)")
        sub.add_argument("--model", "-m", required=action == "predict", help="Model file to write (fit) or read (predict)")
        sub.add_argument("--dim", type=int)
        sub.add_argument("--levels", type=int)
        sub.add_argument("--retrain", type=int, help="Retraining epochs")
        sub.add_argument("--folds", type=int)
        sub.add_argument("--direction", choices=["backward", "forward"])
        sub.add_argument("--threshold", type=float)
        sub.add_argument("--grid-dim", type=int, nargs="+")
        sub.add_argument("--grid-levels", type=int, nargs="+")
        sub.add_argument("--grid-retrain", type=int, nargs="+")
        sub.add_argument("--shots", type=int, help="Hadamard-test shots; 0 = exact similarity")
        _true_flag(sub, "--quantum", "Use the quantum (phase-state) classifier")
        _true_flag(sub, "--per-feature-ranges", "Quantize each feature against its own range")
        sub.add_argument("--unlabeled", action="store_true", help="Dataset has no label column")

    # cluster
    cluster = groups.add_parser("cluster", help="k-means clustering")
    cluster_actions = cluster.add_subparsers(dest="action", required=True, parser_class=CLIArgumentParser)
    for action in ("fit", "predict"):
        sub = cluster_actions.add_parser(action, parents=[common])
        sub.add_argument("data", help="Delimited dataset (id, features...[, label])")
        sub.add_argument("--model", "-m", required=action == "predict")
        sub.add_argument("--k", type=int)
        sub.add_argument("--max-iter", type=int)
        sub.add_argument("--dim", type=int)
        sub.add_argument("--levels", type=int)
        sub.add_argument("--unlabeled", action="store_true", help="Dataset has no label column")

    # regress
    regress = groups.add_parser("regress", help="Regression")
    regress_actions = regress.add_subparsers(dest="action", required=True, parser_class=CLIArgumentParser)
    for action in ("fit", "predict"):
        sub = regress_actions.add_parser(action, parents=[common])
        sub.add_argument("data", help="Delimited dataset (id, features..., target)")
        sub.add_argument("--model", "-m", required=action == "predict")
        sub.add_argument("--dim", type=int)
        sub.add_argument("--k", type=int)
        sub.add_argument("--lr", type=float, help="Learning rate")
        sub.add_argument("--epochs", type=int)
        sub.add_argument("--temperature", type=float)
        _true_flag(sub, "--quantized", "Hamming-based inference on binarized models")
        sub.add_argument("--unlabeled", action="store_true", help="Dataset has no target column")

    # graph
    graph = groups.add_parser("graph", help="Graph encoding")
    graph_actions = graph.add_subparsers(dest="action", required=True, parser_class=CLIArgumentParser)
    build = graph_actions.add_parser("build", parents=[common])
    build.add_argument("edges", help="Edge list: source, target[, weight class]")
    build.add_argument("--model", "-m", help="Model file to write")
    build.add_argument("--weight-levels", type=int, help="Quantize numeric weights into N classes")
    build.add_argument("--dim", type=int)
    _true_flag(build, "--directed", "Treat edges as directed")
    for action in ("query", "predict"):
        sub = graph_actions.add_parser(action, parents=[common])
        sub.add_argument("--model", "-m", required=True)
        sub.add_argument("--pair", nargs=2, action="append", metavar=("SOURCE", "TARGET"))
        sub.add_argument("--pairs", help="Edge-list file of pairs to query")
    mitigate = graph_actions.add_parser("mitigate", parents=[common])
    mitigate.add_argument("--model", "-m", required=True)
    mitigate.add_argument("--rounds", type=int, help="Error-mitigation rounds")
    mitigate.add_argument("--save", help="Write the mitigated model here instead of over --model")

    # Create config command
    config_parser = groups.add_parser("create-config", help="Create default configuration file")
    config_parser.add_argument("--output", "-o", help="Output file path")
    config_parser.add_argument("--force", "-f", action="store_true", help="Overwrite existing file")

    return parser


COMMANDS = {
    "classify": classify_command,
    "cluster": cluster_command,
    "regress": regress_command,
    "graph": graph_command,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "create-config":
        return 0 if create_config_command(args) else 1
    if args.command is None:
        parser.print_help()
        return 1

    try:
        config = ConfigManager.load_config(args.config)
        level = "DEBUG" if args.verbose else config.general.get("log_level", Config.log_level())
        configure_logging(level)
        issues = ConfigManager.validate_config(config)
        if issues:
            raise ConfigurationError("; ".join(issues))
        if args.seed is not None:
            config.general["seed"] = args.seed

        runner = ExperimentRunner(config)
        results = COMMANDS[args.command](runner, args)
        _finish(runner, results, args)
    except HDLearnError as e:
        return fail(e)
    return 0


if __name__ == "__main__":
    sys.exit(main())
