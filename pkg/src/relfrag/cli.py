"""Command-line front end.

Subcommands wrap the library operations one-to-one; ``experiment`` runs a
named validation experiment, with parameters taken from a JSON config file
(sections ``generator``, ``class``, ``params``, ``experiment``) and/or
command-line overrides (flags win).  Reports are emitted as JSON, CSV (one
row per grid point) or two-column plot data.

Exit status: 0 when every verdict in the report passed, 1 when a verdict
failed (the first failure is named on stderr), 2 on usage or configuration
errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import experiments as exp
from .errors import CapExceededError
from .generators import GeneratorSpec
from .hypotheses import from_theory, load_class_description
from .logic import (
    Vocabulary,
    enumerate_omega,
    infer_vocabulary,
    iter_fragments,
    load_example,
    parse_formula,
)

EXPERIMENT_NAMES = (
    "distribution-equality",
    "expectation-identity",
    "hoeffding-blocks",
    "tail-verify",
    "expected-verify",
    "variance-contrast",
    "bound-eval",
    "q-exact",
    "q-mc",
    "sample-blocks",
    "vc",
)


class CliError(Exception):
    """A configuration problem the user must fix (exit status 2)."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relfrag",
        description="Statistics of first-order theories over sampled relational structures.",
    )
    parser.add_argument("--seed", type=int, default=None, help="base RNG seed")
    parser.add_argument("--trials", type=int, default=None, help="Monte Carlo trial count")
    parser.add_argument("--out", default=None, help="write the report to this path")
    parser.add_argument(
        "--format", choices=("json", "csv", "plot"), default="json",
        help="report format (plot: two-column x/y series)",
    )
    parser.add_argument("--config", default=None, help="JSON config file")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_example(p, required=False):
        p.add_argument("--example", required=required, help="relational example file")
        p.add_argument(
            "--predicates", nargs="*", default=[], metavar="NAME/ARITY",
            help="extra predicates for the vocabulary, e.g. sm/1 fr/2",
        )

    p = sub.add_parser("q-exact", help="exact fragment-satisfaction probability")
    add_example(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--formula", action="append", default=[], help="theory member (repeatable)")
    p.add_argument("--class", dest="class_file", help="class description file")
    p.add_argument("--max-subsets", type=int, default=10**7)

    p = sub.add_parser("q-mc", help="Monte Carlo fragment-satisfaction probability")
    add_example(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--formula", action="append", default=[])

    p = sub.add_parser("sample-blocks", help="run the block-sampling process once")
    add_example(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, default=1)

    p = sub.add_parser("vc", help="VC dimension by shattering search")
    add_example(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--class", dest="class_file", help="class description file")
    p.add_argument("--formula", action="append", default=[], help="one hypothesis per formula")
    p.add_argument("--constants", nargs="*", default=None,
                   help="enumerate the full universe over these constants instead of --example")
    p.add_argument("--max-points", type=int, default=64)
    p.add_argument("--max-members", type=int, default=4096)
    p.add_argument("--max-universe", type=int, default=10**6)

    p = sub.add_parser("bound", help="evaluate the closed-form bounds")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--epsilon", action="append", default=None, help="grid point (repeatable)")
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--mgf-c", type=float, default=None)
    p.add_argument("--mgf-b", type=float, default=None)
    p.add_argument("--mgf-lambda", type=float, default=None)

    p = sub.add_parser("experiment", help="run a named validation experiment")
    p.add_argument("name", choices=EXPERIMENT_NAMES)
    add_example(p)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--repetitions", type=int, default=None)
    p.add_argument("--domain-size", type=int, default=None)
    p.add_argument("--corrupt-injection", action="store_true", default=None,
                   help="ablation: corrupt the block sampler's injection")
    p.add_argument("--sizes", nargs="*", type=int, default=None)
    p.add_argument("--seeds-per-point", type=int, default=None)
    p.add_argument("--probability", type=float, default=None)
    p.add_argument("--nodes", type=int, default=None)
    p.add_argument("--generator", default=None,
                   help="generator kind (erdos-renyi-directed, broadcaster, ...)")
    p.add_argument("--generator-seed", type=int, default=None)
    p.add_argument("--formula", action="append", default=[])
    p.add_argument("--epsilon", action="append", default=None)
    p.add_argument("--statistic", default=None, help="named threshold statistic")
    return parser


def _parse_predicates(items) -> list[tuple[str, int]]:
    preds = []
    for item in items:
        try:
            name, arity = item.rsplit("/", 1)
            preds.append((name, int(arity)))
        except ValueError:
            raise CliError(f"bad predicate spec {item!r}; expected NAME/ARITY") from None
    return preds


def _load_config(path) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise CliError(f"cannot read config {path}: {e}") from None
    if not isinstance(cfg, dict):
        raise CliError("config file must hold a JSON object")
    return cfg


def _setting(args, cfg_params, name, default=None, required=False):
    value = getattr(args, name.replace("-", "_"), None)
    if value is None:
        value = cfg_params.get(name, default)
    if value is None and required:
        raise CliError(f"missing required parameter {name!r} (flag or config params)")
    return value


def _resolve_example(args, cfg, *, required=True):
    path = getattr(args, "example", None) or cfg.get("params", {}).get("example")
    generator = cfg.get("generator")
    if getattr(args, "generator", None):
        generator = {
            "kind": args.generator,
            "nodes": _setting(args, cfg.get("params", {}), "nodes", 0),
            "probability": _setting(args, cfg.get("params", {}), "probability", 0.0),
            "seed": getattr(args, "generator_seed", None) or 0,
        }
    if path and generator:
        raise CliError("give either an example file or a generator, not both")
    if path:
        try:
            return load_example(path)
        except (OSError, ValueError) as e:
            raise CliError(f"cannot load example {path}: {e}") from None
    if generator:
        try:
            return GeneratorSpec.from_dict(generator).build()
        except (KeyError, ValueError) as e:
            raise CliError(f"bad generator spec: {e}") from None
    if required:
        raise CliError("an example file or a generator section is required")
    return None


def _vocabulary_for(args, example):
    extra = _parse_predicates(getattr(args, "predicates", []) or [])
    return infer_vocabulary(example, extra_predicates=extra)


def _theory_hypothesis(args, cfg, vocab, k):
    texts = list(getattr(args, "formula", []) or [])
    if not texts:
        texts = list(cfg.get("params", {}).get("formulas", []))
    if not texts:
        cls_desc = cfg.get("class")
        if cls_desc and "formulas" in cls_desc and len(cls_desc["formulas"]) == 1:
            texts = list(cls_desc["formulas"])
    if not texts:
        raise CliError("a formula is required (--formula or config params.formulas)")
    formulas = [parse_formula(t, vocab) for t in texts]
    return from_theory(formulas, k)


def _class_for(args, cfg, vocab, k):
    desc = cfg.get("class")
    if getattr(args, "class_file", None):
        with open(args.class_file, "r", encoding="utf-8") as fh:
            desc = json.load(fh)
    if getattr(args, "statistic", None):
        desc = {"threshold": args.statistic}
    if desc is None and getattr(args, "formula", None):
        desc = {"formulas": list(args.formula)}
    if desc is None:
        raise CliError("a hypothesis class is required (--class, --statistic, or config class section)")
    return load_class_description(desc, vocab, k)


def _epsilons(args, cfg_params):
    eps = getattr(args, "epsilon", None)
    if eps is None:
        eps = cfg_params.get("epsilons")
    if eps is None:
        return exp.DEFAULT_EPSILON_GRID
    return exp.as_epsilons(eps)


def _seed(args, cfg_params, default=0):
    if args.seed is not None:
        return args.seed
    return int(cfg_params.get("seed", default))


# ---------------------------------------------------------------------------
# Command handlers


def _cmd_q_exact(args, cfg):
    example = _resolve_example(args, cfg)
    k = _setting(args, cfg.get("params", {}), "k", required=True)
    vocab = _vocabulary_for(args, example)
    hyp = _theory_hypothesis(args, cfg, vocab, k)
    return exp.run_q_exact(example, k, hyp, max_subsets=args.max_subsets)


def _cmd_q_mc(args, cfg):
    example = _resolve_example(args, cfg)
    params = cfg.get("params", {})
    k = _setting(args, params, "k", required=True)
    trials = _setting(args, params, "trials", required=True)
    vocab = _vocabulary_for(args, example)
    hyp = _theory_hypothesis(args, cfg, vocab, k)
    return exp.run_q_mc(example, k, hyp, trials=trials, seed=_seed(args, params))


def _cmd_sample_blocks(args, cfg):
    example = _resolve_example(args, cfg)
    params = cfg.get("params", {})
    return exp.run_sample_blocks(
        example, args.n, args.k, q=args.q, seed=_seed(args, params)
    )


def _cmd_vc(args, cfg):
    params = cfg.get("params", {})
    k = _setting(args, params, "k", required=True)
    if args.constants is not None:
        preds = _parse_predicates(args.predicates or [])
        if not preds:
            raise CliError("--constants needs --predicates to define the universe")
        vocab = Vocabulary.make(preds, args.constants)
        universe = list(enumerate_omega(vocab, k, max_elements=args.max_universe))
    else:
        example = _resolve_example(args, cfg)
        vocab = _vocabulary_for(args, example)
        seen = set()
        universe = []
        for _, frag in iter_fragments(example, k):
            if frag not in seen:
                seen.add(frag)
                universe.append(frag)
    cls = _class_for(args, cfg, vocab, k)
    return exp.run_vc(
        cls, universe,
        max_points=args.max_points, max_members=args.max_members,
        seed=_seed(args, params),
    )


def _cmd_bound(args, cfg):
    params = cfg.get("params", {})
    return exp.run_bound_eval(
        d=args.d, n=args.n, k=args.k,
        epsilons=_epsilons(args, params), q=args.q,
        mgf_c=args.mgf_c, mgf_b=args.mgf_b, mgf_lambda=args.mgf_lambda,
    )


def _cmd_experiment(args, cfg):
    name = args.name
    cfg_name = cfg.get("experiment")
    if isinstance(cfg_name, dict):
        cfg_name = cfg_name.get("name")
    if cfg_name is not None and cfg_name != name:
        raise CliError(f"config names experiment {cfg_name!r} but {name!r} was requested")
    params = cfg.get("params", {})

    if name == "distribution-equality":
        return exp.run_distribution_equality(
            _setting(args, params, "domain-size", params.get("domain_size"), required=True),
            _setting(args, params, "n", required=True),
            _setting(args, params, "k", required=True),
            corrupt_injection=bool(
                _setting(args, params, "corrupt-injection", params.get("corrupt_injection", False))
            ),
        )
    if name == "bound-eval":
        return exp.run_bound_eval(
            d=_setting(args, params, "d", required=True),
            n=_setting(args, params, "n", required=True),
            k=_setting(args, params, "k", required=True),
            epsilons=_epsilons(args, params),
            q=_setting(args, params, "q"),
        )
    if name == "variance-contrast":
        return exp.run_variance_contrast(
            sizes=_setting(args, params, "sizes", required=True),
            probability=_setting(args, params, "probability", required=True),
            seeds_per_point=_setting(args, params, "seeds-per-point",
                                     params.get("seeds_per_point"), required=True),
            seed=_seed(args, params),
        )

    example = _resolve_example(args, cfg)
    k = _setting(args, params, "k", required=True)
    vocab = _vocabulary_for(args, example)

    if name == "expectation-identity":
        hyp = _theory_hypothesis(args, cfg, vocab, k)
        return exp.run_expectation_identity(
            example, _setting(args, params, "n", required=True), k, hyp
        )
    if name == "hoeffding-blocks":
        hyp = _theory_hypothesis(args, cfg, vocab, k)
        return exp.run_hoeffding_blocks(
            example,
            _setting(args, params, "n", required=True),
            k,
            hyp,
            q=_setting(args, params, "q", required=True),
            repetitions=_setting(args, params, "repetitions", required=True),
            seed=_seed(args, params),
            epsilons=_epsilons(args, params),
        )
    if name == "tail-verify":
        cls = _class_for(args, cfg, vocab, k)
        return exp.run_tail_verify(
            example,
            _setting(args, params, "n", required=True),
            k,
            cls,
            trials=_setting(args, params, "trials", required=True),
            seed=_seed(args, params),
            epsilons=_epsilons(args, params),
            d=_setting(args, params, "d"),
        )
    if name == "expected-verify":
        cls = _class_for(args, cfg, vocab, k)
        return exp.run_expected_verify(
            example,
            _setting(args, params, "n", required=True),
            k,
            cls,
            trials=_setting(args, params, "trials", required=True),
            seed=_seed(args, params),
            d=_setting(args, params, "d"),
        )
    if name == "q-exact":
        hyp = _theory_hypothesis(args, cfg, vocab, k)
        return exp.run_q_exact(example, k, hyp)
    if name == "q-mc":
        hyp = _theory_hypothesis(args, cfg, vocab, k)
        return exp.run_q_mc(
            example, k, hyp,
            trials=_setting(args, params, "trials", required=True),
            seed=_seed(args, params),
        )
    if name == "sample-blocks":
        return exp.run_sample_blocks(
            example,
            _setting(args, params, "n", required=True),
            k,
            q=_setting(args, params, "q", 1),
            seed=_seed(args, params),
        )
    if name == "vc":
        cls = _class_for(args, cfg, vocab, k)
        seen = set()
        universe = []
        for _, frag in iter_fragments(example, k):
            if frag not in seen:
                seen.add(frag)
                universe.append(frag)
        return exp.run_vc(cls, universe, seed=_seed(args, params))
    raise CliError(f"unknown experiment {name!r}")


_HANDLERS = {
    "q-exact": _cmd_q_exact,
    "q-mc": _cmd_q_mc,
    "sample-blocks": _cmd_sample_blocks,
    "vc": _cmd_vc,
    "bound": _cmd_bound,
    "experiment": _cmd_experiment,
}


def render_report(report, fmt: str) -> str:
    if fmt == "json":
        return report.to_json() + "\n"
    if fmt == "csv":
        names, rows = report.grid_rows()
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=names)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        return buf.getvalue()
    if fmt == "plot":
        lines = [f"{x} {y}" for x, y in report.plot_points()]
        return "\n".join(lines) + "\n"
    raise CliError(f"unknown format {fmt!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _load_config(args.config)
        report = _HANDLERS[args.command](args, cfg)
        text = render_report(report, args.format)
    except CliError as e:
        print(f"relfrag: error: {e}", file=sys.stderr)
        return 2
    except (CapExceededError, ValueError) as e:
        print(f"relfrag: error: {e}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not report.passed:
        failure = report.first_failure()
        print(f"relfrag: verdict failed: {failure['name']}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
