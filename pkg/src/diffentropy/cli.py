"""Command-line front end: ``estimate``, ``bench`` and ``list-estimators``.

Exit status is 0 on success, 1 for usage or configuration errors, 2 for
unreadable or malformed data and 3 when an estimator cannot produce a
value (``estimate`` only).
"""

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import kde, registry, simlab, spacing
from .errors import AllReplicatesFailed, ConfigError, DataError, EntropyError, EstimatorError
from .samples import OrderedSample, read_points

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_ESTIMATOR = 0, 1, 2, 3

LIST_KEYS = ("distribution", "dim", "n", "estimator", "m", "k")
SCALAR_KEYS = ("m_policy", "replicates", "seed", "format", "out", "epsilon", "w", "panels",
               "paper_literal")
M_POLICIES = ("window_set", "optimal", "explicit")
FORMATS = ("csv", "md")
_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    """A parsed benchmark configuration; see ``docs/config.md``."""

    distributions: list = field(default_factory=lambda: ["normal"])
    dims: list = field(default_factory=lambda: [1])
    sizes: list = field(default_factory=lambda: [100])
    estimators: list = field(default_factory=list)
    m_policy: str = "window_set"
    m_list: list = field(default_factory=list)
    k_list: list = field(default_factory=lambda: [1])
    replicates: int = 1000
    seed: int = 0
    format: str = "csv"
    out: str = None
    epsilon: float = 0.05
    w: int = 3
    panels: int = 512
    paper_literal: bool = False


def _int(key, value, lineno, minimum=None):
    try:
        v = int(value)
    except ValueError:
        raise ConfigError(f"line {lineno}: {key} must be an integer, got {value!r}") from None
    if minimum is not None and v < minimum:
        raise ConfigError(f"line {lineno}: {key} must be >= {minimum}, got {v}")
    return v


def _bool(key, value, lineno):
    v = value.lower()
    if v in _TRUE:
        return True
    if v in _FALSE:
        return False
    raise ConfigError(f"line {lineno}: {key} must be true or false, got {value!r}")


def parse_config(text):
    """Parse ``key = value`` lines into a :class:`RunConfig`.

    List keys may repeat and may hold comma-separated values; scalar keys
    may appear once.
    """
    lists = {key: [] for key in LIST_KEYS}
    scalars = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (part.strip() for part in line.partition("="))
        key = key.lower()
        if not sep or not key or not value:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        if key in LIST_KEYS:
            items = [v.strip() for v in value.split(",")]
            if not all(items):
                raise ConfigError(f"line {lineno}: empty list item in {raw.strip()!r}")
            lists[key].extend((item, lineno) for item in items)
        elif key in SCALAR_KEYS:
            if key in scalars:
                raise ConfigError(f"line {lineno}: {key} given more than once")
            scalars[key] = (value, lineno)
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")

    cfg = RunConfig()
    if lists["distribution"]:
        cfg.distributions = []
        for v, ln in lists["distribution"]:
            cfg.distributions.append(simlab.TestDistribution(v.lower()).kind.value)
    if lists["dim"]:
        cfg.dims = [_int("dim", v, ln, 1) for v, ln in lists["dim"]]
    if lists["n"]:
        cfg.sizes = [_int("n", v, ln, 2) for v, ln in lists["n"]]
    cfg.estimators = [registry.info(v).id for v, _ in lists["estimator"]]
    cfg.m_list = [_int("m", v, ln, 1) for v, ln in lists["m"]]
    if lists["k"]:
        cfg.k_list = [_int("k", v, ln, 1) for v, ln in lists["k"]]
    if cfg.m_list:
        cfg.m_policy = "explicit"

    for key, (value, ln) in scalars.items():
        if key == "m_policy":
            if value.lower() not in M_POLICIES:
                raise ConfigError(f"line {ln}: m_policy must be one of {', '.join(M_POLICIES)}")
            cfg.m_policy = value.lower()
        elif key == "format":
            if value.lower() not in FORMATS:
                raise ConfigError(f"line {ln}: format must be csv or md, got {value!r}")
            cfg.format = value.lower()
        elif key == "out":
            cfg.out = value
        elif key == "epsilon":
            try:
                cfg.epsilon = float(value)
            except ValueError:
                raise ConfigError(f"line {ln}: epsilon must be a number, got {value!r}") from None
        elif key == "paper_literal":
            cfg.paper_literal = _bool(key, value, ln)
        elif key == "seed":
            cfg.seed = _int(key, value, ln, 0)
        else:
            setattr(cfg, key, _int(key, value, ln, 1))

    if not cfg.estimators:
        raise ConfigError("no estimator given")
    if cfg.m_policy == "explicit" and not cfg.m_list:
        raise ConfigError("m_policy = explicit needs at least one m")
    return cfg


def cell_seed(seed, distribution, d, n):
    """64-bit seed shared by every estimator on the same (distribution, d, n).

    Sharing the stream gives common random numbers across estimators, so
    their differences within a table block are not Monte Carlo noise.
    """
    code = list(simlab.Kind).index(simlab.Kind(distribution))
    ss = np.random.SeedSequence(seed, spawn_key=(code, d, n))
    return int(ss.generate_state(1, np.uint64)[0])


def _params(cfg, info, n):
    if info.param == "m":
        if cfg.m_policy == "window_set":
            return spacing.window_set(n)
        if cfg.m_policy == "optimal":
            return [spacing.optimal_window(n)]
        return list(cfg.m_list)
    if info.param == "k":
        return list(cfg.k_list)
    return [None]


def build_cells(cfg):
    """Every grid cell of the configuration, validated before any runs.

    Univariate estimators are skipped for d > 1; any other invalid
    combination raises :class:`ConfigError` naming the cell.
    """
    options = {"paper_literal": cfg.paper_literal}
    cells = []
    for dist in cfg.distributions:
        for d in cfg.dims:
            for n in cfg.sizes:
                seed = cell_seed(cfg.seed, dist, d, n)
                for est in cfg.estimators:
                    info = registry.info(est)
                    if d > 1 and not info.multivariate:
                        continue
                    extra = dict(options)
                    if info.family == registry.SPACING:
                        extra["w"] = cfg.w
                    if info.family == registry.KDE:
                        extra.update(epsilon=cfg.epsilon, panels=cfg.panels)
                    for p in _params(cfg, info, n):
                        try:
                            cells.append(simlab.GridCell(
                                simlab.TestDistribution(dist, d), n, est, p,
                                cfg.replicates, seed, extra,
                            ))
                        except ConfigError as exc:
                            raise ConfigError(
                                f"invalid cell (distribution={dist}, d={d}, n={n}, "
                                f"estimator={est}, {info.param or 'param'}={p}): {exc}"
                            ) from None
    if not cells:
        raise ConfigError("configuration yields no runnable cells")
    return cells


def run_grid(cells, workers=None):
    rows = []
    for cell in cells:
        try:
            rows.append(simlab.run_cell(cell, workers))
        except AllReplicatesFailed:
            rows.append(simlab.failed_row(cell))
    return rows


def _csv_value(v):
    return repr(v) if isinstance(v, float) else v


def format_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(simlab.MetricRow.columns())
    for row in rows:
        writer.writerow([_csv_value(v) for v in row.values()])
    return buf.getvalue()


def _fmt(x):
    return "-" if math.isnan(x) else f"{x:.4f}"


def format_markdown(rows):
    """Rows grouped by estimator, one sub-row per parameter and cell."""
    lines = [
        "| estimator | param | distribution | d | n | RMSE | abs bias | mean | failures |",
        "|---|---|---|---|---|---|---|---|---|",
    ]
    order = list(dict.fromkeys(r.estimator for r in rows))
    for est in order:
        first = True
        group = [r for r in rows if r.estimator == est]
        group.sort(key=lambda r: (r.param_value if r.param_value != "" else 0,
                                  r.distribution, r.d, r.n))
        for r in group:
            param = f"{r.param_name}={r.param_value}" if r.param_name else ""
            lines.append(
                f"| {est if first else ''} | {param} | {r.distribution} | {r.d} | {r.n} | "
                f"{_fmt(r.rmse)} | {_fmt(r.abs_bias)} | {_fmt(r.mean)} | {r.failures}/{r.n_reps} |"
            )
            first = False
    return "\n".join(lines) + "\n"


def cmd_bench(args):
    try:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {args.config}: {exc}") from None
    cfg = parse_config(text)
    if args.seed is not None:
        cfg.seed = args.seed
    if args.reps is not None:
        cfg.replicates = args.reps
    if args.format is not None:
        cfg.format = args.format
    if args.out is not None:
        cfg.out = args.out
    if args.paper_literal:
        cfg.paper_literal = True
    cells = build_cells(cfg)
    rows = run_grid(cells, args.threads)
    text = format_csv(rows) if cfg.format == "csv" else format_markdown(rows)
    if cfg.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_estimate(args):
    info = registry.info(args.estimator)
    cloud = read_points(args.data)
    data = OrderedSample(cloud.points[:, 0]) if cloud.d == 1 else cloud
    param = args.m if info.param == "m" else args.k if info.param == "k" else None
    if param is None:
        param = registry.default_param(info.id, cloud.n)
    registry.validate(info.id, cloud.n, cloud.d, param, epsilon=args.epsilon)

    nats = registry.evaluate(info.id, data, param, paper_literal=args.paper_literal,
                             epsilon=args.epsilon, w=args.w, panels=args.panels)
    out = [f"estimator: {info.id} ({info.citation})", f"n: {cloud.n}", f"d: {cloud.d}"]
    if info.param:
        out.append(f"{info.param}: {param}")
    if info.family == registry.KDE:
        bw = kde.auto_bandwidth(cloud.points)
        out.append(f"bandwidth: {np.array2string(np.asarray(bw), precision=7)}")
        if info.id in ("HB_EPS", "HBE"):
            out.append(f"epsilon: {args.epsilon}")
            out.append(f"quantile bandwidth: {kde.quantile_bandwidth(cloud.n):.7f}")
    if info.id == "HE2":
        a, b = spacing.support_bounds(data, args.paper_literal)
        out.append(f"bounds: ({a:.7g}, {b:.7g})")
    if info.id in ("HK1", "HK2"):
        out.append(f"w: {args.w}")
    if args.paper_literal:
        out.append("paper_literal: true")
    out.append(f"entropy_nats: {nats:.7f}")
    if info.units == "bits":
        out.append(f"entropy_bits: {registry.to_bits(nats):.7f}")
    print("\n".join(out))
    return EXIT_OK


def cmd_list(args):
    print(f"{'id':<9} {'family':<8} {'param':<6} {'units':<5} {'d>1':<4} citation")
    for e in registry.ESTIMATORS.values():
        param = e.param or "-"
        if e.id in ("HB_EPS", "HBE"):
            param = "eps"
        print(f"{e.id:<9} {e.family:<8} {param:<6} {e.units:<5} "
              f"{'yes' if e.multivariate else 'no':<4} {e.citation}")
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--paper-literal", action="store_true", default=argparse.SUPPRESS,
                        help="use formulas exactly as printed (see README)")

    parser = _Parser(prog="diffentropy", description="Nonparametric differential entropy estimation.",
                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    est = sub.add_parser("estimate", parents=[common], help="estimate the entropy of a data file")
    est.add_argument("data", help="one observation per line; coordinates separated by spaces or commas")
    est.add_argument("-e", "--estimator", required=True, help="estimator id (see list-estimators)")
    est.add_argument("-m", type=int, help="window size (default floor(sqrt(n) + 0.5))")
    est.add_argument("-k", type=int, help="neighbour order (default 1)")
    est.add_argument("--epsilon", type=float, default=0.05, help="quantile trim for HB_EPS/HBE")
    est.add_argument("--w", type=int, default=3, help="moving-average width for HK1/HK2")
    est.add_argument("--panels", type=int, default=512, help="quadrature panels for HB_EPS")
    est.set_defaults(func=cmd_estimate)

    bench = sub.add_parser("bench", parents=[common], help="run a Monte Carlo benchmark grid")
    bench.add_argument("config", help="benchmark config file (docs/config.md)")
    bench.add_argument("--seed", type=int, help="override the config seed")
    bench.add_argument("--reps", type=int, help="override the replicate count")
    bench.add_argument("--out", help="output path ('-' for stdout)")
    bench.add_argument("--format", choices=FORMATS, help="csv or md")
    bench.add_argument("--threads", type=int,
                       help=f"worker processes (default ${simlab.THREADS_ENV} or 1)")
    bench.set_defaults(func=cmd_bench)

    ls = sub.add_parser("list-estimators", help="print the estimator registry")
    ls.set_defaults(func=cmd_list)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    args.paper_literal = getattr(args, "paper_literal", False)
    try:
        if getattr(args, "reps", None) is not None and args.reps < 1:
            raise ConfigError(f"--reps must be >= 1, got {args.reps}")
        if getattr(args, "threads", None) is not None and args.threads < 1:
            raise ConfigError(f"--threads must be >= 1, got {args.threads}")
        return args.func(args)
    except ConfigError as exc:
        print(f"diffentropy: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"diffentropy: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except EstimatorError as exc:
        print(f"diffentropy: estimator failed: {exc}", file=sys.stderr)
        return EXIT_ESTIMATOR
    except EntropyError as exc:
        print(f"diffentropy: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
