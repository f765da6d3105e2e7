"""Batch front end: ``verify``, ``sweep`` and ``kernel`` subcommands.

Exit codes: 0 success, 1 invariant failure (``verify``), 2 usage or
configuration error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import math
import random
import sys
from dataclasses import dataclass, field

from .angular import AngularConfig
from .hilbert import DimensionError, dft_matrix, unitarity_residual
from .kinematics import KinematicsConfig
from .limits import (
    PRECISIONS,
    ConvergenceTable,
    TestStateSpec,
    angular_kernel_rows,
    cartesian_kernel_rows,
    commutator_sweep,
)
from .schwinger import build_pair, mutual_unbiasedness_residual, pair_power, verify_weyl

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

DEFAULT_NS = (51, 101, 201, 401)

# verify thresholds
WEYL_TOL = 1e-12
UNITARY_TOL = 1e-12
MUB_TOL = 1e-13
WEYL_RANDOM_PAIRS = 100
WEYL_SEED = 0

CSV_HEADER = "N,delta,metric,value,aux"
KERNEL_HEADER = "N,delta,j_row,j_col,overlap_re,overlap_im,error"


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    Ns: list[int] = field(default_factory=lambda: list(DEFAULT_NS))
    deltas: list[float] = field(default_factory=lambda: [1.0])
    p0: float = 1.0
    q0: float = 1.0
    m0: float = 1.0
    theta0: float = 1.0
    state: TestStateSpec = field(default_factory=TestStateSpec)
    angular: bool = False
    output_path: str | None = None
    emit_plot: bool = False
    precision: str = "double"

    def grid(self):
        return [(N, d) for N in self.Ns for d in self.deltas]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parser() -> _Parser:
    p = _Parser(prog="finite-kinematics", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=("verify", "sweep", "kernel"))
    p.add_argument("--n", dest="n")
    p.add_argument("--delta")
    p.add_argument("--p0")
    p.add_argument("--q0")
    p.add_argument("--m0")
    p.add_argument("--theta0")
    p.add_argument("--state")
    p.add_argument("--sigma")
    p.add_argument("--angular", action="store_const", const="true")
    p.add_argument("--out")
    p.add_argument("--plot", action="store_const", const="true")
    p.add_argument("--precision")
    p.add_argument("--config")
    return p


CONFIG_KEYS = ("n", "delta", "p0", "q0", "m0", "theta0", "state", "sigma", "angular", "out", "plot", "precision")


def read_config_file(path: str) -> dict[str, str]:
    """Parse flat ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key = key.strip().lstrip("-")
            if not sep or key not in CONFIG_KEYS:
                raise UsageError(f"{path}:{lineno}: bad config line {raw.rstrip()!r}")
            out[key] = value.strip()
    return out


def _float(name, text) -> float:
    try:
        x = float(text)
    except ValueError:
        raise UsageError(f"--{name}: not a number: {text!r}") from None
    if not (math.isfinite(x) and x > 0):
        raise UsageError(f"--{name} must be positive, got {text}")
    return x


def _bool(name, text) -> bool:
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"{name}: expected a boolean, got {text!r}")


def _ns(text) -> list[int]:
    try:
        Ns = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"--n: expected comma-separated integers, got {text!r}") from None
    if not Ns:
        raise UsageError("--n: empty list")
    for N in Ns:
        if N < 1 or N % 2 == 0:
            raise UsageError(f"--n: only odd positive N are supported, got {N}")
    return Ns


def _deltas(text) -> list[float]:
    try:
        ds = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"--delta: expected comma-separated numbers, got {text!r}") from None
    if not ds:
        raise UsageError("--delta: empty list")
    for d in ds:
        if not 0.0 <= d < 2.0:
            raise UsageError(f"--delta must lie in [0, 2), got {d}")
    return ds


def _state(text, sigma) -> TestStateSpec:
    kind, _, arg = text.partition(":")
    if kind == "gaussian" and not arg:
        return TestStateSpec("gaussian", sigma=sigma)
    if kind == "uniform" and not arg:
        return TestStateSpec("uniform")
    if kind in ("basis", "plane") and arg:
        try:
            idx = int(arg)
        except ValueError:
            raise UsageError(f"--state: bad index in {text!r}") from None
        return TestStateSpec("basis" if kind == "basis" else "plane-wave", index=idx)
    raise UsageError(f"--state: expected gaussian|uniform|basis:IDX|plane:IDX, got {text!r}")


def parse_config(argv) -> RunConfig:
    """Resolve command-line tokens (and an optional config file) into a RunConfig.

    Raises
    ------
    UsageError
        Malformed flags or values.
    OSError
        The config file cannot be read.
    """
    args = _parser().parse_args(argv)
    values = {}
    if args.config is not None:
        values.update(read_config_file(args.config))
    for key in CONFIG_KEYS:
        v = getattr(args, key)
        if v is not None:
            values[key] = v

    cfg = RunConfig(command=args.command)
    if "n" in values:
        cfg.Ns = _ns(values["n"])
    if "delta" in values:
        cfg.deltas = _deltas(values["delta"])
    for key in ("p0", "q0", "m0", "theta0"):
        if key in values:
            setattr(cfg, key, _float(key, values[key]))
    sigma = _float("sigma", values["sigma"]) if "sigma" in values else 1.0
    cfg.state = _state(values.get("state", "gaussian"), sigma)
    cfg.angular = _bool("angular", values.get("angular", "false"))
    cfg.emit_plot = _bool("plot", values.get("plot", "false"))
    cfg.output_path = values.get("out")
    cfg.precision = values.get("precision", "double")
    if cfg.precision not in PRECISIONS:
        raise UsageError(f"--precision must be one of {', '.join(PRECISIONS)}, got {cfg.precision!r}")
    if cfg.emit_plot and cfg.output_path is None:
        raise UsageError("--plot needs --out")
    return cfg


def _fmt(x) -> str:
    return "" if x is None else format(x, ".17g")


def format_csv(table: ConvergenceTable) -> str:
    lines = [CSV_HEADER]
    for r in table.rows:
        lines.append(f"{r.N},{_fmt(r.delta)},{r.metric},{_fmt(r.value)},{_fmt(r.aux)}")
    return "\n".join(lines) + "\n"


def emit_csv(table: ConvergenceTable, path) -> None:
    """Write ``table`` as LF-terminated UTF-8 CSV with 17 significant digits."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_csv(table))


def verify_report(N: int) -> list[tuple[str, float, float, bool]]:
    """Residual metrics ``(name, value, threshold, passed)`` for one N."""
    pair = build_pair(N)
    if N <= 33:
        sample = [(j, l) for j in range(N) for l in range(N)]
    else:
        rng = random.Random(WEYL_SEED + N)
        sample = [(rng.randrange(N), rng.randrange(N)) for _ in range(WEYL_RANDOM_PAIRS)]
    weyl = verify_weyl(pair, sample).max_residual
    unitary = max(
        unitarity_residual(pair.U), unitarity_residual(pair.V), unitarity_residual(dft_matrix(N))
    )
    # exact: 0 when U^N and V^N are the identity representation
    power = 0.0 if (pair_power(pair, "U", N).is_identity() and pair_power(pair, "V", N).is_identity()) else 1.0
    mub = mutual_unbiasedness_residual(N)
    tag = f"[N={N}]"
    return [
        ("weyl_residual" + tag, weyl, WEYL_TOL, weyl <= WEYL_TOL),
        ("unitarity_residual" + tag, unitary, UNITARY_TOL, unitary <= UNITARY_TOL),
        ("power_exactness" + tag, power, 0.0, power == 0.0),
        ("mutual_unbiasedness_residual" + tag, mub, MUB_TOL, mub <= MUB_TOL),
    ]


def _kernel_csv(cfg: RunConfig) -> str:
    lines = [KERNEL_HEADER]
    for N in cfg.Ns:
        if cfg.angular:
            rows = [(0.0, r) for r in angular_kernel_rows(AngularConfig(N, cfg.m0, cfg.theta0))]
        else:
            rows = [
                (d, r)
                for d in cfg.deltas
                for r in cartesian_kernel_rows(KinematicsConfig(N, d, cfg.p0, cfg.q0))
            ]
        for d, (a, b, z, err) in rows:
            lines.append(f"{N},{_fmt(d)},{a},{b},{_fmt(z.real)},{_fmt(z.imag)},{_fmt(err)}")
    return "\n".join(lines) + "\n"


def _write(text: str, path, stdout) -> None:
    if path is None:
        stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _plot(table: ConvergenceTable, path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.hashsalt"] = "finite-kinematics"
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for delta in sorted({r.delta for r in table.rows}):
        Ns, vals = table.column("commutator_gap", delta)
        ax.loglog(Ns, [max(v, 1e-300) for v in vals], marker="o", label=f"delta={delta:g}")
    ax.set_xlabel("N")
    ax.set_ylabel("commutator gap")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    if cfg.command == "verify":
        lines, failed = [], []
        for N in cfg.Ns:
            for name, value, tol, ok in verify_report(N):
                lines.append(f"{name}\t{_fmt(value)}\t{_fmt(tol)}\t{'pass' if ok else 'fail'}")
                if not ok:
                    failed.append(name)
        _write("\n".join(lines) + "\n", cfg.output_path, stdout)
        for name in failed:
            print(f"invariant failed: {name}", file=stderr)
        return EXIT_FAIL if failed else EXIT_OK

    if cfg.command == "sweep":
        if any(d == 0.0 for d in cfg.deltas):
            raise UsageError("sweep needs 0 < delta < 2")
        table = commutator_sweep(
            cfg.Ns, cfg.deltas, cfg.state, cfg.p0, cfg.q0, precision=cfg.precision
        )
        _write(format_csv(table), cfg.output_path, stdout)
        if cfg.emit_plot:
            _plot(table, str(cfg.output_path) + ".svg")
        return EXIT_OK

    if not cfg.angular and any(d == 0.0 for d in cfg.deltas):
        raise UsageError("delta = 0 kernels are the angular case; pass --angular")
    _write(_kernel_csv(cfg), cfg.output_path, stdout)
    return EXIT_OK


def main(argv=None) -> int:
    stderr = sys.stderr
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
        return run(cfg)
    except (UsageError, DimensionError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
