"""Command-line interface: ``iho <subcommand> [options]``.

Every subcommand writes a table, as CSV (header row, 17 significant digits,
complex numbers split into ``_re``/``_im`` columns) or as JSON
(``{"meta": {...}, "data": [...]}`` with complex numbers as ``{"re", "im"}``).

Exit codes: 0 success, 1 numerical failure, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

import numpy as np

from .errors import DomainError, IHOError, NonConvergence, QuadratureError, ValidationError
from .grids import SampledFunction, parse_grid
from .lct import (
    SL2Matrix,
    compose,
    group_law_check,
    iho_matrix,
    lct_apply_direct,
    lct_apply_fast,
    metaplectic_sign,
    random_sl2,
    unitarity_check,
)
from .logmap import (
    HalfLineSpec,
    peak_frequency,
    plateau_window,
    spectrum_map_pipeline,
    wlemma_eigenfunction,
)
from .oscillator import EigenParams, Parity, amplitude, eigenfunction, ode_residual
from .rigged import Verdict, adapted_chirp, adapted_test_function, pairing_partials
from .wronskian import delta_normalization_probe, symmetric_midpoint_grid

SUBCOMMANDS = (
    "eval",
    "residual",
    "lct",
    "group-check",
    "unitarity",
    "spectrum-map",
    "wronskian-probe",
    "rigged-check",
)


class UsageError(Exception):
    """Bad command line; maps to exit code 2."""


@dataclass
class Command:
    subcommand: str
    params: dict[str, Any]
    output_path: Optional[str] = None
    format: str = "csv"
    plot_path: Optional[str] = None


@dataclass
class Table:
    columns: list[str]
    rows: list[list[Any]]
    meta: dict[str, Any] = field(default_factory=dict)
    failed: bool = False


# ---------------------------------------------------------------- parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_complex(text: str) -> complex:
    """``"1+0.5i"``, ``"0.5i"``, ``"-3"`` (``i`` or ``j`` as imaginary unit)."""
    try:
        return complex(text.strip().replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def parse_matrix(text: str) -> SL2Matrix:
    """``"a,b,alpha,beta"`` with ``a beta - b alpha = 1``."""
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"matrix entries must be numbers: {text!r}") from None
    if len(vals) != 4:
        raise argparse.ArgumentTypeError(f"matrix needs 4 entries a,b,alpha,beta, got {text!r}")
    try:
        return SL2Matrix(*vals)
    except ValidationError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _grid(text: str) -> np.ndarray:
    try:
        return parse_grid(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _parity(text: str) -> Parity:
    try:
        return Parity.parse(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"parity must be even or odd, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="write the table here instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--emit-plot-data", dest="plot_path", help="also write (x, |f|, arg f) triples as CSV")

    p = _Parser(prog="iho", description="Inverted harmonic oscillator toolkit")
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    s = sub.add_parser("eval", parents=[common], help="evaluate an eigenfunction on a grid")
    s.add_argument("--parity", type=_parity, required=True)
    s.add_argument("--omega", type=float, required=True)
    s.add_argument("--lambda", dest="lam", type=parse_complex, required=True)
    s.add_argument("--alpha-sign", type=int, choices=(1, -1), default=1)
    s.add_argument("--grid", type=_grid, required=True, help="min:max:count")

    s = sub.add_parser("residual", parents=[common], help="ODE residuals over a grid of eigenvalues")
    s.add_argument("--omega", type=float, default=1.0)
    s.add_argument("--parity", choices=("even", "odd", "both"), default="both")
    s.add_argument("--lambda-re", type=_grid, default=_grid("-4:4:5"))
    s.add_argument("--lambda-im", type=_grid, default=_grid("-4:4:5"))
    s.add_argument("--grid", type=_grid, default=_grid("-4:4:801"))
    s.add_argument("--h", type=float, default=1e-3)
    s.add_argument("--richardson", action="store_true")
    s.add_argument("--tol", type=float, default=1e-4, help="exit 1 if any residual exceeds this")

    s = sub.add_parser("lct", parents=[common], help="apply W_A to a built-in test function")
    s.add_argument("--matrix", type=parse_matrix, required=True, help="a,b,alpha,beta")
    s.add_argument("--input", choices=("gaussian", "hermite", "chirped"), default="gaussian")
    s.add_argument("--grid", type=_grid, default=_grid("-12:12:2401"))
    s.add_argument("--u-grid", type=_grid, default=None)
    s.add_argument("--method", choices=("direct", "fast"), default="fast")

    s = sub.add_parser("group-check", parents=[common], help="composition-law defects")
    s.add_argument("--matrix1", type=parse_matrix)
    s.add_argument("--matrix2", type=parse_matrix)
    s.add_argument("--random", type=int, default=0, help="number of random pairs")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--min-b", type=float, default=0.2)
    s.add_argument("--grid", type=_grid, default=_grid("-24:24:4096"))
    s.add_argument("--method", choices=("direct", "fast"), default="fast")
    s.add_argument("--no-sign", action="store_true", help="omit the metaplectic sign")

    s = sub.add_parser("unitarity", parents=[common], help="inner-product defect of W_A")
    s.add_argument("--matrix", type=parse_matrix, required=True)
    s.add_argument("--grid", type=_grid, default=_grid("-24:24:4096"))
    s.add_argument("--method", choices=("direct", "fast"), default="fast")

    s = sub.add_parser("spectrum-map", parents=[common], help="t-line spectra of U_exp W_A psi")
    s.add_argument("--omega", type=float, default=1.0)
    s.add_argument("--a-param", type=float, default=1.0)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--gamma", type=float)
    g.add_argument("--lambda", dest="lam", type=float)
    s.add_argument("--source", choices=("wlemma", "even", "odd"), default="wlemma")
    s.add_argument("--grid", type=_grid, default=_grid("-16:16:4097"))
    s.add_argument("--t-grid", type=_grid, default=_grid("-1.5:2.5:400"))
    s.add_argument("--window", type=_floats, default=[8.0, 14.0], help="x0,x1")

    s = sub.add_parser("wronskian-probe", parents=[common], help="delta-normalization ratios")
    s.add_argument("--a", type=float, default=1.0)
    s.add_argument("--alpha", type=float, default=1.0)
    s.add_argument("--parity", type=_parity, default=Parity.EVEN)
    s.add_argument("--sigma", type=float, default=1.0, help="width of the Gaussian test density")
    s.add_argument("--center", type=float, default=None, help="density center (default a)")
    s.add_argument("--x-probe", type=_floats, default=[1e2, 1e3, 1e4])
    s.add_argument("--half-width", type=float, default=None, help="b-grid half width (default 8 sigma)")
    s.add_argument("--n-half", type=int, default=1600)

    s = sub.add_parser("rigged-check", parents=[common], help="pairing verdict for a generalized eigenfunction")
    s.add_argument("--lambda", dest="lam", type=parse_complex, required=True)
    s.add_argument("--omega", type=float, default=1.0)
    s.add_argument("--parity", type=_parity, default=Parity.EVEN)
    s.add_argument("--epsilon", type=float, default=0.15)
    s.add_argument("--X", dest="X", type=_floats, default=[25, 50, 100, 200, 400, 800])
    s.add_argument("--samples-per-period", type=int, default=16)
    return p


def _attach_negative_values(argv: Sequence[str]) -> list[str]:
    # argparse reads "-5:5:101" or "-1,0,0,-1" as an option; bind such values as --flag=value.
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        out.append(tok)
        if tok.startswith("--") and "=" not in tok:
            nxt = next(it, None)
            if nxt is None:
                break
            if len(nxt) > 1 and nxt[0] == "-" and (nxt[1].isdigit() or nxt[1] == "."):
                out[-1] = f"{tok}={nxt}"
            else:
                out.append(nxt)
    return out


def parse_args(argv: Sequence[str]) -> Command:
    """Parse and validate ``argv``.

    Raises:
        UsageError: on malformed or inconsistent flags.
    """
    ns = build_parser().parse_args(_attach_negative_values(argv))
    params = {k: v for k, v in vars(ns).items() if k not in ("subcommand", "output", "format", "plot_path")}
    cmd = Command(ns.subcommand, params, ns.output, ns.format, ns.plot_path)
    _validate(cmd)
    return cmd


def _validate(cmd: Command) -> None:
    p = cmd.params
    if "omega" in p and not p["omega"] > 0:
        raise UsageError("--omega must be positive")
    if cmd.subcommand == "group-check":
        pair = (p["matrix1"] is not None, p["matrix2"] is not None)
        if p["random"] < 0:
            raise UsageError("--random must be nonnegative")
        if p["random"] == 0 and pair != (True, True):
            raise UsageError("--matrix1 and --matrix2 are required unless --random N is given")
        if p["random"] > 0 and any(pair):
            raise UsageError("--random cannot be combined with --matrix1/--matrix2")
    if cmd.subcommand == "spectrum-map" and len(p["window"]) != 2:
        raise UsageError("--window needs x0,x1")
    if cmd.subcommand == "rigged-check":
        if len(p["X"]) < 3 or any(b <= a for a, b in zip(p["X"], p["X"][1:])):
            raise UsageError("--X needs at least 3 increasing values")
        if not p["epsilon"] > 0:
            raise UsageError("--epsilon must be positive")


# ---------------------------------------------------------------- runners


def _split(columns: list[str], rows: list[list[Any]]) -> tuple[list[str], list[list[Any]]]:
    """Expand complex entries into ``name_re``/``name_im`` columns."""
    is_complex = [any(isinstance(r[i], complex) for r in rows) for i in range(len(columns))]
    cols = []
    for name, c in zip(columns, is_complex):
        cols += [f"{name}_re", f"{name}_im"] if c else [name]
    out = []
    for r in rows:
        line = []
        for v, c in zip(r, is_complex):
            line += [complex(v).real, complex(v).imag] if c else [v]
        out.append(line)
    return cols, out


def _fmt(v: Any) -> str:
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def to_csv(table: Table) -> str:
    cols, rows = _split(table.columns, table.rows)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        w.writerow([_fmt(v) for v in r])
    return buf.getvalue()


def _jsonable(v: Any) -> Any:
    if isinstance(v, (complex, np.complexfloating)):
        return {"re": float(v.real), "im": float(v.imag)}
    if isinstance(v, np.floating):
        return float(v)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.ndarray):
        return [_jsonable(x) for x in v.tolist()]
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (Parity, Verdict)):
        return v.value
    if isinstance(v, SL2Matrix):
        return [v.a, v.b, v.alpha, v.beta]
    return v


def to_json(cmd: Command, table: Table) -> str:
    data = [dict(zip(table.columns, (_jsonable(v) for v in r))) for r in table.rows]
    meta = {"subcommand": cmd.subcommand, "params": _jsonable(_summarize_params(cmd.params))}
    meta.update(_jsonable(table.meta))
    return json.dumps({"meta": meta, "data": data}, indent=1)


def _summarize_params(params: dict) -> dict:
    out = {}
    for k, v in params.items():
        if isinstance(v, np.ndarray) and v.ndim == 1 and v.size >= 2:
            out[k] = f"{v[0]:.17g}:{v[-1]:.17g}:{v.size}"
        else:
            out[k] = v
    return out


def read_sampled_csv(path_or_text: str, is_text: bool = False) -> SampledFunction:
    """Load an ``x, value_re, value_im`` CSV (as written by ``eval``/``lct``) back into a sampled function."""
    text = path_or_text if is_text else open(path_or_text, newline="").read()
    rows = list(csv.reader(io.StringIO(text)))
    body = np.array([[float(v) for v in r[:3]] for r in rows[1:]])
    return SampledFunction.from_grid(body[:, 0], body[:, 1] + 1j * body[:, 2])


def _builtin_input(name: str, x: np.ndarray) -> np.ndarray:
    if name == "gaussian":
        return np.exp(-x * x / 2)
    if name == "hermite":
        return x * np.exp(-x * x / 2)
    return np.exp(-x * x / 2) * (1 + 0.3 * x + 0.2j * x * x)


def _run_eval(p: dict) -> tuple[Table, SampledFunction]:
    ep = EigenParams.make(p["lam"], p["omega"], p["parity"], p["alpha_sign"])
    f = SampledFunction.from_grid(p["grid"], eigenfunction(ep, p["grid"]))
    rows = [[x, complex(v)] for x, v in zip(f.x, f.values)]
    return Table(["x", "value"], rows, {"nu": ep.nu}), f


def _run_residual(p: dict) -> Table:
    parities = list(Parity) if p["parity"] == "both" else [Parity.parse(p["parity"])]
    rows, worst = [], 0.0
    for re in p["lambda_re"]:
        for im in p["lambda_im"]:
            lam = complex(re, im)
            for par in parities:
                ep = EigenParams.make(lam, p["omega"], par)
                r = ode_residual(lambda x: eigenfunction(ep, x), lam, p["omega"], p["grid"], p["h"], p["richardson"])
                worst = max(worst, r)
                rows.append([float(re), float(im), par.value, r])
    return Table(["lambda_re", "lambda_im", "parity", "residual"], rows, {"max_residual": worst}, worst > p["tol"])


def _run_lct(p: dict) -> tuple[Table, SampledFunction]:
    x = p["grid"]
    f = SampledFunction.from_grid(x, _builtin_input(p["input"], x))
    apply = lct_apply_fast if p["method"] == "fast" else lct_apply_direct
    g = apply(p["matrix"], f, p["u_grid"])
    rows = [[u, complex(v)] for u, v in zip(g.x, g.values)]
    return Table(["u", "value"], rows), g


def _run_group_check(p: dict) -> Table:
    x = p["grid"]
    f = SampledFunction.from_grid(x, _builtin_input("chirped", x))
    if p["random"]:
        rng = np.random.default_rng(p["seed"])
        pairs = []
        while len(pairs) < p["random"]:
            A1, A2 = random_sl2(rng, min_b=p["min_b"]), random_sl2(rng, min_b=p["min_b"])
            if abs(compose(A2, A1).b) >= p["min_b"]:
                pairs.append((A2, A1))
    else:
        pairs = [(p["matrix2"], p["matrix1"])]
    rows, worst = [], 0.0
    for k, (A2, A1) in enumerate(pairs):
        d = group_law_check(A2, A1, f, track_sign=not p["no_sign"], method=p["method"])
        worst = max(worst, d)
        rows.append([k, A2.a, A2.b, A2.alpha, A2.beta, A1.a, A1.b, A1.alpha, A1.beta, metaplectic_sign(A2, A1), d])
    cols = ["pair", "a2", "b2", "alpha2", "beta2", "a1", "b1", "alpha1", "beta1", "sign", "defect"]
    return Table(cols, rows, {"max_defect": worst})


def _run_unitarity(p: dict) -> Table:
    x = p["grid"]
    f = SampledFunction.from_grid(x, _builtin_input("chirped", x))
    g = SampledFunction.from_grid(x, _builtin_input("hermite", x))
    rows = []
    for name, a, b in (("f,f", f, f), ("f,g", f, g), ("g,g", g, g)):
        rows.append([name, unitarity_check(p["matrix"], a, b, p["method"], x if p["method"] == "fast" else None)])
    return Table(["pair", "defect"], rows)


def _run_spectrum_map(p: dict) -> tuple[Table, Optional[dict]]:
    omega, a_param = p["omega"], p["a_param"]
    gamma = p["gamma"] if p["gamma"] is not None else p["lam"] / (2 * omega)
    lam = 2 * omega * gamma
    x = p["grid"]
    x0, x1 = p["window"]
    if p["source"] == "wlemma":
        vals = wlemma_eigenfunction(iho_matrix(omega, a_param), gamma, x)
    else:
        vals = eigenfunction(EigenParams.make(lam, omega, p["source"]), x)
    psi = SampledFunction.from_grid(x, plateau_window(x, x0, x1) * vals)
    tg = p["t_grid"]
    out = spectrum_map_pipeline(omega, a_param, psi, HalfLineSpec(tg[0], tg[-1], tg.size))
    norms = {s: ch.norm() for s, ch in out.channels().items()}
    rows, spectra = [], {}
    for s, ch in out.channels().items():
        if norms[s] < 0.1 * max(norms.values()):
            continue
        pk = peak_frequency(ch)
        ok = abs(pk.frequency - gamma) <= pk.bin_width
        rows.append(["+" if s > 0 else "-", pk.frequency, gamma, pk.bin_width, norms[s], ok])
        spectra[s] = ch
    failed = not all(r[-1] for r in rows)
    cols = ["channel", "peak", "expected", "bin_width", "norm", "within_bin"]
    return Table(cols, rows, {"gamma": gamma, "lambda": lam}, failed), spectra


def _run_wronskian_probe(p: dict) -> Table:
    a, alpha, sig = p["a"], p["alpha"], p["sigma"]
    center = a if p["center"] is None else p["center"]
    half = 8 * sig if p["half_width"] is None else p["half_width"]
    half = max(half, abs(center - a) + 8 * sig)
    A_of = lambda b: amplitude(EigenParams(b, alpha, abs(alpha), p["parity"]))
    rho = lambda b: np.exp(-((b - center) ** 2) / (2 * sig * sig)) / (sig * np.sqrt(2 * np.pi))
    grid = symmetric_midpoint_grid(a, half, p["n_half"])
    rows = []
    for xp in p["x_probe"]:
        r = delta_normalization_probe(a, alpha, A_of, rho, xp, grid) if rho(a) > 0 else complex("nan")
        rows.append([xp, r])
    return Table(["x_probe", "ratio"], rows)


def _run_rigged_check(p: dict) -> Table:
    lam, omega = p["lam"], p["omega"]
    phi = adapted_test_function(lam, omega, p["epsilon"], p["parity"])
    v = pairing_partials(
        lam,
        omega,
        p["parity"],
        phi,
        p["X"],
        chirp_hint=abs(adapted_chirp(lam, omega)),
        samples_per_period=p["samples_per_period"],
    )
    rows = [[X, I, v.verdict.value] for X, I in v.partials]
    meta = {"verdict": v.verdict.value, "growth_exponent": v.exponent, "chirp": adapted_chirp(lam, omega)}
    return Table(["X", "partial", "verdict"], rows, meta, v.verdict is Verdict.INCONCLUSIVE)


def _plot_rows(f: SampledFunction) -> Table:
    rows = [[x, abs(v), float(np.angle(v))] for x, v in zip(f.x, f.values)]
    return Table(["x", "abs", "arg"], rows)


def execute(cmd: Command) -> tuple[Table, Optional[Table]]:
    """Run ``cmd`` and return its table plus optional plot table."""
    p = cmd.params
    plot = None
    if cmd.subcommand == "eval":
        table, f = _run_eval(p)
        plot = _plot_rows(f)
    elif cmd.subcommand == "residual":
        table = _run_residual(p)
    elif cmd.subcommand == "lct":
        table, g = _run_lct(p)
        plot = _plot_rows(g)
    elif cmd.subcommand == "group-check":
        table = _run_group_check(p)
    elif cmd.subcommand == "unitarity":
        table = _run_unitarity(p)
    elif cmd.subcommand == "spectrum-map":
        table, spectra = _run_spectrum_map(p)
        if spectra:
            rows = []
            for s, ch in spectra.items():
                rows += [["+" if s > 0 else "-", t, abs(v), float(np.angle(v))] for t, v in zip(ch.x, ch.values)]
            plot = Table(["channel", "t", "abs", "arg"], rows)
    elif cmd.subcommand == "wronskian-probe":
        table = _run_wronskian_probe(p)
    elif cmd.subcommand == "rigged-check":
        table = _run_rigged_check(p)
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(f"unknown subcommand {cmd.subcommand!r}")
    return table, plot


def _write(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def run(cmd: Command) -> int:
    """Execute ``cmd``, write its output and return the exit code."""
    try:
        table, plot = execute(cmd)
    except (NonConvergence, QuadratureError) as exc:
        print(f"iho {cmd.subcommand}: numerical failure: {exc}", file=sys.stderr)
        return 1
    except (ValidationError, DomainError, ValueError) as exc:
        print(f"iho {cmd.subcommand}: invalid input: {exc}", file=sys.stderr)
        return 2
    except IHOError as exc:
        print(f"iho {cmd.subcommand}: {exc}", file=sys.stderr)
        return 1
    _write(cmd.output_path, to_json(cmd, table) if cmd.format == "json" else to_csv(table))
    if cmd.plot_path is not None:
        if plot is None:
            print(f"iho {cmd.subcommand}: no plot data for this subcommand", file=sys.stderr)
        else:
            _write(cmd.plot_path, to_csv(plot))
    if table.failed:
        print(f"iho {cmd.subcommand}: check failed: {table.meta}", file=sys.stderr)
        return 1
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cmd = parse_args(argv)
    except UsageError as exc:
        print(f"iho: usage error: {exc}", file=sys.stderr)
        return 2
    return run(cmd)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
