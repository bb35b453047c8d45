"""Command-line interface: ``fracheb ggf|coeff|verify|figure``.

Exit status is 0 on success, 1 when a verification check fails and 2 on a
usage error (bad flags or parameters outside a formula's domain).
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from pathlib import Path

import numpy as np

from fracheb import bounds, cheb, verify
from fracheb.errors import DomainError, FrachebError, UnsupportedCaseError
from fracheb.ggf import GgfParams, ggf_eval, weighted_ggf

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

FAMILIES = {
    "power-interior": "power_interior",
    "power-log-interior": "power_log_interior",
    "power-endpoint": "power_endpoint",
    "power-log-endpoint": "power_log_endpoint",
    "power-smooth": "power_times_smooth",
}

# degrees drawn in each panel of the GGF figure
FIGURE1_NUS = (0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------


def fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def emit(text: str, out: str | None) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        with open(out, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def svg_plot(series, title: str, xlabel: str, ylabel: str, width: int = 640, height: int = 420,
             ylim=None) -> str:
    """A minimal SVG line plot; ``series`` is a list of ``(label, xs, ys)``."""
    left, right, top, bottom = 70, 150, 40, 50
    xs_all = np.concatenate([np.asarray(s[1], float) for s in series])
    ys_all = np.concatenate([np.asarray(s[2], float) for s in series])
    ys_all = ys_all[np.isfinite(ys_all)]
    x0, x1 = float(xs_all.min()), float(xs_all.max())
    y0, y1 = ylim if ylim else (float(ys_all.min()), float(ys_all.max()))
    if y1 == y0:
        y0, y1 = y0 - 1.0, y1 + 1.0
    pw, ph = width - left - right, height - top - bottom

    def px(x):
        return left + (x - x0) / (x1 - x0) * pw

    def py(y):
        return top + (y1 - min(max(y, y0), y1)) / (y1 - y0) * ph

    colors = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="sans-serif" font-size="12">',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
        f'<text x="{left + pw / 2:.1f}" y="{top - 15}" text-anchor="middle" font-size="14">{title}</text>',
        f'<text x="{left + pw / 2:.1f}" y="{height - 10}" text-anchor="middle">{xlabel}</text>',
        f'<text x="18" y="{top + ph / 2:.1f}" text-anchor="middle" transform="rotate(-90 18 {top + ph / 2:.1f})">{ylabel}</text>',
    ]
    for k in range(5):
        xv = x0 + (x1 - x0) * k / 4
        yv = y0 + (y1 - y0) * k / 4
        parts.append(f'<text x="{px(xv):.1f}" y="{top + ph + 16}" text-anchor="middle">{xv:.3g}</text>')
        parts.append(f'<text x="{left - 6}" y="{py(yv) + 4:.1f}" text-anchor="end">{yv:.3g}</text>')
    for i, (label, xs, ys) in enumerate(series):
        color = colors[i % len(colors)]
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys) if math.isfinite(y))
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        ly = top + 14 + 16 * i
        parts.append(f'<line x1="{left + pw + 10}" y1="{ly - 4}" x2="{left + pw + 30}" y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
        parts.append(f'<text x="{left + pw + 35}" y="{ly}">{label}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def parse_grid(text: str) -> np.ndarray:
    try:
        a, b, count = text.split(":")
        a, b, count = float(a), float(b), int(count)
    except ValueError:
        raise UsageError(f"grid must look like a:b:count, got {text!r}") from None
    if count < 1 or not -1.0 <= a <= b <= 1.0:
        raise UsageError(f"grid needs -1 <= a <= b <= 1 and count >= 1, got {text!r}")
    return np.linspace(a, b, count)


def parse_floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


def read_config(path: str) -> dict[str, str]:
    """Flat ``key = value`` file; ``#`` starts a comment; keys use flag spelling."""
    values = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    for num, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{num}: expected key = value")
        key, value = (p.strip() for p in line.split("=", 1))
        values[key.lstrip("-").replace("_", "-")] = value
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fracheb", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="flat key = value file presetting any flag")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("ggf", help="evaluate right/left GGFs on a grid")
    g.add_argument("--side", choices=("r", "l"), default="r")
    g.add_argument("--lambda", dest="lam", type=float, default=0.0)
    g.add_argument("--nu", default="0.5")
    g.add_argument("--grid", default="-1:1:201")
    g.add_argument("--weighted", action="store_true", help="multiply by (1-x^2)^(lambda-1/2)")
    g.add_argument("--figure", type=int, choices=(1,), help="emit the GGF figure panels instead")
    g.add_argument("--out", help="output file (CSV) or directory (with --figure)")

    c = sub.add_parser("coeff", help="Chebyshev coefficients of a singular family")
    c.add_argument("--family", choices=sorted(FAMILIES), required=False)
    c.add_argument("--alpha", type=float)
    c.add_argument("--theta", type=float)
    c.add_argument("--end", type=int, choices=(-1, 1))
    c.add_argument("--taylor", default="1", help="g^(l)(end)/l!, comma separated (power-smooth)")
    c.add_argument("--n-max", type=int, default=16)
    c.add_argument("--method", choices=("exact", "quadrature", "asymptotic", "all"), default="exact")
    c.add_argument("--out")

    v = sub.add_parser("verify", help="run self-verification suites")
    v.add_argument("--suite", choices=verify.SUITES + ("all",), default="all")
    v.add_argument("--tol", type=float, default=1e-10, help="quadrature tolerance of the identity checks")
    v.add_argument("--out", help="CSV report path")

    f = sub.add_parser("figure", help="reproduce a figure as SVG + CSV")
    f.add_argument("--id", type=int, choices=(1, 2), required=False)
    f.add_argument("--out", default="figures")
    return parser


def _apply_config(parser, argv):
    # first pass only to locate --config and the subcommand
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return argv
    preset = read_config(known.config)
    command = next((a for a in argv if a in ("ggf", "coeff", "verify", "figure")), None)
    if command is None:
        command = preset.pop("command", None)
        if command is None:
            return argv
        argv = argv + [command]
    preset.pop("command", None)
    given = {a.split("=", 1)[0].lstrip("-") for a in argv if a.startswith("--")}
    extra = []
    for key, value in preset.items():
        if key in given:
            continue
        if value.lower() in ("true", "yes", "on"):
            extra.append(f"--{key}")
        elif value.lower() in ("false", "no", "off"):
            continue
        else:
            extra.extend([f"--{key}", value])
    idx = argv.index(command) + 1
    return argv[:idx] + extra + argv[idx:]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_ggf(args) -> int:
    if args.figure == 1:
        return write_figure1(args.out or "figures")
    side = "right" if args.side == "r" else "left"
    xs = parse_grid(args.grid)
    nus = parse_floats(args.nu)
    if not nus:
        raise UsageError("--nu needs at least one degree")

    def column(nu):
        p = GgfParams(side, nu, args.lam)
        return weighted_ggf(p, xs) if args.weighted else _safe_ggf(p, xs)

    cols = verify.ordered_map(column, nus)
    rows = [(x, nu, val) for nu, vals in zip(nus, cols) for x, val in zip(xs, vals)]
    emit(csv_text(("x", "nu", "value"), rows), args.out)
    return EXIT_OK


def _safe_ggf(p, xs):
    # unbounded endpoint values are reported as inf rather than aborting the sweep
    out = np.empty_like(xs)
    for i, x in enumerate(xs):
        try:
            out[i] = ggf_eval(p, x)
        except FrachebError:
            out[i] = math.inf
    return out


def _family_from_args(args) -> cheb.SingularFamily:
    if args.family is None or args.alpha is None:
        raise UsageError("coeff needs --family and --alpha")
    tag = FAMILIES[args.family]
    if tag.endswith("interior"):
        if args.end is not None:
            raise UsageError(f"{args.family} takes --theta, not --end")
        theta = 0.0 if args.theta is None else args.theta
        return cheb.SingularFamily(tag, args.alpha, theta=theta)
    if args.theta is not None:
        raise UsageError(f"{args.family} takes --end, not --theta")
    end = -1 if args.end is None else args.end
    taylor = tuple(parse_floats(args.taylor)) if tag == "power_times_smooth" else ()
    return cheb.SingularFamily(tag, args.alpha, end=end, taylor=taylor)


def cmd_coeff(args) -> int:
    if args.n_max < 0:
        raise UsageError("--n-max must be >= 0")
    fam = _family_from_args(args)
    methods = ("exact", "quadrature", "asymptotic") if args.method == "all" else (args.method,)

    def one(item):
        n, method = item
        try:
            if method == "exact":
                return cheb.coeff_exact(fam, n)
            if method == "quadrature":
                return cheb.coeff_quadrature(fam, n)
            return cheb.coeff_asymptotic(fam, n)
        except (UnsupportedCaseError, DomainError):
            if args.method == "all":
                return math.nan
            raise

    items = [(n, m) for n in range(args.n_max + 1) for m in methods]
    values = verify.ordered_map(one, items)
    rows = [(n, m, v) for (n, m), v in zip(items, values)]
    emit(csv_text(("n", "method", "value"), rows), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if not 0.0 < args.tol < 1e-3:
        raise UsageError(f"--tol must lie in (0, 1e-3), got {args.tol}")
    checks = verify.run(args.suite, tol=args.tol)
    width = max(len(f"{c.suite}: {c.name}") for c in checks)
    lines = []
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        label = f"{c.suite}: {c.name}"
        extra = f"  [{c.note}]" if c.note and (not c.passed or c.suite == "coeff-oracle") else ""
        lines.append(f"{status}  {label:<{width}}  {c.case}  value={c.value:.3e} limit={c.limit:.3e}{extra}")
    failed = sum(not c.passed for c in checks)
    lines.append(f"{len(checks) - failed}/{len(checks)} checks passed")
    print("\n".join(lines))
    if args.out:
        rows = [(c.suite, c.name, c.case, c.value, c.limit, "pass" if c.passed else "fail", c.note) for c in checks]
        emit(csv_text(("suite", "check", "case", "value", "limit", "status", "note"), rows), args.out)
    return EXIT_FAIL if failed else EXIT_OK


def write_figure1(out_dir: str) -> int:
    out = Path(out_dir)
    for lam, grid in ((0.0, np.linspace(-1.0, 1.0, 401)), (0.5, np.linspace(-0.999, 1.0, 401))):
        series, rows = [], []
        for nu in FIGURE1_NUS:
            vals = _safe_ggf(GgfParams("right", nu, lam), grid)
            series.append((f"nu={nu:g}", grid, vals))
            rows.extend((x, nu, v) for x, v in zip(grid, vals))
        stem = f"figure1_lambda{lam:g}".replace(".", "p")
        emit(csv_text(("x", "nu", "value"), rows), str(out / f"{stem}.csv"))
        svg = svg_plot(series, f"right GGF, lambda = {lam:g}", "x", "G(x)", ylim=(-1.5, 1.5) if lam else None)
        emit(svg, str(out / f"{stem}.svg"))
    return EXIT_OK


def write_figure2(out_dir: str) -> int:
    out = Path(out_dir)
    n_range = range(2, 101)
    for theta in (0.5, 0.8):
        rows = bounds.bound_ratios(theta, n_range)
        stem = f"figure2_theta{theta:g}".replace(".", "p")
        emit(csv_text(("n", "improved", "trefethen", "majidian", "ratio1", "ratio2"),
                      [(r.n, r.improved, r.trefethen, r.majidian, r.ratio1, r.ratio2) for r in rows]),
             str(out / f"{stem}.csv"))
        ns = [r.n for r in rows]
        svg = svg_plot([("Ratio1", ns, [r.ratio1 for r in rows]), ("Ratio2", ns, [r.ratio2 for r in rows])],
                       f"bound ratios, theta = {theta:g}", "n", "ratio")
        emit(svg, str(out / f"{stem}.svg"))
    return EXIT_OK


def cmd_figure(args) -> int:
    if args.id is None:
        raise UsageError("figure needs --id 1 or --id 2")
    return write_figure1(args.out) if args.id == 1 else write_figure2(args.out)


# flags whose values may start with "-" and would otherwise read as options
VALUE_FLAGS = ("--grid", "--nu", "--taylor", "--theta", "--alpha", "--end")


def _join_values(argv):
    out, i = [], 0
    while i < len(argv):
        if argv[i] in VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


COMMANDS = {"ggf": cmd_ggf, "coeff": cmd_coeff, "verify": cmd_verify, "figure": cmd_figure}


def main(argv=None) -> int:
    argv = _join_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        argv = _join_values(_apply_config(parser, argv))
    except UsageError as exc:
        print(f"fracheb: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (UsageError, FrachebError) as exc:
        print(f"fracheb: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
