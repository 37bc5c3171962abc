"""Command line interface: ``gmacdonald {table1,polynomial,verify,pieri,lr}``.

JSON output is deterministic for fixed flags (timings are only included with
``--timings``).  Exit codes: 0 all checks pass, 1 a check failed, 2 usage,
configuration or regime error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields, replace
from fractions import Fraction

from . import suites
from .params import MODES, AdmissiblePair, RegimeError, draw_params
from .pieri import lr_product, pieri_expand
from .polynomials import DegenerateSpecializationError, macdonald_polynomial
from .rootsys import RootSystemError, classify_weight, format_chains, small_fundamental_chains

SCHEMA_VERSION = 1

SUITES = ("diagonalization", "triangularity", "symmetry", "commutativity", "dual_oracle", "duality",
          "pieri", "lr", "small_weights", "additive_constant", "lemmas")

ROUTES = {"auto": "auto", "pieri": "pieri_recursion", "gram-schmidt": "gram_schmidt",
          "small-weight": "small_weight_closed_form"}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """Everything a subcommand needs; filled from a JSON file and then from flags."""

    cartan_type: str | None = None
    mode: str = "both"
    q: str | None = None
    ts: str | None = None
    tl: str | None = None
    k: str | None = None
    seed: int | None = None
    max_height: int | None = None
    format: str = "json"
    out: str | None = None
    route: str = "auto"
    normalization: str = "monic"
    jobs: int = 1
    timings: bool = False

    def modes(self) -> tuple:
        return MODES if self.mode == "both" else (self.mode,)

    def single_mode(self) -> str:
        return "S_equals_R_dual" if self.mode == "both" else self.mode

    def k_dict(self) -> dict | None:
        if self.k is None:
            return None
        parts = [int(x) for x in str(self.k).split(",")]
        if len(parts) == 1:
            parts *= 2
        if len(parts) != 2 or min(parts) < 0:
            raise UsageError(f"--k expects INT or INT,INT, got {self.k!r}")
        return {"s": parts[0], "l": parts[1]}

    def t_dict(self) -> dict | None:
        t = {lab: v for lab, v in (("s", self.ts), ("l", self.tl)) if v is not None}
        return {lab: _rational(v) for lab, v in t.items()} or None


def _rational(text: str) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def _weight_coords(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"weights are comma-separated fundamental coordinates, got {text!r}") from None


# ----------------------------------------------------------------------
# output


def _latex_rational(x) -> str:
    x = Fraction(str(x))
    if x.denominator == 1:
        return str(x.numerator)
    sign = "-" if x < 0 else ""
    return f"{sign}\\frac{{{abs(x.numerator)}}}{{{x.denominator}}}"


def _latex_weight(coords) -> str:
    parts = []
    for i, c in enumerate(coords, start=1):
        if c:
            parts.append(("" if c == 1 else str(c)) + f"\\omega_{{{i}}}")
    return "+".join(parts) or "0"


def _latex_polynomial(doc: dict) -> str:
    name = "P" if doc["normalization"] == "duality_P" else "p"
    terms = []
    for t in doc["coefficients"]:
        c = _latex_rational(t["coefficient"])
        m = "1" if not any(t["mu"]) else f"m_{{{_latex_weight(t['mu'])}}}"
        if c == "1":
            terms.append(m)
        elif m == "1":
            terms.append(c)
        else:
            terms.append(f"{c}\\,{m}")
    body = " + ".join(terms).replace("+ -", "- ") or "0"
    return f"{name}_{{{_latex_weight(doc['lambda'])}}} = {body}"


def _latex_expansion(doc: dict, basis: str) -> str:
    lines = [f"% {doc['kind']}: omega = {doc['omega']}, lambda = {doc['lambda']}",
             "\\begin{tabular}{ll}",
             f"$\\nu$ & coefficient of ${basis}_{{\\lambda+\\nu}}$ \\\\ \\hline"]
    for t in doc["terms"]:
        lines.append(f"${_latex_weight(t['nu'])}$ & ${_latex_rational(t['coefficient'])}$ \\\\")
    lines.append("\\end{tabular}")
    return "\n".join(lines)


def _latex_table1(doc: dict) -> str:
    lines = ["\\begin{tabular}{llcc}", "type & chains & \\# weights & \\# chains \\\\ \\hline"]
    for r in doc["rows"]:
        ch = r["chains_display"].replace("w", "\\omega_")
        lines.append(f"${r['type']}$ & ${ch}$ & {r['num_weights']} & {r['num_chains']} \\\\")
    lines.append("\\end{tabular}")
    return "\n".join(lines)


def _latex_verify(doc: dict) -> str:
    lines = ["\\begin{tabular}{lllrr}", "claim & type & mode & checks & status \\\\ \\hline"]
    for r in doc["reports"]:
        mode = (r["mode"] or "").replace("_", "\\_")
        lines.append(f"{r['claim'].replace('_', ' ')} & ${r['cartan_type']}$ & {mode} & {r['checks']} & "
                     f"{'pass' if r['passed'] else 'FAIL'} \\\\")
    lines.append("\\end{tabular}")
    return "\n".join(lines)


def _text(doc: dict) -> str:
    kind = doc["kind"]
    if kind == "table1":
        return "\n".join(f"{r['type']:4} {r['chains_display']:40} weights={r['num_weights']} "
                         f"chains={r['num_chains']} {'ok' if r['matches_golden'] else 'MISMATCH'}"
                         for r in doc["rows"])
    if kind == "verify":
        return "\n".join(r["line"] for r in doc["reports"])
    if kind == "polynomial":
        return "\n".join(f"{t['mu']}: {t['coefficient']}" for t in doc["coefficients"])
    return "\n".join(f"{t['nu']}: {t['coefficient']}" for t in doc["terms"])


def _emit(doc: dict, cfg: RunConfig):
    doc = {"schema_version": SCHEMA_VERSION, **doc}
    if cfg.format == "json":
        text = json.dumps(doc, indent=2, sort_keys=True)
    elif cfg.format == "latex":
        text = {"table1": _latex_table1, "verify": _latex_verify, "polynomial": _latex_polynomial,
                "pieri": lambda d: _latex_expansion(d, "P"), "lr": lambda d: _latex_expansion(d, "P")}[doc["kind"]](doc)
    else:
        text = _text(doc)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ----------------------------------------------------------------------
# subcommands


def _params(pair: AdmissiblePair, cfg: RunConfig):
    k = cfg.k_dict()
    seed = cfg.seed if cfg.seed is not None else 0
    q = _rational(cfg.q) if cfg.q is not None else None
    if k is not None:
        return draw_params(pair, seed, "qpower", k=k, q=q)
    return draw_params(pair, seed, q=q, t=cfg.t_dict())


def cmd_table1(cfg: RunConfig) -> int:
    golden = suites.load_table1()
    types = [cfg.cartan_type] if cfg.cartan_type else list(suites.TABLE1_TYPES)
    rows, ok = [], True
    for ct in types:
        got = small_fundamental_chains(ct)
        match = ct in golden and suites.normalize_chains(got) == suites.normalize_chains(golden[ct])
        ok &= match
        rows.append({**got, "chains_display": format_chains(got), "matches_golden": match})
    _emit({"kind": "table1", "rows": rows}, cfg)
    return 0 if ok else 1


def cmd_polynomial(cfg: RunConfig, lam_text: str) -> int:
    pair = AdmissiblePair.of(_require_type(cfg), cfg.single_mode())
    lam = pair.R.weight(_weight_coords(lam_text))
    prm = _params(pair, cfg)
    norm = "duality_P" if cfg.normalization == "P" else "monic_p"
    if cfg.route not in ROUTES:
        raise UsageError(f"--route must be one of {sorted(ROUTES)}")
    p = macdonald_polynomial(pair, lam, prm, ROUTES[cfg.route], norm)
    _emit({"kind": "polynomial", **p.to_json()}, cfg)
    return 0


def _expansion_doc(kind, pair, omega, lam, prm, terms) -> dict:
    return {"kind": kind, "type": str(pair.R.cartan_type), "mode": pair.mode, "omega": list(omega.coords),
            "lambda": list(lam.coords), "parameters": prm.describe(),
            "terms": [{"nu": list(nu), "coefficient": str(v)} for nu, v in sorted(terms.items())]}


def cmd_pieri(cfg: RunConfig, omega_text: str, lam_text: str) -> int:
    pair = AdmissiblePair.of(_require_type(cfg), cfg.single_mode())
    omega, lam = pair.R.weight(_weight_coords(omega_text)), pair.R.weight(_weight_coords(lam_text))
    prm = _params(pair, cfg)
    exp = pieri_expand(pair, omega, lam, prm)
    _emit(_expansion_doc("pieri", pair, omega, lam, prm, exp.terms), cfg)
    return 0


def cmd_lr(cfg: RunConfig, omega_text: str, lam_text: str) -> int:
    pair = AdmissiblePair.of(_require_type(cfg), cfg.single_mode())
    omega, lam = pair.R.weight(_weight_coords(omega_text)), pair.R.weight(_weight_coords(lam_text))
    if classify_weight(omega) == "not_small":
        raise UsageError(f"omega = {omega.label()} is not small")
    prm = _params(pair, cfg)
    out = lr_product(pair, omega, lam, prm)
    terms = {tuple(a - b for a, b in zip(k, lam.coords)): v for k, v in out.items()}
    _emit(_expansion_doc("lr", pair, omega, lam, prm, terms), cfg)
    return 0


def _suite_config(name: str, cfg: RunConfig) -> suites.GridConfig | None:
    if name == "lemmas":
        return None
    key = "pieri_lr" if name in ("pieri", "lr") else name
    grid = suites.DEFAULTS[key]
    changes = {}
    if cfg.seed is not None:
        changes["seeds"] = (cfg.seed,)
    if cfg.max_height is not None:
        changes["max_sum"] = cfg.max_height
    k = cfg.k_dict()
    if k is not None:
        changes["k"] = k
    if cfg.q is not None:
        changes["q"] = _rational(cfg.q)
    if cfg.t_dict():
        changes["t"] = cfg.t_dict()
    return replace(grid, **changes)


def _run_suite(job: tuple) -> dict:
    name, ct, mode, grid = job
    if name == "lemmas":
        rep = suites.check_lemmas(ct, mode)
    elif name == "pieri":
        rep = suites.check_pieri_lr(ct, mode, grid, claims=("pieri", "quasi_minuscule"))
        rep.claim = "pieri"
    elif name == "lr":
        rep = suites.check_pieri_lr(ct, mode, grid, claims=("lr",))
        rep.claim = "lr"
    else:
        rep = getattr(suites, f"check_{name}")(ct, mode, grid)
    return {**rep.to_json(), "line": rep.line()}


def cmd_verify(cfg: RunConfig, suite: str) -> int:
    ct = _require_type(cfg)
    names = SUITES if suite == "all" else (suite,)
    k = cfg.k_dict()
    if "symmetry" in names and k is not None and min(k.values()) < 2:
        raise RegimeError(f"symmetry needs t = q^k with every k >= 2, got --k {cfg.k}")
    AdmissiblePair.of(ct)  # validates the type before any work starts
    jobs = [(name, ct, mode, _suite_config(name, cfg)) for name in names for mode in cfg.modes()]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            results = list(pool.map(_run_suite, jobs))  # map keeps submission order
    else:
        results = [_run_suite(j) for j in jobs]
    if not cfg.timings:
        for r in results:
            r.pop("elapsed")
            r["line"] = r["line"].rsplit(" (", 1)[0]
    ok = all(r["passed"] for r in results)
    _emit({"kind": "verify", "suite": suite, "type": ct, "passed": ok, "reports": results}, cfg)
    return 0 if ok else 1


def _require_type(cfg: RunConfig) -> str:
    if not cfg.cartan_type:
        raise UsageError("--type is required")
    return cfg.cartan_type


# ----------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with default values for the flags below")
    common.add_argument("--type", dest="cartan_type", default=argparse.SUPPRESS, help="Cartan type, e.g. B3")
    common.add_argument("--mode", choices=MODES + ("both",), default=argparse.SUPPRESS)
    common.add_argument("--q", default=argparse.SUPPRESS, help="pin the generator Q (rational p/q)")
    common.add_argument("--ts", default=argparse.SUPPRESS, help="pin the short-root generator T_s")
    common.add_argument("--tl", default=argparse.SUPPRESS, help="pin the long-root generator T_l")
    common.add_argument("--k", default=argparse.SUPPRESS, help="t = q^k regime: INT or k_s,k_l")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--max-height", dest="max_height", type=int, default=argparse.SUPPRESS,
                        help="bound on the coordinate sum of the weights in the grid")
    common.add_argument("--format", choices=("json", "latex", "text"), default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes for verify")
    common.add_argument("--timings", action="store_true", default=argparse.SUPPRESS,
                        help="include elapsed times (makes output non-deterministic)")

    parser = argparse.ArgumentParser(prog="gmacdonald", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("table1", parents=[common], help="small fundamental weights and their chains")
    p = sub.add_parser("polynomial", parents=[common], help="construct p_lambda or P_lambda")
    p.add_argument("lam", metavar="LAMBDA", help="fundamental coordinates, e.g. 1,0,2")
    p.add_argument("--route", choices=sorted(ROUTES), default=argparse.SUPPRESS)
    p.add_argument("--normalization", choices=("monic", "P"), default=argparse.SUPPRESS)
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=SUITES + ("all",))
    for name in ("pieri", "lr"):
        e = sub.add_parser(name, parents=[common], help=f"{name} expansion of a product")
        e.add_argument("omega", metavar="OMEGA")
        e.add_argument("lam", metavar="LAMBDA")
    return parser


def make_config(ns: argparse.Namespace) -> RunConfig:
    values: dict = {}
    if getattr(ns, "config", None):
        try:
            with open(ns.config) as fh:
                values.update(json.load(fh))
        except (OSError, json.JSONDecodeError) as err:
            raise UsageError(f"cannot read config {ns.config}: {err}") from None
        if "type" in values:
            values["cartan_type"] = values.pop("type")
    names = {f.name for f in fields(RunConfig)}
    values.update({k: v for k, v in vars(ns).items() if k in names})
    unknown = set(values) - names
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    cfg = RunConfig(**values)
    if cfg.mode not in MODES + ("both",):
        raise UsageError(f"mode must be one of {MODES + ('both',)}")
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = make_config(ns)
        if ns.command == "table1":
            return cmd_table1(cfg)
        if ns.command == "polynomial":
            return cmd_polynomial(cfg, ns.lam)
        if ns.command == "verify":
            return cmd_verify(cfg, ns.suite)
        if ns.command == "pieri":
            return cmd_pieri(cfg, ns.omega, ns.lam)
        return cmd_lr(cfg, ns.omega, ns.lam)
    except (UsageError, RegimeError, RootSystemError, DegenerateSpecializationError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
