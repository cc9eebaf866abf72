"""Command-line front end: ``skms <command> --config <file> --out <dir>``.

The configuration is a JSON object::

    {
      "schema_version": 1,
      "group": {"torus": 1}            # or {"rank": 2, "simple_roots": [[1, -1]],
                                       #     "simple_coroots": [[1, -1]]}
      "weights": [[-1], [-1], [1], [1]],
      "epsilon": [1],                  # optional, defaults to the first invariant basis vector
      "gram": [["1"]],                 # optional, rationals as "p/q" strings or integers
      "window": [["-1/2", "5/2"]],     # optional box in invariant-lattice coordinates
      "seed": 0                        # optional
    }

Every command writes ``<command>.json`` and ``<command>.txt`` into the output
directory and exits with status 0 exactly when every verdict passes.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import linalg as la
from .arrangement import (ArrangementError, CellComplex, build_restricted_arrangement,
                          enumerate_cells)
from .certificates import Certificate, to_jsonable
from .geometry import DimensionError
from .pervcheck import DiagramError, PervDiagram, check_axioms
from .repspec import RepSpec, RepSpecError, validate
from .rootdata import RootDatumError, build_root_datum
from .schober import (PreconditionError, mainprop_sweep, mutation_pair, schober_report,
                      sod_certificate, verify_ddual, verify_window_duality, window)

SCHEMA_VERSION = 1
COMMANDS = ("validate", "chambers", "windows", "sod", "mutation", "schober", "duality",
            "mainprop", "perv-check")


class ConfigError(ValueError):
    pass


@dataclass
class Config:
    repspec: RepSpec
    epsilon: tuple | None
    window: list | None
    seed: int
    raw: dict


def _int_vec(x, where: str) -> tuple[int, ...]:
    if not isinstance(x, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in x):
        raise ConfigError(f"{where}: expected a list of integers, got {json.dumps(x)}")
    return tuple(x)


def _rational(x, where: str) -> Fraction:
    try:
        return la.frac(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ConfigError(f"{where}: expected an integer or a \"p/q\" string, got {json.dumps(x)}")


def parse_config(data: dict) -> Config:
    if not isinstance(data, dict):
        raise ConfigError("config: expected a JSON object")
    version = data.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ConfigError(f"schema_version: unsupported value {version!r}")
    group = data.get("group")
    if not isinstance(group, dict):
        raise ConfigError("group: expected an object such as {\"torus\": 1}")
    spec: dict = {}
    if "torus" in group:
        if not isinstance(group["torus"], int) or group["torus"] < 1:
            raise ConfigError("group.torus: expected a positive integer")
        spec["torus"] = group["torus"]
        n = group["torus"]
    else:
        n = group.get("rank")
        if not isinstance(n, int) or n < 1:
            raise ConfigError("group.rank: expected a positive integer")
        spec["rank"] = n
        for key in ("simple_roots", "simple_coroots"):
            vals = group.get(key, [])
            if not isinstance(vals, list):
                raise ConfigError(f"group.{key}: expected a list of integer vectors")
            spec[key] = [_int_vec(v, f"group.{key}[{i}]") for i, v in enumerate(vals)]
    if "weyl_bound" in group:
        spec["weyl_bound"] = group["weyl_bound"]
    gram = data.get("gram", group.get("gram"))
    if gram is not None:
        if not isinstance(gram, list) or not all(isinstance(r, list) for r in gram):
            raise ConfigError("gram: expected a matrix (list of rows)")
        spec["gram"] = [[_rational(v, f"gram[{i}][{j}]") for j, v in enumerate(row)]
                        for i, row in enumerate(gram)]
    try:
        datum = build_root_datum(spec)
    except RootDatumError as exc:
        raise ConfigError(f"group: {exc}") from exc

    weights = data.get("weights")
    if not isinstance(weights, list) or not weights:
        raise ConfigError("weights: expected a nonempty list of integer vectors")
    ws = []
    for i, w in enumerate(weights):
        v = _int_vec(w, f"weights[{i}]")
        if len(v) != n:
            raise ConfigError(f"weights[{i}]: has length {len(v)}, expected {n}")
        ws.append(v)
    try:
        r = validate(datum, ws)
    except RepSpecError as exc:
        raise ConfigError(f"weights: {exc}") from exc

    eps = data.get("epsilon")
    if eps is not None:
        eps = _int_vec(eps, "epsilon")
        if len(eps) != n:
            raise ConfigError(f"epsilon: has length {len(eps)}, expected {n}")
    window = data.get("window")
    if window is not None:
        if not isinstance(window, list) or not all(isinstance(p, list) and len(p) == 2 for p in window):
            raise ConfigError("window: expected a list of [lo, hi] pairs")
        window = [(_rational(lo, f"window[{i}][0]"), _rational(hi, f"window[{i}][1]"))
                  for i, (lo, hi) in enumerate(window)]
    seed = data.get("seed", 0)
    if not isinstance(seed, int):
        raise ConfigError("seed: expected an integer")
    return Config(r, eps, window, seed, data)


def load_config(path) -> Config:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON (line {exc.lineno}, column {exc.colno}): {exc.msg}")
    return parse_config(data)


def parse_window(text: str) -> list:
    """``"lo,hi;lo,hi"`` with rational entries."""
    out = []
    for part in text.split(";"):
        bits = part.split(",")
        if len(bits) != 2:
            raise ConfigError(f"--window: cannot parse {part!r}, expected lo,hi")
        out.append((_rational(bits[0], "--window"), _rational(bits[1], "--window")))
    return out


# ---------------------------------------------------------------------------


def _complex(cfg: Config) -> CellComplex:
    arr = build_restricted_arrangement(cfg.repspec, cfg.window)
    return enumerate_cells(arr, seed=cfg.seed)


def default_epsilon(cfg: Config, cc: CellComplex) -> tuple:
    if cfg.epsilon is not None:
        return cfg.epsilon
    return tuple(cc.arrangement.basis[0])


def resolve_cell(cc: CellComplex, ref: str) -> str:
    if ref.startswith("p:"):
        try:
            t = tuple(la.frac(x) for x in ref[2:].split(","))
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"cell reference {ref!r}: cannot parse point")
        if len(t) != cc.k:
            raise ConfigError(f"cell reference {ref!r}: expected {cc.k} coordinates")
        cell = cc.locate(t)
        if cell is None:
            raise ConfigError(f"cell reference {ref!r}: point is outside the window")
        return cell.id
    if ref not in cc.by_id:
        raise ConfigError(f"cell reference {ref!r}: no such cell (ids run c0..c{len(cc.cells) - 1})")
    return ref


def _pmap(fn, items, jobs):
    items = list(items)
    if jobs <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def cmd_validate(cfg: Config, args) -> tuple[bool, dict]:
    r = cfg.repspec
    d = r.datum
    info = {"diagnostics": r.diagnostics, "rank": d.rank, "weyl_order": d.weyl_order,
            "rho_bar": la.fmt_vec(d.rho_bar), "w0": [la.fmt_vec(row) for row in d.w0],
            "gram": [la.fmt_vec(row) for row in d.gram],
            "invariant_basis": [list(b) for b in d.invariant_lattice()],
            "dim_g_over_b": d.dim_g_over_b}
    return r.quasi_symmetric and r.spanning, info


def cmd_chambers(cfg: Config, args) -> tuple[bool, dict]:
    cc = _complex(cfg)
    ok = all(cc.sign_at(c.witness) == c.sign for c in cc.cells)
    body = cc.to_json()
    body["skms"] = {
        "dimension": cc.k,
        "hyperplane_classes_per_period": len(cc.hyperplane_classes()),
        "cell_classes": len(cc.classes),
        "cell_classes_by_dim": {str(k): v for k, v in cc.class_dims().items()},
        "chambers_mod_lattice": cc.class_dims().get(cc.k, 0),
        "description": "complement of the restricted periodic arrangement modulo the invariant lattice",
    }
    body["witnesses_realize_signs"] = ok
    return ok, body


def cmd_windows(cfg: Config, args) -> tuple[bool, dict]:
    cc = _complex(cfg)
    rows = []
    ok = True
    for c in cc.cells:
        w = window(cc, c.id)
        ok &= w.independent
        rows.append({"cell": c.id, "dim": c.dim, "class": cc.class_index[c.id],
                     "weights": [list(p) for p in w.weights], "size": len(w.weights),
                     "independent_of_witness": w.independent})
    return ok, {"windows": rows}


def _cert_result(cert: Certificate) -> tuple[bool, dict]:
    return cert.passed, {"certificate": cert.to_json()}


def cmd_sod(cfg, args):
    cc = _complex(cfg)
    a, b = (resolve_cell(cc, x) for x in args.cells[:2])
    return _cert_result(sod_certificate(cc, a, b))


def cmd_mutation(cfg, args):
    cc = _complex(cfg)
    c, c1, c2 = (resolve_cell(cc, x) for x in args.cells[:3])
    return _cert_result(mutation_pair(cc, c, c1, c2))


def cmd_schober(cfg, args):
    cc = _complex(cfg)
    return _cert_result(schober_report(cc, jobs=args.jobs))


def cmd_duality(cfg, args):
    cc = _complex(cfg)
    children = _pmap(lambda c: verify_window_duality(cc, c.id), cc.cells, args.jobs)
    pairs = cc.facet_pairs()
    dd = _pmap(lambda p: verify_ddual(cc, p[1], p[0], p[2]), pairs, args.jobs)
    dd += _pmap(lambda p: verify_ddual(cc, p[1], p[2], p[0]), pairs, args.jobs)
    cert = Certificate.build("duality_bijection", True, [], children + dd, label="duality")
    return _cert_result(cert)


def cmd_mainprop(cfg, args):
    cc = _complex(cfg)
    return _cert_result(mainprop_sweep(cc, default_epsilon(cfg, cc), jobs=args.jobs))


def cmd_perv(cfg, args):
    if not args.cells:
        raise ConfigError("perv-check: expected a diagram file argument")
    try:
        dg = PervDiagram.load(args.cells[0])
    except OSError as exc:
        raise ConfigError(f"cannot read diagram: {exc}") from exc
    return _cert_result(check_axioms(dg))


HANDLERS = {"validate": cmd_validate, "chambers": cmd_chambers, "windows": cmd_windows,
            "sod": cmd_sod, "mutation": cmd_mutation, "schober": cmd_schober,
            "duality": cmd_duality, "mainprop": cmd_mainprop, "perv-check": cmd_perv}
ARITY = {"sod": 2, "mutation": 3, "perv-check": 1}


def summary_lines(command: str, ok: bool, body: dict) -> list[str]:
    lines = [f"command: {command}", f"verdict: {'PASS' if ok else 'FAIL'}"]
    cert = body.get("certificate")
    if cert is not None:
        def walk(c, depth):
            if depth > 3:
                return
            label = c.get("label") or c["kind"]
            lines.append(f"{'  ' * depth}{c['verdict'].upper():4}  {label}")
            for ch in c.get("children", []):
                walk(ch, depth + 1)
        walk(cert, 0)
    elif command == "validate":
        for k, v in body["diagnostics"].items():
            lines.append(f"{k}: {v}")
    elif command == "chambers":
        s = body["skms"]
        lines.append(f"invariant subspace dimension: {s['dimension']}")
        lines.append(f"hyperplane classes per period: {s['hyperplane_classes_per_period']}")
        lines.append(f"cell classes: {s['cell_classes']} by dimension {s['cell_classes_by_dim']}")
    elif command == "windows":
        for row in body["windows"]:
            lines.append(f"{row['cell']:>5} dim {row['dim']} class {row['class']:>3} "
                         f"|L|={row['size']} {row['weights']}")
    return lines


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="skms", description=__doc__.split("\n")[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("cells", nargs="*", help="cell ids (c12) or points (p:1/2,1/2); diagram file for perv-check")
    p.add_argument("--config", help="JSON configuration file")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--window", default=None, help="box as lo,hi;lo,hi (overrides the config)")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for independent certificates")
    return p


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        need = ARITY.get(args.command, 0)
        if len(args.cells) != need:
            raise ConfigError(f"{args.command}: expected {need} positional argument(s), got {len(args.cells)}")
        if args.command == "perv-check" and args.config is None:
            cfg = None
        else:
            if args.config is None:
                raise ConfigError("--config is required")
            cfg = load_config(args.config)
            if args.seed is not None:
                cfg.seed = args.seed
            if args.window is not None:
                cfg.window = parse_window(args.window)
        ok, body = HANDLERS[args.command](cfg, args)
    except (ConfigError, ArrangementError, DimensionError, PreconditionError, DiagramError,
            RepSpecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    report = {"schema_version": SCHEMA_VERSION, "command": args.command,
              "arguments": list(args.cells), "verdict": "pass" if ok else "fail",
              "config": cfg.raw if cfg else None, **body}
    (out / f"{args.command}.json").write_text(
        json.dumps(to_jsonable(report), sort_keys=True, indent=1) + "\n")
    (out / f"{args.command}.txt").write_text("\n".join(summary_lines(args.command, ok, body)) + "\n")
    print(f"{args.command}: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())
