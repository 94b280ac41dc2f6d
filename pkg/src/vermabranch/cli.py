"""Batch front end: `branch run`, `branch catalog`, `branch al-test`.

A run parses a TOML or JSON config, builds the pair and parabolic, executes
the compatibility checks, the graded branching, the reports, and (by
default) the brute-force oracle cross-check, then writes text, JSON, and
CSV outputs.  Exit codes: 0 success, 2 config schema violation, 3
mathematical refusal (not weakly compatible), 4 oracle mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

try:
    import tomllib as tomli
except ModuleNotFoundError:
    import tomli

from vermabranch.branching import (
    CERTIFIED,
    TruncationOverflowError,
    VermaDescriptor,
    branch,
    cohomological_transfer_report,
    oracle_crosscheck,
    truncated_character_oracle,
)
from vermabranch.catalog import catalog_entries, get_entry
from vermabranch.embedding import (
    EmbeddingError,
    NotWeaklyCompatibleError,
    ReductivePair,
    ThetaData,
    check_commutator_vanishing,
    check_quasi_abelian,
    check_weakly_compatible,
    parabolic_from_H,
    refine_parabolic,
    rho_positivity_check,
)
from vermabranch.pi import amitsur_levitzki_test, pi_degree_report
from vermabranch.rootsys import CartanTypeError, build_root_system

SCHEMA_VERSION = 1
DEFAULT_ORACLE_CAP = 2_000_000
ORACLE_DEPTH_DEFAULT_MAX = 6

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_REFUSED = 3
EXIT_ORACLE = 4


class ConfigError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _frac(value, path):
    try:
        if isinstance(value, str):
            return Fraction(value)
        if isinstance(value, bool):
            raise ValueError
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, float):
            return Fraction(value).limit_denominator(10**6)
    except (ValueError, ZeroDivisionError):
        pass
    raise ConfigError(path, f"expected a rational number, got {value!r}")


def _frac_list(values, path):
    if not isinstance(values, (list, tuple)):
        raise ConfigError(path, "expected a list of rationals")
    return tuple(_frac(v, f"{path}[{i}]") for i, v in enumerate(values))


@dataclass
class RunConfig:
    catalog_name: str | None
    pair: ReductivePair
    H: tuple
    levi_refinement: tuple | None
    F_hw: tuple
    max_degree: int
    assertions: dict
    oracle_enabled: bool
    oracle_max_level: Fraction | None
    seed: int
    raw: dict


def load_config(path: str) -> dict:
    with open(path, "rb") as fh:
        data = fh.read()
    if path.endswith(".json"):
        return json.loads(data)
    try:
        return tomli.loads(data.decode("utf-8"))
    except tomli.TOMLDecodeError as e:
        if path.endswith(".toml"):
            raise ConfigError("<file>", f"invalid TOML: {e}") from None
        try:
            return json.loads(data)
        except json.JSONDecodeError:
            raise ConfigError("<file>", "neither valid TOML nor JSON") from None


def _build_pair_inline(doc, path) -> ReductivePair:
    if not isinstance(doc, dict):
        raise ConfigError(path, "inline pair must be a table")
    for key in ("g", "g_prime", "restriction"):
        if key not in doc:
            raise ConfigError(f"{path}.{key}", "missing field")
    try:
        g = build_root_system(doc["g"])
        gp = build_root_system(doc["g_prime"])
    except (CartanTypeError, TypeError) as e:
        raise ConfigError(f"{path}.g", str(e)) from None
    rows = doc["restriction"]
    if not isinstance(rows, list):
        raise ConfigError(f"{path}.restriction", "expected a list of rows")
    matrix = tuple(
        _frac_list(row, f"{path}.restriction[{i}]") for i, row in enumerate(rows)
    )
    theta = None
    if "theta" in doc:
        tdoc = doc["theta"]
        compact = frozenset(
            _frac_list(r, f"{path}.theta.compact_roots")
            for r in tdoc.get("compact_roots", [])
        )
        k1 = tdoc.get("k1_roots")
        k1set = (
            frozenset(_frac_list(r, f"{path}.theta.k1_roots") for r in k1)
            if k1 is not None
            else None
        )
        theta = ThetaData(compact_roots=compact, k1_roots=k1set)
    try:
        return ReductivePair(g=g, g_prime=gp, restriction=matrix, theta=theta)
    except EmbeddingError as e:
        raise ConfigError(path, str(e)) from None


def parse_config(doc: dict) -> RunConfig:
    if not isinstance(doc, dict):
        raise ConfigError("<root>", "config must be a table")
    has_catalog = "catalog" in doc
    has_inline = "pair" in doc
    if has_catalog == has_inline:
        raise ConfigError(
            "catalog", "exactly one of 'catalog' and 'pair' must be present"
        )
    catalog_name = None
    if has_catalog:
        name = doc["catalog"]
        if not isinstance(name, str):
            raise ConfigError("catalog", "expected a string")
        try:
            entry = get_entry(name)
        except KeyError as e:
            raise ConfigError("catalog", str(e)) from None
        catalog_name = name
        pair = entry.pair()
        default_H = entry.H
    else:
        pair = _build_pair_inline(doc["pair"], "pair")
        default_H = None

    H_doc = doc.get("H", "from-catalog")
    if H_doc == "from-catalog":
        if default_H is None:
            raise ConfigError("H", "'from-catalog' requires a catalog pair")
        H = default_H
    else:
        H = _frac_list(H_doc, "H")
    if len(H) != pair.g_prime.rank:
        raise ConfigError("H", f"expected {pair.g_prime.rank} entries")

    if "F_hw" not in doc:
        raise ConfigError("F_hw", "missing field")
    F_hw = _frac_list(doc["F_hw"], "F_hw")
    if len(F_hw) != pair.g.rank:
        raise ConfigError("F_hw", f"expected {pair.g.rank} entries")

    depth_doc = doc.get("depth", {})
    if isinstance(depth_doc, int):
        depth_doc = {"max_degree": depth_doc}
    if not isinstance(depth_doc, dict):
        raise ConfigError("depth", "expected a table with max_degree")
    max_degree = depth_doc.get("max_degree", 3)
    if not isinstance(max_degree, int) or isinstance(max_degree, bool) or max_degree < 0:
        raise ConfigError("depth.max_degree", "expected a non-negative integer")

    refinement = None
    if "levi_refinement" in doc:
        rows = doc["levi_refinement"]
        if not isinstance(rows, list):
            raise ConfigError("levi_refinement", "expected a list of root vectors")
        refinement = tuple(
            _frac_list(r, f"levi_refinement[{i}]") for i, r in enumerate(rows)
        )

    assertions_doc = doc.get("assertions", {})
    if not isinstance(assertions_doc, dict):
        raise ConfigError("assertions", "expected a table")
    assertions = {
        "theta_stable": bool(assertions_doc.get("theta_stable", False)),
        "transitivity_asserted": bool(assertions_doc.get("transitivity_asserted", False)),
        # user-asserted: the multiplicity pattern has stabilized, so the
        # observed sup over the complete range equals the sup over the full table
        "multiplicity_stabilized": bool(assertions_doc.get("multiplicity_stabilized", False)),
    }

    oracle_doc = doc.get("oracle", {})
    if not isinstance(oracle_doc, dict):
        raise ConfigError("oracle", "expected a table")
    oracle_enabled = bool(oracle_doc.get("enabled", max_degree <= ORACLE_DEPTH_DEFAULT_MAX))
    oracle_max_level = None
    if "max_level" in oracle_doc:
        oracle_max_level = _frac(oracle_doc["max_level"], "oracle.max_level")
        if oracle_max_level > 0:
            raise ConfigError("oracle.max_level", "must be non-positive")

    seed = doc.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ConfigError("seed", "expected an integer")

    return RunConfig(
        catalog_name=catalog_name,
        pair=pair,
        H=H,
        levi_refinement=refinement,
        F_hw=F_hw,
        max_degree=max_degree,
        assertions=assertions,
        oracle_enabled=oracle_enabled,
        oracle_max_level=oracle_max_level,
        seed=seed,
        raw=doc,
    )


# ---------------------------------------------------------------------------
# serialization helpers

def _ser(x):
    """Rationals as exact strings, weights as lists, containers recursively."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, (list, tuple)):
        return [_ser(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _ser(v) for k, v in x.items()}
    return str(x)


def _weight_key(w) -> str:
    return "(" + ",".join(str(c) for c in w) + ")"


def _char_dict(entries: dict) -> dict:
    return {_weight_key(w): m for w, m in sorted(entries.items())}


def run_config(cfg: RunConfig) -> tuple:
    """Execute a run; returns (exit_code, result_dict, timings)."""
    timings = {}
    t0 = time.monotonic()

    parabolic = parabolic_from_H(cfg.pair, cfg.H)
    if cfg.levi_refinement is not None:
        parabolic = refine_parabolic(parabolic, cfg.levi_refinement)

    wc = check_weakly_compatible(parabolic)
    if not wc:
        raise NotWeaklyCompatibleError(wc.violated)
    qa = check_quasi_abelian(parabolic)
    commutator = check_commutator_vanishing(parabolic)
    rho_pos = rho_positivity_check(parabolic)
    timings["checks"] = time.monotonic() - t0

    v = VermaDescriptor(parabolic=parabolic, F_hw=cfg.F_hw)
    t1 = time.monotonic()
    table = branch(v, cfg.max_degree)
    timings["branch"] = time.monotonic() - t1

    pi_report = pi_degree_report(
        table, complete_asserted=cfg.assertions["multiplicity_stabilized"]
    )

    transfer = None
    if table.verdicts.get("completely_reducible") == CERTIFIED and cfg.pair.theta is not None:
        transfer = cohomological_transfer_report(table, cfg.assertions)

    oracle_result = {"enabled": cfg.oracle_enabled, "diff": None, "warning": None}
    exit_code = EXIT_OK
    if cfg.oracle_enabled:
        t2 = time.monotonic()
        max_level = cfg.oracle_max_level
        if max_level is None:
            max_level = _default_oracle_level(table)
        cap = int(os.environ.get("BRANCH_LEVEL_CAP", DEFAULT_ORACLE_CAP))
        try:
            oracle = truncated_character_oracle(v, max_level, cap=cap)
            diff = oracle_crosscheck(table, oracle)
            oracle_result["max_level"] = max_level
            if diff is not None:
                lvl, o_entries, r_entries = diff
                oracle_result["diff"] = {
                    "level": lvl,
                    "oracle": _char_dict(o_entries),
                    "table": _char_dict(r_entries),
                }
                exit_code = EXIT_ORACLE
        except TruncationOverflowError:
            oracle_result["enabled"] = False
            oracle_result["warning"] = "oracle disabled: truncation too deep"
        timings["oracle"] = time.monotonic() - t2

    result = {
        "schema_version": SCHEMA_VERSION,
        "config": _ser(cfg.raw),
        "seed": cfg.seed,
        "checks": {
            "weakly_compatible": True,
            "quasi_abelian": bool(qa),
            "quasi_abelian_witness": _ser(qa.witness) if not qa else None,
            "commutator_vanishing": bool(commutator),
            "rho_positivity": bool(rho_pos),
        },
        "table": {
            "max_degree": table.max_degree,
            "complete_above_level": _ser(table.complete_above_level),
            "verdicts": _ser(table.verdicts),
            "summands": [
                {
                    "hw": _ser(list(s.f_prime_hw)),
                    "mult": s.multiplicity,
                    "grade": [s.degree, _ser(s.level)],
                    "good_range": s.good_range,
                    "irreducible": s.irreducible_certified,
                }
                for s in table.summands
            ],
            "stats": _ser(table.multiplicity_stats),
        },
        "pi": {
            "observed_sup_multiplicity": pi_report.observed_sup_multiplicity,
            "multiplicity_free_so_far": pi_report.multiplicity_free_so_far,
            "predicted": {
                "pi_degree_lower_bound": pi_report.pi_degree_lower_bound,
                "commutative_predicted": pi_report.commutative_predicted,
            },
        },
        "transfer": None
        if transfer is None
        else {
            "shift_degree": transfer.shift_degree,
            "summands": [
                {"label": lbl, "mult": m, "good_range": g}
                for lbl, m, g in transfer.summand_labels
            ],
            "all_good_range_reverified": transfer.all_good_range_reverified,
            "banner": transfer.banner,
        },
        "oracle": _ser(oracle_result),
    }
    timings["total"] = time.monotonic() - t0
    return exit_code, result, timings


def _default_oracle_level(table):
    if table.complete_above_level is not None:
        return table.complete_above_level
    levels = [s.level for s in table.summands]
    base = min(levels) if levels else Fraction(0)
    p = table.source.parabolic
    step = max([p.weight_value(r) for r in p.u_prime_roots], default=Fraction(1))
    return base - (table.max_degree + 1) * step


def _format_text(result, timings) -> str:
    out = io.StringIO()
    cfgdoc = result["config"]
    print("branching run", file=out)
    if "catalog" in cfgdoc:
        print(f"  pair: catalog {cfgdoc['catalog']}", file=out)
    else:
        print(f"  pair: {cfgdoc['pair']['g']} > {cfgdoc['pair']['g_prime']}", file=out)
    print(f"  F highest weight: {cfgdoc['F_hw']}", file=out)
    print(f"  depth: {result['table']['max_degree']}", file=out)
    print("checks:", file=out)
    for k, v in result["checks"].items():
        if v is not None:
            print(f"  {k}: {v}", file=out)
    t = result["table"]
    print(f"verdicts: {t['verdicts']}", file=out)
    print(f"complete above level: {t['complete_above_level']}", file=out)
    print("summands (hw, mult, grade, good_range, irreducible):", file=out)
    for s in t["summands"]:
        print(
            f"  {s['hw']}  x{s['mult']}  k={s['grade'][0]} level={s['grade'][1]}"
            f"  good={s['good_range']} irr={s['irreducible']}",
            file=out,
        )
    print(f"stats: {t['stats']}", file=out)
    print(f"pi: {result['pi']}", file=out)
    if result["transfer"] is not None:
        print(f"transfer: {result['transfer']}", file=out)
    o = result["oracle"]
    if o.get("warning"):
        print(f"oracle: {o['warning']}", file=out)
    elif o["enabled"]:
        status = "mismatch" if o["diff"] else "match"
        print(f"oracle: {status} (down to level {o.get('max_level')})", file=out)
    else:
        print("oracle: disabled", file=out)
    print(
        "timings: "
        + " ".join(f"{k}={v:.3f}s" for k, v in timings.items()),
        file=out,
    )
    return out.getvalue()


def _write_csv(result, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["degree", "level", "hw", "mult", "good_range", "irreducible"])
        for s in result["table"]["summands"]:
            w.writerow(
                [
                    s["grade"][0],
                    s["grade"][1],
                    " ".join(str(c) for c in s["hw"]),
                    s["mult"],
                    s["good_range"],
                    s["irreducible"],
                ]
            )


def _cmd_run(args) -> int:
    try:
        doc = load_config(args.config)
        if args.depth is not None:
            doc = dict(doc)
            depth = doc.get("depth", {})
            if isinstance(depth, int):
                depth = {"max_degree": depth}
            depth = dict(depth) if isinstance(depth, dict) else depth
            if isinstance(depth, dict):
                depth["max_degree"] = args.depth
            doc["depth"] = depth
        if args.no_oracle:
            doc = dict(doc)
            oracle = dict(doc.get("oracle", {}))
            oracle["enabled"] = False
            doc["oracle"] = oracle
        cfg = parse_config(doc)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_SCHEMA
    except (OSError, json.JSONDecodeError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_SCHEMA

    try:
        exit_code, result, timings = run_config(cfg)
    except NotWeaklyCompatibleError as e:
        print(f"refused: {e}", file=sys.stderr)
        return EXIT_REFUSED
    except EmbeddingError as e:
        print(f"refused: {e}", file=sys.stderr)
        return EXIT_REFUSED

    sys.stdout.write(_format_text(result, timings))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(result, fh, indent=2, sort_keys=True)
            fh.write("\n")
    if args.csv:
        _write_csv(result, args.csv)
    if exit_code == EXIT_ORACLE:
        d = result["oracle"]["diff"]
        print(
            f"oracle mismatch at level {d['level']}:\n"
            f"  oracle: {d['oracle']}\n  table:  {d['table']}",
            file=sys.stderr,
        )
    return exit_code


def _cmd_catalog(_args) -> int:
    for e in catalog_entries():
        flags = " ".join(f"{k}={v}" for k, v in sorted(e.flags.items()))
        print(f"{e.name}: {e.g_label} > {e.g_prime_label} -- {e.description}")
        print(f"  H = {tuple(str(h) for h in e.H)}")
        print(f"  {flags}")
    return EXIT_OK


def _cmd_al_test(args) -> int:
    try:
        verdict = amitsur_levitzki_test(args.n, args.trials, args.seed)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SCHEMA
    print(
        f"n={verdict.n} trials={verdict.trials} seed={verdict.seed}: "
        f"s_{2 * verdict.n} vanishing={'PASS' if verdict.vanishing_holds else 'FAIL'}"
    )
    if verdict.n >= 2:
        have = verdict.witness is not None
        print(f"s_{2 * verdict.n - 1} nonzero witness: {'FOUND' if have else 'MISSING'}")
    if verdict.failure:
        print(f"failure: {verdict.failure}", file=sys.stderr)
        return 1
    return EXIT_OK


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="branch",
        description="exact branching laws of generalized Verma modules",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a run configuration")
    p_run.add_argument("-c", "--config", required=True, help="TOML or JSON config file")
    p_run.add_argument("--json", metavar="PATH", help="write JSON result")
    p_run.add_argument("--csv", metavar="PATH", help="write summand CSV")
    p_run.add_argument("--depth", type=int, help="override max symmetric degree")
    p_run.add_argument("--no-oracle", action="store_true", help="skip the oracle cross-check")
    p_run.set_defaults(func=_cmd_run)

    p_cat = sub.add_parser("catalog", help="list the built-in catalog")
    p_cat.set_defaults(func=_cmd_catalog)

    p_al = sub.add_parser("al-test", help="standard-polynomial vanishing harness")
    p_al.add_argument("--n", type=int, default=2)
    p_al.add_argument("--trials", type=int, default=200)
    p_al.add_argument("--seed", type=int, default=7)
    p_al.set_defaults(func=_cmd_al_test)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
