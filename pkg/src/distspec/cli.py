"""Batch command-line front end: JSON, CSV and text reports on standard output.

Exit codes: 0 success, 1 usage or input error, 2 property violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import addressing, cospectral, families, products, reductions
from .canon import enumerate_connected_graphs, enumerate_trees, is_isomorphic
from .distances import DisconnectedInput, all_pairs_distances
from .exact_poly import coefficient_analytics, inertia_exact, variant_char_poly
from .graphs import Digraph, FormatError, Graph, parse_digraph6, parse_graph6, to_digraph6, to_graph6
from .matrices import ALL_VARIANTS, MatrixVariant, det_distance_tree, distance_determinant, is_tree, variant_matrix
from .spectra import all_spectra, batch_all_spectra, exact_eigenvalues, verify_bounds
from .surds import Surd

OK, USAGE, VIOLATION = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    source: tuple[str, str] | None = None          # (kind, value)
    variants: tuple[MatrixVariant, ...] = ALL_VARIANTS
    tolerance: float = 1e-9
    cluster: float = 1e-7
    fmt: str = "json"
    jobs: int = 1
    extra: dict = field(default_factory=dict)


# --- formatting ----------------------------------------------------------------------

def num(x) -> float:
    return float(format(float(x), ".12g"))


def value_json(x, mult: int | None = None) -> dict:
    if isinstance(x, (Fraction, int, Surd)):
        z = complex(float(x))
        out = {"exact": str(x), "re": num(z.real), "im": 0.0}
    else:
        z = complex(x)
        out = {"exact": None, "re": num(z.real), "im": num(z.imag)}
    if mult is not None:
        out["multiplicity"] = mult
    return out


def value_text(x) -> str:
    if isinstance(x, (Fraction, int, Surd)):
        return str(x)
    z = complex(x)
    if abs(z.imag) <= 1e-12:
        return format(z.real, ".12g")
    return f"{z.real:.12g}{'+' if z.imag >= 0 else '-'}{abs(z.imag):.12g}i"


def multiset_text(pairs) -> str:
    def item(v, m: int) -> str:
        s = value_text(v)
        if m == 1:
            return s
        return (s if s.isdigit() else f"({s})") + f"^({m})"
    return "{" + ", ".join(item(v, m) for v, m in pairs) + "}"


def _collapse(values) -> list[tuple[object, int]]:
    out: list[list] = []
    for v in values:
        if out and complex(out[-1][0]) == complex(v) or (
                out and abs(complex(out[-1][0]) - complex(v)) <= 1e-9 * max(1.0, abs(complex(v)))):
            out[-1][1] += 1
        else:
            out.append([v, 1])
    return [(v, m) for v, m in out]


def emit(cfg: RunConfig, payload, text: str | None = None) -> None:
    if cfg.fmt == "json" or text is None:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


# --- input ---------------------------------------------------------------------------

def parse_operand(text: str) -> Graph | Digraph:
    """Family spec ('petersen', 'cycle:5'), else graph6, else digraph6 ('&...')."""
    name = text.partition(":")[0].strip().lower().replace("-", "_")
    if name in families.FAMILIES:
        return families.build(families.FamilySpec.parse(text))
    if text.startswith("&"):
        return parse_digraph6(text)
    return parse_graph6(text)


def _read_lines(path: str) -> list[str]:
    try:
        with open(path) as fh:
            return [s.strip() for s in fh if s.strip() and not s.startswith(">>")]
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def load_one(cfg: RunConfig) -> Graph | Digraph:
    if cfg.source is None:
        raise UsageError("an input is required (--graph6, --digraph6, --file, --digraph-file or --family)")
    kind, value = cfg.source
    if kind == "graph6":
        return parse_graph6(value)
    if kind == "digraph6":
        return parse_digraph6(value)
    if kind == "family":
        return families.build(families.FamilySpec.parse(value))
    if kind in ("file", "digraph_file"):
        lines = _read_lines(value)
        if not lines:
            raise UsageError(f"{value} is empty")
        return parse_digraph6(lines[0]) if kind == "digraph_file" or lines[0].startswith("&") \
            else parse_graph6(lines[0])
    raise UsageError(f"--{kind} is not a single-graph input for this command")


def load_many(cfg: RunConfig) -> list[Graph]:
    if cfg.source is None:
        raise UsageError("an input is required (--n, --file or --graph6)")
    kind, value = cfg.source
    if kind == "n":
        return list(enumerate_connected_graphs(int(value)))
    if kind == "file":
        return [parse_graph6(s) for s in _read_lines(value)]
    return [load_one(cfg)]


def _label(g: Graph | Digraph) -> str:
    return to_digraph6(g) if isinstance(g, Digraph) else to_graph6(g)


# --- commands ------------------------------------------------------------------------

def cmd_spectra(cfg: RunConfig) -> int:
    g = load_one(cfg)
    info = all_pairs_distances(g)
    spectra = all_spectra(info)
    bounds = verify_bounds(g, info, spectra)
    out = {"graph": _label(g), "directed": info.directed, "order": info.n,
           "transmissions": [int(t) for t in info.transmissions], "variants": {}}
    lines = []
    for v in cfg.variants:
        p = variant_char_poly(info, v)
        pairs = exact_eigenvalues(p)
        rec = {"char_poly": str(p), "char_poly_coefficients": p.to_json(),
               "eigenvalues": [value_json(x, m) for x, m in pairs]}
        if not info.directed:
            rec["inertia"] = list(inertia_exact(p).as_tuple())
        out["variants"][v.name] = rec
        lines.append(f"{v.name}: {multiset_text(pairs)}")
    out["bounds"] = [{**r, "lhs": num(r["lhs"]), "rhs": num(r["rhs"])} for r in bounds.to_json()]
    out["bounds_hold"] = bounds.all_hold and bounds.all_consistent
    emit(cfg, out, "\n".join(lines))
    return OK if out["bounds_hold"] else VIOLATION


def cmd_census(cfg: RunConfig) -> int:
    graphs = load_many(cfg)
    result = cospectral.census(graphs, cfg.variants, jobs=cfg.jobs)
    if cfg.fmt == "json":
        emit(cfg, result.to_json())
    else:
        print(result.csv_header())
        print(result.csv_row())
    return OK


def _compare(oracle: list, direct, tol: float) -> bool:
    return direct.matches([complex(x) for x in oracle], tol)


def cmd_family(cfg: RunConfig) -> int:
    if cfg.source is None or cfg.source[0] != "family":
        raise UsageError("family needs --family NAME[:params]")
    spec = families.FamilySpec.parse(cfg.source[1])
    try:
        g = families.build(spec)
    except families.Unrealizable:
        g = None
    spectra = all_spectra(g) if g is not None else {}
    out = {"family": str(spec), "variants": {}}
    lines, status = [], OK
    for v in cfg.variants:
        try:
            oracle = families.oracle_spectrum(spec, v)
        except families.NoClosedForm as exc:
            out["variants"][v.name] = {"closed_form": None, "reason": str(exc)}
            lines.append(f"{v.name}: no closed form")
            continue
        pairs = _collapse(oracle)
        match = _compare(oracle, spectra[v], cfg.tolerance) if g is not None else None
        if match is False:
            status = VIOLATION
        out["variants"][v.name] = {"closed_form": [value_json(x, m) for x, m in pairs], "matches_direct": match}
        lines.append(f"{v.name}: {multiset_text(pairs)}  direct={'n/a' if match is None else match}")
    if g is not None:
        c = families.classify(g) if isinstance(g, Graph) else None
        out["classification"] = c.to_dict() if c else None
    emit(cfg, out, "\n".join(lines))
    return status


def cmd_product(cfg: RunConfig) -> int:
    left, right = cfg.extra.get("left"), cfg.extra.get("right")
    if not left or not right:
        raise UsageError("product needs --left and --right operands")
    spec = products.ProductSpec.build(cfg.extra["kind"], parse_operand(left), parse_operand(right))
    form = spec.form()
    g = spec.graph()
    spectra = all_spectra(g)
    out = {"kind": spec.kind, "form": form, "product": _label(g), "order": g.n, "variants": {}}
    lines, status = [f"form: {form}"], OK
    for v in cfg.variants:
        try:
            vals = products.product_spectrum(spec, v)
        except products.HypothesisError as exc:
            out["variants"][v.name] = {"closed_form": None, "reason": str(exc)}
            continue
        vals = sorted(vals, key=lambda x: (round(complex(x).real, 9), round(complex(x).imag, 9)))
        match = _compare(vals, spectra[v], cfg.tolerance)
        status = status if match else VIOLATION
        pairs = _collapse(vals)
        out["variants"][v.name] = {"closed_form": [value_json(x, m) for x, m in pairs], "matches_direct": match}
        lines.append(f"{v.name}: {multiset_text(pairs)}  direct={match}")
    emit(cfg, out, "\n".join(lines))
    return status


def cmd_twins(cfg: RunConfig) -> int:
    g = load_one(cfg)
    if not isinstance(g, Graph):
        raise UsageError("twin reduction needs an undirected graph")
    part = reductions.find_twins(g)
    out = {"graph": _label(g), "partition": part.to_dict(), "variants": {}}
    lines, status = [f"classes: {[list(c) for c in part.classes]}"], OK
    for v in cfg.variants:
        m = variant_matrix(g, v)
        qa = reductions.quotient_spectrum(m, part, v)
        direct = variant_char_poly(g, v)
        same = qa.poly == direct and reductions.twin_vectors_ok(m, part, v)
        status = status if same else VIOLATION
        out["variants"][v.name] = {
            "quotient": qa.quotient.B.to_json(),
            "twin_eigenvalues": [{"value": str(lam), "multiplicity": k} for lam, k in qa.twin_eigenvalues],
            "assembled_char_poly": str(qa.poly),
            "matches_direct": same,
        }
        lines.append(f"{v.name}: twins {[(str(a), k) for a, k in qa.twin_eigenvalues]}  "
                     f"poly {qa.poly}  direct={same}")
    emit(cfg, out, "\n".join(lines))
    return status


def cmd_address(cfg: RunConfig) -> int:
    g = load_one(cfg)
    if not isinstance(g, Graph):
        raise UsageError("addressing needs an undirected graph")
    out = {"graph": _label(g), "lower_bound": addressing.addressing_lower_bound(g)}
    if is_tree(g):
        witness = addressing.tree_addressing(g)
        out.update(N=g.n - 1, method="tree")
    else:
        n_min, witness = addressing.minimal_addressing_search(g, cfg.extra.get("r_max"))
        out.update(N=n_min, method="search")
    out["witness"] = list(witness)
    out["valid"] = addressing.verify_addressing(g, witness)
    emit(cfg, out, f"N = {out['N']}\n" + "\n".join(witness))
    return OK if out["valid"] else VIOLATION


def cmd_cousins(cfg: RunConfig) -> int:
    graphs = load_many(cfg)
    found, status = [], OK
    for g in graphs:
        for form, cs, g1, g2 in cospectral.cousin_pairs(g):
            ok = cospectral.are_cospectral(g1, g2, MatrixVariant.DL) and not is_isomorphic(g1, g2)
            status = status if ok else VIOLATION
            found.append({"host": to_graph6(g), "form": form, "cousins": list(cs.vertices),
                          "pair": [to_graph6(g1), to_graph6(g2)], "verified": ok})
    emit(cfg, {"pairs": found, "count": len(found)},
         "\n".join(f"{r['host']} {r['form']} {r['cousins']} -> {r['pair'][0]} {r['pair'][1]} "
                   f"verified={r['verified']}" for r in found) or "no pairs")
    return status


def cmd_coeffs(cfg: RunConfig) -> int:
    g = load_one(cfg)
    info = all_pairs_distances(g)
    mode = cfg.extra.get("mode", "absolute")
    out = {"graph": _label(g), "mode": mode, "variants": {}}
    lines = []
    for v in cfg.variants:
        p = variant_char_poly(info, v)
        diam = info.diameter if mode == "tree_normalized" and isinstance(g, Graph) and is_tree(g) else None
        span = (0, g.n - 2) if mode != "tree_normalized" and v is MatrixVariant.D \
            and isinstance(g, Graph) and is_tree(g) else None
        rep = coefficient_analytics(p, mode, span, diam)
        out["variants"][v.name] = rep.to_dict()
        lines.append(f"{v.name}: log-concave={rep.is_log_concave} unimodal={rep.is_unimodal} "
                     f"peak={rep.peak_index} signs={rep.sign_pattern}")
    emit(cfg, out, "\n".join(lines))
    return OK


# --- verify --------------------------------------------------------------------------

def psd_coefficients_ok(p) -> bool:
    """Signed coefficients log-concave and their absolute values unimodal."""
    return coefficient_analytics(p, "raw").is_log_concave and coefficient_analytics(p, "absolute").is_unimodal


def laplacian_coefficients_decrease(p) -> bool:
    """|c_1| >= |c_2| >= ... >= |c_n|."""
    a = [abs(p[k]) for k in range(1, p.degree + 1)]
    return all(x >= y for x, y in zip(a, a[1:]))


class _Tally:
    def __init__(self) -> None:
        self.checks: dict[str, dict] = {}

    def record(self, name: str, ok: bool, example: str = "") -> None:
        c = self.checks.setdefault(name, {"checked": 0, "violations": 0, "examples": []})
        c["checked"] += 1
        if not ok:
            c["violations"] += 1
            if len(c["examples"]) < 5:
                c["examples"].append(example)

    @property
    def clean(self) -> bool:
        return all(c["violations"] == 0 for c in self.checks.values())


def verify_order(n: int, jobs: int = 1) -> _Tally:
    tally = _Tally()
    graphs = list(enumerate_connected_graphs(n))
    infos = [all_pairs_distances(g) for g in graphs]
    for g, info, spectra in zip(graphs, infos, batch_all_spectra(infos)):
        label = to_graph6(g)
        bounds = verify_bounds(g, info, spectra)
        tally.record("bounds", bounds.all_hold and bounds.all_consistent,
                     f"{label}: {[r.name for r in bounds.failures()]}")
        for v in (MatrixVariant.DQ, MatrixVariant.DL, MatrixVariant.DNL):
            p = variant_char_poly(info, v)
            tally.record(f"{v.name} coefficients log-concave, absolute values unimodal",
                         psd_coefficients_ok(p), label)
            if v is MatrixVariant.DL:
                tally.record("DL absolute coefficients nonincreasing", laplacian_coefficients_decrease(p), label)
        if n >= 3:
            part = reductions.find_twins(g)
            if part.nontrivial:
                for v in ALL_VARIANTS:
                    m = variant_matrix(info, v)
                    qa = reductions.quotient_spectrum(m, part, v)
                    tally.record("twin quotient assembly", qa.poly == variant_char_poly(info, v),
                                 f"{label} {v.name}")
        if info.transmission_regular:
            c = families.classify(g)
            tally.record("transmission-regular sorting-point equivalences", bool(c.equivalences_hold), label)
        if n <= addressing.MAX_SEARCH_ORDER:
            n_min, witness = addressing.minimal_addressing_search(g)
            tally.record("addressing bounds", addressing.addressing_lower_bound(g) <= n_min <= n - 1
                         and addressing.verify_addressing(g, witness), label)
        for form, cs, g1, g2 in cospectral.cousin_pairs(g):
            tally.record("cousin pairs are DL-cospectral",
                         cospectral.are_cospectral(g1, g2, MatrixVariant.DL), f"{label} {form} {cs.vertices}")
    result = cospectral.census(graphs, jobs=jobs)
    for v in ALL_VARIANTS:
        for _, members in result.classes[v]:
            first = parse_graph6(members[0])
            for other in members[1:]:
                rep = cospectral.preservation_report(first, parse_graph6(other), v)
                tally.record("preserved parameters agree", not rep.violations,
                             f"{v.name} {members[0]} {other} {rep.violations}")
    for t in enumerate_trees(n):
        if n >= 2:
            tally.record("tree determinant", distance_determinant(t) == det_distance_tree(t), to_graph6(t))
            tally.record("tree addressing", addressing.verify_addressing(t, addressing.tree_addressing(t)),
                         to_graph6(t))
    return tally


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.source is None or cfg.source[0] != "n":
        raise UsageError("verify needs --n")
    tally = verify_order(int(cfg.source[1]), cfg.jobs)
    out = {"order": int(cfg.source[1]), "checks": tally.checks, "clean": tally.clean}
    lines = [f"{name}: {c['checked']} checked, {c['violations']} violations"
             for name, c in tally.checks.items()]
    emit(cfg, out, "\n".join(lines))
    return OK if tally.clean else VIOLATION


COMMANDS: dict[str, Callable[[RunConfig], int]] = {
    "spectra": cmd_spectra, "census": cmd_census, "family": cmd_family, "product": cmd_product,
    "twins": cmd_twins, "address": cmd_address, "cousins": cmd_cousins, "coeffs": cmd_coeffs,
    "verify": cmd_verify,
}


# --- argument parsing ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="distspec", description="Distance-matrix spectra toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        src = p.add_mutually_exclusive_group()
        src.add_argument("--graph6")
        src.add_argument("--digraph6")
        src.add_argument("--file")
        src.add_argument("--digraph-file")
        src.add_argument("--family")
        src.add_argument("--n", type=int)
        p.add_argument("--variant", default="all", help="D, DQ, DL, DNL or all")
        p.add_argument("--format", choices=("json", "csv", "text"),
                       default="csv" if name == "census" else "json")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--tolerance", type=float, default=1e-9)
        if name == "product":
            p.add_argument("--kind", choices=(products.CARTESIAN, products.LEXICOGRAPHIC), required=True)
            p.add_argument("--left", required=True)
            p.add_argument("--right", required=True)
        if name == "coeffs":
            p.add_argument("--mode", choices=("raw", "absolute", "tree_normalized"), default="absolute")
        if name == "address":
            p.add_argument("--r-max", type=int)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    source = None
    for key in ("graph6", "digraph6", "file", "digraph_file", "family", "n"):
        if getattr(ns, key) is not None:
            source = (key, str(getattr(ns, key)))
    if ns.variant.lower() == "all":
        variants = ALL_VARIANTS
    else:
        try:
            variants = tuple(MatrixVariant.parse(x) for x in ns.variant.split(","))
        except (KeyError, ValueError) as exc:
            raise UsageError(f"unknown variant {ns.variant!r}") from exc
    extra = {k: getattr(ns, k) for k in ("kind", "left", "right", "mode", "r_max") if hasattr(ns, k)}
    return RunConfig(ns.command, source, variants, ns.tolerance, fmt=ns.format, jobs=ns.jobs, extra=extra)


def run(cfg: RunConfig) -> int:
    try:
        return COMMANDS[cfg.command](cfg)
    except (UsageError, FormatError, DisconnectedInput, families.Unrealizable, families.NoClosedForm,
            products.HypothesisError, addressing.OrderTooLarge, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        cfg = config_from_args(ns)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
