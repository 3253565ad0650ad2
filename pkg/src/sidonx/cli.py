"""Command-line orchestration: construct, verify, walk, count, export.

Every command is a pure function of its flags and seeds: data outputs are
byte-identical across runs and worker counts. The run manifest (config
echo, derived quantities, per-check status, wall clock) goes to stdout;
requested data files go to --output, or to stdout when no path is given
(manifest then moves to stderr).

Exit codes: 0 all hard checks pass, 1 check or search failure, 2
configuration or size error. Report-only checks never affect the exit code.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import __version__
from .cayley import CayleyGraph, spectrum, verify_square_relation
from .errors import SearchExhaustedError, SizeLimitError, VerificationError
from .hypergraph import (
    Hypergraph3,
    count_crossing_triples,
    edge_cliques,
    expansion_bruteforce,
    expansion_certificate,
    summary_json_dict,
    triples_csv_lines,
)
from .overlap import (
    CentroidStrategy,
    GridStrategy,
    RandomStrategy,
    load_embedding_csv,
    overlap_estimate_hypergraph,
    random_embedding,
)
from .sidon import (
    SidonSet,
    gold_sidon,
    load_json,
    load_text,
    pair_sums,
    random_sidon,
    save_json,
    save_text,
    to_json_dict,
    verify_sidon,
)
from .walks import (
    AuxGraph,
    EdgeDistribution,
    mixing_csv_lines,
    mixing_profile,
    monte_carlo_walk,
    rapid_mixing_check,
)

SCHEMA_VERSION = 1
MATERIALIZE_DEFAULT = 5_000_000  # triples; verify/walk materialize below this


class ConfigError(Exception):
    pass


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _add_source_flags(p: argparse.ArgumentParser):
    p.add_argument("--t", type=int, help="dimension of Z_2^t (random/file sources)")
    p.add_argument("--random-d", type=int, help="target size for seeded random Sidon search")
    p.add_argument("--seed", type=int, help="seed for the random source; default seed for sub-steps")
    p.add_argument("--gold-m", type=int, help="field degree for the explicit (x, x^3) construction")
    p.add_argument("--sidon-file", help="load the set from JSON ({t, S}) or text (needs --t)")


def _resolve_source(args) -> SidonSet:
    chosen = [x for x in ("random", "gold", "file")
              if {"random": args.random_d is not None,
                  "gold": args.gold_m is not None,
                  "file": args.sidon_file is not None}[x]]
    if len(chosen) != 1:
        raise ConfigError("exactly one Sidon source required: --random-d, --gold-m or --sidon-file")
    if chosen[0] == "random":
        if args.t is None or args.seed is None:
            raise ConfigError("--random-d needs --t and --seed")
        return random_sidon(args.t, args.random_d, args.seed)
    if chosen[0] == "gold":
        s = gold_sidon(args.gold_m)
        if args.t is not None and args.t != s.t:
            raise ConfigError(f"--t {args.t} conflicts with gold-m {args.gold_m} (t = {s.t})")
        return s
    path = args.sidon_file
    try:
        s = load_json(path)
    except (json.JSONDecodeError, UnicodeDecodeError, KeyError):
        if args.t is None:
            raise ConfigError("text Sidon files need --t")
        s = load_text(path, args.t)
    if args.t is not None and args.t != s.t:
        raise ConfigError(f"--t {args.t} conflicts with the file's t = {s.t}")
    return s


def _secondary_seed(args, attr: str) -> int:
    value = getattr(args, attr, None)
    if value is not None:
        return value
    return args.seed if args.seed is not None else 0


def _emit(args, data: str, manifest: dict) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(data)
        sys.stdout.write(_dump_json(manifest))
    else:
        sys.stdout.write(data)
        sys.stderr.write(_dump_json(manifest))


def _manifest(command: str, config: dict, started: float, derived: dict, checks: list) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "artifact_version": __version__,
        "command": command,
        "config": config,
        "wall_clock_seconds": round(time.monotonic() - started, 6),
        "derived": derived,
        "checks": checks,
    }


def _source_config(args) -> dict:
    return {k: getattr(args, k) for k in ("t", "random_d", "seed", "gold_m", "sidon_file")
            if getattr(args, k, None) is not None}


def cmd_generate(args) -> int:
    started = time.monotonic()
    try:
        s = _resolve_source(args)
    except SearchExhaustedError as exc:
        sys.stderr.write(f"error: {exc} (partial size {exc.partial_size})\n")
        return 1
    defect = verify_sidon(s.t, s.elements)
    checks = [{"name": "verify_sidon", "status": "pass" if defect is None else "fail",
               "detail": None if defect is None else repr(defect)}]
    if args.output:
        if args.format == "text":
            save_text(s, args.output)
        else:
            save_json(s, args.output)
        data = ""
    else:
        data = _dump_json(to_json_dict(s)) if args.format == "json" else \
            "".join(f"{x}\n" for x in s.elements)
    manifest = _manifest("generate", {**_source_config(args), "format": args.format}, started,
                         {"t": s.t, "d": s.d}, checks)
    if args.output:
        sys.stdout.write(_dump_json(manifest))
    else:
        sys.stdout.write(data)
        sys.stderr.write(_dump_json(manifest))
    return 0 if defect is None else 1


def cmd_spectrum(args) -> int:
    started = time.monotonic()
    s = _resolve_source(args)
    gens = tuple(sorted(set(pair_sums(s)))) if args.skeleton else s.elements
    spec = spectrum(CayleyGraph(s.t, gens))
    data = _dump_json(spec.to_json_dict())
    manifest = _manifest("spectrum", {**_source_config(args), "skeleton": args.skeleton}, started,
                         {"t": s.t, "d": spec.d, "lambda": spec.lam,
                          "epsilon": [spec.epsilon.numerator, spec.epsilon.denominator]}, [])
    _emit(args, data, manifest)
    return 0


def cmd_build(args) -> int:
    started = time.monotonic()
    s = _resolve_source(args)
    h = Hypergraph3(s, materialize=args.materialize)
    data = _dump_json(summary_json_dict(h))
    if args.dump_triples:
        with open(args.dump_triples, "w") as fh:
            for line in triples_csv_lines(h):
                fh.write(line + "\n")
    manifest = _manifest("build", {**_source_config(args), "materialize": args.materialize},
                         started, {"t": h.t, "d": h.d, "n": h.n,
                                   "edges": h.num_edges, "triples": h.num_triples},
                         [{"name": "degree_regularity",
                           "status": "pass" if h.materialized else "skipped",
                           "detail": None if h.materialized else "implicit build"}])
    _emit(args, data, manifest)
    return 0


def _verify_checks(s: SidonSet, window_seed: int, steps: int) -> tuple[list, dict]:
    checks = []
    derived = {}

    def add(name, status, detail=None):
        checks.append({"name": name, "status": status, "detail": detail})

    defect = verify_sidon(s.t, s.elements)
    add("verify_sidon", "pass" if defect is None else "fail",
        None if defect is None else repr(defect))
    if defect is not None:
        return checks, derived

    spec = spectrum(CayleyGraph(s.t, s.elements))
    derived.update(d=s.d, n=1 << s.t,
                   epsilon=[spec.epsilon.numerator, spec.epsilon.denominator],
                   lam=spec.lam)
    parseval = int((spec.values.astype(object) ** 2).sum()) == (1 << s.t) * s.d
    add("parseval", "pass" if parseval else "fail")

    counterexample = verify_square_relation(s)
    add("square_relation", "pass" if counterexample is None else "fail",
        None if counterexample is None else repr(counterexample))

    if spec.epsilon == 0:
        add("epsilon_positive", "report", "epsilon = 0; expansion bounds are vacuous")

    num_triples = (1 << s.t) * (s.d * (s.d - 1) * (s.d - 2) // 6)
    if num_triples > MATERIALIZE_DEFAULT:
        add("degree_regularity", "skipped", f"{num_triples} triples over the materialization gate")
        add("two_centers", "skipped", "implicit build")
        add("aux_regularity", "skipped", "implicit build")
        add("envelope", "skipped", "implicit build")
    else:
        try:
            h = Hypergraph3(s, materialize=True)
            add("degree_regularity", "pass")
        except VerificationError as exc:
            add("degree_regularity", "fail", str(exc))
            return checks, derived
        centers_ok = True
        for e in map(tuple, h.edges[:5000].tolist()):
            c1, c2 = edge_cliques(h, e)
            if c1 == c2:
                centers_ok = False
                break
        add("two_centers", "pass" if centers_ok else "fail")
        if h.num_edges <= 24:
            cert = expansion_certificate(h)
            he = expansion_bruteforce(h, "E").ratio
            ht = expansion_bruteforce(h, "T").ratio
            ok = he >= cert.edge_bound and ht >= cert.triple_bound
            add("certificate_vs_bruteforce", "pass" if ok else "fail",
                f"h_E={he}, h_T={ht}, bounds={cert.edge_bound},{cert.triple_bound}")
            hv = expansion_bruteforce(h, "V").ratio
            add("vertex_expansion_empirical", "report", f"h_V={hv} (no asserted bound)")
        else:
            add("certificate_vs_bruteforce", "skipped", f"|E| = {h.num_edges} > 24")
        if h.num_edges <= 4096:
            g = AuxGraph(h)
            add("aux_regularity", "pass",
                f"measured degree {g.measured_degree}; 2d-4 formula gives {g.paper_degree_formula}")
            profile = mixing_profile(
                g, EdgeDistribution.point_mass(g.num_vertices, 0, exact=g.num_vertices <= 512),
                steps)
            add("envelope", "pass" if profile.ok else "fail",
                f"max excess {profile.max_excess:.3e}")
            report = rapid_mixing_check(h, steps=min(steps, 20))
            add("rapid_mixing", "report",
                f"ratio={report.lambda_aux_ratio:.6f}, alpha_observed={report.alpha_observed:.6f}, "
                f"certified={report.certified}")
        else:
            add("aux_regularity", "skipped", f"|E| = {h.num_edges} > 4096")
            add("envelope", "skipped", f"|E| = {h.num_edges} > 4096")

    if s.t <= 20 and s.d >= 3:
        h_any = Hypergraph3(s, materialize=False)
        a, b, c = _thirds_partition(1 << s.t, window_seed)
        rep = count_crossing_triples(h_any, a, b, c)
        add("count_window", "report",
            f"count={rep.count}, incidence={rep.incidence_count}, main={rep.main_term:.1f}, "
            f"window={rep.window:.1f}, count_within={rep.count_within}, "
            f"incidence_within={rep.incidence_within}")
    return checks, derived


def _thirds_partition(n: int, seed: int):
    perm = np.random.default_rng(seed).permutation(n)
    third = n // 3
    return perm[:third].tolist(), perm[third:2 * third].tolist(), perm[2 * third:].tolist()


def cmd_verify(args) -> int:
    started = time.monotonic()
    s = _resolve_source(args)
    checks, derived = _verify_checks(s, _secondary_seed(args, "window_seed"), args.steps)
    manifest = _manifest("verify", _source_config(args), started, derived, checks)
    sys.stdout.write(_dump_json(manifest))
    failed = [c for c in checks if c["status"] == "fail"]
    return 1 if failed else 0


def cmd_walk(args) -> int:
    started = time.monotonic()
    s = _resolve_source(args)
    if args.monte_carlo:
        h = Hypergraph3(s, materialize=False)
        hist = monte_carlo_walk(h, _secondary_seed(args, "walk_seed"), args.steps,
                                args.trials, workers=args.workers)
        data = _dump_json(hist.to_json_dict())
        manifest = _manifest("walk", {**_source_config(args), "monte_carlo": True,
                                      "steps": args.steps, "trials": args.trials,
                                      "workers": args.workers}, started,
                             {"num_edges": hist.num_edges, "tv_estimate": hist.tv_estimate}, [])
        _emit(args, data, manifest)
        return 0
    h = Hypergraph3(s, materialize=True)
    g = AuxGraph(h)
    p0 = EdgeDistribution.point_mass(g.num_vertices, args.start_edge, exact=True)
    profile = mixing_profile(g, p0, args.steps, exact=True if args.exact else None)
    data = "".join(line + "\n" for line in mixing_csv_lines(profile))
    manifest = _manifest("walk", {**_source_config(args), "steps": args.steps,
                                  "exact": args.exact, "start_edge": args.start_edge}, started,
                         {"num_edges": g.num_vertices, "lambda_aux": profile.lambda_aux,
                          "degree": profile.degree},
                         [{"name": "envelope", "status": "pass" if profile.ok else "fail",
                           "detail": f"max excess {profile.max_excess:.3e}"}])
    _emit(args, data, manifest)
    return 0 if profile.ok else 1


def cmd_count(args) -> int:
    started = time.monotonic()
    s = _resolve_source(args)
    if args.split != "thirds":
        raise ConfigError(f"unsupported split {args.split!r}")
    h = Hypergraph3(s, materialize=False)
    a, b, c = _thirds_partition(h.n, _secondary_seed(args, "split_seed"))
    rep = count_crossing_triples(h, a, b, c)
    payload = {
        "count": rep.count,
        "incidence_count": rep.incidence_count,
        "main_term": rep.main_term,
        "window": rep.window,
        "count_within": rep.count_within,
        "incidence_within": rep.incidence_within,
        "lambda": rep.lam,
        "mu": [rep.mu.numerator, rep.mu.denominator],
        "sizes": list(rep.sizes),
    }
    data = _dump_json(payload)
    manifest = _manifest("count", {**_source_config(args), "split": args.split}, started,
                         {"t": h.t, "d": h.d}, [])
    _emit(args, data, manifest)
    return 0


def cmd_expansion(args) -> int:
    started = time.monotonic()
    s = _resolve_source(args)
    h = Hypergraph3(s, materialize=True)
    cert = expansion_certificate(h)
    payload = {
        "epsilon": [cert.epsilon.numerator, cert.epsilon.denominator],
        "edge_bound": [cert.edge_bound.numerator, cert.edge_bound.denominator],
        "triple_bound": [cert.triple_bound.numerator, cert.triple_bound.denominator],
    }
    checks = []
    for kind in args.kinds:
        res = expansion_bruteforce(h, kind)
        payload[f"h_{kind}"] = [res.ratio.numerator, res.ratio.denominator]
        payload[f"witness_{kind}"] = [list(e) for e in res.witness]
        if kind == "E":
            checks.append({"name": "edge_bound", "status": "pass" if res.ratio >= cert.edge_bound else "fail",
                           "detail": f"h_E = {res.ratio}"})
        elif kind == "T":
            checks.append({"name": "triple_bound", "status": "pass" if res.ratio >= cert.triple_bound else "fail",
                           "detail": f"h_T = {res.ratio}"})
    data = _dump_json(payload)
    manifest = _manifest("expansion", {**_source_config(args), "kinds": args.kinds}, started,
                         {"t": h.t, "d": h.d, "edges": h.num_edges}, checks)
    _emit(args, data, manifest)
    return 1 if any(c["status"] == "fail" for c in checks) else 0


def cmd_overlap(args) -> int:
    started = time.monotonic()
    s = _resolve_source(args)
    h = Hypergraph3(s, materialize=True)
    if args.embedding:
        emb = load_embedding_csv(args.embedding)
    else:
        emb = random_embedding(range(h.n), _secondary_seed(args, "embed_seed"))
    strategies = [x for x in (args.grid, args.random_k, args.centroids) if x]
    if (args.grid is not None) + (args.random_k is not None) + bool(args.centroids) != 1:
        raise ConfigError("choose exactly one of --grid, --random-k, --centroids")
    if args.grid is not None:
        strategy = GridStrategy(args.grid)
    elif args.random_k is not None:
        strategy = RandomStrategy(_secondary_seed(args, "random_seed"), args.random_k)
    else:
        strategy = CentroidStrategy()
    rep = overlap_estimate_hypergraph(h, emb, strategy)
    data = _dump_json(rep.to_json_dict())
    manifest = _manifest("overlap", {**_source_config(args), "strategy": repr(strategy)}, started,
                         {"t": h.t, "triples": h.num_triples,
                          "fraction": [rep.fraction.numerator, rep.fraction.denominator]}, [])
    _emit(args, data, manifest)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sidonx",
                                     description="Sidon-set hypergraph expanders over Z_2^t")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="produce a Sidon set and verify it")
    _add_source_flags(p)
    p.add_argument("--output")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("spectrum", help="exact Cayley spectrum via the WHT")
    _add_source_flags(p)
    p.add_argument("--skeleton", action="store_true", help="use the pair-sum generators S'")
    p.add_argument("--output")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("build", help="hypergraph summary and optional triple dump")
    _add_source_flags(p)
    p.add_argument("--no-materialize", dest="materialize", action="store_false")
    p.add_argument("--dump-triples")
    p.add_argument("--output")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="run the full check suite")
    _add_source_flags(p)
    p.add_argument("--window-seed", type=int, help="partition seed for the count-window report")
    p.add_argument("--steps", type=int, default=20, help="envelope check walk length")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("walk", help="edge-walk mixing series or Monte-Carlo histogram")
    _add_source_flags(p)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--exact", action="store_true", help="force exact rational evolution")
    p.add_argument("--start-edge", type=int, default=0)
    p.add_argument("--monte-carlo", action="store_true")
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--walk-seed", type=int)
    p.add_argument("--output")
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("count", help="crossing-triple count against the spectral window")
    _add_source_flags(p)
    p.add_argument("--split", default="thirds")
    p.add_argument("--split-seed", type=int)
    p.add_argument("--output")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("expansion", help="brute-force expansion ratios and certificates")
    _add_source_flags(p)
    p.add_argument("--kinds", default="ET", help="subset of E, T, V to brute force")
    p.add_argument("--output")
    p.set_defaults(func=cmd_expansion)

    p = sub.add_parser("overlap", help="geometric overlap lower bound for an embedding")
    _add_source_flags(p)
    p.add_argument("--embedding", help="CSV vertex,x,y; default is a seeded random embedding")
    p.add_argument("--embed-seed", type=int)
    p.add_argument("--grid", type=int)
    p.add_argument("--random-k", type=int)
    p.add_argument("--random-seed", type=int)
    p.add_argument("--centroids", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=cmd_overlap)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, SizeLimitError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except SearchExhaustedError as exc:
        sys.stderr.write(f"error: {exc} (partial size {exc.partial_size})\n")
        return 1
    except VerificationError as exc:
        sys.stderr.write(f"check failed: {exc}\n")
        return 1


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
