"""Command-line driver: ``locount {count,classify,verify,bench,gen,oracle}``.

Exit codes:
    0  success
    1  verify found a mismatch between fast path and oracle
    2  usage error (bad flags or a disallowed parameter value)
    3  file could not be read or written
    4  malformed graph or pattern text
    5  pattern fails validation
    6  oracle budget exceeded
    7  subset dictionary queried outside its anchor
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import asdict, dataclass, field

from . import engine
from .engine import count_biclique, count_pattern
from .errors import LocountError, ParameterError
from .generators import GenSpec, gen_random_degenerate, gen_random_pattern, gen_reduction_instance
from .graph import Graph, degeneracy_order, parse_graph
from .oracle import OracleBudget, oracle_count_cliques, oracle_count_strong, oracle_count_weak
from .pattern import Pattern, check_1d_structure, min_locatable_c, parse_pattern, validate_pattern

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_IO = 3


class _IOFailure(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _IOFailure(f"{path}: {exc.strerror or exc}") from exc


def _write(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise _IOFailure(f"{path}: {exc.strerror or exc}") from exc


@dataclass
class RunReport:
    mode: str
    embeddings: str
    copies: str
    aut: str
    d: int
    locatability: dict | None = None
    reps: int | None = None
    elapsed_ms: dict = field(default_factory=dict)
    dedup: dict = field(default_factory=dict)
    threads: int = 1
    reason: str | None = None

    def validate(self):
        if int(self.embeddings) != int(self.copies) * int(self.aut):
            raise AssertionError(
                f"report arithmetic broken: {self.embeddings} != {self.copies} x {self.aut}")

    def to_json(self) -> str:
        self.validate()
        return json.dumps(asdict(self), indent=2) + "\n"

    def to_table(self) -> str:
        self.validate()
        rows = [("mode", self.mode), ("embeddings", self.embeddings), ("copies", self.copies),
                ("aut", self.aut), ("d", self.d)]
        if self.locatability:
            rows.append(("locatability", f"{self.locatability['status']} c={self.locatability['c']}"))
        if self.reps is not None:
            rows.append(("reps", self.reps))
        rows += [(f"ms.{k}", f"{v:.1f}") for k, v in self.elapsed_ms.items()]
        rows += [(f"dedup.{k}", v) for k, v in self.dedup.items()]
        if self.reason:
            rows.append(("note", self.reason))
        width = max(len(k) for k, _ in rows)
        return "".join(f"{k:<{width}}  {v}\n" for k, v in rows)


def _loc_dict(loc, g: Graph | None = None) -> dict | None:
    if loc is None:
        return None
    out = {"status": str(loc).split("(")[0], "c": loc.c}
    if g is not None and loc.witness_order is not None:
        out["witness_order"] = [g.name(v) for v in loc.witness_order]
        out["witness_cover"] = [g.name(v) for v in loc.witness_cover]
    return out


def run_count(g: Graph, p: Pattern, mode: str, threads: int, dedup: str = "hash",
              paper_literal_weak: bool = False, d: int | None = None) -> RunReport:
    if mode == "biclique":
        if not p.is_biclique():
            raise ParameterError("--mode biclique needs a complete bipartite pattern")
        t0 = time.perf_counter()
        og = degeneracy_order(g)
        t1 = time.perf_counter()
        res = count_biclique(g, p.s, len(p.T), og=og)
        t2 = time.perf_counter()
        aut = engine.biclique_aut(p.s, len(p.T))
        return RunReport("biclique", str(res.embeddings), str(res.copies), str(aut),
                         og.max_left_degree,
                         elapsed_ms={"ordering": (t1 - t0) * 1e3, "locate_count": (t2 - t1) * 1e3},
                         threads=1)
    res = count_pattern(g, p, mode, d=d, threads=threads, dedup=dedup,
                        paper_literal_weak=paper_literal_weak)
    aut, copies, reason = res.aut, res.copies, res.reason
    if paper_literal_weak and res.embeddings % aut:
        # the literal weight need not be a multiple of aut(H); leave it unnormalised
        aut, copies = 1, res.embeddings
        reason = "paper-literal weight is not divisible by aut(H); copies not normalised"
    return RunReport(mode, str(res.embeddings), str(copies), str(aut), res.d,
                     locatability=_loc_dict(res.locatability, p.graph), reps=res.reps,
                     elapsed_ms=res.elapsed_ms, dedup={"rule": dedup, **res.stats},
                     threads=threads, reason=reason)


def cmd_count(args) -> int:
    g = parse_graph(_read(args.graph))
    p = parse_pattern(_read(args.pattern))
    report = run_count(g, p, args.mode, args.threads, args.dedup, args.paper_literal_weak, args.d)
    sys.stdout.write(report.to_table() if args.table else report.to_json())
    return EXIT_OK


def cmd_classify(args) -> int:
    p = parse_pattern(_read(args.pattern))
    loc = min_locatable_c(p, args.d)
    out = {"d": args.d, "pattern_degeneracy": p.degeneracy, **_loc_dict(loc, p.graph)}
    if loc.locatable:
        out["structure_1d"] = check_1d_structure(p, args.d)
    sys.stdout.write(json.dumps(out, indent=2) + "\n")
    return EXIT_OK


# --- verify -------------------------------------------------------------------------

@dataclass(frozen=True)
class CaseSpec:
    """Everything needed to rebuild one verification case."""

    index: int
    host: GenSpec
    s: int
    t: int
    pattern_seed: int

    def build(self):
        return gen_random_degenerate(self.host), gen_random_pattern(self.s, self.t, self.pattern_seed)


def case_specs(seed: int, cases: int, max_host: int = 14, max_d: int = 4, max_pattern: int = 7,
               min_host: int = 4) -> list:
    rng = random.Random(seed)
    out = []
    for i in range(cases):
        n = rng.randint(min_host, max_host)
        host = GenSpec(rng.getrandbits(63), n, rng.randint(1, max_d),
                       rng.choice([1.0, 1.0, 0.8, 0.6]))
        size = rng.randint(3, max_pattern)
        s = rng.randint(1, (size - 1) // 2)
        out.append(CaseSpec(i, host, s, size - s, rng.getrandbits(63)))
    return out


def _k23_k24():
    host = Graph.from_edges(6, [(i, 2 + j) for i in range(2) for j in range(4)])
    pg = Graph.from_edges(5, [(i, 2 + j) for i in range(2) for j in range(3)])
    return host, validate_pattern(pg, [0, 1], [2, 3, 4])


def _reproducer(args, spec: CaseSpec) -> str:
    return json.dumps({"case": asdict(spec),
                       "rerun": f"locount verify --seed {args.seed} --cases {args.cases} "
                                f"--max-host {args.max_host} --max-d {args.max_d} "
                                f"--max-pattern {args.max_pattern} --only {spec.index}"})


def cmd_verify(args) -> int:
    budget = OracleBudget(max_host_vertices=max(40, args.max_host),
                          max_pattern_vertices=max(16, args.max_pattern))
    if args.fixture:
        host, p = _k23_k24()
        fast = count_pattern(host, p, "weak", paper_literal_weak=args.paper_literal_weak).embeddings
        ref = oracle_count_weak(host, p, budget)
        verdict = "ok" if fast == ref else "mismatch"
        print(f"k23-k24 weak{' paper-literal' if args.paper_literal_weak else ''}: "
              f"fast {fast} vs oracle {ref}: {verdict}")
        return EXIT_OK if fast == ref else EXIT_MISMATCH
    specs = case_specs(args.seed, args.cases, args.max_host, args.max_d, args.max_pattern)
    if args.only is not None:
        specs = [specs[args.only]]
    failures = 0
    for spec in specs:
        g, p = spec.build()
        for mode, oracle in (("strong", oracle_count_strong), ("weak", oracle_count_weak)):
            fast = count_pattern(g, p, mode, threads=args.threads,
                                 paper_literal_weak=args.paper_literal_weak).embeddings
            ref = oracle(g, p, budget)
            if fast != ref:
                failures += 1
                print(f"MISMATCH case {spec.index} {mode}: fast {fast} vs oracle {ref}")
                print("  reproducer:", _reproducer(args, spec))
    print(f"{len(specs)} cases, {failures} mismatches")
    return EXIT_OK if failures == 0 else EXIT_MISMATCH


# --- bench --------------------------------------------------------------------------

def cmd_bench(args) -> int:
    p = parse_pattern(_read(args.pattern))
    sizes = [int(x) for x in args.sizes.split(",") if x.strip()]
    rows = []
    prev = None
    for n in sizes:
        g = gen_random_degenerate(GenSpec(args.seed, n, args.d))
        res = count_pattern(g, p, args.mode, threads=args.threads)
        lc = res.elapsed_ms.get("locate_count", 0.0)
        row = {"n": n, **{k: round(v, 2) for k, v in res.elapsed_ms.items()},
               "embeddings": str(res.embeddings), "copies": str(res.copies),
               "ratio": round(lc / prev, 3) if prev else None}
        if p.is_biclique() and args.mode == "weak":
            bc = count_biclique(g, p.s, len(p.T))
            row["biclique_copies"] = str(bc.copies)
            row["biclique_match"] = bc.copies == res.copies
        rows.append(row)
        prev = lc if lc > 0 else None
    if args.json:
        sys.stdout.write(json.dumps(rows, indent=2) + "\n")
    else:
        cols = list(rows[0]) if rows else []
        for r in rows:
            for c in r:
                if c not in cols:
                    cols.append(c)
        width = {c: max(len(c), *(len(str(r.get(c, ""))) for r in rows)) for c in cols}
        print("  ".join(c.rjust(width[c]) for c in cols))
        for r in rows:
            print("  ".join(str(r.get(c, "")).rjust(width[c]) for c in cols))
    if any(r.get("biclique_match") is False for r in rows):
        return EXIT_MISMATCH
    return EXIT_OK


# --- gen / oracle -------------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.kind == "host":
        g = gen_random_degenerate(GenSpec(args.seed, args.n, args.d, args.attach_prob))
        _write(args.out, g.to_text())
    elif args.kind == "pattern":
        p = gen_random_pattern(args.s, args.t, args.seed, d=args.d)
        _write(args.out, p.to_text())
    else:
        gprime = parse_graph(_read(args.graph))
        inst = gen_reduction_instance(gprime, args.k, args.d)
        _write(args.out_host, inst.host.to_text())
        _write(args.out_pattern, inst.pattern.to_text())
    return EXIT_OK


def cmd_oracle(args) -> int:
    budget = OracleBudget(node_limit=args.node_limit)
    g = parse_graph(_read(args.graph))
    if args.cliques is not None:
        out = {"cliques": str(oracle_count_cliques(g, args.cliques, budget)), "k": args.cliques}
    else:
        if args.pattern is None:
            raise ParameterError("oracle needs --pattern or --cliques")
        p = parse_pattern(_read(args.pattern))
        fn = oracle_count_strong if args.mode == "strong" else oracle_count_weak
        out = {"mode": args.mode, "embeddings": str(fn(g, p, budget))}
    sys.stdout.write(json.dumps(out, indent=2) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="locount", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="count embeddings of a pattern in a host graph")
    c.add_argument("--graph", required=True)
    c.add_argument("--pattern", required=True)
    c.add_argument("--mode", choices=["strong", "weak", "biclique"], default="weak")
    c.add_argument("--threads", type=int, default=engine.default_threads())
    c.add_argument("--paper-literal-weak", action="store_true",
                   help="use the uncorrected permutation weight for weak flows")
    c.add_argument("--dedup", choices=["hash", "canonical"], default="hash")
    c.add_argument("--d", type=int, default=None, help="override the host degeneracy (>= computed)")
    c.add_argument("--table", action="store_true", help="human-readable table instead of JSON")
    c.set_defaults(func=cmd_count)

    k = sub.add_parser("classify", help="minimum c for which the pattern is (c, d)-locatable")
    k.add_argument("--pattern", required=True)
    k.add_argument("--d", type=int, required=True)
    k.set_defaults(func=cmd_classify)

    v = sub.add_parser("verify", help="compare fast counts with the oracle on random cases")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--cases", type=int, default=300)
    v.add_argument("--max-host", type=int, default=14)
    v.add_argument("--max-d", type=int, default=4)
    v.add_argument("--max-pattern", type=int, default=7)
    v.add_argument("--only", type=int, default=None, help="rerun a single case index")
    v.add_argument("--threads", type=int, default=1)
    v.add_argument("--fixture", choices=["k23-k24"], default=None)
    v.add_argument("--paper-literal-weak", action="store_true")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="time the pipeline on random hosts of growing size")
    b.add_argument("--pattern", required=True)
    b.add_argument("--sizes", default="10000,20000,40000")
    b.add_argument("--d", type=int, default=5)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--mode", choices=["strong", "weak"], default="weak")
    b.add_argument("--threads", type=int, default=1)
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bench)

    g = sub.add_parser("gen", help="write generated hosts, patterns or reduction instances")
    gsub = g.add_subparsers(dest="kind", required=True)
    gh = gsub.add_parser("host")
    gh.add_argument("--n", type=int, required=True)
    gh.add_argument("--d", type=int, required=True)
    gh.add_argument("--seed", type=int, default=0)
    gh.add_argument("--attach-prob", type=float, default=1.0)
    gh.add_argument("--out", default=None)
    gp = gsub.add_parser("pattern")
    gp.add_argument("--s", type=int, required=True)
    gp.add_argument("--t", type=int, required=True)
    gp.add_argument("--seed", type=int, default=0)
    gp.add_argument("--d", type=int, default=None)
    gp.add_argument("--out", default=None)
    gr = gsub.add_parser("reduction")
    gr.add_argument("--graph", required=True, help="edge list of the graph whose cliques to count")
    gr.add_argument("--k", type=int, default=3)
    gr.add_argument("--d", type=int, default=5)
    gr.add_argument("--out-host", required=True)
    gr.add_argument("--out-pattern", required=True)
    g.set_defaults(func=cmd_gen)

    o = sub.add_parser("oracle", help="brute-force reference counts")
    o.add_argument("--graph", required=True)
    o.add_argument("--pattern", default=None)
    o.add_argument("--mode", choices=["strong", "weak"], default="weak")
    o.add_argument("--cliques", type=int, default=None)
    o.add_argument("--node-limit", type=int, default=OracleBudget().node_limit)
    o.set_defaults(func=cmd_oracle)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except LocountError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
