"""Command-line front end.

Exit codes: 0 all checks passed, 1 a check failed (witness printed),
2 a resource cap was exceeded, 3 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import bsgroup, complex2, enumeration, nonleighton
from .errors import CapExceeded
from .report import Report
from .words import BUILTIN_NAMES, ParseError, builtin, parse_presentation

EXIT_OK, EXIT_FAIL, EXIT_CAP, EXIT_INPUT = 0, 1, 2, 3


@dataclass
class Config:
    max_cosets: int = 100_000
    low_index_cap: int = 6
    hom_degree_cap: int = 6
    ball_radius_cap: int = 4
    format: str = "json"
    out: str | None = None

    @classmethod
    def from_env(cls, env=None) -> "Config":
        env = os.environ if env is None else env
        cfg = cls()
        for name in ("max_cosets", "low_index_cap", "hom_degree_cap", "ball_radius_cap"):
            raw = env.get("NL_" + name.upper())
            if raw is not None:
                setattr(cfg, name, int(raw))
        cfg.format = env.get("NL_FORMAT", cfg.format)
        cfg.out = env.get("NL_OUT", cfg.out)
        return cfg

    def validate(self) -> None:
        for name in ("max_cosets", "low_index_cap", "hom_degree_cap", "ball_radius_cap"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.format not in ("json", "dot", "text"):
            raise ValueError(f"unknown format {self.format!r}")


class InputError(Exception):
    pass


def _presentation(args):
    if getattr(args, "presentation", None):
        try:
            text = Path(args.presentation).read_text()
        except OSError as exc:
            raise InputError(str(exc)) from exc
        return parse_presentation(text)
    return builtin(args.builtin)


def _need(value, cap, what):
    if value > cap:
        raise CapExceeded(f"{what} {value} exceeds the cap {cap}")


def _emit_complex(cx, fmt, names=None) -> str:
    if fmt == "dot":
        return complex2.export_dot(cx, names)
    if fmt == "text":
        v, e, f = cx.counts
        return f"V={v} E={e} F={f} chi={complex2.euler_characteristic(cx)}\n"
    return complex2.export_json(cx) + "\n"


def _emit_report(rep: Report, fmt) -> str:
    return rep.to_text() if fmt == "text" else rep.to_json() + "\n"


def _emit_data(data, fmt) -> str:
    if fmt == "text" and isinstance(data, dict):
        return "".join(f"{k}: {json.dumps(v)}\n" for k, v in data.items())
    return json.dumps(data, indent=1) + "\n"


# ------------------------------------------------------------- subcommands


def cmd_std(args, cfg):
    return _emit_complex(complex2.standard_complex(_presentation(args)), cfg.format), None


def cmd_low_index(args, cfg):
    _need(args.index, cfg.low_index_cap, "index")
    p = _presentation(args)
    tables = enumeration.low_index(p, args.index)
    if cfg.format == "text":
        lines = [f"{len(tables)} subgroups of index <= {args.index}"]
        lines += [f"  index {t.n}: {json.dumps(t.to_dict()['action'])}" for t in tables]
        return "\n".join(lines) + "\n", None
    return _emit_data([t.to_dict() for t in tables], "json"), None


def cmd_tc(args, cfg):
    p = _presentation(args)
    gens = [w for w in (args.subgroup or "").split(",") if w]
    table = enumeration.todd_coxeter(p, gens, max_cosets=cfg.max_cosets)
    return _emit_data(table.to_dict(), cfg.format), None


def cmd_homs(args, cfg):
    _need(args.degree, cfg.hom_degree_cap, "degree")
    p = _presentation(args)
    homs = enumeration.enumerate_homs(p, args.degree, cap=cfg.hom_degree_cap)
    if cfg.format == "text":
        return f"{len(homs)} homomorphisms into S_{args.degree}\n", None
    return _emit_data([h.to_dict() for h in homs], "json"), None


def cmd_abel(args, cfg):
    p = _presentation(args)
    return _emit_data({"presentation": str(p), "invariants": enumeration.abelianization(p)}, cfg.format), None


def _load_table(path, p):
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(str(exc)) from exc
    return enumeration.CosetTable.from_dict(p.generators, data)


def cmd_cover(args, cfg):
    p = _presentation(args)
    base = complex2.standard_complex(p)
    if args.action == "build":
        if args.table:
            table = _load_table(args.table, p)
        else:
            gens = [w for w in (args.subgroup or "").split(",") if w]
            table = enumeration.todd_coxeter(p, gens, max_cosets=cfg.max_cosets)
        cover, _ = complex2.build_cover_from_table(p, table)
        return _emit_complex(cover, cfg.format), None
    rep = Report(f"covers of {p}")
    if args.table:
        tables = [_load_table(args.table, p)]
    else:
        _need(args.index, cfg.low_index_cap, "index")
        tables = enumeration.low_index(p, args.index)
    chi_base = complex2.euler_characteristic(base)
    for k, t in enumerate(tables):
        cover, proj = complex2.build_cover_from_table(p, t)
        sub = complex2.verify_covering(cover, base, proj)
        sub.check("euler characteristic multiplies by the index",
                  complex2.euler_characteristic(cover) == t.n * chi_base,
                  {"index": t.n, "chi": complex2.euler_characteristic(cover)})
        rep.extend(sub, f"table {k + 1} (index {t.n})")
    rep.counts["tables"] = len(tables)
    return _emit_report(rep, cfg.format), rep


def cmd_ball(args, cfg):
    _need(args.radius, cfg.ball_radius_cap, "radius")
    model = bsgroup.BS35 if args.group == "bs35" else bsgroup.INTEGERS
    ball = bsgroup.cayley_ball(model, args.radius, cap=cfg.ball_radius_cap)
    if cfg.format == "text":
        return f"{len(ball.vertices)} vertices, {len(ball.edges)} edges\n", None
    return ball.to_json() + "\n", None


def cmd_phi(args, cfg):
    _need(args.radius, cfg.ball_radius_cap, "radius")
    rep = nonleighton.phi_check(args.radius, cap=cfg.ball_radius_cap)
    return _emit_report(rep, cfg.format), rep


def cmd_demo(args, cfg):
    rep = nonleighton.torus_klein_demo(args.radius)
    return _emit_report(rep, cfg.format), rep


def cmd_lemma(args, cfg):
    if args.which == "commutator":
        _need(args.index, cfg.low_index_cap, "index")
        _need(args.degree, cfg.hom_degree_cap, "degree")
        rep = nonleighton.lemma_commutator_check(args.index, args.degree)
    elif args.which == "bottle":
        _need(args.index, cfg.low_index_cap, "index")
        rep = nonleighton.lemma_bottle_consequence_check(args.index)
    else:
        rep = nonleighton.abelian_consistency_check()
    return _emit_report(rep, cfg.format), rep


def cmd_export(args, cfg):
    if args.eps is not None:
        _need(args.radius, cfg.ball_radius_cap, "radius")
        ball = nonleighton.build_cover_ball(args.eps, args.radius, cap=cfg.ball_radius_cap)
        names = [ball.name(v) for v in ball.complex.vertices]
        return _emit_complex(ball.complex, cfg.format, names if cfg.format == "dot" else None), None
    return _emit_complex(complex2.standard_complex(_presentation(args)), cfg.format), None


def cmd_proptest(args, cfg):
    from .proptest import run_properties

    rep = run_properties(seed=args.seed, cases=args.cases)
    return _emit_report(rep, cfg.format), rep


# ------------------------------------------------------------------ parser


def _add_source(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--builtin", default="bs35", choices=BUILTIN_NAMES, help="built-in presentation (default bs35)")
    g.add_argument("--presentation", metavar="FILE", help="file holding '< gens | relators >'")


def build_parser(cfg: Config) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "dot", "text"), default=cfg.format)
    common.add_argument("--out", metavar="PATH", default=cfg.out, help="write output here instead of stdout")
    common.add_argument("--max-cosets", type=int, default=cfg.max_cosets)
    common.add_argument("--low-index-cap", type=int, default=cfg.low_index_cap)
    common.add_argument("--hom-degree-cap", type=int, default=cfg.hom_degree_cap)
    common.add_argument("--ball-radius-cap", type=int, default=cfg.ball_radius_cap)

    top = argparse.ArgumentParser(
        prog="nlpair",
        description="Two-cell complexes with a common cover but no finite common cover: "
                    "constructions and desk-scale checks.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("std", parents=[common], help="standard complex of a presentation",
                       description="Standard 2-complex (one vertex, a loop per generator, a 2-cell per "
                                   "relator). For h_plus/h_minus this is the two-cell complex of the pair.")
    _add_source(p)
    p.set_defaults(func=cmd_std)

    p = sub.add_parser("low-index", parents=[common], help="all subgroups of bounded index",
                       description="Enumerate every subgroup of index <= N as a canonical coset table.")
    _add_source(p)
    p.add_argument("--index", type=int, required=True)
    p.set_defaults(func=cmd_low_index)

    p = sub.add_parser("tc", parents=[common], help="Todd-Coxeter coset enumeration",
                       description="Coset table of the subgroup generated by --subgroup (comma separated words).")
    _add_source(p)
    p.add_argument("--subgroup", default="", help="comma-separated subgroup generators")
    p.set_defaults(func=cmd_tc)

    p = sub.add_parser("homs", parents=[common], help="homomorphisms into a symmetric group",
                       description="All homomorphisms into S_N; these are the finite quotients the "
                                   "commutator lemma quantifies over.")
    _add_source(p)
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_homs)

    p = sub.add_parser("abel", parents=[common], help="abelianization invariants",
                       description="Invariant factors of the abelianization (0 = infinite cyclic factor); "
                                   "groupA should give [0], bs35 and groupQ [2, 0].")
    _add_source(p)
    p.set_defaults(func=cmd_abel)

    p = sub.add_parser("cover", parents=[common], help="finite covers from coset tables",
                       description="build: the cover for one subgroup (--subgroup or --table). verify: check "
                                   "covering conditions and chi(cover) = index * chi(base) for every "
                                   "subgroup of index <= --index, or for --table.")
    p.add_argument("action", choices=("build", "verify"))
    _add_source(p)
    p.add_argument("--subgroup", default="")
    p.add_argument("--table", metavar="FILE", help="coset table JSON")
    p.add_argument("--index", type=int, default=2)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("ball", parents=[common], help="Cayley ball of BS(3,5) or Z",
                       description="Ball in the Cayley graph of H, the vertex set of the common cover.")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--group", choices=("bs35", "integers"), default="bs35")
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("phi", parents=[common], help="verify the cover isomorphism on a ball",
                       description="Build balls of the covers of both two-cell complexes and check that "
                                   "flipping every second a-loop along each h-line is an isomorphism.")
    p.add_argument("--radius", type=int, default=2)
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("demo", parents=[common], help="torus / Klein bottle strips",
                       description="Same construction with H = Z and h = b: square tilings covering the "
                                   "torus and the Klein bottle.")
    p.add_argument("which", choices=("torus-klein",))
    p.add_argument("--radius", type=int, default=10)
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("lemma", parents=[common], help="finite-index lemma checks",
                       description="commutator: [c^d,c] lies in every subgroup of BS(3,5) of index <= --index "
                                   "and is killed by every map to S_k, k <= --degree. bottle: every subgroup "
                                   "of H_-1 of index <= --index contains h and a^2. abelian: abelianizations "
                                   "of groupA, groupQ and bs35.")
    p.add_argument("which", choices=("commutator", "bottle", "abelian"))
    p.add_argument("--index", type=int, default=6)
    p.add_argument("--degree", type=int, default=5)
    p.set_defaults(func=cmd_lemma)

    p = sub.add_parser("export", parents=[common], help="export a complex as JSON or DOT",
                       description="Export a standard complex, or with --eps a cover ball.")
    _add_source(p)
    p.add_argument("--eps", type=int, choices=(1, -1))
    p.add_argument("--radius", type=int, default=1)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("proptest", parents=[common], help="randomized property checks",
                       description="Random normal-form, reduction and SNF property checks.")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=1000)
    p.set_defaults(func=cmd_proptest)
    return top


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        cfg = Config.from_env()
    except ValueError as exc:
        print(f"error: bad NL_* environment value: {exc}", file=stderr)
        return EXIT_INPUT
    parser = build_parser(cfg)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    cfg.format, cfg.out = args.format, args.out
    cfg.max_cosets, cfg.low_index_cap = args.max_cosets, args.low_index_cap
    cfg.hom_degree_cap, cfg.ball_radius_cap = args.hom_degree_cap, args.ball_radius_cap
    try:
        cfg.validate()
        text, rep = args.func(args, cfg)
    except CapExceeded as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_CAP
    except (InputError, ParseError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        stdout.write(text)
    if rep is not None and not rep.passed:
        for c in rep.failures():
            print(f"FAIL {c.name}: witness={json.dumps(c.witness, default=str)}", file=stderr)
        return EXIT_FAIL
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
