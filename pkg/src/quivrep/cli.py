"""Command-line front end.

Reports are JSON lines, one per check instance, followed by a summary
object. Exit codes: 0 all pass, 1 counterexample, 2 parse error,
3 infinite path set, 4 hypothesis failed.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from . import cotorsion as ct
from . import extcalc as ec
from . import functors as fn
from . import sweeps
from .errors import HypothesisFailed, ParseError, PathSetInfinite
from .formats import (
    dumps,
    load_json,
    module_from_json,
    module_to_json,
    quiver_from_json,
    rep_from_json,
    rep_to_json,
)
from .quiver import GOLDEN
from .universe import DEFAULT_CAP, Universe

EXIT_PASS, EXIT_FAIL, EXIT_PARSE, EXIT_INFINITE, EXIT_HYPOTHESIS = 0, 1, 2, 3, 4

CHECKS = (
    "adjunctions", "ext-iso-fe", "ext-iso-eg", "ext-iso-cs", "ext-iso-sk",
    "phi-mono", "psi-epi", "projective-char", "theorem-A", "theorem-B",
    "values-phi", "values-psi", "perp-f", "perp-s", "hereditary-A", "hereditary-B",
    "cofiltration", "filtration", "duality",
)


@dataclass
class RunConfig:
    command: str
    inputs: dict = field(default_factory=dict)
    N: int = 2
    chain_len: int = 1
    cap: int = DEFAULT_CAP
    depth: int = ec.MAX_DEFAULT_DEGREE
    seed: int = 0
    out: Optional[str] = None

    def __post_init__(self):
        if self.N < 2:
            raise ParseError("--ring must be at least 2")
        if self.chain_len < 0 or self.cap < 1 or self.depth < 0:
            raise ParseError("bounds must be positive")


class Emitter:
    """Buffers report lines and writes them in order at the end."""

    def __init__(self):
        self.lines = []
        self.passed = self.failed = self.skipped = 0

    def emit(self, report: dict) -> None:
        p = report.get("pass")
        if p is True:
            self.passed += 1
        elif p is False:
            self.failed += 1
        else:
            self.skipped += 1
        self.lines.append(dumps(report))

    def summary(self, cfg: RunConfig, code: int, extra: Optional[dict] = None) -> dict:
        s = {"summary": True, "command": cfg.command, "inputs": cfg.inputs,
             "passed": self.passed, "failed": self.failed, "skipped": self.skipped,
             "exit": code, "version": __version__}
        if extra:
            s.update(extra)
        return s


def _write(cfg: RunConfig, lines) -> None:
    text = "\n".join(lines) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_quiver(args):
    if getattr(args, "golden", None):
        if args.golden not in GOLDEN:
            raise ParseError(f"unknown golden quiver {args.golden!r}; choose from {sorted(GOLDEN)}")
        return GOLDEN[args.golden]()
    if getattr(args, "quiver", None):
        return quiver_from_json(load_json(args.quiver))
    raise ParseError("a quiver is required (--quiver FILE or --golden NAME)")


def _load_rep(path, Q, N):
    return rep_from_json(load_json(path), Q, N)


def _parse_module(text, N):
    """A module given as '2,4' (invariant factors) or '' / '0' for zero."""
    text = (text or "").strip()
    if text in ("", "0"):
        return module_from_json([], N)
    try:
        chain = [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise ParseError(f"bad module {text!r}") from exc
    return module_from_json([d for d in chain if d != 1], N)


def _parse_class(text, N):
    if text is None:
        return None
    if text in ct.KINDS:
        return ct.ClassSpec(text)
    return ct.ClassSpec.from_json(load_json(text), N)


def _universe(cfg: RunConfig, Q) -> Universe:
    return Universe(Q, cfg.N, cfg.chain_len, None, cfg.cap)


# --- commands ---------------------------------------------------------------

def cmd_rooted(args, cfg: RunConfig) -> int:
    Q = _load_quiver(args)
    em = Emitter()
    em.emit(sweeps.rooted_report(Q))
    _write(cfg, em.lines + [dumps(em.summary(cfg, EXIT_PASS))])
    return EXIT_PASS


def cmd_functor(args, cfg: RunConfig) -> int:
    Q = _load_quiver(args)
    name = args.name
    i = args.vertex
    Q._check_vertex(i)
    header = {"functor": name, "vertex": i, "inputs": cfg.inputs, "version": __version__}
    if name in ("s", "f", "g"):
        M = _parse_module(args.module, cfg.N)
        build = {"s": fn.stalk, "f": fn.f_functor, "g": fn.g_functor}[name]
        result = {"representation": rep_to_json(build(M, i, Q))}
    else:
        if not args.rep:
            raise ParseError(f"functor {name} needs --rep")
        X = _load_rep(args.rep, Q, cfg.N)
        if name == "e":
            M = fn.evaluate(X, i)
        elif name == "c":
            M = fn.c_functor(X, i)[0]
        else:
            M = fn.k_functor(X, i)[0]
        result = {"module": module_to_json(M)}
    header.update(result)
    _write(cfg, [dumps(header)])
    return EXIT_PASS


def cmd_ext(args, cfg: RunConfig) -> int:
    Q = _load_quiver(args)
    X = _load_rep(args.source, Q, cfg.N)
    Y = _load_rep(args.target, Q, cfg.N)
    em = Emitter()
    for n in range(args.degree + 1) if args.all_degrees else [args.degree]:
        g = ec.ext_rep(n, X, Y, max_degree=cfg.depth)
        em.emit({"check": "ext", "inputs": {"n": n, "X": rep_to_json(X), "Y": rep_to_json(Y)},
                 "invariants": g.invariants, "pass": True})
    _write(cfg, em.lines + [dumps(em.summary(cfg, EXIT_PASS))])
    return EXIT_PASS


def cmd_universe_dump(args, cfg: RunConfig) -> int:
    Q = _load_quiver(args)
    U = _universe(cfg, Q)
    lines = [dumps(rep_to_json(X)) for X in U]
    lines.append(dumps({"summary": True, "command": cfg.command, "inputs": cfg.inputs,
                        "universe": U.describe(), "exit": EXIT_PASS, "version": __version__}))
    _write(cfg, lines)
    return EXIT_PASS


def _single_instance(args, cfg, Q, em) -> None:
    """Checks run on one representation given by --rep."""
    X = _load_rep(args.rep, Q, cfg.N)
    M = _parse_module(args.module, cfg.N)
    vertices = [args.vertex] if args.vertex else list(Q.vertices)
    for i in vertices:
        if args.check == "ext-iso-cs":
            em.emit(ec.verify_ext_iso_cs(X, i, M))
        elif args.check == "ext-iso-sk":
            em.emit(ec.verify_ext_iso_sk(M, i, X))
        elif args.check == "ext-iso-fe":
            for n in range(args.max_degree + 1):
                em.emit(ec.verify_ext_iso_fe(n, M, i, X))
        elif args.check == "ext-iso-eg":
            for n in range(args.max_degree + 1):
                em.emit(ec.verify_ext_iso_eg(n, X, i, M))
        elif args.check == "phi-mono":
            em.emit(ec.phi_mono_criterion(X, i))
        elif args.check == "psi-epi":
            em.emit(ec.psi_epi_criterion(X, i))
        else:
            raise ParseError(f"check {args.check} does not take --rep")


def cmd_verify(args, cfg: RunConfig) -> int:
    Q = _load_quiver(args)
    check = args.check
    em = Emitter()
    extra = {}
    A = _parse_class(args.A, cfg.N) or ct.ALL
    B = _parse_class(args.B, cfg.N) or ct.ALL
    if args.rep:
        _single_instance(args, cfg, Q, em)
    else:
        U = _universe(cfg, Q)
        extra["universe"] = U.describe()
        degrees = list(range(min(args.max_degree, cfg.depth) + 1))
        if check == "adjunctions":
            it = sweeps.adjunction_sweep(U, seed=cfg.seed)
        elif check in ("ext-iso-fe", "ext-iso-eg", "ext-iso-cs", "ext-iso-sk"):
            tag = check
            it = (r for r in sweeps.ext_iso_sweep(U, degrees)
                  if r["check"] == tag or (r.get("skipped") and tag in ("ext-iso-cs", "ext-iso-sk")))
        elif check == "phi-mono":
            it = (r for r in sweeps.criterion_sweep(U) if r["check"] == "phi-mono-criterion")
        elif check == "psi-epi":
            it = (r for r in sweeps.criterion_sweep(U) if r["check"] == "psi-epi-criterion")
        elif check == "projective-char":
            it = sweeps.projective_sweep(U)
        elif check == "theorem-A":
            it = iter([ct.check_theorem_A(U, A, B)])
        elif check == "theorem-B":
            it = iter([ct.check_theorem_B(U, A, B)])
        elif check == "values-phi":
            it = iter([ct.check_prop_values(U, A, "phi")])
        elif check == "values-psi":
            it = iter([ct.check_prop_values(U, A, "psi")])
        elif check == "perp-f":
            it = iter([_perp_f_report(U, A, degrees)])
        elif check == "perp-s":
            it = iter([_perp_s_report(U, A)])
        elif check == "hereditary-A":
            it = iter([ct.check_hereditary(U, A, B, "A")])
        elif check == "hereditary-B":
            it = iter([ct.check_hereditary(U, A, B, "B")])
        elif check == "cofiltration":
            it = sweeps.cofiltration_sweep(U, A, B)
        elif check == "filtration":
            it = sweeps.filtration_sweep(U, A, B)
        elif check == "duality":
            it = sweeps.duality_sweep(U)
        else:
            raise ParseError(f"unknown check {check!r}")
        for r in it:
            em.emit(r)
    code = EXIT_FAIL if em.failed else EXIT_PASS
    _write(cfg, em.lines + [dumps(em.summary(cfg, code, extra))])
    return code


def _perp_f_report(U, C, degrees) -> dict:
    """f_*(C ∩ pool)^⊥ in U against Rep(Q, C^⊥) ∩ U, for each degree ≥ 1."""
    Q = U.quiver
    objs = [M for M in U.modules if C.contains(M)]
    lifted = ct.lift_classes(objs, "f", Q)
    results = {}
    ok = True
    for n in [d for d in degrees if d >= 1] or [1]:
        perp = ct.perp_in_universe(lifted, U, "right", n)
        target = ct.ClassSpec("PerpOfList", tuple(objs), "right", n)
        expect = [X for X in U if ct.member_repclass(X, target)]
        results[str(n)] = [len(perp), len(expect)]
        ok = ok and perp == expect
    return {"check": "perp-f", "inputs": {"universe": U.describe(), "C": C.to_json()},
            "counts": results, "pass": ok}


def _perp_s_report(U, C) -> dict:
    """⊥s_*(C ∩ pool) in U against Φ(⊥C) ∩ U; needs ℤ/N in C."""
    Q = U.quiver
    objs = [M for M in U.modules if C.contains(M)]
    if not any(all(d == U.N for d in M.chain) and M.rank for M in objs):
        raise HypothesisFailed("the class must contain the injective cogenerator")
    lifted = ct.lift_classes(objs, "s", Q)
    perp = ct.perp_in_universe(lifted, U, "left", 1)
    left = ct.ClassSpec("PerpOfList", tuple(objs), "left", 1)
    expect = [X for X in U if ct.member_phi(X, left)]
    return {"check": "perp-s", "inputs": {"universe": U.describe(), "C": C.to_json()},
            "counts": [len(perp), len(expect)], "pass": perp == expect}


# --- entry point ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quivrep", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", type=int, default=2, metavar="N")
    common.add_argument("--universe-chain-len", type=int, default=1)
    common.add_argument("--universe-cap", type=int, default=DEFAULT_CAP)
    common.add_argument("--depth", type=int, default=ec.MAX_DEFAULT_DEGREE)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out")
    qsrc = argparse.ArgumentParser(add_help=False)
    qsrc.add_argument("--quiver", help="quiver JSON file")
    qsrc.add_argument("--golden", help=f"built-in quiver: {', '.join(sorted(GOLDEN))}")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("rooted", parents=[common, qsrc], help="root sequences and rootedness")
    r.add_argument("file", nargs="?", help="quiver JSON file")

    f = sub.add_parser("functor", parents=[common, qsrc], help="apply e, s, f, g, c or k")
    f.add_argument("name", choices=["e", "s", "f", "g", "c", "k"])
    f.add_argument("--vertex", required=True)
    f.add_argument("--module", default="", help="invariant factors, e.g. 2,4")
    f.add_argument("--rep", help="representation JSON file")

    e = sub.add_parser("ext", parents=[common, qsrc], help="Ext^n between two representations")
    e.add_argument("source")
    e.add_argument("target")
    e.add_argument("-n", "--degree", type=int, default=1)
    e.add_argument("--all-degrees", action="store_true", help="report degrees 0..n")

    v = sub.add_parser("verify", parents=[common, qsrc], help="run a check or a sweep")
    v.add_argument("check", choices=CHECKS)
    v.add_argument("--A", help="class kind (All, Zero, Proj, Inj) or ClassSpec JSON file")
    v.add_argument("--B", help="class kind or ClassSpec JSON file")
    v.add_argument("--rep", help="check a single representation instead of a universe")
    v.add_argument("--vertex")
    v.add_argument("--module", default=None, help="invariant factors of M (default ℤ/N)")
    v.add_argument("--max-degree", type=int, default=2)

    sub.add_parser("universe-dump", parents=[common, qsrc], help="list universe members")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_PASS
    try:
        if args.command == "rooted" and args.file and not args.quiver:
            args.quiver = args.file
        if getattr(args, "module", "unset") is None:
            args.module = str(args.ring)
        inputs = {k: v for k, v in sorted(vars(args).items())
                  if k not in ("out",) and v is not None}
        cfg = RunConfig(args.command, inputs, args.ring, args.universe_chain_len,
                        args.universe_cap, args.depth, args.seed, args.out)
        handler = {"rooted": cmd_rooted, "functor": cmd_functor, "ext": cmd_ext,
                   "verify": cmd_verify, "universe-dump": cmd_universe_dump}[args.command]
        return handler(args, cfg)
    except ParseError as exc:
        _error(args, EXIT_PARSE, "parse", exc)
        return EXIT_PARSE
    except PathSetInfinite as exc:
        _error(args, EXIT_INFINITE, "infinite-paths", exc)
        return EXIT_INFINITE
    except HypothesisFailed as exc:
        _error(args, EXIT_HYPOTHESIS, "hypothesis-failed", exc)
        return EXIT_HYPOTHESIS
    except (KeyError, ValueError) as exc:
        _error(args, EXIT_PARSE, "invalid-input", exc)
        return EXIT_PARSE


def _error(args, code, kind, exc) -> None:
    line = dumps({"summary": True, "command": args.command, "error": kind,
                  "message": str(exc), "exit": code, "version": __version__})
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(line + "\n")
    else:
        sys.stdout.write(line + "\n")
    sys.stderr.write(f"quivrep: {kind}: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
