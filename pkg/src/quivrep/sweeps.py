"""Universe-wide sweeps. Each yields one JSON-able report per check instance."""

from __future__ import annotations

from typing import Iterator, Sequence

from . import cotorsion as ct
from . import extcalc as ec
from . import functors as fn
from .errors import HypothesisFailed
from .formats import module_to_json, rep_to_json
from .quiver import (
    GOLDEN,
    Quiver,
    left_root_sequence,
    no_arrow_violations,
    opposite,
    right_root_sequence,
)
from .repcat import dualize, phi, psi
from .universe import Universe, module_pool
from .zmodcat import FiniteModule

ADJUNCTIONS = ("f-e", "e-g", "c-s", "s-k")


def _witness(name, M, i, X):
    if name == "f-e":
        return fn.adjunction_fe(M, i, X)
    if name == "e-g":
        return fn.adjunction_eg(X, i, M)
    if name == "c-s":
        return fn.adjunction_cs(X, i, M)
    return fn.adjunction_sk(M, i, X)


def adjunction_sweep(U: Universe, names: Sequence[str] = ADJUNCTIONS, *, full_limit: int = 64,
                     samples: int = 100, seed: int = 0, verbose: bool = False) -> Iterator[dict]:
    """Every adjunction on every (M, i, X) with M in the pool and X in U."""
    Q = U.quiver
    for X in U:
        for i in Q.vertices:
            for M in U.modules:
                for name in names:
                    r = _witness(name, M, i, X).check(full_limit, samples, seed)
                    if verbose or not r["pass"]:
                        r["inputs"] = {"M": module_to_json(M), "i": i, "X": rep_to_json(X)}
                    yield r


def ext_iso_sweep(U: Universe, degrees: Sequence[int] = (0, 1, 2), *,
                  gated_degrees: Sequence[int] = (1,)) -> Iterator[dict]:
    """Ext comparisons for f/e and e/g in ``degrees``; c/s and s/k in ``gated_degrees``.

    Instances whose hypothesis fails are yielded as ``{"skipped": True}``.
    """
    Q = U.quiver
    for X in U:
        for i in Q.vertices:
            for M in U.modules:
                for n in degrees:
                    yield ec.verify_ext_iso_fe(n, M, i, X)
                    yield ec.verify_ext_iso_eg(n, X, i, M)
                for n in gated_degrees:
                    for check in (lambda: ec.verify_ext_iso_cs(X, i, M, n),
                                  lambda: ec.verify_ext_iso_sk(M, i, X, n)):
                        try:
                            yield check()
                        except HypothesisFailed as exc:
                            yield {"check": "gated", "skipped": True, "reason": str(exc),
                                   "pass": None}


def criterion_sweep(U: Universe) -> Iterator[dict]:
    """The φ-mono and ψ-epi criteria at every vertex of every member."""
    for X in U:
        for i in U.quiver.vertices:
            yield ec.phi_mono_criterion(X, i)
            yield ec.psi_epi_criterion(X, i)


def projective_sweep(U: Universe) -> Iterator[dict]:
    """Splitting of covers/embeddings against Φ(Proj), Ψ(Inj) and the split-φ/ψ forms."""
    for X in U:
        proj = ct.cover_splits(X)
        inj = ct.embedding_splits(X)
        phi_p = ct.member_phi(X, ct.PROJ)
        psi_i = ct.member_psi(X, ct.INJ)
        sphi = ct.split_phi(X)
        spsi = ct.split_psi(X)
        yield {
            "check": "projective-injective",
            "inputs": {"X": rep_to_json(X)},
            "cover_splits": proj, "in_phi_proj": phi_p, "split_phi": sphi,
            "embedding_splits": inj, "in_psi_inj": psi_i, "split_psi": spsi,
            "pass": proj == phi_p == sphi and inj == psi_i == spsi,
        }


def cofiltration_sweep(U: Universe, A: ct.ClassSpec, B: ct.ClassSpec) -> Iterator[dict]:
    """For every Y in Rep(Q, B) ∩ U: cofiltration invariants and the Trlifaj replay.

    The class C is Φ(A) ∩ U together with the lifted members f_*(A).
    Raises HypothesisFailed unless (A, B) is a cotorsion pair on the module pool.
    """
    Q = U.quiver
    ct._precheck_pair(U, A, B)
    left = [X for X in U if ct.member_phi(X, A)]
    a_pool = [M for M in U.modules if A.contains(M)]
    extra = [X for X in ct.lift_classes(a_pool, "f", Q) if ct.member_phi(X, A) and X not in left]
    C = left + extra
    for Y in U:
        if not ct.member_repclass(Y, B):
            continue
        cof = ct.build_cofiltration(Y)
        inv = cof.verify()
        tr = ct.check_trlifaj(U, C, cof)
        yield {
            "check": "cofiltration",
            "inputs": {"Y": rep_to_json(Y), "A": A.to_json(), "B": B.to_json()},
            "invariants": inv,
            "trlifaj": {k: tr[k] for k in ("stages", "applicable", "conclusion", "pass")},
            "pass": inv["pass"] and tr["pass"],
        }


def filtration_sweep(U: Universe, A: ct.ClassSpec, B: ct.ClassSpec) -> Iterator[dict]:
    """Dual of cofiltration_sweep: X in Rep(Q, A), class Ψ(B) ∩ U plus g_*(B)."""
    Q = U.quiver
    ct._precheck_pair(U, A, B)
    right = [Y for Y in U if ct.member_psi(Y, B)]
    b_pool = [M for M in U.modules if B.contains(M)]
    extra = [Y for Y in ct.lift_classes(b_pool, "g", Q) if ct.member_psi(Y, B) and Y not in right]
    C = right + extra
    for X in U:
        if not ct.member_repclass(X, A):
            continue
        fil = ct.build_filtration(X)
        inv = fil.verify()
        ek = ct.check_eklof(U, C, fil)
        yield {
            "check": "filtration",
            "inputs": {"X": rep_to_json(X), "A": A.to_json(), "B": B.to_json()},
            "invariants": inv,
            "eklof": {k: ek[k] for k in ("stages", "applicable", "conclusion", "pass")},
            "pass": inv["pass"] and ek["pass"],
        }


def rooted_report(Q: Quiver) -> dict:
    V = left_root_sequence(Q)
    W = right_root_sequence(Q)
    return {
        "check": "rooted",
        "inputs": {"vertices": list(Q.vertices),
                   "arrows": [[a.id, a.source, a.target] for a in Q.arrows]},
        "V": V.as_lists(Q),
        "W": W.as_lists(Q),
        "left_rooted": V.stabilized,
        "right_rooted": W.stabilized,
        "no_arrow_V": not no_arrow_violations(Q, V, True),
        "no_arrow_W": not no_arrow_violations(Q, W, False),
        "pass": True,
    }


# --- duality -----------------------------------------------------------------

DUAL_CLASS = {"All": ct.ALL, "Zero": ct.ZERO, "Proj": ct.INJ, "Inj": ct.PROJ}


def dual_class(C: ct.ClassSpec) -> ct.ClassSpec:
    """Image of a class under ℤ/N-duality (finite modules are self-dual)."""
    if C.kind in DUAL_CLASS:
        return DUAL_CLASS[C.kind]
    if C.kind == "FiniteList":
        return C
    side = "right" if C.side == "left" else "left"
    return ct.ClassSpec("PerpOfList", C.objects, side, C.degree)


def duality_sweep(U: Universe, degrees: Sequence[int] = (0, 1)) -> Iterator[dict]:
    """Compare every (b)-side computation with its (a)-twin on the opposite quiver."""
    Q = U.quiver
    Qop = opposite(Q)
    yield {"check": "dual-root-sequence",
           "inputs": {"vertices": list(Q.vertices)},
           "pass": right_root_sequence(Q).stages == left_root_sequence(Qop).stages
           and left_root_sequence(Q).stages == right_root_sequence(Qop).stages}
    for M in U.modules:
        for i in Q.vertices:
            ok = fn.g_functor(M, i, Q) == dualize(fn.f_functor(M, i, Qop))
            ok2 = fn.f_functor(M, i, Q) == dualize(fn.g_functor(M, i, Qop))
            yield {"check": "dual-g-f", "inputs": {"M": module_to_json(M), "i": i},
                   "pass": ok and ok2}
    for X in U:
        DX = dualize(X)
        for i in Q.vertices:
            same = (phi(X, i).is_mono() == psi(DX, i).is_epi()
                    and psi(X, i).is_epi() == phi(DX, i).is_mono())
            a = ec.psi_epi_criterion(X, i)
            b = ec.phi_mono_criterion(DX, i)
            crit = (a["ext_vanishes"], a["hom_surjective"], a["epi"]) == \
                (b["ext_vanishes"], b["hom_surjective"], b["mono"])
            results = [same, crit]
            for M in U.modules:
                for n in degrees:
                    eg = ec.verify_ext_iso_eg(n, X, i, M)
                    fe = ec.verify_ext_iso_fe(n, M, i, DX)
                    results.append(eg["lhs_invariants"] == fe["lhs_invariants"]
                                   and eg["rhs_invariants"] == fe["rhs_invariants"])
                try:
                    sk = ec.verify_ext_iso_sk(M, i, X)
                except HypothesisFailed:
                    sk = None
                try:
                    cs = ec.verify_ext_iso_cs(DX, i, M)
                except HypothesisFailed:
                    cs = None
                if sk is None or cs is None:
                    results.append(sk is None and cs is None)
                else:
                    results.append(sk["lhs_invariants"] == cs["lhs_invariants"]
                                   and sk["rhs_invariants"] == cs["rhs_invariants"])
            yield {"check": "dual-instance", "inputs": {"X": rep_to_json(X), "i": i},
                   "pass": all(results)}
        for C in (ct.ALL, ct.PROJ, ct.INJ):
            yield {"check": "dual-membership", "inputs": {"X": rep_to_json(X), "C": C.to_json()},
                   "pass": ct.member_psi(X, C) == ct.member_phi(DX, dual_class(C))
                   and ct.member_repclass(X, C) == ct.member_repclass(DX, dual_class(C))}


def dual_theorem_reports(U: Universe, A: ct.ClassSpec, B: ct.ClassSpec) -> dict:
    """Theorem B on Q against Theorem A on Q^op with the dual classes swapped."""
    Uop = Universe(opposite(U.quiver), U.N, U.max_chain_length, U.factors, U.cap)
    rb = ct.check_theorem_B(U, A, B)
    ra = ct.check_theorem_A(Uop, dual_class(B), dual_class(A))
    agree = (rb["pass"] == ra["pass"] and rb["left_count"] == ra["right_count"]
             and rb["right_count"] == ra["left_count"])
    return {"check": "dual-theorem", "inputs": {"universe": U.describe(), "A": A.to_json(),
                                                "B": B.to_json()},
            "theorem_B": rb["pass"], "theorem_A_on_opposite": ra["pass"],
            "counts": [[rb["left_count"], rb["right_count"]], [ra["left_count"], ra["right_count"]]],
            "pass": agree}


def golden(name: str) -> Quiver:
    return GOLDEN[name]()
