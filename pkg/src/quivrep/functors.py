"""The functors e_i, s_i, f_i, g_i, c_i, k_i and their adjunctions.

f_i(M) puts one copy of M at vertex j for each path i → j; g_i(M) puts one
copy for each path j → i. Blocks are keyed by paths (not positions), so an
arrow acts on f_i(M) by rewriting the key p to the path p-then-a.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

from . import zmodcat as zc
from .errors import PathSetInfinite
from .quiver import Path, Quiver, is_locally_path_finite, opposite, paths
from .repcat import (
    HomRep,
    RepMorphism,
    Representation,
    biproduct_rep,
    cokernel_rep,
    hom_rep,
    is_exact_ses,
    kernel_rep,
    path_action,
    phi,
    psi,
    validate,
)
from .zmodcat import FiniteModule, ModuleMap


def evaluate(X: Representation, i: str) -> FiniteModule:
    """e_i(X) = X(i)."""
    return X.at(i)


def evaluate_morphism(lam: RepMorphism, i: str) -> ModuleMap:
    return lam.at(i)


def stalk(M: FiniteModule, i: str, Q: Quiver) -> Representation:
    """s_i(M): M at i, zero elsewhere, all arrow maps zero."""
    Q._check_vertex(i)
    zero = FiniteModule.zero(M.N)
    return Representation(Q, [M if v == i else zero for v in Q.vertices], N=M.N)


def stalk_morphism(f: ModuleMap, i: str, Q: Quiver) -> RepMorphism:
    S, T = stalk(f.source, i, Q), stalk(f.target, i, Q)
    return RepMorphism(S, T, {i: f})


def _require_path_finite(Q: Quiver) -> None:
    if not is_locally_path_finite(Q):
        raise PathSetInfinite("quiver has an oriented cycle; path sets are infinite")


@dataclass(frozen=True)
class PathRep:
    """f_i(M) or g_i(M) with its path-indexed block structure."""

    rep: Representation
    module: FiniteModule
    vertex: str
    paths: dict = field(compare=False)  # vertex -> tuple of Path
    blocks: dict = field(compare=False)  # vertex -> Biproduct

    def injection(self, p: Path, Q: Quiver) -> ModuleMap:
        v = self._vertex_of(p, Q)
        return self.blocks[v].injections[self.paths[v].index(p)]

    def projection(self, p: Path, Q: Quiver) -> ModuleMap:
        v = self._vertex_of(p, Q)
        return self.blocks[v].projections[self.paths[v].index(p)]

    def _vertex_of(self, p, Q):
        # f blocks live at the end of the path, g blocks at its start
        v = p.end(Q)
        if v in self.paths and p in self.paths[v]:
            return v
        return p.start


@lru_cache(maxsize=2048)
def f_data(M: FiniteModule, i: str, Q: Quiver) -> PathRep:
    """f_i(M) with blocks ε_p for p ∈ Q(i, j), BFS path order."""
    _require_path_finite(Q)
    Q._check_vertex(i)
    ps = {v: paths(Q, i, v) for v in Q.vertices}
    bps = {v: zc.biproduct([M] * len(ps[v]), M.N) for v in Q.vertices}
    maps = []
    for a in Q.arrows:
        j, k = a.source, a.target
        src, tgt = bps[j], bps[k]
        f = ModuleMap.zero(src.module, tgt.module)
        for n, p in enumerate(ps[j]):
            m = ps[k].index(p.then(a.id))
            f = f + tgt.injections[m] @ src.projections[n]
        maps.append(f)
    rep = Representation(Q, [bps[v].module for v in Q.vertices], maps, N=M.N)
    return PathRep(rep, M, i, ps, bps)


def f_functor(M: FiniteModule, i: str, Q: Quiver) -> Representation:
    return f_data(M, i, Q).rep


def _g_paths(Q: Quiver, i: str, j: str) -> tuple:
    # Q(j, i) in the order of the corresponding opposite paths i → j
    Qop = opposite(Q)
    return tuple(Path(j, tuple(reversed(p.arrows))) for p in paths(Qop, i, j))


@lru_cache(maxsize=2048)
def g_data(M: FiniteModule, i: str, Q: Quiver) -> PathRep:
    """g_i(M) with blocks π_q for q ∈ Q(j, i)."""
    _require_path_finite(Q)
    Q._check_vertex(i)
    ps = {v: _g_paths(Q, i, v) for v in Q.vertices}
    bps = {v: zc.biproduct([M] * len(ps[v]), M.N) for v in Q.vertices}
    maps = []
    for a in Q.arrows:
        j, k = a.source, a.target
        src, tgt = bps[j], bps[k]
        f = ModuleMap.zero(src.module, tgt.module)
        for m, q in enumerate(ps[k]):
            n = ps[j].index(q.after(a.id, Q))
            f = f + tgt.injections[m] @ src.projections[n]
        maps.append(f)
    rep = Representation(Q, [bps[v].module for v in Q.vertices], maps, N=M.N)
    return PathRep(rep, M, i, ps, bps)


def g_functor(M: FiniteModule, i: str, Q: Quiver) -> Representation:
    return g_data(M, i, Q).rep


def f_morphism(h: ModuleMap, i: str, Q: Quiver) -> RepMorphism:
    """f_i(h): f_i(M) → f_i(M') acting blockwise."""
    A, B = f_data(h.source, i, Q), f_data(h.target, i, Q)
    comps = []
    for v in Q.vertices:
        c = ModuleMap.zero(A.blocks[v].module, B.blocks[v].module)
        for n in range(len(A.paths[v])):
            c = c + B.blocks[v].injections[n] @ h @ A.blocks[v].projections[n]
        comps.append(c)
    return RepMorphism(A.rep, B.rep, comps)


def c_functor(X: Representation, i: str) -> tuple:
    """(c_i(X), ρ^X_i) = Coker φ^X_i with its projection."""
    return zc.cokernel(phi(X, i))


def k_functor(X: Representation, i: str) -> tuple:
    """(k_i(X), κ) = Ker ψ^X_i with its inclusion."""
    return zc.kernel(psi(X, i))


@dataclass
class AdjunctionWitness:
    """An explicit bijection forward: left → right with inverse backward."""

    name: str
    left: object  # HomRep or HomModule
    right: object
    forward: Callable
    backward: Callable

    def check(self, full_limit: int = 64, samples: int = 100, seed: int = 0) -> dict:
        """Orders agree and both composites are identities.

        Full enumeration when a side has order ≤ ``full_limit``, otherwise
        ``samples`` seeded random elements.
        """
        rng = random.Random(seed)
        failures = []

        def elements(H):
            if H.order <= full_limit:
                return list(H.elements(bound=full_limit))
            chain = H.module.chain
            return [H.element([rng.randrange(d) for d in chain]) for _ in range(samples)]

        n_left = n_right = 0
        for x in elements(self.left):
            n_left += 1
            y = self.forward(x)
            if isinstance(y, RepMorphism) and not validate(y):
                failures.append(("forward-not-morphism", x))
            if self.backward(y) != x:
                failures.append(("backward∘forward", x))
        for y in elements(self.right):
            n_right += 1
            x = self.backward(y)
            if isinstance(x, RepMorphism) and not validate(x):
                failures.append(("backward-not-morphism", y))
            if self.forward(x) != y:
                failures.append(("forward∘backward", y))
        return {
            "adjunction": self.name,
            "left_order": self.left.order,
            "right_order": self.right.order,
            "checked": [n_left, n_right],
            "orders_equal": self.left.order == self.right.order,
            "failures": len(failures),
            "pass": self.left.order == self.right.order and not failures,
        }


def fe_backward(P: PathRep, X: Representation, alpha: ModuleMap) -> RepMorphism:
    """v(α): f_i(M) → X with λ(j)∘ε_p = X(p)∘α."""
    Q = X.quiver
    comps = []
    for v in Q.vertices:
        bp = P.blocks[v]
        c = ModuleMap.zero(bp.module, X.at(v))
        for p, proj in zip(P.paths[v], bp.projections):
            c = c + path_action(X, p) @ alpha @ proj
        comps.append(c)
    return RepMorphism(P.rep, X, comps)


def eg_backward(P: PathRep, X: Representation, alpha: ModuleMap) -> RepMorphism:
    """v(α): X → g_i(M) with π_q∘λ(j) = α∘X(q)."""
    Q = X.quiver
    comps = []
    for v in Q.vertices:
        bp = P.blocks[v]
        c = ModuleMap.zero(X.at(v), bp.module)
        for q, inj in zip(P.paths[v], bp.injections):
            c = c + inj @ alpha @ path_action(X, q)
        comps.append(c)
    return RepMorphism(X, P.rep, comps)


def adjunction_fe(M: FiniteModule, i: str, X: Representation) -> AdjunctionWitness:
    """Hom(f_i(M), X) ≅ Hom(M, X(i)); u(λ) = λ(i)∘ε_{e_i}."""
    Q = X.quiver
    P = f_data(M, i, Q)
    eps = P.injection(Path(i), Q)
    return AdjunctionWitness(
        "f-e",
        hom_rep(P.rep, X),
        zc.hom_module(M, X.at(i)),
        lambda lam: lam.at(i) @ eps,
        lambda alpha: fe_backward(P, X, alpha),
    )


def adjunction_eg(X: Representation, i: str, M: FiniteModule) -> AdjunctionWitness:
    """Hom(X, g_i(M)) ≅ Hom(X(i), M); u(λ) = π_{e_i}∘λ(i)."""
    Q = X.quiver
    P = g_data(M, i, Q)
    pr = P.projection(Path(i), Q)
    return AdjunctionWitness(
        "e-g",
        hom_rep(X, P.rep),
        zc.hom_module(X.at(i), M),
        lambda lam: pr @ lam.at(i),
        lambda alpha: eg_backward(P, X, alpha),
    )


def adjunction_cs(X: Representation, i: str, M: FiniteModule) -> AdjunctionWitness:
    """Hom(c_i(X), M) ≅ Hom(X, s_i(M)); u(α) has λ(i) = α∘ρ^X_i."""
    Q = X.quiver
    C, rho = c_functor(X, i)
    S = stalk(M, i, Q)

    def forward(alpha):
        return RepMorphism(X, S, {i: alpha @ rho})

    def backward(lam):
        beta = zc.factor_through_epi(lam.at(i), rho)
        if beta is None:
            raise ValueError("λ(i) does not factor through the cokernel")
        return beta

    return AdjunctionWitness("c-s", zc.hom_module(C, M), hom_rep(X, S), forward, backward)


def adjunction_sk(M: FiniteModule, i: str, X: Representation) -> AdjunctionWitness:
    """Hom(s_i(M), X) ≅ Hom(M, k_i(X)); λ(i) = κ∘β."""
    Q = X.quiver
    K, kappa = k_functor(X, i)
    S = stalk(M, i, Q)

    def forward(lam):
        beta = zc.factor_through_mono(lam.at(i), kappa)
        if beta is None:
            raise ValueError("λ(i) does not land in the kernel of ψ")
        return beta

    def backward(beta):
        return RepMorphism(S, X, {i: kappa @ beta})

    return AdjunctionWitness("s-k", hom_rep(S, X), zc.hom_module(M, K), forward, backward)


def counit_fe(X: Representation, i: str) -> RepMorphism:
    """f_i(X(i)) → X, the morphism corresponding to the identity of X(i)."""
    P = f_data(X.at(i), i, X.quiver)
    return fe_backward(P, X, ModuleMap.identity(X.at(i)))


def unit_fe(M: FiniteModule, i: str, Q: Quiver) -> ModuleMap:
    """M → e_i f_i(M), the block of the trivial path."""
    return f_data(M, i, Q).injection(Path(i), Q)


@dataclass(frozen=True)
class Cover:
    """ρ: P ↠ X with kernel K (``incl``: K ↪ P); dually ι: X ↪ I with cokernel."""

    obj: Representation
    map: RepMorphism
    rest: Representation
    rest_map: RepMorphism


@lru_cache(maxsize=4096)
def projective_cover_rep(X: Representation) -> Cover:
    """P = ⊕_j f_j(P_j) ↠ X built from counits over free covers P_j ↠ X(j)."""
    Q = X.quiver
    _require_path_finite(Q)
    parts = []
    for v in Q.vertices:
        pi = zc.free_cover(X.at(v))
        if pi.source.is_zero():
            continue
        parts.append((v, pi))
    datas = [f_data(pi.source, v, Q) for v, pi in parts]
    P, inj, proj = biproduct_rep([d.rep for d in datas], Q, X.N)
    rho = RepMorphism.zero(P, X)
    for (v, pi), d, pr in zip(parts, datas, proj):
        rho = rho + fe_backward(d, X, pi) @ pr
    K, incl = kernel_rep(rho)
    return Cover(P, rho, K, incl)


@lru_cache(maxsize=4096)
def injective_embed_rep(X: Representation) -> Cover:
    """X ↪ I = ∏_j g_j(I_j) built from units over embeddings X(j) ↪ I_j."""
    Q = X.quiver
    _require_path_finite(Q)
    parts = []
    for v in Q.vertices:
        e = zc.injective_embed(X.at(v))
        if e.target.is_zero():
            continue
        parts.append((v, e))
    datas = [g_data(e.target, v, Q) for v, e in parts]
    I, inj, proj = biproduct_rep([d.rep for d in datas], Q, X.N)
    iota = RepMorphism.zero(X, I)
    for (v, e), d, en in zip(parts, datas, inj):
        iota = iota + en @ eg_backward(d, X, e)
    C, rho = cokernel_rep(iota)
    return Cover(I, iota, C, rho)


@dataclass(frozen=True)
class Cone:
    rep: Representation
    iota: RepMorphism  # s_i(M) → C
    pi: RepMorphism  # C → X
    exact: bool


def cone(X: Representation, M: FiniteModule, i: str, xi: dict) -> Cone:
    """C(X, M, i, Ξ) with 0 → s_i(M) → C → X → 0.

    ``xi`` maps each arrow a into i to ξ_a: X(s(a)) → M (missing = zero).
    """
    Q = X.quiver
    B = zc.biproduct([X.at(i), M], X.N)
    eX, eM = B.injections
    pX, _ = B.projections
    xis = {}
    for a in Q.arrows_into(i):
        f = xi.get(a.id)
        xis[a.id] = f if f is not None else ModuleMap.zero(X.at(a.source), M)
    unknown = set(xi) - set(xis)
    if unknown:
        raise ValueError(f"ξ given for arrows not ending at {i!r}: {sorted(unknown)}")
    mods = [B.module if v == i else X.at(v) for v in Q.vertices]
    maps = []
    for a, xa in zip(Q.arrows, X.maps):
        j, k = a.source, a.target
        if j != i and k != i:
            maps.append(xa)
        elif j != i and k == i:
            maps.append(eX @ xa + eM @ xis[a.id])
        elif j == i and k != i:
            maps.append(xa @ pX)
        else:
            maps.append(eX @ xa @ pX + eM @ xis[a.id] @ pX)
    C = Representation(Q, mods, maps, N=X.N)
    S = stalk(M, i, Q)
    iota = RepMorphism(S, C, {i: eM})
    pi = RepMorphism(C, X, [pX if v == i else ModuleMap.identity(X.at(v)) for v in Q.vertices])
    ok = validate(iota) and validate(pi) and is_exact_ses(iota, pi)
    return Cone(C, iota, pi, ok)
