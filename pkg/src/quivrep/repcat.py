"""The category Rep(Q, M) of quiver representations in finite ℤ/N-modules.

Kernels, cokernels and images are computed vertex-wise; the arrow maps of
a kernel/cokernel are the unique maps making the squares commute.
"""

from __future__ import annotations

from functools import lru_cache
from math import prod
from typing import Iterator, Mapping, Optional, Sequence

from . import zmodcat as zc
from .errors import InducedMapFailure
from .exactlin import IntMatrix, Subquotient, kernel_lattice_gens
from .quiver import Path, Quiver, opposite
from .zmodcat import FiniteModule, ModuleMap


class Representation:
    """X: a module X(i) per vertex and a map X(a): X(s(a)) → X(t(a)) per arrow."""

    __slots__ = ("quiver", "N", "modules", "maps", "_hash")

    def __init__(self, quiver: Quiver, modules, maps=None, N: Optional[int] = None):
        if isinstance(modules, Mapping):
            modules = tuple(modules[v] for v in quiver.vertices)
        modules = tuple(modules)
        if len(modules) != len(quiver.vertices):
            raise ValueError("one module per vertex required")
        if N is None:
            if not modules:
                raise ValueError("ring modulus needed for a quiver without vertices")
            N = modules[0].N
        if any(M.N != N for M in modules):
            raise ValueError("all vertex modules must live over the same ring")
        if maps is None:
            maps = {}
        if isinstance(maps, Mapping):
            built = []
            for a in quiver.arrows:
                s = modules[quiver.vertex_position(a.source)]
                t = modules[quiver.vertex_position(a.target)]
                f = maps.get(a.id)
                if f is None:
                    f = ModuleMap.zero(s, t)
                elif not isinstance(f, ModuleMap):
                    f = ModuleMap(s, t, f)
                built.append(f)
            maps = built
        maps = tuple(maps)
        if len(maps) != len(quiver.arrows):
            raise ValueError("one map per arrow required")
        for a, f in zip(quiver.arrows, maps):
            if (f.source != modules[quiver.vertex_position(a.source)]
                    or f.target != modules[quiver.vertex_position(a.target)]):
                raise ValueError(f"map for arrow {a.id!r} has wrong endpoints")
        self.quiver = quiver
        self.N = N
        self.modules = modules
        self.maps = maps
        self._hash = None

    @classmethod
    def zero(cls, Q: Quiver, N: int) -> "Representation":
        return cls(Q, [FiniteModule.zero(N)] * len(Q.vertices), N=N)

    def at(self, i: str) -> FiniteModule:
        return self.modules[self.quiver.vertex_position(i)]

    def arrow_map(self, a: str) -> ModuleMap:
        return self.maps[self.quiver.arrow_position(a)]

    def is_zero(self) -> bool:
        return all(M.is_zero() for M in self.modules)

    @property
    def order(self) -> int:
        return prod(M.order for M in self.modules)

    def __eq__(self, other):
        return (isinstance(other, Representation) and self.quiver == other.quiver
                and self.N == other.N and self.modules == other.modules and self.maps == other.maps)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.quiver, self.N, self.modules, self.maps))
        return self._hash

    def __repr__(self):
        parts = [f"{v}:{M}" for v, M in zip(self.quiver.vertices, self.modules)]
        arrows = [f"{a.id}:{f.matrix.to_rows()}" for a, f in zip(self.quiver.arrows, self.maps)]
        return f"Rep({', '.join(parts)}; {', '.join(arrows)})"


class RepMorphism:
    """A family λ(i): X(i) → Y(i); ``validate`` checks the commuting squares."""

    __slots__ = ("source", "target", "components", "_hash")

    def __init__(self, source: Representation, target: Representation, components):
        Q = source.quiver
        if target.quiver != Q:
            raise ValueError("representations of different quivers")
        if isinstance(components, Mapping):
            comps = []
            for v in Q.vertices:
                c = components.get(v)
                if c is None:
                    c = ModuleMap.zero(source.at(v), target.at(v))
                comps.append(c)
            components = comps
        components = tuple(components)
        for v, c in zip(Q.vertices, components):
            if c.source != source.at(v) or c.target != target.at(v):
                raise ValueError(f"component at {v!r} has wrong endpoints")
        self.source = source
        self.target = target
        self.components = components
        self._hash = None

    @classmethod
    def _trusted(cls, source, target, components: tuple) -> "RepMorphism":
        lam = object.__new__(cls)
        lam.source, lam.target, lam.components, lam._hash = source, target, components, None
        return lam

    @classmethod
    def identity(cls, X: Representation) -> "RepMorphism":
        return cls(X, X, [ModuleMap.identity(M) for M in X.modules])

    @classmethod
    def zero(cls, X: Representation, Y: Representation) -> "RepMorphism":
        return cls(X, Y, [ModuleMap.zero(A, B) for A, B in zip(X.modules, Y.modules)])

    def at(self, i: str) -> ModuleMap:
        return self.components[self.source.quiver.vertex_position(i)]

    def __matmul__(self, other: "RepMorphism") -> "RepMorphism":
        if other.target != self.source:
            raise ValueError("morphisms are not composable")
        return RepMorphism._trusted(other.source, self.target,
                                    tuple(g @ f for g, f in zip(self.components, other.components)))

    def __add__(self, other: "RepMorphism") -> "RepMorphism":
        if other.source != self.source or other.target != self.target:
            raise ValueError("cannot add morphisms with different endpoints")
        return RepMorphism._trusted(self.source, self.target,
                                    tuple(f + g for f, g in zip(self.components, other.components)))

    def __neg__(self) -> "RepMorphism":
        return RepMorphism._trusted(self.source, self.target, tuple(-f for f in self.components))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "RepMorphism":
        return RepMorphism._trusted(self.source, self.target,
                                    tuple(f.scale(c) for f in self.components))

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.components)

    def is_mono(self) -> bool:
        return all(f.is_mono() for f in self.components)

    def is_epi(self) -> bool:
        return all(f.is_epi() for f in self.components)

    def __eq__(self, other):
        return (isinstance(other, RepMorphism) and self.components == other.components
                and self.source == other.source and self.target == other.target)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.source, self.target, self.components))
        return self._hash

    def __repr__(self):
        comps = ", ".join(f"{v}:{f.matrix.to_rows()}"
                          for v, f in zip(self.source.quiver.vertices, self.components))
        return f"RepMorphism({comps})"


def validate(lam: RepMorphism) -> bool:
    """True iff Y(a)∘λ(i) = λ(j)∘X(a) for every arrow a: i → j."""
    X, Y = lam.source, lam.target
    pos = X.quiver._index["vpos"]
    comps = lam.components
    for a, xa, ya in zip(X.quiver.arrows, X.maps, Y.maps):
        if (ya @ comps[pos[a.source]]).matrix != (comps[pos[a.target]] @ xa).matrix:
            return False
    return True


@lru_cache(maxsize=65536)
def path_action(X: Representation, p: Path) -> ModuleMap:
    """X(p), the composite of the arrow maps along p (identity for e_i)."""
    f = ModuleMap.identity(X.at(p.start))
    for a in p.arrows:
        f = X.arrow_map(a) @ f
    return f


def incoming_sum(X: Representation, i: str) -> zc.Biproduct:
    """⊕ X(s(a)) over the arrows a into i, blocks in declaration order."""
    return zc.biproduct([X.at(a.source) for a in X.quiver.arrows_into(i)], X.N)


def outgoing_product(X: Representation, i: str) -> zc.Biproduct:
    return zc.biproduct([X.at(a.target) for a in X.quiver.arrows_out(i)], X.N)


def phi(X: Representation, i: str) -> ModuleMap:
    """φ^X_i: ⊕_{a into i} X(s(a)) → X(i) with a-th block X(a)."""
    B = incoming_sum(X, i)
    f = ModuleMap.zero(B.module, X.at(i))
    for a, p in zip(X.quiver.arrows_into(i), B.projections):
        f = f + X.arrow_map(a.id) @ p
    return f


def psi(X: Representation, i: str) -> ModuleMap:
    """ψ^X_i: X(i) → ∏_{a out of i} X(t(a)) with a-th block X(a)."""
    B = outgoing_product(X, i)
    f = ModuleMap.zero(X.at(i), B.module)
    for a, e in zip(X.quiver.arrows_out(i), B.injections):
        f = f + e @ X.arrow_map(a.id)
    return f


def kernel_rep(lam: RepMorphism) -> tuple:
    """(K, ι) with ι: K → X the vertex-wise kernel of λ: X → Y."""
    X = lam.source
    Q = X.quiver
    ks = [zc.kernel(f) for f in lam.components]
    mods = [k[0] for k in ks]
    incs = [k[1] for k in ks]
    maps = []
    for a, xa in zip(Q.arrows, X.maps):
        s, t = Q.vertex_position(a.source), Q.vertex_position(a.target)
        h = zc.factor_through_mono(xa @ incs[s], incs[t])
        if h is None:
            raise InducedMapFailure(f"no induced kernel map on arrow {a.id!r}")
        maps.append(h)
    K = Representation(Q, mods, maps, N=X.N)
    return K, RepMorphism(K, X, incs)


def cokernel_rep(lam: RepMorphism) -> tuple:
    """(C, ρ) with ρ: Y → C the vertex-wise cokernel of λ: X → Y."""
    Y = lam.target
    Q = Y.quiver
    cs = [zc.cokernel(f) for f in lam.components]
    mods = [c[0] for c in cs]
    projs = [c[1] for c in cs]
    maps = []
    for a, ya in zip(Q.arrows, Y.maps):
        s, t = Q.vertex_position(a.source), Q.vertex_position(a.target)
        h = zc.factor_through_epi(projs[t] @ ya, projs[s])
        if h is None:
            raise InducedMapFailure(f"no induced cokernel map on arrow {a.id!r}")
        maps.append(h)
    C = Representation(Q, mods, maps, N=Y.N)
    return C, RepMorphism(Y, C, projs)


def image_rep(lam: RepMorphism) -> tuple:
    """(I, ι) with ι: I → Y the vertex-wise image of λ."""
    Y = lam.target
    Q = Y.quiver
    ims = [zc.image(f) for f in lam.components]
    mods = [m[0] for m in ims]
    incs = [m[1] for m in ims]
    maps = []
    for a, ya in zip(Q.arrows, Y.maps):
        s, t = Q.vertex_position(a.source), Q.vertex_position(a.target)
        h = zc.factor_through_mono(ya @ incs[s], incs[t])
        if h is None:
            raise InducedMapFailure(f"no induced image map on arrow {a.id!r}")
        maps.append(h)
    I = Representation(Q, mods, maps, N=Y.N)
    return I, RepMorphism(I, Y, incs)


def is_exact_ses(iota: RepMorphism, pi: RepMorphism) -> bool:
    """0 → A → B → C → 0 exact at every vertex (order bookkeeping)."""
    if iota.target != pi.source:
        return False
    if not (pi @ iota).is_zero():
        return False
    for A, B, C in zip(iota.source.modules, iota.target.modules, pi.target.modules):
        if B.order != A.order * C.order:
            return False
    return iota.is_mono() and pi.is_epi()


def biproduct_rep(reps: Sequence[Representation], Q: Optional[Quiver] = None,
                  N: Optional[int] = None) -> tuple:
    """(S, injections, projections) for a finite direct sum of representations."""
    reps = list(reps)
    if reps:
        Q, N = reps[0].quiver, reps[0].N
    bps = [zc.biproduct([X.at(v) for X in reps], N) for v in Q.vertices]
    maps = []
    for a in Q.arrows:
        s, t = Q.vertex_position(a.source), Q.vertex_position(a.target)
        blocks = {(k, k): X.arrow_map(a.id) for k, X in enumerate(reps)}
        maps.append(zc.block_map(bps[s], bps[t], blocks))
    S = Representation(Q, [b.module for b in bps], maps, N=N)
    inj = [RepMorphism(X, S, [b.injections[k] for b in bps]) for k, X in enumerate(reps)]
    proj = [RepMorphism(S, X, [b.projections[k] for b in bps]) for k, X in enumerate(reps)]
    return S, inj, proj


class HomRep:
    """Hom_{Rep(Q,M)}(X, Y) as a finite module with generating morphisms.

    It is the subgroup of ⊕_i Hom(X(i), Y(i)) cut out by the commuting-square
    equations, one block of equations per arrow.
    """

    def __init__(self, X: Representation, Y: Representation):
        if X.quiver != Y.quiver or X.N != Y.N:
            raise ValueError("representations of different quivers or rings")
        Q = X.quiver
        self.source, self.target = X, Y
        self._homs = [zc.hom_module(A, B) for A, B in zip(X.modules, Y.modules)]
        offsets = [0]
        for H in self._homs:
            offsets.append(offsets[-1] + H.module.rank)
        self._offsets = offsets
        col_mod = [d for H in self._homs for d in H.module.chain]
        nvar = len(col_mod)
        rows = []
        row_mod = []
        for a, xa, ya in zip(Q.arrows, X.maps, Y.maps):
            s, t = Q.vertex_position(a.source), Q.vertex_position(a.target)
            H = zc.hom_module(X.modules[s], Y.modules[t])
            if H.module.is_zero():
                continue
            block = [[0] * nvar for _ in range(H.module.rank)]
            for k, b in enumerate(self._homs[s].basis):
                c = H.coords(ya @ b)
                for r, v in enumerate(c):
                    block[r][offsets[s] + k] += v
            for k, b in enumerate(self._homs[t].basis):
                c = H.coords(b @ xa)
                for r, v in enumerate(c):
                    block[r][offsets[t] + k] -= v
            rows.extend(block)
            row_mod.extend(H.module.chain)
        self._col_mod = col_mod
        gens = kernel_lattice_gens(IntMatrix.from_rows(rows, nvar), row_mod, col_mod)
        rel = [[col_mod[k] if r == k else 0 for r in range(nvar)] for k in range(nvar)]
        self._sq = Subquotient(nvar, rel, gens)
        self.module = FiniteModule(X.N, self._sq.orders)
        self.basis = [self._morphism(g) for g in self._sq.generators]

    def _morphism(self, vec: Sequence[int]) -> RepMorphism:
        comps = []
        for k, H in enumerate(self._homs):
            part = vec[self._offsets[k]:self._offsets[k + 1]]
            comps.append(H.element([v % d for v, d in zip(part, H.module.chain)]))
        return RepMorphism(self.source, self.target, comps)

    def coords(self, lam: RepMorphism) -> tuple:
        vec = []
        for H, f in zip(self._homs, lam.components):
            vec.extend(H.coords(f))
        return self._sq.coords(vec)

    def element(self, c: Sequence[int]) -> RepMorphism:
        n = len(self._col_mod)
        vec = [0] * n
        for ck, g in zip(c, self._sq.generators):
            if ck:
                for r in range(n):
                    vec[r] += ck * g[r]
        return self._morphism(vec)

    def elements(self, bound: int = zc.DEFAULT_ELEMENT_BOUND) -> Iterator[RepMorphism]:
        for c in zc.enumerate_elements(self.module, bound):
            yield self.element(c)

    @property
    def order(self) -> int:
        return self.module.order


@lru_cache(maxsize=4096)
def hom_rep(X: Representation, Y: Representation) -> HomRep:
    return HomRep(X, Y)


def _linear_map_between(Hsrc, Htgt, fn) -> ModuleMap:
    """The ModuleMap Hsrc.module → Htgt.module induced by a homomorphism fn."""
    cols = [Htgt.coords(fn(b)) for b in Hsrc.basis]
    return zc._map_from_columns(Hsrc.module, Htgt.module, cols)


def hom_rep_pre(lam: RepMorphism, Z: Representation) -> ModuleMap:
    """Hom(λ, Z): Hom(Y, Z) → Hom(X, Z) for λ: X → Y."""
    return _linear_map_between(hom_rep(lam.target, Z), hom_rep(lam.source, Z), lambda b: b @ lam)


def hom_rep_post(Z: Representation, lam: RepMorphism) -> ModuleMap:
    """Hom(Z, λ): Hom(Z, X) → Hom(Z, Y)."""
    return _linear_map_between(hom_rep(Z, lam.source), hom_rep(Z, lam.target), lambda b: lam @ b)


def retraction_rep(lam: RepMorphism) -> Optional[RepMorphism]:
    """r with r∘λ = 1, or None when λ is not a split mono."""
    X = lam.source
    x = zc.preimage(hom_rep_pre(lam, X), hom_rep(X, X).coords(RepMorphism.identity(X)))
    return None if x is None else hom_rep(lam.target, X).element(x)


def section_rep(lam: RepMorphism) -> Optional[RepMorphism]:
    """s with λ∘s = 1, or None when λ is not a split epi."""
    Y = lam.target
    x = zc.preimage(hom_rep_post(Y, lam), hom_rep(Y, Y).coords(RepMorphism.identity(Y)))
    return None if x is None else hom_rep(Y, lam.source).element(x)


def dualize(X: Representation) -> Representation:
    """Hom(X, ℤ/N) as a representation of the opposite quiver."""
    Qop = opposite(X.quiver)
    return Representation(Qop, [zc.dual_module(M) for M in X.modules],
                          [zc.dual_map(f) for f in X.maps], N=X.N)


def dualize_morphism(lam: RepMorphism) -> RepMorphism:
    """λ*: Y* → X* for λ: X → Y."""
    return RepMorphism(dualize(lam.target), dualize(lam.source),
                       [zc.dual_map(f) for f in lam.components])
