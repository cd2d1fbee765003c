"""Finite modules over ℤ/N in invariant-factor form.

A module is ⊕ ℤ/d_k for a divisibility chain d_1 | d_2 | ... of divisors of
N (units dropped), so two modules are isomorphic exactly when their chains
agree. A map is a matrix whose (j, k) entry lives in ℤ/e_j, e_j being the
j-th invariant of the target.

ℤ/N is self-injective, hence free = projective = injective here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod
from typing import Iterator, Optional, Sequence

from .errors import BoundExceeded
from .exactlin import (
    IntMatrix,
    Subquotient,
    _matmul_flat,
    kernel_lattice_gens,
    kernel_presentation,
    solve_mixed,
)

DEFAULT_ELEMENT_BOUND = 4096


@dataclass(frozen=True)
class Ring:
    N: int

    def __post_init__(self):
        if self.N < 2:
            raise ValueError(f"modulus must be >= 2, got {self.N}")


class FiniteModule:
    """⊕ ℤ/d_k over ℤ/N for the invariant-factor chain d_1 | d_2 | ... (units dropped)."""

    __slots__ = ("N", "chain", "rank", "_hash")

    def __init__(self, N: int, chain=()):
        if N < 2:
            raise ValueError(f"modulus must be >= 2, got {N}")
        chain = tuple(int(d) for d in chain)
        prev = 1
        for d in chain:
            if d <= 1 or N % d or d % prev:
                raise ValueError(f"{chain} is not an invariant-factor chain for N={N}")
            prev = d
        self.N = N
        self.chain = chain
        self.rank = len(chain)
        self._hash = hash((N, chain))

    def __eq__(self, other):
        return self is other or (isinstance(other, FiniteModule) and self.N == other.N
                                 and self.chain == other.chain)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FiniteModule(N={self.N}, chain={self.chain})"

    @classmethod
    def zero(cls, N: int) -> "FiniteModule":
        return cls(N, ())

    @classmethod
    def cyclic(cls, N: int, d: int) -> "FiniteModule":
        return cls(N, () if d == 1 else (d,))

    @classmethod
    def free(cls, N: int, rank: int = 1) -> "FiniteModule":
        return cls(N, (N,) * rank)

    @property
    def ring(self) -> Ring:
        return Ring(self.N)

    @property
    def order(self) -> int:
        return prod(self.chain)

    def is_zero(self) -> bool:
        return not self.chain

    def __str__(self) -> str:
        if not self.chain:
            return "0"
        return " ⊕ ".join(f"Z/{d}" for d in self.chain)


def _check_ring(*mods: FiniteModule) -> None:
    Ns = {m.N for m in mods}
    if len(Ns) > 1:
        raise ValueError(f"ring mismatch: moduli {sorted(Ns)}")


class ModuleMap:
    """A homomorphism between finite ℤ/N-modules.

    Entries are reduced on construction, and well-definedness
    ((e_j / gcd(e_j, d_k)) divides a_jk) is enforced.
    """

    __slots__ = ("source", "target", "matrix", "_hash")

    def __init__(self, source: FiniteModule, target: FiniteModule, matrix, *, check: bool = True):
        if not isinstance(matrix, IntMatrix):
            matrix = IntMatrix.from_rows(matrix, source.rank)
        m, n = target.rank, source.rank
        if matrix.rows != m or matrix.cols != n:
            raise ValueError(f"matrix shape {matrix.rows}x{matrix.cols} does not match {m}x{n}")
        e = target.chain
        ent = matrix.entries
        red = tuple(ent[j * n + k] % e[j] for j in range(m) for k in range(n))
        if check:
            d = source.chain
            for j in range(m):
                for k in range(n):
                    a = red[j * n + k]
                    if a and a % (e[j] // gcd(e[j], d[k])):
                        raise ValueError(
                            f"entry ({j},{k})={a} not well defined from Z/{d[k]} to Z/{e[j]}")
        self.source = source
        self.target = target
        self.matrix = IntMatrix(m, n, red) if red != ent else matrix
        self._hash = None

    @classmethod
    def _reduce(cls, source: FiniteModule, target: FiniteModule, entries) -> "ModuleMap":
        """Trusted constructor: entries are well defined, only reduction is applied."""
        n = source.rank
        e = target.chain
        if n:
            red = tuple(x % e[pos // n] for pos, x in enumerate(entries))
        else:
            red = ()
        f = object.__new__(cls)
        f.source, f.target = source, target
        f.matrix = IntMatrix._new(len(e), n, red)
        f._hash = None
        return f

    @classmethod
    def identity(cls, M: FiniteModule) -> "ModuleMap":
        return cls(M, M, IntMatrix.identity(M.rank), check=False)

    @classmethod
    def zero(cls, M: FiniteModule, M2: FiniteModule) -> "ModuleMap":
        return cls(M, M2, IntMatrix.zeros(M2.rank, M.rank), check=False)

    def __eq__(self, other):
        return (isinstance(other, ModuleMap) and self.matrix == other.matrix
                and self.source == other.source and self.target == other.target)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.source, self.target, self.matrix))
        return self._hash

    def __repr__(self):
        return f"ModuleMap({self.source} -> {self.target}, {self.matrix.to_rows()})"

    def __call__(self, x: Sequence[int]) -> tuple:
        n = self.source.rank
        ent = self.matrix.entries
        return tuple(sum(ent[j * n + k] * x[k] for k in range(n)) % e
                     for j, e in enumerate(self.target.chain))

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        """Composition: ``g @ f`` is g∘f."""
        if other.target != self.source:
            raise ValueError("maps are not composable")
        a, b = self.matrix, other.matrix
        return ModuleMap._reduce(other.source, self.target,
                                 _matmul_flat(a.entries, b.entries, a.rows, a.cols, b.cols))

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        if other.source != self.source or other.target != self.target:
            raise ValueError("cannot add maps with different endpoints")
        return ModuleMap._reduce(self.source, self.target,
                                 [x + y for x, y in zip(self.matrix.entries, other.matrix.entries)])

    def __neg__(self) -> "ModuleMap":
        return self.scale(-1)

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return self + (-other)

    def scale(self, c: int) -> "ModuleMap":
        return ModuleMap._reduce(self.source, self.target, [c * x for x in self.matrix.entries])

    def is_zero(self) -> bool:
        return not any(self.matrix.entries)

    def is_mono(self) -> bool:
        return kernel_order(self) == 1

    def is_epi(self) -> bool:
        return image_order(self) == self.target.order

    def is_iso(self) -> bool:
        return self.source.order == self.target.order and self.is_mono()


def _is_chain(moduli: Sequence[int]) -> bool:
    prev = 1
    for d in moduli:
        if d % prev:
            return False
        prev = d
    return True


class _Canonical:
    """Isomorphism between ⊕ ℤ/moduli (any order) and its invariant-factor form."""

    def __init__(self, moduli: Sequence[int]):
        moduli = tuple(moduli)
        self.moduli = moduli
        n = len(moduli)
        keep = [k for k, d in enumerate(moduli) if d != 1]
        if _is_chain([moduli[k] for k in keep]):
            self.orders = tuple(moduli[k] for k in keep)
            self.to_rows = [[1 if c == k else 0 for c in range(n)] for k in keep]
            self.gens = [[1 if r == k else 0 for r in range(n)] for k in keep]
            self._sq = None
        else:
            rel = [[moduli[k] if r == k else 0 for r in range(n)] for k in range(n)]
            sq = Subquotient(n, rel)
            self.orders = sq.orders
            self.to_rows = sq.coordinate_rows()
            self.gens = sq.generators
            self._sq = sq

    def coords(self, x: Sequence[int]) -> tuple:
        return tuple(sum(r[c] * x[c] for c in range(len(x))) % o
                     for r, o in zip(self.to_rows, self.orders))


@lru_cache(maxsize=4096)
def _canonical(moduli: tuple) -> _Canonical:
    return _Canonical(moduli)


class HomModule:
    """Hom(M, M2) as a finite module together with generating maps.

    ``basis[k]`` generates the k-th cyclic summand of ``module``; ``coords``
    inverts ``element``.
    """

    def __init__(self, M: FiniteModule, M2: FiniteModule):
        _check_ring(M, M2)
        self.source = M
        self.target = M2
        d, e = M.chain, M2.chain
        # elementary generator for (k, j): gen_k of M goes to (e_j/g)·gen_j of M2
        self._pairs = [(k, j, gcd(d[k], e[j])) for k in range(len(d)) for j in range(len(e))]
        self._can = _canonical(tuple(g for _, _, g in self._pairs))
        self.module = FiniteModule(M.N, self._can.orders)
        self.basis = [self._from_elementary(g) for g in self._can.gens]

    def _from_elementary(self, t: Sequence[int]) -> ModuleMap:
        M, M2 = self.source, self.target
        n = M.rank
        ent = [0] * (M2.rank * n)
        e = M2.chain
        for (k, j, g), c in zip(self._pairs, t):
            if c:
                ent[j * n + k] += c * (e[j] // g)
        return ModuleMap(M, M2, IntMatrix(M2.rank, n, tuple(ent)), check=False)

    def _elementary(self, f: ModuleMap) -> list:
        n = self.source.rank
        ent = f.matrix.entries
        e = self.target.chain
        out = []
        for k, j, g in self._pairs:
            step = e[j] // g
            a = ent[j * n + k]
            if a % step:
                raise ValueError("map is not well defined")
            out.append((a // step) % g)
        return out

    def coords(self, f: ModuleMap) -> tuple:
        if f.source != self.source or f.target != self.target:
            raise ValueError("map does not belong to this Hom module")
        return self._can.coords(self._elementary(f))

    def element(self, c: Sequence[int]) -> ModuleMap:
        t = [0] * len(self._pairs)
        for ck, gen in zip(c, self._can.gens):
            if ck:
                for r, v in enumerate(gen):
                    t[r] += ck * v
        return self._from_elementary(t)

    def elements(self, bound: int = DEFAULT_ELEMENT_BOUND) -> Iterator[ModuleMap]:
        for c in enumerate_elements(self.module, bound):
            yield self.element(c)

    @property
    def order(self) -> int:
        return self.module.order


@lru_cache(maxsize=8192)
def hom_module(M: FiniteModule, M2: FiniteModule) -> HomModule:
    """Hom(M, M2) ≅ ⊕_{i,j} ℤ/gcd(d_i, e_j), canonicalized."""
    return HomModule(M, M2)


def _map_from_columns(source: FiniteModule, target: FiniteModule, cols: Sequence[Sequence[int]]) -> ModuleMap:
    m = target.rank
    rows = [[cols[k][j] for k in range(len(cols))] for j in range(m)]
    return ModuleMap(source, target, IntMatrix.from_rows(rows, len(cols)))


def kernel(f: ModuleMap) -> tuple:
    """(K, ι) with ι: K ↪ source the kernel of f."""
    sq = kernel_presentation(f.matrix, f.target.chain, f.source.chain)
    K = FiniteModule(f.source.N, sq.orders)
    d = f.source.chain
    cols = [[g[r] % d[r] for r in range(len(d))] for g in sq.generators]
    return K, _map_from_columns(K, f.source, cols)


def kernel_order(f: ModuleMap) -> int:
    return prod(kernel_presentation(f.matrix, f.target.chain, f.source.chain).orders)


def image_order(f: ModuleMap) -> int:
    return f.source.order // kernel_order(f)


def _cokernel_presentation(f: ModuleMap) -> Subquotient:
    e = f.target.chain
    m = len(e)
    rel = [[e[k] if r == k else 0 for r in range(m)] for k in range(m)]
    rel += [f.matrix.column(c) for c in range(f.matrix.cols)]
    return Subquotient(m, rel)


def cokernel(f: ModuleMap) -> tuple:
    """(C, ρ) with ρ: target ↠ C the cokernel of f."""
    sq = _cokernel_presentation(f)
    C = FiniteModule(f.target.N, sq.orders)
    return C, ModuleMap(f.target, C, IntMatrix.from_rows(sq.coordinate_rows(), f.target.rank))


def image(f: ModuleMap) -> tuple:
    """(I, ι, f') with ι: I ↪ target and f = ι∘f'."""
    e = f.target.chain
    m = len(e)
    rel = [[e[k] if r == k else 0 for r in range(m)] for k in range(m)]
    imcols = [f.matrix.column(c) for c in range(f.matrix.cols)]
    sq = Subquotient(m, rel, imcols + rel)
    I = FiniteModule(f.target.N, sq.orders)
    inc = _map_from_columns(I, f.target, [[g[r] % e[r] for r in range(m)] for g in sq.generators])
    corestr = _map_from_columns(f.source, I, [sq.coords(c) for c in imcols])
    return I, inc, corestr


@dataclass(frozen=True)
class Biproduct:
    module: FiniteModule
    injections: tuple
    projections: tuple


def biproduct(mods: Sequence[FiniteModule], N: Optional[int] = None) -> Biproduct:
    """Finite direct sum with injections ε_j and projections π_j (π_i∘ε_j = δ_ij).

    The empty biproduct is the zero module; pass ``N`` in that case.
    """
    mods = tuple(mods)
    return _biproduct(mods, N if N is not None else (mods[0].N if mods else None))


@lru_cache(maxsize=4096)
def _biproduct(mods: tuple, N: Optional[int]) -> Biproduct:
    if N is None:
        raise ValueError("biproduct of no modules needs the ring modulus")
    _check_ring(*mods, FiniteModule.zero(N))
    moduli = tuple(d for M in mods for d in M.chain)
    can = _canonical(moduli)
    S = FiniteModule(N, can.orders)
    inj, proj = [], []
    offset = 0
    total = len(moduli)
    for M in mods:
        r = M.rank
        cols = [[row[offset + c] for row in can.to_rows] for c in range(r)]
        inj.append(_map_from_columns(M, S, cols))
        rows = [[can.gens[k][offset + c] for k in range(S.rank)] for c in range(r)]
        proj.append(ModuleMap(S, M, IntMatrix.from_rows(rows, S.rank)))
        offset += r
    assert offset == total
    return Biproduct(S, tuple(inj), tuple(proj))


def block_map(src: Biproduct, tgt: Biproduct, blocks) -> ModuleMap:
    """Assemble Σ ε_j ∘ blocks[j][k] ∘ π_k; ``blocks`` maps (j, k) to a map or None."""
    total = ModuleMap.zero(src.module, tgt.module)
    for (j, k), b in blocks.items():
        if b is not None:
            total = total + tgt.injections[j] @ b @ src.projections[k]
    return total


def free_cover(M: FiniteModule) -> ModuleMap:
    """(ℤ/N)^k ↠ M sending the i-th basis vector to the i-th cyclic generator."""
    F = FiniteModule.free(M.N, M.rank)
    return ModuleMap(F, M, IntMatrix.identity(M.rank))


def injective_embed(M: FiniteModule) -> ModuleMap:
    """M ↪ (ℤ/N)^k sending the i-th generator to (N/d_i)·e_i."""
    F = FiniteModule.free(M.N, M.rank)
    k = M.rank
    ent = tuple((M.N // M.chain[r]) if r == c else 0 for r in range(k) for c in range(k))
    return ModuleMap(M, F, IntMatrix(k, k, ent))


def is_projective(M: FiniteModule) -> bool:
    return all(d == M.N for d in M.chain)


def is_injective(M: FiniteModule) -> bool:
    return all(d == M.N for d in M.chain)


def enumerate_elements(M: FiniteModule, bound: int = DEFAULT_ELEMENT_BOUND) -> Iterator[tuple]:
    """All elements of M as coordinate tuples, lexicographically."""
    if M.order > bound:
        raise BoundExceeded(f"|M| = {M.order} exceeds bound {bound}")
    return itertools.product(*(range(d) for d in M.chain))


def preimage(f: ModuleMap, y: Sequence[int]) -> Optional[tuple]:
    """Some x with f(x) = y, or None."""
    x = solve_mixed(f.matrix, list(y), f.target.chain, f.source.chain)
    return None if x is None else tuple(x)


def hom_pre(f: ModuleMap, Y: FiniteModule) -> ModuleMap:
    """Hom(f, Y): Hom(B, Y) → Hom(A, Y), λ ↦ λ∘f, for f: A → B."""
    HB = hom_module(f.target, Y)
    HA = hom_module(f.source, Y)
    cols = [HA.coords(b @ f) for b in HB.basis]
    return _map_from_columns(HB.module, HA.module, cols)


def hom_post(X: FiniteModule, g: ModuleMap) -> ModuleMap:
    """Hom(X, g): Hom(X, B) → Hom(X, C), λ ↦ g∘λ, for g: B → C."""
    HB = hom_module(X, g.source)
    HC = hom_module(X, g.target)
    cols = [HC.coords(g @ b) for b in HB.basis]
    return _map_from_columns(HB.module, HC.module, cols)


def factor_through_mono(g: ModuleMap, mono: ModuleMap) -> Optional[ModuleMap]:
    """h with mono∘h = g, or None when g does not land in the image."""
    cols = []
    for k in range(g.source.rank):
        gen = [1 if r == k else 0 for r in range(g.source.rank)]
        x = preimage(mono, g(gen))
        if x is None:
            return None
        cols.append(x)
    return _map_from_columns(g.source, mono.source, cols)


def factor_through_epi(g: ModuleMap, epi: ModuleMap) -> Optional[ModuleMap]:
    """h with h∘epi = g, or None when g does not kill ker(epi)."""
    H = hom_module(epi.target, g.target)
    x = preimage(hom_pre(epi, g.target), hom_module(epi.source, g.target).coords(g))
    return None if x is None else H.element(x)


def retraction(f: ModuleMap) -> Optional[ModuleMap]:
    """r with r∘f = 1, or None when f is not a split mono."""
    H = hom_module(f.target, f.source)
    x = preimage(hom_pre(f, f.source),
                 hom_module(f.source, f.source).coords(ModuleMap.identity(f.source)))
    return None if x is None else H.element(x)


def section(f: ModuleMap) -> Optional[ModuleMap]:
    """s with f∘s = 1, or None when f is not a split epi."""
    H = hom_module(f.target, f.source)
    x = preimage(hom_post(f.target, f),
                 hom_module(f.target, f.target).coords(ModuleMap.identity(f.target)))
    return None if x is None else H.element(x)


def is_split_mono(f: ModuleMap) -> bool:
    return retraction(f) is not None


def is_split_epi(f: ModuleMap) -> bool:
    return section(f) is not None


def homology(f: ModuleMap, g: ModuleMap) -> FiniteModule:
    """ker g / im f for A --f--> B --g--> C with g∘f = 0."""
    if f.target != g.source:
        raise ValueError("maps are not composable")
    B = f.target
    n = B.rank
    gens = kernel_lattice_gens(g.matrix, g.target.chain, B.chain)
    rel = [[B.chain[k] if r == k else 0 for r in range(n)] for k in range(n)]
    rel += [f.matrix.column(c) for c in range(f.matrix.cols)]
    sq = Subquotient(n, rel, gens)
    return FiniteModule(B.N, sq.orders)


@dataclass(frozen=True)
class FreeResolution:
    """P_0 ↠ M with differentials d[k]: P_{k+1} → P_k."""

    cover: ModuleMap
    differentials: tuple

    @property
    def terms(self) -> list:
        return [self.cover.source] + [d.source for d in self.differentials]


def free_resolution(M: FiniteModule, length: int) -> FreeResolution:
    """Minimal free resolution with ``length`` differentials."""
    cover = free_cover(M)
    diffs = []
    prev = cover
    for _ in range(length):
        _, inc = kernel(prev)
        d = inc @ free_cover(inc.source)
        diffs.append(d)
        prev = d
    return FreeResolution(cover, tuple(diffs))


def ext_from_resolution(n: int, res: FreeResolution, M2: FiniteModule) -> FiniteModule:
    terms = res.terms
    out = hom_pre(res.differentials[n], M2)
    if n == 0:
        incoming = ModuleMap.zero(FiniteModule.zero(M2.N), out.source)
    else:
        incoming = hom_pre(res.differentials[n - 1], M2)
    assert out.source == hom_module(terms[n], M2).module
    return homology(incoming, out)


@lru_cache(maxsize=4096)
def ext_module(n: int, M: FiniteModule, M2: FiniteModule) -> FiniteModule:
    """Ext^n(M, M2) from the minimal free resolution of M."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    _check_ring(M, M2)
    if n == 0:
        return hom_module(M, M2).module
    return ext_from_resolution(n, free_resolution(M, n + 1), M2)


def dual_module(M: FiniteModule) -> FiniteModule:
    """Hom(M, ℤ/N); same chain, dual generator k sends gen_k to N/d_k."""
    return M


def dual_map(f: ModuleMap) -> ModuleMap:
    """Hom(f, ℤ/N): Hom(B, ℤ/N) → Hom(A, ℤ/N) in the dual generators."""
    d, e = f.source.chain, f.target.chain
    n = len(d)
    ent = f.matrix.entries
    rows = [[ent[j * n + k] * d[k] // e[j] for j in range(len(e))] for k in range(n)]
    return ModuleMap(f.target, f.source, IntMatrix.from_rows(rows, len(e)))
