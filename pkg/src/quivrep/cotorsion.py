"""Class operators on Rep(Q, ℤ/N-mod) and extensional cotorsion-pair checks.

Classes of modules are given by ClassSpec. Statements that quantify over
all representations are checked inside a finite Universe, so "equal" in a
report always means "equal within the universe".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import zmodcat as zc
from .errors import HypothesisFailed, MalformedFiltration, ParseError
from .extcalc import ext_rep
from .formats import module_from_json, module_to_json, rep_from_json, rep_to_json
from .functors import (
    c_functor,
    f_functor,
    g_functor,
    injective_embed_rep,
    k_functor,
    projective_cover_rep,
    stalk,
)
from .quiver import (
    Quiver,
    is_left_rooted,
    is_right_rooted,
    left_root_sequence,
    right_root_sequence,
)
from .repcat import (
    RepMorphism,
    Representation,
    biproduct_rep,
    cokernel_rep,
    hom_rep,
    kernel_rep,
    phi,
    psi,
    retraction_rep,
    section_rep,
)
from .universe import Universe, module_pool
from .zmodcat import FiniteModule, ModuleMap

KINDS = ("All", "Zero", "Proj", "Inj", "FiniteList", "PerpOfList")


@dataclass(frozen=True)
class ClassSpec:
    """A class of finite ℤ/N-modules with decidable membership.

    FiniteList is closed under isomorphism. PerpOfList with side "left" is
    {M : Ext^degree(M, C) = 0 for C in objects}; side "right" is
    {M : Ext^degree(C, M) = 0}.
    """

    kind: str
    objects: tuple = ()
    side: str = "left"
    degree: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown class kind {self.kind!r}")
        if self.side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        object.__setattr__(self, "objects", tuple(self.objects))

    def contains(self, M: FiniteModule) -> bool:
        k = self.kind
        if k == "All":
            return True
        if k == "Zero":
            return M.is_zero()
        if k in ("Proj", "Inj"):
            # ℤ/N is self-injective: both classes are the free modules
            return all(d == M.N for d in M.chain)
        if k == "FiniteList":
            return any(M == C for C in self.objects)
        if self.side == "left":
            return all(zc.ext_module(self.degree, M, C).is_zero() for C in self.objects)
        return all(zc.ext_module(self.degree, C, M).is_zero() for C in self.objects)

    __contains__ = contains

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.kind in ("FiniteList", "PerpOfList"):
            out["objects"] = [list(M.chain) for M in self.objects]
        if self.kind == "PerpOfList":
            out["side"] = self.side
            out["degree"] = self.degree
        return out

    @classmethod
    def from_json(cls, obj, N: int) -> "ClassSpec":
        try:
            kind = obj["kind"]
            objs = tuple(module_from_json(o, N) for o in obj.get("objects", []))
            return cls(kind, objs, obj.get("side", "left"), int(obj.get("degree", 1)))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad class spec: {exc}") from exc

    def __str__(self):
        if self.kind == "FiniteList":
            return "{" + ", ".join(str(M) for M in self.objects) + "}"
        if self.kind == "PerpOfList":
            objs = ", ".join(str(M) for M in self.objects)
            return f"perp{self.degree}-{self.side}({objs})"
        return self.kind


ALL = ClassSpec("All")
ZERO = ClassSpec("Zero")
PROJ = ClassSpec("Proj")
INJ = ClassSpec("Inj")


# --- membership ---------------------------------------------------------

def member_phi(X: Representation, C: ClassSpec) -> bool:
    """Every φ^X_i is monic with cokernel in C."""
    for i in X.quiver.vertices:
        f = phi(X, i)
        if not f.is_mono():
            return False
        if not C.contains(zc.cokernel(f)[0]):
            return False
    return True


def member_psi(X: Representation, C: ClassSpec) -> bool:
    """Every ψ^X_i is epic with kernel in C."""
    for i in X.quiver.vertices:
        f = psi(X, i)
        if not f.is_epi():
            return False
        if not C.contains(zc.kernel(f)[0]):
            return False
    return True


def member_repclass(X: Representation, C: ClassSpec) -> bool:
    return all(C.contains(M) for M in X.modules)


def lift_classes(objects: Sequence[FiniteModule], which: str, Q: Quiver) -> list:
    """f_*, g_* or s_* of a finite list of modules (duplicates removed)."""
    build = {"f": f_functor, "g": g_functor, "s": stalk}.get(which)
    if build is None:
        raise ValueError("which must be 'f', 'g' or 's'")
    out = []
    for M in objects:
        for i in Q.vertices:
            X = build(M, i, Q)
            if X not in out:
                out.append(X)
    return out


def perp_in_universe(S: Sequence[Representation], U, side: str, n: int = 1) -> list:
    """Members X of U with Ext^n(s, X) = 0 (right) or Ext^n(X, s) = 0 (left) for s in S."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    out = []
    for X in U:
        if side == "right":
            ok = all(ext_rep(n, s, X).is_zero() for s in S)
        else:
            ok = all(ext_rep(n, X, s).is_zero() for s in S)
        if ok:
            out.append(X)
    return out


# --- module-level prechecks -----------------------------------------------

def _pool_extensions(A: FiniteModule, C: FiniteModule) -> list:
    """Middle terms B of short exact sequences 0 → A → B → C → 0 (up to iso)."""
    N = A.N
    rank = A.rank + C.rank
    out = []
    for B in module_pool(N, rank):
        if B.order != A.order * C.order:
            continue
        H = zc.hom_module(A, B)
        for f in H.elements(bound=max(H.order, 1)):
            if f.is_mono() and zc.cokernel(f)[0] == C:
                out.append(B)
                break
    return out


def closed_under_extensions(C: ClassSpec, pool: Sequence[FiniteModule]) -> Optional[tuple]:
    """A counterexample (A, C', B) with A, C' in C but the extension B not, else None."""
    inside = [M for M in pool if C.contains(M)]
    for A, Cq in itertools.product(inside, repeat=2):
        for B in _pool_extensions(A, Cq):
            if not C.contains(B):
                return (A, Cq, B)
    return None


def closed_under_sums(C: ClassSpec, pool: Sequence[FiniteModule]) -> Optional[tuple]:
    inside = [M for M in pool if C.contains(M)]
    for A, B in itertools.product(inside, repeat=2):
        if not C.contains(zc.biproduct([A, B]).module):
            return (A, B)
    return None


def is_cotorsion_pair_on_pool(A: ClassSpec, B: ClassSpec, pool: Sequence[FiniteModule]) -> dict:
    """A ∩ pool = ⊥(B ∩ pool) and B ∩ pool = (A ∩ pool)^⊥, with Ext^1."""
    a_in = [M for M in pool if A.contains(M)]
    b_in = [M for M in pool if B.contains(M)]
    left = [M for M in pool if all(zc.ext_module(1, M, Y).is_zero() for Y in b_in)]
    right = [M for M in pool if all(zc.ext_module(1, X, M).is_zero() for X in a_in)]
    return {"left_ok": left == a_in, "right_ok": right == b_in,
            "pass": left == a_in and right == b_in}


# --- projective / injective characterisations ------------------------------

def cover_splits(X: Representation) -> bool:
    """X is projective iff its projective cover P ↠ X has a section."""
    return section_rep(projective_cover_rep(X).map) is not None


def embedding_splits(X: Representation) -> bool:
    """X is injective iff X ↪ I has a retraction."""
    return retraction_rep(injective_embed_rep(X).map) is not None


def split_phi(X: Representation) -> bool:
    """Every φ^X_i is a split mono and every X(i) is free."""
    return all(zc.is_split_mono(phi(X, i)) for i in X.quiver.vertices) and \
        member_repclass(X, PROJ)


def split_psi(X: Representation) -> bool:
    return all(zc.is_split_epi(psi(X, i)) for i in X.quiver.vertices) and \
        member_repclass(X, INJ)


# --- Theorems A and B -------------------------------------------------------

def _universe_inputs(U: Universe) -> dict:
    return U.describe() if isinstance(U, Universe) else {"size": len(U)}


def _ext1_zero(X, Y, method="projective") -> bool:
    return ext_rep(1, X, Y, method=method).is_zero()


def _precheck_pair(U: Universe, A: ClassSpec, B: ClassSpec) -> dict:
    pool = U.modules
    res = is_cotorsion_pair_on_pool(A, B, pool)
    if not res["pass"]:
        raise HypothesisFailed(f"({A}, {B}) is not a cotorsion pair on the module pool")
    return res


def _witness_order(candidates: list, preferred: list) -> list:
    pref = [c for c in preferred if c in set(candidates)]
    seen = set(pref)
    return pref + [c for c in candidates if c not in seen]


def _pair_check(name, U, left, right, left_extra, right_extra, left_first, right_first,
                left_of, right_of, A, B):
    """Orthogonality of left × right and maximality of both sides within U.

    ``left_extra``/``right_extra`` are class members lying outside U (lifted
    generators). They join the witness pools, because a truncated universe
    may not contain any witness for a non-member. Maximality using U alone is
    still reported under the ``strict_`` keys.
    """
    members = list(U)
    left_set, right_set = set(left), set(right)
    left_all = left + [X for X in left_extra if X not in left_set]
    right_all = right + [Y for Y in right_extra if Y not in right_set]
    ortho_fail = []
    for X in left_all:
        for Y in right_all:
            if not _ext1_zero(X, Y, "projective"):
                ortho_fail.append((X, Y))
    # anything outside ``left`` must see a nonzero Ext^1 into some member of ``right``
    max_left_fail, strict_left_fail = [], []
    order_r = _witness_order(right_all, right_first)
    for X in members:
        if X in left_set:
            continue
        hit = next((Y for Y in order_r if not _ext1_zero(X, Y, "injective")), None)
        if hit is None:
            max_left_fail.append(X)
        if hit is None or hit not in right_set:
            if all(_ext1_zero(X, Y, "injective") for Y in right):
                strict_left_fail.append(X)
    max_right_fail, strict_right_fail = [], []
    order_l = _witness_order(left_all, left_first)
    for Y in members:
        if Y in right_set:
            continue
        hit = next((X for X in order_l if not _ext1_zero(X, Y, "injective")), None)
        if hit is None:
            max_right_fail.append(Y)
        if hit is None or hit not in left_set:
            if all(_ext1_zero(X, Y, "injective") for X in left):
                strict_right_fail.append(Y)
    ok = not ortho_fail and not max_left_fail and not max_right_fail
    return {
        "check": name,
        "inputs": {"universe": _universe_inputs(U), "A": A.to_json(), "B": B.to_json()},
        "left_class": left_of,
        "right_class": right_of,
        "left_count": len(left),
        "right_count": len(right),
        "outside_witnesses": [len(left_all) - len(left), len(right_all) - len(right)],
        "orthogonality_failures": [[rep_to_json(X), rep_to_json(Y)] for X, Y in ortho_fail],
        "left_maximality_failures": [rep_to_json(X) for X in max_left_fail],
        "right_maximality_failures": [rep_to_json(Y) for Y in max_right_fail],
        "strict_left_maximality_failures": len(strict_left_fail),
        "strict_right_maximality_failures": len(strict_right_fail),
        "truncated": getattr(U, "truncated", False),
        "pass": ok,
    }


def _lifted_members(objects, which, Q, member, spec) -> list:
    """Lifts of class objects, keeping only those that really lie in the class."""
    return [X for X in lift_classes(objects, which, Q) if member(X, spec)]


def check_theorem_A(U: Universe, A: ClassSpec, B: ClassSpec) -> dict:
    """(Φ(A), Rep(Q, B)) is a cotorsion pair within U."""
    Q = U.quiver
    if not is_left_rooted(Q):
        raise HypothesisFailed("quiver is not left rooted")
    _precheck_pair(U, A, B)
    members = list(U)
    left = [X for X in members if member_phi(X, A)]
    right = [Y for Y in members if member_repclass(Y, B)]
    b_pool = [M for M in U.modules if B.contains(M)]
    a_pool = [M for M in U.modules if A.contains(M)]
    f_lift = _lifted_members(a_pool, "f", Q, member_phi, A)
    s_lift = _lifted_members(b_pool, "s", Q, member_repclass, B)
    return _pair_check("theorem-A", U, left, right, f_lift, s_lift, f_lift, s_lift,
                       "Phi(A)", "Rep(Q,B)", A, B)


def check_theorem_B(U: Universe, A: ClassSpec, B: ClassSpec) -> dict:
    """(Rep(Q, A), Ψ(B)) is a cotorsion pair within U."""
    Q = U.quiver
    if not is_right_rooted(Q):
        raise HypothesisFailed("quiver is not right rooted")
    _precheck_pair(U, A, B)
    members = list(U)
    left = [X for X in members if member_repclass(X, A)]
    right = [Y for Y in members if member_psi(Y, B)]
    b_pool = [M for M in U.modules if B.contains(M)]
    a_pool = [M for M in U.modules if A.contains(M)]
    s_lift = _lifted_members(a_pool, "s", Q, member_repclass, A)
    g_lift = _lifted_members(b_pool, "g", Q, member_psi, B)
    return _pair_check("theorem-B", U, left, right, s_lift, g_lift, s_lift, g_lift,
                       "Rep(Q,A)", "Psi(B)", A, B)


def check_prop_values(U: Universe, C: ClassSpec, side: str = "phi") -> dict:
    """Members of Φ(C) (or Ψ(C)) in U take values in C.

    Requires C closed under extensions and finite sums on the module pool,
    and the matching rootedness.
    """
    Q = U.quiver
    if side == "phi":
        if not is_left_rooted(Q):
            raise HypothesisFailed("quiver is not left rooted")
        member = member_phi
    elif side == "psi":
        if not is_right_rooted(Q):
            raise HypothesisFailed("quiver is not right rooted")
        member = member_psi
    else:
        raise ValueError("side must be 'phi' or 'psi'")
    pool = U.modules
    bad = closed_under_extensions(C, pool)
    if bad is not None:
        raise HypothesisFailed(f"{C} is not closed under extensions: {[str(m) for m in bad]}")
    bad = closed_under_sums(C, pool)
    if bad is not None:
        raise HypothesisFailed(f"{C} is not closed under sums: {[str(m) for m in bad]}")
    found = [X for X in U if member(X, C)]
    failures = [X for X in found if not member_repclass(X, C)]
    return {
        "check": f"prop-values-{side}",
        "inputs": {"universe": _universe_inputs(U), "C": C.to_json()},
        "members": len(found),
        "failures": [rep_to_json(X) for X in failures],
        "pass": not failures,
    }


# --- hereditary pairs -------------------------------------------------------

def _module_sequences(pool):
    """(kernel, middle, quotient) for every epi between pool modules."""
    for B, Cq in itertools.product(pool, repeat=2):
        H = zc.hom_module(B, Cq)
        for p in H.elements(bound=max(H.order, 1)):
            if p.is_epi():
                yield zc.kernel(p)[0], B, Cq


def _module_cosequences(pool):
    """(sub, middle, cokernel) for every mono between pool modules."""
    for A, B in itertools.product(pool, repeat=2):
        H = zc.hom_module(A, B)
        for f in H.elements(bound=max(H.order, 1)):
            if f.is_mono():
                yield A, B, zc.cokernel(f)[0]


def _rep_sequences(members, epi: bool):
    """Short exact sequences with two consecutive terms drawn from ``members``.

    With ``epi`` the middle and right terms are members and the left term is
    the kernel; otherwise the left and middle are members and the right term
    is the cokernel.
    """
    for S, T in itertools.product(members, repeat=2):
        H = hom_rep(S, T)
        for lam in H.elements(bound=max(H.order, 1)):
            if epi and lam.is_epi():
                yield kernel_rep(lam)[0], S, T
            elif not epi and lam.is_mono():
                yield S, T, cokernel_rep(lam)[0]


def _resolving_failures(members, contains, projective) -> list:
    fails = []
    for X in members:
        if projective(X) and not contains(X):
            fails.append(("projective", X))
    for K, X, C in _rep_sequences(members, epi=True):
        kin, xin, cin = contains(K), contains(X), contains(C)
        if kin and cin and not xin:
            fails.append(("extension", X))
        if xin and cin and not kin:
            fails.append(("kernel", K))
    return fails


def _coresolving_failures(members, contains, injective) -> list:
    fails = []
    for X in members:
        if injective(X) and not contains(X):
            fails.append(("injective", X))
    for K, X, C in _rep_sequences(members, epi=False):
        kin, xin, cin = contains(K), contains(X), contains(C)
        if kin and cin and not xin:
            fails.append(("extension", X))
        if kin and xin and not cin:
            fails.append(("cokernel", C))
    return fails


def check_hereditary(U: Universe, A: ClassSpec, B: ClassSpec, theorem: str = "A") -> dict:
    """The induced pair of Theorem A (or B) is hereditary on U.

    The base pair must be hereditary on the pool: A contains the free modules
    and is closed under extensions and kernels of epis; B dually.
    """
    pool = U.modules
    for K, X, C in _module_sequences(pool):
        if A.contains(X) and A.contains(C) and not A.contains(K):
            raise HypothesisFailed(f"{A} is not closed under kernels of epis")
        if A.contains(K) and A.contains(C) and not A.contains(X):
            raise HypothesisFailed(f"{A} is not closed under extensions")
    for K, X, C in _module_cosequences(pool):
        if B.contains(K) and B.contains(X) and not B.contains(C):
            raise HypothesisFailed(f"{B} is not closed under cokernels of monos")
        if B.contains(K) and B.contains(C) and not B.contains(X):
            raise HypothesisFailed(f"{B} is not closed under extensions")
    R = FiniteModule.free(U.N)
    if not A.contains(R) or not B.contains(R):
        raise HypothesisFailed("base classes must contain the free module")
    members = list(U)
    if theorem == "A":
        left = lambda X: member_phi(X, A)  # noqa: E731
        right = lambda X: member_repclass(X, B)  # noqa: E731
    elif theorem == "B":
        left = lambda X: member_repclass(X, A)  # noqa: E731
        right = lambda X: member_psi(X, B)  # noqa: E731
    else:
        raise ValueError("theorem must be 'A' or 'B'")
    lf = _resolving_failures(members, left, cover_splits)
    rf = _coresolving_failures(members, right, embedding_splits)
    return {
        "check": f"hereditary-{theorem}",
        "inputs": {"universe": _universe_inputs(U), "A": A.to_json(), "B": B.to_json()},
        "resolving_failures": [[kind, rep_to_json(X)] for kind, X in lf],
        "coresolving_failures": [[kind, rep_to_json(X)] for kind, X in rf],
        "pass": not lf and not rf,
    }


# --- filtrations ------------------------------------------------------------

@dataclass
class Cofiltration:
    """Y_0 = 0 ← Y_1 ← ... ← Y_last = Y with epis links[k]: Y_{k+1} → Y_k."""

    target: Representation
    stages: list
    links: list
    vertex_sets: list = field(default_factory=list)

    @property
    def kernels(self) -> list:
        return [kernel_rep(g) for g in self.links]

    def map_between(self, a: int, b: int) -> RepMorphism:
        """g_ab: Y_b → Y_a for a ≤ b (composite of links)."""
        g = RepMorphism.identity(self.stages[b])
        for k in range(b - 1, a - 1, -1):
            g = self.links[k] @ g
        return g

    def verify(self) -> dict:
        Q = self.target.quiver
        checks = {
            "bottom_zero": self.stages[0].is_zero(),
            "top_is_target": self.stages[-1] == self.target,
            "links_epi": all(g.is_epi() for g in self.links),
            "stage_count_ok": len(self.stages) <= len(Q.vertices) + 1,
        }
        kernel_ok = arrows_zero = True
        for k, (K, _) in enumerate(self.kernels):
            new = self.vertex_sets[k + 1] - self.vertex_sets[k] if self.vertex_sets else None
            if any(not f.is_zero() for f in K.maps):
                arrows_zero = False
            if new is not None:
                expect = biproduct_rep([stalk(self.target.at(v), v, Q) for v in Q.vertices
                                        if v in new], Q, self.target.N)[0]
                if K.modules != expect.modules:
                    kernel_ok = False
        checks["kernels_are_stalk_sums"] = kernel_ok
        checks["kernel_arrows_zero"] = arrows_zero
        comp_ok = True
        n = len(self.stages)
        for a, b, c in itertools.combinations_with_replacement(range(n), 3):
            if self.map_between(a, c) != self.map_between(a, b) @ self.map_between(b, c):
                comp_ok = False
        checks["composition_ok"] = comp_ok
        checks["pass"] = all(checks.values())
        return checks


@dataclass
class Filtration:
    """0 = X_0 → X_1 → ... → X_last = X with monos links[k]: X_k → X_{k+1}."""

    target: Representation
    stages: list
    links: list
    vertex_sets: list = field(default_factory=list)

    @property
    def quotients(self) -> list:
        return [cokernel_rep(f) for f in self.links]

    def map_between(self, a: int, b: int) -> RepMorphism:
        f = RepMorphism.identity(self.stages[a])
        for k in range(a, b):
            f = self.links[k] @ f
        return f

    def verify(self) -> dict:
        Q = self.target.quiver
        checks = {
            "bottom_zero": self.stages[0].is_zero(),
            "top_is_target": self.stages[-1] == self.target,
            "links_mono": all(f.is_mono() for f in self.links),
            "stage_count_ok": len(self.stages) <= len(Q.vertices) + 1,
        }
        quot_ok = arrows_zero = True
        for k, (C, _) in enumerate(self.quotients):
            if any(not f.is_zero() for f in C.maps):
                arrows_zero = False
            if self.vertex_sets:
                new = self.vertex_sets[k + 1] - self.vertex_sets[k]
                expect = [self.target.at(v) if v in new else FiniteModule.zero(self.target.N)
                          for v in Q.vertices]
                if list(C.modules) != expect:
                    quot_ok = False
        checks["quotients_are_stalk_sums"] = quot_ok
        checks["quotient_arrows_zero"] = arrows_zero
        comp_ok = True
        n = len(self.stages)
        for a, b, c in itertools.combinations_with_replacement(range(n), 3):
            if self.map_between(a, c) != self.map_between(b, c) @ self.map_between(a, b):
                comp_ok = False
        checks["composition_ok"] = comp_ok
        checks["pass"] = all(checks.values())
        return checks


def _truncate(Y: Representation, keep: frozenset) -> Representation:
    """Y on ``keep``, zero elsewhere; arrow maps kept only inside ``keep``."""
    Q = Y.quiver
    zero = FiniteModule.zero(Y.N)
    mods = [Y.at(v) if v in keep else zero for v in Q.vertices]
    maps = []
    for a, f in zip(Q.arrows, Y.maps):
        if a.source in keep and a.target in keep:
            maps.append(f)
        else:
            maps.append(ModuleMap.zero(mods[Q.vertex_position(a.source)],
                                       mods[Q.vertex_position(a.target)]))
    return Representation(Q, mods, maps, N=Y.N)


def _restriction(big: Representation, small: Representation, keep: frozenset) -> RepMorphism:
    """Identity on ``keep``, zero elsewhere, as a map big → small."""
    comps = []
    for v, S, T in zip(big.quiver.vertices, big.modules, small.modules):
        comps.append(ModuleMap.identity(S) if v in keep else ModuleMap.zero(S, T))
    return RepMorphism(big, small, comps)


def build_cofiltration(Y: Representation) -> Cofiltration:
    """Cofiltration of Y along the left root sequence V_0 ⊆ V_1 ⊆ ..."""
    Q = Y.quiver
    seq = left_root_sequence(Q)
    if not seq.stabilized:
        raise HypothesisFailed("quiver is not left rooted")
    if Y.is_zero():
        return Cofiltration(Y, [Y], [], [frozenset()])
    stages = [_truncate(Y, V) for V in seq.stages]
    stages[-1] = Y
    links = [_restriction(stages[k + 1], stages[k], seq.stages[k])
             for k in range(len(stages) - 1)]
    return Cofiltration(Y, stages, links, list(seq.stages))


def build_filtration(X: Representation) -> Filtration:
    """Filtration of X along the right root sequence W_0 ⊆ W_1 ⊆ ..."""
    Q = X.quiver
    seq = right_root_sequence(Q)
    if not seq.stabilized:
        raise HypothesisFailed("quiver is not right rooted")
    if X.is_zero():
        return Filtration(X, [X], [], [frozenset()])
    stages = [_truncate(X, W) for W in seq.stages]
    stages[-1] = X
    links = []
    for k in range(len(stages) - 1):
        small, big = stages[k], stages[k + 1]
        comps = [ModuleMap.identity(S) if v in seq.stages[k] else ModuleMap.zero(S, T)
                 for v, S, T in zip(Q.vertices, small.modules, big.modules)]
        links.append(RepMorphism(small, big, comps))
    return Filtration(X, stages, links, list(seq.stages))


def check_trlifaj(U, C: Sequence[Representation], cochain: Cofiltration) -> dict:
    """Kernels of the cofiltration lie in C^⊥, and then so does its target."""
    stages, links = cochain.stages, cochain.links
    if len(links) != len(stages) - 1 or not stages or not stages[0].is_zero():
        raise MalformedFiltration("cofiltration must start at 0 with one link per step")
    if stages[-1] != cochain.target:
        raise MalformedFiltration("last stage is not the target")
    for k, g in enumerate(links):
        if g.source != stages[k + 1] or g.target != stages[k] or not g.is_epi():
            raise MalformedFiltration(f"link {k} is not an epimorphism Y_{k + 1} → Y_{k}")
    kernels = [kernel_rep(g)[0] for g in links]
    applicable = all(_ext1_zero(c, K) for K in kernels for c in C)
    conclusion = all(_ext1_zero(c, cochain.target, "injective") for c in C)
    return {
        "check": "trlifaj",
        "inputs": {"target": rep_to_json(cochain.target), "class_size": len(C),
                   "universe": _universe_inputs(U) if U is not None else None},
        "stages": len(stages),
        "applicable": applicable,
        "conclusion": conclusion,
        "pass": applicable and conclusion,
    }


def check_eklof(U, C: Sequence[Representation], chain: Filtration) -> dict:
    """Quotients of the filtration lie in ⊥C, and then so does its target."""
    stages, links = chain.stages, chain.links
    if len(links) != len(stages) - 1 or not stages or not stages[0].is_zero():
        raise MalformedFiltration("filtration must start at 0 with one link per step")
    if stages[-1] != chain.target:
        raise MalformedFiltration("last stage is not the target")
    for k, f in enumerate(links):
        if f.source != stages[k] or f.target != stages[k + 1] or not f.is_mono():
            raise MalformedFiltration(f"link {k} is not a monomorphism X_{k} → X_{k + 1}")
    quotients = [cokernel_rep(f)[0] for f in links]
    applicable = all(_ext1_zero(Qt, c) for Qt in quotients for c in C)
    conclusion = all(_ext1_zero(chain.target, c, "injective") for c in C)
    return {
        "check": "eklof",
        "inputs": {"target": rep_to_json(chain.target), "class_size": len(C),
                   "universe": _universe_inputs(U) if U is not None else None},
        "stages": len(stages),
        "applicable": applicable,
        "conclusion": conclusion,
        "pass": applicable and conclusion,
    }
