"""Finite universes of representations used as stand-ins for proper classes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Optional

from . import zmodcat as zc
from .quiver import Quiver
from .repcat import Representation
from .zmodcat import FiniteModule, ModuleMap

DEFAULT_CAP = 20000


def divisors(N: int) -> list:
    return [d for d in range(1, N + 1) if N % d == 0]


def module_pool(N: int, max_chain_length: int = 1, factors: Optional[tuple] = None) -> list:
    """All modules with at most ``max_chain_length`` invariant factors from ``factors``.

    Ordered by (number of factors, chain), so the zero module comes first.
    """
    allowed = sorted(d for d in (factors or divisors(N)) if d > 1 and N % d == 0)
    out = [FiniteModule.zero(N)]
    for length in range(1, max_chain_length + 1):
        for chain in itertools.combinations_with_replacement(allowed, length):
            if all(chain[k + 1] % chain[k] == 0 for k in range(length - 1)):
                out.append(FiniteModule(N, chain))
    return out


def _automorphisms(M: FiniteModule) -> list:
    H = zc.hom_module(M, M)
    return [f for f in H.elements(bound=max(H.order, 1)) if f.is_iso()]


@dataclass(frozen=True)
class Universe:
    """Every representation with vertex values from the module pool.

    Enumeration order: vertex assignments in pool order (first vertex slowest),
    then arrow maps by their Hom coordinates in declaration order. When the
    count passes ``cap`` the tail is dropped and ``truncated`` is set.
    With ``up_to_iso`` only the first member of each orbit under vertex-wise
    automorphisms is kept.
    """

    quiver: Quiver
    N: int
    max_chain_length: int = 1
    factors: Optional[tuple] = None
    cap: int = DEFAULT_CAP
    up_to_iso: bool = False
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("ring modulus must be at least 2")
        if self.max_chain_length < 0 or self.cap < 1:
            raise ValueError("universe bounds must be positive")

    @cached_property
    def modules(self) -> list:
        return module_pool(self.N, self.max_chain_length, self.factors)

    def _raw(self) -> Iterator[Representation]:
        Q = self.quiver
        pos = {v: k for k, v in enumerate(Q.vertices)}
        for assign in itertools.product(self.modules, repeat=len(Q.vertices)):
            homs = [zc.hom_module(assign[pos[a.source]], assign[pos[a.target]]) for a in Q.arrows]
            choices = [list(H.elements(bound=max(H.order, 1))) for H in homs]
            for maps in itertools.product(*choices):
                yield Representation(Q, list(assign), list(maps), N=self.N)

    def _enumerate(self) -> tuple:
        members = []
        truncated = False
        seen = set()
        for X in self._raw():
            if self.up_to_iso:
                key = _orbit_key(X)
                if key in seen:
                    continue
                seen.add(key)
            if len(members) == self.cap:
                truncated = True
                break
            members.append(X)
        return members, truncated

    @property
    def members(self) -> list:
        if "members" not in self._cache:
            self._cache["members"], self._cache["truncated"] = self._enumerate()
        return self._cache["members"]

    @property
    def truncated(self) -> bool:
        self.members
        return self._cache["truncated"]

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def describe(self) -> dict:
        return {"vertices": list(self.quiver.vertices), "N": self.N,
                "max_chain_length": self.max_chain_length,
                "factors": list(self.factors) if self.factors else None,
                "cap": self.cap, "up_to_iso": self.up_to_iso,
                "size": len(self), "truncated": self.truncated}


def _map_key(f: ModuleMap) -> tuple:
    return f.matrix.entries


def _orbit_key(X: Representation) -> tuple:
    """Smallest map tuple over the action of ∏ Aut(X(v))."""
    Q = X.quiver
    pos = {v: k for k, v in enumerate(Q.vertices)}
    auts = [_automorphisms_cached(M) for M in X.modules]
    inv = [[_inverse(g) for g in A] for A in auts]
    best = None
    for pick in itertools.product(*[range(len(A)) for A in auts]):
        key = []
        for a, f in zip(Q.arrows, X.maps):
            s, t = pos[a.source], pos[a.target]
            key.append(_map_key(auts[t][pick[t]] @ f @ inv[s][pick[s]]))
        key = tuple(key)
        if best is None or key < best:
            best = key
    return (tuple(M.chain for M in X.modules), best)


_AUT_CACHE: dict = {}
_INV_CACHE: dict = {}


def _automorphisms_cached(M: FiniteModule) -> list:
    if M not in _AUT_CACHE:
        _AUT_CACHE[M] = _automorphisms(M)
    return _AUT_CACHE[M]


def _inverse(g: ModuleMap) -> ModuleMap:
    if g not in _INV_CACHE:
        for h in _automorphisms_cached(g.source):
            if (h @ g) == ModuleMap.identity(g.source):
                _INV_CACHE[g] = h
                break
    return _INV_CACHE[g]
