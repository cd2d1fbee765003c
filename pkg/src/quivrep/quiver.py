"""Finite quivers: paths, opposites and the rootedness sequences.

Vertex and arrow ids are opaque strings. Paths are stored in traversal
order, so the arrow sequence (a1, a2) means "a1 first, then a2".
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .errors import PathSetInfinite


@dataclass(frozen=True)
class Arrow:
    id: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple = ()
    _index: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        verts = tuple(str(v) for v in self.vertices)
        arrows = tuple(a if isinstance(a, Arrow) else Arrow(str(a[0]), str(a[1]), str(a[2]))
                       for a in self.arrows)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "arrows", arrows)
        if len(set(verts)) != len(verts):
            raise ValueError("duplicate vertex ids")
        vset = set(verts)
        ids = set()
        for a in arrows:
            if a.id in ids:
                raise ValueError(f"duplicate arrow id {a.id!r}")
            ids.add(a.id)
            if a.source not in vset or a.target not in vset:
                raise ValueError(f"arrow {a.id!r} has an undeclared endpoint")
        into = {v: [] for v in verts}
        out = {v: [] for v in verts}
        for a in arrows:
            into[a.target].append(a)
            out[a.source].append(a)
        object.__setattr__(self, "_index", {
            "into": {v: tuple(x) for v, x in into.items()},
            "out": {v: tuple(x) for v, x in out.items()},
            "arrow": {a.id: a for a in arrows},
            "vpos": {v: k for k, v in enumerate(verts)},
            "apos": {a.id: k for k, a in enumerate(arrows)},
        })

    @classmethod
    def from_edges(cls, vertices, edges) -> "Quiver":
        """Build from (id, source, target) triples."""
        return cls(tuple(vertices), tuple(Arrow(*map(str, e)) for e in edges))

    def arrow(self, a: str) -> Arrow:
        return self._index["arrow"][a]

    def vertex_position(self, v: str) -> int:
        return self._index["vpos"][v]

    def arrow_position(self, a: str) -> int:
        return self._index["apos"][a]

    def _check_vertex(self, i):
        if i not in self._index["vpos"]:
            raise KeyError(f"unknown vertex {i!r}")

    def arrows_into(self, i: str) -> tuple:
        self._check_vertex(i)
        return self._index["into"][i]

    def arrows_out(self, i: str) -> tuple:
        self._check_vertex(i)
        return self._index["out"][i]

    def __str__(self):
        arrows = ", ".join(f"{a.id}:{a.source}->{a.target}" for a in self.arrows)
        return f"Quiver([{', '.join(self.vertices)}]; {arrows})"


@dataclass(frozen=True)
class Path:
    start: str
    arrows: tuple = ()

    def end(self, Q: Quiver) -> str:
        return Q.arrow(self.arrows[-1]).target if self.arrows else self.start

    def then(self, a: str) -> "Path":
        """The path that follows this one by the arrow a (written ap)."""
        return Path(self.start, self.arrows + (a,))

    def after(self, a: str, Q: Quiver) -> "Path":
        """The path a followed by this one (written pa)."""
        return Path(Q.arrow(a).source, (a,) + self.arrows)

    @property
    def length(self) -> int:
        return len(self.arrows)

    def key(self) -> str:
        return self.start + ":" + ".".join(self.arrows)

    def is_valid(self, Q: Quiver) -> bool:
        cur = self.start
        for a in self.arrows:
            arr = Q.arrow(a)
            if arr.source != cur:
                return False
            cur = arr.target
        return True


def arrows_into(Q: Quiver, i: str) -> tuple:
    return Q.arrows_into(i)


def arrows_out(Q: Quiver, i: str) -> tuple:
    return Q.arrows_out(i)


def has_oriented_cycle(Q: Quiver) -> bool:
    indeg = {v: len(Q.arrows_into(v)) for v in Q.vertices}
    queue = deque(v for v in Q.vertices if indeg[v] == 0)
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for a in Q.arrows_out(v):
            indeg[a.target] -= 1
            if indeg[a.target] == 0:
                queue.append(a.target)
    return seen < len(Q.vertices)


def is_locally_path_finite(Q: Quiver) -> bool:
    """For a finite quiver: no oriented cycle (loops included)."""
    return not has_oriented_cycle(Q)


def _reach(Q: Quiver, start: str, forward: bool) -> set:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        nbrs = Q.arrows_out(v) if forward else Q.arrows_into(v)
        for a in nbrs:
            w = a.target if forward else a.source
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _cycle_between(Q: Quiver, i: str, j: str) -> bool:
    """Is there a vertex on an oriented cycle that lies on some route i → j?"""
    fwd = _reach(Q, i, True)
    bwd = _reach(Q, j, False)
    middle = fwd & bwd
    for a in Q.arrows:
        if a.source in middle and a.target in middle:
            # an arrow inside the route region that closes a cycle
            if a.source in _reach(Q, a.target, True):
                return True
    return False


def enumerate_paths(Q: Quiver, i: str, j: str, max_len: Optional[int] = None,
                    require_complete: bool = False) -> tuple:
    """Paths from i to j, breadth first by length then arrow declaration order.

    Returns (paths, complete). ``complete`` is True when the returned list is
    all of Q(i, j). With ``max_len=None`` the full set is required and an
    infinite Q(i, j) raises PathSetInfinite; so does ``require_complete``
    when the bound truncates an infinite set.
    """
    Q._check_vertex(i)
    Q._check_vertex(j)
    infinite = _cycle_between(Q, i, j)
    if infinite and (max_len is None or require_complete):
        raise PathSetInfinite(f"Q({i},{j}) is infinite")
    if max_len is None:
        max_len = len(Q.arrows) * max(1, len(Q.vertices))
    useful = _reach(Q, j, False)
    out = []
    level = [Path(i)] if i in useful else []
    truncated = False
    length = 0
    while level:
        for p in level:
            if p.end(Q) == j:
                out.append(p)
        if length == max_len:
            truncated = any(True for p in level for a in Q.arrows_out(p.end(Q))
                            if a.target in useful)
            break
        nxt = []
        for p in level:
            for a in Q.arrows_out(p.end(Q)):
                if a.target in useful:
                    nxt.append(p.then(a.id))
        level = nxt
        length += 1
    complete = not infinite and not truncated
    return tuple(out), complete


def paths(Q: Quiver, i: str, j: str) -> tuple:
    """The full finite set Q(i, j); raises PathSetInfinite otherwise."""
    return enumerate_paths(Q, i, j)[0]


def opposite(Q: Quiver) -> Quiver:
    """Same vertices, every arrow reversed (arrow ids kept)."""
    return Quiver(Q.vertices, tuple(Arrow(a.id, a.target, a.source) for a in Q.arrows))


@dataclass(frozen=True)
class RootSequence:
    """Stages V_0 = ∅ ⊆ V_1 ⊆ ... up to the fixpoint (stored as frozensets)."""

    stages: tuple
    stabilized: bool

    @property
    def fixpoint(self) -> frozenset:
        return self.stages[-1]

    def as_lists(self, Q: Quiver) -> list:
        order = {v: k for k, v in enumerate(Q.vertices)}
        return [sorted(s, key=order.__getitem__) for s in self.stages]


def _root_sequence(Q: Quiver, incoming: bool) -> RootSequence:
    stages = [frozenset()]
    while True:
        prev = stages[-1]
        if incoming:
            nxt = frozenset(v for v in Q.vertices
                            if all(a.source in prev for a in Q.arrows_into(v)))
        else:
            nxt = frozenset(v for v in Q.vertices
                            if all(a.target in prev for a in Q.arrows_out(v)))
        if nxt == prev:
            break
        stages.append(nxt)
    return RootSequence(tuple(stages), stages[-1] == frozenset(Q.vertices))


def left_root_sequence(Q: Quiver) -> RootSequence:
    """V_{k+1} = vertices all of whose incoming arrows start in V_k."""
    return _root_sequence(Q, True)


def right_root_sequence(Q: Quiver) -> RootSequence:
    """W_{k+1} = vertices all of whose outgoing arrows end in W_k."""
    return _root_sequence(Q, False)


def is_left_rooted(Q: Quiver) -> bool:
    return left_root_sequence(Q).stabilized


def is_right_rooted(Q: Quiver) -> bool:
    return right_root_sequence(Q).stabilized


def no_arrow_violations(Q: Quiver, seq: RootSequence, incoming: bool = True) -> list:
    """Arrows i → j with i ∉ V_k and j ∈ V_{k+1} (should be none).

    For the right sequence the roles flip: arrows j → i with i ∉ W_k and
    j ∈ W_{k+1}.
    """
    bad = []
    for k in range(len(seq.stages) - 1):
        vk, vk1 = seq.stages[k], seq.stages[k + 1]
        for a in Q.arrows:
            outside, inside = (a.source, a.target) if incoming else (a.target, a.source)
            if outside not in vk and inside in vk1:
                bad.append((k, a.id))
    return bad


# golden quivers used throughout tests, CLI examples and acceptance

def a2() -> Quiver:
    return Quiver.from_edges(["1", "2"], [("a", "1", "2")])


def a3() -> Quiver:
    """3 → 2 → 1."""
    return Quiver.from_edges(["1", "2", "3"], [("a1", "3", "2"), ("a2", "2", "1")])


def diamond() -> Quiver:
    """1 feeds 2, 3 and 5; 2 and 3 feed 4; 4 feeds 5."""
    return Quiver.from_edges(
        ["1", "2", "3", "4", "5"],
        [("a", "1", "2"), ("b", "1", "3"), ("c", "1", "5"),
         ("d", "2", "4"), ("e", "3", "4"), ("f", "4", "5")])


def double_arrow() -> Quiver:
    return Quiver.from_edges(["1", "2"], [("alpha", "1", "2"), ("beta", "1", "2")])


def d4() -> Quiver:
    """Three arms pointing at a central vertex."""
    return Quiver.from_edges(["1", "2", "3", "4"],
                             [("a", "1", "4"), ("b", "2", "4"), ("c", "3", "4")])


def loop() -> Quiver:
    return Quiver.from_edges(["1"], [("l", "1", "1")])


GOLDEN = {
    "A2": a2,
    "A3": a3,
    "diamond": diamond,
    "double": double_arrow,
    "D4": d4,
}
