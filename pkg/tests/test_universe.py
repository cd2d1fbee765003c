from itertools import product
from math import prod

import pytest

from oracles import elements, hom_count, hom_tables
from quivrep.quiver import GOLDEN, a2, double_arrow
from quivrep.universe import Universe, divisors, module_pool

SIZES = {("A2", 2): 5, ("A2", 3): 6, ("A2", 4): 15, ("A3", 2): 13, ("A3", 4): 83,
         ("double", 2): 7, ("double", 4): 33, ("D4", 2): 35, ("D4", 4): 495,
         ("diamond", 2): 187}


def _count_by_homs(Q, N):
    pool = module_pool(N)
    pos = {v: k for k, v in enumerate(Q.vertices)}
    return sum(prod(hom_count(assign[pos[a.source]], assign[pos[a.target]]) for a in Q.arrows)
               for assign in product(pool, repeat=len(Q.vertices)))


def test_divisors_and_pool():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert [M.chain for M in module_pool(4)] == [(), (2,), (4,)]
    assert [M.chain for M in module_pool(4, 2)] == [(), (2,), (4,), (2, 2), (2, 4), (4, 4)]
    assert [M.chain for M in module_pool(12, 1, (2, 3))] == [(), (2,), (3,)]


@pytest.mark.parametrize("name,N", sorted(SIZES))
def test_universe_sizes(name, N):
    Q = GOLDEN[name]()
    U = Universe(Q, N)
    assert len(U) == SIZES[name, N] == _count_by_homs(Q, N)
    assert not U.truncated
    assert len(set(U)) == len(U)


def test_enumeration_is_deterministic():
    U1, U2 = Universe(a2(), 4), Universe(a2(), 4)
    assert list(U1) == list(U2)
    assert U1.members[0].is_zero()


def test_cap_truncates():
    U = Universe(double_arrow(), 4, cap=10)
    assert len(U) == 10 and U.truncated
    assert U.members == Universe(double_arrow(), 4).members[:10]
    assert U.describe()["truncated"]


def _brute_iso_classes(Q, N):
    # orbits of arrow data under vertexwise automorphisms, on element tables
    pool = module_pool(N)
    classes = 0
    for assign in product(pool, repeat=len(Q.vertices)):
        auts = [[t for t in hom_tables(M, M) if len(set(t.values())) == len(t)] for M in assign]
        homs = [hom_tables(assign[0], assign[1]) for _ in Q.arrows]
        seen = set()
        els = elements(assign[0])

        def key(fs):
            return tuple(tuple(f[x] for x in els) for f in fs)

        for fs in product(*homs):
            k = key(fs)
            if k in seen:
                continue
            classes += 1
            for g0, g1 in product(*auts):
                inv0 = {v: x for x, v in g0.items()}
                seen.add(tuple(tuple(g1[f[inv0[x]]] for x in els) for f in fs))
    return classes


@pytest.mark.parametrize("Q", [a2(), double_arrow()], ids=["A2", "double"])
@pytest.mark.parametrize("N", [2, 4])
def test_up_to_iso_counts(Q, N):
    U = Universe(Q, N, up_to_iso=True)
    assert len(U) == _brute_iso_classes(Q, N)

