import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quivrep.errors import PathSetInfinite
from quivrep.extcalc import ext_rep
from quivrep.functors import (
    adjunction_cs,
    adjunction_eg,
    adjunction_fe,
    adjunction_sk,
    c_functor,
    cone,
    counit_fe,
    evaluate,
    f_functor,
    g_functor,
    injective_embed_rep,
    k_functor,
    projective_cover_rep,
    stalk,
)
from quivrep.quiver import a2, a3, diamond, double_arrow, loop, opposite
from quivrep.repcat import Representation, dualize, is_exact_ses, retraction_rep, validate
from quivrep.zmodcat import FiniteModule, ModuleMap
from strategies import maps, modules, representations

F = FiniteModule
Z2 = F.cyclic(2, 2)
QUIVERS = [a2(), a3(), double_arrow(), diamond()]


def test_stalk_is_zero_off_vertex():
    S = stalk(Z2, "2", a3())
    assert evaluate(S, "1").is_zero() and evaluate(S, "3").is_zero() and evaluate(S, "2") == Z2


def test_f_on_a3_is_identity_chain_below_vertex():
    M = F.cyclic(4, 4)
    X = f_functor(M, "2", a3())
    assert X.at("3").is_zero() and X.at("2") == M and X.at("1") == M
    assert X.arrow_map("a2") == ModuleMap.identity(M)


def test_f_and_g_on_a2():
    assert f_functor(Z2, "1", a2()) == Representation(a2(), [Z2, Z2], {"a": [[1]]})
    assert g_functor(Z2, "2", a2()) == Representation(a2(), [Z2, Z2], {"a": [[1]]})


def test_f_rejects_infinite_path_sets():
    with pytest.raises(PathSetInfinite):
        f_functor(Z2, "1", loop())


@pytest.mark.parametrize("Q", QUIVERS, ids=lambda q: str(len(q.vertices)) + "v")
@pytest.mark.parametrize("N", [2, 4])
def test_g_is_dual_of_f_on_opposite(Q, N):
    for M in (F.cyclic(N, 2), F.free(N)):
        for i in Q.vertices:
            assert g_functor(M, i, Q) == dualize(f_functor(M, i, opposite(Q)))


def test_c_examples():
    X = Representation(a2(), [Z2, Z2], {"a": [[1]]})
    assert c_functor(X, "1")[0] == Z2
    D = Representation(double_arrow(), [Z2, Z2], {"alpha": [[1]], "beta": [[1]]})
    assert c_functor(D, "2")[0].is_zero()
    assert k_functor(X, "1")[0].is_zero()
    for i in ("1", "2"):
        assert c_functor(stalk(Z2, i, a2()), i)[0] == Z2
        assert k_functor(stalk(Z2, i, a2()), i)[0] == Z2


def test_adjunction_examples():
    X = Representation(a2(), [Z2, Z2], {"a": [[1]]})
    r = adjunction_fe(Z2, "1", X).check()
    assert r["pass"] and r["left_order"] == 2
    assert adjunction_eg(X, "2", Z2).check()["pass"]
    Z4 = F.cyclic(4, 4)
    S = stalk(F.cyclic(4, 2), "1", a2())
    r = adjunction_cs(S, "1", F.cyclic(4, 2)).check()
    assert r["pass"] and r["left_order"] == 2
    r = adjunction_sk(Z2, "1", X).check()
    assert r["pass"] and r["left_order"] == r["right_order"] == 1
    assert adjunction_fe(Z4, "2", stalk(Z4, "2", a2())).check()["pass"]


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(QUIVERS).flatmap(lambda Q: st.sampled_from([2, 4, 6]).flatmap(
    lambda N: st.tuples(representations(Q, N), modules(N, 1), st.sampled_from(Q.vertices)))))
def test_all_adjunctions_on_random_data(case):
    X, M, i = case
    for w in (adjunction_fe(M, i, X), adjunction_eg(X, i, M),
              adjunction_cs(X, i, M), adjunction_sk(M, i, X)):
        r = w.check(full_limit=64, samples=30)
        assert r["pass"], r


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(QUIVERS).flatmap(lambda Q: st.sampled_from([2, 4, 6]).flatmap(
    lambda N: representations(Q, N))))
def test_cover_and_embedding_are_exact(X):
    cov = projective_cover_rep(X)
    assert validate(cov.map) and cov.map.is_epi()
    assert is_exact_ses(cov.rest_map, cov.map)
    emb = injective_embed_rep(X)
    assert validate(emb.map) and emb.map.is_mono()
    assert is_exact_ses(emb.map, emb.rest_map)
    assert ext_rep(1, cov.obj, X).is_zero()
    assert ext_rep(1, X, emb.obj).is_zero()


def test_cover_examples():
    Q = a2()
    cov = projective_cover_rep(stalk(Z2, "1", Q))
    assert cov.obj == f_functor(Z2, "1", Q)
    assert cov.rest == stalk(Z2, "2", Q)
    emb = injective_embed_rep(stalk(Z2, "2", Q))
    assert emb.obj == g_functor(Z2, "2", Q)
    zero = Representation.zero(Q, 2)
    assert projective_cover_rep(zero).obj.is_zero()
    assert injective_embed_rep(zero).obj.is_zero()


def test_counit_on_f_is_iso():
    X = f_functor(F.cyclic(4, 4), "3", a3())
    eps = counit_fe(X, "3")
    assert validate(eps) and eps.is_mono() and eps.is_epi()


def test_cone_examples():
    Q = a2()
    X = Representation(Q, [Z2, Z2], {"a": [[1]]})
    C = cone(X, Z2, "2", {"a": ModuleMap.identity(Z2)})
    assert C.exact
    assert C.rep.arrow_map("a").matrix.to_rows() == [[1], [1]]
    trivial = cone(X, Z2, "2", {})
    assert retraction_rep(trivial.iota) is not None
    src = cone(X, Z2, "1", {})
    assert retraction_rep(src.iota) is not None
    with pytest.raises(ValueError):
        cone(X, Z2, "1", {"a": ModuleMap.identity(Z2)})


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([a2(), a3(), double_arrow()]).flatmap(
    lambda Q: st.sampled_from([2, 4]).flatmap(lambda N: st.tuples(
        representations(Q, N), modules(N, 1), st.sampled_from(Q.vertices), st.data()))))
def test_cone_splits_when_ext_vanishes(case):
    X, M, i, data = case
    Q = X.quiver
    xi = {a.id: data.draw(maps(X.at(a.source), M)) for a in Q.arrows_into(i)}
    C = cone(X, M, i, xi)
    assert C.exact and validate(C.iota) and validate(C.pi)
    if ext_rep(1, X, stalk(M, i, Q)).is_zero():
        assert retraction_rep(C.iota) is not None
