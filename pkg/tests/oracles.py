"""Brute-force reference computations on explicit group elements.

Nothing here touches Smith forms or resolutions: modules are enumerated
as tuples, maps are applied coordinatewise, and Ext^1 is counted from
normalized symmetric 2-cocycles.
"""

from itertools import product


def elements(M):
    return list(product(*[range(d) for d in M.chain]))


def add(M, x, y):
    return tuple((a + b) % d for a, b, d in zip(x, y, M.chain))


def neg(M, x):
    return tuple((-a) % d for a, d in zip(x, M.chain))


def apply(f, x):
    """Image of x under a ModuleMap, computed from the matrix columns."""
    rows = f.matrix.to_rows()
    return tuple(sum(r[k] * x[k] for k in range(len(x))) % e
                 for r, e in zip(rows, f.target.chain))


def hom_count(M, M2):
    """Count homomorphisms by choosing generator images killed by their orders."""
    count = 0
    gens = M.chain
    for imgs in product(elements(M2), repeat=len(gens)):
        if all(all((d * y) % e == 0 for y, e in zip(img, M2.chain)) for d, img in zip(gens, imgs)):
            count += 1
    return count


def hom_tables(M, M2):
    """Every homomorphism M → M2 as a dict element → image."""
    out = []
    els = elements(M)
    for imgs in product(elements(M2), repeat=len(M.chain)):
        if not all(all((d * y) % e == 0 for y, e in zip(img, M2.chain))
                   for d, img in zip(M.chain, imgs)):
            continue
        table = {}
        for x in els:
            v = tuple(0 for _ in M2.chain)
            for k, c in enumerate(x):
                for _ in range(c):
                    v = add(M2, v, imgs[k])
            table[x] = v
        out.append(table)
    return out


def rep_hom_count(X, Y):
    """Vertexwise homomorphism tables that make every arrow square commute."""
    Q = X.quiver
    choices = [hom_tables(X.at(v), Y.at(v)) for v in Q.vertices]
    pos = {v: k for k, v in enumerate(Q.vertices)}
    count = 0
    for lam in product(*choices):
        ok = True
        for a in Q.arrows:
            fx, fy = X.arrow_map(a.id), Y.arrow_map(a.id)
            ls, lt = lam[pos[a.source]], lam[pos[a.target]]
            for x in elements(X.at(a.source)):
                if lt[apply(fx, x)] != apply(fy, ls[x]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            count += 1
    return count


def _functions(A_els, B):
    """Normalized set maps A → B (0 ↦ 0) as dicts."""
    nz = [x for x in A_els if any(x)]
    zero_a = tuple(0 for _ in A_els[0])
    zero_b = tuple(0 for _ in B.chain)
    for vals in product(elements(B), repeat=len(nz)):
        h = dict(zip(nz, vals))
        h[zero_a] = zero_b
        yield h


def cocycles(A, B, N):
    """Normalized symmetric 2-cocycles c: A × A → B whose extension has exponent N."""
    els = elements(A)
    zero_a = tuple(0 for _ in A.chain)
    zero_b = tuple(0 for _ in B.chain)
    nz = [x for x in els if any(x)]
    pairs = [(x, y) for i, x in enumerate(nz) for y in nz[i:]]
    out = []
    for vals in product(elements(B), repeat=len(pairs)):
        c = {}
        for (x, y), v in zip(pairs, vals):
            c[x, y] = c[y, x] = v
        for x in els:
            c[zero_a, x] = c[x, zero_a] = zero_b
        if not all(add(B, c[y, z], c[x, add(A, y, z)]) == add(B, c[add(A, x, y), z], c[x, y])
                   for x in nz for y in nz for z in nz):
            continue
        # N·(0, x) in the extension group must vanish
        ok = True
        for x in nz:
            b, a = zero_b, zero_a
            for _ in range(N):
                b, a = add(B, b, c[a, x]), add(A, a, x)
            if any(b):
                ok = False
                break
        if ok:
            out.append(c)
    return out


def ext1_order(A, B, N):
    """|Ext^1(A, B)| over ℤ/N as |cocycles| / |coboundaries|."""
    Z = cocycles(A, B, N)
    els = elements(A)
    coboundaries = set()
    for h in _functions(els, B):
        coboundaries.add(tuple(add(B, add(B, h[x], h[y]), neg(B, h[add(A, x, y)]))
                               for x in els for y in els))
    return len(Z) // len(coboundaries)


def rep_ext1_order(X, Y):
    """|Ext^1(X, Y)| in representations by counting extension data.

    An extension is a cocycle c_i at each vertex plus, for each arrow a,
    a normalized correction h_a: X(s) → Y(t) making
    (y, x) ↦ (Y(a)y + h_a(x), X(a)x) additive. Classes are orbits under
    normalized g_i: X(i) → Y(i); the stabilizer is Hom(X, Y), so
    |Ext^1| = |Z| · |Hom| / |G|.
    """
    Q = X.quiver
    N = X.N
    pos = {v: k for k, v in enumerate(Q.vertices)}
    cyc = [cocycles(X.at(v), Y.at(v), N) for v in Q.vertices]
    h_space = {}
    for a in Q.arrows:
        h_space[a.id] = list(_functions(elements(X.at(a.source)), Y.at(a.target)))
    total = 0
    for cs in product(*cyc):
        n = 1
        for a in Q.arrows:
            Xs, Yt = X.at(a.source), Y.at(a.target)
            fx, fy = X.arrow_map(a.id), Y.arrow_map(a.id)
            cs_, ct_ = cs[pos[a.source]], cs[pos[a.target]]
            els = elements(Xs)
            need = {(x, y): add(Yt, apply(fy, cs_[x, y]), neg(Yt, ct_[apply(fx, x), apply(fx, y)]))
                    for x in els for y in els}
            good = 0
            for h in h_space[a.id]:
                if all(add(Yt, add(Yt, h[x], h[y]), neg(Yt, h[add(Xs, x, y)])) == need[x, y]
                       for x in els for y in els):
                    good += 1
            n *= good
            if not n:
                break
        total += n
    G = 1
    for v in Q.vertices:
        G *= Y.at(v).order ** (X.at(v).order - 1)
    return total * rep_hom_count(X, Y) // G


def smith_diag_oracle(rows):
    """Invariant factors from gcds of k×k minors."""
    from itertools import combinations
    from math import gcd

    def det(m):
        if not m:
            return 1
        if len(m) == 1:
            return m[0][0]
        return sum((-1) ** j * m[0][j] * det([r[:j] + r[j + 1:] for r in m[1:]])
                   for j in range(len(m)))

    n, m = len(rows), len(rows[0]) if rows else 0
    ds, prev = [], 1
    for k in range(1, min(n, m) + 1):
        g = 0
        for R in combinations(range(n), k):
            for C in combinations(range(m), k):
                g = gcd(g, det([[rows[r][c] for c in C] for r in R]))
        if g == 0:
            break
        ds.append(g // prev)
        prev = g
    return ds
