import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from btcst.bitvector import ParenSeq
from btcst.blocktree import BACK, LEAF
from btcst.btct import BTCT
from btcst.suffix import Text, build_bp_topology, build_lcp, build_suffix_array
from helpers import audit_block_tree, random_bp, random_text, repetitive_text
from oracles import PointerSuffixTree, codes_of

BANANA = PointerSuffixTree(codes_of("banana$")).bp_string()
GRID = [(2, 128), (2, 2), (2, 4), (3, 1), (4, 2), (8, 1)]


def suffix_bp(raw: bytes) -> str:
    text = Text.from_bytes(raw)
    return str(build_bp_topology(build_lcp(text, build_suffix_array(text))))


def scan_min(s, i, j):
    e, best = 0, None
    for k in range(i, j + 1):
        e += 1 if s[k - 1] == "1" else -1
        best = e if best is None else min(best, e)
    return best


# -- banana worked examples, each recomputed from the scan oracle --------------------
@pytest.mark.parametrize("r, mll", GRID)
def test_banana_examples(r, mll):
    bp = ParenSeq(BANANA)
    t = BTCT(BANANA, r=r, mll=mll)
    n_leaves = bp.scan_leaf_rank(22)
    cases = [
        (t.excess(0), bp.excess(0), 0),
        (t.excess(8), bp.excess(8), 4),
        (t.excess(22), bp.excess(22), 0),
        (t.leaf_rank(22), n_leaves, 7),
        (t.leaf_rank(1), bp.scan_leaf_rank(1), 0),
        (t.leaf_rank(9), bp.scan_leaf_rank(9), 3),
        (t.leaf_select(1), bp.scan_leaf_select(1), 2),
        (t.leaf_select(7), bp.scan_leaf_select(7), BANANA.rindex("10") + 1),
        (t.leaf_select(8), bp.scan_leaf_select(8), None),
        (t.fwd_search(2, -1), bp.scan_fwd_search(2, -1), 3),
        (t.fwd_search(4, -1), bp.scan_fwd_search(4, -1), 13),
        (t.fwd_search(22, -1), bp.scan_fwd_search(22, -1), None),
        (t.bwd_search(4, -2), bp.scan_bwd_search(4, -2), 0),
        (t.bwd_search(7, -2), bp.scan_bwd_search(7, -2), 3),
        (t.min_excess(4, 13), bp.scan_min_excess(4, 13), 0),
        (t.min_excess(1, 22), bp.scan_min_excess(1, 22), 0),
        (t.parent(4), bp.parent(4), 1),
        (t.parent(7), bp.parent(7), 4),
    ]
    for got, oracle, literal in cases:
        assert got == oracle == literal
    for k in range(1, 23):
        assert t.min_excess(k, k) == (1 if BANANA[k - 1] == "1" else -1)
    short = BTCT("10", r=r, mll=mll)
    assert short.bwd_search(1, -2) is None


def test_banana_mexcess_per_node():
    t = BTCT(BANANA, r=2, mll=2)
    for _, v in t.iter_nodes():
        if v.size:
            assert v.mexcess == scan_min(BANANA, v.start + 1, v.start + v.size)


def test_errors():
    t = BTCT(BANANA, r=2, mll=4)
    with pytest.raises(ValueError):
        t.fwd_search(3, 0)
    with pytest.raises(ValueError):
        t.bwd_search(3, 2)
    with pytest.raises(IndexError):
        t.excess(23)
    with pytest.raises(IndexError):
        t.fwd_search(-1, -1)
    with pytest.raises(IndexError):
        t.min_excess(5, 4)
    with pytest.raises(IndexError):
        t.min_excess(0, 4)
    with pytest.raises(ValueError):
        BTCT("1010")
    with pytest.raises(ValueError):
        BTCT(BANANA, r=2, mll=0)


# -- field audit ---------------------------------------------------------------------
def field_audit(t: BTCT, s: str) -> int:
    """Every stored field against a direct scan of the bit string."""
    p = len(s)

    def ends_in(a, b):          # "10" pairs whose 0 lies in 0-based [a, b)
        return sum(1 for k in range(max(a, 1), b) if s[k - 1] == "1" and s[k] == "0")

    def mex(a, b):
        return scan_min(s, a + 1, b) if b > a else 0

    backs = 0
    for _, v in t.iter_nodes():
        a, b = v.start, min(v.start + v.blen, p)
        assert v.size == b - a
        assert v.rank1 == s[a:b].count("1")
        assert 0 <= v.lrank <= v.rank1 + 1 and v.lrank == ends_in(a, b)
        assert v.lbreaker == int(a > 0 and s[a - 1:a + 1] == "10")
        assert v.mexcess == mex(a, b)
        assert v.rank0 == v.size - v.rank1 and v.excess == 2 * v.rank1 - v.size
        if v.kind == LEAF:
            assert v.bits == int(s[a:b][::-1] or "0", 2)
        if v.kind != BACK:
            continue
        backs += 1
        u, o = v.target, v.off
        q, ub = u.start + o, u.start + v.blen
        assert s[q:q + v.blen] == s[a:b]
        assert v.fb_rank1 == s[q:ub].count("1")
        assert v.fb_lrank == ends_in(q, ub)
        assert v.fb_lbreaker == int(q > 0 and s[q - 1:q + 1] == "10")
        assert v.fb_rank0 == (v.blen - o) - v.fb_rank1
        assert v.pfb_rank1 == s[u.start:q].count("1")
        assert v.pfb_rank0 == s[u.start:q].count("0")
        assert v.pfb_lrank == ends_in(u.start, q)
        assert v.fb_excess == v.fb_rank1 - v.fb_rank0
        assert v.sb_excess == v.excess - v.fb_excess
        fbm = mex(q, ub)
        assert v.fb_mexcess == fbm
        assert v.m_fb == int(v.mexcess == fbm)
        if o:
            assert v.sb_mexcess == mex(ub, q + v.blen)
            assert v.mexcess == min(fbm, v.fb_excess + v.sb_mexcess)
        else:
            assert v.sb_mexcess is None
    return backs


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize("r, mll", [(2, 2), (2, 8), (3, 4), (4, 1), (8, 16)])
def test_field_audit(seed, r, mll):
    rng = random.Random(seed)
    shapes = [random_bp(rng.randint(1, 400), rng), suffix_bp(repetitive_text(rng.randint(1, 300), 2, rng))]
    for s in shapes:
        t = BTCT(s, r=r, mll=mll)
        field_audit(t, s)
        audit_block_tree(t, bytes(int(c) for c in s))


def test_field_audit_sees_backblocks():
    s = suffix_bp(b"abcab" * 60)
    t = BTCT(s, r=2, mll=4)
    assert field_audit(t, s) > 10


def test_mexcess_tie_case():
    """Both halves of a copied window reach the block minimum: m_fb is set and
    either half's minimum is recovered from the stored ones."""
    found = 0
    for seed in range(40):
        rng = random.Random(seed)
        s = suffix_bp(repetitive_text(200, 2, rng))
        t = BTCT(s, r=2, mll=4)
        for _, v in t.iter_nodes():
            if v.kind == BACK and v.off and v.fb_mexcess == v.fb_excess + v.sb_mexcess == v.mexcess:
                assert v.m_fb == 1
                assert v.xmexcess == v.sb_mexcess
                found += 1
    assert found > 0


# -- skip soundness --------------------------------------------------------------------
def _queries(bp: ParenSeq, rng, count):
    p = bp.length
    for _ in range(count):
        i = rng.randint(0, p)
        j = rng.randint(1, p)
        a, b = sorted((rng.randint(1, p), rng.randint(1, p)))
        d = -rng.randint(1, 1 + max(1, bp.excess(i)))
        yield i, j, a, b, d


@pytest.mark.parametrize("seed", range(4))
def test_skip_soundness(seed):
    rng = random.Random(seed)
    s = suffix_bp(repetitive_text(800, 4, rng)) if seed % 2 else random_bp(1500, rng)
    bp = ParenSeq(s)
    fast = BTCT(bp, r=2, mll=8)
    slow = BTCT(bp, r=2, mll=8)
    slow.skips = False
    fast_visits = slow_visits = 0
    for i, j, a, b, d in _queries(bp, rng, 600):
        for name, args in (("fwd_search", (i, d)), ("bwd_search", (j, d)), ("min_excess", (a, b))):
            x, nx = fast.count_visits(getattr(fast, name), *args)
            y, ny = slow.count_visits(getattr(slow, name), *args)
            assert x == y
            fast_visits += nx
            slow_visits += ny
        assert fast.leaf_rank(i) == slow.leaf_rank(i)
    assert fast_visits < slow_visits


def test_count_visits_is_transparent():
    t = BTCT(suffix_bp(b"abcab" * 40), r=2, mll=4)
    res, visits = t.count_visits(t.fwd_search, 5, -1)
    assert res == t.fwd_search(5, -1) and visits > 0
    assert "_fwd" not in vars(t)


# -- lca composition ------------------------------------------------------------------
def _naive_lca_table(s):
    parent, stack = {}, []
    for k, c in enumerate(s, start=1):
        if c == "1":
            parent[k] = stack[-1] if stack else None
            stack.append(k)
        else:
            stack.pop()

    def lca(v, u):
        anc = set()
        while v is not None:
            anc.add(v)
            v = parent[v]
        while u not in anc:
            u = parent[u]
        return u
    return list(parent), lca


def composed_lca(t: BTCT, v: int, u: int) -> int:
    if v > u:
        v, u = u, v
    if u <= t.close(v):
        return v
    m = t.min_excess(v, u)
    # fwd_search(v - 1, m) with m <= 0, restated as a d < 0 search from v
    return t.parent(t.fwd_search(v, m - 1) + 1)


@pytest.mark.parametrize("seed", range(4))
def test_lca_composition_all_pairs(seed):
    rng = random.Random(seed)
    raw = repetitive_text(rng.randint(40, 90), rng.choice([2, 4]), rng)
    codes = Text.from_bytes(raw).symbols.tolist()
    oracle = PointerSuffixTree(codes)
    t = BTCT(oracle.bp_string(), r=2, mll=rng.choice([2, 4, 8]))
    nodes = oracle.nodes()
    for v, u in itertools.combinations_with_replacement(nodes, 2):
        assert composed_lca(t, v, u) == oracle.lca(v, u)


def test_lca_composition_random_tree_1000():
    rng = random.Random(9)
    s = random_bp(1000, rng)
    nodes, lca = _naive_lca_table(s)
    t = BTCT(s, r=2, mll=4)
    for _ in range(20000):
        v, u = rng.choice(nodes), rng.choice(nodes)
        assert composed_lca(t, v, u) == lca(v, u)


# -- differential, small random inputs --------------------------------------------------
@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 500), st.sampled_from([2, 3, 4, 8]),
       st.sampled_from([1, 2, 4, 8, 32, 128]), st.booleans())
def test_differential_small(seed, size, r, mll, suffix_shape):
    rng = random.Random(seed)
    s = suffix_bp(random_text(size, 2, rng)) if suffix_shape else random_bp(size, rng)
    bp = ParenSeq(s)
    t = BTCT(bp, r=r, mll=mll)
    p = bp.length
    for i in range(p + 1):
        assert t.excess(i) == bp.excess(i)
        assert t.leaf_rank(i) == bp.scan_leaf_rank(i)
    for j in range(1, bp.scan_leaf_rank(p) + 2):
        assert t.leaf_select(j) == bp.scan_leaf_select(j)
    for i, j, a, b, d in _queries(bp, rng, 200):
        assert t.fwd_search(i, d) == bp.scan_fwd_search(i, d)
        assert t.bwd_search(j, d) == bp.scan_bwd_search(j, d)
        assert t.min_excess(a, b) == bp.scan_min_excess(a, b)
    for c in (0, 1):
        for j in range(1, bp.rank(c, p) + 2):
            assert t.select(c, j) == bp.select(c, j)
