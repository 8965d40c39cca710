"""Input generators shared by the test modules."""
import random

from btcst.corpus import gen_bytes


def random_bp(n_nodes: int, rng: random.Random) -> str:
    """BP string of a random tree built by random parent attachment."""
    parent = [None] + [rng.randrange(k) for k in range(1, n_nodes)]
    kids = [[] for _ in range(n_nodes)]
    for v in range(1, n_nodes):
        kids[parent[v]].append(v)
    out, stack = [], [(0, False)]
    while stack:
        v, done = stack.pop()
        if done:
            out.append("0")
            continue
        out.append("1")
        stack.append((v, True))
        stack.extend((c, False) for c in reversed(kids[v]))
    return "".join(out)


def random_text(n: int, sigma: int, rng: random.Random) -> bytes:
    letters = bytes(range(ord("a"), ord("a") + sigma))
    return bytes(rng.choice(letters) for _ in range(n))


def repetitive_text(n: int, sigma: int, rng: random.Random) -> bytes:
    """Mutated copies of a short random base, cut to length n."""
    letters = bytes(range(ord("a"), ord("a") + sigma))
    base = max(4, n // rng.choice([2, 4, 8, 16]))
    copies = -(-n // base)
    return gen_bytes(base, copies, rng.choice([0.0, 0.005, 0.02]), rng.randrange(2**31), letters)[:n]


def audit_block_tree(tree, seq: bytes) -> int:
    """Check every level of a BlockTree or BTCT against ``seq`` directly.

    BackBlocks must copy an earlier window whose blocks are not BackBlocks,
    and that window must be the leftmost occurrence among windows covered by
    the level's blocks; a block that has such an occurrence must be a
    BackBlock.  Returns the number of BackBlocks verified.
    """
    from btcst.blocktree import BACK, INTERNAL, LEAF

    p = len(seq)
    checked = 0
    for d, row in enumerate(tree.nodes):
        blen = tree.levels[d].blen
        starts = [v.start for v in row]
        assert starts == sorted(starts) and all(s < p for s in starts)
        covered = bytearray(p)
        for s in starts:
            covered[s:min(s + blen, p)] = b"\1" * (min(s + blen, p) - s)
        for k, v in enumerate(row):
            assert v.size == min(blen, p - v.start)
            if v.kind == LEAF:
                assert blen <= tree.mll or len(tree.nodes) == 1
                continue
            assert blen > tree.mll, "internal or back block at leaf size"
            if v.kind == INTERNAL:
                kids = v.children
                assert kids and kids[0].start == v.start
                assert all(b.start - a.start == kids[0].blen for a, b in zip(kids, kids[1:]))
            if v.start + blen > p:
                assert v.kind != BACK
                continue
            block = seq[v.start:v.start + blen]
            q = seq.find(block)
            while q >= 0 and not all(covered[q:q + blen]):
                q = seq.find(block, q + 1)
            if v.kind == BACK:
                t = v.target
                src = t.start + v.off
                assert t.kind != BACK, "BackBlock points at a BackBlock"
                assert 0 <= v.off < blen and src < v.start
                assert seq[src:src + blen] == block, "BackBlock content differs from its source"
                assert src == q, "source is not the leftmost occurrence"
                if v.off:
                    assert v.target_next.kind != BACK, "BackBlock spans a BackBlock"
                    assert v.target_next.start == t.start + blen
                checked += 1
            else:
                # greedy completeness: an admissible earlier occurrence forces a BackBlock
                if q < v.start:
                    w = max(j for j, s in enumerate(starts) if s <= q)
                    spans = [w] if q == starts[w] else [w, w + 1]
                    admissible = spans[-1] < k and all(row[j].kind != BACK for j in spans)
                    assert not admissible, f"block at {v.start} has an admissible source {q}"
    return checked


def _outcome(fn, *args):
    try:
        return fn(*args)
    except (ValueError, IndexError) as exc:
        return ("error", type(exc).__name__)


def compare_cst(cst, oracle, nodes, rng: random.Random) -> list:
    """Run all sixteen operations on ``nodes`` against the pointer oracle.

    Second nodes, depths, letter indexes and symbols are drawn from ``rng``;
    every symbol code (plus one absent code) is tried for child.  Returns
    the mismatches as (op, args, got, expected) tuples.
    """
    every = oracle.nodes()
    sigma = oracle.sigma
    bad = []

    def check(op, args, got, want):
        if got != want:
            bad.append((op, args, got, want))

    check("root", (), cst.root(), oracle.root())
    for v in nodes:
        u = rng.choice(every)
        depth = oracle.tree_depth(v)
        sd = oracle.string_depth(v)
        plain = ("is_leaf", "first_child", "next_sibling", "previous_sibling", "parent",
                 "tree_depth", "string_depth", "suffix_link")
        calls = [(op, (v,)) for op in plain]
        calls += [("is_ancestor", (v, u)), ("is_ancestor", (u, v)), ("lca", (v, u)),
                  ("level_ancestor", (v, rng.randint(0, depth))),
                  ("level_ancestor", (v, depth + 1)),
                  ("string_ancestor", (v, rng.randint(0, sd))),
                  ("string_ancestor", (v, sd + 1)),
                  ("letter_code", (v, rng.randint(1, max(1, sd)))),
                  ("letter_code", (v, sd + 1))]
        calls += [(op, (v, c)) for c in range(sigma + 2) for op in ("child_linear", "child_binary")]
        for op, args in calls:
            check(op, args, _outcome(getattr(cst, op), *args), _outcome(getattr(oracle, op), *args))
        if sd:
            i = rng.randint(1, sd)
            check("letter", (v, i), cst.letter(v, i), chr(cst.alphabet[oracle.letter(v, i)]))
    return bad


def child_mismatches(cst, nodes) -> list:
    """(node, code) pairs where child_binary and child_linear disagree."""
    return [(v, c) for v in nodes for c in range(cst.sigma + 2)
            if cst.child_binary(v, c) != cst.child_linear(v, c)]
