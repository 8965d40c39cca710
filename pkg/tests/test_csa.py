import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from btcst.csa import CsaIndex
from btcst.suffix import Text
from helpers import random_text, repetitive_text
from oracles import brute_psi, brute_sa, codes_of


def banana(s_A=32, s_T=128):
    return CsaIndex.build(Text.from_bytes("banana$", "$"), s_A=s_A, s_T=s_T)


def test_banana_psi():
    sa = brute_sa(codes_of("banana$"))
    expected = brute_psi(sa)
    assert expected == [5, 1, 6, 7, 4, 2, 3]
    csa = banana()
    assert csa.psi_array() == expected
    assert csa.psi(5) == expected[4] == 4


@pytest.mark.parametrize("s_A, s_T", [(1, 1), (2, 3), (32, 128)])
def test_banana_access(s_A, s_T):
    csa = banana(s_A, s_T)
    sa = brute_sa(codes_of("banana$"))
    assert csa.sa_access(4) == sa[3] == 2
    assert csa.isa_access(1) == sa.index(1) + 1 == 5
    assert csa.extract(2, 4) == "banana$"[1:4] == "ana"
    assert [csa.sa_access(i) for i in range(1, 8)] == sa


def test_run_layout():
    csa = banana()
    # runs never cross a first-symbol bucket
    for k, start in enumerate(csa.run_starts):
        end = csa.run_starts[k + 1] - 1 if k + 1 < csa.runs else csa.n
        assert csa.char_at_rank(start) == csa.char_at_rank(end)
    assert csa.bucket(1) == (2, 4)      # suffixes starting with 'a'


def test_errors():
    csa = banana()
    for bad in (0, 8):
        with pytest.raises(IndexError):
            csa.psi(bad)
        with pytest.raises(IndexError):
            csa.sa_access(bad)
        with pytest.raises(IndexError):
            csa.isa_access(bad)
    with pytest.raises(IndexError):
        csa.extract(4, 2)
    with pytest.raises(ValueError):
        CsaIndex.build(Text.from_bytes("ab"), s_A=0)


def test_repetitive_text_has_few_runs():
    rng = random.Random(3)
    raw = repetitive_text(4000, 4, rng)
    rep = CsaIndex.build(Text.from_bytes(b"ACGT" * 1000))
    rnd = CsaIndex.build(Text.from_bytes(random_text(4000, 4, rng)))
    assert rep.runs < rnd.runs / 10
    assert CsaIndex.build(Text.from_bytes(raw)).n == 4001


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 150), st.sampled_from([2, 4, 26]),
       st.booleans(), st.integers(1, 9), st.integers(1, 9))
def test_random_against_brute_force(seed, n, sigma, rep, s_A, s_T):
    rng = random.Random(seed)
    raw = (repetitive_text if rep else random_text)(n, sigma, rng)
    text = Text.from_bytes(raw)
    codes = text.symbols.tolist()
    sa = brute_sa(codes)
    csa = CsaIndex.build(text, s_A=s_A, s_T=s_T)
    assert csa.psi_array() == brute_psi(sa)
    assert [csa.sa_access(i) for i in range(1, csa.n + 1)] == sa
    assert [csa.isa_access(sa[i]) for i in range(csa.n)] == list(range(1, csa.n + 1))
    assert [csa.char_at_rank(i) for i in range(1, csa.n + 1)] == [codes[p - 1] for p in sa]
    i = rng.randint(1, csa.n)
    j = rng.randint(i, csa.n)
    assert csa.extract_codes(i, j) == codes[i - 1:j]
