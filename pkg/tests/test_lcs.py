import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmdist import (
    CapacityError,
    Interner,
    SymbolSeq,
    is_subsequence,
    lcs_len,
    lcs_len_bitparallel,
    lcs_len_bruteforce,
    lcs_len_dp,
    lcs_len_hunt_szymanski,
    scs_len,
)
from helpers import seq, symbol_seqs

ALL_ENGINES = [
    lcs_len_dp,
    lcs_len_bitparallel,
    lcs_len_hunt_szymanski,
    lcs_len_bruteforce,
]

EXACT_ENGINES = ["dp", "bitparallel", "huntszymanski"]


# -- interner -----------------------------------------------------------------


def test_interner_assigns_dense_stable_ids():
    it = Interner()
    a = it.intern("x")
    b = it.intern("y")
    assert (a, b) == (0, 1)
    assert it.intern("x") == 0
    assert it.alphabet_size == 2


def test_interner_seq_roundtrip():
    it = Interner()
    s = it.seq("abcabc")
    assert s.ids == (0, 1, 2, 0, 1, 2)
    assert it.alphabet_size == 3


def test_symbolseq_basics():
    s = SymbolSeq((1, 2, 3))
    assert len(s) == 3
    assert list(s) == [1, 2, 3]
    assert s[1] == 2
    assert SymbolSeq([1, 2, 3]) == s  # coerced to tuple
    assert len(SymbolSeq(())) == 0


# -- fixed examples -----------------------------------------------------------


@pytest.mark.parametrize("engine", ALL_ENGINES)
def test_empty_against_anything(engine):
    assert engine(seq(""), seq("xyz")) == 0
    assert engine(seq(""), seq("")) == 0


@pytest.mark.parametrize("engine", ALL_ENGINES)
def test_identical_strings(engine):
    assert engine(seq("abc"), seq("abc")) == 3
    assert engine(seq("aaaa"), seq("aaaa")) == 4


@pytest.mark.parametrize("engine", ALL_ENGINES)
def test_classic_pair(engine):
    # brute force over all subsequences of the shorter string gives 4
    assert lcs_len_bruteforce(seq("ABCBDAB"), seq("BDCABA")) == 4
    assert engine(seq("ABCBDAB"), seq("BDCABA")) == 4


def test_disjoint_alphabets():
    assert lcs_len_hunt_szymanski(seq("abc"), seq("def")) == 0
    assert lcs_len(seq("abc"), seq("def")) == 0


def test_dispatcher_examples():
    a, b = seq("ABCBDAB"), seq("BDCABA")
    assert lcs_len(a, b, "auto") == 4
    for e in EXACT_ENGINES:
        assert lcs_len(a, b, e) == 4
    assert lcs_len(a, a, "auto") == len(a)


def test_dispatcher_rejects_unknown_engine():
    with pytest.raises(ValueError):
        lcs_len(seq("a"), seq("b"), "quantum")


def test_bruteforce_guard():
    long = seq("a" * 21)
    with pytest.raises(CapacityError):
        lcs_len(long, long, "bruteforce")


def test_scs_examples():
    assert scs_len(seq(""), seq("hello")) == 5
    assert scs_len(seq("abc"), seq("abc")) == 3
    assert scs_len(seq("abc"), seq("abd")) == 4


def test_subsequence_examples():
    assert is_subsequence(seq(""), seq("abc"))
    assert is_subsequence(seq("ace"), seq("abcde"))
    assert lcs_len(seq("ace"), seq("abcde")) == 3
    assert not is_subsequence(seq("ba"), seq("ab"))
    assert lcs_len(seq("ba"), seq("ab")) == 1
    assert not is_subsequence(seq("a"), seq(""))


# -- properties ---------------------------------------------------------------


@given(a=symbol_seqs(3, 12), b=symbol_seqs(3, 12))
@settings(max_examples=300, deadline=None)
def test_engines_agree_with_bruteforce(a, b):
    expected = lcs_len_bruteforce(a, b)
    assert lcs_len_dp(a, b) == expected
    assert lcs_len_bitparallel(a, b) == expected
    assert lcs_len_hunt_szymanski(a, b) == expected
    assert lcs_len(a, b) == expected


@given(a=symbol_seqs(4, 96), b=symbol_seqs(4, 96))
@settings(max_examples=150, deadline=None)
def test_exact_engines_agree_on_larger_inputs(a, b):
    results = {
        lcs_len_dp(a, b),
        lcs_len_bitparallel(a, b),
        lcs_len_hunt_szymanski(a, b),
    }
    assert len(results) == 1


@given(a=symbol_seqs(4, 40), b=symbol_seqs(4, 40))
@settings(max_examples=200, deadline=None)
def test_bounds_and_symmetry(a, b):
    v = lcs_len(a, b)
    assert 0 <= v <= min(len(a), len(b))
    assert v == lcs_len(b, a)
    s = scs_len(a, b)
    assert s == scs_len(b, a)
    assert max(len(a), len(b)) <= s <= len(a) + len(b)


@given(a=symbol_seqs(4, 30), b=symbol_seqs(4, 30), sym=st.integers(0, 3))
@settings(max_examples=200, deadline=None)
def test_appending_shared_symbol_increments(a, b, sym):
    before = lcs_len(a, b)
    after = lcs_len(SymbolSeq(a.ids + (sym,)), SymbolSeq(b.ids + (sym,)))
    assert after == before + 1


@given(a=symbol_seqs(3, 24), b=symbol_seqs(3, 24))
@settings(max_examples=300, deadline=None)
def test_subsequence_iff_lcs_saturates(a, b):
    assert is_subsequence(a, b) == (lcs_len(a, b) == len(a))
