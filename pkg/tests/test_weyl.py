import pytest
from hypothesis import given, strategies as st

from symplabic import weyl
from symplabic.errors import ParseError


def test_generators_in_small_sizes():
    assert weyl.gen(4, 2) == (1, 3, 2, 4)
    assert weyl.gen(5, 2) == (1, 4, 3, 2, 5)
    assert weyl.gen(4, 1) == (2, 1, 4, 3)
    for n in range(2, 8):
        for s in weyl.gens(n):
            assert weyl.compose(s, s) == weyl.identity(n)


def test_statistics_of_double_transposition():
    w = (3, 4, 1, 2)
    assert (weyl.inv_count(w), weyl.neg_count(w), weyl.length(w)) == (4, 2, 3)
    assert weyl.word_product(4, weyl.reduced_word(w)) == w
    assert sorted(weyl.reduced_word(w)) == [1, 2, 2]
    assert weyl.length(weyl.identity(4)) == 0
    assert weyl.reduced_word(weyl.identity(5)) == []


def test_statistics_of_middle_generator_in_size_five():
    s = weyl.gen(5, 2)
    assert (weyl.inv_count(s), weyl.neg_count(s), weyl.length(s)) == (3, 1, 1)


@pytest.mark.parametrize("n, order", [(2, 2), (3, 2), (4, 8), (5, 8), (6, 48), (7, 48)])
def test_group_is_the_centralizer(n, order):
    elements = weyl.group_elements(n)
    assert len(elements) == order
    assert elements == weyl.centralizer_by_search(n)


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_length_formula_is_the_word_metric(n):
    dist = weyl.cayley_distances(n)
    for w in weyl.group_elements(n):
        assert weyl.length(w) == dist[w]
        word = weyl.reduced_word(w)
        assert len(word) == dist[w]
        assert weyl.word_product(n, word) == w


@pytest.mark.parametrize("n", [4, 5])
def test_reduced_words_use_the_middle_generator_neg_times(n):
    k = n // 2
    for w in weyl.group_elements(n):
        for word in weyl.all_reduced_words(w):
            assert word.count(k) == weyl.neg_count(w)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_inversions_add_up_along_reduced_words(n):
    for w in weyl.group_elements(n):
        word = weyl.reduced_word(w)
        assert sum(weyl.inv_count(weyl.gen(n, i)) for i in word) == weyl.inv_count(w)
        assert len(weyl.type_a_expand(n, word)) == weyl.inv_count(w)


def test_length_is_subadditive():
    elements = weyl.group_elements(6)
    for u in elements[::5]:
        for v in elements[::7]:
            assert weyl.length(weyl.compose(u, v)) <= weyl.length(u) + weyl.length(v)


def test_type_a_expansions():
    assert weyl.type_a_expand(5, [2]) == [2, 3, 2]
    assert weyl.type_a_expand(4, [1]) == [1, 3]
    assert weyl.type_a_expand(4, [-1]) == [-1, -3]


def test_double_words():
    assert weyl.word_to_pair(4, [1, -1]) == (weyl.gen(4, 1), weyl.gen(4, 1))
    assert weyl.is_reduced_double(4, [1, -1])
    assert not weyl.is_reduced_double(4, [1, 1])
    assert weyl.is_reduced_double(4, [1, -2, 2])
    assert not weyl.is_reduced_double(4, [1, -2, 1])


@given(st.randoms(use_true_random=False))
def test_shuffles_of_reduced_words_are_reduced(r):
    n = 6
    elements = weyl.group_elements(n)
    u, v = r.choice(elements), r.choice(elements)
    neg = [-i for i in weyl.reduced_word(u)]
    pos = list(weyl.reduced_word(v))
    dw = []
    while neg or pos:
        src = neg if (neg and (not pos or r.random() < 0.5)) else pos
        dw.append(src.pop(0))
    assert weyl.is_reduced_double(n, dw)
    assert weyl.word_to_pair(n, dw) == (u, v)


def test_parsing():
    assert weyl.parse_perm("3 4 1 2") == (3, 4, 1, 2)
    assert weyl.parse_word("1 -2 2") == [1, -2, 2]
    assert weyl.format_word([1, -2, 2]) == "1 -2 2"
    with pytest.raises(ParseError):
        weyl.parse_perm("1 1 2")
    with pytest.raises(ParseError):
        weyl.parse_word("1 x")
