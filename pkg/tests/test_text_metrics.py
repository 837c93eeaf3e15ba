import pytest
from hypothesis import given, settings, strategies as st

from faithcurve.errors import EmptySummary
from faithcurve.text_metrics import (
    Fragment,
    extractiveness,
    extractiveness_text,
    greedy_fragments,
    novelty_spans,
    tokenize,
)
from oracles import naive_fragments, naive_metrics


@pytest.mark.parametrize(
    "text, expected",
    [
        ("Drink plenty of water.", ["drink", "plenty", "of", "water"]),
        ("", []),
        ("A  B\tA", ["a", "b", "a"]),
        ("  ...  ", []),
        ("(Hello), world!!", ["hello", "world"]),
        ("don't stop-gap", ["don't", "stop-gap"]),
        ("Ünïcode SPACE x", ["ünïcode", "space", "x"]),
    ],
)
def test_tokenize(text, expected):
    assert list(tokenize(text).tokens) == expected


@given(st.text())
def test_tokenize_deterministic_and_clean(text):
    a, b = tokenize(text), tokenize(text)
    assert a == b
    assert all(tok and not any(ch.isspace() for ch in tok) for tok in a.tokens)


def test_greedy_examples():
    d = greedy_fragments(["a", "b", "c", "d"], ["a", "b", "x"])
    assert d.fragments == (Fragment(0, 0, 2),)
    # maximal L=2 at article index 3 beats L=1 at index 0
    d = greedy_fragments(["a", "c", "b", "a", "b"], ["a", "b"])
    assert d.fragments == (Fragment(0, 3, 2),)
    words = list("abcabd")
    d = greedy_fragments(words, words)
    assert d.fragments == (Fragment(0, 0, 6),)


def test_tie_takes_smallest_article_start():
    d = greedy_fragments(["x", "a", "b", "y", "a", "b"], ["a", "b"])
    assert d.fragments == (Fragment(0, 1, 2),)


def test_empty_summary_is_an_error():
    with pytest.raises(EmptySummary):
        greedy_fragments(["a"], [])
    with pytest.raises(EmptySummary):
        extractiveness_text("some article", "!!!")


def test_extractiveness_examples():
    n = 7
    words = [f"w{i}" for i in range(n)]
    m = extractiveness(words, words)
    assert (m.coverage, m.density, m.summary_len) == (1.0, n, n)
    m = extractiveness(["a", "b"], ["c", "d", "e"])
    assert (m.coverage, m.density) == (0.0, 0.0)
    m = extractiveness(["a", "b", "c", "d"], ["a", "b", "x"])
    assert m.coverage == pytest.approx(2 / 3)
    assert m.density == pytest.approx(4 / 3)


def test_novelty_spans():
    assert novelty_spans(["a", "b", "c"], ["b", "c"]) == []
    assert novelty_spans(["a", "b"], ["a", "b", "x"]) == [(2, 3)]
    assert novelty_spans(["a"], ["x", "y", "z"]) == [(0, 3)]
    assert novelty_spans(["a", "b"], ["x", "a", "y", "z", "b"]) == [(0, 1), (2, 4)]


def test_table_example_highlighting():
    # the Q4 output copies every word; the baseline adds only "search"
    article = ("Once you decide what to outsource, look for the right contractors. "
               "Alternately, you can connect with contractors and freelancers on sites such as eLance. "
               "Contractors respond with their qualifications and rates to do the work on a bid.")
    q4 = "Look for contractors and freelancers to bid on the work."
    assert extractiveness_text(article, q4).coverage == 1.0
    base = tokenize("Search for contractors and freelancers to outsource the work.")
    spans = novelty_spans(tokenize(article), base)
    assert [base.tokens[s:e] for s, e in spans] == [("search",)]


tokens = st.lists(st.sampled_from("abcde"), max_size=30)
nonempty = st.lists(st.sampled_from("abcde"), min_size=1, max_size=12)


@given(tokens, nonempty)
@settings(max_examples=300)
def test_fragment_properties(article, summary):
    d = greedy_fragments(article, summary)
    assert [(f.summary_start, f.article_start, f.length) for f in d.fragments] == naive_fragments(article, summary)
    end = 0
    for f in d.fragments:
        assert f.summary_start >= end
        end = f.summary_start + f.length
        assert summary[f.summary_start:end] == article[f.article_start:f.article_start + f.length]
        # cannot be extended by one more token anywhere in the article
        if end < len(summary):
            longer = summary[f.summary_start:end + 1]
            assert not any(article[j:j + len(longer)] == longer for j in range(len(article)))
    covered = {i for f in d.fragments for i in range(f.summary_start, f.summary_start + f.length)}
    for i in set(range(len(summary))) - covered:
        assert summary[i] not in article

    m = extractiveness(article, summary)
    assert 0 <= m.coverage <= 1
    assert m.coverage <= m.density <= len(summary)
    assert (m.coverage == 1) == (len(covered) == len(summary))
    assert (m.coverage, m.density) == pytest.approx(naive_metrics(article, summary))

    spans = novelty_spans(article, summary)
    novel = {i for s, e in spans for i in range(s, e)}
    assert novel == set(range(len(summary))) - covered
