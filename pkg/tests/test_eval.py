import math

import pytest

from syntaxspace import corpus
from syntaxspace.corpus import tag
from syntaxspace.evaluation import (BASELINE_METHODS, BaselineConfig,
                                    UnknownMethod, baseline_rank,
                                    content_lemmas, load_gold_answers,
                                    load_gold_relations, qa_precision,
                                    relation_prf, space_closure)
from syntaxspace.space import build_space

from conftest import SHORT_INPUT, SHORT_QUESTION, tag_corpus


class TestRelationPRF:
    def test_hand_computed(self):
        gold = {("a", "b", "subject"), ("b", "c", "subject")}
        predicted = {("a", "b", "subject"), ("b", "c", "subject"),
                     ("a", "c", "subject")}
        report = relation_prf(gold, predicted)
        assert report.precision == pytest.approx(2 / 3)
        assert report.recall == 1.0
        assert report.f1 == pytest.approx(0.8)

    def test_perfect(self):
        gold = {("a", "b", "subject")}
        report = relation_prf(gold, gold)
        assert (report.precision, report.recall, report.f1) == (1.0, 1.0, 1.0)

    def test_empty_predictions_flagged(self):
        report = relation_prf({("a", "b", "subject")}, set())
        assert report.precision_undefined
        assert report.recall == 0.0
        assert report.f1 is None

    def test_empty_gold_flagged(self):
        report = relation_prf(set(), {("a", "b", "subject")})
        assert report.recall_undefined
        assert report.precision == 0.0

    def test_f1_zero_when_no_overlap(self):
        report = relation_prf({("a", "b", "s")}, {("c", "d", "s")})
        assert report.f1 == 0.0

    def test_bounds_and_max(self):
        gold = {("a", "b", "s"), ("b", "c", "s"), ("c", "d", "s")}
        predicted = {("a", "b", "s"), ("x", "y", "s")}
        report = relation_prf(gold, predicted)
        for value in (report.precision, report.recall, report.f1):
            assert 0.0 <= value <= 1.0
        assert report.f1 <= max(report.precision, report.recall)

    def test_space_closure_includes_derived_pairs(self, short_space):
        closure = space_closure(short_space)
        assert ("np(lexrank|)", "np(algorithm|unsupervised)", "subject") in closure


class TestQAPrecision:
    def test_all_correct(self):
        gold = {"q": {1, 2, 3}}
        assert qa_precision(gold, {"q": [1, 2, 3]})[0] == 1.0

    def test_four_of_five(self):
        gold = {"q": {1, 2, 3, 4}}
        precision, correct, returned = qa_precision(gold, {"q": [1, 2, 3, 4, 9]})
        assert precision == pytest.approx(0.8)
        assert (correct, returned) == (4, 5)

    def test_micro_average(self):
        gold = {"q1": {1, 2, 3}, "q2": {7}}
        system = {"q1": [1, 2, 3, 9], "q2": [7, 8]}
        precision, correct, returned = qa_precision(gold, system)
        assert (correct, returned) == (4, 6)
        assert precision == pytest.approx(4 / 6)

    def test_k_truncation(self):
        gold = {"q": {1}}
        precision, _, returned = qa_precision(gold, {"q": [2, 3, 1]}, k=2)
        assert returned == 2
        assert precision == 0.0

    def test_empty_returns_flagged(self):
        precision, _, _ = qa_precision({"q": {1}}, {"q": []})
        assert precision is None


@pytest.fixture(scope="module")
def short_lemmas():
    tagged = tag_corpus(SHORT_INPUT)
    return [(s.sentence_id, s.lemmas()) for s in tagged]


@pytest.fixture(scope="module")
def question_lemmas():
    return tag(SHORT_QUESTION).lemmas()


class TestBaselines:

    @pytest.mark.parametrize("method", ["common_words", "jaccard",
                                        "tfidf_cosine", "unigram_lm", "bm25"])
    def test_bag_of_words_top_rank_sentence3(self, method, short_lemmas,
                                             question_lemmas):
        ranked = baseline_rank(method, question_lemmas, short_lemmas)
        assert ranked[0] == 3

    @pytest.mark.parametrize("method", ["gst", "lcs"])
    def test_sequence_methods_top_rank_sentence4(self, method, short_lemmas,
                                                 question_lemmas):
        ranked = baseline_rank(method, question_lemmas, short_lemmas)
        assert ranked[0] == 4

    @pytest.mark.parametrize("method", BASELINE_METHODS)
    def test_identical_sentence_ranks_first(self, method, short_lemmas):
        question = tag(SHORT_INPUT[3]).lemmas()
        ranked = baseline_rank(method, question, short_lemmas)
        assert ranked[0] == 4

    def test_unknown_method(self, short_lemmas, question_lemmas):
        with pytest.raises(UnknownMethod):
            baseline_rank("embedding_cosine", question_lemmas, short_lemmas)

    @pytest.mark.parametrize("method", ["bm25", "tfidf_cosine"])
    def test_reorder_invariance(self, method, short_lemmas, question_lemmas):
        reordered = list(reversed(short_lemmas))
        a = baseline_rank(method, question_lemmas, short_lemmas)
        b = baseline_rank(method, question_lemmas, reordered)
        assert a == b

    def test_tie_break_lower_id_first(self):
        sentences = [(2, ["alpha", "beta"]), (1, ["alpha", "beta"])]
        ranked = baseline_rank("common_words", ["alpha"], sentences)
        assert ranked == [1, 2]

    def test_content_lemma_filter(self):
        lemmas = tag("How does unsupervised algorithm build an extract?").lemmas()
        assert content_lemmas(lemmas) == ["unsupervised", "algorithm", "build",
                                          "extract"]

    def test_gst_min_tile(self):
        q = ["alpha", "beta", "gamma"]
        sentences = [(1, ["alpha", "beta", "gamma"]), (2, ["alpha", "delta", "beta"])]
        config = BaselineConfig(gst_min_tile=2)
        ranked = baseline_rank("gst", q, sentences, config)
        assert ranked == [1, 2]


class TestGoldLoaders:
    def test_relations(self, tmp_path):
        path = tmp_path / "gold.tsv"
        path.write_text("np(a|)\tnp(b|)\tsubject\n# comment\nvp(c|)\tvp(d|)\taction\n")
        assert load_gold_relations(path) == {
            ("np(a|)", "np(b|)", "subject"), ("vp(c|)", "vp(d|)", "action")}

    def test_answers(self, tmp_path):
        path = tmp_path / "gold.txt"
        path.write_text("Q: What is X?\nA: 3\nA: 5\nQ: Who did Y?\nA: 2\n")
        gold = load_gold_answers(path)
        assert gold == {"What is X?": {3, 5}, "Who did Y?": {2}}
