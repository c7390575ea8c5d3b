import random

import pytest

from syntaxspace import corpus
from syntaxspace.corpus import tag
from syntaxspace.space import (ClassNode, CycleDetected, Dimension,
                               build_dimension, build_space,
                               check_normal_forms, coverage, search,
                               serialize_space, space_stats, transitive_reduce)
from syntaxspace.subsume import EdgeSet
from syntaxspace.syntax import canonical_key

from conftest import SHORT_INPUT, np, tag_corpus, vp


class TestBuildDimension:
    def test_example_corpus_subject_dimension(self, short_space):
        dim = short_space.dimensions["subject"]
        keys = set(dim.nodes)
        assert {"np(lexrank|)", "np(algorithm|unsupervised)",
                "np(algorithm|supervised)", "np(result|)"} == keys
        assert ("np(lexrank|)", "np(algorithm|unsupervised)") in dim.edges
        assert dim.postings["np(lexrank|)"] == {1, 2}
        assert dim.postings["np(algorithm|unsupervised)"] == set()

    def test_empty_dimension(self):
        dim = build_dimension("subject", [], EdgeSet())
        assert dim.nodes == {} and dim.edges == set()

    def test_chain_is_reduced(self):
        items = [
            (1, np("algorithm")),
            (2, np("algorithm", "unsupervised")),
            (3, np("algorithm", "unsupervised", "graph-based")),
        ]
        dim = build_dimension("subject", items, EdgeSet())
        assert dim.edges == {
            ("np(algorithm|graph-based unsupervised)", "np(algorithm|unsupervised)"),
            ("np(algorithm|unsupervised)", "np(algorithm|)"),
        }

    def test_merge_soundness(self, short_tagged, short_space):
        # total posting cardinality equals the number of (sentence, element)
        # inputs for each dimension
        from syntaxspace.space import sentence_elements
        expected = {name: 0 for name in ("subject", "action", "object", "adverbial")}
        for sid, parts in short_space.sentences.items():
            for part in parts:
                for name, elements in sentence_elements(part).items():
                    expected[name] += len(elements)
        for name, count in expected.items():
            total = sum(len(p) for p in short_space.dimensions[name].postings.values())
            assert total == count


class TestTransitiveReduce:
    def test_chain(self):
        assert transitive_reduce({("a", "b"), ("b", "c"), ("a", "c")}) \
            == {("a", "b"), ("b", "c")}

    def test_chain_of_four(self):
        edges = {("a", "b"), ("b", "c"), ("c", "d"), ("a", "c"), ("a", "d"),
                 ("b", "d")}
        assert transitive_reduce(edges) == {("a", "b"), ("b", "c"), ("c", "d")}

    def test_diamond(self):
        edges = {("a", "b"), ("a", "c"), ("b", "d"), ("c", "d"), ("a", "d")}
        assert transitive_reduce(edges) == {("a", "b"), ("a", "c"),
                                            ("b", "d"), ("c", "d")}

    def test_idempotent(self):
        edges = {("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")}
        assert transitive_reduce(edges) == edges

    def test_cycle_detected(self):
        with pytest.raises(CycleDetected):
            transitive_reduce({("a", "b"), ("b", "a")})

    def test_closure_preserved_on_random_dags(self):
        rng = random.Random(11)
        for _ in range(60):
            n = rng.randint(2, 12)
            nodes = [f"n{i}" for i in range(n)]
            edges = {(nodes[i], nodes[j])
                     for i in range(n) for j in range(i + 1, n)
                     if rng.random() < 0.3}
            reduced = transitive_reduce(edges)
            assert reduced <= edges
            assert _closure(reduced) == _closure(edges)
            # minimality: removing any edge changes the closure
            for edge in reduced:
                assert _closure(reduced - {edge}) != _closure(edges)


def _closure(edges):
    out = set(edges)
    changed = True
    while changed:
        changed = False
        for a, b in list(out):
            for c, d in list(out):
                if b == c and (a, d) not in out:
                    out.add((a, d))
                    changed = True
    return out


class TestSearch:
    def test_superclass_search(self, short_space):
        assert search(short_space, "subject", np("algorithm", "unsupervised")) == {1, 2}

    def test_action_search(self, short_space):
        assert search(short_space, "action", vp("build")) == {1, 4}

    def test_object_search(self, short_space):
        assert search(short_space, "object", np("extract")) == {1, 4}

    def test_no_match(self, short_space):
        assert search(short_space, "subject", np("nonexistent")) == set()

    def test_empty_dimension(self):
        space = build_space([])
        assert search(space, "subject", np("algorithm")) == set()

    def test_root_search(self, short_space):
        assert search(short_space, "subject", None) == {1, 2, 3, 4}
        assert search(short_space, "adverbial", None) == {1, 2, 4}

    def test_descendant_closure(self, short_space):
        # for any node X with descendant Y: search(Y) subset of search(X)
        for name, dim in short_space.dimensions.items():
            for child, parent in dim.edges:
                child_hits = search(short_space, name, dim.nodes[child].element)
                parent_hits = search(short_space, name, dim.nodes[parent].element)
                assert child_hits <= parent_hits


class TestCoverage:
    def test_example_corpus(self, short_space):
        report = coverage(short_space)
        assert report.total == 4
        assert report.covered["subject"] == 4
        assert report.covered["action"] == 4
        assert report.covered["object"] == 4
        assert report.union_covered == 4
        assert report.intersection_covered == 4

    def test_imperative(self):
        space = build_space(tag_corpus(["Run the test."]))
        report = coverage(space)
        assert report.covered["subject"] == 0
        assert report.covered["action"] == 1
        assert report.ratios["subject"] == 0.0

    def test_empty_corpus_flagged(self):
        report = coverage(build_space([]))
        assert report.empty
        assert report.ratios["subject"] is None


class TestNormalForms:
    def test_example_corpus(self, short_space):
        report = check_normal_forms(short_space)
        assert report.first_nf
        assert report.second_nf
        assert report.third_nf
        assert report.subspace_sentences == 4

    def test_injected_duplicate_breaks_1nf(self, short_space):
        report = check_normal_forms(short_space)
        assert report.first_nf
        # simulate a duplicate coordinate by hand
        from syntaxspace.space import NFReport
        dim = short_space.dimensions["subject"]
        bogus = dict(dim.nodes)
        try:
            dim.nodes = BogusDupDict(bogus)
            broken = check_normal_forms(short_space)
            assert not broken.first_nf
        finally:
            dim.nodes = bogus

    def test_imperative_breaks_3nf(self):
        space = build_space(tag_corpus([
            "Run the test.",
            "LexRank builds an extract.",
        ]))
        report = check_normal_forms(space)
        assert report.second_nf
        assert not report.third_nf
        assert not report.full_coverage["subject"]
        assert report.full_coverage["action"]
        # the subspace excluding the imperative attains 3NF
        assert report.subspace_sentences == 1


class BogusDupDict(dict):
    """Iterates one key twice to simulate a duplicate coordinate."""

    def __iter__(self):
        keys = list(super().__iter__())
        if keys:
            keys.append(keys[0])
        return iter(keys)


class TestDeterminism:
    def test_rebuild_identical(self, short_tagged):
        first = build_space(tag_corpus(SHORT_INPUT, doc_id="short"))
        second = build_space(tag_corpus(SHORT_INPUT, doc_id="short"))
        corpus_text = corpus.serialize_pretagged(tag_corpus(SHORT_INPUT, doc_id="short"))
        assert serialize_space(first, corpus_text) == serialize_space(second, corpus_text)

    def test_stats_shape(self, short_space):
        lines = space_stats(short_space)
        assert len(lines) == 4
        assert lines[0].startswith("subject dimension:")
