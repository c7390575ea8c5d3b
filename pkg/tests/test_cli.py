import json
import pathlib

import pytest

from syntaxspace.cli import main

from conftest import SHORT_INPUT, SHORT_QUESTION

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture()
def workspace(tmp_path):
    raw = tmp_path / "short.txt"
    raw.write_text(" ".join(SHORT_INPUT) + "\n")
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def build_short(workspace, capsys):
    corpus_snap = workspace / "corpus.snap"
    space_snap = workspace / "space.snap"
    code, _, _ = run(capsys, "ingest", workspace / "short.txt", "-o", corpus_snap)
    assert code == 0
    code, _, _ = run(capsys, "build", corpus_snap, "-o", space_snap)
    assert code == 0
    return corpus_snap, space_snap


class TestPipeline:
    def test_ingest_build_query(self, workspace, capsys):
        _, space_snap = build_short(workspace, capsys)
        code, out, _ = run(capsys, "query", space_snap, SHORT_QUESTION)
        assert code == 0
        lines = [l for l in out.splitlines() if l and l[0].isdigit()]
        assert lines[0].startswith("1\t1\tshort\t")
        assert "LexRank builds an extract" in lines[0]
        assert len(lines) == 1

    def test_query_explain(self, workspace, capsys):
        _, space_snap = build_short(workspace, capsys)
        code, out, _ = run(capsys, "query", space_snap, SHORT_QUESTION,
                           "--explain")
        assert code == 0
        assert "adverbial*: gap_filled" in out

    def test_stats(self, workspace, capsys):
        _, space_snap = build_short(workspace, capsys)
        code, out, _ = run(capsys, "stats", space_snap)
        assert code == 0
        assert "subject dimension: 4 nodes, 1 subclass relations" in out
        assert "1NF: True" in out

    def test_dump_edges_lists_subject_edge(self, workspace, capsys):
        _, space_snap = build_short(workspace, capsys)
        code, out, _ = run(capsys, "dump-edges", space_snap)
        assert code == 0
        assert ("np(lexrank|)\tnp(algorithm|unsupervised)\tsubject\t"
                "syntactic_pattern\t2") in out

    def test_dump_parse(self, workspace, capsys):
        corpus_snap, _ = build_short(workspace, capsys)
        code, out, _ = run(capsys, "dump-parse", corpus_snap)
        assert code == 0
        assert '"action": ("", "build", "")' in out

    def test_build_is_byte_identical(self, workspace, capsys):
        corpus_snap, space_snap = build_short(workspace, capsys)
        first = space_snap.read_bytes()
        code, _, _ = run(capsys, "build", corpus_snap, "-o", space_snap)
        assert code == 0
        assert space_snap.read_bytes() == first

    def test_empty_corpus_builds_with_warning(self, tmp_path, capsys):
        empty = tmp_path / "empty.snap"
        empty.write_text("")
        out_snap = tmp_path / "space.snap"
        code, _, err = run(capsys, "build", empty, "-o", out_snap)
        assert code == 0
        assert "empty corpus" in err

    def test_pretagged_ingest(self, tmp_path, capsys):
        corpus_snap = tmp_path / "corpus.snap"
        code, out, _ = run(capsys, "--tagger", "pretagged", "ingest",
                           DATA / "parse_fixtures.tsv", "-o", corpus_snap)
        assert code == 0
        assert "ingested 2 sentences" in out


class TestEvalCommands:
    def test_eval_relations(self, workspace, capsys):
        _, space_snap = build_short(workspace, capsys)
        gold = workspace / "gold.tsv"
        gold.write_text("np(lexrank|)\tnp(algorithm|unsupervised)\tsubject\n")
        code, out, _ = run(capsys, "eval", "relations", space_snap, gold)
        assert code == 0
        assert "P=100.00%" in out and "R=100.00%" in out

    def test_eval_qa(self, workspace, capsys):
        _, space_snap = build_short(workspace, capsys)
        gold = workspace / "gold_answers.txt"
        gold.write_text(f"Q: {SHORT_QUESTION}\nA: 1\n")
        code, out, _ = run(capsys, "eval", "qa", space_snap, gold)
        assert code == 0
        assert "qa precision@5 = 100.00% (1/1)" in out

    def test_eval_baselines(self, workspace, capsys):
        _, space_snap = build_short(workspace, capsys)
        gold = workspace / "gold_answers.txt"
        gold.write_text(f"Q: {SHORT_QUESTION}\nA: 1\n")
        code, out, _ = run(capsys, "--top-k", "1", "eval", "baselines",
                           space_snap, gold)
        assert code == 0
        # the bag-of-words baselines pick sentence 3, the sequence methods
        # sentence 4; none of them finds the annotated answer
        assert "common_words   precision@1 = 0.00% (0/1)" in out
        assert "lcs            precision@1 = 0.00% (0/1)" in out


class TestErrorHandling:
    def test_missing_file_is_data_error(self, tmp_path, capsys):
        code, _, err = run(capsys, "ingest", tmp_path / "nope.txt", "-o",
                           tmp_path / "out.snap")
        assert code == 2

    def test_malformed_pretagged_is_data_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.tsv"
        bad.write_text("word\tword\tXX\n")
        code, _, err = run(capsys, "--tagger", "pretagged", "ingest", bad,
                           "-o", tmp_path / "out.snap")
        assert code == 2
        assert "unknown tag" in err

    def test_unparseable_question_is_data_error(self, workspace, capsys):
        _, space_snap = build_short(workspace, capsys)
        code, _, err = run(capsys, "query", space_snap, "hello there")
        assert code == 2

    def test_usage_error(self, capsys):
        assert main(["no-such-command"]) == 1

    def test_invalid_top_k(self, workspace, capsys):
        code, _, err = run(capsys, "-k", "0", "stats", workspace / "x")
        assert code == 1


class TestConfig:
    def test_env_config(self, workspace, capsys, monkeypatch, tmp_path):
        _, space_snap = build_short(workspace, capsys)
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"top_k": 1}))
        monkeypatch.setenv("SYNTAXSPACE_CONFIG", str(config))
        texts = [
            "unsupervised algorithm builds an extract by classifying sentences.",
            "unsupervised algorithm builds an extract by selecting sentences.",
        ]
        raw = tmp_path / "two.txt"
        raw.write_text(" ".join(texts))
        corpus_snap = tmp_path / "c.snap"
        two_space = tmp_path / "s.snap"
        run(capsys, "ingest", raw, "-o", corpus_snap)
        run(capsys, "build", corpus_snap, "-o", two_space)
        code, out, _ = run(capsys, "query", two_space, SHORT_QUESTION)
        assert code == 0
        rows = [l for l in out.splitlines() if l and l[0].isdigit()]
        assert len(rows) == 1  # top_k from env config

    def test_flag_overrides_env(self, workspace, capsys, monkeypatch, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"top_k": 17}))
        monkeypatch.setenv("SYNTAXSPACE_CONFIG", str(config))
        _, space_snap = build_short(workspace, capsys)
        code, out, _ = run(capsys, "-k", "1", "query", space_snap,
                           SHORT_QUESTION)
        assert code == 0


class TestSyntheticPipeline:
    def test_eval_relations_on_synthetic_corpus(self, tmp_path, capsys):
        """Full CLI round trip over the generated corpus: ingest from raw
        text, build, then score the recovered relations against the
        generator's gold annotations."""
        import generators
        from syntaxspace.corpus import serialize_pretagged

        tagged, gold = generators.synthetic_corpus()
        corpus_snap = tmp_path / "synthetic.snap"
        corpus_snap.write_text(serialize_pretagged(tagged))
        space_snap = tmp_path / "space.snap"
        gold_path = tmp_path / "gold.tsv"
        gold_path.write_text(
            "".join(f"{c}\t{p}\t{d}\n" for c, p, d in sorted(gold)))
        code, _, _ = run(capsys, "build", corpus_snap, "-o", space_snap)
        assert code == 0
        code, out, _ = run(capsys, "eval", "relations", space_snap, gold_path)
        assert code == 0
        assert "P=100.00% R=100.00% F1=100.00%" in out

    def test_query_synthetic_space(self, tmp_path, capsys):
        import generators
        from syntaxspace.corpus import serialize_pretagged

        tagged, _ = generators.synthetic_corpus()
        corpus_snap = tmp_path / "synthetic.snap"
        corpus_snap.write_text(serialize_pretagged(tagged))
        space_snap = tmp_path / "space.snap"
        run(capsys, "build", corpus_snap, "-o", space_snap)
        code, out, _ = run(capsys, "query", space_snap,
                           "What does the unsupervised algorithm build?")
        assert code == 0
        rows = [l for l in out.splitlines() if l and l[0].isdigit()]
        assert rows, "expected at least one answer"
        for row in rows:
            text = row.split("\t")[-1]
            assert "algorithm" in text and "builds" in text


class TestSynonymsAndDumpPaths:
    def test_synonyms_flag_expands_action_search(self, tmp_path, capsys):
        raw = tmp_path / "doc.txt"
        raw.write_text("LexRank constructs an extract by selecting sentences.")
        syn = tmp_path / "syn.tsv"
        syn.write_text("build\tconstruct\n")
        corpus_snap = tmp_path / "c.snap"
        space_snap = tmp_path / "s.snap"
        run(capsys, "ingest", raw, "-o", corpus_snap)
        run(capsys, "build", corpus_snap, "-o", space_snap)
        code, out, _ = run(capsys, "query", space_snap,
                           "What does LexRank build?")
        assert code == 0 and "no answers" in out
        code, out, _ = run(capsys, "--synonyms", syn, "query", space_snap,
                           "What does LexRank build?", "--explain")
        assert code == 0
        assert "action: synonym" in out
        assert "LexRank constructs an extract" in out

    def test_dump_parse_accepts_space_snapshot(self, workspace, capsys):
        _, space_snap = build_short(workspace, capsys)
        code, out, _ = run(capsys, "dump-parse", space_snap)
        assert code == 0
        assert '"action": ("", "build", "")' in out

    def test_query_explain_notes_voice(self, tmp_path, capsys):
        raw = tmp_path / "doc.txt"
        raw.write_text("The extract is built by LexRank.")
        corpus_snap = tmp_path / "c.snap"
        space_snap = tmp_path / "s.snap"
        run(capsys, "ingest", raw, "-o", corpus_snap)
        run(capsys, "build", corpus_snap, "-o", space_snap)
        code, out, _ = run(capsys, "query", space_snap,
                           "What does LexRank build?", "--explain")
        assert code == 0
        assert "voice: passive_converted" in out
