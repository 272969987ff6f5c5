import json

import pytest

from nlbash.cli import cli
from nlbash.corpus import filter_examples, save_examples
from nlbash.synth import toy_corpus
from nlbash.vocab import default_vocabulary

VOCAB = default_vocabulary()


@pytest.fixture(scope="module")
def data_file(tmp_path_factory):
    tmp = tmp_path_factory.mktemp("data")
    examples = filter_examples(toy_corpus(120, seed=17), VOCAB).kept
    path = tmp / "corpus.jsonl"
    save_examples(examples, path)
    return path


def test_parse_command(capsys):
    assert cli(["parse", "df --total | tail -n 1"]) == 0
    out = capsys.readouterr().out
    assert "df" in out and "tail" in out and "total" in out


def test_parse_json_output(capsys):
    assert cli(["parse", "find / -EXdsx -name linux", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["utilities"] == ["find"]
    assert sorted(payload["template"][0]["flags"]) == ["E", "X", "d", "name", "s", "x"]


def test_parse_bad_command_is_data_error(capsys):
    assert cli(["parse", "grep 'unterminated"]) == 2


def test_missing_file_is_data_error(tmp_path):
    assert cli(["filter", "--data", str(tmp_path / "nope.jsonl"), "--out", str(tmp_path / "o")]) == 2


def test_usage_error_exit_code(data_file, tmp_path):
    # eval without --baseline or --predictor-cmd
    assert cli(["eval", "--data", str(data_file)]) == 1
    # missing required argument entirely
    assert cli(["filter", "--data", str(data_file)]) == 1


def test_help_exits_zero():
    assert cli(["--help"]) == 0


def test_filter_writes_outputs(data_file, tmp_path, capsys):
    out = tmp_path / "kept.jsonl"
    rejected = tmp_path / "rejected.jsonl"
    code = cli(
        ["filter", "--data", str(data_file), "--out", str(out), "--rejected", str(rejected)]
    )
    assert code == 0
    assert out.exists() and rejected.exists()
    assert "kept" in capsys.readouterr().out


def test_split_roundtrip(data_file, tmp_path, capsys):
    prefix = str(tmp_path / "part")
    code = cli(
        ["split", "--data", str(data_file), "--seed", "13", "--fractions", "0.8,0.1,0.1",
         "--out-prefix", prefix]
    )
    assert code == 0
    sizes = {}
    for name in ("train", "val", "test"):
        with open(f"{prefix}.{name}.jsonl", encoding="utf-8") as fh:
            sizes[name] = sum(1 for line in fh if line.strip())
    assert sizes == {"train": 96, "val": 12, "test": 12}


def test_stats_prints_histogram(data_file, capsys):
    assert cli(["stats", "--data", str(data_file), "--top", "5"]) == 0
    out = capsys.readouterr().out
    assert len(out.strip().splitlines()) <= 5


def test_index_and_eval_baseline(data_file, tmp_path, capsys):
    index_path = tmp_path / "index.json"
    assert cli(["index", "--data", str(data_file), "--out", str(index_path)]) == 0
    assert index_path.exists()

    code = cli(
        ["eval", "--baseline", "tfidf", "--variant", "dedup", "--train", str(data_file),
         "--data", str(data_file), "--k", "5", "--format", "table"]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "Accuracy Score" in out


def test_eval_json_report(data_file, tmp_path):
    out_path = tmp_path / "report.json"
    code = cli(
        ["eval", "--baseline", "tfidf", "--variant", "raw", "--train", str(data_file),
         "--data", str(data_file), "--format", "json", "--out", str(out_path)]
    )
    assert code == 0
    report = json.loads(out_path.read_text(encoding="utf-8"))
    assert "mean_score" in report and "latency" in report
    # training data equals eval data, so self-retrieval should be strong
    assert report["mean_score"] > 0.9


def test_calibrate_writes_model(data_file, tmp_path, capsys):
    model_path = tmp_path / "model.json"
    code = cli(
        ["calibrate", "--data", str(data_file), "--out", str(model_path), "--seed", "3"]
    )
    assert code == 0
    model = json.loads(model_path.read_text(encoding="utf-8"))
    assert set(model) == {"weights", "bias", "feature_means", "feature_stds"}


def test_score_prediction_file(data_file, tmp_path, capsys):
    examples = filter_examples(toy_corpus(120, seed=17), VOCAB).kept
    pred_path = tmp_path / "preds.jsonl"
    with open(pred_path, "w", encoding="utf-8") as fh:
        for ex in examples:
            fh.write(
                json.dumps(
                    {"id": ex.id, "predictions": [{"cmd": ex.references[0], "confidence": 1.0}]}
                )
                + "\n"
            )
    assert cli(["score", "--pred", str(pred_path), "--refs", str(data_file)]) == 0
    out = capsys.readouterr().out
    assert "mean score: 1.0000" in out
