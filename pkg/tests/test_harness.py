import json
import os
import sys
import textwrap
import time

import pytest

from nlbash.corpus import Example, Source, filter_examples
from nlbash.errors import EmptyDatasetError, EmptySampleError
from nlbash.harness import (
    EvaluationReport,
    LatencyStats,
    ReplayPredictor,
    SubprocessPredictor,
    emit_report,
    evaluate,
    measure_latency,
    score_prediction_file,
)
from nlbash.metric import Prediction, dataset_score
from nlbash.synth import toy_corpus
from nlbash.vocab import default_vocabulary

VOCAB = default_vocabulary()


def dataset(n=20, seed=1):
    return filter_examples(toy_corpus(n, seed=seed), VOCAB).kept


class OraclePredictor:
    """Returns the first reference verbatim."""

    name = "oracle"

    def __init__(self, examples):
        self._by_invocation = {e.invocation: e.references[0] for e in examples}

    def predict(self, nlc, k):
        return [Prediction(self._by_invocation[nlc], 1.0)]


class ConstantPredictor:
    def __init__(self, cmd, confidence=1.0):
        self.cmd = cmd
        self.confidence = confidence

    def predict(self, nlc, k):
        return [Prediction(self.cmd, self.confidence)]


class FailingPredictor:
    def predict(self, nlc, k):
        raise RuntimeError("boom")


class SilentPredictor:
    def predict(self, nlc, k):
        return []


def test_oracle_predictor_scores_exactly_one():
    data = dataset(25, seed=2)
    report = evaluate(OraclePredictor(data), data, k=5, vocab=VOCAB)
    assert report.mean_score == 1.0
    assert report.unparseable_prediction_count == 0
    assert report.predictor_failure_count == 0


def test_fixed_wrong_utility_scores_minus_one():
    data = [
        Example("1", "make a directory", ("mkdir d",), Source.OTHER),
        Example("2", "make another directory", ("mkdir e",), Source.OTHER),
    ]
    report = evaluate(ConstantPredictor("touch d"), data, k=5, vocab=VOCAB)
    assert report.mean_score == -1.0


def test_unparseable_prediction_scores_minus_delta():
    data = [Example("1", "list", ("ls",), Source.OTHER)]
    report = evaluate(ConstantPredictor("frobnicate -x", confidence=0.5), data, vocab=VOCAB)
    assert report.unparseable_prediction_count == 1
    assert report.per_example[0].score.per_prediction == (-0.5,)
    assert report.mean_score == -0.5


def test_predictor_failure_recorded_and_scored_minus_one():
    data = dataset(5, seed=3)
    report = evaluate(FailingPredictor(), data, vocab=VOCAB)
    assert report.predictor_failure_count == len(data)
    assert report.mean_score == -1.0
    assert all(r.error for r in report.per_example)


def test_empty_prediction_set_abstains_at_zero():
    data = dataset(4, seed=4)
    report = evaluate(SilentPredictor(), data, vocab=VOCAB)
    assert report.mean_score == 0.0


def test_mean_score_equals_dataset_score_of_examples():
    data = dataset(30, seed=5)
    report = evaluate(ConstantPredictor("ls -la /tmp"), data, vocab=VOCAB)
    assert report.mean_score == pytest.approx(
        dataset_score([r.score for r in report.per_example]), abs=1e-12
    )
    assert len(report.per_example) == len(data)


def test_report_fields_deterministic_given_fixed_predictor():
    data = dataset(15, seed=6)
    predictor = ConstantPredictor("ls")
    a = evaluate(predictor, data, vocab=VOCAB)
    b = evaluate(predictor, data, vocab=VOCAB)
    assert a.mean_score == b.mean_score
    assert a.dataset_fingerprint == b.dataset_fingerprint
    assert [r.score for r in a.per_example] == [r.score for r in b.per_example]


def test_excess_predictions_truncated_to_k():
    class Chatty:
        def predict(self, nlc, k):
            return [Prediction("ls", 1.0)] * 10

    data = dataset(3, seed=7)
    report = evaluate(Chatty(), data, k=2, vocab=VOCAB)
    assert all(len(r.score.per_prediction) == 2 for r in report.per_example)


def test_empty_dataset_rejected():
    with pytest.raises(EmptyDatasetError):
        evaluate(ConstantPredictor("ls"), [], vocab=VOCAB)


# --- latency -----------------------------------------------------------------

def test_measure_latency_counts_warmup_separately():
    calls = []

    class Counting:
        def predict(self, nlc, k):
            calls.append(nlc)
            return []

    sample = ["a", "b", "c"]
    stats = measure_latency(Counting(), sample, warmup=2, k=5)
    assert len(calls) == 5  # 2 warmup + 3 measured
    assert stats.mean >= 0.0


def test_measure_latency_empty_sample_rejected():
    with pytest.raises(EmptySampleError):
        measure_latency(ConstantPredictor("ls"), [], warmup=0)


def test_latency_stats_percentile():
    stats = LatencyStats.from_samples([0.01] * 99 + [1.0])
    assert stats.p95 == 0.01
    assert stats.median == 0.01
    single = LatencyStats.from_samples([0.5])
    assert single.p95 == 0.5


# --- reporting -----------------------------------------------------------------

def test_report_json_round_trip():
    data = dataset(10, seed=8)
    report = evaluate(OraclePredictor(data), data, vocab=VOCAB)
    payload = emit_report(report, "json")
    loaded = EvaluationReport.from_json(payload.decode("utf-8"))
    assert loaded.mean_score == report.mean_score
    assert loaded.dataset_fingerprint == report.dataset_fingerprint
    assert loaded.per_example == report.per_example
    assert loaded.latency == report.latency


def test_report_table_contains_leaderboard_columns():
    data = dataset(5, seed=9)
    report = evaluate(OraclePredictor(data), data, vocab=VOCAB)
    table = emit_report(report, "table").decode("utf-8")
    assert "Accuracy Score" in table
    assert "Latency (sec)" in table


def test_emit_report_empty_rejected():
    report = EvaluationReport(
        predictor="x",
        k=5,
        per_example=[],
        mean_score=0.0,
        latency=LatencyStats(0.0, 0.0, 0.0),
        dataset_fingerprint="",
    )
    with pytest.raises(EmptyDatasetError):
        emit_report(report, "json")


# --- offline scoring -------------------------------------------------------------

def write_predictions(path, data, predictor, k=5):
    with open(path, "w", encoding="utf-8") as fh:
        for ex in data:
            preds = predictor.predict(ex.invocation, k)
            fh.write(
                json.dumps(
                    {
                        "id": ex.id,
                        "predictions": [
                            {"cmd": p.cmd, "confidence": p.confidence} for p in preds
                        ],
                    }
                )
                + "\n"
            )


def test_offline_score_matches_live_evaluation(tmp_path):
    data = dataset(20, seed=10)
    predictor = OraclePredictor(data)
    live = evaluate(predictor, data, k=5, vocab=VOCAB)

    path = tmp_path / "preds.jsonl"
    write_predictions(path, data, predictor)
    offline = score_prediction_file(str(path), data, k=5, vocab=VOCAB)
    assert offline.mean_score == live.mean_score
    assert [r.score for r in offline.per_example] == [r.score for r in live.per_example]


def test_replay_predictor_missing_id_abstains():
    data = dataset(3, seed=11)
    replay = ReplayPredictor([e.id for e in data], {})
    report = evaluate(replay, data, vocab=VOCAB)
    assert report.mean_score == 0.0


# --- subprocess protocol -----------------------------------------------------------

ECHO_PREDICTOR = textwrap.dedent(
    """
    import json, sys
    for line in sys.stdin:
        request = json.loads(line)
        reply = [{"cmd": "ls -la", "confidence": 0.9}]
        sys.stdout.write(json.dumps(reply) + "\\n")
        sys.stdout.flush()
    """
)


def test_subprocess_predictor_round_trip(tmp_path):
    script = tmp_path / "predictor.py"
    script.write_text(ECHO_PREDICTOR, encoding="utf-8")
    data = [Example("1", "list files", ("ls -la",), Source.OTHER)]
    with SubprocessPredictor([sys.executable, str(script)]) as predictor:
        report = evaluate(predictor, data, k=5, vocab=VOCAB)
    assert report.mean_score == pytest.approx(0.9)


def test_subprocess_predictor_protocol_error(tmp_path):
    script = tmp_path / "bad.py"
    script.write_text("import sys; sys.stdin.readline(); print('not json')", encoding="utf-8")
    data = [Example("1", "list files", ("ls",), Source.OTHER)]
    with SubprocessPredictor([sys.executable, str(script)]) as predictor:
        report = evaluate(predictor, data, k=5, vocab=VOCAB)
    # protocol violations surface as predictor failures, scored -1
    assert report.predictor_failure_count == 1
    assert report.mean_score == -1.0
