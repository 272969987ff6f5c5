"""TF-IDF retrieval baseline with logistic-regression confidence calibration.

The baseline indexes NL-command training pairs, answers a query with the
top-k cosine matches, optionally prunes hits that share a template, and
optionally replaces the default confidence of 1.0 with the fitted
probability that the hit scores positively. Each stage is independently
switchable so ablations can be compared.

Weights use raw term counts times a smoothed inverse document frequency,
ln((1 + D) / (1 + df)) + 1, and vectors are L2-normalized, so cosine
similarities live in [0, 1]. Hits with zero similarity are dropped;
returning nothing is better than returning confident garbage.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence

import numpy as np

from .corpus import Example
from .errors import DegenerateLabelsError, EmptyCorpusError
from .metric import Prediction, ScoredPrediction, prediction_score
from .parser import parse
from .template import TemplateCommand, normalize_template
from .vocab import UtilityVocabulary, default_vocabulary

INDEX_FORMAT_VERSION = 1

_STRIP_CHARS = ".,!?;:()[]{}<>\"'`"
_QUOTED = re.compile(r"\"[^\"]*\"|'[^']*'")
_IP = re.compile(r"\d{1,3}(?:\.\d{1,3}){3}(?::\d+)?")
_NUMBER = re.compile(r"[+-]?\d+(?:\.\d+)?")
_PATH = re.compile(r"~?/[^\s]*|\.{1,2}/[^\s]*|[\w.*-]+\.[A-Za-z0-9]{1,4}|[^\s]*\*[^\s]*")


def normalize_nl(utterance: str) -> tuple[list[str], list[str]]:
    """Tokenize an utterance, replacing constant-like tokens with classes.

    Quoted strings, IPv4 addresses, numbers, and path/filename shapes
    become the class tokens STRING, IP, NUMBER, and PATH; the original
    literals come back in order as the second element.
    """
    tokens: list[str] = []
    constants: list[str] = []
    pieces: list[tuple[bool, str]] = []
    pos = 0
    for m in _QUOTED.finditer(utterance):
        pieces.extend((False, w) for w in utterance[pos : m.start()].split())
        pieces.append((True, m.group(0)))
        pos = m.end()
    pieces.extend((False, w) for w in utterance[pos:].split())

    for quoted, raw in pieces:
        if quoted:
            tokens.append("STRING")
            constants.append(raw[1:-1])
            continue
        word = raw.strip(_STRIP_CHARS)
        if not word:
            continue
        if _IP.fullmatch(word):
            tokens.append("IP")
            constants.append(word)
        elif _NUMBER.fullmatch(word):
            tokens.append("NUMBER")
            constants.append(word)
        elif _PATH.fullmatch(word):
            tokens.append("PATH")
            constants.append(word)
        else:
            tokens.append(word.lower())
    return tokens, constants


def plain_tokens(utterance: str) -> list[str]:
    """Raw tokenization: lowercase, punctuation-stripped words."""
    out = []
    for raw in utterance.split():
        word = raw.strip(_STRIP_CHARS).lower()
        if word:
            out.append(word)
    return out


@dataclass(frozen=True)
class IndexedDocument:
    tokens: tuple[str, ...]
    command: str
    template: TemplateCommand


@dataclass(frozen=True)
class RetrievalHit:
    command: str
    template: TemplateCommand
    similarity: float
    confidence: float = 1.0


class TfIdfIndex:
    """Immutable TF-IDF index over NL-command pairs; queries are thread-safe."""

    def __init__(
        self,
        pairs: Sequence[tuple[str, str]],
        vocab: UtilityVocabulary | None = None,
        normalize: bool = False,
    ):
        if not pairs:
            raise EmptyCorpusError("cannot index an empty corpus")
        if vocab is None:
            vocab = default_vocabulary()
        self.normalize = normalize
        self._pairs = [(str(nl), str(cmd)) for nl, cmd in pairs]
        self.documents: list[IndexedDocument] = []
        for nl, cmd in self._pairs:
            tokens = tuple(self._tokenize(nl))
            template = normalize_template(parse(cmd, vocab), vocab)
            self.documents.append(IndexedDocument(tokens, cmd, template))

        d = len(self.documents)
        self.vocabulary: dict[str, int] = {}
        for doc in self.documents:
            for term in set(doc.tokens):
                self.vocabulary[term] = self.vocabulary.get(term, 0) + 1
        self._idf = {
            term: math.log((1.0 + d) / (1.0 + df)) + 1.0 for term, df in self.vocabulary.items()
        }
        self.vectors: list[dict[str, float]] = []
        self._inverted: dict[str, list[tuple[int, float]]] = {}
        for doc_idx, doc in enumerate(self.documents):
            vec = self._vectorize(doc.tokens)
            self.vectors.append(vec)
            for term, weight in vec.items():
                self._inverted.setdefault(term, []).append((doc_idx, weight))

    def _tokenize(self, utterance: str) -> list[str]:
        if self.normalize:
            return normalize_nl(utterance)[0]
        return plain_tokens(utterance)

    def _vectorize(self, tokens: Sequence[str]) -> dict[str, float]:
        counts: dict[str, int] = {}
        for t in tokens:
            if t in self._idf:
                counts[t] = counts.get(t, 0) + 1
        vec = {t: c * self._idf[t] for t, c in counts.items()}
        norm = math.sqrt(sum(w * w for w in vec.values()))
        if norm > 0:
            vec = {t: w / norm for t, w in vec.items()}
        return vec

    def __len__(self) -> int:
        return len(self.documents)

    def save(self, path: str | Path) -> None:
        """Persist to JSON; the index is rebuilt deterministically on load."""
        payload = {
            "version": INDEX_FORMAT_VERSION,
            "normalize": self.normalize,
            "pairs": [[nl, cmd] for nl, cmd in self._pairs],
        }
        Path(path).write_text(json.dumps(payload, ensure_ascii=False), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path, vocab: UtilityVocabulary | None = None) -> "TfIdfIndex":
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        if payload.get("version") != INDEX_FORMAT_VERSION:
            raise EmptyCorpusError(f"unsupported index version: {payload.get('version')!r}")
        return cls(
            [(nl, cmd) for nl, cmd in payload["pairs"]],
            vocab=vocab,
            normalize=bool(payload["normalize"]),
        )


def build_index(
    pairs: Sequence[tuple[str, str]],
    vocab: UtilityVocabulary | None = None,
    normalize: bool = False,
) -> TfIdfIndex:
    """Index NL-command pairs. Commands must be pre-filtered (parseable)."""
    return TfIdfIndex(pairs, vocab=vocab, normalize=normalize)


def retrieve(index: TfIdfIndex, nlc: str, k: int) -> list[RetrievalHit]:
    """Top-k cosine matches, best first, zero-similarity hits dropped.

    Ties break by document insertion order. Every hit carries the default
    confidence of 1.0; calibration adjusts it separately.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if len(index) == 0:
        raise EmptyCorpusError("cannot query an empty index")
    qvec = index._vectorize(index._tokenize(nlc))
    scores: dict[int, float] = {}
    for term, qw in qvec.items():
        for doc_idx, dw in index._inverted.get(term, ()):
            scores[doc_idx] = scores.get(doc_idx, 0.0) + qw * dw
    ranked = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
    hits = []
    for doc_idx, sim in ranked[:k]:
        if sim <= 0.0:
            break
        doc = index.documents[doc_idx]
        hits.append(RetrievalHit(doc.command, doc.template, min(sim, 1.0)))
    return hits


def dedupe_hits(hits: Sequence[RetrievalHit], k: int) -> list[RetrievalHit]:
    """Keep the highest-ranked hit per distinct template, up to k of them."""
    seen: set[TemplateCommand] = set()
    out: list[RetrievalHit] = []
    for hit in hits:
        if hit.template in seen:
            continue
        seen.add(hit.template)
        out.append(hit)
        if len(out) == k:
            break
    return out


# ---------------------------------------------------------------------------
# Confidence calibration


@dataclass(frozen=True)
class CalibrationModel:
    """Logistic model over (similarity, flag count, utility count)."""

    weights: tuple[float, ...]
    bias: float
    feature_means: tuple[float, ...]
    feature_stds: tuple[float, ...]
    loss_history: tuple[float, ...] = ()

    def probability(self, features: Sequence[float]) -> float:
        z = self.bias
        for w, x, m, s in zip(self.weights, features, self.feature_means, self.feature_stds):
            z += w * (x - m) / s
        return _sigmoid(z)

    def to_json(self) -> str:
        return json.dumps(
            {
                "weights": list(self.weights),
                "bias": self.bias,
                "feature_means": list(self.feature_means),
                "feature_stds": list(self.feature_stds),
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "CalibrationModel":
        obj = json.loads(text)
        return cls(
            weights=tuple(obj["weights"]),
            bias=float(obj["bias"]),
            feature_means=tuple(obj["feature_means"]),
            feature_stds=tuple(obj["feature_stds"]),
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "CalibrationModel":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def _sigmoid(z: float) -> float:
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-z))
    e = math.exp(z)
    return e / (1.0 + e)


def hit_features(hit: RetrievalHit) -> list[float]:
    return [hit.similarity, float(hit.template.flag_count()), float(len(hit.template.units))]


def train_calibrator(
    features: Sequence[Sequence[float]],
    labels: Sequence[int],
    learning_rate: float = 0.1,
    epochs: int = 500,
) -> CalibrationModel:
    """Fit a logistic regression by full-batch gradient descent on log-loss.

    Features are standardized with training statistics that are stored in
    the model. Raises DegenerateLabelsError when only one class is
    present.
    """
    x = np.asarray(features, dtype=float)
    y = np.asarray(labels, dtype=float)
    if x.ndim != 2 or len(x) != len(y) or len(x) < 2:
        raise ValueError("need at least two (features, label) rows")
    if len(set(int(v) for v in y)) < 2:
        raise DegenerateLabelsError("calibration labels contain a single class")

    means = x.mean(axis=0)
    stds = x.std(axis=0)
    stds[stds == 0.0] = 1.0
    z = (x - means) / stds

    n, d = z.shape
    w = np.zeros(d)
    b = 0.0
    losses = []
    for _ in range(epochs):
        logits = z @ w + b
        p = 1.0 / (1.0 + np.exp(-np.clip(logits, -500, 500)))
        pc = np.clip(p, 1e-12, 1.0 - 1e-12)
        losses.append(float(-np.mean(y * np.log(pc) + (1.0 - y) * np.log(1.0 - pc))))
        grad = p - y
        w -= learning_rate * (z.T @ grad) / n
        b -= learning_rate * float(grad.mean())
    return CalibrationModel(
        weights=tuple(float(v) for v in w),
        bias=float(b),
        feature_means=tuple(float(v) for v in means),
        feature_stds=tuple(float(v) for v in stds),
        loss_history=tuple(losses),
    )


def calibrate(hits: Sequence[RetrievalHit], model: CalibrationModel) -> list[RetrievalHit]:
    """Replace each hit's confidence with its fitted positive-probability.

    Confidences are clamped to [0.01, 1.0]; ranks and commands are
    untouched.
    """
    out = []
    for hit in hits:
        p = model.probability(hit_features(hit))
        out.append(replace(hit, confidence=min(max(p, 0.01), 1.0)))
    return out


def make_calibration_data(
    pairs: Sequence[tuple[str, str]],
    vocab: UtilityVocabulary | None = None,
    holdout_fraction: float = 0.2,
    seed: int = 0,
    k: int = 5,
    normalize: bool = False,
    dedupe: bool = True,
) -> tuple[list[list[float]], list[int]]:
    """Build calibration rows by retrieving a held-out slice of the pairs.

    The held-out invocations are queried against an index over the rest;
    each hit becomes one row labeled 1 when it scores positively against
    the held-out reference.
    """
    if vocab is None:
        vocab = default_vocabulary()
    if not 0.0 < holdout_fraction < 1.0:
        raise ValueError("holdout_fraction must be in (0, 1)")
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(pairs))
    n_holdout = max(1, int(round(len(pairs) * holdout_fraction)))
    holdout_idx = set(int(i) for i in order[:n_holdout])
    train = [p for i, p in enumerate(pairs) if i not in holdout_idx]
    holdout = [p for i, p in enumerate(pairs) if i in holdout_idx]
    if not train or not holdout:
        raise ValueError("holdout split left one side empty")

    index = build_index(train, vocab=vocab, normalize=normalize)
    features: list[list[float]] = []
    labels: list[int] = []
    for nl, cmd in holdout:
        ref = normalize_template(parse(cmd, vocab), vocab)
        hits = retrieve(index, nl, k * 5 if dedupe else k)
        if dedupe:
            hits = dedupe_hits(hits, k)
        else:
            hits = hits[:k]
        for hit in hits:
            scored = ScoredPrediction(template=hit.template, delta=1.0, raw=hit.command)
            label = 1 if prediction_score(scored, [ref]) > 0.0 else 0
            features.append(hit_features(hit))
            labels.append(label)
    return features, labels


# ---------------------------------------------------------------------------
# Predictor adapter


class TfIdfPredictor:
    """Retrieval baseline exposing the harness predictor contract.

    Stages are switchable: ``dedupe`` prunes template duplicates (drawing
    from a deeper candidate pool), ``normalize`` applies constant-aware NL
    tokenization, and ``calibration`` adjusts confidences.

    Calibration is applied the way it pays off under the metric: per-hit
    positive-probabilities are combined into the chance that every hit
    scores negatively, and only when that chance crosses
    ``lower_threshold`` are the hit confidences actually lowered.
    Confidently keeping delta at 1.0 for sets that look right costs
    nothing, while lowering delta on sets that look wrong shrinks the
    penalty the averaging branch hands out.
    """

    def __init__(
        self,
        pairs: Sequence[tuple[str, str]],
        vocab: UtilityVocabulary | None = None,
        normalize: bool = False,
        dedupe: bool = False,
        calibration: CalibrationModel | None = None,
        oversample: int = 5,
        lower_threshold: float = 0.8,
    ):
        self.index = build_index(pairs, vocab=vocab, normalize=normalize)
        self.dedupe = dedupe
        self.calibration = calibration
        self.oversample = max(1, oversample)
        self.lower_threshold = lower_threshold
        self.name = "tfidf"
        if dedupe:
            self.name += "+dedupe"
        if normalize:
            self.name += "+normalize"
        if calibration is not None:
            self.name += "+calibrated"

    @classmethod
    def with_calibration(
        cls,
        pairs: Sequence[tuple[str, str]],
        vocab: UtilityVocabulary | None = None,
        normalize: bool = True,
        dedupe: bool = True,
        holdout_fraction: float = 0.2,
        seed: int = 0,
        k: int = 5,
    ) -> "TfIdfPredictor":
        """Fit a calibrator on a held-out slice, then index all pairs."""
        features, labels = make_calibration_data(
            pairs,
            vocab=vocab,
            holdout_fraction=holdout_fraction,
            seed=seed,
            k=k,
            normalize=normalize,
            dedupe=dedupe,
        )
        model = train_calibrator(features, labels)
        return cls(pairs, vocab=vocab, normalize=normalize, dedupe=dedupe, calibration=model)

    def predict(self, nlc: str, k: int) -> list[Prediction]:
        depth = k * self.oversample if self.dedupe else k
        hits = retrieve(self.index, nlc, depth)
        if self.dedupe:
            hits = dedupe_hits(hits, k)
        else:
            hits = hits[:k]
        if self.calibration is not None and hits:
            all_negative = 1.0
            for hit in hits:
                all_negative *= 1.0 - self.calibration.probability(hit_features(hit))
            if all_negative >= self.lower_threshold:
                hits = calibrate(hits, self.calibration)
        return [Prediction(cmd=h.command, confidence=h.confidence) for h in hits]


def pairs_from_examples(examples: Sequence[Example]) -> list[tuple[str, str]]:
    """Flatten examples into (invocation, reference) training pairs."""
    return [(ex.invocation, ref) for ex in examples for ref in ex.references]
