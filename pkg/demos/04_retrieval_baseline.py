"""Walk through the TF-IDF baseline and its ablation ladder.

Run:  python3 demos/04_retrieval_baseline.py   (takes a few seconds)
"""

from nlbash import build_index, build_splits, dedupe_hits, filter_examples, normalize_nl, retrieve
from nlbash.harness import evaluate
from nlbash.retrieval import TfIdfPredictor, pairs_from_examples
from nlbash.synth import toy_corpus

# Constant-aware NL normalization: names, numbers, addresses, and paths
# become class tokens so "30 days" and "7 days" look alike to the index.
for utterance in ("delete files older than 30 days", "ping 192.168.0.1",
                  'copy "install.txt" to /home/user'):
    tokens, constants = normalize_nl(utterance)
    print(f"{utterance!r}\n  tokens={tokens}  constants={constants}")
print()

corpus = filter_examples(toy_corpus(3000, seed=42)).kept
train, _, test = build_splits(corpus, seed=13, fractions=(0.9, 0.0, 0.1))
pairs = pairs_from_examples(train)
print(f"{len(pairs)} training pairs, {len(test)} held-out examples")
print()

# Retrieval returns the top cosine matches; duplicate templates are wasted
# slots (the metric takes a max), so pruning pulls in diverse candidates.
index = build_index(pairs)
query = test[0].invocation
print("query:", query)
hits = retrieve(index, query, k=10)
print("top raw hits:")
for hit in hits[:5]:
    print(f"  {hit.similarity:.3f}  {hit.command}")
print("after dedupe:")
for hit in dedupe_hits(hits, 5):
    print(f"  {hit.similarity:.3f}  {hit.command}")
print()

# The ablation ladder. Confidence calibration fits a logistic model on a
# held-out slice of training data to predict which hits score positively,
# and lowers confidences only when the whole answer set looks wrong.
variants = {
    "raw tf-idf": TfIdfPredictor(pairs),
    "+ prune duplicates": TfIdfPredictor(pairs, dedupe=True),
    "+ normalize NL": TfIdfPredictor(pairs, dedupe=True, normalize=True),
    "+ adjust confidence": TfIdfPredictor.with_calibration(
        pairs, normalize=True, dedupe=True, seed=5
    ),
}
print(f"{'variant':<24} {'mean score':>10}")
for name, predictor in variants.items():
    report = evaluate(predictor, test, k=5)
    print(f"{name:<24} {report.mean_score:>10.4f}")
