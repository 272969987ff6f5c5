"""Straight-line reference transcription of the scoring rules.

Deliberately independent of the package: operates on plain tuples and
sets, shares no helpers with the implementation under test, and trades
every cleverness for being obviously a literal reading of the three
scoring equations (flag score, per-prediction score, example
aggregation). Used by the oracle-equivalence tests.
"""


def flag_score_ref(pred_flags, ref_flags):
    n = len(pred_flags)
    if len(ref_flags) > n:
        n = len(ref_flags)
    if n == 0:
        return 1.0
    inter = 0
    for f in pred_flags:
        if f in ref_flags:
            inter += 1
    union = len(pred_flags) + len(ref_flags) - inter
    return (2.0 * inter - union) / n


def prediction_score_ref(pred_units, delta, refs):
    """pred_units: [(utility, set_of_flags), ...]; refs: list of same."""
    best = None
    for ref_units in refs:
        t = len(pred_units)
        if len(ref_units) > t:
            t = len(ref_units)
        total = 0.0
        for i in range(t):
            same = (
                i < len(pred_units)
                and i < len(ref_units)
                and pred_units[i][0] == ref_units[i][0]
            )
            if same:
                total += 0.5 * (1.0 + flag_score_ref(pred_units[i][1], ref_units[i][1]))
            else:
                total -= 1.0
        value = delta * total / t
        if best is None or value > best:
            best = value
    return best


def example_score_ref(scores):
    has_positive = False
    for s in scores:
        if s > 0.0:
            has_positive = True
    if has_positive:
        best = scores[0]
        for s in scores[1:]:
            if s > best:
                best = s
        return best
    total = 0.0
    for s in scores:
        total += s
    return total / len(scores)


def dataset_score_ref(values):
    total = 0.0
    for v in values:
        total += v
    return total / len(values)
