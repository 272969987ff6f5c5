"""Walk through the accuracy metric on worked examples.

Run:  python3 demos/02_scoring_walkthrough.py
"""

from nlbash import ScoredPrediction, example_score, normalize_template, parse, prediction_score


def template_of(cmd):
    return normalize_template(parse(cmd))


def scored(cmd, delta=1.0):
    return ScoredPrediction.from_command(cmd, delta)


# The metric compares templates position by position: matching utilities
# earn half of (1 + flag score), mismatches cost a full point, and the
# total is averaged over the longer command and scaled by confidence.
cases = [
    ("parameters are ignored", "df | grep /dev/disk0s2", "df | grep diskpath"),
    ("flag order is free", "find . -regextype posix-egrep -regex R -type f",
     "find . -type f -regextype posix-egrep -regex R"),
    ("wrong utility costs a point", "mkdir directory", "touch directory"),
    ("pipeline order matters", "df --total | tail -n 1", "tail -n 1 | df --total"),
    ("excess flags are penalized", "find / -name linux", "find / -EXdsx -name linux"),
]
print(f"{'behavior':<32} {'score':>8}")
for label, truth, predicted in cases:
    value = prediction_score(scored(predicted), [template_of(truth)])
    print(f"{label:<32} {value:>8.4f}")
print()

# Confidence scales the score linearly - including the penalties.
truth = [template_of("find / -name linux")]
for delta in (1.0, 0.5, 0.1, 0.0):
    value = prediction_score(scored("find / -EXdsx -name linux", delta), truth)
    print(f"confidence {delta:.1f} -> {value:+.4f}")
print()

# An example takes the best prediction when any scores positive, and the
# plain average otherwise. Averaging is what makes zero-confidence
# padding useless: a wrong confident guess still drags the example down.
refs = [template_of("mkdir d")]
padded = [scored("touch d", 1.0), scored("touch d", 0.0)]
result = example_score(padded, refs)
print("wrong guess + zero-confidence padding:", result.value, f"({result.aggregation.value})")

mixed = [scored("find / -EXdsx -name linux"), scored("touch directory")]
result = example_score(mixed, [template_of("find / -name linux")])
print("one weak positive among wrong guesses:", round(result.value, 4), f"({result.aggregation.value})")
