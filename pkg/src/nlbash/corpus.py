"""Dataset loading, filtering, splitting, and utility statistics.

Datasets are UTF-8 JSON lines, one object per line::

    {"id": "...", "invocation": "...", "cmd": "..." or ["...", ...], "source": "..."}

``id`` and ``source`` are optional. Filtering keeps a reference command
only when it parses, reconstructs byte-identically, and uses whitelisted
utilities throughout; an example survives when at least one reference
does.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    BashSyntaxError,
    InvalidFractionsError,
    SchemaError,
    UnknownUtilityError,
)
from .parser import parse, reconstruct
from .template import flatten_utilities
from .vocab import UtilityVocabulary, default_vocabulary


class Source(Enum):
    NL2BASH = "nl2bash"
    TELLINA = "tellina"
    CHALLENGE = "challenge"
    OTHER = "other"

    @classmethod
    def coerce(cls, value: str | None) -> "Source":
        if value is None:
            return cls.OTHER
        try:
            return cls(value.strip().lower())
        except ValueError:
            return cls.OTHER


@dataclass(frozen=True)
class Example:
    """One natural-language invocation with its reference commands."""

    id: str
    invocation: str
    references: tuple[str, ...]
    source: Source = Source.OTHER

    def to_record(self) -> dict:
        return {
            "id": self.id,
            "invocation": self.invocation,
            "cmd": list(self.references),
            "source": self.source.value,
        }


class RejectReason(Enum):
    PARSE_ERROR = "parse_error"
    ROUNDTRIP_MISMATCH = "roundtrip_mismatch"
    NON_WHITELIST_UTILITY = "non_whitelist_utility"


@dataclass(frozen=True)
class Rejection:
    example: Example
    reason: RejectReason


@dataclass
class FilterReport:
    """Partition of a dataset into surviving and rejected examples."""

    kept: list[Example] = field(default_factory=list)
    rejected: list[Rejection] = field(default_factory=list)


def _example_from_record(record: dict, lineno: int, default_id: str) -> Example:
    if not isinstance(record, dict):
        raise SchemaError(f"line {lineno}: expected a JSON object")
    invocation = record.get("invocation")
    if not isinstance(invocation, str) or not invocation.strip():
        raise SchemaError(f"line {lineno}: 'invocation' must be a non-empty string")
    cmd = record.get("cmd")
    if isinstance(cmd, str):
        references = [cmd]
    elif isinstance(cmd, list) and cmd and all(isinstance(c, str) for c in cmd):
        references = list(cmd)
    else:
        raise SchemaError(f"line {lineno}: 'cmd' must be a string or non-empty list of strings")
    if any(not c.strip() for c in references):
        raise SchemaError(f"line {lineno}: empty command text in 'cmd'")
    ex_id = record.get("id", default_id)
    if not isinstance(ex_id, str) or not ex_id:
        raise SchemaError(f"line {lineno}: 'id' must be a non-empty string")
    source_raw = record.get("source")
    if source_raw is not None and not isinstance(source_raw, str):
        raise SchemaError(f"line {lineno}: 'source' must be a string")
    return Example(
        id=ex_id,
        invocation=invocation,
        references=tuple(references),
        source=Source.coerce(source_raw),
    )


def load_examples(path: str | Path) -> list[Example]:
    """Load a JSON-lines dataset. Raises SchemaError with the line number."""
    examples: list[Example] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"line {lineno}: invalid JSON ({exc.msg})") from exc
            examples.append(_example_from_record(record, lineno, default_id=f"ex-{lineno:06d}"))
    return examples


def save_examples(examples: Iterable[Example], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for ex in examples:
            fh.write(json.dumps(ex.to_record(), ensure_ascii=False) + "\n")


def _check_reference(cmd: str, vocab: UtilityVocabulary) -> RejectReason | None:
    try:
        ast = parse(cmd, vocab)
    except UnknownUtilityError:
        return RejectReason.NON_WHITELIST_UTILITY
    except BashSyntaxError:
        return RejectReason.PARSE_ERROR
    if reconstruct(ast) != cmd:
        return RejectReason.ROUNDTRIP_MISMATCH
    if any(u not in vocab for u in flatten_utilities(ast)):
        return RejectReason.NON_WHITELIST_UTILITY
    return None


def filter_examples(
    examples: Sequence[Example], vocab: UtilityVocabulary | None = None
) -> FilterReport:
    """Apply the parse / round-trip / whitelist pipeline to every reference.

    Surviving references replace the original list; an example with no
    survivors is rejected with the reason of its first failing reference.
    """
    if vocab is None:
        vocab = default_vocabulary()
    report = FilterReport()
    for ex in examples:
        survivors: list[str] = []
        first_reason: RejectReason | None = None
        for ref in ex.references:
            reason = _check_reference(ref, vocab)
            if reason is None:
                survivors.append(ref)
            elif first_reason is None:
                first_reason = reason
        if survivors:
            report.kept.append(replace(ex, references=tuple(survivors)))
        else:
            report.rejected.append(Rejection(ex, first_reason or RejectReason.PARSE_ERROR))
    return report


def save_filter_report(
    report: FilterReport, kept_path: str | Path, rejected_path: str | Path | None = None
) -> None:
    save_examples(report.kept, kept_path)
    if rejected_path is not None:
        with open(rejected_path, "w", encoding="utf-8") as fh:
            for rej in report.rejected:
                record = rej.example.to_record()
                record["reason"] = rej.reason.value
                fh.write(json.dumps(record, ensure_ascii=False) + "\n")


def _unit_interval(seed: int, ex: Example) -> float:
    digest = hashlib.sha256(f"{seed}\x1f{ex.id}\x1f{ex.invocation}".encode()).digest()
    return int.from_bytes(digest[:8], "big") / 2**64


def build_splits(
    examples: Sequence[Example],
    seed: int,
    fractions: tuple[float, float, float] = (0.8, 0.1, 0.1),
) -> tuple[list[Example], list[Example], list[Example]]:
    """Deterministic train/val/test partition with append-only growth.

    Each example draws a pseudo-random number from (seed, id, invocation)
    and is assigned to one of the three buckets with probability
    proportional to how far each bucket is below its target share at that
    point in the stream. Because an assignment depends only on the
    examples before it, appending new data never moves old examples, so
    the test set only ever grows; and whenever the target counts are whole
    numbers the realized sizes match them exactly.
    """
    fracs = tuple(float(f) for f in fractions)
    if len(fracs) != 3 or any(f < 0 for f in fracs):
        raise InvalidFractionsError(f"fractions must be three non-negative numbers, got {fractions}")
    if abs(sum(fracs) - 1.0) > 1e-9:
        raise InvalidFractionsError(f"fractions must sum to 1.0, got {sum(fracs)}")

    buckets: tuple[list[Example], ...] = ([], [], [])
    counts = [0, 0, 0]
    for idx, ex in enumerate(examples):
        total = idx + 1
        deficits = [max(f * total - c, 0.0) for f, c in zip(fracs, counts)]
        weight = sum(deficits)
        choice = 2
        if weight > 0:
            r = _unit_interval(seed, ex) * weight
            acc = 0.0
            for b, d in enumerate(deficits):
                acc += d
                if r < acc:
                    choice = b
                    break
        buckets[choice].append(ex)
        counts[choice] += 1
    return buckets


def utility_histogram(
    examples: Sequence[Example], vocab: UtilityVocabulary | None = None
) -> list[tuple[str, int]]:
    """Count flattened utilities across all references, most frequent first.

    Expects pre-filtered references (every command must parse). Ties break
    lexicographically.
    """
    if vocab is None:
        vocab = default_vocabulary()
    counts: dict[str, int] = {}
    for ex in examples:
        for ref in ex.references:
            for utility in flatten_utilities(parse(ref, vocab)):
                counts[utility] = counts.get(utility, 0) + 1
    return sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))


def dataset_fingerprint(examples: Sequence[Example]) -> str:
    """Content hash identifying a dataset in reports."""
    h = hashlib.sha256()
    for ex in examples:
        h.update(ex.id.encode())
        h.update(b"\x1f")
        h.update(ex.invocation.encode())
        h.update(b"\x1f")
        h.update("\x1e".join(ex.references).encode())
        h.update(b"\n")
    return h.hexdigest()
