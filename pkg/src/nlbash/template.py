"""Argument-erased command templates: the unit the accuracy metric compares.

A template reduces a command to an ordered sequence of (utility, flag set)
pairs. Arguments, flag values, and redirect targets are erased; only how
many were erased per utility is kept, as metadata that never participates
in equality. Flag sets are order-free and stored without dashes.

Single-dash multi-character tokens split into one flag per character
unless the vocabulary lists them as real long flags for that utility, so
``ls -la`` yields flags {l, a} while ``find -name`` keeps ``name`` whole.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .parser import CommandAST, ElementKind
from .vocab import UtilityVocabulary, default_vocabulary


@dataclass(frozen=True)
class TemplateUnit:
    utility: str
    flags: frozenset[str]

    def __str__(self) -> str:
        inner = ",".join(sorted(self.flags))
        return f"{self.utility}[{inner}]"


@dataclass(frozen=True)
class TemplateCommand:
    """Sequence of (utility, flag set) units in pipeline/nesting order.

    ``erased_args`` counts the erased argument-like tokens per unit; it is
    excluded from equality and hashing so that two commands differing only
    in their arguments are the same template.
    """

    units: tuple[TemplateUnit, ...]
    erased_args: tuple[int, ...] = field(default=(), compare=False)

    def utilities(self) -> list[str]:
        return [u.utility for u in self.units]

    def flag_count(self) -> int:
        return sum(len(u.flags) for u in self.units)

    def __str__(self) -> str:
        return " | ".join(str(u) for u in self.units)


def _flag_names(text: str, utility: str, vocab: UtilityVocabulary) -> list[str]:
    if text.startswith("--"):
        name = text[2:]
        return [name] if name else []
    body = text[1:]
    if len(body) == 1 or body in vocab.unsplittable_flags(utility):
        return [body]
    return list(body)


def normalize_template(ast: CommandAST, vocab: UtilityVocabulary | None = None) -> TemplateCommand:
    """Normalize a parsed command into its scoring template."""
    if vocab is None:
        vocab = default_vocabulary()
    units: list[TemplateUnit] = []
    erased: list[int] = []
    for cmd in ast.walk():
        flags: set[str] = set()
        for element in cmd.elements:
            if element.kind is ElementKind.FLAG:
                flags.update(_flag_names(element.text, cmd.utility, vocab))
        units.append(TemplateUnit(utility=cmd.utility, flags=frozenset(flags)))
        erased.append(cmd.erased_count())
    return TemplateCommand(units=tuple(units), erased_args=tuple(erased))


def flatten_utilities(ast: CommandAST) -> list[str]:
    """Utility names in left-to-right order, wrappers before their targets.

    Pipeline stages contribute in order; a wrapper (sudo, xargs, ...), an
    ``-exec`` payload, or a ``$( )`` substitution contributes the host
    utility first and then the nested ones. Repeated utilities are kept —
    position matters to the metric.
    """
    return [cmd.utility for cmd in ast.walk()]
