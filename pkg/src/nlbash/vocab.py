"""Utility vocabulary: the whitelist of utilities and their unsplittable flags.

The vocabulary drives two decisions elsewhere in the toolkit: whether a
command's utilities are acceptable at all, and which single-dash
multi-character tokens (``find -name``, ``find -type``, ...) are real long
flags rather than bundles of one-letter options.

File format (UTF-8, one record per line)::

    utility<TAB>flag1,flag2,...

The flag list is optional. Blank lines and lines starting with ``#`` are
ignored. Flags may be written with or without their leading dash.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .errors import VocabularyFormatError

_DEFAULT_RESOURCE = "ubuntu_utilities.txt"


@dataclass(frozen=True)
class UtilityVocabulary:
    """Immutable set of known utilities plus per-utility unsplittable flags."""

    utilities: frozenset[str]
    known_flags: dict[str, frozenset[str]] = field(default_factory=dict)

    def __post_init__(self):
        stray = set(self.known_flags) - set(self.utilities)
        if stray:
            raise VocabularyFormatError(
                f"known_flags entries for utilities not in the vocabulary: {sorted(stray)}"
            )

    def __contains__(self, utility: str) -> bool:
        return utility in self.utilities

    def __len__(self) -> int:
        return len(self.utilities)

    def lookup(self, word: str) -> str | None:
        """Resolve a command word to a vocabulary utility name.

        Absolute or relative paths resolve through their basename, so
        ``/bin/rm`` and ``rm`` both map to ``rm``. Returns None when the
        word does not name a known utility.
        """
        if word in self.utilities:
            return word
        if "/" in word:
            base = word.rsplit("/", 1)[-1]
            if base and base in self.utilities:
                return base
        return None

    def unsplittable_flags(self, utility: str) -> frozenset[str]:
        return self.known_flags.get(utility, frozenset())


def parse_vocabulary(text: str, origin: str = "<string>") -> UtilityVocabulary:
    """Parse vocabulary file contents. Raises VocabularyFormatError."""
    utilities: set[str] = set()
    known_flags: dict[str, frozenset[str]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        name, _, flag_part = line.partition("\t")
        name = name.strip()
        if not name or any(ch.isspace() for ch in name):
            raise VocabularyFormatError(f"{origin}:{lineno}: bad utility name {name!r}")
        flags: set[str] = set()
        for raw_flag in flag_part.split(","):
            flag = raw_flag.strip().lstrip("-")
            if not flag:
                continue
            if any(ch.isspace() for ch in flag):
                raise VocabularyFormatError(f"{origin}:{lineno}: bad flag {raw_flag!r}")
            flags.add(flag)
        utilities.add(name)
        if flags:
            known_flags[name] = frozenset(flags)
    if not utilities:
        raise VocabularyFormatError(f"{origin}: no utility records found")
    return UtilityVocabulary(utilities=frozenset(utilities), known_flags=known_flags)


def load_vocabulary(path: str | Path) -> UtilityVocabulary:
    """Load a vocabulary file from disk."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    return parse_vocabulary(text, origin=str(path))


@lru_cache(maxsize=1)
def default_vocabulary() -> UtilityVocabulary:
    """The vocabulary shipped with the package (Ubuntu 18.04 utility set)."""
    resource = importlib.resources.files("nlbash").joinpath(f"data/{_DEFAULT_RESOURCE}")
    return parse_vocabulary(resource.read_text(encoding="utf-8"), origin=_DEFAULT_RESOURCE)
