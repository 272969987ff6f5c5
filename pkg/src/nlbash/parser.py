"""Bash pipeline parser with byte-exact reconstruction.

The grammar is deliberately narrow: a command is a pipeline of simple
commands, each a utility followed by flags, arguments, redirects,
``$( )`` / backtick substitutions, and (for find-style utilities) an
``-exec utility ... \\;`` payload. Anything outside that shape —
``&&`` / ``||`` lists, ``;`` sequences, subshells, here-docs, process
substitution, control flow — raises BashSyntaxError, which is exactly how
corpus filtering rejects it.

Every token keeps its original text and span, so ``reconstruct`` returns
the input byte for byte for any command ``parse`` accepts. No shell
expansion is performed; quoted strings stay single tokens.

All functions here are pure and safe for concurrent use.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .errors import BashSyntaxError, UnknownUtilityError
from .vocab import UtilityVocabulary, default_vocabulary

# Utilities that run another command given as their trailing words.
WRAPPER_UTILITIES = frozenset({"sudo", "xargs", "time", "nice"})

# Flags whose payload is a nested command terminated by ';' or '+'.
EXEC_FLAGS = frozenset({"exec", "execdir", "ok", "okdir"})

_RESERVED_WORDS = frozenset(
    "if then elif else fi for while until do done case esac function select coproc in".split()
)

_WORD_BREAK = set(" \t\n\r|;&<>()`")


class TokenKind(Enum):
    WORD = "word"
    PIPE = "pipe"
    REDIRECT = "redirect"
    SEMI = "semi"
    SUBST_OPEN = "subst_open"
    SUBST_CLOSE = "subst_close"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    start: int
    end: int


class ElementKind(Enum):
    FLAG = "flag"
    ARG = "arg"
    ATTACHED_VALUE = "attached_value"


@dataclass(frozen=True)
class Element:
    kind: ElementKind
    text: str


@dataclass(frozen=True)
class SimpleCommand:
    """One pipeline stage: a utility plus its flags/arguments.

    ``nested`` holds commands this stage runs itself — the target of a
    wrapper like sudo/xargs, an ``-exec`` payload, or the stages of a
    standalone ``$( )`` / backtick substitution — in source order.
    """

    utility: str
    elements: tuple[Element, ...]
    nested: tuple["SimpleCommand", ...] = ()

    def flag_elements(self) -> list[Element]:
        return [e for e in self.elements if e.kind is ElementKind.FLAG]

    def erased_count(self) -> int:
        return sum(1 for e in self.elements if e.kind is not ElementKind.FLAG)


@dataclass(frozen=True)
class CommandAST:
    """Parsed pipeline plus everything needed to reproduce its text."""

    stages: tuple[SimpleCommand, ...]
    raw: str
    tokens: tuple[Token, ...]

    def walk(self):
        """All simple commands, pipeline order, nested after their host."""
        for stage in self.stages:
            yield from _walk(stage)


def _walk(cmd: SimpleCommand):
    yield cmd
    for sub in cmd.nested:
        yield from _walk(sub)


# ---------------------------------------------------------------------------
# Lexer


def _scan_word(s: str, i: int, in_backtick: bool) -> int:
    """Return the end index of the word starting at i."""
    n = len(s)
    j = i
    while j < n:
        c = s[j]
        if c == "'":
            k = s.find("'", j + 1)
            if k == -1:
                raise BashSyntaxError("unbalanced single quote")
            j = k + 1
        elif c == '"':
            k = j + 1
            while k < n and s[k] != '"':
                k += 2 if s[k] == "\\" else 1
            if k >= n:
                raise BashSyntaxError("unbalanced double quote")
            j = k + 1
        elif c == "\\":
            if j + 1 >= n:
                raise BashSyntaxError("trailing backslash")
            j += 2
        elif c == "$" and s[j + 1 : j + 2] == "(":
            # Substitution embedded mid-word (x=$(...)): absorb it whole.
            j = _absorb_dollar_paren(s, j)
        elif c == "`":
            if in_backtick:
                break  # closes the surrounding substitution
            k = s.find("`", j + 1)
            if k == -1:
                raise BashSyntaxError("unbalanced backtick")
            j = k + 1
        elif c in _WORD_BREAK:
            break
        else:
            j += 1
    return j


def _absorb_dollar_paren(s: str, i: int) -> int:
    """Scan past a $( ... ) group starting at i, honoring quotes."""
    n = len(s)
    depth = 1
    j = i + 2
    while j < n and depth > 0:
        c = s[j]
        if c == "'":
            k = s.find("'", j + 1)
            if k == -1:
                raise BashSyntaxError("unbalanced single quote")
            j = k + 1
        elif c == '"':
            k = j + 1
            while k < n and s[k] != '"':
                k += 2 if s[k] == "\\" else 1
            if k >= n:
                raise BashSyntaxError("unbalanced double quote")
            j = k + 1
        elif c == "\\":
            j += 2
        else:
            if c == "(":
                depth += 1
            elif c == ")":
                depth -= 1
            j += 1
    if depth > 0:
        raise BashSyntaxError("unterminated command substitution")
    return j


def _scan_redirect(s: str, i: int) -> int:
    """Return the end index of the redirect operator starting at i.

    Accepts [fd]>, [fd]>>, [fd]<, &>, &>>, and >&fd / 2>&1 duplications.
    """
    n = len(s)
    j = i
    if s[j] == "&":  # &> / &>>
        j += 1
        if j >= n or s[j] != ">":
            raise BashSyntaxError(f"bad redirect at offset {i}")
        j += 1
        if j < n and s[j] == ">":
            j += 1
        if j < n and s[j] == "(":
            raise BashSyntaxError("process substitution is not supported")
        return j
    while j < n and s[j].isdigit():
        j += 1
    if j >= n or s[j] not in "<>":
        raise BashSyntaxError(f"bad redirect at offset {i}")
    op = s[j]
    j += 1
    if op == "<" and j < n and s[j] == "<":
        raise BashSyntaxError("here-documents are not supported")
    if op == ">" and j < n and s[j] == ">":
        j += 1
    if j < n and s[j] == "(":
        raise BashSyntaxError("process substitution is not supported")
    if j < n and s[j] == "&":
        j += 1
        if j < n and s[j] == "-":
            j += 1
        elif j < n and s[j].isdigit():
            while j < n and s[j].isdigit():
                j += 1
        else:
            raise BashSyntaxError(f"bad redirect at offset {i}")
    return j


_SELF_CONTAINED_REDIRECT = re.compile(r"\d*[<>]{1,2}&(\d+|-)")


def _redirect_needs_target(text: str) -> bool:
    # fd duplications like 2>&1 are self-contained; everything else
    # consumes the following word as its target.
    return _SELF_CONTAINED_REDIRECT.fullmatch(text) is None


def tokenize(text: str) -> list[Token]:
    """Lex command text into tokens. Raises BashSyntaxError."""
    tokens: list[Token] = []
    stack: list[str] = []  # open substitution delimiters: '(' or '`'
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c in " \t\n\r":
            i += 1
            continue
        if c == "|":
            if text[i + 1 : i + 2] == "|":
                raise BashSyntaxError("'||' lists are not supported")
            tokens.append(Token(TokenKind.PIPE, "|", i, i + 1))
            i += 1
        elif c == ";":
            tokens.append(Token(TokenKind.SEMI, ";", i, i + 1))
            i += 1
        elif c == "\\" and text[i + 1 : i + 2] == ";":
            tokens.append(Token(TokenKind.SEMI, "\\;", i, i + 2))
            i += 2
        elif c == "&":
            nxt = text[i + 1 : i + 2]
            if nxt == "&":
                raise BashSyntaxError("'&&' lists are not supported")
            if nxt == ">":
                j = _scan_redirect(text, i)
                tokens.append(Token(TokenKind.REDIRECT, text[i:j], i, j))
                i = j
            else:
                raise BashSyntaxError("background '&' is not supported")
        elif c in "<>":
            j = _scan_redirect(text, i)
            tokens.append(Token(TokenKind.REDIRECT, text[i:j], i, j))
            i = j
        elif c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] in "<>":
                j = _scan_redirect(text, i)
                tokens.append(Token(TokenKind.REDIRECT, text[i:j], i, j))
                i = j
            else:
                j = _scan_word(text, i, in_backtick=bool(stack and stack[-1] == "`"))
                tokens.append(Token(TokenKind.WORD, text[i:j], i, j))
                i = j
        elif c == "$" and text[i + 1 : i + 2] == "(":
            if text[i + 2 : i + 3] == "(":
                raise BashSyntaxError("arithmetic expansion is not supported")
            tokens.append(Token(TokenKind.SUBST_OPEN, "$(", i, i + 2))
            stack.append("(")
            i += 2
        elif c == "`":
            if stack and stack[-1] == "`":
                tokens.append(Token(TokenKind.SUBST_CLOSE, "`", i, i + 1))
                stack.pop()
            else:
                tokens.append(Token(TokenKind.SUBST_OPEN, "`", i, i + 1))
                stack.append("`")
            i += 1
        elif c == ")":
            if stack and stack[-1] == "(":
                tokens.append(Token(TokenKind.SUBST_CLOSE, ")", i, i + 1))
                stack.pop()
                i += 1
            else:
                raise BashSyntaxError("unbalanced ')'")
        elif c == "(":
            raise BashSyntaxError("subshells are not supported")
        else:
            j = _scan_word(text, i, in_backtick=bool(stack and stack[-1] == "`"))
            if j == i:
                raise BashSyntaxError(f"cannot tokenize at offset {i}: {text[i]!r}")
            tokens.append(Token(TokenKind.WORD, text[i:j], i, j))
            i = j
    if stack:
        raise BashSyntaxError("unterminated command substitution")
    return tokens


# ---------------------------------------------------------------------------
# Parser


def _is_flag_word(text: str) -> bool:
    return text.startswith("-") and len(text) > 1 and text != "--"


class _Cursor:
    def __init__(self, tokens: list[Token]):
        self._tokens = tokens
        self._pos = 0

    def peek(self) -> Token | None:
        if self._pos < len(self._tokens):
            return self._tokens[self._pos]
        return None

    def take(self) -> Token:
        tok = self._tokens[self._pos]
        self._pos += 1
        return tok

    def back(self) -> None:
        self._pos -= 1


def _flag_name(text: str) -> str:
    if text.startswith("--"):
        return text[2:].split("=", 1)[0]
    return text[1:]


def _parse_simple(
    cur: _Cursor,
    vocab: UtilityVocabulary,
    in_subst: bool,
    in_exec: bool,
) -> SimpleCommand:
    tok = cur.peek()
    if tok is None or tok.kind is not TokenKind.WORD:
        raise BashSyntaxError("empty pipeline stage")
    cur.take()
    word = tok.text
    if word in _RESERVED_WORDS:
        raise BashSyntaxError(f"shell control flow ({word!r}) is not supported")
    utility = vocab.lookup(word)
    if utility is None:
        raise UnknownUtilityError(word)

    elements: list[Element] = []
    nested: list[SimpleCommand] = []
    may_wrap = utility in WRAPPER_UTILITIES

    while True:
        tok = cur.peek()
        if tok is None or tok.kind is TokenKind.PIPE:
            break
        if tok.kind is TokenKind.SUBST_CLOSE:
            if in_subst:
                break
            raise BashSyntaxError(f"unbalanced {tok.text!r}")
        if tok.kind is TokenKind.SEMI:
            if in_exec:
                break
            raise BashSyntaxError("';' command sequences are not supported")
        if tok.kind is TokenKind.SUBST_OPEN:
            cur.take()
            nested.extend(_parse_pipeline(cur, vocab, in_subst=True, in_exec=in_exec))
            closing = cur.peek()
            if closing is None or closing.kind is not TokenKind.SUBST_CLOSE:
                raise BashSyntaxError("unterminated command substitution")
            cur.take()
            continue
        if tok.kind is TokenKind.REDIRECT:
            cur.take()
            if _redirect_needs_target(tok.text):
                target = cur.peek()
                if target is None or target.kind is not TokenKind.WORD:
                    raise BashSyntaxError(f"redirect {tok.text!r} is missing its target")
                cur.take()
                elements.append(Element(ElementKind.ARG, target.text))
            continue
        # WORD
        cur.take()
        if _is_flag_word(tok.text):
            if tok.text.startswith("--") and "=" in tok.text:
                head, value = tok.text.split("=", 1)
                elements.append(Element(ElementKind.FLAG, head))
                elements.append(Element(ElementKind.ATTACHED_VALUE, value))
            else:
                elements.append(Element(ElementKind.FLAG, tok.text))
            if not tok.text.startswith("--") and _flag_name(tok.text) in EXEC_FLAGS:
                payload = _parse_exec_payload(cur, vocab, in_subst)
                if payload is not None:
                    nested.append(payload)
            continue
        if in_exec and tok.text == "+":
            # '+' terminates the surrounding -exec clause; hand it back.
            cur.back()
            break
        if may_wrap and vocab.lookup(tok.text) is not None:
            cur.back()
            nested.append(_parse_simple(cur, vocab, in_subst=in_subst, in_exec=in_exec))
            break
        elements.append(Element(ElementKind.ARG, tok.text))

    return SimpleCommand(utility=utility, elements=tuple(elements), nested=tuple(nested))


def _parse_exec_payload(
    cur: _Cursor, vocab: UtilityVocabulary, in_subst: bool
) -> SimpleCommand | None:
    tok = cur.peek()
    if tok is None or tok.kind is not TokenKind.WORD or _is_flag_word(tok.text):
        return None  # bare -exec with no payload; leave the stream alone
    payload = _parse_simple(cur, vocab, in_subst=in_subst, in_exec=True)
    terminator = cur.peek()
    if terminator is not None:
        if terminator.kind is TokenKind.SEMI:
            cur.take()
        elif terminator.kind is TokenKind.WORD and terminator.text == "+":
            cur.take()
    return payload


def _parse_pipeline(
    cur: _Cursor, vocab: UtilityVocabulary, in_subst: bool, in_exec: bool
) -> list[SimpleCommand]:
    stages = [_parse_simple(cur, vocab, in_subst, in_exec)]
    while True:
        tok = cur.peek()
        if tok is not None and tok.kind is TokenKind.PIPE:
            cur.take()
            stages.append(_parse_simple(cur, vocab, in_subst, in_exec))
        else:
            return stages


def parse(command_text: str, vocab: UtilityVocabulary | None = None) -> CommandAST:
    """Parse command text into a pipeline AST.

    Raises BashSyntaxError for text outside the supported grammar and
    UnknownUtilityError when a stage names a utility missing from the
    vocabulary (the default vocabulary is used when none is given).
    """
    if not command_text or not command_text.strip():
        raise BashSyntaxError("empty command")
    if vocab is None:
        vocab = default_vocabulary()
    tokens = tokenize(command_text)
    if not tokens:
        raise BashSyntaxError("empty command")
    cur = _Cursor(tokens)
    stages = _parse_pipeline(cur, vocab, in_subst=False, in_exec=False)
    leftover = cur.peek()
    if leftover is not None:
        raise BashSyntaxError(f"unexpected {leftover.text!r} at offset {leftover.start}")
    return CommandAST(stages=tuple(stages), raw=command_text, tokens=tuple(tokens))


def reconstruct(ast: CommandAST) -> str:
    """Rebuild command text from the token stream, byte for byte."""
    parts: list[str] = []
    pos = 0
    for tok in ast.tokens:
        parts.append(ast.raw[pos : tok.start])
        parts.append(tok.text)
        pos = tok.end
    parts.append(ast.raw[pos:])
    return "".join(parts)
