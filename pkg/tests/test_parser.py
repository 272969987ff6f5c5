import pytest

from nlbash.errors import BashSyntaxError, UnknownUtilityError
from nlbash.parser import TokenKind, parse, reconstruct, tokenize
from nlbash.vocab import default_vocabulary

VOCAB = default_vocabulary()

ROUND_TRIP_COMMANDS = [
    "ls",
    "ls -la /tmp",
    "find . -type f -empty -delete",
    "df --total | tail -n 1",
    "df   --total |  tail -n 1",  # odd spacing survives
    "grep -i 'foo bar' f.txt",
    'grep -i "foo bar" f.txt',
    "find . -regextype posix-egrep -regex REGEX -type f",
    "find . -type f -empty -print0 | xargs -0 /bin/rm",
    "find . -name '*.py' -exec grep -l TODO {} \\;",
    "find /tmp -name core -exec rm {} +",
    "sudo chown root process",
    "nice -n 10 tar -czf x.tgz .",
    "kill $( jobs -p )",
    "kill $(jobs -p)",
    "echo `date`",
    "sort f.txt | uniq -c | sort -rn",
    "ps aux | grep nginx",
    "echo done >> log.txt",
    "cat f.txt 2>/dev/null",
    "grep foo f.txt > out.txt 2>&1",
    "tar -xzf a.tar.gz -C /tmp ",
]


@pytest.mark.parametrize("cmd", ROUND_TRIP_COMMANDS)
def test_round_trip_byte_exact(cmd):
    assert reconstruct(parse(cmd, VOCAB)) == cmd


def test_single_stage_parse():
    ast = parse("find . -type f -empty -delete", VOCAB)
    assert len(ast.stages) == 1
    assert ast.stages[0].utility == "find"


def test_pipeline_stage_order():
    ast = parse("df --total | tail -n 1", VOCAB)
    assert [s.utility for s in ast.stages] == ["df", "tail"]


def test_unknown_utility_rejected():
    with pytest.raises(UnknownUtilityError):
        parse("frobnicate -x", VOCAB)


def test_unknown_utility_in_substitution_rejected():
    with pytest.raises(UnknownUtilityError):
        parse("kill $( frobnicate -p )", VOCAB)


def test_utility_path_resolves_to_basename():
    ast = parse("/bin/rm -f stale.txt", VOCAB)
    assert ast.stages[0].utility == "rm"


@pytest.mark.parametrize(
    "cmd",
    [
        "",
        "   ",
        "grep 'unterminated",
        'grep "unterminated',
        "df |",
        "| df",
        "df || true",
        "df && ls",
        "sleep 5 &",
        "ls ; pwd",
        "(cd /tmp)",
        "diff <(sort a) <(sort b)",
        "cat <<EOF",
        "cat <<< hello",
        "echo $(date",
        "echo `date",
        "for f in *; do echo $f; done",
        "if true; then ls; fi",
        "echo )",
        "ls > ",
    ],
)
def test_unsupported_or_malformed_rejected(cmd):
    with pytest.raises(BashSyntaxError):
        parse(cmd, VOCAB)


def test_assignment_prefix_rejected_as_unknown_utility():
    # 'v=$(...)' is one word in utility position; not a known utility
    with pytest.raises(UnknownUtilityError):
        parse("v=$(whoami | tr a-z A-Z)", VOCAB)


def test_token_spans_tile_the_source():
    cmd = "grep -i 'a b'  f.txt | wc -l"
    tokens = tokenize(cmd)
    pos = 0
    for tok in tokens:
        assert cmd[pos : tok.start].strip() == ""  # only whitespace between tokens
        assert cmd[tok.start : tok.end] == tok.text
        pos = tok.end


def test_token_kinds():
    kinds = [t.kind for t in tokenize("df --total | tail -n 1 > out.txt")]
    assert kinds == [
        TokenKind.WORD,
        TokenKind.WORD,
        TokenKind.PIPE,
        TokenKind.WORD,
        TokenKind.WORD,
        TokenKind.WORD,
        TokenKind.REDIRECT,
        TokenKind.WORD,
    ]


def test_substitution_tokens():
    kinds = [t.kind for t in tokenize("kill $( jobs -p )")]
    assert kinds == [
        TokenKind.WORD,
        TokenKind.SUBST_OPEN,
        TokenKind.WORD,
        TokenKind.WORD,
        TokenKind.SUBST_CLOSE,
    ]


def test_wrapper_nesting():
    ast = parse("sudo chown root process", VOCAB)
    stage = ast.stages[0]
    assert stage.utility == "sudo"
    assert len(stage.nested) == 1
    assert stage.nested[0].utility == "chown"


def test_wrapper_chain():
    ast = parse("sudo time find /tmp -name core", VOCAB)
    names = [c.utility for c in ast.walk()]
    assert names == ["sudo", "time", "find"]


def test_wrapper_skips_non_utility_words():
    # '-I {}' and '{}' belong to xargs; cp starts the wrapped command
    ast = parse("find . -name '*.o' | xargs -I {} cp {} /tmp", VOCAB)
    xargs_stage = ast.stages[1]
    assert xargs_stage.utility == "xargs"
    assert [c.utility for c in xargs_stage.nested] == ["cp"]


def test_exec_payload_nested_and_terminated():
    ast = parse("find . -name x -exec cat {} \\; -delete", VOCAB)
    stage = ast.stages[0]
    assert [c.utility for c in stage.nested] == ["cat"]
    flag_texts = [e.text for e in stage.flag_elements()]
    assert "-exec" in flag_texts and "-delete" in flag_texts


def test_exec_payload_without_terminator_is_lenient():
    ast = parse("find . -empty -exec rm {}", VOCAB)
    assert [c.utility for c in ast.stages[0].nested] == ["rm"]


def test_exec_unknown_target_rejected():
    with pytest.raises(UnknownUtilityError):
        parse("find . -exec frobnicate {} \\;", VOCAB)


def test_substitution_with_pipeline_inside():
    ast = parse("echo $(ls /tmp | wc -l)", VOCAB)
    names = [c.utility for c in ast.walk()]
    assert names == ["echo", "ls", "wc"]


def test_midword_substitution_absorbed_into_word():
    tokens = tokenize("echo prefix$(date)suffix")
    assert [t.kind for t in tokens] == [TokenKind.WORD, TokenKind.WORD]
    assert tokens[1].text == "prefix$(date)suffix"


def test_self_contained_redirects_take_no_target():
    ast = parse("grep foo f.txt > out.txt 2>&1", VOCAB)
    args = [e.text for e in ast.stages[0].elements]
    assert "out.txt" in args
    assert "&1" not in args


def test_quoted_strings_are_single_arguments():
    ast = parse("grep -i 'foo bar' f.txt", VOCAB)
    args = [e.text for e in ast.stages[0].elements if not e.text.startswith("-")]
    assert "'foo bar'" in args


def test_parse_is_deterministic():
    cmd = "find . -name '*.log' -exec rm {} \\;"
    assert parse(cmd, VOCAB) == parse(cmd, VOCAB)


def test_round_trip_over_generated_corpus():
    from nlbash.synth import command_corpus

    commands = command_corpus(500, seed=3)
    for cmd in commands:
        assert reconstruct(parse(cmd, VOCAB)) == cmd
