import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from failfuzz.alphabets import PRINTABLE
from failfuzz.explorer import Explorer, ExplorerConfig
from failfuzz.feedback import COMPLETE, INCOMPLETE, INCORRECT, Verdict, check_conformance
from failfuzz.subjects import (SUBJECTS, UnknownSubject, get_subject, make_literal,
                               make_token_validator, random_samples)
from failfuzz.subjects.simple import BODY_MARKERS, MARKERS
from failfuzz.subjects.tinyc import MAX_DEPTH
from reference import json_accepts, tinyc_accepts


def v(name, data):
    return get_subject(name).validate(data)


@pytest.mark.parametrize("name,data,expected", [
    ("hello", b"HELLO", COMPLETE),
    ("hello", b"HEL", INCOMPLETE),
    ("hello", b"HELX", INCOMPLETE),
    ("hello", b"HELLA", INCORRECT),
    ("hello", b"HELLOO", INCORRECT),
    ("jpeg", b"\xff", INCOMPLETE),
    ("jpeg", b"\xff\xd8\xff\xe0", INCOMPLETE),
    ("jpeg", b"\xff\xd8\x23\x49", INCORRECT),
    ("jpeg", b"\xff\xd8\xff\xe0\xff\xd9", COMPLETE),
    ("jpeg", b"\xff\xd8\xff\xe0\xff\xd9\x00", INCORRECT),
    ("jpeg-indexed", b"\xff\xe1", Verdict.incorrect(0)),
    ("jpeg-indexed", b"\xff\xd8\xff\x00", Verdict.incorrect(2)),
    ("jpeg-indexed", b"\xff\xd8", INCOMPLETE),
    ("length-field", b"\x00", INCOMPLETE),
    ("length-field", b"\x00\x02\xaa\xbb", COMPLETE),
    ("length-field", b"\x00\x00", COMPLETE),
    ("length-field", b"\x00\x02\xaa\xbb\xcc", INCORRECT),
    ("csv", b"", INCOMPLETE),
    ("csv", b"a,b", INCOMPLETE),
    ("csv", b"a,b\n", COMPLETE),
    ("ini", b"[core]\nx = 1\n", COMPLETE),
    ("ini", b"[", INCOMPLETE),
    ("ini", b"[]", INCORRECT),
    ("ini", b"[a\n", INCORRECT),
    ("ini", b"[a] x", INCORRECT),
    ("ini", b"anything [ ] goes", INCOMPLETE),
    ("json", b"[{}]", COMPLETE),
    ("json", b"[tru", INCOMPLETE),
    ("json", b"[trx", INCORRECT),
    ("json", b'{"a":tru', INCOMPLETE),
    ("json", b"tru", INCORRECT),
    ("json", b"[1] ", INCORRECT),
    ("json", b" [1,2.5e-3]", COMPLETE),
    ("tinyc", b"do ; while (a<1) ;", COMPLETE),
    ("tinyc", b"whale", Verdict.incorrect(2)),
    ("tinyc", b"a = 1 1;", Verdict.incorrect(6)),
    ("tinyc", b"a = 1 1", Verdict.incorrect(6)),
    ("tinyc", b"; d", Verdict.incorrect(2)),
    ("tinyc", b"wh", INCOMPLETE),
    ("tinyc", b"a", INCOMPLETE),
    ("tinyc", b"else", Verdict.incorrect(0)),
    ("tinyc", b"if (a) b", INCOMPLETE),
    ("tinyc", b"if (a) b;", COMPLETE),
    ("tinyc", b"d", INCOMPLETE),
    ("tinyc", b"d ", INCOMPLETE),
    ("tinyc", b"dx", Verdict.incorrect(1)),
    ("tinyc", b"#", Verdict.incorrect(0)),
    ("keyword", b"doubx", Verdict.incorrect(4)),
    ("keyword", b"do", COMPLETE),
    ("keyword", b"dou", INCOMPLETE),
    ("keyword", b"x", Verdict.incorrect(0)),
])
def test_examples(name, data, expected):
    assert v(name, data) == expected


def test_registry():
    assert len(SUBJECTS) == len(set(SUBJECTS))
    with pytest.raises(UnknownSubject) as exc:
        get_subject("nosuch")
    assert "nosuch" in str(exc.value)
    for subject in SUBJECTS.values():
        assert subject.goldens and subject.description


def test_literal_subject():
    lit = make_literal(b"abc")
    assert [lit(x) for x in (b"", b"ab", b"abc", b"abd", b"abcd")] == [
        INCOMPLETE, INCOMPLETE, COMPLETE, INCORRECT, INCORRECT]


def test_token_subject_custom_tokens():
    tok = make_token_validator([b"if", b"in"])
    assert tok(b"ix") == Verdict.incorrect(1)
    assert tok(b"in") == COMPLETE


@pytest.mark.parametrize("name", sorted(SUBJECTS))
def test_goldens_complete_and_conform(name):
    subject = get_subject(name)
    for g in subject.goldens:
        assert subject.validate(g) == COMPLETE, g
    samples = list(subject.goldens) + random_samples(subject, 1000, random.Random(name))
    report = check_conformance(subject, samples)
    assert report.ok, report.violations[:3]


chunks = st.sampled_from(sorted(MARKERS) + [b"\xff\x00", b"\x23\x49", b"\xff\xe1"])


@given(st.lists(chunks, max_size=8), st.binary(max_size=1))
def test_jpeg_index_is_first_bad_chunk(parts, tail):
    data = b"".join(parts) + tail
    verdict = v("jpeg-indexed", data)
    # chunk oracle
    expected = INCOMPLETE
    for k, chunk in enumerate(parts):
        ok = chunk == (b"\xff\xd8" if k == 0 else b"\xff\xe0" if k == 1 else None) \
            if k < 2 else chunk in BODY_MARKERS
        if not ok:
            expected = Verdict.incorrect(2 * k)
            break
        if k >= 2 and chunk == b"\xff\xd9":
            rest = len(parts) - k - 1 + len(tail)
            expected = COMPLETE if rest == 0 else Verdict.incorrect(2 * k + 2)
            break
    assert verdict == expected
    assert v("jpeg", data).status is verdict.status


@given(st.binary(max_size=8))
def test_length_field_oracle(data):
    verdict = v("length-field", data)
    if len(data) < 2:
        assert verdict == INCOMPLETE
    else:
        n = int.from_bytes(data[:2], "big")
        assert verdict == (INCOMPLETE if len(data) < n + 2 else
                           COMPLETE if len(data) == n + 2 else INCORRECT)


@given(st.binary(max_size=20))
def test_csv_never_incorrect(data):
    assert v("csv", data) == (COMPLETE if data.endswith(b"\n") else INCOMPLETE)


JSON_CHARS = st.sampled_from(list(b'[]{}",:0123456789-+.eEtrufalsn\\ x'))
TINYC_CHARS = st.sampled_from(list(b"abdefhilowz(){};=<+-01 "))


@given(st.lists(JSON_CHARS, max_size=14).map(bytes))
def test_json_matches_reference(data):
    assert (v("json", data) == COMPLETE) == json_accepts(data)


@given(st.lists(JSON_CHARS, max_size=14).map(bytes))
def test_json_matches_stdlib(data):
    try:
        doc = json.loads(data)
        ok = isinstance(doc, (list, dict)) and data == data.rstrip()
    except ValueError:
        ok = False
    assert (v("json", data) == COMPLETE) == ok


@given(st.lists(TINYC_CHARS, max_size=16).map(bytes))
def test_tinyc_matches_reference(data):
    assert (v("tinyc", data) == COMPLETE) == tinyc_accepts(data)


@given(st.lists(TINYC_CHARS, max_size=16).map(bytes))
def test_tinyc_index_within_input(data):
    verdict = v("tinyc", data)
    if verdict.is_incorrect:
        assert verdict.failure_index is not None
        assert verdict.failure_index <= len(data)


@pytest.mark.parametrize("name", ["json", "tinyc"])
def test_generated_inputs_accepted_by_reference(name):
    accepts = json_accepts if name == "json" else tinyc_accepts
    for seed in range(15):
        ex = Explorer(get_subject(name), ExplorerConfig(alphabet=PRINTABLE, rng_seed=seed,
                                                        max_len=200))
        out = ex.generate()
        assert accepts(out), out


def test_tinyc_depth_limit():
    deep = b"(" * (MAX_DEPTH + 5)
    assert v("tinyc", deep).is_incorrect
    assert v("tinyc", b"(" * 20) == INCOMPLETE
