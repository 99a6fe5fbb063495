import io
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from botdna.codec import (
    AccountTimeline,
    ActionKind,
    DnaAlphabet,
    DnaSequence,
    ParseError,
    encode_timeline,
    load_labels,
    parse_timelines,
    read_dna_file,
    split_quarantine,
    write_dna_file,
    write_labels_csv,
    write_timelines_jsonl,
)


def _jsonl(*records):
    return io.StringIO("".join(json.dumps(r) + "\n" for r in records))


def record(account_id, kinds):
    return {"account_id": account_id, "actions": [{"type": k} for k in kinds]}


class TestParseTimelines:
    def test_basic_record(self):
        stream = _jsonl(record("u1", ["tweet", "retweet", "retweet", "reply"]))
        (timeline,) = parse_timelines(stream)
        assert timeline.account_id == "u1"
        assert len(timeline.actions) == 4
        assert timeline.actions == ("tweet", "retweet", "retweet", "reply")

    def test_empty_actions(self):
        (timeline,) = parse_timelines(_jsonl(record("u2", [])))
        assert timeline.actions == ()

    def test_duplicate_id_rejected(self):
        stream = _jsonl(record("u1", ["tweet"]), record("u1", ["reply"]))
        with pytest.raises(ParseError, match="u1"):
            parse_timelines(stream)

    def test_unknown_kind_rejected(self):
        stream = _jsonl(record("u1", ["tweet", "quote"]))
        with pytest.raises(ParseError, match="quote"):
            parse_timelines(stream)

    def test_malformed_json_carries_line_number(self):
        stream = io.StringIO('{"account_id": "u1", "actions": []}\n{oops\n')
        with pytest.raises(ParseError, match="line 2"):
            parse_timelines(stream)

    def test_timestamps_accepted_but_unused(self):
        stream = _jsonl(
            {
                "account_id": "u1",
                "actions": [{"type": "tweet", "t": "2025-01-01T00:00:00Z"}],
            }
        )
        (timeline,) = parse_timelines(stream)
        assert timeline.actions == ("tweet",)

    def test_order_preserved(self):
        stream = _jsonl(record("b", ["tweet"]), record("a", ["reply"]))
        ids = [t.account_id for t in parse_timelines(stream)]
        assert ids == ["b", "a"]

    def test_roundtrip_with_writer(self):
        timelines = [
            AccountTimeline("u1", ("tweet", "reply")),
            AccountTimeline("u2", ()),
        ]
        text = write_timelines_jsonl(timelines)
        assert parse_timelines(io.StringIO(text)) == timelines


class TestEncode:
    def test_default_alphabet_mapping(self):
        timeline = AccountTimeline("u1", ("tweet", "retweet", "retweet", "reply"))
        assert encode_timeline(timeline).sequence == "ATTC"

    def test_empty_timeline(self):
        assert encode_timeline(AccountTimeline("u1", ())).sequence == ""

    def test_replies(self):
        assert encode_timeline(AccountTimeline("u1", ("reply", "reply"))).sequence == "CC"

    def test_unmapped_kind_named_in_error(self):
        timeline = AccountTimeline("u1", ("quote",))
        with pytest.raises(ValueError, match="quote"):
            encode_timeline(timeline)

    def test_custom_alphabet(self):
        alphabet = DnaAlphabet({"tweet": "x", "retweet": "y", "reply": "z", "like": "w"})
        timeline = AccountTimeline("u1", ("like", "tweet"))
        assert encode_timeline(timeline, alphabet).sequence == "wx"

    @given(st.lists(st.sampled_from([k.value for k in ActionKind]), max_size=60))
    def test_encoding_is_length_preserving(self, kinds):
        timeline = AccountTimeline("u", tuple(kinds))
        encoded = encode_timeline(timeline)
        assert len(encoded.sequence) == len(timeline.actions)
        # pure function: same input, same output
        assert encode_timeline(timeline) == encoded


class TestAlphabet:
    def test_default_is_three_kinds(self):
        alphabet = DnaAlphabet.default()
        assert alphabet.kinds == ("tweet", "retweet", "reply")
        assert alphabet.chars == ("A", "T", "C")

    def test_rejects_non_injective(self):
        with pytest.raises(ValueError, match="injective"):
            DnaAlphabet({"tweet": "A", "retweet": "A"})

    def test_rejects_tiny_and_huge(self):
        with pytest.raises(ValueError):
            DnaAlphabet({"tweet": "A"})
        big = {f"kind{i}": chr(ord("0") + i) for i in range(65)}
        with pytest.raises(ValueError):
            DnaAlphabet(big)

    def test_rejects_reserved_characters(self):
        with pytest.raises(ValueError):
            DnaAlphabet({"tweet": "\t", "retweet": "B"})


class TestLabels:
    def test_basic(self):
        labels = load_labels(io.StringIO("account_id,label\nu1,bot\nu2,genuine\n"))
        assert labels == {"u1": "bot", "u2": "genuine"}

    def test_duplicate_is_error(self):
        stream = io.StringIO("account_id,label\nu1,bot\nu1,genuine\n")
        with pytest.raises(ParseError, match="duplicate"):
            load_labels(stream)

    def test_unknown_token_is_error(self):
        with pytest.raises(ParseError, match="cyborg"):
            load_labels(io.StringIO("account_id,label\nu1,cyborg\n"))

    def test_empty_file(self):
        assert load_labels(io.StringIO("")) == {}

    def test_unknown_id_skipped_with_known_ids(self, caplog):
        stream = io.StringIO("account_id,label\nu1,bot\nghost,bot\n")
        with caplog.at_level("WARNING"):
            labels = load_labels(stream, known_ids={"u1"})
        assert labels == {"u1": "bot"}
        assert "ghost" in caplog.text

    def test_writer_roundtrip(self):
        timelines = [
            AccountTimeline("u1", ("tweet",) * 3, label="bot"),
            AccountTimeline("u2", ("reply",) * 3, label="genuine"),
        ]
        text = write_labels_csv(timelines)
        assert load_labels(io.StringIO(text)) == {"u1": "bot", "u2": "genuine"}


class TestDnaFile:
    def test_read(self):
        (seq,) = read_dna_file(io.StringIO("u1\tATTC\n"))
        assert seq == DnaSequence("u1", "ATTC")

    def test_invalid_character(self):
        with pytest.raises(ParseError, match="line 1"):
            read_dna_file(io.StringIO("u1\tATXC\n"))

    def test_empty_sequence_allowed(self):
        (seq,) = read_dna_file(io.StringIO("u1\t\n"))
        assert seq.sequence == ""

    def test_write_then_read_is_identity(self):
        seqs = [DnaSequence("u1", "ATTC"), DnaSequence("u2", ""), DnaSequence("u3", "CCC")]
        assert read_dna_file(io.StringIO(write_dna_file(seqs))) == seqs

    def test_read_then_write_is_identity(self):
        text = "u1\tATTC\nu2\t\nu3\tCAT\n"
        assert write_dna_file(read_dna_file(io.StringIO(text))) == text

    @given(
        st.lists(
            st.text(alphabet="ATC", max_size=40),
            max_size=8,
        )
    )
    def test_roundtrip_property(self, sequences):
        seqs = [DnaSequence(f"u{i}", s) for i, s in enumerate(sequences)]
        assert read_dna_file(io.StringIO(write_dna_file(seqs))) == seqs


class TestQuarantine:
    def test_split(self):
        long = AccountTimeline("keeper", ("tweet",) * 10)
        short = AccountTimeline("shorty", ("tweet",) * 9)
        kept, quarantined = split_quarantine([long, short], min_dna_length=10)
        assert kept == [long]
        assert quarantined == [short]

    def test_zero_threshold_keeps_all(self):
        t = AccountTimeline("u", ())
        kept, quarantined = split_quarantine([t], min_dna_length=0)
        assert kept == [t] and quarantined == []
