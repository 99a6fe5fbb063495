"""Timeline parsing and digital DNA encoding.

An account's observed behavior is flattened into its *digital DNA*: a string
with one character per timeline action, drawn from a small alphabet keyed on
the action type. All functions here are pure; inputs are never mutated.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

logger = logging.getLogger(__name__)

LABEL_BOT = "bot"
LABEL_GENUINE = "genuine"
VALID_LABELS = (LABEL_BOT, LABEL_GENUINE)

#: Characters that may never appear in a DNA alphabet (file-format delimiters).
_FORBIDDEN_CHARS = {"\t", "\n", "\r", ",", '"'}

MAX_ALPHABET_SIZE = 64


class ActionKind(str, Enum):
    """Canonical action types of the default alphabet."""

    PLAIN_TWEET = "tweet"
    RETWEET = "retweet"
    REPLY = "reply"


class ParseError(ValueError):
    """Malformed input record; message carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class DnaAlphabet:
    """Injective mapping from action-kind names to single DNA characters.

    The kind names double as the accepted ``type`` values of timeline
    records, so extending the alphabet extends the parser's vocabulary.
    """

    mapping: Mapping[str, str]

    def __post_init__(self):
        if not (2 <= len(self.mapping) <= MAX_ALPHABET_SIZE):
            raise ValueError(
                f"alphabet must map between 2 and {MAX_ALPHABET_SIZE} action kinds, "
                f"got {len(self.mapping)}"
            )
        chars = list(self.mapping.values())
        for kind, ch in self.mapping.items():
            if not isinstance(ch, str) or len(ch) != 1:
                raise ValueError(f"alphabet character for {kind!r} must be a single character")
            if ch in _FORBIDDEN_CHARS or not ch.isprintable() or ch.isspace():
                raise ValueError(f"alphabet character {ch!r} is reserved or non-printable")
        if len(set(chars)) != len(chars):
            raise ValueError("alphabet mapping must be injective (distinct characters)")
        object.__setattr__(self, "mapping", dict(self.mapping))

    @classmethod
    def default(cls) -> "DnaAlphabet":
        return cls(
            {
                ActionKind.PLAIN_TWEET.value: "A",
                ActionKind.RETWEET.value: "T",
                ActionKind.REPLY.value: "C",
            }
        )

    @property
    def kinds(self) -> tuple[str, ...]:
        return tuple(self.mapping)

    @property
    def chars(self) -> tuple[str, ...]:
        return tuple(self.mapping.values())

    def encode_kind(self, kind: str) -> str:
        try:
            return self.mapping[kind]
        except KeyError:
            raise ValueError(f"action kind {kind!r} has no alphabet mapping") from None

    def kind_for_char(self, ch: str) -> str:
        for kind, c in self.mapping.items():
            if c == ch:
                return kind
        raise ValueError(f"character {ch!r} is not in the alphabet")

    def __contains__(self, ch: str) -> bool:
        return ch in self.mapping.values()


@dataclass(frozen=True)
class AccountTimeline:
    """An account id plus its chronologically ordered action kinds."""

    account_id: str
    actions: tuple[str, ...]
    label: str | None = None

    def __post_init__(self):
        if not self.account_id:
            raise ValueError("account_id must be nonempty")
        if self.label is not None and self.label not in VALID_LABELS:
            raise ValueError(f"label must be one of {VALID_LABELS}, got {self.label!r}")
        object.__setattr__(self, "actions", tuple(self.actions))


@dataclass(frozen=True)
class DnaSequence:
    """One account's DNA string."""

    account_id: str
    sequence: str


def parse_timelines(
    stream: Iterable[str], alphabet: DnaAlphabet | None = None
) -> list[AccountTimeline]:
    """Parse JSON-Lines timeline records.

    Each line is an object ``{"account_id": str, "actions": [{"type": str,
    "t": optional str}, ...]}``. Action order is preserved; timestamps are
    accepted but unused. Unknown action types and duplicate account ids are
    rejected.
    """
    alphabet = alphabet or DnaAlphabet.default()
    known_kinds = set(alphabet.kinds)
    timelines: list[AccountTimeline] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", lineno) from None
        if not isinstance(record, dict):
            raise ParseError("record must be a JSON object", lineno)
        account_id = record.get("account_id")
        if not isinstance(account_id, str) or not account_id:
            raise ParseError("missing or empty 'account_id'", lineno)
        if account_id in seen:
            raise ParseError(f"duplicate account_id {account_id!r}", lineno)
        actions_raw = record.get("actions")
        if not isinstance(actions_raw, list):
            raise ParseError("'actions' must be a list", lineno)
        kinds: list[str] = []
        for pos, action in enumerate(actions_raw):
            if not isinstance(action, dict) or "type" not in action:
                raise ParseError(f"action #{pos} must be an object with a 'type'", lineno)
            kind = action["type"]
            if kind not in known_kinds:
                raise ParseError(f"unknown action kind {kind!r}", lineno)
            kinds.append(kind)
        seen.add(account_id)
        timelines.append(AccountTimeline(account_id, tuple(kinds)))
    return timelines


def encode_timeline(timeline: AccountTimeline, alphabet: DnaAlphabet | None = None) -> DnaSequence:
    """Encode a timeline into its DNA string (one character per action)."""
    alphabet = alphabet or DnaAlphabet.default()
    return DnaSequence(
        timeline.account_id,
        "".join(alphabet.encode_kind(kind) for kind in timeline.actions),
    )


def load_labels(
    stream: Iterable[str], known_ids: set[str] | None = None
) -> dict[str, str]:
    """Load a ground-truth CSV with header ``account_id,label``.

    Labels must be ``bot`` or ``genuine``. A repeated account id is an
    error. When ``known_ids`` is given, rows for accounts outside it are
    skipped with a warning.
    """
    labels: dict[str, str] = {}
    lines = iter(enumerate(stream, start=1))
    header = next(lines, None)
    if header is None:
        return labels
    if header[1].strip() != "account_id,label":
        raise ParseError("expected header 'account_id,label'", header[0])
    for lineno, raw in lines:
        line = raw.strip()
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise ParseError("expected exactly two comma-separated fields", lineno)
        account_id, label = parts[0], parts[1]
        if label not in VALID_LABELS:
            raise ParseError(f"unknown label {label!r}", lineno)
        if account_id in labels:
            raise ParseError(f"duplicate label for account {account_id!r}", lineno)
        if known_ids is not None and account_id not in known_ids:
            logger.warning("label row for unknown account %r skipped", account_id)
            continue
        labels[account_id] = label
    return labels


def read_dna_file(
    stream: Iterable[str], alphabet: DnaAlphabet | None = None
) -> list[DnaSequence]:
    """Read a DNA TSV (``account_id<TAB>sequence`` per line).

    Round-trips bit-exactly with :func:`write_dna_file`.
    """
    alphabet = alphabet or DnaAlphabet.default()
    valid = set(alphabet.chars)
    sequences: list[DnaSequence] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(stream, start=1):
        line = raw.rstrip("\n")
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ParseError("expected exactly two tab-separated fields", lineno)
        account_id, seq = parts
        if not account_id:
            raise ParseError("empty account_id", lineno)
        if account_id in seen:
            raise ParseError(f"duplicate account_id {account_id!r}", lineno)
        for ch in seq:
            if ch not in valid:
                raise ParseError(f"character {ch!r} outside the alphabet", lineno)
        seen.add(account_id)
        sequences.append(DnaSequence(account_id, seq))
    return sequences


def write_dna_file(sequences: Iterable[DnaSequence]) -> str:
    """Render sequences as DNA TSV text (UTF-8 friendly, LF line endings)."""
    return "".join(f"{s.account_id}\t{s.sequence}\n" for s in sequences)


def write_timelines_jsonl(timelines: Iterable[AccountTimeline]) -> str:
    """Render timelines as JSON Lines (the inverse of :func:`parse_timelines`)."""
    lines = []
    for t in timelines:
        record = {
            "account_id": t.account_id,
            "actions": [{"type": kind} for kind in t.actions],
        }
        lines.append(json.dumps(record, separators=(",", ":")))
    return "".join(line + "\n" for line in lines)


def write_labels_csv(timelines: Iterable[AccountTimeline]) -> str:
    """Render ground-truth labels of labeled timelines as CSV."""
    rows = ["account_id,label"]
    rows += [f"{t.account_id},{t.label}" for t in timelines if t.label is not None]
    return "\n".join(rows) + "\n"


def split_quarantine(
    timelines: list[AccountTimeline], min_dna_length: int = 10
) -> tuple[list[AccountTimeline], list[AccountTimeline]]:
    """Divert timelines shorter than ``min_dna_length`` to a quarantine list.

    Tiny timelines make common-substring analysis meaningless, so they are
    excluded from clustering and reported separately.
    """
    kept = [t for t in timelines if len(t.actions) >= min_dna_length]
    quarantined = [t for t in timelines if len(t.actions) < min_dna_length]
    if quarantined:
        logger.info(
            "quarantined %d account(s) with fewer than %d actions",
            len(quarantined),
            min_dna_length,
        )
    return kept, quarantined
