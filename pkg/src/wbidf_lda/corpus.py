"""Corpus ingestion, tokenization, and vocabulary statistics.

Posts are read from JSONL or CSV files and carry engagement counts
(likes, comments, retweets) alongside their token sequences.  The
vocabulary assigns dense term ids in first-occurrence order and records
per-term document frequencies, which downstream IDF filtering consumes.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path


class IngestError(ValueError):
    """Malformed input record; carries the offending line number and field."""

    def __init__(self, line_no: int, field_name: str, message: str):
        super().__init__(f"line {line_no}, field '{field_name}': {message}")
        self.line_no = line_no
        self.field_name = field_name


class EmptyVocabularyError(ValueError):
    """No terms available to build or retain in a vocabulary."""


@dataclass(frozen=True)
class Post:
    """One social-media document with its engagement attributes.

    Empty token sequences are allowed; such posts are dropped by the
    encoding stage, never at ingestion.
    """

    id: str
    tokens: tuple[str, ...]
    likes: int
    comments: int
    retweets: int
    timestamp: str | None = None

    def __post_init__(self):
        if self.likes < 0 or self.comments < 0 or self.retweets < 0:
            raise ValueError(f"post {self.id!r}: engagement counts must be >= 0")


@dataclass
class Vocabulary:
    """Bijective term <-> id mapping with document-frequency statistics.

    Ids are dense (0..V-1) and assigned by first occurrence, so the
    mapping is reproducible for a given post sequence.
    """

    term_to_id: dict[str, int] = field(default_factory=dict)
    id_to_term: list[str] = field(default_factory=list)
    doc_freq: list[int] = field(default_factory=list)
    n_docs: int = 0

    def __len__(self) -> int:
        return len(self.id_to_term)

    def __contains__(self, term: str) -> bool:
        return term in self.term_to_id

    @property
    def size(self) -> int:
        return len(self.id_to_term)


@dataclass(frozen=True)
class EncodedDoc:
    """Id-encoded form of a post: tokens surviving the vocabulary, in order."""

    post_id: str
    term_ids: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.term_ids)


def normalize_whitespace_text(text: str) -> list[str]:
    """Lowercase, replace non-alphanumeric characters with spaces, split.

    Unicode-aware: CJK ideographs and other letters count as alphanumeric,
    so mixed-script text survives the filter.
    """
    lowered = text.lower()
    cleaned = "".join(c if c.isalnum() or c.isspace() else " " for c in lowered)
    return cleaned.split()


def _require_engagement(value, field_name: str, line_no: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise IngestError(line_no, field_name, f"expected an integer, got {value!r}")
    if value < 0:
        raise IngestError(line_no, field_name, f"negative count {value}")
    return value


def _post_from_record(rec: dict, line_no: int, tokenization: str) -> Post:
    if not isinstance(rec, dict):
        raise IngestError(line_no, "record", "expected a JSON object")
    post_id = rec.get("id")
    if not isinstance(post_id, str) or not post_id:
        raise IngestError(line_no, "id", f"expected a non-empty string, got {post_id!r}")

    if tokenization == "pretokenized":
        tokens = rec.get("tokens")
        if not isinstance(tokens, list) or any(not isinstance(t, str) for t in tokens):
            raise IngestError(line_no, "tokens", "expected an array of strings")
        token_tuple = tuple(tokens)
    elif tokenization == "whitespace":
        text = rec.get("text")
        if not isinstance(text, str):
            raise IngestError(line_no, "text", f"expected a string, got {text!r}")
        token_tuple = tuple(normalize_whitespace_text(text))
    else:
        raise ValueError(f"unknown tokenization mode {tokenization!r}")

    likes = _require_engagement(rec.get("likes"), "likes", line_no)
    comments = _require_engagement(rec.get("comments"), "comments", line_no)
    retweets = _require_engagement(rec.get("retweets"), "retweets", line_no)
    timestamp = rec.get("timestamp")
    if timestamp is not None and not isinstance(timestamp, str):
        raise IngestError(line_no, "timestamp", f"expected a string, got {timestamp!r}")

    return Post(
        id=post_id,
        tokens=token_tuple,
        likes=likes,
        comments=comments,
        retweets=retweets,
        timestamp=timestamp,
    )


def _ingest_jsonl(path: Path, tokenization: str) -> list[tuple[int, Post]]:
    posts = []
    with path.open("r", encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as e:
                raise IngestError(line_no, "record", f"invalid JSON: {e.msg}") from e
            posts.append((line_no, _post_from_record(rec, line_no, tokenization)))
    return posts


_CSV_COLUMNS = ("id", "text", "likes", "comments", "retweets")


def _csv_int(row: dict, field_name: str, line_no: int) -> int:
    raw = row[field_name]
    try:
        value = int(raw.strip())
    except (ValueError, AttributeError):
        raise IngestError(line_no, field_name, f"expected an integer, got {raw!r}") from None
    if value < 0:
        raise IngestError(line_no, field_name, f"negative count {value}")
    return value


def _ingest_csv(path: Path, tokenization: str) -> list[tuple[int, Post]]:
    posts = []
    with path.open("r", encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            return []
        expected = list(_CSV_COLUMNS)
        if header != expected and header != expected + ["timestamp"]:
            raise IngestError(1, "header", f"expected columns {expected}[,timestamp], got {header}")
        has_timestamp = len(header) == len(expected) + 1
        for cells in reader:
            line_no = reader.line_num
            if len(cells) != len(header):
                raise IngestError(line_no, "record", f"expected {len(header)} columns, got {len(cells)}")
            row = dict(zip(header, cells))
            if not row["id"]:
                raise IngestError(line_no, "id", "expected a non-empty string")
            if tokenization == "pretokenized":
                tokens = tuple(row["text"].split())
            elif tokenization == "whitespace":
                tokens = tuple(normalize_whitespace_text(row["text"]))
            else:
                raise ValueError(f"unknown tokenization mode {tokenization!r}")
            post = Post(
                id=row["id"],
                tokens=tokens,
                likes=_csv_int(row, "likes", line_no),
                comments=_csv_int(row, "comments", line_no),
                retweets=_csv_int(row, "retweets", line_no),
                timestamp=row["timestamp"] if has_timestamp and row["timestamp"] else None,
            )
            posts.append((line_no, post))
    return posts


def ingest(path: str | Path, format: str = "jsonl", tokenization: str = "pretokenized") -> list[Post]:
    """Read posts from a JSONL or CSV file, in file order.

    ``tokenization="pretokenized"`` takes the tokens field verbatim
    (for CSV, the text column split on whitespace, untouched);
    ``"whitespace"`` lowercases the text, strips non-alphanumerics, and
    splits on whitespace.  Raises :class:`IngestError` for malformed
    records, negative engagement counts, or duplicate post ids.
    """
    path = Path(path)
    if format == "jsonl":
        numbered = _ingest_jsonl(path, tokenization)
    elif format == "csv":
        numbered = _ingest_csv(path, tokenization)
    else:
        raise ValueError(f"unknown input format {format!r}")

    seen: set[str] = set()
    for line_no, post in numbered:
        if post.id in seen:
            raise IngestError(line_no, "id", f"duplicate post id {post.id!r}")
        seen.add(post.id)
    return [post for _, post in numbered]


def term_frequency(term: str, doc: Post) -> float:
    """Occurrence count of ``term`` in ``doc`` divided by the doc's length."""
    if not doc.tokens:
        raise ValueError(f"post {doc.id!r} has no tokens; term frequency undefined")
    return doc.tokens.count(term) / len(doc.tokens)


def build_vocabulary(posts: list[Post]) -> Vocabulary:
    """Collect distinct terms and per-term document frequencies.

    n_docs counts all posts (including empty ones, which contribute no
    terms).  Raises :class:`EmptyVocabularyError` when no post has tokens.
    """
    vocab = Vocabulary(n_docs=len(posts))
    for post in posts:
        for term in post.tokens:
            if term not in vocab.term_to_id:
                vocab.term_to_id[term] = len(vocab.id_to_term)
                vocab.id_to_term.append(term)
                vocab.doc_freq.append(0)
        for term in set(post.tokens):
            vocab.doc_freq[vocab.term_to_id[term]] += 1
    if not vocab.id_to_term:
        raise EmptyVocabularyError("no post contains any tokens")
    return vocab
