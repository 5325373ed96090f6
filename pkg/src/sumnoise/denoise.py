"""Rule-based overlap denoising plus the adapter for external denoiser processes.

The overlap rule deletes any sentence whose unigram overlap with an earlier
retained sentence is strictly above the threshold, so the first member of
every duplicate group survives and deletions never cascade off already
deleted sentences.

External denoisers (for example trained rewriting models) plug in as a
subprocess speaking a line protocol: one summary per line on stdin, sentences
joined by the ``<S>`` separator token, and exactly one output line per input
line, in order.
"""

from __future__ import annotations

import shlex
import subprocess
import threading
from dataclasses import dataclass
from queue import SimpleQueue
from typing import Iterable, Iterator, Sequence

from .errors import (
    EmptyDocumentError,
    EmptySentenceError,
    InvalidThresholdError,
    ProtocolViolationError,
    SumnoiseError,
)
from .metrics import DEFAULT_OVERLAP_THRESHOLD
from .text import SummaryDoc, TokenizedSentence, tokenize, unigram_overlap

SENTENCE_SEPARATOR = "<S>"


@dataclass(frozen=True)
class DenoiseResult:
    output: SummaryDoc
    deleted_indices: tuple[int, ...]


def overlap_denoise(doc: SummaryDoc, threshold: float = DEFAULT_OVERLAP_THRESHOLD) -> DenoiseResult:
    """Delete sentences that overlap an earlier retained sentence by more than ``threshold``.

    The comparison is strictly greater, so a pair at exactly the threshold is
    kept. The first sentence is never deleted, and a deleted sentence never
    justifies further deletions.
    """
    if not 0.0 <= threshold <= 1.0:
        raise InvalidThresholdError(f"threshold must be in [0, 1], got {threshold}")
    if len(doc) == 0:
        raise EmptyDocumentError("cannot denoise an empty document")
    kept: list[TokenizedSentence] = []
    deleted: list[int] = []
    for i, sent in enumerate(doc.sentences):
        if any(unigram_overlap(sent, earlier) > threshold for earlier in kept):
            deleted.append(i)
        else:
            kept.append(sent)
    return DenoiseResult(SummaryDoc(tuple(kept), source_id=doc.source_id), tuple(deleted))


def external_denoise(
    docs: Iterable[SummaryDoc],
    command: Sequence[str] | str,
    separator: str = SENTENCE_SEPARATOR,
) -> Iterator[SummaryDoc]:
    """Pipe summaries through an external line-filter command.

    Writes one line per document (sentences joined by the separator token)
    to the command's stdin and yields one re-parsed document per output
    line. Sentences containing the separator are rejected on write. A
    missing, extra, or unparseable output line raises ProtocolViolationError
    naming the offending record. Writing happens on a feeder thread so the
    adapter works with filters that buffer arbitrarily.
    """
    argv = shlex.split(command) if isinstance(command, str) else list(command)
    proc = subprocess.Popen(
        argv, stdin=subprocess.PIPE, stdout=subprocess.PIPE, text=True
    )
    assert proc.stdin is not None and proc.stdout is not None
    pending: SimpleQueue[tuple[int, str] | None] = SimpleQueue()
    write_failure: list[Exception] = []

    def feed() -> None:
        index = 0
        try:
            for doc in docs:
                for sent in doc.sentences:
                    if separator in sent.raw:
                        raise ProtocolViolationError(
                            f"record {doc.source_id!r}: sentence contains "
                            f"separator token {separator!r}"
                        )
                pending.put((index, doc.source_id))
                line = f" {separator} ".join(sent.raw for sent in doc.sentences)
                proc.stdin.write(line + "\n")
                proc.stdin.flush()
                index += 1
        except Exception as error:  # surfaced to the consumer below
            write_failure.append(error)
        finally:
            try:
                proc.stdin.close()
            except OSError:
                pass
            pending.put(None)

    feeder = threading.Thread(target=feed, daemon=True)
    feeder.start()
    try:
        while (item := pending.get()) is not None:
            index, source_id = item
            line = proc.stdout.readline()
            if line == "":
                feeder.join()
                _raise_write_failure(write_failure)
                raise ProtocolViolationError(
                    f"no output line for record {source_id!r} (input line {index})"
                )
            yield _parse_line(line, source_id, separator)
        feeder.join()
        _raise_write_failure(write_failure)
        extra = proc.stdout.readline()
        if extra != "":
            raise ProtocolViolationError(
                "external command emitted more lines than it was given"
            )
        returncode = proc.wait()
        if returncode != 0:
            raise ProtocolViolationError(
                f"external command exited with status {returncode}"
            )
    finally:
        proc.stdout.close()
        if proc.poll() is None:
            proc.kill()
            proc.wait()


def _raise_write_failure(write_failure: list[Exception]) -> None:
    if not write_failure:
        return
    error = write_failure[0]
    if isinstance(error, SumnoiseError):
        raise error
    raise ProtocolViolationError(f"failed writing to external command: {error}") from error


def _parse_line(line: str, source_id: str, separator: str) -> SummaryDoc:
    sentences = []
    for piece in line.rstrip("\n").split(separator):
        piece = piece.strip()
        if not piece:
            continue
        try:
            sentences.append(tokenize(piece))
        except EmptySentenceError:
            continue
    if not sentences:
        raise ProtocolViolationError(
            f"record {source_id!r}: unparseable output line {line!r}"
        )
    return SummaryDoc(tuple(sentences), source_id=source_id)
