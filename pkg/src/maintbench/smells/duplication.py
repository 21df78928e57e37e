"""Token-window clone detection within one file.

Identifiers are normalized to a placeholder, literals and everything else keep
their text, so renamed copies still match. A reported pair is a maximal run
of equal normalized tokens at a fixed offset, split so that the two spans
never overlap.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Hashable, Sequence

from ..codemodel import Token, TokenKind

MIN_WINDOW = 10
# Highly periodic code (long tables of identical statements) can put hundreds
# of positions into one window bucket; only the first ones are paired.
MAX_BUCKET = 64


@dataclass(frozen=True, order=True)
class DuplicatePair:
    first_start_line: int
    first_end_line: int
    second_start_line: int
    second_end_line: int
    length: int
    # Token offsets into the (comment-free) sequence that was scanned.
    first_offset: int
    second_offset: int


def normalize(tok: Token) -> str:
    if tok.kind is TokenKind.OPERAND:
        return "$id"
    return tok.lexeme


def detect_duplication(tokens: Sequence[Token], window: int = 40) -> list[DuplicatePair]:
    """Find duplicated token runs of at least ``window`` tokens."""
    return detect_duplication_in_segments([tokens], window)


def detect_duplication_in_segments(
    segments: Sequence[Sequence[Token]], window: int = 40
) -> list[DuplicatePair]:
    """Like detect_duplication, but no match may cross a segment boundary."""
    if window < MIN_WINDOW:
        raise ValueError(f"duplication window must be >= {MIN_WINDOW} tokens")
    toks: list[Token | None] = []
    keys: list[Hashable] = []
    for seg_no, seg in enumerate(segments):
        if seg_no:
            toks.append(None)
            keys.append(("<segment>", seg_no))
        for tok in seg:
            if tok.is_code:
                toks.append(tok)
                keys.append(normalize(tok))
    n = len(keys)
    if n < 2 * window:
        return []

    buckets: dict[tuple, list[int]] = defaultdict(list)
    for p in range(n - window + 1):
        buckets[tuple(keys[p : p + window])].append(p)

    candidates: set[tuple[int, int, int]] = set()
    for positions in buckets.values():
        if len(positions) < 2:
            continue
        positions = positions[:MAX_BUCKET]
        for a, p in enumerate(positions):
            for q in positions[a + 1 :]:
                d = q - p
                if d < window:
                    continue
                if p > 0 and keys[p - 1] == keys[q - 1]:
                    continue  # not left-maximal; found from an earlier start
                run = window
                while q + run < n and keys[p + run] == keys[q + run]:
                    run += 1
                start = p
                while run >= window:
                    length = min(run, d)
                    if length < window:
                        break
                    candidates.add((start, start + d, length))
                    start += length
                    run -= length

    # Longest first; drop a pair once both of its spans are already reported.
    covered: set[int] = set()
    pairs: list[DuplicatePair] = []
    for p, q, length in sorted(candidates, key=lambda c: (-c[2], c[0], c[1])):
        first = range(p, p + length)
        second = range(q, q + length)
        if all(i in covered for i in first) and all(i in covered for i in second):
            continue
        covered.update(first)
        covered.update(second)
        pairs.append(_pair(toks, p, q, length))
    pairs.sort()
    return pairs


def _pair(toks: list[Token | None], p: int, q: int, length: int) -> DuplicatePair:
    def lines(start: int) -> tuple[int, int]:
        first, last = toks[start], toks[start + length - 1]
        assert first is not None and last is not None
        return first.line, last.end_line

    a, b = lines(p), lines(q)
    return DuplicatePair(a[0], a[1], b[0], b[1], length, p, q)
