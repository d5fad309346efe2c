"""Word-alignment pair files: one line per sentence pair, "i-j" tokens.

Indices are 0-based on both sides.  Pairs have set semantics: order and
duplicates in a line are irrelevant.
"""

from __future__ import annotations

import re
from typing import Sequence

from .core import CorefDataError

AlignmentMap = frozenset[tuple[int, int]]

_PAIR = re.compile(r"(\d+)-(\d+)")


class AlignmentParseError(CorefDataError):
    """Malformed alignment pair file."""


def parse_alignments(data: str | bytes) -> list[AlignmentMap]:
    """Parse one alignment map per line; an empty line is an empty map."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    maps: list[AlignmentMap] = []
    for line_no, line in enumerate(data.splitlines(), start=1):
        pairs = set()
        for token in line.split():
            match = _PAIR.fullmatch(token)
            if match is None:
                raise AlignmentParseError(
                    f"line {line_no}: invalid alignment pair {token!r} "
                    f"(expected non-negative 'i-j')"
                )
            pairs.add((int(match.group(1)), int(match.group(2))))
        maps.append(frozenset(pairs))
    return maps


def write_alignments(maps: Sequence[AlignmentMap]) -> str:
    """Serialize alignment maps, pairs sorted for determinism."""
    lines = [
        " ".join(f"{i}-{j}" for i, j in sorted(alignment)) for alignment in maps
    ]
    return "\n".join(lines) + "\n" if lines else ""
