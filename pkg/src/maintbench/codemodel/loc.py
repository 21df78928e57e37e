"""Physical line classification (code / comment / blank).

This scanner is deliberately separate from the lexer: it never fails, so a file
the lexer rejects still gets line counts.
"""

from __future__ import annotations

from .model import LocCounts


def count_java_loc(text: str) -> LocCounts:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    n = len(lines)
    has_code = [False] * n
    has_comment = [False] * n
    diagnostics: list[str] = []

    in_block = False
    in_text_block = False
    block_start: tuple[int, int] | None = None
    for ln, line in enumerate(lines):
        i = 0
        size = len(line)
        if in_block:
            has_comment[ln] = True
        while i < size:
            ch = line[i]
            if in_block:
                end = line.find("*/", i)
                if end < 0:
                    i = size
                else:
                    in_block = False
                    i = end + 2
                continue
            if in_text_block:
                has_code[ln] = True
                end = line.find('"""', i)
                if end < 0:
                    i = size
                else:
                    in_text_block = False
                    i = end + 3
                continue
            if ch.isspace():
                i += 1
            elif line.startswith("//", i):
                has_comment[ln] = True
                i = size
            elif line.startswith("/*", i):
                has_comment[ln] = True
                in_block = True
                block_start = (ln, i)
                i += 2
            elif line.startswith('"""', i):
                has_code[ln] = True
                in_text_block = True
                i += 3
            elif ch in "\"'":
                has_code[ln] = True
                i = _skip_quoted(line, i, ch)
            else:
                has_code[ln] = True
                i += 1

    if in_block and block_start is not None:
        start_ln, start_col = block_start
        diagnostics.append(
            f"line {start_ln + 1}: unterminated block comment; remainder counted as code"
        )
        if line_has_code_after(lines[start_ln], start_col):
            has_code[start_ln] = True
        for ln in range(start_ln + 1, n):
            if lines[ln].strip():
                has_code[ln] = True
            has_comment[ln] = False

    code = comment = blank = 0
    for ln in range(n):
        if has_code[ln]:
            code += 1
        elif has_comment[ln]:
            comment += 1
        elif not lines[ln].strip():
            blank += 1
        else:
            comment += 1
    return LocCounts(
        total_lines=n,
        code_lines=code,
        comment_lines=comment,
        blank_lines=blank,
        diagnostics=tuple(diagnostics),
    )


def line_has_code_after(line: str, col: int) -> bool:
    return bool(line[col:].strip())


def _skip_quoted(line: str, i: int, quote: str) -> int:
    # Java string and char literals cannot span lines; an unterminated one just
    # runs to the end of the line here.
    j = i + 1
    while j < len(line):
        c = line[j]
        if c == "\\":
            j += 2
            continue
        if c == quote:
            return j + 1
        j += 1
    return len(line)
