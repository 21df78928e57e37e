"""Data types shared by the lexer, the line counter and the structural parser."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class AnalysisError(Exception):
    """Base class for errors that abort analysis of a single file."""

    def __init__(self, message: str, line: int | None = None) -> None:
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnsupportedLanguage(AnalysisError):
    pass


class MalformedText(AnalysisError):
    """Unterminated string, character literal or block comment."""


class UnbalancedBraces(AnalysisError):
    """Brackets do not pair up, so no structure can be recovered."""


class TokenKind(str, enum.Enum):
    OPERATOR = "operator"
    OPERAND = "operand"
    KEYWORD = "keyword"
    LITERAL = "literal"
    COMMENT = "comment"
    WHITESPACE = "whitespace"
    PUNCTUATION = "punctuation"


@dataclass(frozen=True)
class SourceUnit:
    path: str
    text: str
    project: str = ""
    language: str = "java"

    def __post_init__(self) -> None:
        if not self.path:
            raise ValueError("SourceUnit.path must be non-empty")


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    line: int

    @property
    def is_code(self) -> bool:
        return self.kind not in (TokenKind.COMMENT, TokenKind.WHITESPACE)

    @property
    def end_line(self) -> int:
        return self.line + self.lexeme.count("\n")


@dataclass(frozen=True)
class LocCounts:
    """Physical line counts. A line holding both code and a comment counts as code."""

    total_lines: int
    code_lines: int
    comment_lines: int
    blank_lines: int
    diagnostics: tuple[str, ...] = ()


@dataclass(frozen=True)
class FieldRecord:
    name: str
    line: int
    modifiers: tuple[str, ...]
    is_public: bool
    is_final: bool
    is_static: bool
    is_private: bool = False
    # Only the first declarator of `int a, b;` carries the statement's modifier list
    # for modifier-order checks.
    first_in_statement: bool = True


@dataclass(frozen=True)
class MethodDecl:
    name: str
    owner: str
    start_line: int
    end_line: int
    parameter_count: int
    decision_point_count: int
    max_nesting_depth: int
    body_is_empty: bool
    is_constructor: bool
    has_body: bool = True
    modifiers: tuple[str, ...] = ()
    # Half-open index range of the body tokens inside StructuralModel.code_tokens.
    body_range: tuple[int, int] | None = None

    @property
    def span_lines(self) -> int:
        return self.end_line - self.start_line + 1


@dataclass(frozen=True)
class TypeDecl:
    name: str
    kind: str
    start_line: int
    end_line: int
    code_lines: int
    methods: tuple[MethodDecl, ...]
    fields: tuple[FieldRecord, ...]
    modifiers: tuple[str, ...] = ()
    nested: tuple[TypeDecl, ...] = ()

    @property
    def method_count(self) -> int:
        return len(self.methods)


@dataclass(frozen=True)
class StructuralModel:
    """Top-level types (nested ones hang off their parent) plus a flat method list."""

    types: tuple[TypeDecl, ...]
    methods: tuple[MethodDecl, ...]
    code_tokens: tuple[Token, ...] = field(default=(), repr=False)

    def all_types(self) -> list[TypeDecl]:
        out: list[TypeDecl] = []
        stack = list(reversed(self.types))
        while stack:
            t = stack.pop()
            out.append(t)
            stack.extend(reversed(t.nested))
        return out
