"""Source text to tokens, line counts and a lightweight structural model.

Language support sits behind a small adapter table keyed by language tag;
Java is the only language shipped.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable, Sequence

from .java import tokenize_java
from .loc import count_java_loc
from .model import (
    AnalysisError,
    FieldRecord,
    LocCounts,
    MalformedText,
    MethodDecl,
    SourceUnit,
    StructuralModel,
    Token,
    TokenKind,
    TypeDecl,
    UnbalancedBraces,
    UnsupportedLanguage,
)
from .structure import parse_java_structure


@dataclass(frozen=True)
class LanguageAdapter:
    tag: str
    extensions: tuple[str, ...]
    tokenize: Callable[[str], list[Token]]
    count_loc: Callable[[str], LocCounts]
    parse_structure: Callable[[Sequence[Token]], StructuralModel]


ADAPTERS: dict[str, LanguageAdapter] = {
    "java": LanguageAdapter(
        tag="java",
        extensions=(".java",),
        tokenize=tokenize_java,
        count_loc=count_java_loc,
        parse_structure=parse_java_structure,
    ),
}


def adapter_for(language: str) -> LanguageAdapter:
    try:
        return ADAPTERS[language]
    except KeyError:
        raise UnsupportedLanguage(f"no adapter for language '{language}'") from None


def language_for_path(path: str) -> str | None:
    ext = os.path.splitext(path)[1].lower()
    for adapter in ADAPTERS.values():
        if ext in adapter.extensions:
            return adapter.tag
    return None


def tokenize(unit: SourceUnit) -> list[Token]:
    """Lex ``unit.text``; raises MalformedText on unterminated literals/comments."""
    return adapter_for(unit.language).tokenize(unit.text)


def count_loc(unit: SourceUnit) -> LocCounts:
    return adapter_for(unit.language).count_loc(unit.text)


def parse_structure(tokens: Sequence[Token], language: str = "java") -> StructuralModel:
    return adapter_for(language).parse_structure(tokens)


__all__ = [
    "ADAPTERS",
    "AnalysisError",
    "FieldRecord",
    "LanguageAdapter",
    "LocCounts",
    "MalformedText",
    "MethodDecl",
    "SourceUnit",
    "StructuralModel",
    "Token",
    "TokenKind",
    "TypeDecl",
    "UnbalancedBraces",
    "UnsupportedLanguage",
    "adapter_for",
    "count_loc",
    "language_for_path",
    "parse_structure",
    "tokenize",
]
