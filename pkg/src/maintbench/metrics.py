"""Low-level size/complexity metrics and the three-factor Maintainability Index.

Halstead classification used throughout:

* operators: operator tokens, every reserved keyword, and punctuation.
  Grouping pairs count once, on the opening bracket; ``)``, ``]`` and ``}``
  are not counted.
* operands: identifiers and literals (``true``, ``false``, ``null`` included).
* comments and whitespace are ignored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .codemodel import LocCounts, MethodDecl, StructuralModel, Token, TokenKind

RED_BELOW = 10.0
GREEN_FROM = 20.0

_CLOSERS = frozenset({")", "]", "}"})

CC_AGGREGATES = ("sum", "max", "mean")


@dataclass(frozen=True)
class HalsteadMetrics:
    n1: int = 0
    n2: int = 0
    N1: int = 0
    N2: int = 0

    @property
    def vocabulary(self) -> int:
        return self.n1 + self.n2

    @property
    def length(self) -> int:
        return self.N1 + self.N2

    @property
    def volume(self) -> float:
        if self.vocabulary == 0:
            return 0.0
        return self.length * math.log2(self.vocabulary)


@dataclass(frozen=True)
class MetricVector:
    loc: int
    cc_file: int
    cc_max: int
    halstead: HalsteadMetrics
    mi: float
    mi_band: str
    method_count: int = 0
    cc_used: float = 0.0


def halstead(tokens: Iterable[Token]) -> HalsteadMetrics:
    operators: dict[str, int] = {}
    operands: dict[str, int] = {}
    for tok in tokens:
        kind = tok.kind
        if kind in (TokenKind.OPERAND, TokenKind.LITERAL):
            operands[tok.lexeme] = operands.get(tok.lexeme, 0) + 1
        elif kind in (TokenKind.OPERATOR, TokenKind.KEYWORD):
            operators[tok.lexeme] = operators.get(tok.lexeme, 0) + 1
        elif kind is TokenKind.PUNCTUATION and tok.lexeme not in _CLOSERS:
            operators[tok.lexeme] = operators.get(tok.lexeme, 0) + 1
    return HalsteadMetrics(
        n1=len(operators),
        n2=len(operands),
        N1=sum(operators.values()),
        N2=sum(operands.values()),
    )


def cyclomatic_complexity(method: MethodDecl) -> int:
    return 1 + method.decision_point_count


def maintainability_index(hv: float, cc: float, loc: float) -> float:
    """Three-factor MI on a 0..100 scale.

    ``hv`` and ``loc`` are floored at 1 so the logarithms stay defined; a
    trivial file therefore scores 100.
    """
    if hv < 0 or cc < 0 or loc < 0:
        raise ValueError("MI inputs must be non-negative")
    hv = max(hv, 1.0)
    loc = max(loc, 1.0)
    raw = 171.0 - 5.2 * math.log(hv) - 0.23 * cc - 16.2 * math.log(loc)
    return max(0.0, raw * 100.0 / 171.0)


def mi_band(mi: float) -> str:
    if mi < RED_BELOW:
        return "Red"
    if mi < GREEN_FROM:
        return "Yellow"
    return "Green"


def aggregate_cc(per_method: Sequence[int], how: str = "sum") -> float:
    if how not in CC_AGGREGATES:
        raise ValueError(f"unknown CC aggregate '{how}', expected one of {CC_AGGREGATES}")
    if not per_method:
        return 0
    if how == "sum":
        return sum(per_method)
    if how == "max":
        return max(per_method)
    return sum(per_method) / len(per_method)


def compute_metrics(
    tokens: Sequence[Token],
    loc: LocCounts,
    model: StructuralModel,
    cc_aggregate: str = "sum",
) -> MetricVector:
    per_method = [cyclomatic_complexity(m) for m in model.methods]
    hal = halstead(tokens)
    cc_used = aggregate_cc(per_method, cc_aggregate)
    mi = maintainability_index(hal.volume, cc_used, loc.code_lines)
    return MetricVector(
        loc=loc.code_lines,
        cc_file=sum(per_method),
        cc_max=max(per_method, default=0),
        halstead=hal,
        mi=mi,
        mi_band=mi_band(mi),
        method_count=len(per_method),
        cc_used=cc_used,
    )
