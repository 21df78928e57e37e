"""Structural smells (health-score inputs) and lint rules (remediation-cost inputs)."""

from __future__ import annotations

import re
from dataclasses import asdict, dataclass
from typing import Any, Sequence

from ..codemodel import FieldRecord, LocCounts, StructuralModel, Token, TokenKind
from ..codemodel.structure import ASSIGNMENT_OPERATORS
from ..metrics import cyclomatic_complexity
from .catalog import Catalog, RuleSpec, default_catalog
from .duplication import detect_duplication_in_segments

# Canonical modifier sequence; access modifiers share rank 0.
MODIFIER_RANK = {
    "public": 0,
    "protected": 0,
    "private": 0,
    "abstract": 1,
    "default": 2,
    "static": 3,
    "final": 4,
    "transient": 5,
    "volatile": 6,
    "synchronized": 7,
    "native": 8,
    "strictfp": 9,
}


@dataclass(frozen=True)
class SmellFinding:
    rule_id: str
    path: str
    start_line: int
    end_line: int
    message: str
    remediation_minutes: float
    severity: str
    tier: str

    def to_json(self) -> dict[str, Any]:
        return asdict(self)


def _finding(rule: RuleSpec, path: str, start: int, end: int, message: str) -> SmellFinding:
    return SmellFinding(
        rule_id=rule.id,
        path=path,
        start_line=start,
        end_line=end,
        message=message,
        remediation_minutes=rule.remediation_minutes,
        severity=rule.severity,
        tier=rule.tier,
    )


def detect_structural_smells(
    model: StructuralModel | None,
    loc: LocCounts,
    catalog: Catalog | None = None,
    path: str = "",
) -> list[SmellFinding]:
    """High-level design smells, one finding per offending type, method or clone pair.

    ``model`` may be None when structural parsing failed; the result is then
    empty.
    """
    if model is None:
        return []
    catalog = catalog or default_catalog()
    out: list[SmellFinding] = []

    rule = catalog.get("GodClass")
    if rule is not None:
        max_lines = rule.param("max_code_lines")
        max_methods = rule.param("max_methods")
        for t in model.all_types():
            if t.code_lines > max_lines and t.method_count > max_methods:
                out.append(
                    _finding(
                        rule, path, t.start_line, t.end_line,
                        f"{t.kind} {t.name} has {t.code_lines} code lines and "
                        f"{t.method_count} methods; split it along its responsibilities",
                    )
                )

    checks = [
        ("GodMethod", "max_lines", lambda m: m.span_lines,
         "method {name} spans {value} lines (limit {limit}); extract smaller methods"),
        ("LongParameterList", "max_parameters", lambda m: m.parameter_count,
         "method {name} takes {value} parameters (limit {limit}); introduce a parameter object"),
        ("DeepNesting", "max_depth", lambda m: m.max_nesting_depth,
         "method {name} nests blocks {value} deep (limit {limit}); use guard clauses or extract methods"),
        ("HighMethodComplexity", "max_cc", cyclomatic_complexity,
         "method {name} has cyclomatic complexity {value} (limit {limit}); simplify its branching"),
    ]
    for rule_id, param, measure, template in checks:
        rule = catalog.get(rule_id)
        if rule is None:
            continue
        limit = rule.param(param)
        for m in model.methods:
            if not m.has_body:
                continue
            value = measure(m)
            if value > limit:
                out.append(
                    _finding(
                        rule, path, m.start_line, m.end_line,
                        template.format(name=f"{m.owner}.{m.name}", value=value, limit=limit),
                    )
                )

    rule = catalog.get("DuplicatedBlock")
    if rule is not None:
        segments = [
            model.code_tokens[m.body_range[0] : m.body_range[1]]
            for m in model.methods
            if m.body_range is not None
        ]
        for pair in detect_duplication_in_segments(segments, int(rule.param("window"))):
            out.append(
                _finding(
                    rule, path, pair.first_start_line, pair.first_end_line,
                    f"{pair.length} tokens on lines {pair.first_start_line}-{pair.first_end_line} "
                    f"duplicate lines {pair.second_start_line}-{pair.second_end_line}; "
                    "extract the shared logic",
                )
            )
    out.sort(key=lambda f: (f.start_line, f.rule_id, f.end_line, f.message))
    return out


def count_assignments(tokens: Sequence[Token], name: str) -> int:
    """Occurrences of ``name`` as an assignment target, declaration initializers included."""
    code = [t for t in tokens if t.is_code]
    count = 0
    for i, tok in enumerate(code):
        if tok.kind is not TokenKind.OPERAND or tok.lexeme != name:
            continue
        nxt = code[i + 1].lexeme if i + 1 < len(code) else ""
        prev = code[i - 1].lexeme if i > 0 else ""
        if nxt in ASSIGNMENT_OPERATORS or nxt in ("++", "--") or prev in ("++", "--"):
            count += 1
    return count


def modifiers_in_order(modifiers: Sequence[str]) -> bool:
    ranks = [MODIFIER_RANK[m] for m in modifiers if m in MODIFIER_RANK]
    return all(a <= b for a, b in zip(ranks, ranks[1:]))


def detect_lint_rules(
    model: StructuralModel | None,
    tokens: Sequence[Token],
    catalog: Catalog | None = None,
    path: str = "",
) -> list[SmellFinding]:
    """Low-level convention violations, one finding per violating declaration."""
    if model is None:
        return []
    catalog = catalog or default_catalog()
    out: list[SmellFinding] = []
    pmf = catalog.get("PublicMutableField")
    nfa = catalog.get("NonFinalAssignedOnceField")
    empty = catalog.get("EmptyBody")
    order = catalog.get("ModifierOrder")
    naming = catalog.get("NamingConvention")
    member_re = const_re = None
    if naming is not None:
        member_re = re.compile(naming.param("member_pattern"))
        const_re = re.compile(naming.param("constant_pattern"))

    assignment_cache: dict[str, int] = {}

    def assignments(name: str) -> int:
        if name not in assignment_cache:
            assignment_cache[name] = count_assignments(tokens, name)
        return assignment_cache[name]

    for t in model.all_types():
        if order is not None and not modifiers_in_order(t.modifiers):
            out.append(
                _finding(order, path, t.start_line, t.start_line,
                         f"reorder the modifiers of {t.name} to the canonical order")
            )
        for f in t.fields:
            out.extend(_field_findings(f, t.name, path, pmf, nfa, order, naming,
                                       member_re, const_re, assignments))
        for m in t.methods:
            label = f"{'constructor' if m.is_constructor else 'method'} {m.name}"
            if empty is not None and m.has_body and m.body_is_empty:
                out.append(
                    _finding(empty, path, m.start_line, m.end_line,
                             f"{label} has an empty body; implement it or document why it is empty")
                )
            if order is not None and not modifiers_in_order(m.modifiers):
                out.append(
                    _finding(order, path, m.start_line, m.start_line,
                             f"reorder the modifiers of {label} to the canonical order")
                )
            if (
                naming is not None
                and not m.is_constructor
                and member_re is not None
                and not member_re.match(m.name)
            ):
                out.append(
                    _finding(naming, path, m.start_line, m.start_line,
                             f"rename method {m.name} to match {member_re.pattern}")
                )
    out.sort(key=lambda f: (f.start_line, f.rule_id, f.end_line, f.message))
    return out


def _field_findings(
    f: FieldRecord,
    owner: str,
    path: str,
    pmf: RuleSpec | None,
    nfa: RuleSpec | None,
    order: RuleSpec | None,
    naming: RuleSpec | None,
    member_re: re.Pattern | None,
    const_re: re.Pattern | None,
    assignments,
) -> list[SmellFinding]:
    out = []
    line = f.line
    if pmf is not None and f.is_public and not f.is_final:
        out.append(
            _finding(pmf, path, line, line,
                     f"field {f.name} is public and mutable; make it final or encapsulate it")
        )
    if (
        nfa is not None
        and not f.is_final
        and (f.is_static or f.is_private)
        and assignments(f.name) <= 1
    ):
        out.append(_finding(nfa, path, line, line, f"field {f.name} is never reassigned; declare it final"))
    if order is not None and f.first_in_statement and not modifiers_in_order(f.modifiers):
        out.append(
            _finding(order, path, line, line,
                     f"reorder the modifiers of field {f.name} to the canonical order")
        )
    if naming is not None and member_re is not None and const_re is not None:
        ok = bool(member_re.match(f.name))
        if not ok and f.is_static and f.is_final:
            ok = bool(const_re.match(f.name))
        if not ok:
            out.append(
                _finding(naming, path, line, line,
                         f"rename field {f.name} of {owner} to match {member_re.pattern}")
            )
    return out
