"""Brace-matching structural parser for Java.

This is not a grammar. It pairs brackets, walks type bodies member by member
and classifies each member as a nested type, a method/constructor, a field
declaration or an initializer block. That is enough to recover everything the
metrics and smell detectors need: method spans, parameter counts, decision
points, block nesting and field modifiers.
"""

from __future__ import annotations

from typing import Sequence

from .model import (
    FieldRecord,
    MethodDecl,
    StructuralModel,
    Token,
    TokenKind,
    TypeDecl,
    UnbalancedBraces,
)

MODIFIERS = frozenset(
    {
        "public",
        "protected",
        "private",
        "abstract",
        "static",
        "final",
        "transient",
        "volatile",
        "synchronized",
        "native",
        "strictfp",
        "default",
    }
)

TYPE_KEYWORDS = frozenset({"class", "interface", "enum"})

DECISION_KEYWORDS = frozenset({"if", "for", "while", "do", "case", "catch"})
DECISION_OPERATORS = frozenset({"&&", "||"})

ASSIGNMENT_OPERATORS = frozenset(
    {"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="}
)

_OPEN = {"(": ")", "[": "]", "{": "}"}
_CLOSE = {v: k for k, v in _OPEN.items()}
_ANGLE_DELTA = {"<": 1, ">": -1, ">>": -2, ">>>": -3}
# A `?` followed by one of these is a generic wildcard, not a ternary.
_WILDCARD_FOLLOWERS = frozenset({">", ">>", ">>>", ",", "extends", "super", ")"})


def match_brackets(code: Sequence[Token]) -> dict[int, int]:
    """Map each opening bracket index to its closing index (and back)."""
    pairs: dict[int, int] = {}
    stack: list[int] = []
    for i, tok in enumerate(code):
        if tok.kind is not TokenKind.PUNCTUATION:
            continue
        lex = tok.lexeme
        if lex in _OPEN:
            stack.append(i)
        elif lex in _CLOSE:
            if not stack:
                raise UnbalancedBraces(f"unmatched '{lex}'", tok.line)
            j = stack.pop()
            if code[j].lexeme != _CLOSE[lex]:
                raise UnbalancedBraces(
                    f"'{code[j].lexeme}' opened on line {code[j].line} closed by '{lex}'",
                    tok.line,
                )
            pairs[j] = i
            pairs[i] = j
    if stack:
        tok = code[stack[-1]]
        raise UnbalancedBraces(f"unclosed '{tok.lexeme}'", tok.line)
    return pairs


def parse_java_structure(tokens: Sequence[Token]) -> StructuralModel:
    code = tuple(t for t in tokens if t.is_code)
    parser = _Parser(code, match_brackets(code))
    types = parser.parse_compilation_unit()
    return StructuralModel(types=tuple(types), methods=tuple(parser.methods), code_tokens=code)


class _Parser:
    def __init__(self, code: tuple[Token, ...], pairs: dict[int, int]) -> None:
        self.code = code
        self.pairs = pairs
        self.methods: list[MethodDecl] = []

    # -- helpers ---------------------------------------------------------

    def lex(self, i: int) -> str:
        return self.code[i].lexeme if 0 <= i < len(self.code) else ""

    def is_ident(self, i: int) -> bool:
        return 0 <= i < len(self.code) and self.code[i].kind is TokenKind.OPERAND

    def skip_annotation(self, i: int) -> int:
        # i points at '@'
        i += 1
        while self.is_ident(i) or self.lex(i) == ".":
            i += 1
        if self.lex(i) == "(":
            i = self.pairs[i] + 1
        return i

    def read_prefix(self, i: int, end: int) -> tuple[int, list[str]]:
        """Skip annotations and collect keyword modifiers in source order."""
        modifiers: list[str] = []
        while i < end:
            lex = self.lex(i)
            if lex == "@" and self.lex(i + 1) != "interface":
                i = self.skip_annotation(i)
            elif self.code[i].kind is TokenKind.KEYWORD and lex in MODIFIERS:
                modifiers.append(lex)
                i += 1
            elif lex in ("sealed", "non") and self.is_ident(i):
                # contextual modifiers `sealed` / `non-sealed`
                if lex == "non" and self.lex(i + 1) == "-" and self.lex(i + 2) == "sealed":
                    i += 3
                elif lex == "sealed" and (
                    self.lex(i + 1) in TYPE_KEYWORDS or self.lex(i + 1) in MODIFIERS
                ):
                    i += 1
                else:
                    break
            else:
                break
        return i, modifiers

    def starts_type(self, i: int) -> bool:
        lex = self.lex(i)
        if self.code[i].kind is TokenKind.KEYWORD and lex in TYPE_KEYWORDS:
            return True
        if lex == "@" and self.lex(i + 1) == "interface":
            return True
        return (
            lex == "record"
            and self.is_ident(i)
            and self.is_ident(i + 1)
            and self.lex(i + 2) in ("(", "<")
        )

    def line_set(self, start: int, stop: int) -> set[int]:
        lines: set[int] = set()
        for tok in self.code[start:stop]:
            lines.update(range(tok.line, tok.end_line + 1))
        return lines

    # -- compilation unit -----------------------------------------------

    def parse_compilation_unit(self) -> list[TypeDecl]:
        types: list[TypeDecl] = []
        i = 0
        n = len(self.code)
        while i < n:
            lex = self.lex(i)
            if lex in ("package", "import"):
                while i < n and self.lex(i) != ";":
                    i += 1
                i += 1
                continue
            start = i
            i, modifiers = self.read_prefix(i, n)
            if i < n and self.starts_type(i):
                decl, i = self.parse_type(start, i, modifiers)
                types.append(decl)
            elif i == start:
                i += 1
        return types

    # -- types -------------------------------------------------------------

    def parse_type(self, start: int, i: int, modifiers: list[str]) -> tuple[TypeDecl, int]:
        if self.lex(i) == "@":
            kind = "annotation"
            i += 2
        else:
            kind = self.lex(i)
            i += 1
        name = self.lex(i)
        while self.lex(i) != "{":
            if i >= len(self.code):
                raise UnbalancedBraces(f"type '{name}' has no body", self.code[start].line)
            if self.lex(i) in ("(", "[") and i in self.pairs:
                i = self.pairs[i]
            i += 1
        open_ = i
        close = self.pairs[open_]
        body_methods: list[MethodDecl] = []
        body_fields: list[FieldRecord] = []
        nested: list[TypeDecl] = []
        self.parse_body(name, kind, open_, close, body_methods, body_fields, nested)
        decl = TypeDecl(
            name=name,
            kind=kind,
            start_line=self.code[start].line,
            end_line=self.code[close].line,
            code_lines=len(self.line_set(start, close + 1)),
            methods=tuple(body_methods),
            fields=tuple(body_fields),
            modifiers=tuple(modifiers),
            nested=tuple(nested),
        )
        return decl, close + 1

    def parse_body(
        self,
        type_name: str,
        kind: str,
        open_: int,
        close: int,
        methods: list[MethodDecl],
        fields: list[FieldRecord],
        nested: list[TypeDecl],
    ) -> None:
        i = open_ + 1
        if kind == "enum":
            i = self.skip_enum_constants(i, close)
        implicit_constant = kind in ("interface", "annotation")
        while i < close:
            if self.lex(i) == ";":
                i += 1
                continue
            start = i
            i, modifiers = self.read_prefix(i, close)
            if i >= close:
                break
            lex = self.lex(i)
            if lex == "{":
                # instance or static initializer
                i = self.pairs[i] + 1
                continue
            if self.starts_type(i):
                decl, i = self.parse_type(start, i, modifiers)
                nested.append(decl)
                continue
            i = self.parse_member(
                type_name, kind, start, i, close, modifiers, methods, fields, implicit_constant
            )

    def skip_enum_constants(self, i: int, close: int) -> int:
        while i < close:
            lex = self.lex(i)
            if lex == ";":
                return i + 1
            if lex in _OPEN:
                i = self.pairs[i] + 1
                continue
            i += 1
        return close

    # -- members -----------------------------------------------------------

    def parse_member(
        self,
        type_name: str,
        kind: str,
        start: int,
        i: int,
        close: int,
        modifiers: list[str],
        methods: list[MethodDecl],
        fields: list[FieldRecord],
        implicit_constant: bool,
    ) -> int:
        j = i
        angle = 0
        while j < close:
            lex = self.lex(j)
            tk = self.code[j].kind
            if tk is TokenKind.OPERATOR and lex in _ANGLE_DELTA:
                angle = max(0, angle + _ANGLE_DELTA[lex])
            elif angle == 0 and lex in ("(", "=", ";", "{"):
                break
            elif lex == "@":
                j = self.skip_annotation(j)
                continue
            elif lex == "[" and j in self.pairs:
                j = self.pairs[j]
            j += 1
        if j >= close:
            return close
        lex = self.lex(j)
        if lex == "(" and self.is_ident(j - 1):
            return self.parse_method(type_name, start, i, j, modifiers, methods)
        if lex == "{" and kind == "record" and j == i + 1 and self.lex(i) == type_name:
            # compact canonical constructor
            return self.parse_method(type_name, start, i, j, modifiers, methods, compact=True)
        if lex in ("=", ";"):
            return self.parse_fields(start, i, modifiers, fields, implicit_constant)
        # Something we do not model; skip past it.
        if lex in _OPEN:
            return self.pairs[j] + 1
        return j + 1

    def parse_method(
        self,
        type_name: str,
        start: int,
        i: int,
        paren: int,
        modifiers: list[str],
        methods: list[MethodDecl],
        compact: bool = False,
    ) -> int:
        if compact:
            name_idx = paren - 1
            params = 0
            k = paren
        else:
            name_idx = paren - 1
            params = self.count_parameters(paren)
            k = self.pairs[paren] + 1
        name = self.lex(name_idx)
        # Constructor: nothing but optional type parameters between the
        # modifiers and the name.
        head = i
        if self.lex(head) == "<":
            depth = 0
            while head < name_idx:
                tok = self.code[head]
                if tok.kind is TokenKind.OPERATOR and tok.lexeme in _ANGLE_DELTA:
                    depth += _ANGLE_DELTA[tok.lexeme]
                head += 1
                if depth <= 0:
                    break
        is_ctor = head == name_idx and name == type_name

        n = len(self.code)
        while k < n and self.lex(k) not in ("{", ";"):
            if self.lex(k) == "default":
                while k < n and self.lex(k) != ";":
                    if self.lex(k) in _OPEN:
                        k = self.pairs[k]
                    k += 1
                break
            if self.lex(k) in ("(", "[") and k in self.pairs:
                k = self.pairs[k]
            k += 1
        if k < n and self.lex(k) == "{":
            body_open, body_close = k, self.pairs[k]
            decisions, depth = self.scan_body(body_open, body_close)
            decl = MethodDecl(
                name=name,
                owner=type_name,
                start_line=self.code[start].line,
                end_line=self.code[body_close].line,
                parameter_count=params,
                decision_point_count=decisions,
                max_nesting_depth=depth,
                body_is_empty=body_close == body_open + 1,
                is_constructor=is_ctor,
                has_body=True,
                modifiers=tuple(modifiers),
                body_range=(body_open + 1, body_close),
            )
            end = body_close + 1
        else:
            end_idx = min(k, n - 1)
            decl = MethodDecl(
                name=name,
                owner=type_name,
                start_line=self.code[start].line,
                end_line=self.code[end_idx].line,
                parameter_count=params,
                decision_point_count=0,
                max_nesting_depth=0,
                body_is_empty=False,
                is_constructor=is_ctor,
                has_body=False,
                modifiers=tuple(modifiers),
            )
            end = k + 1
        methods.append(decl)
        self.methods.append(decl)
        return end

    def count_parameters(self, paren: int) -> int:
        close = self.pairs[paren]
        if close == paren + 1:
            return 0
        count = 1
        angle = 0
        k = paren + 1
        while k < close:
            tok = self.code[k]
            lex = tok.lexeme
            if lex in _OPEN:
                k = self.pairs[k] + 1
                continue
            if tok.kind is TokenKind.OPERATOR and lex in _ANGLE_DELTA:
                angle = max(0, angle + _ANGLE_DELTA[lex])
            elif lex == "," and angle == 0:
                count += 1
            k += 1
        return count

    def scan_body(self, open_: int, close: int) -> tuple[int, int]:
        """Count decision points and the deepest block nesting inside a body."""
        decisions = 0
        do_block_ends: set[int] = set()
        # Each entry is True for a statement block, False for an array initializer.
        stack: list[bool] = []
        depth = max_depth = 0
        for k in range(open_ + 1, close):
            tok = self.code[k]
            lex = tok.lexeme
            if tok.kind is TokenKind.KEYWORD and lex in DECISION_KEYWORDS:
                if lex == "do" and self.lex(k + 1) == "{":
                    do_block_ends.add(self.pairs[k + 1])
                if not (lex == "while" and (k - 1) in do_block_ends):
                    decisions += 1
            elif tok.kind is TokenKind.OPERATOR:
                if lex in DECISION_OPERATORS:
                    decisions += 1
                elif lex == "?" and self.lex(k + 1) not in _WILDCARD_FOLLOWERS:
                    decisions += 1
            elif lex == "{":
                prev = self.lex(k - 1)
                is_init = prev in ("=", "]") or (
                    prev in (",", "{") and bool(stack) and not stack[-1]
                )
                stack.append(not is_init)
                if not is_init:
                    depth += 1
                    max_depth = max(max_depth, depth)
            elif lex == "}":
                if stack and stack.pop():
                    depth -= 1
        return decisions, max_depth

    def parse_fields(
        self,
        start: int,
        i: int,
        modifiers: list[str],
        fields: list[FieldRecord],
        implicit_constant: bool,
    ) -> int:
        n = len(self.code)
        # First declarator: the first identifier (outside generics) followed by
        # `=`, `,`, `;` or `[`, with at least one type token before it.
        angle = 0
        k = i
        name_idx = -1
        while k < n:
            tok = self.code[k]
            lex = tok.lexeme
            if tok.kind is TokenKind.OPERATOR and lex in _ANGLE_DELTA:
                angle = max(0, angle + _ANGLE_DELTA[lex])
            elif lex == "@":
                k = self.skip_annotation(k)
                continue
            elif (
                angle == 0
                and k > i
                and self.is_ident(k)
                and self.lex(k + 1) in ("=", ",", ";", "[")
            ):
                name_idx = k
                break
            elif lex == ";":
                break
            k += 1
        if name_idx < 0:
            while k < n and self.lex(k) != ";":
                k += 1
            return k + 1

        mods = tuple(modifiers)
        is_public = "public" in mods or implicit_constant
        is_static = "static" in mods or implicit_constant
        is_final = "final" in mods or implicit_constant
        is_private = "private" in mods
        first = True
        k = name_idx
        while k < n:
            fields.append(
                FieldRecord(
                    name=self.lex(k),
                    line=self.code[k].line,
                    modifiers=mods,
                    is_public=is_public,
                    is_final=is_final,
                    is_static=is_static,
                    is_private=is_private,
                    first_in_statement=first,
                )
            )
            first = False
            k += 1
            # skip to the next declarator or the end of the statement
            nxt = -1
            while k < n:
                lex = self.lex(k)
                if lex == ";":
                    break
                if lex in _OPEN:
                    k = self.pairs[k] + 1
                    continue
                if (
                    lex == ","
                    and self.is_ident(k + 1)
                    and self.lex(k + 2) in ("=", ",", ";", "[")
                ):
                    nxt = k + 1
                    break
                k += 1
            if nxt < 0:
                break
            k = nxt
        while k < n and self.lex(k) != ";":
            if self.lex(k) in _OPEN:
                k = self.pairs[k]
            k += 1
        return k + 1
