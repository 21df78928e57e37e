"""Java lexer.

Every character of the input ends up in exactly one token, whitespace and
comments included, so ``"".join(t.lexeme for t in tokens) == text``.
"""

from __future__ import annotations

import re

from .model import MalformedText, Token, TokenKind

KEYWORDS = frozenset(
    """
    abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while
    """.split()
)

LITERAL_WORDS = frozenset({"true", "false", "null"})

# Longest first so that `>>>=` wins over `>>` and `>`.
OPERATORS = sorted(
    """
    >>>= <<= >>= >>> ++ -- && || == != <= >= += -= *= /= %= &= |= ^= << >> -> ::
    = + - * / % ! ~ < > & | ^ ? :
    """.split(),
    key=len,
    reverse=True,
)

PUNCTUATION = ("...", ";", ",", ".", "(", ")", "[", "]", "{", "}", "@")

_NUMBER = r"""
    0[xX][0-9a-fA-F_]*(?:\.[0-9a-fA-F_]*)?(?:[pP][+-]?\d+)?[lLfFdD]?
  | 0[bB][01_]+[lL]?
  | (?:\d[\d_]*)?\.\d[\d_]*(?:[eE][+-]?\d[\d_]*)?[fFdD]?
  | \d[\d_]*(?:\.(?!\.)[\d_]*)?(?:[eE][+-]?\d[\d_]*)?[fFdDlL]?
"""

_MASTER = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<line_comment>//[^\n]*)
  | (?P<block_comment>/\*.*?\*/)
  | (?P<open_comment>/\*)
  | (?P<text_block>\"\"\"(?:[^\\]|\\.)*?\"\"\")
  | (?P<open_text_block>\"\"\")
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<open_string>")
  | (?P<char>'(?:[^'\\\n]|\\.)+')
  | (?P<open_char>')
  | (?P<number>"""
    + _NUMBER
    + r""")
  | (?P<word>(?:[^\W\d]|\$)[\w$]*)
  | (?P<op>"""
    + "|".join(re.escape(o) for o in OPERATORS)
    + r""")
  | (?P<punct>"""
    + "|".join(re.escape(p) for p in PUNCTUATION)
    + r""")
  | (?P<other>.)
    """,
    re.VERBOSE | re.DOTALL,
)


def tokenize_java(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    line = 1
    n = len(text)
    while pos < n:
        m = _MASTER.match(text, pos)
        assert m is not None  # `other` matches any single character
        group = m.lastgroup
        lexeme = m.group()
        if group in ("open_comment", "open_text_block", "open_string", "open_char"):
            what = {
                "open_comment": "block comment",
                "open_text_block": "text block",
                "open_string": "string literal",
                "open_char": "character literal",
            }[group]
            raise MalformedText(f"unterminated {what}", line)
        if group == "ws":
            kind = TokenKind.WHITESPACE
        elif group in ("line_comment", "block_comment"):
            kind = TokenKind.COMMENT
        elif group in ("text_block", "string", "char", "number"):
            kind = TokenKind.LITERAL
        elif group == "word":
            if lexeme in KEYWORDS:
                kind = TokenKind.KEYWORD
            elif lexeme in LITERAL_WORDS:
                kind = TokenKind.LITERAL
            else:
                kind = TokenKind.OPERAND
        elif group == "op":
            kind = TokenKind.OPERATOR
        else:
            kind = TokenKind.PUNCTUATION
        tokens.append(Token(kind, lexeme, line))
        line += lexeme.count("\n")
        pos = m.end()
    return tokens
