"""Lexer for the Pascal subset.

Keywords and identifiers are case-insensitive (classic Pascal); the token
lexeme always preserves the source spelling. Comments in ``{ }`` or
``(* *)`` form are skipped. String literals use single quotes with ``''``
as the escaped quote and must close on the same line.
"""

from dataclasses import dataclass
from enum import Enum

from .errors import LexicalError

KEYWORDS = frozenset({
    "program", "var", "integer", "boolean", "begin", "end",
    "if", "then", "else", "case", "of", "while", "do",
    "repeat", "until", "for", "to", "downto",
    "and", "or", "not", "div", "mod",
    "write", "writeln", "readln", "true", "false",
})

# Two-character symbols first so "<=" is never split into "<" and "=".
TWO_CHAR = {":=": "op", "<=": "op", ">=": "op", "<>": "op", "..": "punct"}
ONE_CHAR = {
    "+": "op", "-": "op", "*": "op", "=": "op", "<": "op", ">": "op",
    "(": "punct", ")": "punct", ";": "punct", ":": "punct",
    ",": "punct", ".": "punct",
}


class TokenKind(Enum):
    KEYWORD = "keyword"
    IDENT = "identifier"
    INT = "integer-literal"
    STRING = "string-literal"
    OP = "operator"
    PUNCT = "punctuation"
    EOF = "end-of-input"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    line: int
    column: int

    def matches(self, kind: TokenKind, text: str | None = None) -> bool:
        if self.kind is not kind:
            return False
        if text is None:
            return True
        if kind in (TokenKind.KEYWORD, TokenKind.IDENT):
            return self.lexeme.lower() == text
        return self.lexeme == text

    def __str__(self) -> str:
        if self.kind is TokenKind.EOF:
            return "end of input"
        return f"'{self.lexeme}'"


def string_value(lexeme: str) -> str:
    """Decode a string-literal lexeme (quotes included) to its text."""
    return lexeme[1:-1].replace("''", "'")


class _Scanner:
    def __init__(self, source: str):
        self.src = source
        self.pos = 0
        self.line = 1
        self.col = 1

    def peek(self, ahead: int = 0) -> str:
        i = self.pos + ahead
        return self.src[i] if i < len(self.src) else ""

    def advance(self) -> str:
        ch = self.src[self.pos]
        self.pos += 1
        if ch == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        return ch

    def skip_blank(self) -> None:
        """Skip whitespace and both comment forms."""
        while self.pos < len(self.src):
            ch = self.peek()
            if ch.isspace():
                self.advance()
            elif ch == "{":
                self._skip_comment("}")
            elif ch == "(" and self.peek(1) == "*":
                self._skip_comment("*)")
            else:
                return

    def _skip_comment(self, closer: str) -> None:
        line, col = self.line, self.col
        self.advance()
        if closer == "*)":
            self.advance()
        while self.pos < len(self.src):
            if closer == "}" and self.peek() == "}":
                self.advance()
                return
            if closer == "*)" and self.peek() == "*" and self.peek(1) == ")":
                self.advance()
                self.advance()
                return
            self.advance()
        raise LexicalError("unterminated comment", line, col)

    def next_token(self) -> Token:
        self.skip_blank()
        line, col = self.line, self.col
        if self.pos >= len(self.src):
            return Token(TokenKind.EOF, "", line, col)
        ch = self.peek()

        if ch.isalpha() or ch == "_":
            start = self.pos
            while self.pos < len(self.src) and (self.peek().isalnum() or self.peek() == "_"):
                self.advance()
            lexeme = self.src[start:self.pos]
            kind = TokenKind.KEYWORD if lexeme.lower() in KEYWORDS else TokenKind.IDENT
            return Token(kind, lexeme, line, col)

        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.src) and self.peek().isdigit():
                self.advance()
            # "1..4" is integer, range dots, integer; reals are not in the language.
            return Token(TokenKind.INT, self.src[start:self.pos], line, col)

        if ch == "'":
            start = self.pos
            self.advance()
            while True:
                if self.pos >= len(self.src) or self.peek() == "\n":
                    raise LexicalError("unterminated string", line, col)
                if self.peek() == "'":
                    self.advance()
                    if self.peek() == "'":  # doubled quote stays in the literal
                        self.advance()
                        continue
                    return Token(TokenKind.STRING, self.src[start:self.pos], line, col)
                self.advance()

        two = ch + self.peek(1)
        if two in TWO_CHAR:
            self.advance()
            self.advance()
            kind = TokenKind.OP if TWO_CHAR[two] == "op" else TokenKind.PUNCT
            return Token(kind, two, line, col)
        if ch in ONE_CHAR:
            self.advance()
            kind = TokenKind.OP if ONE_CHAR[ch] == "op" else TokenKind.PUNCT
            return Token(kind, ch, line, col)

        raise LexicalError(f"illegal character {ch!r}", line, col)


def tokenize(source: str) -> list[Token]:
    """Lex ``source`` into tokens ending with a single end-of-input token."""
    scanner = _Scanner(source)
    tokens = []
    while True:
        tok = scanner.next_token()
        tokens.append(tok)
        if tok.kind is TokenKind.EOF:
            return tokens
