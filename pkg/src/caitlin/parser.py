"""Recursive descent parser for the Pascal subset.

Grammar (identifiers and keywords case-insensitive):

    program    = "program" IDENT ";" [var-block] compound "." EOF
    var-block  = "var" (ident-list ":" ("integer"|"boolean") ";")+
    compound   = "begin" [stmt (";" stmt)* [";"]] "end"
    stmt       = compound | if | case | while | repeat | for
               | assign | write | readln
    if         = "if" expr "then" stmt ["else" stmt]
    case       = "case" expr "of" branch (";" branch)* [";"]
                 ["else" stmt [";"]] "end"
    branch     = label ("," label)* ":" stmt
    label      = signed-int [".." signed-int]
    while      = "while" expr "do" stmt
    repeat     = "repeat" [stmt (";" stmt)* [";"]] "until" expr
    for        = "for" IDENT ":=" expr ("to"|"downto") expr "do" stmt
    expr       = simple [relop simple]             relop: = <> < <= > >=
    simple     = ["+"|"-"] term (("+"|"-"|"or") term)*
    term       = factor (("*"|"div"|"mod"|"and") factor)*
    factor     = INT | "true" | "false" | IDENT | "(" expr ")"
               | "not" factor | STRING (write arguments only)

Undeclared variables, duplicate declarations, non-integer for-loop control
variables, and overlapping case labels are rejected here as semantic errors.
"""

from .errors import ParseError, SemanticError
from .syntax import (
    Assign, BinOp, BoolLit, CaseBranch, CaseStmt, Compound, ForStmt, IfStmt,
    IntLit, Program, Readln, RepeatStmt, StringLit, UnaryOp, VarRef, VarType,
    WhileStmt, Write, annotate_nesting,
)
from .tokens import Token, TokenKind, string_value, tokenize

_MAX_INT = 2 ** 63 - 1

_RELOPS = ("=", "<>", "<", "<=", ">", ">=")
_STMT_STOPPERS = ("end", "until", "else")


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.variables: dict[str, VarType] = {}

    @property
    def cur(self) -> Token:
        return self.tokens[self.pos]

    def bump(self) -> Token:
        tok = self.cur
        if tok.kind is not TokenKind.EOF:
            self.pos += 1
        return tok

    def at_keyword(self, *words: str) -> bool:
        return self.cur.kind is TokenKind.KEYWORD and self.cur.lexeme.lower() in words

    def at_symbol(self, text: str) -> bool:
        return self.cur.kind in (TokenKind.OP, TokenKind.PUNCT) and self.cur.lexeme == text

    def expect_keyword(self, word: str) -> Token:
        if not self.at_keyword(word):
            self.fail(f"expected '{word}'")
        return self.bump()

    def expect_symbol(self, text: str) -> Token:
        if not self.at_symbol(text):
            self.fail(f"expected '{text}'")
        return self.bump()

    def expect_ident(self) -> Token:
        if self.cur.kind is not TokenKind.IDENT:
            self.fail("expected identifier")
        return self.bump()

    def fail(self, expectation: str):
        raise ParseError(f"{expectation}, found {self.cur}", self.cur.line, self.cur.column)

    def check_declared(self, tok: Token) -> str:
        name = tok.lexeme.lower()
        if name not in self.variables:
            raise SemanticError(f"undeclared variable '{tok.lexeme}'", tok.line, tok.column)
        return name

    # --- program structure ---

    def parse_program(self) -> Program:
        self.expect_keyword("program")
        name = self.expect_ident().lexeme.lower()
        self.expect_symbol(";")
        if self.at_keyword("var"):
            self.parse_var_block()
        body = self.parse_compound().body
        self.expect_symbol(".")
        if self.cur.kind is not TokenKind.EOF:
            self.fail("expected end of input after final '.'")
        return annotate_nesting(Program(name, self.variables, body))

    def parse_var_block(self) -> None:
        self.expect_keyword("var")
        while self.cur.kind is TokenKind.IDENT:
            group = [self.expect_ident()]
            while self.at_symbol(","):
                self.bump()
                group.append(self.expect_ident())
            self.expect_symbol(":")
            if self.at_keyword("integer"):
                vtype = VarType.INTEGER
            elif self.at_keyword("boolean"):
                vtype = VarType.BOOLEAN
            else:
                self.fail("expected 'integer' or 'boolean'")
            self.bump()
            self.expect_symbol(";")
            for tok in group:
                name = tok.lexeme.lower()
                if name in self.variables:
                    raise SemanticError(f"duplicate variable '{tok.lexeme}'", tok.line, tok.column)
                self.variables[name] = vtype
        if not self.variables:
            self.fail("expected variable declaration")

    # --- statements ---

    def parse_statement_list(self) -> list:
        stmts = []
        while True:
            if self.at_keyword(*_STMT_STOPPERS) or self.cur.kind is TokenKind.EOF:
                break
            stmts.append(self.parse_statement())
            if self.at_symbol(";"):
                self.bump()
            else:
                break
        return stmts

    def parse_compound(self) -> Compound:
        self.expect_keyword("begin")
        body = self.parse_statement_list()
        self.expect_keyword("end")
        return Compound(body)

    def parse_statement(self):
        if self.at_keyword("begin"):
            return self.parse_compound()
        if self.at_keyword("if"):
            return self.parse_if()
        if self.at_keyword("case"):
            return self.parse_case()
        if self.at_keyword("while"):
            return self.parse_while()
        if self.at_keyword("repeat"):
            return self.parse_repeat()
        if self.at_keyword("for"):
            return self.parse_for()
        if self.at_keyword("write", "writeln"):
            return self.parse_write()
        if self.at_keyword("readln"):
            return self.parse_readln()
        if self.cur.kind is TokenKind.IDENT:
            return self.parse_assign()
        self.fail("expected statement")

    def parse_assign(self) -> Assign:
        target = self.expect_ident()
        name = self.check_declared(target)
        self.expect_symbol(":=")
        return Assign(name, self.parse_expression())

    def parse_write(self) -> Write:
        newline = self.bump().lexeme.lower() == "writeln"
        args = []
        if self.at_symbol("("):
            self.bump()
            if not self.at_symbol(")"):
                args.append(self.parse_write_arg())
                while self.at_symbol(","):
                    self.bump()
                    args.append(self.parse_write_arg())
            self.expect_symbol(")")
        return Write(args, newline)

    def parse_write_arg(self):
        if self.cur.kind is TokenKind.STRING:
            return StringLit(string_value(self.bump().lexeme))
        return self.parse_expression()

    def parse_readln(self) -> Readln:
        self.expect_keyword("readln")
        self.expect_symbol("(")
        name = self.check_declared(self.expect_ident())
        self.expect_symbol(")")
        return Readln(name)

    def parse_if(self) -> IfStmt:
        self.expect_keyword("if")
        condition = self.parse_expression()
        self.expect_keyword("then")
        then_branch = self.parse_statement()
        else_branch = None
        if self.at_keyword("else"):
            self.bump()
            else_branch = self.parse_statement()
        return IfStmt(condition, then_branch, else_branch)

    def parse_while(self) -> WhileStmt:
        self.expect_keyword("while")
        condition = self.parse_expression()
        self.expect_keyword("do")
        return WhileStmt(condition, self.parse_statement())

    def parse_repeat(self) -> RepeatStmt:
        self.expect_keyword("repeat")
        body = self.parse_statement_list()
        self.expect_keyword("until")
        return RepeatStmt(body, self.parse_expression())

    def parse_for(self) -> ForStmt:
        self.expect_keyword("for")
        control_tok = self.expect_ident()
        control = self.check_declared(control_tok)
        if self.variables[control] is not VarType.INTEGER:
            raise SemanticError(
                f"for-loop control variable '{control_tok.lexeme}' must be integer",
                control_tok.line, control_tok.column)
        self.expect_symbol(":=")
        start = self.parse_expression()
        if self.at_keyword("downto"):
            downto = True
        elif self.at_keyword("to"):
            downto = False
        else:
            self.fail("expected 'to' or 'downto'")
        self.bump()
        stop = self.parse_expression()
        self.expect_keyword("do")
        return ForStmt(control, start, stop, downto, self.parse_statement())

    def parse_case(self) -> CaseStmt:
        case_tok = self.expect_keyword("case")
        selector = self.parse_expression()
        self.expect_keyword("of")
        branches = [self.parse_case_branch()]
        while self.at_symbol(";"):
            self.bump()
            if self.at_keyword("else", "end"):
                break
            branches.append(self.parse_case_branch())
        else_branch = None
        if self.at_keyword("else"):
            self.bump()
            else_branch = self.parse_statement()
            if self.at_symbol(";"):
                self.bump()
        self.expect_keyword("end")
        self._check_disjoint_labels(branches, case_tok)
        return CaseStmt(selector, branches, else_branch)

    def parse_case_branch(self) -> CaseBranch:
        labels = [self.parse_case_label()]
        while self.at_symbol(","):
            self.bump()
            labels.append(self.parse_case_label())
        self.expect_symbol(":")
        return CaseBranch(labels, self.parse_statement())

    def parse_case_label(self) -> tuple[int, int]:
        low_tok = self.cur
        low = self.parse_signed_int()
        if self.at_symbol(".."):
            self.bump()
            high = self.parse_signed_int()
            if high < low:
                raise SemanticError(f"empty label range {low}..{high}",
                                    low_tok.line, low_tok.column)
            return (low, high)
        return (low, low)

    def parse_signed_int(self) -> int:
        negative = False
        if self.at_symbol("-"):
            self.bump()
            negative = True
        tok = self.cur
        if tok.kind is not TokenKind.INT:
            self.fail("expected integer label")
        self.bump()
        value = self.parse_int_value(tok)
        return -value if negative else value

    def parse_int_value(self, tok: Token) -> int:
        value = int(tok.lexeme)
        if value > _MAX_INT:
            raise SemanticError("integer literal out of range", tok.line, tok.column)
        return value

    def _check_disjoint_labels(self, branches: list[CaseBranch], tok: Token) -> None:
        spans = sorted((low, high) for b in branches for low, high in b.labels)
        for (_, prev_high), (low, _) in zip(spans, spans[1:]):
            if low <= prev_high:
                raise SemanticError("overlapping case labels", tok.line, tok.column)

    # --- expressions ---

    def parse_expression(self):
        left = self.parse_simple()
        if self.cur.kind is TokenKind.OP and self.cur.lexeme in _RELOPS:
            op = self.bump().lexeme
            return BinOp(op, left, self.parse_simple())
        return left

    def parse_simple(self):
        if self.at_symbol("-") or self.at_symbol("+"):
            sign = self.bump().lexeme
            first = self.parse_term()
            left = UnaryOp("-", first) if sign == "-" else first
        else:
            left = self.parse_term()
        while self.at_symbol("+") or self.at_symbol("-") or self.at_keyword("or"):
            op = self.bump().lexeme.lower()
            left = BinOp(op, left, self.parse_term())
        return left

    def parse_term(self):
        left = self.parse_factor()
        while self.at_symbol("*") or self.at_keyword("div", "mod", "and"):
            op = self.bump().lexeme.lower()
            left = BinOp(op, left, self.parse_factor())
        return left

    def parse_factor(self):
        tok = self.cur
        if tok.kind is TokenKind.INT:
            self.bump()
            return IntLit(self.parse_int_value(tok))
        if self.at_keyword("true"):
            self.bump()
            return BoolLit(True)
        if self.at_keyword("false"):
            self.bump()
            return BoolLit(False)
        if self.at_keyword("not"):
            self.bump()
            return UnaryOp("not", self.parse_factor())
        if tok.kind is TokenKind.IDENT:
            self.bump()
            return VarRef(self.check_declared(tok))
        if self.at_symbol("("):
            self.bump()
            expr = self.parse_expression()
            self.expect_symbol(")")
            return expr
        if tok.kind is TokenKind.STRING:
            raise ParseError("string literal only allowed in write/writeln",
                             tok.line, tok.column)
        self.fail("expected expression")


def parse_program(tokens: list[Token]) -> Program:
    """Parse a token stream into a fully annotated program AST."""
    return _Parser(tokens).parse_program()


def parse_source(source: str) -> Program:
    """Tokenize and parse in one step."""
    return parse_program(tokenize(source))
