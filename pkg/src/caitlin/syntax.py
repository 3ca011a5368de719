"""AST for the Pascal subset.

Control constructs fall into two classes, Selection and Iteration, with
eight concrete kinds. Every construct node carries a unique id (dense,
assigned in source pre-order) and its static nesting depth, where only
enclosing constructs count (begin/end blocks do not add depth).
"""

from dataclasses import dataclass, field
from enum import Enum


class ConstructClass(Enum):
    SELECTION = "selection"
    ITERATION = "iteration"


class ConstructKind(Enum):
    IF = "IF"
    IF_ELSE = "IF_ELSE"
    CASE = "CASE"
    CASE_ELSE = "CASE_ELSE"
    WHILE = "WHILE"
    REPEAT = "REPEAT"
    FOR_TO = "FOR_TO"
    FOR_DOWNTO = "FOR_DOWNTO"


_KIND_CLASS = {
    ConstructKind.IF: ConstructClass.SELECTION,
    ConstructKind.IF_ELSE: ConstructClass.SELECTION,
    ConstructKind.CASE: ConstructClass.SELECTION,
    ConstructKind.CASE_ELSE: ConstructClass.SELECTION,
    ConstructKind.WHILE: ConstructClass.ITERATION,
    ConstructKind.REPEAT: ConstructClass.ITERATION,
    ConstructKind.FOR_TO: ConstructClass.ITERATION,
    ConstructKind.FOR_DOWNTO: ConstructClass.ITERATION,
}


def classify_construct(kind: ConstructKind) -> ConstructClass:
    """Map a construct kind to its class; total over all eight kinds."""
    return _KIND_CLASS[kind]


class VarType(Enum):
    INTEGER = "integer"
    BOOLEAN = "boolean"


# --- expressions ---

@dataclass
class IntLit:
    value: int


@dataclass
class BoolLit:
    value: bool


@dataclass
class VarRef:
    name: str


@dataclass
class UnaryOp:
    op: str  # "-" or "not"
    operand: "Expr"


@dataclass
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


Expr = IntLit | BoolLit | VarRef | UnaryOp | BinOp


@dataclass
class StringLit:
    """Quoted text; only valid as a write/writeln argument."""
    text: str


# --- statements ---

@dataclass
class Assign:
    name: str
    value: Expr


@dataclass
class Write:
    args: list  # Expr | StringLit
    newline: bool


@dataclass
class Readln:
    name: str


@dataclass
class Compound:
    body: list


@dataclass
class IfStmt:
    condition: Expr
    then_branch: "Stmt"
    else_branch: "Stmt | None"
    construct_id: int = field(default=-1, compare=False)
    depth: int = field(default=-1, compare=False)

    @property
    def kind(self) -> ConstructKind:
        return ConstructKind.IF_ELSE if self.else_branch is not None else ConstructKind.IF


@dataclass
class CaseBranch:
    labels: list[tuple[int, int]]  # inclusive (low, high) ranges
    body: "Stmt"


@dataclass
class CaseStmt:
    selector: Expr
    branches: list[CaseBranch]
    else_branch: "Stmt | None"
    construct_id: int = field(default=-1, compare=False)
    depth: int = field(default=-1, compare=False)

    @property
    def kind(self) -> ConstructKind:
        return ConstructKind.CASE_ELSE if self.else_branch is not None else ConstructKind.CASE


@dataclass
class WhileStmt:
    condition: Expr
    body: "Stmt"
    construct_id: int = field(default=-1, compare=False)
    depth: int = field(default=-1, compare=False)

    @property
    def kind(self) -> ConstructKind:
        return ConstructKind.WHILE


@dataclass
class RepeatStmt:
    body: list
    condition: Expr  # until-condition
    construct_id: int = field(default=-1, compare=False)
    depth: int = field(default=-1, compare=False)

    @property
    def kind(self) -> ConstructKind:
        return ConstructKind.REPEAT


@dataclass
class ForStmt:
    control: str
    start: Expr
    stop: Expr
    downto: bool
    body: "Stmt"
    construct_id: int = field(default=-1, compare=False)
    depth: int = field(default=-1, compare=False)

    @property
    def kind(self) -> ConstructKind:
        return ConstructKind.FOR_DOWNTO if self.downto else ConstructKind.FOR_TO


Construct = IfStmt | CaseStmt | WhileStmt | RepeatStmt | ForStmt
Stmt = Assign | Write | Readln | Compound | Construct


@dataclass
class Program:
    name: str
    variables: dict[str, VarType]
    body: list


def _child_statements(stmt: Stmt) -> list:
    if isinstance(stmt, Compound):
        return stmt.body
    if isinstance(stmt, IfStmt):
        return [stmt.then_branch] + ([stmt.else_branch] if stmt.else_branch else [])
    if isinstance(stmt, CaseStmt):
        out = [b.body for b in stmt.branches]
        if stmt.else_branch:
            out.append(stmt.else_branch)
        return out
    if isinstance(stmt, WhileStmt):
        return [stmt.body]
    if isinstance(stmt, RepeatStmt):
        return list(stmt.body)
    if isinstance(stmt, ForStmt):
        return [stmt.body]
    return []


def iter_constructs(program: Program):
    """Yield every construct node in source pre-order."""
    def walk(stmt):
        if isinstance(stmt, Construct):
            yield stmt
        for child in _child_statements(stmt):
            yield from walk(child)

    for stmt in program.body:
        yield from walk(stmt)


def annotate_nesting(program: Program) -> Program:
    """Assign dense pre-order construct ids and static nesting depths.

    Depth counts enclosing constructs only; idempotent.
    """
    counter = 0

    def walk(stmt, depth):
        nonlocal counter
        child_depth = depth
        if isinstance(stmt, Construct):
            stmt.construct_id = counter
            stmt.depth = depth
            counter += 1
            child_depth = depth + 1
        for child in _child_statements(stmt):
            walk(child, child_depth)

    for stmt in program.body:
        walk(stmt, 0)
    return program


# --- pretty printer (source regeneration) ---

_PRECEDENCE_NONE = 0


def expr_to_source(expr) -> str:
    if isinstance(expr, IntLit):
        return str(expr.value)
    if isinstance(expr, BoolLit):
        return "true" if expr.value else "false"
    if isinstance(expr, VarRef):
        return expr.name
    if isinstance(expr, StringLit):
        return "'" + expr.text.replace("'", "''") + "'"
    if isinstance(expr, UnaryOp):
        if expr.op == "not":
            return f"(not {expr_to_source(expr.operand)})"
        return f"({expr.op}{expr_to_source(expr.operand)})"
    if isinstance(expr, BinOp):
        # Fully parenthesized output sidesteps precedence when reparsing.
        return f"({expr_to_source(expr.left)} {expr.op} {expr_to_source(expr.right)})"
    raise TypeError(f"not an expression node: {expr!r}")


def _labels_to_source(labels: list[tuple[int, int]]) -> str:
    parts = []
    for low, high in labels:
        parts.append(str(low) if low == high else f"{low}..{high}")
    return ", ".join(parts)


def _stmt_to_source(stmt, indent: int) -> str:
    pad = "  " * indent
    if isinstance(stmt, Assign):
        return f"{pad}{stmt.name} := {expr_to_source(stmt.value)}"
    if isinstance(stmt, Write):
        name = "writeln" if stmt.newline else "write"
        if not stmt.args:
            return f"{pad}{name}"
        args = ", ".join(expr_to_source(a) for a in stmt.args)
        return f"{pad}{name}({args})"
    if isinstance(stmt, Readln):
        return f"{pad}readln({stmt.name})"
    if isinstance(stmt, Compound):
        inner = ";\n".join(_stmt_to_source(s, indent + 1) for s in stmt.body)
        return f"{pad}begin\n{inner}\n{pad}end" if stmt.body else f"{pad}begin\n{pad}end"
    if isinstance(stmt, IfStmt):
        text = (f"{pad}if {expr_to_source(stmt.condition)} then\n"
                f"{_stmt_to_source(stmt.then_branch, indent + 1)}")
        if stmt.else_branch is not None:
            text += f"\n{pad}else\n{_stmt_to_source(stmt.else_branch, indent + 1)}"
        return text
    if isinstance(stmt, CaseStmt):
        lines = [f"{pad}case {expr_to_source(stmt.selector)} of"]
        branch_texts = []
        for branch in stmt.branches:
            body = _stmt_to_source(branch.body, indent + 2).lstrip()
            branch_texts.append(f"{pad}  {_labels_to_source(branch.labels)}: {body}")
        lines.append(";\n".join(branch_texts))
        if stmt.else_branch is not None:
            lines.append(f"{pad}else\n{_stmt_to_source(stmt.else_branch, indent + 1)}")
        lines.append(f"{pad}end")
        return "\n".join(lines)
    if isinstance(stmt, WhileStmt):
        return (f"{pad}while {expr_to_source(stmt.condition)} do\n"
                f"{_stmt_to_source(stmt.body, indent + 1)}")
    if isinstance(stmt, RepeatStmt):
        inner = ";\n".join(_stmt_to_source(s, indent + 1) for s in stmt.body)
        if stmt.body:
            return f"{pad}repeat\n{inner}\n{pad}until {expr_to_source(stmt.condition)}"
        return f"{pad}repeat\n{pad}until {expr_to_source(stmt.condition)}"
    if isinstance(stmt, ForStmt):
        direction = "downto" if stmt.downto else "to"
        return (f"{pad}for {stmt.control} := {expr_to_source(stmt.start)} "
                f"{direction} {expr_to_source(stmt.stop)} do\n"
                f"{_stmt_to_source(stmt.body, indent + 1)}")
    raise TypeError(f"not a statement node: {stmt!r}")


def to_source(program: Program) -> str:
    """Regenerate compilable source; reparsing yields a structurally equal AST."""
    lines = [f"program {program.name};"]
    if program.variables:
        lines.append("var")
        for name, vtype in program.variables.items():
            lines.append(f"  {name}: {vtype.value};")
    lines.append("begin")
    if program.body:
        lines.append(";\n".join(_stmt_to_source(s, 1) for s in program.body))
    lines.append("end.")
    return "\n".join(lines) + "\n"
