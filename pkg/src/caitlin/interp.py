"""Tree-walking interpreter that emits a time-ordered trace of construct
points of interest while executing a program.

Event grammar per construct kind:

* IF / IF..ELSE : Enter, Condition(b), [BranchTaken(then|else)], body, Exit.
  A plain IF with a false condition takes no branch and emits none.
* WHILE  : Enter, then (Condition(b); if b: Tick(i), body)* until b is
  false, Exit. The condition is tested immediately after entry.
* REPEAT : Enter, then (Tick(i), body, Condition(b))* until b is true, Exit.
* FOR    : Enter, Tick(i) plus body per repetition (bounds evaluated once
  at entry; zero repetitions allowed), Exit. No condition events.
* CASE   : Enter, CaseScan(j, matched) per label branch in declaration
  order stopping at the first match, else CaseElseTaken or CaseNoMatch,
  branch body, Exit.

Runtime errors and limit hits terminate execution but keep the partial
trace, so the auralization runs up to the failure point.
"""

import io
from dataclasses import dataclass, field
from enum import Enum

from .errors import PascalRuntimeError
from .syntax import (
    Assign, BinOp, BoolLit, CaseStmt, Compound, ConstructKind, ForStmt,
    IfStmt, IntLit, Program, Readln, RepeatStmt, StringLit, UnaryOp, VarRef,
    VarType, WhileStmt, Write, classify_construct,
)

_INT_MIN = -(2 ** 63)
_INT_MAX = 2 ** 63 - 1


class EventType(Enum):
    ENTER = "enter"
    EXIT = "exit"
    CONDITION = "cond"
    ITERATION = "tick"
    CASE_SCAN = "scan"
    CASE_ELSE = "case_else"
    CASE_NO_MATCH = "no_match"
    BRANCH = "branch"


class Termination(Enum):
    COMPLETED = "completed"
    LIMIT = "limit"
    ERROR = "error"


@dataclass(frozen=True)
class TraceEvent:
    seq: int
    construct_id: int
    kind: ConstructKind
    depth: int
    event: EventType
    result: bool | None = None     # CONDITION
    iteration: int | None = None   # ITERATION, 1-based
    label: int | None = None       # CASE_SCAN, 1-based branch index
    matched: bool | None = None    # CASE_SCAN
    branch: str | None = None      # BRANCH: "then" | "else"


@dataclass
class Trace:
    events: list[TraceEvent]
    stdout: str
    status: Termination
    error: str | None = field(default=None, compare=False)


@dataclass(frozen=True)
class ExecLimits:
    max_events: int = 10_000
    max_steps: int = 100_000

    def __post_init__(self):
        if self.max_events <= 0 or self.max_steps <= 0:
            raise ValueError("execution limits must be positive")


class _LimitExceeded(Exception):
    pass


def _wrap64(value: int) -> int:
    return (value - _INT_MIN) % (2 ** 64) + _INT_MIN


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _type_name(value) -> str:
    return "boolean" if isinstance(value, bool) else "integer"


def evaluate_expression(expr, environment: dict):
    """Evaluate an expression against ``environment`` (name to value).

    div and mod truncate toward zero; arithmetic wraps at 64 bits.
    Raises PascalRuntimeError for division by zero, type mismatches and
    unbound variables.
    """
    if isinstance(expr, IntLit):
        return expr.value
    if isinstance(expr, BoolLit):
        return expr.value
    if isinstance(expr, VarRef):
        value = environment.get(expr.name)
        if value is None:
            raise PascalRuntimeError(f"variable '{expr.name}' used before assignment")
        return value
    if isinstance(expr, UnaryOp):
        operand = evaluate_expression(expr.operand, environment)
        if expr.op == "-":
            if not _is_int(operand):
                raise PascalRuntimeError("unary '-' needs an integer operand")
            return _wrap64(-operand)
        if not isinstance(operand, bool):
            raise PascalRuntimeError("'not' needs a boolean operand")
        return not operand
    if isinstance(expr, BinOp):
        # Both operands are always evaluated (no short-circuiting).
        left = evaluate_expression(expr.left, environment)
        right = evaluate_expression(expr.right, environment)
        return _apply_binop(expr.op, left, right)
    raise PascalRuntimeError(f"cannot evaluate {type(expr).__name__}")


def _apply_binop(op: str, left, right):
    if op in ("and", "or"):
        if not (isinstance(left, bool) and isinstance(right, bool)):
            raise PascalRuntimeError(f"'{op}' needs boolean operands")
        return (left and right) if op == "and" else (left or right)

    if op in ("=", "<>", "<", "<=", ">", ">="):
        if isinstance(left, bool) != isinstance(right, bool):
            raise PascalRuntimeError(
                f"cannot compare {_type_name(left)} with {_type_name(right)}")
        table = {
            "=": left == right, "<>": left != right,
            "<": left < right, "<=": left <= right,
            ">": left > right, ">=": left >= right,
        }
        return table[op]

    if not (_is_int(left) and _is_int(right)):
        raise PascalRuntimeError(f"'{op}' needs integer operands")
    if op == "+":
        return _wrap64(left + right)
    if op == "-":
        return _wrap64(left - right)
    if op == "*":
        return _wrap64(left * right)
    if op in ("div", "mod"):
        if right == 0:
            raise PascalRuntimeError("division by zero")
        quotient = abs(left) // abs(right)
        if (left < 0) != (right < 0):
            quotient = -quotient
        if op == "div":
            return _wrap64(quotient)
        return _wrap64(left - right * quotient)
    raise PascalRuntimeError(f"unknown operator '{op}'")


def format_value(value) -> str:
    """Render a value the way write/writeln prints it."""
    if isinstance(value, bool):
        return "TRUE" if value else "FALSE"
    return str(value)


class _Interpreter:
    def __init__(self, program: Program, input_values, limits: ExecLimits):
        self.program = program
        self.env = {name: None for name in program.variables}
        self.input = list(input_values)
        self.input_pos = 0
        self.limits = limits
        self.events: list[TraceEvent] = []
        self.out = io.StringIO()
        self.steps = 0

    def emit(self, node, event: EventType, **fields) -> None:
        if len(self.events) >= self.limits.max_events:
            raise _LimitExceeded
        self.events.append(TraceEvent(
            seq=len(self.events), construct_id=node.construct_id,
            kind=node.kind, depth=node.depth, event=event, **fields))

    def run(self) -> Trace:
        status, error = Termination.COMPLETED, None
        try:
            for stmt in self.program.body:
                self.exec_stmt(stmt)
        except PascalRuntimeError as exc:
            status, error = Termination.ERROR, str(exc)
        except _LimitExceeded:
            status = Termination.LIMIT
        return Trace(self.events, self.out.getvalue(), status, error)

    def eval(self, expr):
        return evaluate_expression(expr, self.env)

    def eval_boolean(self, expr, what: str) -> bool:
        value = self.eval(expr)
        if not isinstance(value, bool):
            raise PascalRuntimeError(f"{what} must be boolean")
        return value

    def eval_integer(self, expr, what: str) -> int:
        value = self.eval(expr)
        if not _is_int(value):
            raise PascalRuntimeError(f"{what} must be integer")
        return value

    def assign(self, name: str, value) -> None:
        declared = self.program.variables[name]
        actual = VarType.BOOLEAN if isinstance(value, bool) else VarType.INTEGER
        if declared is not actual:
            raise PascalRuntimeError(
                f"cannot assign {actual.value} value to {declared.value} variable '{name}'")
        self.env[name] = value

    def exec_stmt(self, stmt) -> None:
        self.steps += 1
        if self.steps > self.limits.max_steps:
            raise _LimitExceeded

        if isinstance(stmt, Assign):
            self.assign(stmt.name, self.eval(stmt.value))
        elif isinstance(stmt, Write):
            for arg in stmt.args:
                if isinstance(arg, StringLit):
                    self.out.write(arg.text)
                else:
                    self.out.write(format_value(self.eval(arg)))
            if stmt.newline:
                self.out.write("\n")
        elif isinstance(stmt, Readln):
            self.exec_readln(stmt)
        elif isinstance(stmt, Compound):
            for inner in stmt.body:
                self.exec_stmt(inner)
        elif isinstance(stmt, IfStmt):
            self.exec_if(stmt)
        elif isinstance(stmt, WhileStmt):
            self.exec_while(stmt)
        elif isinstance(stmt, RepeatStmt):
            self.exec_repeat(stmt)
        elif isinstance(stmt, ForStmt):
            self.exec_for(stmt)
        elif isinstance(stmt, CaseStmt):
            self.exec_case(stmt)
        else:
            raise PascalRuntimeError(f"cannot execute {type(stmt).__name__}")

    def exec_readln(self, stmt: Readln) -> None:
        if self.input_pos >= len(self.input):
            raise PascalRuntimeError("readln: input exhausted")
        value = self.input[self.input_pos]
        self.input_pos += 1
        self.assign(stmt.name, value)

    def exec_if(self, stmt: IfStmt) -> None:
        self.emit(stmt, EventType.ENTER)
        result = self.eval_boolean(stmt.condition, "if condition")
        self.emit(stmt, EventType.CONDITION, result=result)
        if result:
            self.emit(stmt, EventType.BRANCH, branch="then")
            self.exec_stmt(stmt.then_branch)
        elif stmt.else_branch is not None:
            self.emit(stmt, EventType.BRANCH, branch="else")
            self.exec_stmt(stmt.else_branch)
        self.emit(stmt, EventType.EXIT)

    def exec_while(self, stmt: WhileStmt) -> None:
        self.emit(stmt, EventType.ENTER)
        iteration = 0
        while True:
            result = self.eval_boolean(stmt.condition, "while condition")
            self.emit(stmt, EventType.CONDITION, result=result)
            if not result:
                break
            iteration += 1
            self.emit(stmt, EventType.ITERATION, iteration=iteration)
            self.exec_stmt(stmt.body)
        self.emit(stmt, EventType.EXIT)

    def exec_repeat(self, stmt: RepeatStmt) -> None:
        self.emit(stmt, EventType.ENTER)
        iteration = 0
        while True:
            iteration += 1
            self.emit(stmt, EventType.ITERATION, iteration=iteration)
            for inner in stmt.body:
                self.exec_stmt(inner)
            result = self.eval_boolean(stmt.condition, "until condition")
            self.emit(stmt, EventType.CONDITION, result=result)
            if result:
                break
        self.emit(stmt, EventType.EXIT)

    def exec_for(self, stmt: ForStmt) -> None:
        self.emit(stmt, EventType.ENTER)
        start = self.eval_integer(stmt.start, "for start value")
        stop = self.eval_integer(stmt.stop, "for end value")
        count = max(0, start - stop + 1) if stmt.downto else max(0, stop - start + 1)
        step = -1 if stmt.downto else 1
        value = start
        for iteration in range(1, count + 1):
            self.assign(stmt.control, value)
            self.emit(stmt, EventType.ITERATION, iteration=iteration)
            self.exec_stmt(stmt.body)
            if iteration < count:
                value += step
        self.emit(stmt, EventType.EXIT)

    def exec_case(self, stmt: CaseStmt) -> None:
        self.emit(stmt, EventType.ENTER)
        selector = self.eval_integer(stmt.selector, "case selector")
        taken = None
        for index, branch in enumerate(stmt.branches, start=1):
            matched = any(low <= selector <= high for low, high in branch.labels)
            self.emit(stmt, EventType.CASE_SCAN, label=index, matched=matched)
            if matched:
                taken = branch.body
                break
        if taken is not None:
            self.exec_stmt(taken)
        elif stmt.else_branch is not None:
            self.emit(stmt, EventType.CASE_ELSE)
            self.exec_stmt(stmt.else_branch)
        else:
            self.emit(stmt, EventType.CASE_NO_MATCH)
        self.emit(stmt, EventType.EXIT)


def execute_program(program: Program, input_values=(), limits: ExecLimits | None = None) -> Trace:
    """Run ``program`` and return its trace, stdout and termination status.

    ``input_values`` supplies readln data as already-typed ints and bools.
    """
    return _Interpreter(program, input_values, limits or ExecLimits()).run()


def event_class(event: TraceEvent):
    """Construct class of the construct an event belongs to."""
    return classify_construct(event.kind)
