"""Lossless JSON-lines trace format.

One object per event, keys in fixed order and no extra whitespace, so that
identical traces serialize to identical bytes:

    {"seq":0,"id":0,"kind":"WHILE","depth":0,"ev":"enter"}
    {"seq":1,"id":0,"kind":"WHILE","depth":0,"ev":"cond","result":false}
    ...
    {"status":"completed","stdout":""}

Event variants add their own fields: ``result`` for ``cond``, ``iter`` for
``tick``, ``label`` and ``matched`` for ``scan``, ``branch`` for ``branch``.
The final line always carries the termination status and program stdout.
"""

import json

from .errors import InvalidTraceError, TraceFormatError
from .interp import EventType, Termination, Trace, TraceEvent
from .syntax import ConstructKind

_STATUS_NAMES = {
    Termination.COMPLETED: "completed",
    Termination.LIMIT: "limit",
    Termination.ERROR: "error",
}
_STATUS_BY_NAME = {v: k for k, v in _STATUS_NAMES.items()}
_KIND_BY_NAME = {k.value: k for k in ConstructKind}
_EVENT_BY_NAME = {e.value: e for e in EventType}

_VARIANT_FIELDS = {
    EventType.ENTER: (),
    EventType.EXIT: (),
    EventType.CONDITION: ("result",),
    EventType.ITERATION: ("iter",),
    EventType.CASE_SCAN: ("label", "matched"),
    EventType.CASE_ELSE: (),
    EventType.CASE_NO_MATCH: (),
    EventType.BRANCH: ("branch",),
}


def _event_to_obj(ev: TraceEvent) -> dict:
    obj = {"seq": ev.seq, "id": ev.construct_id, "kind": ev.kind.value,
           "depth": ev.depth, "ev": ev.event.value}
    if ev.event is EventType.CONDITION:
        obj["result"] = ev.result
    elif ev.event is EventType.ITERATION:
        obj["iter"] = ev.iteration
    elif ev.event is EventType.CASE_SCAN:
        obj["label"] = ev.label
        obj["matched"] = ev.matched
    elif ev.event is EventType.BRANCH:
        obj["branch"] = ev.branch
    return obj


def serialize_trace(trace: Trace) -> str:
    """Serialize to JSON lines; byte-stable for equal traces."""
    lines = [json.dumps(_event_to_obj(ev), separators=(",", ":"))
             for ev in trace.events]
    lines.append(json.dumps({"status": _STATUS_NAMES[trace.status],
                             "stdout": trace.stdout}, separators=(",", ":")))
    return "\n".join(lines) + "\n"


def _want(obj: dict, key: str, types, line: int):
    if key not in obj:
        raise TraceFormatError(f"missing field '{key}'", line)
    value = obj[key]
    if not isinstance(value, types) or (types is int and isinstance(value, bool)):
        raise TraceFormatError(f"field '{key}' has wrong type", line)
    return value


def _parse_event(obj: dict, line: int) -> TraceEvent:
    seq = _want(obj, "seq", int, line)
    cid = _want(obj, "id", int, line)
    kind_name = _want(obj, "kind", str, line)
    depth = _want(obj, "depth", int, line)
    ev_name = _want(obj, "ev", str, line)
    if kind_name not in _KIND_BY_NAME:
        raise TraceFormatError(f"unknown construct kind '{kind_name}'", line)
    if ev_name not in _EVENT_BY_NAME:
        raise TraceFormatError(f"unknown event variant '{ev_name}'", line)
    event = _EVENT_BY_NAME[ev_name]

    expected_keys = ("seq", "id", "kind", "depth", "ev") + _VARIANT_FIELDS[event]
    if tuple(obj.keys()) != expected_keys:
        raise TraceFormatError(
            f"fields must be exactly {list(expected_keys)} in order", line)

    fields = {}
    if event is EventType.CONDITION:
        fields["result"] = _want(obj, "result", bool, line)
    elif event is EventType.ITERATION:
        fields["iteration"] = _want(obj, "iter", int, line)
    elif event is EventType.CASE_SCAN:
        fields["label"] = _want(obj, "label", int, line)
        fields["matched"] = _want(obj, "matched", bool, line)
    elif event is EventType.BRANCH:
        branch = _want(obj, "branch", str, line)
        if branch not in ("then", "else"):
            raise TraceFormatError(f"bad branch value '{branch}'", line)
        fields["branch"] = branch
    return TraceEvent(seq=seq, construct_id=cid, kind=_KIND_BY_NAME[kind_name],
                      depth=depth, event=event, **fields)


def check_balanced(events: list[TraceEvent], allow_open_tail: bool = False) -> None:
    """Verify the enter/exit Dyck property keyed by construct id.

    With ``allow_open_tail`` (partial traces from aborted runs), constructs
    may remain open at the end of the stream, but every exit must still
    match the innermost open enter.
    """
    stack: list[int] = []
    for ev in events:
        if ev.event is EventType.ENTER:
            stack.append(ev.construct_id)
        elif ev.event is EventType.EXIT:
            if not stack or stack[-1] != ev.construct_id:
                raise InvalidTraceError(
                    f"exit of construct {ev.construct_id} does not match an open enter")
            stack.pop()
    if stack and not allow_open_tail:
        raise InvalidTraceError(f"constructs never exited: {stack}")


def deserialize_trace(text: str) -> Trace:
    """Parse serialize_trace output back into an equal Trace.

    Raises TraceFormatError (with line number) on schema violations and
    InvalidTraceError when a completed trace has unbalanced enter/exit.
    """
    lines = text.splitlines()
    if not lines:
        raise TraceFormatError("empty trace file", 1)
    events: list[TraceEvent] = []
    status: Termination | None = None
    stdout = ""
    for number, line in enumerate(lines, start=1):
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise TraceFormatError(f"bad JSON: {exc.msg}", number) from None
        if not isinstance(obj, dict):
            raise TraceFormatError("line is not a JSON object", number)
        if "status" in obj:
            if number != len(lines):
                raise TraceFormatError("status line before end of file", number)
            name = _want(obj, "status", str, number)
            if name not in _STATUS_BY_NAME:
                raise TraceFormatError(f"unknown status '{name}'", number)
            if tuple(obj.keys()) != ("status", "stdout"):
                raise TraceFormatError("status line must have exactly status, stdout", number)
            status = _STATUS_BY_NAME[name]
            stdout = _want(obj, "stdout", str, number)
        else:
            event = _parse_event(obj, number)
            if event.seq != len(events):
                raise TraceFormatError(
                    f"seq {event.seq} out of order (expected {len(events)})", number)
            events.append(event)
    if status is None:
        raise TraceFormatError("missing final status line", len(lines))
    check_balanced(events, allow_open_tail=status is not Termination.COMPLETED)
    return Trace(events, stdout, status)
