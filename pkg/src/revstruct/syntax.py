"""Text formats for structures, gates and traces.

Structure syntax (whitespace-insensitive, ``#`` starts a comment)::

    structure := ε | term ('|' term)*
    term      := (INT '*')? atom
    atom      := '<' name '>' | '[' inputs '>' outputs ']'

A single ``^`` inside a gate marks the traversal boundary; without one the
marker is 0.  Trace files start with ``init: <structure>`` followed by one
``fwd <gate>`` or ``bwd <gate>`` line per step, where the gate is the
species *before* the step.
"""

from __future__ import annotations

from .core import NAME_PATTERN, Gate, Structure, canonicalize, name
from .errors import DuplicateMarker, NotEnabled, SourceError


class Scanner:
    """Character cursor with whitespace/comment skipping and 1-based positions."""

    def __init__(self, text: str, line_offset: int = 0):
        self.text = text
        self.pos = 0
        self.line_offset = line_offset

    def location(self, pos: int | None = None) -> tuple[int, int]:
        pos = self.pos if pos is None else pos
        before = self.text[:pos]
        line = before.count("\n") + 1
        column = pos - (before.rfind("\n") + 1) + 1
        return line + self.line_offset, column

    def error(self, message: str, expected=(), pos: int | None = None) -> SourceError:
        line, column = self.location(pos)
        return SourceError(line, column, message, expected)

    def skip(self) -> None:
        text, n = self.text, len(self.text)
        while self.pos < n:
            ch = text[self.pos]
            if ch in " \t\r\n":
                self.pos += 1
            elif ch == "#":
                while self.pos < n and text[self.pos] != "\n":
                    self.pos += 1
            else:
                break

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self) -> bool:
        return self.peek() == ""

    def accept(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str, what: str | None = None) -> None:
        if not self.accept(ch):
            found = self.peek() or "end of input"
            raise self.error(f"unexpected {found!r}", {what or repr(ch)})

    def name(self) -> str:
        self.skip()
        m = NAME_PATTERN.match(self.text, self.pos)
        if m is None:
            found = self.peek() or "end of input"
            raise self.error(f"unexpected {found!r}", {"name"})
        self.pos = m.end()
        return name(m.group())

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return int(self.text[start:self.pos])


def _marked_names(sc: Scanner, stop: str, marker_seen: list) -> tuple[list[str], int | None]:
    """Parse ``name ('.' name)*`` (possibly empty) with an optional ``^``.

    Returns the names and the boundary index of the ``^`` within them.
    ``marker_seen`` carries the position of an earlier ``^`` in the same gate.
    """
    names: list[str] = []
    mark: int | None = None

    def take_marker():
        nonlocal mark
        start = sc.pos
        if sc.accept("^"):
            if marker_seen:
                raise DuplicateMarker(*sc.location(start + sc.text[start:].index("^")))
            marker_seen.append(True)
            mark = len(names)

    take_marker()
    if sc.peek() in ("", stop):
        return names, mark
    while True:
        names.append(sc.name())
        take_marker()
        if not sc.accept("."):
            break
        take_marker()
    if sc.peek() != stop:
        found = sc.peek() or "end of input"
        raise sc.error(f"unexpected {found!r}", {"'.'", "'^'", repr(stop)})
    return names, mark


def _gate(sc: Scanner) -> Gate:
    start = sc.pos
    sc.expect("[")
    seen: list = []
    ins, in_mark = _marked_names(sc, ">", seen)
    sc.expect(">")
    outs, out_mark = _marked_names(sc, "]", seen)
    sc.expect("]")
    if in_mark is not None:
        marker = in_mark
    elif out_mark is not None:
        marker = len(ins) + out_mark
    else:
        marker = 0
    try:
        return Gate(tuple(ins), tuple(outs), marker)
    except ValueError as exc:
        if type(exc) is ValueError:
            raise sc.error(str(exc), pos=start) from None
        raise


def _term(sc: Scanner):
    count = 1
    if sc.peek().isdigit():
        at = sc.pos
        count = sc.integer()
        if count < 1:
            raise sc.error("multiplicity must be at least 1", pos=at)
        sc.expect("*")
    ch = sc.peek()
    if ch == "<":
        sc.pos += 1
        a = sc.name()
        sc.expect(">")
        return a, count
    if ch == "[":
        return _gate(sc), count
    found = ch or "end of input"
    raise sc.error(f"unexpected {found!r}", {"'<'", "'['", "multiplicity"})


def _structure(sc: Scanner) -> Structure:
    raw = []
    if not sc.at_end():
        raw.append(_term(sc))
        while sc.accept("|"):
            raw.append(_term(sc))
    return canonicalize(raw)


def parse_structure(text: str, line_offset: int = 0) -> Structure:
    sc = Scanner(text, line_offset)
    s = _structure(sc)
    if not sc.at_end():
        raise sc.error(f"unexpected {sc.peek()!r}", {"'|'", "end of input"})
    return s


def parse_gate(text: str, line_offset: int = 0) -> Gate:
    sc = Scanner(text, line_offset)
    g = _gate(sc)
    if not sc.at_end():
        raise sc.error(f"unexpected {sc.peek()!r}", {"end of input"})
    return g


def print_structure(s: Structure) -> str:
    return str(s)


def print_gate(g: Gate) -> str:
    return g.text


def parse_trace(text: str):
    """Parse and replay a trace file; raises NotEnabled(k) for a dead step."""
    from .semantics import Direction, StepLabel, Trace, apply_step

    init = None
    steps = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        offset = lineno - 1
        if init is None:
            head = body.lstrip()
            if not head.startswith("init:"):
                column = len(body) - len(head) + 1
                raise SourceError(lineno, column, "trace must start with 'init:'", {"'init:'"})
            pad = len(body) - len(head) + len("init:")
            init = parse_structure(" " * pad + body[pad:], offset)
            state = init
            continue
        head = body.lstrip()
        word = head[:3]
        if word not in ("fwd", "bwd") or (len(head) > 3 and head[3] not in " \t["):
            column = len(body) - len(head) + 1
            raise SourceError(lineno, column, "expected step direction", {"'fwd'", "'bwd'"})
        pad = len(body) - len(head) + 3
        gate = parse_gate(" " * pad + body[pad:], offset)
        try:
            label = StepLabel(gate, Direction(word))
        except ValueError as exc:
            raise NotEnabled(str(exc), len(steps) + 1) from None
        try:
            state = apply_step(state, label)
        except NotEnabled as exc:
            raise NotEnabled(exc.reason, len(steps) + 1) from None
        steps.append(label)
    if init is None:
        raise SourceError(1, 1, "empty trace file", {"'init:'"})
    return Trace(init, tuple(steps))


def print_trace(trace) -> str:
    lines = [f"init: {trace.init}".rstrip()]
    lines.extend(str(t) for t in trace.steps)
    return "\n".join(lines) + "\n"
