import hashlib
import re
from typing import List, Optional, Sequence, Tuple

from tracesimp.connectivity_analyzer import fold_joins
from tracesimp.derivation_log import format_derivation, parse_derivation
from tracesimp.errors import (SemanticError, TraceError, TraceSyntaxError,
                              VersionUnsupported)
from tracesimp.models.annotation import AnnotatedTrace, Annotation
from tracesimp.models.program import Program
from tracesimp.models.statement import Statement
from tracesimp.models.statement_kind import StatementKind
from tracesimp.models.trace import Trace
from tracesimp.models.trace_document import FORMAT_VERSION, TraceDocument
from tracesimp.trace_utils.faithful import validate_faithful

MAGIC = "tracesimp-trace"
TOKENS_PER_LINE = 16
SECTIONS = ("program", "trace", "origin", "annotations", "derivation", "end")

_TOKEN = re.compile(r"^t(\d+)#(\d+)$")
_THREAD_HEADER = re.compile(r"^thread (\d+):$")

def program_lines(program: Program) -> List[str]:
    lines = []
    for owner, thread in enumerate(program.threads, start=1):
        lines.append(f"thread {owner}:")
        lines.extend(f"  {stmt.render()}" for stmt in thread)
    return lines

def program_digest(program: Program) -> str:
    """First 16 hex digits of the SHA-256 of the program section."""
    return hashlib.sha256("\n".join(program_lines(program)).encode("utf-8")).hexdigest()[:16]

def _trace_lines(trace: Trace) -> List[str]:
    tokens = [f"t{owner}#{index}" for owner, index in trace.order]
    return [" ".join(tokens[k:k + TOKENS_PER_LINE]) for k in range(0, len(tokens), TOKENS_PER_LINE)]

def serialize(document: TraceDocument) -> str:
    """
    Renders a document in the line-oriented text format. Optional sections
    are written only when present; the output always ends with a newline.
    """
    lines = [f"{MAGIC} {document.version}", f"digest {program_digest(document.program)}", "program"]
    lines += program_lines(document.program)
    lines.append("trace")
    lines += _trace_lines(document.trace)
    if document.origin is not None:
        lines.append("origin")
        lines += _trace_lines(document.origin)
    if document.annotations is not None:
        lines.append("annotations")
        lines += [" ".join(str(v) for v in join.as_tuple()) for join in document.annotations.joins]
    if document.derivation is not None:
        lines.append("derivation")
        lines += format_derivation(document.derivation)
    lines.append("end")
    return "\n".join(lines) + "\n"

class _Lines:
    """Significant (line number, text) pairs with a read cursor."""

    def __init__(self, text: str):
        self.items = [(number, raw.rstrip("\r")) for number, raw in enumerate(text.split("\n"), start=1)
                      if raw.strip() and not raw.lstrip().startswith("#")]
        self.position = 0
        self.last_line = text.count("\n") + 1

    def peek(self) -> Optional[Tuple[int, str]]:
        return self.items[self.position] if self.position < len(self.items) else None

    def take(self, expected: str) -> Tuple[int, str]:
        item = self.peek()
        if item is None:
            raise TraceSyntaxError(self.last_line, 1, expected)
        self.position += 1
        return item

    def until_section(self) -> List[Tuple[int, str]]:
        taken = []
        while self.peek() is not None and self.peek()[1] not in SECTIONS:
            taken.append(self.take("section body"))
        return taken

def _expect_keyword(lines: _Lines, keyword: str) -> None:
    number, text = lines.take(f"'{keyword}'")
    if text != keyword:
        raise TraceSyntaxError(number, 1, f"'{keyword}'")

def _parse_header(lines: _Lines) -> Tuple[int, str]:
    number, text = lines.take(f"'{MAGIC} <version>'")
    parts = text.split(" ")
    if len(parts) != 2 or parts[0] != MAGIC or not parts[1].isdigit():
        raise TraceSyntaxError(number, 1, f"'{MAGIC} <version>'")
    version = int(parts[1])
    if version != FORMAT_VERSION:
        raise VersionUnsupported(f"Format version {version} is not supported (expected {FORMAT_VERSION}).")
    number, text = lines.take("'digest <hex>'")
    parts = text.split(" ")
    if len(parts) != 2 or parts[0] != "digest" or not re.fullmatch(r"[0-9a-f]{16}", parts[1]):
        raise TraceSyntaxError(number, 1, "'digest <16 hex digits>'")
    return version, parts[1]

def _parse_statement(number: int, text: str, owner: int, index: int) -> Statement:
    if not text.startswith("  ") or text[2:3] == " ":
        raise TraceSyntaxError(number, 1, "a statement indented by two spaces")
    words = text[2:].split(" ")
    try:
        kind = StatementKind(words[0])
    except ValueError:
        raise TraceSyntaxError(number, 3, "a statement keyword") from None
    operands = 2 if kind.takes_local else 1 if kind.takes_global else 0
    if len(words) - 1 != operands or not all(words[1:]):
        raise TraceSyntaxError(number, 3 + len(words[0]), f"{operands} operand(s) for {kind.value}")
    local_name = words[1] if kind.takes_local else None
    global_name = words[-1] if kind.takes_global else None
    try:
        return Statement(kind, owner, index, local_name, global_name)
    except TraceError as error:
        raise SemanticError(f"line {number}: {error}") from error

def _parse_program(lines: _Lines) -> Program:
    _expect_keyword(lines, "program")
    body = lines.until_section()
    threads: List[List[Statement]] = []
    for number, text in body:
        header = _THREAD_HEADER.match(text)
        if header:
            if int(header.group(1)) != len(threads) + 1:
                raise TraceSyntaxError(number, 8, f"thread {len(threads) + 1}")
            threads.append([])
        elif not threads:
            raise TraceSyntaxError(number, 1, "'thread 1:'")
        else:
            threads[-1].append(_parse_statement(number, text, len(threads), len(threads[-1]) + 1))
    try:
        return Program(tuple(tuple(thread) for thread in threads))
    except TraceError as error:
        raise SemanticError(str(error)) from error

def _parse_refs(body: Sequence[Tuple[int, str]]) -> List[Tuple[int, int]]:
    refs = []
    for number, text in body:
        column = 1
        for token in text.split(" "):
            if token:
                match = _TOKEN.match(token)
                if match is None:
                    raise TraceSyntaxError(number, column, "'t<thread>#<index>'")
                refs.append((int(match.group(1)), int(match.group(2))))
            column += len(token) + 1
    return refs

def _parse_trace(lines: _Lines, program: Program, keyword: str) -> Trace:
    _expect_keyword(lines, keyword)
    refs = _parse_refs(lines.until_section())
    try:
        return validate_faithful(program, refs)
    except TraceError as error:
        raise SemanticError(f"{keyword}: {error}") from error

def _parse_annotations(lines: _Lines, program: Program, trace: Trace) -> AnnotatedTrace:
    _expect_keyword(lines, "annotations")
    joins = []
    for number, text in lines.until_section():
        fields = text.split(" ")
        if len(fields) != 4 or not all(f.isdigit() for f in fields):
            raise TraceSyntaxError(number, 1, "'<s1> <s2> <t1> <t2>'")
        joins.append(Annotation(*(int(f) for f in fields)))
    if joins != fold_joins(program, trace.order):
        raise SemanticError("annotations do not match the trace")
    return AnnotatedTrace(trace, tuple(joins))

def parse(text: str) -> TraceDocument:
    """
    Parses a trace document and validates it against its own program.

    Parameters:
        text (str): The document text.

    Returns:
        TraceDocument: Program, faithful trace and the optional origin,
            annotations and derivation sections.

    Raises:
        TraceSyntaxError: Malformed text, with line and column.
        SemanticError: Well-formed text that does not describe a valid
            program/trace pair (digest mismatch, unfaithful trace, ...).
        VersionUnsupported: An unknown format version.
    """
    lines = _Lines(text)
    version, digest = _parse_header(lines)
    program = _parse_program(lines)
    if program_digest(program) != digest:
        raise SemanticError(f"digest {digest} does not match the program section ({program_digest(program)})")
    trace = _parse_trace(lines, program, "trace")

    origin, annotations, derivation = None, None, None
    item = lines.peek()
    if item is not None and item[1] == "origin":
        origin = _parse_trace(lines, program, "origin")
    item = lines.peek()
    if item is not None and item[1] == "annotations":
        annotations = _parse_annotations(lines, program, trace)
    item = lines.peek()
    if item is not None and item[1] == "derivation":
        lines.take("'derivation'")
        body = lines.until_section()
        derivation = parse_derivation([text for _, text in body], body[0][0] if body else 1)
    _expect_keyword(lines, "end")
    if lines.peek() is not None:
        number, _ = lines.peek()
        raise TraceSyntaxError(number, 1, "end of document")
    return TraceDocument(program, trace, annotations, origin, derivation, version)

def read_document(path) -> TraceDocument:
    with open(path, "r", encoding="utf-8") as handle:
        return parse(handle.read())

def write_document(path, document: TraceDocument) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(serialize(document))

