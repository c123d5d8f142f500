import re
from typing import List, Sequence

from tracesimp.errors import TraceSyntaxError
from tracesimp.models.derivation import FINAL_SEGMENT, RULES, S_CONDITIONS, Derivation, DerivationNode

INDENT = "  "

_NODE_LINE = re.compile(r"^(?P<indent> *)(?P<rule>\S+) (?P<lo>\d+)\.\.(?P<hi>\d+) witness=(?P<t2>\d+),(?P<t1>\d+)$")
_CONDITION_LINE = re.compile(r"^condition (?P<name>\S+)$")

def format_node(node: DerivationNode) -> List[str]:
    return [f"{INDENT * depth}{n.rule} {n.lo}..{n.hi} witness={n.witness[0]},{n.witness[1]}"
            for depth, n in node.walk()]

def format_derivation(derivation: Derivation) -> List[str]:
    """
    One line per node, pre-order, two spaces per depth; each round starts at
    depth 0. A non-default rule-S condition is written first as
    'condition <name>'.
    """
    lines: List[str] = []
    if derivation.s_condition != FINAL_SEGMENT:
        lines.append(f"condition {derivation.s_condition}")
    for root in derivation.rounds:
        lines.extend(format_node(root))
    return lines

def parse_derivation(lines: Sequence[str], first_line: int = 1) -> Derivation:
    """
    Reads derivation log lines back into a Derivation.

    Raises:
        TraceSyntaxError: A line is not a node line, names an unknown rule or
            condition, or is indented deeper than its parent allows.
    """
    s_condition = FINAL_SEGMENT
    if lines:
        header = _CONDITION_LINE.match(lines[0])
        if header is not None:
            if header.group("name") not in S_CONDITIONS:
                raise TraceSyntaxError(first_line, 11, f"one of {', '.join(S_CONDITIONS)}")
            s_condition = header.group("name")
            lines, first_line = lines[1:], first_line + 1

    # Each open entry is [rule, lo, hi, witness, children] waiting for its children.
    roots: List[DerivationNode] = []
    stack: List[list] = []

    def close_to(depth: int) -> None:
        while len(stack) > depth:
            rule, lo, hi, witness, children = stack.pop()
            node = DerivationNode(rule, lo, hi, witness, tuple(children))
            (stack[-1][4] if stack else roots).append(node)

    for offset, text in enumerate(lines):
        line_number = first_line + offset
        match = _NODE_LINE.match(text)
        if match is None:
            raise TraceSyntaxError(line_number, 1, "'<rule> <lo>..<hi> witness=<t2>,<t1>'")
        indent = len(match.group("indent"))
        if indent % len(INDENT) or indent // len(INDENT) > len(stack):
            raise TraceSyntaxError(line_number, 1, f"indentation of at most {len(INDENT) * len(stack)} spaces")
        if match.group("rule") not in RULES:
            raise TraceSyntaxError(line_number, indent + 1, f"one of {', '.join(RULES)}")
        close_to(indent // len(INDENT))
        stack.append([match.group("rule"), int(match.group("lo")), int(match.group("hi")),
                      (int(match.group("t2")), int(match.group("t1"))), []])
    close_to(0)
    return Derivation(tuple(roots), s_condition)
