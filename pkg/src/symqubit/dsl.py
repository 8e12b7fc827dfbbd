"""The ``.sqc`` netlist language: lexer, recursive-descent parser, printer.

Example::

    circuit cnot {
        grover4 g;              // one four-port
        input g.a; input g.b; input g.c; input g.d;
        output g.a; output g.b; output g.c; output g.d;
    }

Ports declared both ``input`` and ``output`` form the dual-rail boundary:
the first two such ports are the left pair (rails a, b), the next two the
right pair.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Optional, Union

from .circuit import CircuitError, PortGraph
from .components import DSL_KEYWORD, DSL_KINDS, make_element

KINDS = tuple(DSL_KINDS)


@dataclass(frozen=True)
class Diagnostic:
    line: int
    column: int
    message: str
    severity: str = "error"

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.severity}: {self.message}"


@dataclass
class ParseResult:
    graph: Optional[PortGraph]
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.graph is not None and not any(
            d.severity == "error" for d in self.diagnostics
        )


class ParseError(Exception):
    def __init__(self, diagnostics: list[Diagnostic]):
        super().__init__("\n".join(map(str, diagnostics)))
        self.diagnostics = diagnostics


# -- lexer --------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # IDENT, NUMBER, PUNCT, EOF
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<nl>\n)
  | (?P<comment>//[^\n]*)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>--|[{}();,.=/-])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> tuple[list[Token], list[Diagnostic]]:
    tokens, diags = [], []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            diags.append(Diagnostic(line, col, f"unexpected character {text[pos]!r}"))
            pos += 1
            continue
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind in ("number", "ident", "punct"):
            tokens.append(Token(kind.upper(), m.group(), line, col))
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens, diags


# -- numbers ------------------------------------------------------------------

def pi_multiple(k: float, n: float) -> float:
    """k*pi/n, evaluated the same way by the parser and the printer."""
    return k * math.pi / n


def format_number(value: float) -> str:
    """Shortest text that parses back to exactly ``value``.

    Exact small rational multiples of pi print as pi-literals.
    """
    if value == 0.0:
        return "0"
    if not math.isfinite(value):
        raise ValueError(f"cannot print non-finite number {value!r}")
    for n in range(1, 17) if abs(value) < 1e3 else ():
        k = round(value * n / math.pi)
        if k != 0 and abs(k) <= 64 and pi_multiple(k, n) == value:
            sign = "-" if k < 0 else ""
            k = abs(k)
            text = sign + ("" if k == 1 else str(k)) + "pi"
            return text if n == 1 else f"{text}/{n}"
    if float(value).is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(float(value))


# -- parser -------------------------------------------------------------------

class _Sync(Exception):
    """Abort the current statement and resynchronise at the next ';'."""


class _Parser:
    def __init__(self, tokens: list[Token], diags: list[Diagnostic]):
        self.toks = tokens
        self.i = 0
        self.diags = diags
        self.graph: Optional[PortGraph] = None

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "EOF":
            self.i += 1
        return t

    def error(self, tok: Token, message: str):
        self.diags.append(Diagnostic(tok.line, tok.col, message))
        raise _Sync

    def expect(self, text: str) -> Token:
        if self.tok.kind == "PUNCT" and self.tok.text == text or (
            self.tok.kind == "IDENT" and self.tok.text == text
        ):
            return self.advance()
        found = self.tok.text or "end of input"
        self.error(self.tok, f"expected '{text}', found '{found}'")

    def ident(self, what: str) -> Token:
        if self.tok.kind != "IDENT":
            found = self.tok.text or "end of input"
            self.error(self.tok, f"expected {what}, found '{found}'")
        return self.advance()

    def at(self, text: str) -> bool:
        return self.tok.kind in ("PUNCT", "IDENT") and self.tok.text == text

    def number(self) -> float:
        value = self._number()
        if not math.isfinite(value):
            self.error(self.tok, "number out of range")
        return value

    def _number(self) -> float:
        start = self.tok
        sign = 1.0
        if self.at("-"):
            self.advance()
            sign = -1.0
        coef = None
        if self.tok.kind == "NUMBER":
            coef = float(self.advance().text)
        if self.at("pi"):
            self.advance()
            k = 1.0 if coef is None else coef
            n = 1.0
            if self.at("/"):
                self.advance()
                if self.tok.kind != "NUMBER":
                    self.error(self.tok, "expected a number after '/'")
                n = float(self.advance().text)
                if n == 0.0:
                    self.error(start, "division by zero in pi-literal")
            return pi_multiple(sign * k, n)
        if coef is None:
            found = self.tok.text or "end of input"
            self.error(self.tok, f"expected a number, found '{found}'")
        return sign * coef

    def sync(self) -> None:
        while self.tok.kind != "EOF" and not self.at(";") and not self.at("}"):
            self.advance()
        if self.at(";"):
            self.advance()

    def circuit(self) -> None:
        try:
            self.expect("circuit")
            name = self.ident("circuit name").text
            self.expect("{")
        except _Sync:
            return
        self.graph = PortGraph(name)
        while not self.at("}"):
            if self.tok.kind == "EOF":
                self.diags.append(Diagnostic(self.tok.line, self.tok.col, "missing '}'"))
                return
            try:
                self.statement()
            except _Sync:
                self.sync()
        self.advance()
        if self.tok.kind != "EOF":
            self.diags.append(Diagnostic(self.tok.line, self.tok.col,
                                         f"unexpected '{self.tok.text}' after circuit"))

    def port_ref(self) -> tuple[tuple[str, str], Token]:
        inst = self.ident("element id")
        self.expect(".")
        port = self.ident("port name")
        return (inst.text, port.text), inst

    def statement(self) -> None:
        head = self.tok
        loc = (head.line, head.col)
        if self.at("input") or self.at("output"):
            kw = self.advance().text
            ref, _ = self.port_ref()
            self.expect(";")
            self.apply(head, lambda: (self.graph.add_input if kw == "input"
                                      else self.graph.add_output)(ref, loc))
            return
        first = self.ident("a declaration or connection")
        if self.at("."):
            self.advance()
            a = (first.text, self.ident("port name").text)
            self.expect("--")
            b, _ = self.port_ref()
            self.expect(";")
            self.apply(head, lambda: self.graph.connect(a, b, loc))
            return
        kind = first.text
        if kind not in DSL_KINDS:
            self.error(first, f"unknown kind '{kind}'")
        inst = self.ident("element id")
        params: dict[str, float] = {}
        if self.at("("):
            self.advance()
            while True:
                key = self.ident("parameter name")
                self.expect("=")
                if key.text in params:
                    self.error(key, f"parameter '{key.text}' given twice")
                params[key.text] = self.number()
                if self.at(","):
                    self.advance()
                    continue
                self.expect(")")
                break
        self.expect(";")
        try:
            element = make_element(kind, params)
        except ValueError as exc:
            self.error(head, str(exc))
        self.apply(head, lambda: self.graph.add_element(element, inst.text, loc))

    def apply(self, tok: Token, action) -> None:
        try:
            action()
        except CircuitError as exc:
            self.diags.append(Diagnostic(tok.line, tok.col, str(exc)))


def _decode(source: Union[str, bytes]) -> tuple[str, list[Diagnostic]]:
    if isinstance(source, str):
        return source, []
    try:
        return source.decode("utf-8"), []
    except UnicodeDecodeError as exc:
        prefix = source[: exc.start]
        line = prefix.count(b"\n") + 1
        col = exc.start - (prefix.rfind(b"\n") + 1) + 1
        diag = Diagnostic(line, col, "invalid UTF-8")
        return source.decode("utf-8", errors="replace"), [diag]


def parse(source: Union[str, bytes]) -> ParseResult:
    """Parse a netlist.  Never raises; problems come back as diagnostics."""
    text, diags = _decode(source)
    tokens, lex_diags = tokenize(text)
    diags.extend(lex_diags)
    p = _Parser(tokens, diags)
    p.circuit()
    if not diags and p.graph is None:  # pragma: no cover - defensive
        diags.append(Diagnostic(1, 1, "no circuit"))
    graph = p.graph if not diags else None
    return ParseResult(graph, diags)


def parse_or_raise(source: Union[str, bytes]) -> PortGraph:
    res = parse(source)
    if not res.ok:
        raise ParseError(res.diagnostics)
    return res.graph


def check_wiring(graph: PortGraph) -> list[Diagnostic]:
    """One diagnostic per port that is neither wired nor declared external."""
    out = []
    for inst, port in graph.unconnected_ports():
        line, col = graph.locations.get(inst, (1, 1))
        out.append(Diagnostic(line, col, f"port {inst}.{port} is not wired or declared"))
    return out


# -- printer ------------------------------------------------------------------

def pretty_print(graph: PortGraph) -> str:
    lines = [f"circuit {graph.name} {{"]
    for inst, el in graph.elements.items():
        kw = DSL_KEYWORD[el.kind]
        defaults = DSL_KINDS[kw][1]
        params = [
            f"{k}={format_number(v)}"
            for k, v in el.params.items()
            if k in defaults and not (defaults[k] is not None and v == defaults[k])
        ]
        args = f"({', '.join(params)})" if params else ""
        lines.append(f"    {kw} {inst}{args};")
    for (ia, pa), (ib, pb) in graph.wires:
        lines.append(f"    {ia}.{pa} -- {ib}.{pb};")
    for ref in graph.inputs:
        lines.append(f"    input {ref[0]}.{ref[1]};")
    for ref in graph.outputs:
        lines.append(f"    output {ref[0]}.{ref[1]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def boundary(graph: PortGraph) -> Optional[tuple[tuple, tuple]]:
    """Left and right dual-rail pairs, or None if the netlist has no such boundary."""
    both = [ref for ref in graph.inputs if ref in graph.outputs]
    if len(both) != 4:
        return None
    return (both[0], both[1]), (both[2], both[3])


def gate_circuit(graph: PortGraph):
    """Wrap a parsed netlist with a dual-rail boundary as a :class:`GateCircuit`."""
    from .gates import GateCircuit

    pairs = boundary(graph)
    if pairs is None:
        raise ValueError("netlist needs exactly four ports declared both input and output")
    return GateCircuit(graph.name, graph, *pairs)


def parse_number(text: str) -> float:
    """Parse one DSL number (``0.5``, ``-pi/2``, ``3pi/4``); raises ``ValueError``."""
    tokens, diags = tokenize(text)
    p = _Parser(tokens, diags)
    try:
        value = p.number()
    except _Sync:
        value = None
    if diags or p.tok.kind != "EOF":
        raise ValueError(f"not a number: {text!r}")
    return value
