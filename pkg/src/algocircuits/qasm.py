"""OpenQASM 2.0 emitter and a parser for the subset it produces."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path

from .circuit import Circuit, Gate, Instruction, _check_against, _frozen
from .decompose import decompose_instruction, decompose_to_basis
from .errors import InvalidArgument, InvalidInstruction, QasmParseError, UnsupportedFeature

HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'

_NAMES = {
    Gate.I: "id", Gate.H: "h", Gate.X: "x", Gate.Y: "y", Gate.Z: "z", Gate.S: "s",
    Gate.SDG: "sdg", Gate.T: "t", Gate.TDG: "tdg", Gate.RX: "rx", Gate.RY: "ry", Gate.RZ: "rz",
    Gate.PHASE: "p", Gate.U3: "u3", Gate.CX: "cx", Gate.CZ: "cz", Gate.CPHASE: "cp",
    Gate.RZZ: "rzz", Gate.SWAP: "swap",
}
_COMPAT = {Gate.PHASE: "u1", Gate.CPHASE: "cu1"}

_PARSE_NAMES: dict[str, Gate] = {v: k for k, v in _NAMES.items()}
_PARSE_NAMES.update({"u1": Gate.PHASE, "cu1": Gate.CPHASE, "u": Gate.U3, "U": Gate.U3,
                     "CX": Gate.CX, "ccx": Gate.MCX})


def _angle(x: float) -> str:
    return format(x, ".17g")


def to_qasm(circuit: Circuit, decompose: bool = True, compat: bool = False) -> str:
    """Serialize to OpenQASM 2.0.

    By default the basis-decomposed circuit is written, so parsing the text
    back gives ``decompose_to_basis(circuit)`` exactly. With
    ``decompose=False`` native gate names (cz, cp, rzz, swap) are kept and
    only multi-controlled gates are expanded. ``compat`` spells phase gates
    as u1/cu1 for older toolchains.
    """
    if decompose:
        circuit = decompose_to_basis(circuit)
    lines = [HEADER.rstrip("\n"), f"qreg q[{circuit.num_qubits}];"]
    if circuit.num_clbits:
        lines.append(f"creg c[{circuit.num_clbits}];")
    for instr in circuit.instructions:
        if instr.gate in (Gate.MCX, Gate.MCPHASE):
            lines.extend(_statement(i, compat) for i in decompose_instruction(instr))
        else:
            lines.append(_statement(instr, compat))
    return "\n".join(lines) + "\n"


def _statement(instr: Instruction, compat: bool) -> str:
    g = instr.gate
    if g is Gate.MEASURE:
        return f"measure q[{instr.qubits[0]}] -> c[{instr.clbits[0]}];"
    args = ",".join(f"q[{q}]" for q in instr.qubits)
    if g is Gate.BARRIER:
        return f"barrier {args};" if args else "barrier q;"
    name = _COMPAT[g] if compat and g in _COMPAT else _NAMES[g]
    if instr.params:
        name += "(" + ",".join(_angle(p) for p in instr.params) + ")"
    return f"{name} {args};"


def save_qasm(circuit: Circuit, path: str | Path, **kwargs) -> None:
    Path(path).write_text(to_qasm(circuit, **kwargs), encoding="utf-8", newline="\n")


def load_qasm(path: str | Path) -> Circuit:
    return from_qasm(Path(path).read_text(encoding="utf-8"))


# --- parser -----------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+|//[^\n]*)
  | (?P<nl>\n)
  | (?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<id>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<str>"[^"\n]*")
  | (?P<arrow>->)
  | (?P<eqeq>==)
  | (?P<sym>[;,()\[\]{}+\-*/^])
""", re.VERBOSE)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise QasmParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind != "ws":
            toks.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.qreg: tuple[str, int] | None = None
        self.creg: tuple[str, int] | None = None
        self.instrs: list[Instruction] = []

    # token helpers
    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg: str, tok: _Tok | None = None) -> QasmParseError:
        tok = tok or self.peek()
        shown = tok.text or "end of input"
        return QasmParseError(f"{msg}, found {shown!r}", tok.line, tok.col)

    def expect(self, text: str) -> _Tok:
        tok = self.peek()
        if tok.text != text:
            raise self.error(f"expected {text!r}")
        return self.next()

    def expect_kind(self, kind: str, what: str) -> _Tok:
        tok = self.peek()
        if tok.kind != kind:
            raise self.error(f"expected {what}")
        return self.next()

    # grammar
    def parse(self) -> Circuit:
        self.expect("OPENQASM")
        version = self.expect_kind("num", "version number")
        if version.text not in ("2.0", "2"):
            raise UnsupportedFeature(f"OpenQASM version {version.text}", version.line, version.col)
        self.expect(";")
        while self.peek().kind != "eof":
            self.statement()
        if self.qreg is None:
            raise self.error("missing qreg declaration")
        nc = self.creg[1] if self.creg else 0
        for instr in self.instrs:
            _check_against(instr, self.qreg[1], nc)
        return _frozen(self.qreg[1], nc, tuple(self.instrs), None)

    def statement(self) -> None:
        tok = self.peek()
        if tok.kind != "id":
            raise self.error("expected a statement")
        word = tok.text
        if word == "include":
            self.next()
            self.expect_kind("str", "file name")
            self.expect(";")
        elif word in ("qreg", "creg"):
            self.declaration()
        elif word in ("if", "gate", "opaque", "reset"):
            raise UnsupportedFeature(f"'{word}' statements are not supported", tok.line, tok.col)
        elif word == "measure":
            self.next()
            qs = self.operand("q")
            self.expect_kind("arrow", "'->'")
            cs = self.operand("c")
            self.expect(";")
            if len(qs) != len(cs):
                raise QasmParseError("measure operands differ in size", tok.line, tok.col)
            for q, c in zip(qs, cs):
                self.instrs.append(Instruction(Gate.MEASURE, (q,), (), (c,)))
        elif word == "barrier":
            self.next()
            qubits = self.operand_list()
            self.expect(";")
            seen = list(dict.fromkeys(q for group in qubits for q in group))
            self.instrs.append(Instruction(Gate.BARRIER, tuple(seen)))
        else:
            self.gate()

    def declaration(self) -> None:
        kw = self.next()
        name = self.expect_kind("id", "register name").text
        self.expect("[")
        size = int(self.expect_kind("num", "register size").text)
        self.expect("]")
        self.expect(";")
        attr = "qreg" if kw.text == "qreg" else "creg"
        if getattr(self, attr) is not None:
            raise UnsupportedFeature(f"more than one {attr}", kw.line, kw.col)
        if kw.text == "qreg" and size < 1:
            raise QasmParseError("qreg must have at least one qubit", kw.line, kw.col)
        setattr(self, attr, (name, size))

    def operand(self, kind: str) -> list[int]:
        reg = self.qreg if kind == "q" else self.creg
        tok = self.expect_kind("id", "register operand")
        if reg is None or tok.text != reg[0]:
            raise self.error("unknown register", tok)
        if self.peek().text != "[":
            return list(range(reg[1]))
        self.next()
        idx_tok = self.expect_kind("num", "index")
        self.expect("]")
        idx = int(idx_tok.text)
        if idx >= reg[1]:
            raise QasmParseError(f"index {idx} out of range for {reg[0]}", idx_tok.line, idx_tok.col)
        return [idx]

    def operand_list(self) -> list[list[int]]:
        out = [self.operand("q")]
        while self.peek().text == ",":
            self.next()
            out.append(self.operand("q"))
        return out

    def gate(self) -> None:
        tok = self.next()
        gate = _PARSE_NAMES.get(tok.text)
        if gate is None:
            raise UnsupportedFeature(f"gate '{tok.text}' is outside the supported vocabulary",
                                     tok.line, tok.col)
        params: list[float] = []
        if self.peek().text == "(":
            self.next()
            if self.peek().text != ")":
                params.append(self.expr())
                while self.peek().text == ",":
                    self.next()
                    params.append(self.expr())
            self.expect(")")
        groups = self.operand_list()
        self.expect(";")
        width = max(len(g) for g in groups)
        if any(len(g) not in (1, width) for g in groups):
            raise QasmParseError("register operands differ in size", tok.line, tok.col)
        try:
            for k in range(width):
                qubits = tuple(g[0] if len(g) == 1 else g[k] for g in groups)
                self.instrs.append(Instruction(gate, qubits, tuple(params)))
        except InvalidInstruction as exc:
            raise QasmParseError(str(exc), tok.line, tok.col) from None

    # angle expressions: + - * / ^, unary minus, parentheses, pi, numbers
    def expr(self) -> float:
        value = self.term()
        while self.peek().text in ("+", "-"):
            op = self.next().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> float:
        value = self.power()
        while self.peek().text in ("*", "/"):
            op = self.next().text
            rhs = self.power()
            if op == "/" and rhs == 0:
                raise self.error("division by zero", self.toks[self.i - 1])
            value = value * rhs if op == "*" else value / rhs
        return value

    def power(self) -> float:
        base = self.unary()
        if self.peek().text == "^":
            self.next()
            return base ** self.power()
        return base

    def unary(self) -> float:
        tok = self.peek()
        if tok.text == "-":
            self.next()
            return -self.unary()
        if tok.text == "+":
            self.next()
            return self.unary()
        if tok.kind == "num":
            self.next()
            return float(tok.text)
        if tok.text == "pi":
            self.next()
            return math.pi
        if tok.text == "(":
            self.next()
            value = self.expr()
            self.expect(")")
            return value
        raise self.error("expected an angle expression")


def from_qasm(text: str) -> Circuit:
    """Parse OpenQASM 2.0 restricted to a single qreg/creg and the emitted gate set."""
    if not isinstance(text, str):
        raise InvalidArgument("from_qasm expects text")
    return _Parser(text).parse()
