import math

import numpy as np
import pytest
from hypothesis import given, settings

from algocircuits.circuit import CircuitBuilder, Gate
from algocircuits.decompose import decompose_to_basis
from algocircuits.errors import QasmParseError, UnsupportedFeature
from algocircuits.generators import ALGORITHMS, generate
from algocircuits.qasm import from_qasm, load_qasm, save_qasm, to_qasm
from algocircuits.simulator import run_statevector
from test_circuit import circuits

SMALL = {"shor": {"N": 15, "a": 7}, "walk": {"problem_size": 2, "theta_qubits": 2},
         "counting": {"problem_size": 2, "searching_qubits": 2},
         "teleport": {"problem_size": 2}, "superdense": {"problem_size": 4}}

HEAD = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'


@pytest.mark.parametrize("alg", list(ALGORITHMS))
def test_roundtrip_every_generator(alg):
    kwargs = SMALL.get(alg, {"problem_size": 3})
    circuit = generate(alg, seed=5, **kwargs).circuit
    parsed = from_qasm(to_qasm(circuit))
    assert parsed.instructions == decompose_to_basis(circuit).instructions
    assert (parsed.num_qubits, parsed.num_clbits) == (circuit.num_qubits, circuit.num_clbits)


@settings(max_examples=40)
@given(circuits(max_width=4, max_gates=15))
def test_roundtrip_native_preserves_unitary(c):
    parsed = from_qasm(to_qasm(c, decompose=False))
    a = run_statevector(c).amplitudes
    b = run_statevector(parsed).amplitudes
    assert np.allclose(a, b, atol=1e-9)


def test_text_is_stable_and_compat():
    b = CircuitBuilder(2, 2)
    b.h(0).cp(math.pi / 3, 0, 1).p(0.25, 1).measure(0, 0)
    text = to_qasm(b.build(), decompose=False, compat=True)
    assert "cu1(" in text and "u1(0.25)" in text
    assert text.startswith(HEAD + "qreg q[2];\ncreg c[2];\n")
    assert to_qasm(b.build()) == to_qasm(b.build())
    assert "creg" not in to_qasm(CircuitBuilder(1).h(0).build())


def test_file_helpers(tmp_path):
    c = generate("bv", problem_size=4, oracle_content="1011").circuit
    path = tmp_path / "bv.qasm"
    save_qasm(c, path)
    assert load_qasm(path).instructions == decompose_to_basis(c).instructions


def test_broadcast_and_expressions():
    text = HEAD + "qreg q[3];\ncreg c[3];\nh q;\nrz(-pi/2 + 2^2*0.25) q[1];\ncx q[0], q;\n" \
        "barrier q;\nmeasure q -> c;\n"
    with pytest.raises(QasmParseError):
        from_qasm(text)  # cx q[0], q hits cx q[0], q[0]
    text = text.replace("cx q[0], q;", "cx q[0], q[2];")
    c = from_qasm(text)
    gates = [i.gate for i in c.instructions]
    assert gates.count(Gate.H) == 3 and gates.count(Gate.MEASURE) == 3
    rz = next(i for i in c.instructions if i.gate is Gate.RZ)
    assert rz.params[0] == pytest.approx(-math.pi / 2 + 1)


def test_aliases():
    c = from_qasm(HEAD + "qreg q[3];\nu1(0.5) q[0];\ncu1(0.5) q[0],q[1];\nU(1,2,3) q[2];\n"
                  "CX q[0],q[1];\nccx q[0],q[1],q[2];\n")
    assert [i.gate for i in c.instructions] == [Gate.PHASE, Gate.CPHASE, Gate.U3, Gate.CX, Gate.MCX]


@pytest.mark.parametrize("body,exc,line", [
    ("qreg q[2];\nif(c==1) x q[0];\n", UnsupportedFeature, 4),
    ("qreg q[2];\ngate foo a { x a; }\n", UnsupportedFeature, 4),
    ("qreg q[2];\nreset q[0];\n", UnsupportedFeature, 4),
    ("qreg q[2];\nfoo q[0];\n", UnsupportedFeature, 4),
    ("qreg q[2];\nqreg r[2];\n", UnsupportedFeature, 4),
    ("qreg q[2];\nh q[5];\n", QasmParseError, 4),
    ("qreg q[2];\nh q[0]\nx q[1];\n", QasmParseError, 5),
    ("qreg q[2];\nrz(1/0) q[0];\n", QasmParseError, 4),
    ("qreg q[2];\nh r[0];\n", QasmParseError, 4),
    ("qreg q[2];\nh q[0]; $\n", QasmParseError, 4),
])
def test_errors_carry_position(body, exc, line):
    with pytest.raises(exc) as info:
        from_qasm(HEAD + body)
    assert info.value.line == line
    assert info.value.column >= 1


def test_header_checks():
    with pytest.raises(UnsupportedFeature):
        from_qasm("OPENQASM 3.0;\nqreg q[1];\n")
    with pytest.raises(QasmParseError):
        from_qasm("qreg q[1];\n")
    with pytest.raises(QasmParseError):
        from_qasm(HEAD)
