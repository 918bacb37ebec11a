import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from algocircuits.circuit import (Circuit, CircuitBuilder, Gate, Instruction, append, census,
                                  compose, depth, has_mid_circuit_measure, inverse, new_circuit,
                                  remap)
from algocircuits.decompose import basis_gate_count, decompose_to_basis
from algocircuits.errors import InvalidArgument, InvalidInstruction, NotInvertible
from algocircuits.generators import generate
from oracles import equal_up_to_phase, reference_unitary

ONE_Q = [Gate.H, Gate.X, Gate.Y, Gate.Z, Gate.S, Gate.SDG, Gate.T, Gate.TDG,
         Gate.RX, Gate.RY, Gate.RZ, Gate.PHASE, Gate.U3]
TWO_Q = [Gate.CX, Gate.CZ, Gate.CPHASE, Gate.RZZ, Gate.SWAP]


@st.composite
def circuits(draw, max_width=4, max_gates=20, multi=True):
    n = draw(st.integers(1, max_width))
    b = CircuitBuilder(n)
    angle = st.floats(-2 * math.pi, 2 * math.pi, allow_nan=False)
    for _ in range(draw(st.integers(0, max_gates))):
        kinds = list(ONE_Q)
        if n >= 2:
            kinds += TWO_Q
        if n >= 3 and multi:
            kinds += [Gate.MCX, Gate.MCPHASE]
        g = draw(st.sampled_from(kinds))
        arity = g.num_qubits or draw(st.integers(3, n))
        qs = draw(st.permutations(range(n)))[:arity]
        params = [draw(angle) for _ in range(g.num_params)]
        b.add(g, qs, params)
    return b.build()


def test_new_circuit():
    c = new_circuit(3, 2)
    assert (c.num_qubits, c.num_clbits, len(c)) == (3, 2, 0)
    assert new_circuit(46, 46).num_qubits == 46
    with pytest.raises(InvalidArgument):
        new_circuit(0)


def test_append_validation():
    c = append(new_circuit(1), Instruction(Gate.H, (0,)))
    assert len(c) == 1
    with pytest.raises(InvalidInstruction):
        Instruction(Gate.CX, (2, 2))
    with pytest.raises(InvalidInstruction):
        append(new_circuit(1, 1), Instruction(Gate.MEASURE, (0,), (), (5,)))
    with pytest.raises(InvalidInstruction):
        append(new_circuit(2), Instruction(Gate.H, (3,)))
    with pytest.raises(InvalidInstruction):
        Instruction(Gate.RX, (0,), ())
    with pytest.raises(InvalidInstruction):
        Instruction(Gate.RX, (0,), (float("nan"),))
    with pytest.raises(InvalidInstruction):
        Instruction(Gate.H, (0,), (), (0,))
    with pytest.raises(InvalidInstruction):
        Instruction(Gate.MCX, (0,))


def test_depth_examples():
    assert depth(new_circuit(2)) == 0
    b = CircuitBuilder(1)
    b.h(0).h(0).h(0)
    assert depth(b.build()) == 3
    b = CircuitBuilder(1)
    b.h(0)
    c = b.build()
    assert depth(compose(c, c)) == 2


def test_barrier_synchronizes_without_a_layer():
    b = CircuitBuilder(2)
    b.h(0).h(0).barrier().h(1)
    assert depth(b.build()) == 3
    b = CircuitBuilder(2)
    b.h(0).h(0).h(1)
    assert depth(b.build()) == 2


def test_measure_adds_a_layer_and_clbit_chain():
    b = CircuitBuilder(2, 1)
    b.h(0).measure(0, 0).measure(1, 0)
    assert depth(b.build()) == 3


def test_dj_constant_depth_is_five_at_every_size():
    for n in (2, 3, 10, 45):
        assert census(generate("dj", problem_size=n).circuit).depth == 5


def test_census_of_empty_circuit():
    c = census(new_circuit(2))
    assert (c.width, c.depth, c.single_qubit_gates, c.cnot_gates, c.measure_gates) == (2, 0, 0, 0, 0)
    assert not c.has_mid_circuit_measure


def test_census_closed_forms_at_46():
    vqe = census(generate("vqe", problem_size=46).circuit)
    assert (vqe.cnot_gates, vqe.single_qubit_gates) == (1035, 184)
    vqc = census(generate("vqc", problem_size=46).circuit)
    assert (vqc.cnot_gates, vqc.single_qubit_gates) == (2115, 1219)


def test_mid_circuit_measure_flag():
    b = CircuitBuilder(1, 2)
    b.measure(0, 0).h(0).measure(0, 1)
    assert has_mid_circuit_measure(b.build())
    b = CircuitBuilder(2, 1)
    b.measure(0, 0).barrier().h(1)
    assert not has_mid_circuit_measure(b.build())


def test_rzz_lowering():
    b = CircuitBuilder(2)
    b.rzz(0.3, 0, 1)
    out = decompose_to_basis(b.build()).instructions
    assert [i.gate for i in out] == [Gate.CX, Gate.RZ, Gate.CX]
    assert out[1].qubits == (1,) and out[1].params == (0.3,)


def test_basis_circuit_is_unchanged():
    b = CircuitBuilder(3)
    b.cx(0, 1).cx(1, 2)
    c = b.build()
    assert decompose_to_basis(c) is c


def test_toffoli_matches_dense_matrix():
    b = CircuitBuilder(3)
    b.mcx([0, 1], 2)
    c = b.build()
    tof = np.eye(8)
    tof[[3, 7]] = tof[[7, 3]]
    assert equal_up_to_phase(reference_unitary(decompose_to_basis(c)), tof)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_multi_controlled_lowering_exact(k):
    for gate, params in ((Gate.MCX, ()), (Gate.MCPHASE, (0.731,))):
        if k == 1 and gate is Gate.MCX:
            continue
        c = Circuit(k + 1, 0, (Instruction(gate, tuple(range(k + 1)), params),))
        d = decompose_to_basis(c)
        assert {i.gate for i in d.instructions} <= {Gate.CX, Gate.H, Gate.PHASE, Gate.T, Gate.TDG}
        assert equal_up_to_phase(reference_unitary(d), reference_unitary(c))
        assert basis_gate_count(c) == len(d)


@given(circuits())
def test_decomposition_preserves_unitary(c):
    assert equal_up_to_phase(reference_unitary(decompose_to_basis(c)), reference_unitary(c))


@given(circuits())
def test_census_has_no_wide_gates(c):
    assert census(c).other_multi_qubit_gates == 0
    assert all(len(i.qubits) <= 2 for i in decompose_to_basis(c).instructions)


@given(circuits(), st.sampled_from([Gate.H, Gate.CX, Gate.MEASURE]))
def test_depth_monotone_under_append(c, g):
    if g is Gate.CX and c.num_qubits < 2:
        g = Gate.H
    if g is Gate.MEASURE:
        c = Circuit(c.num_qubits, 1, c.instructions)
        instr = Instruction(g, (0,), (), (0,))
    else:
        instr = Instruction(g, (0, 1) if g is Gate.CX else (0,))
    assert depth(append(c, instr)) - depth(c) in (0, 1)


@given(circuits())
def test_inverse_is_involution(c):
    assert inverse(inverse(c)).instructions == c.instructions


def test_inverse_adjoint_rules():
    b = CircuitBuilder(1)
    b.h(0).add(Gate.S, (0,))
    assert [i.gate for i in inverse(b.build()).instructions] == [Gate.SDG, Gate.H]
    b = CircuitBuilder(1, 1)
    b.measure(0, 0)
    with pytest.raises(NotInvertible):
        inverse(b.build())


def test_compose_with_inverse_is_identity():
    rng = np.random.default_rng(5)
    for _ in range(3):
        b = CircuitBuilder(3)
        for _ in range(12):
            q = rng.permutation(3)
            b.u3(*rng.uniform(0, 6, 3), int(q[0]))
            b.cx(int(q[0]), int(q[1]))
        c = b.build()
        u = reference_unitary(compose(c, inverse(c)))
        assert np.allclose(u, np.eye(8), atol=1e-9)


def test_compose_identity_and_width_check():
    b = CircuitBuilder(2)
    b.h(0).cx(0, 1)
    c = b.build()
    assert compose(c, new_circuit(2)).instructions == c.instructions
    assert compose(new_circuit(2), c).instructions == c.instructions
    with pytest.raises(InvalidArgument):
        compose(c, new_circuit(3))


def test_remap_relabels_operands():
    b = CircuitBuilder(2)
    b.cx(0, 1)
    out = remap(b.build(), [3, 1], 4)
    assert out.instructions[0].qubits == (3, 1) and out.num_qubits == 4
