import math

import numpy as np
import pytest

from algocircuits.circuit import CircuitBuilder, census, depth
from algocircuits.decompose import decompose_to_basis
from algocircuits.errors import InvalidArgument
from algocircuits.generators import (QftParams, QpeParams, ShorParams, build_c_modmul,
                                     build_qft_const_adder, gen_qft, gen_qpe, gen_shor)
from algocircuits.generators.common import iqft_instructions, qft_instructions
from algocircuits.simulator import outcome_distribution, run_statevector
from oracles import bits, order, reference_unitary


def test_qft_matches_dft_matrix():
    for n in (1, 2, 3, 4):
        b = CircuitBuilder(n)
        b.extend(qft_instructions(list(range(n))))
        dim = 2 ** n
        w = np.exp(2j * np.pi / dim)
        dft = np.array([[w ** (j * k) for k in range(dim)] for j in range(dim)]) / math.sqrt(dim)
        assert np.allclose(reference_unitary(b.build()), dft, atol=1e-12)


def test_qft_table_row():
    c = census(gen_qft(QftParams(2, 1)).circuit)
    assert (c.depth, c.single_qubit_gates, c.cnot_gates, c.measure_gates) == (13, 9, 5, 2)


@pytest.mark.parametrize("n", range(2, 13))
def test_qft_roundtrip(n):
    rng = np.random.default_rng(n)
    count = 20 if n <= 8 else 3
    for x in rng.integers(0, 2 ** n, count):
        dist = outcome_distribution(gen_qft(QftParams(n, int(x))).circuit)
        assert abs(dist[bits(int(x), n)] - 1) <= 1e-9


def test_qft_examples_and_errors():
    assert abs(outcome_distribution(gen_qft(QftParams(8, 177)).circuit)[bits(177, 8)] - 1) < 1e-9
    assert abs(outcome_distribution(gen_qft(QftParams(3, 0)).circuit)["000"] - 1) < 1e-9
    with pytest.raises(InvalidArgument):
        gen_qft(QftParams(3, 8))
    forward = gen_qft(QftParams(3, 0, inverse=False, measure=False, initialize=False)).circuit
    assert forward.num_clbits == 0
    assert gen_qft(QftParams(4, seed=2)).metadata.data["init_value"] < 16


def test_qpe_examples():
    r = gen_qpe(QpeParams(3, 1 / 8))
    assert outcome_distribution(r.circuit) == pytest.approx({"001": 1.0})
    assert outcome_distribution(gen_qpe(QpeParams(4, 0.0)).circuit) == pytest.approx({"0000": 1.0})
    assert r.circuit.num_qubits == 4 and r.circuit.num_clbits == 3
    with pytest.raises(InvalidArgument):
        gen_qpe(QpeParams(3, 1.0))
    c = census(gen_qpe(QpeParams(2)).circuit)
    assert (c.cnot_gates, c.single_qubit_gates) == (11, 17)


@pytest.mark.parametrize("t", range(2, 9))
def test_qpe_exact_phases(t):
    rng = np.random.default_rng(t)
    for j in rng.integers(0, 2 ** t, 3):
        r = gen_qpe(QpeParams(t, int(j) / 2 ** t, controlled_power_mode="fused"))
        assert abs(outcome_distribution(r.circuit)[bits(int(j), t)] - 1) <= 1e-9


def test_qpe_inexact_phase_accuracy():
    t = 8
    dist = outcome_distribution(gen_qpe(QpeParams(t, 1 / 3)).circuit)
    best = max(dist, key=dist.get)
    assert abs(int(best, 2) / 2 ** t - 1 / 3) <= 2 ** -t


def test_qpe_modes_agree_but_depths_differ():
    for theta in (1 / 3, 0.6875, 0.1):
        rep = gen_qpe(QpeParams(5, theta)).circuit
        fus = gen_qpe(QpeParams(5, theta, controlled_power_mode="fused")).circuit
        a, b = outcome_distribution(rep), outcome_distribution(fus)
        assert all(abs(a.get(k, 0) - b.get(k, 0)) <= 1e-9 for k in set(a) | set(b))
        assert depth(rep) > depth(fus)


def test_qpe_depth_doubles():
    depths = {t: depth(decompose_to_basis(gen_qpe(QpeParams(t)).circuit)) for t in range(6, 12)}
    for t in range(6, 11):
        assert 1.8 <= depths[t + 1] / depths[t] <= 2.2


def _prepare(width, values):
    b = CircuitBuilder(width)
    for offset, value, size in values:
        for i in range(size):
            if (value >> i) & 1:
                b.x(offset + i)
    return b


def test_const_adder_all_inputs():
    for y in range(16):
        b = _prepare(4, [(0, y, 4)])
        b.extend(qft_instructions(list(range(4))))
        b.extend(build_qft_const_adder(3, 4).instructions)
        b.extend(iqft_instructions(list(range(4))))
        probs = run_statevector(b.build()).probabilities()
        assert abs(probs[(y + 3) % 16] - 1) <= 1e-9


def test_const_adder_identities():
    assert len(build_qft_const_adder(0, 4)) == 0
    assert build_qft_const_adder(16, 4).instructions == build_qft_const_adder(0, 4).instructions


@pytest.mark.parametrize("N,a", [(15, 7), (15, 4), (15, 1), (21, 2), (21, 5)])
def test_modmul_permutation(N, a):
    n = N.bit_length()
    block = build_c_modmul(a, N, n)
    assert block.num_qubits == 2 * n + 3
    for ctrl in (0, 1):
        for y in range(N):
            b = _prepare(2 * n + 3, [(0, ctrl, 1), (1, y, n)])
            b.extend(block.instructions)
            probs = run_statevector(b.build()).probabilities()
            expected = a * y % N if ctrl else y
            assert abs(probs[ctrl | (expected << 1)] - 1) <= 1e-9


def test_modmul_rejects_non_coprime():
    with pytest.raises(InvalidArgument):
        build_c_modmul(5, 15, 4)


def test_shor_fifteen():
    r = gen_shor(ShorParams(15, 7))
    c = r.circuit
    assert (c.num_qubits, census(c).measure_gates) == (18, 8)
    dist = outcome_distribution(c)
    for x in (0, 64, 128, 192):
        assert abs(dist[bits(x, 8)] - 0.25) <= 1e-6
    assert r.metadata.data["period"] == order(7, 15) == 4


def test_shor_screening():
    r = gen_shor(ShorParams(9))
    assert r.circuit is None
    assert r.metadata.data["status"] == "classical-shortcut" and r.metadata.data["factors"] == [3]
    assert gen_shor(ShorParams(14)).metadata.data["factors"] == [2, 7]
    assert gen_shor(ShorParams(13)).metadata.data["status"] == "classical-shortcut"
    lucky = gen_shor(ShorParams(15, 6))
    assert lucky.circuit is None and lucky.metadata.data["status"] == "lucky-gcd"
    assert lucky.metadata.data["factors"] == [3, 5]
    with pytest.raises(InvalidArgument):
        gen_shor(ShorParams(15, 20))


def test_shor_random_base_is_coprime():
    for seed in range(10):
        a = gen_shor(ShorParams(21, seed=seed)).metadata.data["a"]
        assert 1 < a < 21 and math.gcd(a, 21) == 1
