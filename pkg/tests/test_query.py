import numpy as np
import pytest

from algocircuits.circuit import census
from algocircuits.errors import InvalidArgument
from algocircuits.generators import QueryParams, gen_bernstein_vazirani, gen_deutsch_jozsa, gen_simon
from algocircuits.simulator import outcome_distribution, sample_counts
from oracles import dot2, simon_candidates


@pytest.mark.parametrize("n", range(2, 13))
def test_dj_constant_and_balanced(n):
    const = gen_deutsch_jozsa(QueryParams(n, seed=n))
    assert abs(outcome_distribution(const.circuit).get("0" * n, 0) - 1) <= 1e-9
    bal = gen_deutsch_jozsa(QueryParams(n, dj_oracle_type="balanced", seed=n))
    assert outcome_distribution(bal.circuit).get("0" * n, 0) <= 1e-9


def test_dj_shape():
    r = gen_deutsch_jozsa(QueryParams(2))
    c = census(r.circuit)
    assert (c.width, c.depth, c.measure_gates, c.cnot_gates) == (3, 5, 2, 0)
    assert census(gen_deutsch_jozsa(QueryParams(45)).circuit).single_qubit_gates <= 93
    zero = gen_deutsch_jozsa(QueryParams(4, dj_constant_value=0))
    assert zero.metadata.data["constant_value"] == 0
    assert outcome_distribution(zero.circuit) == pytest.approx({"0000": 1.0})
    with pytest.raises(InvalidArgument):
        gen_deutsch_jozsa(QueryParams(1))


def test_dj_random_constant_value_is_seeded():
    vals = {gen_deutsch_jozsa(QueryParams(3, dj_constant_value=None, seed=s)).metadata.data["constant_value"]
            for s in range(20)}
    assert vals == {0, 1}


def test_bv_examples():
    r = gen_bernstein_vazirani(QueryParams(3, "101"))
    assert census(r.circuit).cnot_gates == 2
    assert outcome_distribution(r.circuit) == pytest.approx({"101": 1.0})
    r = gen_bernstein_vazirani(QueryParams(2, "00"))
    assert census(r.circuit).cnot_gates == 0
    assert outcome_distribution(r.circuit) == pytest.approx({"00": 1.0})
    assert [census(gen_bernstein_vazirani(QueryParams(n)).circuit).width for n in (2, 45)] == [3, 46]
    with pytest.raises(InvalidArgument):
        gen_bernstein_vazirani(QueryParams(3, "10"))
    with pytest.raises(InvalidArgument):
        gen_bernstein_vazirani(QueryParams(3, "1a1"))


def test_bv_random_secrets():
    rng = np.random.default_rng(0)
    for _ in range(50):
        n = int(rng.integers(2, 13))
        r = gen_bernstein_vazirani(QueryParams(n, seed=int(rng.integers(1 << 30))))
        s = r.metadata.data["secret"]
        assert len(s) == n
        assert abs(outcome_distribution(r.circuit)[s] - 1) <= 1e-9


def test_simon_examples():
    r = gen_simon(QueryParams(2, "11"))
    assert census(r.circuit).width == 4
    assert census(gen_simon(QueryParams(2, "01")).circuit).measure_gates == 2
    r = gen_simon(QueryParams(3, "110"))
    hist = sample_counts(r.circuit, 1024, seed=0)
    assert all(dot2(y, "110") == 0 for y in hist.counts)


@pytest.mark.parametrize("n", range(2, 7))
def test_simon_reachable_set_is_orthogonal_complement(n):
    r = gen_simon(QueryParams(n, seed=100 + n))
    s = r.metadata.data["secret"]
    assert "1" in s
    dist = outcome_distribution(r.circuit)
    support = [y for y, p in dist.items() if p > 1e-12]
    assert all(dot2(y, s) == 0 for y in support)
    assert len(support) == 2 ** (n - 1)
    assert simon_candidates(support, n) == [s]


def test_simon_zero_secret_only_when_explicit():
    r = gen_simon(QueryParams(3, "000"))
    assert len([p for p in outcome_distribution(r.circuit).values() if p > 1e-12]) == 8
    assert all("1" in gen_simon(QueryParams(2, seed=s)).metadata.data["secret"] for s in range(30))


def test_determinism():
    for gen in (gen_deutsch_jozsa, gen_bernstein_vazirani, gen_simon):
        a, b = gen(QueryParams(6, seed=3)), gen(QueryParams(6, seed=3))
        assert a.circuit.instructions == b.circuit.instructions
        assert a.metadata == b.metadata
