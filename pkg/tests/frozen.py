"""Expected values frozen before the implementation was checked against them.

Census endpoints are fixed reference rows; regression values were
computed once from the independent oracles and are pinned here.
"""

# width, measures and gate totals at the extremes of the sweep
SHOR_15 = {"width": 18, "measures": 8, "peaks": (0, 64, 128, 192), "factors": (3, 5)}
WALK_P2_WIDTH = 11
CENSUS_46 = {
    "vqe": {"cnot_gates": 1035, "single_qubit_gates": 184},
    "vqc": {"cnot_gates": 2115, "single_qubit_gates": 1219},
    "qaoa": {"cnot_gates": 92, "single_qubit_gates": 138},
}
DJ_DEPTH = 5
QFT_2 = {"depth": 13, "single_qubit_gates": 9, "cnot_gates": 5}

# counting with t=3, n=4, M=8: the quarter-turn eigenphase read out on 3 bits
COUNTING_X = 2
COUNTING_ESTIMATE = 8.0

# thresholds
STATE_TOL = 1e-9
GROVER_TOL = 1e-6
SIMON_RATE = 0.99
SHOR_PEAK_TOL = 0.02
QKD_MISMATCH = (0.20, 0.30)
QPE_RATIO = (1.8, 2.2)
GROVER_CX_RATIO = 1.5
LINEAR_R2 = 0.99
