"""Reversible gate model, statevector simulation, and exact gate accounting.

The gate set is classical-reversible (X, CNOT, Toffoli, the n-wire Toffoli
family, Swap), so circuits permute computational basis states; the statevector
simulator applies each gate as a vectorized index permutation, and basis
states can also be tracked directly as integers without a statevector.  The
Hadamard layer and the phase oracle of the Grover search live at simulator
level only and never appear in cost-counted circuits.

Cost model: X and CNOT cost one CNOT-equivalent, the n-wire Toffoli costs 2n
(so the plain Toffoli costs 6), and Swap costs 3 via its three-CNOT
decomposition.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
import numpy as np

STATEVECTOR_CAP = 24

NORM_DRIFT_TOL = 1e-12

_CANONICAL_KIND = {1: "x", 2: "cnot", 3: "toffoli"}


@dataclass(frozen=True)
class Gate:
    """kind in {x, cnot, toffoli, ntoffoli, swap}; the last wire is the target."""

    kind: str
    wires: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.wires)) != len(self.wires):
            raise ValueError(f"gate wires must be distinct: {self.wires}")
        arity = len(self.wires)
        expected = {"x": 1, "cnot": 2, "toffoli": 3, "swap": 2}
        if self.kind in expected and arity != expected[self.kind]:
            raise ValueError(f"{self.kind} takes {expected[self.kind]} wires, got {arity}")
        if self.kind == "ntoffoli" and arity < 4:
            raise ValueError("ntoffoli is canonicalized to x/cnot/toffoli below arity 4")

    @property
    def arity(self) -> int:
        return len(self.wires)

    @property
    def cnot_equivalent(self) -> int:
        if self.kind in ("x", "cnot"):
            return 1
        if self.kind == "swap":
            return 3
        return 2 * self.arity          # toffoli: 6; ntoffoli(n): 2n


def x_gate(wire: int) -> Gate:
    return Gate("x", (wire,))


def cnot(control: int, target: int) -> Gate:
    return Gate("cnot", (control, target))


def toffoli(c1: int, c2: int, target: int) -> Gate:
    return Gate("toffoli", (c1, c2, target))


def ntoffoli(*wires: int) -> Gate:
    """n-wire Toffoli; arities 1..3 canonicalize to X, CNOT, Toffoli."""
    if len(wires) < 1:
        raise ValueError("ntoffoli needs at least one wire")
    kind = _CANONICAL_KIND.get(len(wires), "ntoffoli")
    return Gate(kind, tuple(wires))


def swap(a: int, b: int) -> Gate:
    return Gate("swap", (a, b))


@dataclass(frozen=True)
class Circuit:
    wire_count: int
    gates: tuple[Gate, ...]

    def __post_init__(self):
        for g in self.gates:
            if max(g.wires) >= self.wire_count:
                raise ValueError(f"gate {g} exceeds wire count {self.wire_count}")

    def __len__(self) -> int:
        return len(self.gates)

    def reversed(self) -> "Circuit":
        """Every gate in the set is an involution, so this inverts the circuit."""
        return Circuit(self.wire_count, tuple(reversed(self.gates)))


@dataclass
class StateVector:
    k: int
    amplitudes: np.ndarray

    @classmethod
    def basis(cls, k: int, index: int = 0) -> "StateVector":
        amp = np.zeros(1 << k, dtype=np.complex128)
        amp[index] = 1.0
        return cls(k, amp)

    @classmethod
    def uniform(cls, k: int) -> "StateVector":
        amp = np.full(1 << k, 1.0 / math.sqrt(1 << k), dtype=np.complex128)
        return cls(k, amp)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2)))


def _gate_permutation(gate: Gate, idx: np.ndarray) -> np.ndarray:
    if gate.kind == "x":
        return idx ^ (1 << gate.wires[0])
    if gate.kind == "cnot":
        c, t = gate.wires
        return idx ^ (((idx >> c) & 1) << t)
    if gate.kind == "toffoli":
        c1, c2, t = gate.wires
        ctrl = ((idx >> c1) & 1) & ((idx >> c2) & 1)
        return idx ^ (ctrl << t)
    if gate.kind == "ntoffoli":
        *controls, t = gate.wires
        ctrl = np.ones_like(idx)
        for c in controls:
            ctrl &= (idx >> c) & 1
        return idx ^ (ctrl << t)
    if gate.kind == "swap":
        a, b = gate.wires
        differ = ((idx >> a) & 1) ^ ((idx >> b) & 1)
        return idx ^ ((differ << a) | (differ << b))
    raise ValueError(f"unknown gate kind {gate.kind}")


def apply(circuit: Circuit, state: StateVector) -> StateVector:
    """Unitary action of the circuit; permutation gates keep basis support."""
    if circuit.wire_count != state.k:
        raise ValueError(f"circuit has {circuit.wire_count} wires, state has {state.k} qubits")
    if state.k > STATEVECTOR_CAP:
        raise ValueError(f"statevector cap is {STATEVECTOR_CAP} qubits")
    idx = np.arange(1 << state.k)
    amp = state.amplitudes
    for gate in circuit.gates:
        perm = _gate_permutation(gate, idx)
        amp = amp[perm]                 # involutive permutations: preimage equals image
        drift = abs(float(np.sum(np.abs(amp) ** 2)) - 1.0)
        if drift > NORM_DRIFT_TOL:
            raise AssertionError(f"norm drifted by {drift} after {gate}")
    return StateVector(state.k, amp)


def apply_to_basis(circuit: Circuit, bits: int) -> int:
    """Track one basis state through the circuit as an integer; no statevector needed."""
    for gate in circuit.gates:
        if gate.kind == "x":
            bits ^= 1 << gate.wires[0]
        elif gate.kind == "cnot":
            c, t = gate.wires
            bits ^= ((bits >> c) & 1) << t
        elif gate.kind == "toffoli":
            c1, c2, t = gate.wires
            bits ^= (((bits >> c1) & 1) & ((bits >> c2) & 1)) << t
        elif gate.kind == "ntoffoli":
            *controls, t = gate.wires
            ctrl = 1
            for c in controls:
                ctrl &= (bits >> c) & 1
            bits ^= ctrl << t
        elif gate.kind == "swap":
            a, b = gate.wires
            differ = ((bits >> a) & 1) ^ ((bits >> b) & 1)
            bits ^= (differ << a) | (differ << b)
    return bits


# ---------------------------------------------------------------------------
# circuit builders
# ---------------------------------------------------------------------------

def build_equality_circuit() -> Circuit:
    """|b>|b~>|0> -> |b>|b~>|b xor b~ xor 1>: two CNOTs onto the target, then X.

    The destructive one-CNOT-one-X variant consumes an operand; this keeps
    both inputs, at the price of one extra CNOT.
    """
    return Circuit(3, (cnot(0, 2), cnot(1, 2), x_gate(2)))


def build_inner_product_circuit(n: int) -> Circuit:
    """|a>|b>|0> -> |a>|b>|a.b> with exactly n Toffolis; self-inverse."""
    if n < 1:
        raise ValueError("n >= 1")
    gates = tuple(toffoli(i, n + i, 2 * n) for i in range(n))
    return Circuit(2 * n + 1, gates)


def build_matvec_circuit(n: int) -> Circuit:
    """A (n^2 wires, row-major), x (n wires), out (n clean ancillae): exactly n^2 Toffolis."""
    if n < 1:
        raise ValueError("n >= 1")
    a_base, x_base, out_base = 0, n * n, n * n + n
    gates = []
    for i in range(n):
        for j in range(n):
            gates.append(toffoli(a_base + i * n + j, x_base + j, out_base + i))
    return Circuit(n * n + 2 * n, tuple(gates))


def build_matmul_circuit(n: int) -> Circuit:
    """A, B (n^2 wires each, row-major), out C (n^2 clean ancillae): exactly n^3 Toffolis."""
    if n < 1:
        raise ValueError("n >= 1")
    a_base, b_base, c_base = 0, n * n, 2 * n * n
    gates = []
    for i in range(n):
        for j in range(n):
            for l in range(n):
                gates.append(toffoli(a_base + i * n + l, b_base + l * n + j, c_base + i * n + j))
    return Circuit(3 * n * n, tuple(gates))


# ---------------------------------------------------------------------------
# gate cost accounting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GateCost:
    counts: dict
    cnot_equivalent: int

    @property
    def total_gates(self) -> int:
        return sum(self.counts.values())


def _kind_key(gate: Gate) -> str:
    if gate.kind == "ntoffoli":
        return f"ntoffoli({gate.arity})"
    return gate.kind


def gate_cost(circuit: Circuit) -> GateCost:
    counts: Counter = Counter(_kind_key(g) for g in circuit.gates)
    weight = sum(g.cnot_equivalent for g in circuit.gates)
    return GateCost(dict(sorted(counts.items())), weight)


_NTOFFOLI_RE_COST = {"x": 1, "cnot": 1, "toffoli": 6, "swap": 3}


def _counts_cnot_equivalent(counts: dict) -> int:
    total = 0
    for kind, c in counts.items():
        if kind in _NTOFFOLI_RE_COST:
            total += _NTOFFOLI_RE_COST[kind] * c
        else:
            arity = int(kind.split("(")[1].rstrip(")"))
            total += 2 * arity * c
    return total


@dataclass(frozen=True)
class QrsGateCount:
    """Gate counts of the reversible random-solution circuit, step by step.

    step4 forms the shifted right-hand side b' = b + Aw (rn Toffolis for the
    products, r CNOTs for the additions); step6 accumulates
    x = f0^{-1} sum f_i A^{i-1} b' (n matrix-vector products of n^2 Toffolis
    each, one Toffoli per term for the coefficient ratio and one for the sum,
    plus a final NOT); step7 tests Ax = b (n^2 Toffolis, n CNOTs, one
    (n+1)-wire Toffoli onto the result wire).

    The headline closed form n^3 + 2n^2 + 3n + 1 corresponds to the step sum
    at the extreme r = n with step4's CNOT additions and step6's final NOT
    left out; for general r the literal step sum exceeds it by exactly
    (r - n + 1)(n + 1).  Both totals and their offset are reported rather
    than reconciled away.
    """

    n: int
    r: int
    step4: dict
    step6: dict
    step7: dict

    @property
    def totals(self) -> dict:
        out: Counter = Counter()
        for step in (self.step4, self.step6, self.step7):
            out.update(step)
        return dict(sorted(out.items()))

    @property
    def total_gates(self) -> int:
        return sum(self.totals.values())

    @property
    def cnot_equivalent(self) -> int:
        return _counts_cnot_equivalent(self.totals)

    @property
    def closed_form_total(self) -> int:
        n = self.n
        return n ** 3 + 2 * n ** 2 + 3 * n + 1

    @property
    def accounting_offset(self) -> int:
        return self.total_gates - self.closed_form_total

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "steps": {"step4": self.step4, "step6": self.step6, "step7": self.step7},
            "totals": self.totals,
            "total_gates": self.total_gates,
            "cnot_equivalent": self.cnot_equivalent,
            "closed_form_total": self.closed_form_total,
            "accounting_offset": self.accounting_offset,
        }


def qrs_gate_count(n: int, r: int) -> QrsGateCount:
    if n < 1:
        raise ValueError("n >= 1")
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
    step4 = {"toffoli": r * n, "cnot": r}
    step6 = {"toffoli": n ** 3 + 2 * n, "x": 1}
    step7 = {"toffoli": n * n, "cnot": n, f"ntoffoli({n + 1})": 1}
    return QrsGateCount(n, r, step4, step6, step7)


# ---------------------------------------------------------------------------
# Grover search simulation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroverResult:
    k: int
    marked: int
    iterations: int
    iterations_floor_policy: int
    iterations_paper_ceiling: int
    theta: float
    success_probability: float
    probabilities: np.ndarray
    measured: int

    @property
    def bitstring(self) -> str:
        return "".join(str((self.measured >> i) & 1) for i in range(self.k))

    def sample(self, rng: np.random.Generator) -> int:
        return int(rng.choice(len(self.probabilities), p=self.probabilities))


def grover_iteration_counts(k: int, marked: int) -> tuple[int, int, float]:
    """(floor-policy count, paper ceiling count, theta) for M marked out of 2^k."""
    size = 1 << k
    if marked == 0:
        return 0, 0, 0.0
    theta = math.asin(math.sqrt(marked / size))
    floor_policy = max(1, math.floor(math.pi / (4 * theta)))
    paper_ceiling = math.ceil(math.pi / 4 * math.sqrt(size / marked))
    return floor_policy, paper_ceiling, theta


def grover_search_sim(
    oracle,
    k: int,
    iterations: int | None = None,
    rng: np.random.Generator | None = None,
    use_ceiling: bool = False,
) -> GroverResult:
    """Exact Grover simulation over k qubits with a tabulated 0/1 oracle.

    Prepares the uniform superposition, then alternates the phase oracle
    (sign flip on marked states) with the inversion-about-average diffusion
    for t rounds.  The default t = max(1, floor(pi/(4 theta))) lands near the
    amplitude peak; the conventional ceiling formula
    ceil(pi/4 sqrt(2^k / M)) is available via ``use_ceiling`` and both counts
    are reported.  Amplitudes stay real throughout, so the success probability
    (total marked mass) is exact up to float rounding.

    With no marked state the output stays uniform and the success probability
    is 0; callers detect that from ``marked``.
    """
    if k > STATEVECTOR_CAP:
        raise ValueError(f"statevector cap is {STATEVECTOR_CAP} qubits")
    size = 1 << k
    if callable(oracle):
        table = np.array([1 if oracle(i) else 0 for i in range(size)], dtype=np.uint8)
    else:
        table = np.asarray(oracle, dtype=np.uint8)
    if table.shape != (size,):
        raise ValueError(f"oracle table must have length 2^{k}")
    marked_mask = table != 0
    marked = int(marked_mask.sum())
    floor_policy, paper_ceiling, theta = grover_iteration_counts(k, marked)
    if iterations is None:
        t = paper_ceiling if use_ceiling else floor_policy
    else:
        t = iterations
    amp = np.full(size, 1.0 / math.sqrt(size))
    for _ in range(t):
        amp = np.where(marked_mask, -amp, amp)
        amp = 2.0 * amp.mean() - amp
    probs = amp * amp
    probs = probs / probs.sum()
    success = float(probs[marked_mask].sum()) if marked else 0.0
    gen = rng or np.random.default_rng(0)
    measured = int(gen.choice(size, p=probs))
    return GroverResult(
        k=k, marked=marked, iterations=t,
        iterations_floor_policy=floor_policy, iterations_paper_ceiling=paper_ceiling,
        theta=theta, success_probability=success, probabilities=probs, measured=measured,
    )
