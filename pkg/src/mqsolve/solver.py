"""End-to-end solvers for Boolean quadratic systems.

The classical hybrid enumerates assignments of the last k variables, asks the
Macaulay consistency test to refute each specialized system, and exhaustively
searches the n-k remaining variables only for the branches the test could not
refute.  Refutation is one-sided: a certificate proves the branch empty, while
its absence proves nothing, so unrefuted branches are always searched and the
returned solution set is exact regardless of how sharp the test was.

The quantum variant is simulated at desk scale: the branch predicate is
tabulated classically (one Macaulay test per branch) and used as a Grover
phase oracle over the k specialization bits; a second Grover pass over the
n-k residual bits finds the rest of a root.  Measurements are verified by
evaluation and retried on failure.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .anf import (
    Assignment,
    PolynomialSystem,
    assignment_from_mask,
    assignment_to_string,
    brute_force_solve,
    evaluate_system,
    iter_assignments,
    specialize,
)
from .macaulay import build_macaulay, consistency_certificate, witness_degree

STATEVECTOR_STAGE_CAP = 20
QUANTUM_RETRY_BUDGET = 8


@dataclass(frozen=True)
class SolveConfig:
    k: int | None = None
    k_policy: str = "explicit"            # explicit | gamma-optimal
    variant: str = "deterministic"        # deterministic | las-vegas
    backend: str = "dense"                # dense | sparse
    jobs: int = 1

    def __post_init__(self):
        if self.k_policy not in ("explicit", "gamma-optimal"):
            raise ValueError(f"unknown k policy {self.k_policy!r}")
        if self.variant not in ("deterministic", "las-vegas"):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.backend not in ("dense", "sparse"):
            raise ValueError(f"unknown backend {self.backend!r}")
        if self.k_policy == "explicit" and self.k is None:
            raise ValueError("explicit k policy requires k")


def resolve_k(config: SolveConfig, n: int, m: int, setting: str = "classical") -> int:
    """k = round((1 - gamma*) n) under the gamma-optimal policy."""
    if config.k_policy == "explicit":
        k = config.k
        if not 0 <= k <= n:
            raise ValueError(f"k={k} out of range 0..{n}")
        return k
    from .estimator import ComplexityProfile, minimize_exponent
    theta = 2.0 if config.variant == "las-vegas" else 2.376
    profile = ComplexityProfile(alpha=m / n, theta=theta, variant=config.variant, setting=setting)
    gamma_star = minimize_exponent(profile).gamma_star
    return min(n, max(0, round((1.0 - gamma_star) * n)))


def _branch_rng(seed: int, branch: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(branch,))))


def f_cons(
    system: PolynomialSystem,
    k: int,
    a2: Assignment,
    d0: int,
    backend: str = "dense",
    rng: np.random.Generator | None = None,
    check_both: bool = False,
) -> int:
    """Branch predicate: 1 unless the Macaulay test refutes the specialization.

    0 proves the specialized system has no root; 1 only means the test at
    degree d0 failed to refute it, not that a root exists.
    """
    specialized = specialize(system, k, a2)
    mac = build_macaulay(specialized, d0)
    cert = consistency_certificate(mac, backend=backend, rng=rng, check_both=check_both)
    return 0 if cert is not None else 1


@dataclass(frozen=True)
class SolveReport:
    n: int
    m: int
    k: int
    variant: str
    backend: str
    seed: int
    witness_deg: int
    solutions: tuple[Assignment, ...]
    macaulay_tests: int
    certificates_found: int
    searches_run: int
    wall_time: float

    def __post_init__(self):
        assert self.searches_run == self.macaulay_tests - self.certificates_found

    def to_json_dict(self, include_timing: bool = False) -> dict:
        out = {
            "command": "solve",
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "variant": self.variant,
            "backend": self.backend,
            "seed": self.seed,
            "witness_degree": self.witness_deg,
            "solutions": [assignment_to_string(a) for a in self.solutions],
            "macaulay_tests": self.macaulay_tests,
            "certificates_found": self.certificates_found,
            "searches_run": self.searches_run,
        }
        if include_timing:
            out["wall_time_s"] = self.wall_time
        return out


def _solve_branch(args) -> tuple[int, bool, list[Assignment]]:
    """One specialization branch; module-level so worker processes can run it."""
    system, k, branch, d0, backend, seed = args
    a2 = assignment_from_mask(branch, k)
    rng = _branch_rng(seed, branch) if backend == "sparse" else None
    if f_cons(system, k, a2, d0, backend=backend, rng=rng) == 0:
        return branch, True, []
    residual = specialize(system, k, a2)
    roots = [a1 + a2 for a1 in brute_force_solve(residual)]
    return branch, False, roots


def classical_boolean_solve(
    system: PolynomialSystem,
    config: SolveConfig,
    seed: int = 0,
) -> SolveReport:
    """Exact solution set of an (over)determined quadratic system, m >= n.

    Branches are independent; with jobs > 1 they run in worker processes with
    per-branch rng streams, and results are reduced in branch order so the
    report does not depend on the worker count.
    """
    if system.m < system.n:
        raise ValueError(f"hybrid solver needs m >= n, got m={system.m}, n={system.n}")
    t0 = time.perf_counter()
    k = resolve_k(config, system.n, system.m, setting="classical")
    d0 = witness_degree(system.m, system.n, k)
    tasks = [(system, k, branch, d0, config.backend, seed) for branch in range(1 << k)]
    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_solve_branch, tasks, chunksize=max(1, len(tasks) // (4 * config.jobs))))
    else:
        results = [_solve_branch(t) for t in tasks]
    results.sort(key=lambda r: r[0])
    solutions: list[Assignment] = []
    certificates = 0
    for _, refuted, roots in results:
        if refuted:
            certificates += 1
        else:
            solutions.extend(roots)
    solutions.sort()
    return SolveReport(
        n=system.n,
        m=system.m,
        k=k,
        variant=config.variant,
        backend=config.backend,
        seed=seed,
        witness_deg=d0,
        solutions=tuple(solutions),
        macaulay_tests=len(tasks),
        certificates_found=certificates,
        searches_run=len(tasks) - certificates,
        wall_time=time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------------
# simulated quantum solver
# ---------------------------------------------------------------------------

class QuantumRetryExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class QuantumSolveReport:
    n: int
    m: int
    k: int
    seed: int
    witness_deg: int
    status: str                          # root | no-solution
    assignment: Assignment | None
    attempts: int
    stage1_marked: int
    stage1_iterations: int
    stage1_success_probability: float
    stage2_marked: int | None
    stage2_iterations: int | None
    stage2_success_probability: float | None
    macaulay_tests: int

    def to_json_dict(self, include_timing: bool = False) -> dict:
        return {
            "command": "quantum-solve",
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "seed": self.seed,
            "witness_degree": self.witness_deg,
            "status": self.status,
            "assignment": None if self.assignment is None else assignment_to_string(self.assignment),
            "attempts": self.attempts,
            "stage1": {
                "marked": self.stage1_marked,
                "iterations": self.stage1_iterations,
                "success_probability": self.stage1_success_probability,
            },
            "stage2": None if self.stage2_marked is None else {
                "marked": self.stage2_marked,
                "iterations": self.stage2_iterations,
                "success_probability": self.stage2_success_probability,
            },
            "macaulay_tests": self.macaulay_tests,
        }


def tabulate_branch_oracle(
    system: PolynomialSystem,
    k: int,
    d0: int,
    backend: str = "dense",
    seed: int = 0,
) -> np.ndarray:
    """Truth table of the branch predicate over all 2^k specializations."""
    table = np.zeros(1 << k, dtype=np.uint8)
    for branch, a2 in enumerate(iter_assignments(k)):
        rng = _branch_rng(seed, branch) if backend == "sparse" else None
        table[branch] = f_cons(system, k, a2, d0, backend=backend, rng=rng)
    return table


def quantum_boolean_solve_sim(
    system: PolynomialSystem,
    config: SolveConfig,
    rng: np.random.Generator,
    seed: int = 0,
    retry_budget: int = QUANTUM_RETRY_BUDGET,
) -> QuantumSolveReport:
    """Two-stage Grover simulation: branch search, then residual search.

    Stage 1 runs Grover over k qubits with the tabulated branch predicate as
    phase oracle; stage 2 runs Grover over the n-k residual variables of the
    measured branch with the root indicator as oracle.  A measured pair is
    returned only after evaluating to a verified root; failed measurements are
    retried up to the budget with fresh samples from the exact distributions.
    """
    from .circuits import grover_search_sim

    n, m = system.n, system.m
    k = resolve_k(config, n, m, setting="quantum")
    if k > STATEVECTOR_STAGE_CAP or n - k > STATEVECTOR_STAGE_CAP:
        raise ValueError(
            f"statevector caps require k <= {STATEVECTOR_STAGE_CAP} and "
            f"n-k <= {STATEVECTOR_STAGE_CAP}, got k={k}, n-k={n - k}"
        )
    d0 = witness_degree(m, n, k)
    oracle1 = tabulate_branch_oracle(system, k, d0, backend=config.backend, seed=seed)
    macaulay_tests = len(oracle1)
    marked1 = int(oracle1.sum())
    if marked1 == 0:
        return QuantumSolveReport(
            n=n, m=m, k=k, seed=seed, witness_deg=d0, status="no-solution",
            assignment=None, attempts=0, stage1_marked=0, stage1_iterations=0,
            stage1_success_probability=0.0, stage2_marked=None, stage2_iterations=None,
            stage2_success_probability=None, macaulay_tests=macaulay_tests,
        )
    stage1 = grover_search_sim(oracle1, k, rng=rng)
    stage2_cache: dict[int, tuple] = {}
    for attempt in range(1, retry_budget + 1):
        branch = stage1.sample(rng) if attempt > 1 else stage1.measured
        a2 = assignment_from_mask(branch, k)
        if oracle1[branch] == 0:
            continue
        if branch not in stage2_cache:
            residual = specialize(system, k, a2)
            roots = brute_force_solve(residual)
            oracle2 = np.zeros(1 << (n - k), dtype=np.uint8)
            for root in roots:
                oracle2[sum(b << i for i, b in enumerate(root))] = 1
            if oracle2.any():
                stage2_cache[branch] = (grover_search_sim(oracle2, n - k, rng=rng), oracle2)
            else:
                stage2_cache[branch] = (None, oracle2)
        stage2, oracle2 = stage2_cache[branch]
        if stage2 is None:
            continue
        a1_mask = stage2.sample(rng)
        a1 = assignment_from_mask(a1_mask, n - k)
        candidate = a1 + a2
        if evaluate_system(system, candidate):
            return QuantumSolveReport(
                n=n, m=m, k=k, seed=seed, witness_deg=d0, status="root",
                assignment=candidate, attempts=attempt,
                stage1_marked=marked1, stage1_iterations=stage1.iterations,
                stage1_success_probability=stage1.success_probability,
                stage2_marked=int(oracle2.sum()), stage2_iterations=stage2.iterations,
                stage2_success_probability=stage2.success_probability,
                macaulay_tests=macaulay_tests,
            )
    raise QuantumRetryExhausted(f"no verified root within {retry_budget} measurement retries")
