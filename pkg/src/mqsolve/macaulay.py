"""Boolean Macaulay matrices, Hilbert-series witness degrees, consistency certificates.

The Macaulay matrix of degree d for a quadratic system F collects the
coefficient vectors of the square-free products phi(t*f_i) over all square-free
multipliers t with deg(t) <= d-2, with columns indexed by the square-free
monomials of degree <= d in descending degree-reverse-lexicographic order.

If some row combination u satisfies u*M = (0,...,0,1) then the constant 1 lies
in the ideal generated by F together with the field relations, so F has no
root in F_2^n: u is a refutation certificate.  The degree at which this test
becomes conclusive for generic systems is read off the series
(1+t)^(n-k) / ((1-t)(1+t^2)^m) as the index of its first non-positive
coefficient.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .anf import Monomial, PolynomialSystem, monomial_degree


@dataclass(frozen=True)
class DrlOrder:
    """Degree-reverse-lexicographic order on square-free monomial masks.

    Degree decides first; equal degrees are broken by the plain integer value
    of the mask, which realizes the reverse-lexicographic tie-break: among
    equal-degree monomials the one holding the highest-indexed variable wins.
    The constant monomial (mask 0) is the minimum.
    """

    n: int

    @staticmethod
    def key(mono: Monomial) -> tuple[int, int]:
        return (monomial_degree(mono), mono)

    def greater(self, a: Monomial, b: Monomial) -> bool:
        return self.key(a) > self.key(b)

    def monomials_upto(self, d: int) -> list[Monomial]:
        """All square-free monomials of degree <= d, in descending order."""
        out: list[Monomial] = []
        for deg in range(min(d, self.n) + 1):
            for combo in itertools.combinations(range(self.n), deg):
                m = 0
                for v in combo:
                    m |= 1 << v
                out.append(m)
        out.sort(key=self.key, reverse=True)
        return out

    def descending(self, monos: Iterable[Monomial]) -> list[Monomial]:
        return sorted(monos, key=self.key, reverse=True)


@dataclass(frozen=True)
class MacaulayMatrix:
    """Sparse F_2 matrix; rows labeled (equation index, multiplier monomial)."""

    n: int
    degree: int
    cols: tuple[Monomial, ...]                 # descending DRL; last is the constant 1
    rows: tuple[tuple[int, ...], ...]          # sorted column indices per row
    row_labels: tuple[tuple[int, Monomial], ...]

    @property
    def r_mac(self) -> int:
        return len(self.rows)

    @property
    def c_mac(self) -> int:
        return len(self.cols)

    @property
    def s_mac(self) -> int:
        return sum(len(r) for r in self.rows)

    def row_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.c_mac, dtype=np.uint8)
        v[list(self.rows[i])] = 1
        return v


def build_macaulay(system: PolynomialSystem, d: int) -> MacaulayMatrix:
    """One row per (equation i, square-free multiplier t) with deg(t) <= d-2.

    The multiplier set keeps every product of degree at most d (not only the
    products landing exactly in degree d), so the row space spans the full
    truncated ideal needed by the certificate.  Field relations are never added
    as explicit rows: the square-free reduction applies them to every product.
    """
    if d < 1:
        raise ValueError(f"Macaulay degree must be >= 1, got {d}")
    max_deg = max((p.degree for p in system.polys), default=0)
    if d < max_deg:
        raise ValueError(f"degree-{max_deg} input requires d >= {max_deg}, got {d}")
    order = DrlOrder(system.n)
    cols = tuple(order.monomials_upto(d))
    colidx = {m: i for i, m in enumerate(cols)}
    multipliers = order.monomials_upto(max(d - 2, 0))
    rows: list[tuple[int, ...]] = []
    labels: list[tuple[int, Monomial]] = []
    for i, p in enumerate(system.polys, start=1):
        for t in multipliers:
            prod = p.multiply_monomial(t)
            rows.append(tuple(sorted(colidx[m] for m in prod.terms)))
            labels.append((i, t))
    return MacaulayMatrix(system.n, d, cols, tuple(rows), tuple(labels))


def proposition1_bounds(n: int, m: int, d: int) -> tuple[float, float, float]:
    """Upper bounds (rows, columns, nonzeros) valid for 1 <= d < n/2."""
    if not 1 <= d or not d < n / 2:
        raise ValueError(f"bounds require 1 <= d < n/2, got d={d}, n={n}")
    x = d / n
    binom = math.comb(n, d)
    c_bound = (1 - x) / (1 - 2 * x) * binom
    r_bound = m * x * x / ((1 - 2 * x) * (1 - x)) * binom
    s_bound = m * n * n * x * x / ((1 - 2 * x) * (1 - x)) * binom
    return r_bound, c_bound, s_bound


# ---------------------------------------------------------------------------
# Hilbert series prefix and witness degree
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HilbertPrefix:
    """Exact truncated coefficients of (1+t)^(n-k) / ((1-t)(1+t^2)^m)."""

    m: int
    n: int
    k: int
    coeffs: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i]

    def __len__(self) -> int:
        return len(self.coeffs)


def hilbert_prefix(m: int, n: int, k: int, up_to: int) -> HilbertPrefix:
    """Power-series long division with exact integer arithmetic."""
    if m < 0 or n < 1 or not 0 <= k <= n:
        raise ValueError(f"bad parameters m={m}, n={n}, k={k}")
    length = up_to + 1
    c = [math.comb(n - k, j) if j <= n - k else 0 for j in range(length)]
    for j in range(1, length):          # multiply by 1/(1-t): prefix sums
        c[j] += c[j - 1]
    for _ in range(m):                  # divide by (1+t^2): c'_j = c_j - c'_{j-2}
        nxt = [0] * length
        for j in range(length):
            nxt[j] = c[j] - (nxt[j - 2] if j >= 2 else 0)
        c = nxt
    return HilbertPrefix(m, n, k, tuple(c))


def witness_degree(m: int, n: int, k: int) -> int:
    """Smallest index with a non-positive series coefficient.

    The constant and linear coefficients are always positive, so the result is
    at least 2.  Requires m >= n-k so the overdetermined specialized system
    actually truncates; the scan is capped at n+2 and failing to truncate by
    then is reported as an error rather than looping.
    """
    if m < n - k:
        raise ValueError(f"witness degree needs m >= n-k, got m={m}, n-k={n - k}")
    cap = n + 2
    prefix = hilbert_prefix(m, n, k, cap)
    for d, coeff in enumerate(prefix.coeffs):
        if coeff <= 0:
            return d
    raise ValueError(f"series never truncates within degree cap {cap} (m={m}, n={n}, k={k})")


# ---------------------------------------------------------------------------
# consistency certificate
# ---------------------------------------------------------------------------

def _dense_certificate(mac: MacaulayMatrix) -> np.ndarray | None:
    """Gaussian elimination over F_2 with rows packed into Python ints.

    Bits 0..c-1 of a packed row hold the matrix row; reduction tracks the row
    combination separately.  Returns u (uint8 per row) with u*M = e_last, or
    None when the unit vector is outside the row space.
    """
    ncols = mac.c_mac
    pivots: dict[int, tuple[int, int]] = {}   # pivot bit -> (row value, combination)
    for ri, cols in enumerate(mac.rows):
        v = 0
        for c in cols:
            v |= 1 << c
        combo = 1 << ri
        while v:
            p = v.bit_length() - 1
            if p in pivots:
                pv, pc = pivots[p]
                v ^= pv
                combo ^= pc
            else:
                pivots[p] = (v, combo)
                break
    target = 1 << (ncols - 1)                  # the constant-monomial column
    combo = 0
    while target:
        p = target.bit_length() - 1
        if p not in pivots:
            return None
        pv, pc = pivots[p]
        target ^= pv
        combo ^= pc
    u = np.zeros(mac.r_mac, dtype=np.uint8)
    for ri in range(mac.r_mac):
        if combo >> ri & 1:
            u[ri] = 1
    return u


def certificate_system(mac: MacaulayMatrix):
    """The certificate problem as a square sparse system A x = b over GF(2^e).

    u*M = e_last is transposed to M^T u^T = e_last^T and zero-padded to
    dimension N = max(r, c); the padding cannot change solvability.  The
    extension degree follows the solver's field requirement for N.  A solution
    x yields the certificate u = x[:r]; solvability over the extension field
    coincides with solvability over F_2 (rank is invariant under field
    extension), so existence agrees with the dense backend.
    """
    from .gf2e import Gf2eField, choose_extension_degree
    from .sparse_linalg import SparseMatrix

    r, c = mac.r_mac, mac.c_mac
    size = max(r, c)
    field = Gf2eField(choose_extension_degree(size))
    entries_row: list[int] = []
    entries_col: list[int] = []
    for ri, cols in enumerate(mac.rows):
        for cc in cols:
            entries_row.append(cc)     # transposed: M^T[col, row]
            entries_col.append(ri)
    matrix = SparseMatrix.from_coo(field, size, entries_row, entries_col, None)
    b = np.zeros(size, dtype=field.dtype)
    b[c - 1] = 1
    return matrix, b


def _sparse_certificate(mac: MacaulayMatrix, rng: np.random.Generator) -> np.ndarray | None:
    from .sparse_linalg import sparse_linear_system_solver

    if mac.r_mac == 0:
        return None
    matrix, b = certificate_system(mac)
    verdict = sparse_linear_system_solver(matrix, b, rng)
    if verdict.tag == "singular-inconsistent":
        return None
    return np.asarray(verdict.payload[: mac.r_mac])


def certificate_product(mac: MacaulayMatrix, u: np.ndarray, field=None) -> np.ndarray:
    """u*M for verification; over F_2 when field is None, else over GF(2^e)."""
    if field is None:
        out = np.zeros(mac.c_mac, dtype=np.uint8)
        for ri, cols in enumerate(mac.rows):
            if u[ri] & 1:
                for c in cols:
                    out[c] ^= 1
        return out
    out = np.zeros(mac.c_mac, dtype=field.dtype)
    for ri, cols in enumerate(mac.rows):
        if u[ri]:
            for c in cols:
                out[c] ^= u[ri]
    return out


def consistency_certificate(
    mac: MacaulayMatrix,
    backend: str = "dense",
    rng: np.random.Generator | None = None,
    check_both: bool = False,
) -> np.ndarray | None:
    """Row combination u with u*M = (0,...,0,1), or None when none exists.

    The dense backend eliminates exactly over F_2.  The sparse backend runs the
    Las-Vegas certifying solver over an extension field; its verdicts are
    verified exactly, so both backends agree on existence.  ``check_both``
    cross-checks the two and raises on disagreement.
    """
    if mac.r_mac == 0:
        raise ValueError("empty Macaulay matrix")
    if check_both:
        dense = _dense_certificate(mac)
        sparse = _sparse_certificate(mac, rng or np.random.default_rng(0))
        if (dense is None) != (sparse is None):
            raise AssertionError(
                f"certificate backends disagree: dense={'absent' if dense is None else 'found'}, "
                f"sparse={'absent' if sparse is None else 'found'}"
            )
        return dense if backend == "dense" else sparse
    if backend == "dense":
        return _dense_certificate(mac)
    if backend == "sparse":
        return _sparse_certificate(mac, rng or np.random.default_rng(0))
    raise ValueError(f"unknown backend {backend!r}")


def triplet_text(mac: MacaulayMatrix) -> str:
    """Sparse triplet dump: header 'r c', then one 'row col' pair per line."""
    lines = [f"{mac.r_mac} {mac.c_mac}"]
    for ri, cols in enumerate(mac.rows):
        for c in cols:
            lines.append(f"{ri} {c}")
    return "\n".join(lines) + "\n"
