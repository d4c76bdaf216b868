"""Boolean quadratic systems in algebraic normal form.

A monomial is a bitmask over variable indices: bit i set means x_{i+1} is
present.  The representation is square-free by construction (x_i^2 = x_i over
F_2), so the product of two monomials is the bitwise OR of their masks and the
degree is the popcount.  A polynomial is a set of monomial masks: presence in
the set means ANF coefficient 1, and addition is symmetric difference.

Variables are 1-indexed in the text format and 0-indexed internally; the
parser/serializer is the only place where the two conventions meet.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

# A monomial is a plain int bitmask; the constant monomial 1 is mask 0.
Monomial = int

# An assignment is a bit per variable, index i -> value of x_{i+1}.
Assignment = tuple[int, ...]

BRUTE_FORCE_CAP = 32

_BRUTE_FORCE_CHUNK = 1 << 18


class ParseError(ValueError):
    """Input text violates the system grammar; carries line/column info."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def monomial_degree(mono: Monomial) -> int:
    return bin(mono).count("1")


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return a | b


def monomial_vars(mono: Monomial) -> tuple[int, ...]:
    """0-indexed variable indices of a monomial, ascending."""
    out = []
    i = 0
    while mono:
        if mono & 1:
            out.append(i)
        mono >>= 1
        i += 1
    return tuple(out)


def monomial_from_vars(indices: Iterable[int]) -> Monomial:
    mono = 0
    for i in indices:
        mono |= 1 << i
    return mono


@dataclass(frozen=True)
class BooleanPolynomial:
    """Square-free ANF over F_2: a set of monomial masks with coefficient 1."""

    n: int
    terms: frozenset[Monomial]

    def __post_init__(self):
        limit = 1 << self.n
        for t in self.terms:
            if t >= limit or t < 0:
                raise ValueError(f"monomial {t:#x} uses variables beyond n={self.n}")

    @classmethod
    def from_terms(cls, n: int, terms: Iterable[Monomial]) -> "BooleanPolynomial":
        """Build with F_2 cancellation: monomials appearing an even number of times vanish."""
        acc: set[Monomial] = set()
        for t in terms:
            acc ^= {t}
        return cls(n, frozenset(acc))

    @property
    def degree(self) -> int:
        return max((monomial_degree(t) for t in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "BooleanPolynomial") -> "BooleanPolynomial":
        if self.n != other.n:
            raise ValueError("polynomials over different variable counts")
        return BooleanPolynomial(self.n, self.terms ^ other.terms)

    def multiply_monomial(self, mono: Monomial) -> "BooleanPolynomial":
        """phi(mono * self): square-free product, with F_2 cancellation of merged terms."""
        acc: set[Monomial] = set()
        for t in self.terms:
            acc ^= {t | mono}
        return BooleanPolynomial(self.n, frozenset(acc))


@dataclass(frozen=True)
class PolynomialSystem:
    """m quadratic polynomials in n variables over F_2."""

    n: int
    m: int
    polys: tuple[BooleanPolynomial, ...] = field(default=())

    def __post_init__(self):
        if len(self.polys) != self.m:
            raise ValueError(f"declared m={self.m} but got {len(self.polys)} polynomials")
        for i, p in enumerate(self.polys):
            if p.n != self.n:
                raise ValueError(f"polynomial {i + 1} has n={p.n}, system has n={self.n}")
            if p.degree > 2:
                raise ValueError(f"polynomial {i + 1} has degree {p.degree} > 2")


def square_free_reduce(monomials: Iterable[Iterable[tuple[int, int]]], n: int) -> BooleanPolynomial:
    """Reduce a polynomial given with exponents modulo the field relations x_i^2 - x_i.

    ``monomials`` is an iterable of monomials, each a list of
    (0-indexed variable, exponent) pairs; the empty list is the constant 1.
    Every exponent >= 1 collapses to 1, then F_2 cancellation is applied.
    """
    terms = []
    for mono in monomials:
        mask = 0
        for var, exponent in mono:
            if exponent < 0:
                raise ValueError("negative exponent")
            if exponent >= 1:
                mask |= 1 << var
        terms.append(mask)
    return BooleanPolynomial.from_terms(n, terms)


def assignment_mask(a: Assignment) -> int:
    mask = 0
    for i, bit in enumerate(a):
        if bit:
            mask |= 1 << i
    return mask


def assignment_from_mask(mask: int, n: int) -> Assignment:
    return tuple((mask >> i) & 1 for i in range(n))


def assignment_to_string(a: Assignment) -> str:
    """Bitstring with x_1 first."""
    return "".join(str(b) for b in a)


def evaluate(p: BooleanPolynomial, a: Assignment) -> int:
    if len(a) != p.n:
        raise ValueError(f"assignment length {len(a)} != n={p.n}")
    amask = assignment_mask(a)
    v = 0
    for t in p.terms:
        if t & amask == t:
            v ^= 1
    return v


def evaluate_system(system: PolynomialSystem, a: Assignment) -> bool:
    """True iff a is a common root of every polynomial."""
    return all(evaluate(p, a) == 0 for p in system.polys)


def specialize(system: PolynomialSystem, k: int, a2: Assignment) -> PolynomialSystem:
    """Substitute the last k variables: x_{n-k+i} := a2[i-1].

    The result F~ over n-k variables satisfies F~(x) = F(x || a2) pointwise.
    """
    n = system.n
    if not 0 <= k <= n:
        raise ValueError(f"k={k} out of range 0..{n}")
    if len(a2) != k:
        raise ValueError(f"a2 length {len(a2)} != k={k}")
    n_low = n - k
    low_mask = (1 << n_low) - 1
    a2m = assignment_mask(a2)
    out = []
    for p in system.polys:
        acc: set[Monomial] = set()
        for t in p.terms:
            hi = t >> n_low
            # the high part contributes product of assigned values: survives iff all 1
            if hi & a2m == hi:
                acc ^= {t & low_mask}
        out.append(BooleanPolynomial(n_low, frozenset(acc)))
    return PolynomialSystem(n_low, system.m, tuple(out))


def brute_force_solve(system: PolynomialSystem, cap: int = BRUTE_FORCE_CAP) -> list[Assignment]:
    """All common roots by chunked bit-parallel enumeration, ascending by x_1-first mask."""
    n = system.n
    if n > cap:
        raise ValueError(f"n={n} exceeds brute-force cap {cap}")
    total = 1 << n
    roots: list[Assignment] = []
    for start in range(0, total, _BRUTE_FORCE_CHUNK):
        stop = min(start + _BRUTE_FORCE_CHUNK, total)
        idx = np.arange(start, stop, dtype=np.uint64)
        ok = np.ones(stop - start, dtype=bool)
        for p in system.polys:
            acc = np.zeros(stop - start, dtype=bool)
            for t in p.terms:
                tm = np.uint64(t)
                acc ^= (idx & tm) == tm
            ok &= ~acc
            if not ok.any():
                break
        for mask in idx[ok]:
            roots.append(assignment_from_mask(int(mask), n))
    return roots


def quadratic_monomials(n: int) -> list[Monomial]:
    """Constant, linear, then quadratic monomials in the documented coefficient order."""
    monos: list[Monomial] = [0]
    monos += [1 << i for i in range(n)]
    monos += [(1 << i) | (1 << j) for i in range(n) for j in range(i + 1, n)]
    return monos


def random_system(
    n: int,
    m: int,
    rng: np.random.Generator,
    ensure_solution: bool = False,
) -> tuple[PolynomialSystem, Assignment | None]:
    """Uniform quadratic system; optionally plant a root by fixing constant terms.

    Each of the 1 + n + C(n,2) ANF coefficients of each polynomial is an
    independent fair bit drawn in the order of :func:`quadratic_monomials`.
    With ``ensure_solution`` a root z is drawn first (n fair bits, x_1 first)
    and the constant term of every polynomial is flipped where f_i(z) = 1.
    Returns the system and the planted root (None when not planting).
    """
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    monos = quadratic_monomials(n)
    planted: Assignment | None = None
    if ensure_solution:
        planted = tuple(int(b) for b in rng.integers(0, 2, size=n))
    polys = []
    for _ in range(m):
        bits = rng.integers(0, 2, size=len(monos))
        terms = frozenset(mono for mono, b in zip(monos, bits) if b)
        p = BooleanPolynomial(n, terms)
        if planted is not None and evaluate(p, planted) == 1:
            p = BooleanPolynomial(n, terms ^ {0})
        polys.append(p)
    return PolynomialSystem(n, m, tuple(polys)), planted


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

def _drl_sort_key(mono: Monomial) -> tuple[int, int]:
    # matches macaulay.DrlOrder; duplicated here to keep the parser standalone
    return (monomial_degree(mono), mono)


def _format_term(mono: Monomial) -> str:
    if mono == 0:
        return "1"
    return "*".join(f"x{i + 1}" for i in monomial_vars(mono))


def serialize_polynomial(p: BooleanPolynomial) -> str:
    if not p.terms:
        return "0"
    terms = sorted(p.terms, key=_drl_sort_key, reverse=True)
    return " + ".join(_format_term(t) for t in terms)


def serialize_system(system: PolynomialSystem) -> str:
    lines = [f"{system.n} {system.m}"]
    lines += [serialize_polynomial(p) for p in system.polys]
    return "\n".join(lines) + "\n"


def _parse_term(tok: str, n: int, line_no: int, col: int) -> Monomial | None:
    """None encodes the explicit zero polynomial token."""
    if tok == "1":
        return 0
    if tok == "0":
        return None
    factors = tok.split("*")
    if len(factors) > 2:
        raise ParseError(f"term '{tok}' has degree {len(factors)} > 2", line_no, col)
    indices = []
    for f in factors:
        if not (len(f) >= 2 and f[0] == "x" and f[1:].isdigit()):
            raise ParseError(f"malformed term '{tok}'", line_no, col)
        i = int(f[1:])
        if not 1 <= i <= n:
            raise ParseError(f"variable index {i} out of range 1..{n}", line_no, col)
        indices.append(i)
    if len(indices) == 2 and indices[0] >= indices[1]:
        raise ParseError(
            f"term '{tok}' must list variables in increasing order xI*xJ with I < J",
            line_no, col,
        )
    return monomial_from_vars(i - 1 for i in indices)


def parse_system(text: str) -> PolynomialSystem:
    """Parse the line-oriented text format.

    Grammar: optional ``#`` comment lines; first non-comment line ``n m``;
    then exactly m polynomial lines, each ``term (+ term)*`` with a term being
    ``1``, ``xI`` or ``xI*xJ`` (1 <= I < J <= n).  The single token ``0``
    denotes the zero polynomial (serializer extension, accepted on input).
    """
    header: tuple[int, int] | None = None
    polys: list[BooleanPolynomial] = []
    n = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise ParseError("expected header 'n m'", line_no, 1)
            n, m = int(parts[0]), int(parts[1])
            if n < 1 or m < 1:
                raise ParseError("n and m must be >= 1", line_no, 1)
            header = (n, m)
            continue
        if len(polys) >= header[1]:
            raise ParseError(
                f"more than the declared m={header[1]} polynomial lines", line_no, 1
            )
        terms: list[Monomial] = []
        col = 1
        for chunk in line.split("+"):
            tok = chunk.strip()
            if not tok:
                raise ParseError("empty term", line_no, col)
            mono = _parse_term(tok, n, line_no, col)
            if mono is not None:
                terms.append(mono)
            col += len(chunk) + 1
        polys.append(BooleanPolynomial.from_terms(n, terms))
    if header is None:
        raise ParseError("missing header 'n m'", 1, 1)
    if len(polys) != header[1]:
        raise ParseError(
            f"declared m={header[1]} but found {len(polys)} polynomial lines",
            len(text.splitlines()) + 1, 1,
        )
    return PolynomialSystem(header[0], header[1], tuple(polys))


def iter_assignments(k: int) -> Iterator[Assignment]:
    """All 2^k assignments in ascending integer order, bit i of j -> value i."""
    for j in range(1 << k):
        yield assignment_from_mask(j, k)
