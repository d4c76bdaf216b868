"""Binary extension fields GF(2^e) with fixed, reproducible moduli.

Elements are plain ints: bit i is the coefficient of z^i in the polynomial
basis modulo the field's irreducible polynomial.  Addition is XOR.  The moduli
below are baked in bit-exactly so that independent implementations reproduce
identical arithmetic: for each supported degree, the modulus is the monic
polynomial with the smallest integer encoding that is primitive over F_2
(z itself generates the multiplicative group).

Degrees up to 24 are backed by full discrete-log tables (built once per
process with a compiled kernel) and expose fast numpy vector operations used
by the sparse linear algebra.  The wider degrees use shift-and-xor arithmetic;
they exist for completeness and are not hit by the solver at desk scale.
"""

from __future__ import annotations

import numpy as np

# degree -> modulus, low bits shown without the leading z^e term
MODULI: dict[int, int] = {
    8: (1 << 8) | 0x1D,
    16: (1 << 16) | 0x2D,
    24: (1 << 24) | 0x1B,
    32: (1 << 32) | 0xAF,
    48: (1 << 48) | 0xB7,
    64: (1 << 64) | 0x1B,
}

SUPPORTED_DEGREES = tuple(sorted(MODULI))

_TABLE_MAX_DEGREE = 24

_table_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def choose_extension_degree(size: int) -> int:
    """Smallest supported e with 2^e - 1 > 2*size*(size-1), per the solver's field requirement."""
    need = 2 * size * (size - 1)
    for e in SUPPORTED_DEGREES:
        if (1 << e) - 1 > need:
            return e
    raise ValueError(f"no supported extension degree for dimension {size}")


def _clmul_reduce(a: int, b: int, modulus: int, e: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> e:
            a ^= modulus
    return r


class Gf2eField:
    """Arithmetic context for GF(2^e); element values are ints in [0, 2^e)."""

    def __init__(self, e: int):
        if e not in MODULI:
            raise ValueError(f"unsupported extension degree {e}; supported: {SUPPORTED_DEGREES}")
        self.e = e
        self.modulus = MODULI[e]
        self.order = (1 << e) - 1
        self.dtype = np.uint32 if e <= _TABLE_MAX_DEGREE else np.uint64
        if e <= _TABLE_MAX_DEGREE:
            if e not in _table_cache:
                from ._kernels import build_exp_table, build_log_table
                exp = build_exp_table(self.modulus, e)
                _table_cache[e] = (exp, build_log_table(exp, e))
            self.exp, self.log = _table_cache[e]
        else:
            self.exp = self.log = None

    def __repr__(self):
        return f"Gf2eField(e={self.e}, modulus={self.modulus:#x})"

    def __eq__(self, other):
        return isinstance(other, Gf2eField) and other.e == self.e

    def __hash__(self):
        return hash(("Gf2eField", self.e))

    # -- scalar operations ---------------------------------------------------

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if self.exp is not None:
            if a == 0 or b == 0:
                return 0
            return int(self.exp[(int(self.log[a]) + int(self.log[b])) % self.order])
        return _clmul_reduce(int(a), int(b), self.modulus, self.e)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of zero in GF(2^e)")
        if self.exp is not None:
            return int(self.exp[(self.order - int(self.log[a])) % self.order])
        return self.pow(a, self.order - 1)

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            raise ValueError("negative exponent")
        if a == 0:
            return 1 if k == 0 else 0
        k %= self.order
        r = 1
        while k:
            if k & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            k >>= 1
        return r

    def rand(self, rng: np.random.Generator) -> int:
        return int(rng.integers(0, 1 << self.e, dtype=np.uint64))

    def rand_vec(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.integers(0, 1 << self.e, size=size, dtype=np.uint64).astype(self.dtype)

    # -- vector operations (elementwise over numpy arrays) --------------------

    def zeros(self, size: int) -> np.ndarray:
        return np.zeros(size, dtype=self.dtype)

    def vec_mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.exp is not None:
            from ._kernels import vec_mul
            return vec_mul(a, b, self.log, self.exp, self.order)
        return np.array([self.mul(int(x), int(y)) for x, y in zip(a, b)], dtype=self.dtype)

    def vec_scale(self, v: np.ndarray, s: int) -> np.ndarray:
        if self.exp is not None:
            from ._kernels import vec_scale
            return vec_scale(v, np.uint32(s), self.log, self.exp, self.order)
        return np.array([self.mul(int(x), s) for x in v], dtype=self.dtype)

    def vec_axpy(self, acc: np.ndarray, v: np.ndarray, s: int) -> None:
        """acc ^= s * v, in place."""
        if self.exp is not None:
            from ._kernels import vec_axpy
            vec_axpy(acc, v, np.uint32(s), self.log, self.exp, self.order)
        else:
            acc ^= self.vec_scale(v, s)

    def dot(self, a: np.ndarray, b: np.ndarray) -> int:
        if self.exp is not None:
            from ._kernels import vec_dot
            return int(vec_dot(a, b, self.log, self.exp, self.order))
        acc = 0
        for x, y in zip(a, b):
            acc ^= self.mul(int(x), int(y))
        return acc
