"""Dense box-shaped polynomial arrays over Z/M for large modular powers.

Products of two large arrays go through Kronecker substitution: both
operands are packed into one big integer, one slot per coefficient, and
multiplied with GMP.  Products with a short factor use shifted adds.
"""

from __future__ import annotations

import numpy as np
import gmpy2

# moduli below this keep products of two residues inside int64
MAX_MODULUS = 2**31
_SHORT = 24


class Dense:
    __slots__ = ("arr", "offset")

    def __init__(self, arr: np.ndarray, offset):
        self.arr = arr
        self.offset = tuple(int(o) for o in offset)

    @classmethod
    def from_terms(cls, terms: dict, nvars: int, M: int) -> Dense:
        if not terms:
            return cls(np.zeros((0,) * nvars, dtype=np.int64), (0,) * nvars)
        exps = np.array(list(terms), dtype=np.int64).reshape(len(terms), nvars)
        lo = exps.min(axis=0)
        hi = exps.max(axis=0)
        arr = np.zeros(tuple(hi - lo + 1), dtype=np.int64)
        vals = np.array([c % M for c in terms.values()], dtype=np.int64)
        arr[tuple((exps - lo).T)] = vals
        return cls(arr, lo)

    @property
    def ndim(self) -> int:
        return self.arr.ndim

    def is_empty(self) -> bool:
        return self.arr.size == 0 or not self.arr.any()

    def to_terms(self) -> dict:
        idx = np.nonzero(self.arr)
        vals = self.arr[idx]
        pts = np.stack(idx, axis=1) + np.array(self.offset, dtype=np.int64)
        return {tuple(int(c) for c in e): int(v) for e, v in zip(pts.tolist(), vals.tolist())}

    def coefficient(self, e) -> int:
        i = tuple(a - o for a, o in zip(e, self.offset))
        if any(x < 0 or x >= s for x, s in zip(i, self.arr.shape)):
            return 0
        return int(self.arr[i])

    def crop(self) -> Dense:
        if self.arr.size == 0:
            return self
        nz = np.nonzero(self.arr)
        if len(nz[0]) == 0:
            return Dense(np.zeros((0,) * self.ndim, dtype=np.int64), (0,) * self.ndim)
        lo = [int(a.min()) for a in nz]
        hi = [int(a.max()) for a in nz]
        sl = tuple(slice(a, b + 1) for a, b in zip(lo, hi))
        return Dense(self.arr[sl], [o + a for o, a in zip(self.offset, lo)])

    def grid_points(self):
        """Open grids of absolute exponents along every axis."""
        return np.ogrid[tuple(slice(o, o + s) for o, s in zip(self.offset, self.arr.shape))]

    def masked(self, mask: np.ndarray) -> Dense:
        return Dense(np.where(mask, self.arr, 0), self.offset).crop()

    def mul(self, other: Dense, M: int) -> Dense:
        if self.is_empty() or other.is_empty():
            return Dense(np.zeros((0,) * self.ndim, dtype=np.int64), (0,) * self.ndim)
        a, b = self, other
        if np.count_nonzero(a.arr) > np.count_nonzero(b.arr):
            a, b = b, a
        offset = [x + y for x, y in zip(a.offset, b.offset)]
        if np.count_nonzero(a.arr) <= _SHORT:
            return Dense(_shift_add(a.arr, b.arr, M), offset)
        return Dense(_kronecker(a.arr, b.arr, M), offset)

    def product_coefficient(self, other: Dense, t, M: int) -> int:
        """Coefficient at ``t`` of ``self * other`` without forming the product."""
        sl_a, sl_b = [], []
        for ao, an, bo, bn, te in zip(
            self.offset, self.arr.shape, other.offset, other.arr.shape, t
        ):
            # e ranges over [ao, ao+an) and t-e over [bo, bo+bn)
            lo = max(ao, te - bo - bn + 1)
            hi = min(ao + an - 1, te - bo)
            if lo > hi:
                return 0
            sl_a.append(slice(lo - ao, hi - ao + 1))
            # t-e runs downward as e runs upward
            b_hi = te - lo - bo
            b_lo = te - hi - bo
            sl_b.append(slice(b_lo, b_hi + 1))
        A = self.arr[tuple(sl_a)]
        B = other.arr[tuple(sl_b)]
        B = B[tuple(slice(None, None, -1) for _ in range(B.ndim))]
        return int(((A * B) % M).sum(dtype=np.int64) % M)


def _shift_add(small: np.ndarray, big: np.ndarray, M: int) -> np.ndarray:
    shape = tuple(x + y - 1 for x, y in zip(small.shape, big.shape))
    out = np.zeros(shape, dtype=np.int64)
    for idx in zip(*np.nonzero(small)):
        c = int(small[idx])
        sl = tuple(slice(i, i + n) for i, n in zip(idx, big.shape))
        out[sl] = (out[sl] + c * big) % M
    return out


def _pack(arr: np.ndarray, shape, words: int) -> int:
    """Embed ``arr`` into row-major strides of ``shape`` and pack into one integer."""
    pad = [(0, 0)] + [(0, s - n) for s, n in zip(shape[1:], arr.shape[1:])]
    flat = np.pad(arr, pad).ravel().astype(np.uint64)
    buf = np.zeros((flat.size, words), dtype=np.uint64)
    buf[:, 0] = flat
    return gmpy2.mpz(int.from_bytes(buf.tobytes(), "little"))


def _kronecker(a: np.ndarray, b: np.ndarray, M: int) -> np.ndarray:
    shape = tuple(x + y - 1 for x, y in zip(a.shape, b.shape))
    terms = min(a.size, b.size)
    bound = (M - 1) ** 2 * terms
    words = max(1, (bound.bit_length() + 63) // 64)
    prod = _pack(a, shape, words) * _pack(b, shape, words)
    size = int(np.prod(shape))
    raw = int(prod).to_bytes(size * words * 8, "little")
    w = np.frombuffer(raw, dtype=np.uint64).reshape(size, words)
    # slot value = sum_j w_j 2^(64 j), reduced mod M by Horner from the top word
    base = pow(2, 64, M)
    acc = np.zeros(size, dtype=np.int64)
    for j in range(words - 1, -1, -1):
        acc = (acc * base + (w[:, j] % np.uint64(M)).astype(np.int64)) % M
    return acc.reshape(shape)



def kronecker_exact(A: dict, B: dict, nvars: int) -> dict | None:
    """Exact product of two integer term maps by signed Kronecker substitution.

    Returns ``None`` when the exponent box is too sparse for packing to pay
    off; the caller then falls back to the schoolbook product.  Each slot is
    biased by ``2^(bits-1)`` so signed coefficients unpack without borrows.
    """
    na, nb = len(A), len(B)
    if min(na, nb) < _SHORT:
        return None
    ea = np.array(list(A), dtype=np.int64).reshape(na, nvars)
    eb = np.array(list(B), dtype=np.int64).reshape(nb, nvars)
    lo_a, lo_b = ea.min(axis=0), eb.min(axis=0)
    shape = tuple(int(x) for x in (ea.max(axis=0) - lo_a) + (eb.max(axis=0) - lo_b) + 1)
    size = int(np.prod(shape))
    if size > na * nb // 2 or size > 1 << 26:
        return None
    strides = np.array(
        [int(np.prod(shape[i + 1 :])) for i in range(nvars)], dtype=np.int64
    )
    bound = min(na, nb) * max(abs(c) for c in A.values()) * max(abs(c) for c in B.values())
    words = (bound.bit_length() + 1) // 64 + 1
    nbytes = 8 * words
    bias = 1 << (8 * nbytes - 1)

    def pack(terms, exps, lo):
        idx = ((exps - lo) @ strides).tolist()
        pos = bytearray(size * nbytes)
        neg = bytearray(size * nbytes)
        for i, c in zip(idx, terms.values()):
            buf = pos if c > 0 else neg
            buf[i * nbytes : (i + 1) * nbytes] = abs(c).to_bytes(nbytes, "little")
        return gmpy2.mpz(int.from_bytes(pos, "little")) - gmpy2.mpz(int.from_bytes(neg, "little"))

    prod = pack(A, ea, lo_a) * pack(B, eb, lo_b)
    ones = int.from_bytes((1).to_bytes(nbytes, "little") * size, "little")
    raw = int(prod + bias * ones).to_bytes(size * nbytes, "little")
    w = np.frombuffer(raw, dtype=np.uint64).reshape(size, words)
    top = np.uint64(1 << 63)
    nz = np.nonzero((w[:, -1] != top) | np.any(w[:, :-1] != 0, axis=1))[0]
    if words == 1:
        vals = (w[nz, 0] - top).view(np.int64).tolist()
    else:
        vals = [
            int.from_bytes(raw[i * nbytes : (i + 1) * nbytes], "little") - bias
            for i in nz.tolist()
        ]
    exps = np.stack(np.unravel_index(nz, shape), axis=1) + (lo_a + lo_b)
    return {tuple(e): c for e, c in zip(exps.tolist(), vals)}
