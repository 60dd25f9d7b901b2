"""Square matrices with exponent-vector labels over Z, Q or Z/p^k."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .padic import PrecisionMismatch, Residue, _check_modulus


class NonUnitDeterminant(ArithmeticError):
    """The determinant is not a unit mod p; the matrix is not invertible."""


class LabelMismatch(ValueError):
    pass


Label = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class LabeledMatrix:
    """An ``h x h`` matrix whose rows and columns are indexed by ``labels``.

    ``prime``/``precision`` are both ``None`` for exact entries (``int`` or
    ``Fraction``); otherwise entries are canonical integers in
    ``[0, prime**precision)``.
    """

    labels: tuple[Label, ...]
    rows: tuple[tuple, ...]
    prime: int | None = None
    precision: int | None = None

    def __post_init__(self):
        labels = tuple(tuple(int(c) for c in u) for u in self.labels)
        if any(a >= b for a, b in zip(labels, labels[1:])):
            raise ValueError("labels must be strictly increasing")
        h = len(labels)
        rows = tuple(tuple(r) for r in self.rows)
        if len(rows) != h or any(len(r) != h for r in rows):
            raise ValueError(f"expected a {h}x{h} matrix")
        if (self.prime is None) != (self.precision is None):
            raise ValueError("prime and precision must be given together")
        if self.prime is not None:
            _check_modulus(self.prime, self.precision)
            M = self.prime**self.precision
            rows = tuple(tuple(int(x) % M for x in r) for r in rows)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "rows", rows)

    # construction helpers

    @classmethod
    def identity(cls, labels, prime=None, precision=None) -> LabeledMatrix:
        h = len(labels)
        return cls(
            labels,
            [[int(i == j) for j in range(h)] for i in range(h)],
            prime,
            precision,
        )

    @classmethod
    def zero(cls, labels, prime=None, precision=None) -> LabeledMatrix:
        h = len(labels)
        return cls(labels, [[0] * h for _ in range(h)], prime, precision)

    def _like(self, rows) -> LabeledMatrix:
        return LabeledMatrix(self.labels, rows, self.prime, self.precision)

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def modulus(self) -> int | None:
        return None if self.prime is None else self.prime**self.precision

    @property
    def ring(self):
        return (self.prime, self.precision)

    def is_exact(self) -> bool:
        return self.prime is None

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entry(self, u: Label, v: Label):
        return self.rows[self.labels.index(tuple(u))][self.labels.index(tuple(v))]

    def residue(self, i: int, j: int) -> Residue:
        return Residue(self.prime, self.precision, self.rows[i][j])

    def to_list(self) -> list[list]:
        return [list(r) for r in self.rows]

    def __eq__(self, other):
        if not isinstance(other, LabeledMatrix):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.ring == other.ring
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.labels, self.rows, self.ring))

    def __repr__(self):
        ring = "Z" if self.prime is None else f"Z/{self.prime}^{self.precision}"
        return f"LabeledMatrix({self.to_list()} over {ring}, labels={list(self.labels)})"

    # ring changes

    def reduce(self, prime: int, precision: int) -> LabeledMatrix:
        """Reduce an exact integer matrix, or lower the precision of a residue one."""
        if self.prime is not None:
            if prime != self.prime or precision > self.precision:
                raise PrecisionMismatch(
                    f"cannot move from mod {self.prime}^{self.precision} "
                    f"to mod {prime}^{precision}"
                )
        else:
            M = prime**precision
            rows = []
            for r in self.rows:
                row = []
                for x in r:
                    if isinstance(x, Fraction):
                        if x.denominator % prime == 0:
                            raise ZeroDivisionError(f"{x} is not {prime}-integral")
                        x = x.numerator * pow(x.denominator, -1, M)
                    row.append(x)
                rows.append(row)
            return LabeledMatrix(self.labels, rows, prime, precision)
        return LabeledMatrix(self.labels, self.rows, prime, precision)

    def _check_compatible(self, other: LabeledMatrix) -> None:
        if self.labels != other.labels:
            raise LabelMismatch("matrices have different labels")
        if self.ring != other.ring:
            raise PrecisionMismatch(f"ring {self.ring} vs {other.ring}")

    # arithmetic

    def __add__(self, other: LabeledMatrix) -> LabeledMatrix:
        self._check_compatible(other)
        return self._like(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        )

    def __sub__(self, other: LabeledMatrix) -> LabeledMatrix:
        self._check_compatible(other)
        return self._like(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        )

    def __neg__(self) -> LabeledMatrix:
        return self._like([[-a for a in r] for r in self.rows])

    def scale(self, c) -> LabeledMatrix:
        return self._like([[c * a for a in r] for r in self.rows])

    def __matmul__(self, other: LabeledMatrix) -> LabeledMatrix:
        return matrix_mul(self, other)

    def __pow__(self, e: int) -> LabeledMatrix:
        if e < 0:
            return matrix_inverse(self) ** (-e)
        result = LabeledMatrix.identity(self.labels, self.prime, self.precision)
        base = self
        while e:
            if e & 1:
                result = result @ base
            e >>= 1
            if e:
                base = base @ base
        return result

    def transpose(self) -> LabeledMatrix:
        return self._like(list(zip(*self.rows)) if self.rows else [])

    def trace(self):
        t = sum(self.rows[i][i] for i in range(self.size))
        return t if self.modulus is None else t % self.modulus

    def det(self):
        """Determinant as the constant term of the characteristic polynomial."""
        c = charpoly(self)[-1]
        return c if self.size % 2 == 0 else self._norm(-c)

    def _norm(self, x):
        return x if self.modulus is None else x % self.modulus

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def divisible_by(self, q: int) -> bool:
        """True when every entry is divisible by ``q`` (exact or residue)."""
        if self.modulus is not None and self.modulus % q:
            raise PrecisionMismatch(f"{q} does not divide the modulus {self.modulus}")
        return all(Fraction(x) / q == int(Fraction(x) / q) for r in self.rows for x in r)


def matrix_mul(A: LabeledMatrix, B: LabeledMatrix) -> LabeledMatrix:
    A._check_compatible(B)
    cols = list(zip(*B.rows))
    return A._like(
        [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in A.rows]
    )


def matrix_inverse(A: LabeledMatrix) -> LabeledMatrix:
    """Inverse over ``Z/p^k`` by Gauss-Jordan elimination with unit pivots.

    Exact matrices are inverted over Q.  Raises :class:`NonUnitDeterminant`
    when no unit pivot exists (the determinant is divisible by p).
    """
    h = A.size
    aug = [list(A.rows[i]) + [int(i == j) for j in range(h)] for i in range(h)]
    if A.is_exact():
        aug = [[Fraction(x) for x in r] for r in aug]
        usable = lambda x: x != 0  # noqa: E731
        inv = lambda x: 1 / x  # noqa: E731
        norm = lambda x: x  # noqa: E731
    else:
        p, M = A.prime, A.modulus
        usable = lambda x: x % p != 0  # noqa: E731
        inv = lambda x: pow(x, -1, M)  # noqa: E731
        norm = lambda x: x % M  # noqa: E731
    for col in range(h):
        piv = next((r for r in range(col, h) if usable(aug[r][col])), None)
        if piv is None:
            raise NonUnitDeterminant("determinant is not a unit")
        aug[col], aug[piv] = aug[piv], aug[col]
        c = inv(aug[col][col])
        aug[col] = [norm(x * c) for x in aug[col]]
        for r in range(h):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [norm(x - f * y) for x, y in zip(aug[r], aug[col])]
    rows = [r[h:] for r in aug]
    if A.is_exact():
        rows = [[int(x) if x.denominator == 1 else x for x in r] for r in rows]
    return A._like(rows)


def adjugate_inverse(A: LabeledMatrix) -> LabeledMatrix:
    """Inverse via the adjugate formula, for ``h <= 3`` over ``Z/p^k``."""
    h = A.size
    if h > 3 or A.is_exact():
        raise ValueError("adjugate inverse is only provided for residue matrices with h <= 3")
    d = A.det()
    if d % A.prime == 0:
        raise NonUnitDeterminant("determinant is not a unit")
    dinv = pow(d, -1, A.modulus)
    m = A.rows
    if h == 0:
        return A
    if h == 1:
        return A._like([[dinv]])
    if h == 2:
        adj = [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]
    else:
        adj = [[0] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                r = [x for x in range(3) if x != j]
                c = [x for x in range(3) if x != i]
                minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
                adj[i][j] = (-1) ** (i + j) * minor
    return A._like([[dinv * x for x in r] for r in adj])


def charpoly(A: LabeledMatrix) -> list:
    """Coefficients ``[1, c_1, ..., c_h]`` of ``det(T*I - A)``, highest degree first.

    Berkowitz's algorithm: only ring operations are used, so the result is
    valid over ``Z/p^k`` for every size, including ``h >= p``.
    """
    M = A.modulus
    norm = (lambda x: x) if M is None else (lambda x: x % M)
    m = A.rows
    n = A.size
    # characteristic vector of the leading 1x1 block
    vec = [1]
    for r in range(n):
        # A_r is the leading (r+1)x(r+1) block, split as [[S, R], [C, a]]
        a = m[r][r]
        R = [m[i][r] for i in range(r)]  # column above the diagonal entry
        C = [m[r][j] for j in range(r)]  # row left of the diagonal entry
        # Toeplitz column: 1, -a, -C R, -C S R, -C S^2 R, ...
        col = [1, norm(-a)]
        w = R
        for _ in range(r):
            col.append(norm(-sum(c * x for c, x in zip(C, w))))
            w = [norm(sum(m[i][j] * w[j] for j in range(r))) for i in range(r)]
        # lower-triangular Toeplitz (r+2)x(r+1) times vec
        vec = [
            norm(sum(col[i - j] * vec[j] for j in range(min(i, r) + 1) if i - j < len(col)))
            for i in range(r + 2)
        ]
    return vec


def poly_eval_matrix(coeffs: Sequence, A: LabeledMatrix) -> LabeledMatrix:
    """Evaluate ``coeffs[0]*A^d + coeffs[1]*A^(d-1) + ... + coeffs[d]*I`` by Horner."""
    I = LabeledMatrix.identity(A.labels, A.prime, A.precision)
    acc = LabeledMatrix.zero(A.labels, A.prime, A.precision)
    for c in coeffs:
        acc = acc @ A + I.scale(c)
    return acc
