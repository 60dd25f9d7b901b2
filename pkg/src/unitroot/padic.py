"""Residues modulo prime powers, valuations and base-p digit expansions."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass


class PrecisionMismatch(ValueError):
    """Arithmetic between residues of different prime or precision."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    return all(p % d for d in range(3, math.isqrt(p) + 1, 2))


def _check_modulus(p: int, k: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError(f"precision must be >= 1, got {k}")


@dataclass(frozen=True)
class Residue:
    """An integer known modulo ``prime**precision``.

    The stored value is always the canonical representative in
    ``[0, prime**precision)``.  Mixing residues with different moduli raises
    :class:`PrecisionMismatch` instead of silently truncating.
    """

    prime: int
    precision: int
    value: int

    def __post_init__(self):
        _check_modulus(self.prime, self.precision)
        object.__setattr__(self, "value", self.value % self.modulus)

    @property
    def modulus(self) -> int:
        return self.prime**self.precision

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if (other.prime, other.precision) != (self.prime, self.precision):
                raise PrecisionMismatch(
                    f"mod {self.prime}^{self.precision} vs mod {other.prime}^{other.precision}"
                )
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def _new(self, value: int) -> Residue:
        return Residue(self.prime, self.precision, value)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.value)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return self._new(pow(self.value, e, self.modulus))

    def __eq__(self, other):
        if isinstance(other, Residue):
            return (self.prime, self.precision, self.value) == (
                other.prime,
                other.precision,
                other.value,
            )
        if isinstance(other, int):
            return (other - self.value) % self.modulus == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.prime, self.precision, self.value))

    def is_unit(self) -> bool:
        return self.value % self.prime != 0

    def inverse(self) -> Residue:
        if not self.is_unit():
            raise ZeroDivisionError(f"{self.value} is not a unit mod {self.prime}")
        return self._new(pow(self.value, -1, self.modulus))

    def lift(self) -> int:
        return self.value

    def truncate(self, k: int) -> Residue:
        """Reduce to a lower precision ``k <= precision``."""
        if k > self.precision:
            raise PrecisionMismatch(f"cannot raise precision {self.precision} to {k}")
        return Residue(self.prime, k, self.value)

    def __repr__(self):
        return f"Residue({self.value} mod {self.prime}^{self.precision})"


def reduce(n: int, p: int, k: int) -> Residue:
    """Return ``n mod p**k`` as a :class:`Residue`."""
    return Residue(p, k, n)


def valuation(n: int, p: int) -> int | float:
    """Largest ``v`` with ``p**v | n``; ``math.inf`` for ``n == 0``."""
    if n == 0:
        return math.inf
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class PadicDigits:
    prime: int
    digits: tuple[int, ...]

    @property
    def precision(self) -> int:
        return len(self.digits)

    def value(self) -> int:
        return sum(d * self.prime**i for i, d in enumerate(self.digits))

    def to_residue(self) -> Residue:
        return Residue(self.prime, self.precision, self.value())

    def render(self) -> str:
        """Text such as ``8 + 11 + 11^2 + O(11^3)``.

        Zero digits are omitted and a digit 1 in front of a prime power is
        elided.
        """
        p = self.prime
        parts = []
        for i, d in enumerate(self.digits):
            if d == 0:
                continue
            if i == 0:
                parts.append(str(d))
                continue
            pw = str(p) if i == 1 else f"{p}^{i}"
            parts.append(pw if d == 1 else f"{d}*{pw}")
        k = self.precision
        parts.append(f"O({p})" if k == 1 else f"O({p}^{k})")
        return " + ".join(parts)

    def __str__(self):
        return self.render()


def digits(r: Residue) -> PadicDigits:
    """Base-p expansion of the canonical representative of ``r``."""
    out = []
    v = r.value
    for _ in range(r.precision):
        v, d = divmod(v, r.prime)
        out.append(d)
    return PadicDigits(r.prime, tuple(out))


_TERM = re.compile(r"^(?:(\d+)\s*\*\s*)?(\d+)(?:\^(\d+))?$")


def parse_digits(text: str) -> PadicDigits:
    """Inverse of :meth:`PadicDigits.render`."""
    parts = [t.strip() for t in text.split("+")]
    tail = re.fullmatch(r"O\((\d+)(?:\^(\d+))?\)", parts[-1])
    if tail is None:
        raise ValueError(f"missing O(p^k) term in {text!r}")
    p = int(tail.group(1))
    k = int(tail.group(2) or 1)
    ds = [0] * k
    for t in parts[:-1]:
        m = _TERM.match(t)
        if m is None:
            raise ValueError(f"bad digit term {t!r}")
        coeff, base, exp = m.groups()
        if coeff is None and exp is None and int(base) != p:
            # a bare constant digit
            i, d = 0, int(base)
        else:
            if int(base) != p:
                raise ValueError(f"term {t!r} is not a power of {p}")
            i = int(exp or 1)
            d = int(coeff or 1)
        if i >= k or not 0 <= d < p or ds[i]:
            raise ValueError(f"bad digit term {t!r}")
        ds[i] = d
    return PadicDigits(p, tuple(ds))
