"""Sparse multivariate Laurent polynomials over Z or Z/p^k."""

from __future__ import annotations

import json
import re
from typing import Iterable, Sequence

import numpy as np

from . import _dense
from .padic import PrecisionMismatch, _check_modulus
from .polytope import affine_chart, dilation_contains, newton_polytope

Exponent = tuple[int, ...]


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class LaurentPoly:
    """Finitely supported map from exponent vectors to coefficients.

    Coefficients are Python integers; when ``prime`` and ``precision`` are
    set they are kept reduced to ``[0, prime**precision)``.  Zero
    coefficients are never stored and terms iterate in lexicographic order
    of their exponents.
    """

    __slots__ = ("variables", "terms", "prime", "precision")

    def __init__(
        self,
        terms: dict | Iterable,
        variables: Sequence[str],
        prime: int | None = None,
        precision: int | None = None,
    ):
        self.variables = tuple(variables)
        if (prime is None) != (precision is None):
            raise ValueError("prime and precision must be given together")
        if prime is not None:
            _check_modulus(prime, precision)
        self.prime = prime
        self.precision = precision
        items = terms.items() if isinstance(terms, dict) else terms
        M = self.modulus
        N = len(self.variables)
        clean = {}
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != N:
                raise ValueError(f"exponent {e} has length {len(e)}, expected {N}")
            c = int(c) if M is None else int(c) % M
            if c:
                clean[e] = c
        self.terms = dict(sorted(clean.items()))

    # basic protocol

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def modulus(self) -> int | None:
        return None if self.prime is None else self.prime**self.precision

    @property
    def ring(self):
        return (self.prime, self.precision)

    def _like(self, terms) -> LaurentPoly:
        return LaurentPoly(terms, self.variables, self.prime, self.precision)

    @classmethod
    def constant(cls, c: int, variables, prime=None, precision=None) -> LaurentPoly:
        return cls({(0,) * len(variables): c}, variables, prime, precision)

    @classmethod
    def monomial(cls, e, variables, c: int = 1, prime=None, precision=None) -> LaurentPoly:
        return cls({tuple(e): c}, variables, prime, precision)

    def one(self) -> LaurentPoly:
        return LaurentPoly.constant(1, self.variables, self.prime, self.precision)

    def support(self) -> list[Exponent]:
        return list(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, e: Sequence[int]) -> int:
        e = tuple(e)
        if len(e) != self.nvars:
            raise ValueError(f"exponent {e} has length {len(e)}, expected {self.nvars}")
        return self.terms.get(e, 0)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((tuple(self.terms.items()), self.ring))

    def __repr__(self):
        ring = "" if self.prime is None else f" mod {self.prime}^{self.precision}"
        return f"LaurentPoly({render(self)!r}{ring})"

    def __str__(self):
        return render(self)

    def _check(self, other: LaurentPoly) -> None:
        if self.variables != other.variables:
            raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")
        if self.ring != other.ring:
            raise PrecisionMismatch(f"ring mismatch: {self.ring} vs {other.ring}")

    def _lift(self, other) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly.constant(other, self.variables, self.prime, self.precision)
        return other

    # arithmetic

    def __add__(self, other):
        other = self._lift(other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return self._like({e: other * c for e, c in self.terms.items()})
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return power(self, n)

    def reduce(self, prime: int, precision: int) -> LaurentPoly:
        if self.prime is not None and (prime != self.prime or precision > self.precision):
            raise PrecisionMismatch(
                f"cannot move from mod {self.prime}^{self.precision} to mod {prime}^{precision}"
            )
        return LaurentPoly(self.terms, self.variables, prime, precision)

    def lift(self) -> LaurentPoly:
        """Forget the modulus, keeping canonical representatives."""
        return LaurentPoly(self.terms, self.variables)

    def map_exponents(self, f, variables=None) -> LaurentPoly:
        return LaurentPoly(
            {f(e): c for e, c in self.terms.items()},
            self.variables if variables is None else variables,
            self.prime,
            self.precision,
        )

    def total_degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def divisible_by(self, q: int) -> bool:
        return all(c % q == 0 for c in self.terms.values())


def mul(A: LaurentPoly, B: LaurentPoly) -> LaurentPoly:
    """Product of two polynomials.

    Large exact products go through a packed big-integer multiplication;
    everything else is the schoolbook double loop over the supports.
    """
    A._check(B)
    if A.modulus is None:
        packed = _dense.kronecker_exact(A.terms, B.terms, A.nvars)
        if packed is not None:
            return A._like(packed)
    out: dict = {}
    for ea, ca in A.terms.items():
        for eb, cb in B.terms.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return A._like(out)


def coefficient(poly: LaurentPoly, e: Sequence[int]) -> int:
    return poly.coefficient(e)


def frobenius_substitute(poly: LaurentPoly, p: int, times: int = 1) -> LaurentPoly:
    """Apply ``x_i -> x_i**p`` (``times`` times); integer coefficients are fixed."""
    q = p**times
    return poly.map_exponents(lambda e: tuple(q * x for x in e))


# powering


class _Region:
    """Exponents of a partial power that can still reach a target.

    With ``r`` factors of the base still to be multiplied in, an exponent
    ``e`` matters only if ``t - e`` lies in ``r * Newt`` for some target
    ``t``.
    """

    def __init__(self, poly: LaurentPoly, n: int, targets: Sequence[Exponent]):
        self.n = n
        P = newton_polytope(poly)
        self.facets = P.facets
        self.equations = P.equations
        self.targets = [t for t in targets if dilation_contains(P, n, t)]
        self.normals = np.array([a for a, _ in self.facets], dtype=np.int64).reshape(
            len(self.facets), poly.nvars
        )
        self.offsets = np.array([b for _, b in self.facets], dtype=np.int64)
        self.target_values = (
            np.array(self.targets, dtype=np.int64).reshape(len(self.targets), poly.nvars)
            @ self.normals.T
        )

    def keeps(self, e: Exponent, m: int) -> bool:
        r = self.n - m
        ae = self.normals @ np.array(e, dtype=np.int64)
        return bool(np.any(np.all(self.target_values - ae <= r * self.offsets, axis=1)))

    def mask(self, d: _dense.Dense, m: int) -> np.ndarray:
        r = self.n - m
        grids = d.grid_points()
        keep = np.zeros(d.arr.shape, dtype=bool)
        # a . x for every facet normal, broadcast over the box
        ax = [sum(int(a[i]) * g for i, g in enumerate(grids)) for a in self.normals]
        for tv in self.target_values:
            ok = np.ones(d.arr.shape, dtype=bool)
            for j, vals in enumerate(ax):
                ok &= (tv[j] - vals) <= r * self.offsets[j]
            keep |= ok
        return keep


def power(
    poly: LaurentPoly, n: int, targets: Iterable[Sequence[int]] | None = None
) -> LaurentPoly:
    """``poly ** n`` by square-and-multiply.

    With ``targets``, only the coefficients at those exponents are
    guaranteed; the returned polynomial holds exactly those.  Partial
    powers are pruned to exponents that can still contribute to a target.
    Residue coefficients with a small modulus use dense GMP-backed
    products; everything else is sparse.
    """
    if n < 0:
        raise ValueError("negative power")
    if targets is not None:
        targets = sorted({tuple(int(x) for x in t) for t in targets})
        for t in targets:
            if len(t) != poly.nvars:
                raise ValueError(f"target {t} has wrong length")
    if n == 0 or poly.is_zero():
        base = poly.one() if n == 0 else poly
        if targets is None:
            return base
        return poly._like({t: base.coefficient(t) for t in targets})
    chart = affine_chart(poly.support())
    if 0 < len(chart.pivots) < poly.nvars and n > 1:
        return _power_in_chart(poly, n, targets, chart)
    if poly.modulus is not None and poly.modulus < _dense.MAX_MODULUS and n > 1:
        return _power_dense(poly, n, targets)
    return _power_sparse(poly, n, targets)


def _power_in_chart(poly, n, targets, chart):
    """Power a polynomial whose Newton polytope is not full-dimensional.

    The support lies in a proper affine subspace, so the computation runs on
    the pivot coordinates alone and the result is lifted back.
    """
    names = [poly.variables[c] for c in chart.pivots]
    flat = LaurentPoly(
        {chart.project(e): c for e, c in poly.terms.items()}, names, poly.prime, poly.precision
    )
    if targets is None:
        out = power(flat, n)
        return poly._like({chart.lift(e, n): c for e, c in out.terms.items()})
    P = newton_polytope(poly)
    reachable = [t for t in targets if dilation_contains(P, n, t)]
    out = power(flat, n, [chart.project(t) for t in reachable])
    return poly._like({t: out.coefficient(chart.project(t)) for t in reachable})


def _chain(n: int):
    """Exponents reached by left-to-right square-and-multiply, with the step kind."""
    m = 1
    for bit in bin(n)[3:]:
        m *= 2
        yield m, "square"
        if bit == "1":
            m += 1
            yield m, "mul"


def _power_sparse(poly, n, targets):
    region = _Region(poly, n, targets) if targets is not None else None
    if region is not None and not region.targets:
        return poly._like({})
    steps = list(_chain(n))
    P = poly
    for i, (m, kind) in enumerate(steps):
        last = i == len(steps) - 1
        if last and region is not None:
            other = P if kind == "square" else poly
            out = {}
            for t in region.targets:
                s = 0
                for e, c in P.terms.items():
                    d = other.terms.get(tuple(a - b for a, b in zip(t, e)))
                    if d:
                        s += c * d
                out[t] = s
            return poly._like(out)
        P = mul(P, P) if kind == "square" else mul(P, poly)
        if region is not None:
            P = P._like({e: c for e, c in P.terms.items() if region.keeps(e, m)})
    if region is not None:
        return poly._like({t: P.coefficient(t) for t in targets})
    return P


def _power_dense(poly, n, targets):
    M = poly.modulus
    region = _Region(poly, n, targets) if targets is not None else None
    if region is not None and not region.targets:
        return poly._like({})
    base = _dense.Dense.from_terms(poly.terms, poly.nvars, M)
    steps = list(_chain(n))
    P = base
    for i, (m, kind) in enumerate(steps):
        other = P if kind == "square" else base
        if i == len(steps) - 1 and region is not None:
            return poly._like(
                {t: P.product_coefficient(other, t, M) for t in region.targets}
            )
        P = P.mul(other, M)
        if region is not None:
            P = P.masked(region.mask(P, m))
    if region is not None:
        return poly._like({t: P.coefficient(t) for t in targets})
    return poly._like(P.to_terms())


# text and JSON forms

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            out.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^()":
                raise ParseError(f"unexpected character {ch!r}", start)
            out.append((ch, ch, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text, variables):
        self.toks = _tokenize(text)
        self.i = 0
        self.variables = tuple(variables)
        self.index = {v: i for i, v in enumerate(self.variables)}

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> LaurentPoly:
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        result = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return result

    def expr(self):
        acc = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.peek()[0] == "*":
            self.take()
            acc = acc * self.unary()
        return acc

    def unary(self):
        kind = self.peek()[0]
        if kind in "+-":
            self.take()
            val = self.unary()
            return -val if kind == "-" else val
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] != "^":
            return base
        self.take()
        exp = self.exponent()
        if exp >= 0:
            return base**exp
        if len(base.terms) == 1:
            (e, c), = base.terms.items()
            if c in (1, -1):
                return base._like({tuple(x * exp for x in e): c ** (-exp)})
        raise ParseError("negative power of a non-invertible expression", self.toks[self.i - 1][2])

    def exponent(self) -> int:
        tok = self.peek()
        if tok[0] == "(":
            self.take()
            val = self.exponent()
            self.take(")")
            return val
        sign = 1
        if tok[0] in "+-":
            self.take()
            sign = -1 if tok[0] == "-" else 1
        return sign * self.take("int")[1]

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            return LaurentPoly.constant(val, self.variables)
        if kind == "name":
            self.take()
            if val not in self.index:
                raise ParseError(f"unknown variable {val!r}", pos)
            e = [0] * len(self.variables)
            e[self.index[val]] = 1
            return LaurentPoly.monomial(e, self.variables)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        what = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"unexpected {what}", pos)


def parse(text: str, variables: Sequence[str]) -> LaurentPoly:
    """Parse integer-coefficient Laurent polynomial text such as ``"x - x^-1"``."""
    return _Parser(text, variables).parse()


def _monomial_text(e, variables) -> str:
    parts = []
    for x, name in zip(e, variables):
        if x == 1:
            parts.append(name)
        elif x:
            parts.append(f"{name}^{x}")
    return "*".join(parts)


def render(poly: LaurentPoly) -> str:
    """Canonical text form; terms in descending lexicographic exponent order."""
    if poly.is_zero():
        return "0"
    out = []
    for e, c in reversed(poly.terms.items()):
        mono = _monomial_text(e, poly.variables)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        out.append((sign, body))
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


def to_json(poly: LaurentPoly) -> dict:
    return {
        "variables": list(poly.variables),
        "terms": [
            {"coefficient": str(c), "exponents": list(e)} for e, c in poly.terms.items()
        ],
    }


def from_json(data: dict | str) -> LaurentPoly:
    if isinstance(data, str):
        data = json.loads(data)
    variables = data["variables"]
    terms = {}
    for t in data["terms"]:
        e = tuple(int(x) for x in t["exponents"])
        terms[e] = terms.get(e, 0) + int(t["coefficient"])
    return LaurentPoly(terms, variables)
