"""Exact sparse Laurent polynomials over arbitrary-precision integers.

A polynomial is a finite map from monomials to nonzero integer coefficients.
A monomial is a finite map from variable names to nonzero (possibly negative)
exponents, stored as a tuple of ``(variable, exponent)`` pairs sorted by
variable name, so that monomials hash and compare structurally:

    q^2 * t^-1  ->  (("q", 2), ("t", -1))
    1           ->  ()

Coefficients are plain Python ints, so sums like n! never overflow.  All
operations are pure and return new values; instances are immutable.

Canonical form is maintained everywhere: no zero coefficients, no zero
exponents.  Term order, wherever an order is needed (text and JSON output),
is graded lexicographic on the exponent vector over the polynomial's
variables sorted by name, ascending.
"""

from __future__ import annotations

import json
from typing import Iterable, Iterator, Mapping, Union

__all__ = [
    "Monomial",
    "Poly",
    "PolynomialError",
    "ZeroPolynomial",
    "NegativeExponentAtZero",
    "serialize",
    "deserialize",
]

# ((variable, exponent), ...) sorted by variable, exponents nonzero.
Monomial = tuple[tuple[str, int], ...]


class PolynomialError(ValueError):
    """Base class for polynomial arithmetic errors."""


class ZeroPolynomial(PolynomialError):
    """Degree queried on the zero polynomial."""


class NegativeExponentAtZero(PolynomialError):
    """Substituted 0 into a variable that occurs with a negative exponent."""


def _monomial(exponents: Mapping[str, int]) -> Monomial:
    return tuple(sorted((v, e) for v, e in exponents.items() if e != 0))


def _mul_monomials(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    merged = dict(a)
    for v, e in b:
        s = merged.get(v, 0) + e
        if s:
            merged[v] = s
        else:
            del merged[v]
    return tuple(sorted(merged.items()))


class Poly:
    """Immutable sparse Laurent polynomial with integer coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Union[Monomial, Mapping[str, int]], int] | None = None):
        table: dict[Monomial, int] = {}
        if terms:
            for mono, coeff in terms.items():
                if not coeff:
                    continue
                if not isinstance(mono, tuple):
                    mono = _monomial(mono)
                table[mono] = table.get(mono, 0) + coeff
                if not table[mono]:
                    del table[mono]
        object.__setattr__(self, "_terms", table)

    @classmethod
    def _raw(cls, table: dict[Monomial, int]) -> "Poly":
        """Wrap an already-canonical term table without copying (internal)."""
        p = object.__new__(cls)
        object.__setattr__(p, "_terms", table)
        return p

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "Poly":
        return cls._raw({(): 1})

    @classmethod
    def const(cls, value: int) -> "Poly":
        return cls._raw({(): value} if value else {})

    @classmethod
    def var(cls, name: str, exponent: int = 1) -> "Poly":
        if not name or not name.replace("_", "a").isalnum() or name[0].isdigit():
            raise PolynomialError(f"invalid variable name: {name!r}")
        if exponent == 0:
            return cls.one()
        return cls._raw({((name, exponent),): 1})

    @classmethod
    def monomial(cls, exponents: Mapping[str, int], coeff: int = 1) -> "Poly":
        if not coeff:
            return cls.zero()
        return cls._raw({_monomial(exponents): coeff})

    # -- inspection --------------------------------------------------------

    def items(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def variables(self) -> tuple[str, ...]:
        seen = {v for mono in self._terms for v, _ in mono}
        return tuple(sorted(seen))

    def coefficient(self, exponents: Mapping[str, int]) -> int:
        return self._terms.get(_monomial(exponents), 0)

    def constant_term(self) -> int:
        return self._terms.get((), 0)

    def coefficient_sum(self) -> int:
        """Sum of all coefficients; equals specializing every variable to 1."""
        return sum(self._terms.values())

    def is_constant(self) -> bool:
        return all(not mono for mono in self._terms)

    def degree(self, variable: str) -> int:
        """Largest exponent of *variable* over all terms (0 if absent)."""
        if not self._terms:
            raise ZeroPolynomial("degree of the zero polynomial is undefined")
        return max(dict(mono).get(variable, 0) for mono in self._terms)

    def min_degree(self, variable: str) -> int:
        """Smallest exponent of *variable* over all terms (0 if absent)."""
        if not self._terms:
            raise ZeroPolynomial("min_degree of the zero polynomial is undefined")
        return min(dict(mono).get(variable, 0) for mono in self._terms)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: Union["Poly", int]) -> "Poly":
        other = _coerce(other)
        if not self._terms:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            s = out.get(mono, 0) + coeff
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({mono: -c for mono, c in self._terms.items()})

    def __sub__(self, other: Union["Poly", int]) -> "Poly":
        return self + (-_coerce(other))

    def __rsub__(self, other: Union["Poly", int]) -> "Poly":
        return _coerce(other) + (-self)

    def __mul__(self, other: Union["Poly", int]) -> "Poly":
        other = _coerce(other)
        if not self._terms or not other._terms:
            return Poly.zero()
        out: dict[Monomial, int] = {}
        for mono_a, ca in self._terms.items():
            for mono_b, cb in other._terms.items():
                mono = _mul_monomials(mono_a, mono_b)
                s = out.get(mono, 0) + ca * cb
                if s:
                    out[mono] = s
                else:
                    del out[mono]
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if not isinstance(exponent, int):
            raise PolynomialError("polynomial powers must be integers")
        if exponent < 0:
            # Only unit monomials (single term, coefficient +-1) are invertible.
            if len(self._terms) != 1:
                raise PolynomialError("negative power of a non-monomial")
            (mono, coeff), = self._terms.items()
            if coeff not in (1, -1):
                raise PolynomialError("negative power of a non-unit coefficient")
            inv_coeff = coeff if exponent % 2 else 1
            inv = tuple(sorted((v, e * exponent) for v, e in mono))
            return Poly._raw({inv: inv_coeff})
        result = Poly.one()
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # -- substitution ------------------------------------------------------

    def specialize(self, bindings: Mapping[str, Union[int, "Poly"]]) -> "Poly":
        """Simultaneously substitute variables by integers or monomials.

        A variable may be bound to an int, or to a monomial (a single-term
        polynomial with coefficient 1, e.g. ``Poly.var("q") ** 2``), which
        is how compound statistics such as sigma + 2*tau are formed.
        Substituting 0 into a variable that occurs with a negative exponent
        raises :class:`NegativeExponentAtZero`.
        """
        plan: dict[str, tuple[str, object]] = {}
        for v, value in bindings.items():
            if isinstance(value, Poly):
                if not value._terms:
                    plan[v] = ("int", 0)
                    continue
                if len(value._terms) == 1:
                    (mono, coeff), = value._terms.items()
                    if not mono:
                        plan[v] = ("int", coeff)
                        continue
                    if coeff == 1:
                        plan[v] = ("mono", mono)
                        continue
                raise PolynomialError(
                    f"binding for {v!r} must be an integer or a monomial with coefficient 1"
                )
            elif isinstance(value, int):
                plan[v] = ("int", value)
            else:
                raise PolynomialError(f"unsupported binding for {v!r}: {value!r}")

        out: dict[Monomial, int] = {}
        for mono, coeff in self._terms.items():
            new_exps: dict[str, int] = {}
            dead = False
            for v, e in mono:
                action = plan.get(v)
                if action is None:
                    new_exps[v] = new_exps.get(v, 0) + e
                    continue
                kind, value = action
                if kind == "int":
                    k = value
                    if k == 0:
                        if e < 0:
                            raise NegativeExponentAtZero(
                                f"cannot substitute 0 into {v}^{e}"
                            )
                        dead = True
                        break
                    if e < 0 and k not in (1, -1):
                        raise PolynomialError(
                            f"cannot substitute non-unit {k} into {v}^{e}"
                        )
                    if k == -1 or k == 1:
                        coeff = coeff * (-1 if (k == -1 and e % 2) else 1)
                    else:
                        coeff = coeff * k**e
                else:
                    for bv, be in value:  # type: ignore[union-attr]
                        new_exps[bv] = new_exps.get(bv, 0) + be * e
            if dead:
                continue
            key = tuple(sorted((v, e) for v, e in new_exps.items() if e))
            s = out.get(key, 0) + coeff
            if s:
                out[key] = s
            else:
                del out[key]
        return Poly._raw(out)

    # -- rendering ---------------------------------------------------------

    def _sorted_terms(self) -> list[tuple[Monomial, int]]:
        names = self.variables()

        def key(item: tuple[Monomial, int]):
            exps = dict(item[0])
            vec = tuple(exps.get(v, 0) for v in names)
            return (sum(vec), vec)

        return sorted(self._terms.items(), key=key)

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for mono, coeff in self._sorted_terms():
            factors = [v if e == 1 else f"{v}^{e}" for v, e in mono]
            if not factors:
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(coeff))] + factors)
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(pieces)

    def to_json_dict(self) -> dict:
        terms = [
            {"exponents": {v: e for v, e in mono}, "coeff": str(coeff)}
            for mono, coeff in self._sorted_terms()
        ]
        return {"terms": terms}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "Poly":
        if not isinstance(data, Mapping) or "terms" not in data:
            raise PolynomialError("polynomial JSON must be an object with a 'terms' list")
        table: dict[Monomial, int] = {}
        for term in data["terms"]:
            exps = term["exponents"]
            coeff = int(term["coeff"])
            if not coeff:
                continue
            mono = _monomial({str(v): int(e) for v, e in exps.items()})
            table[mono] = table.get(mono, 0) + coeff
            if not table[mono]:
                del table[mono]
        return cls._raw(table)

    @classmethod
    def from_json(cls, text: Union[str, bytes]) -> "Poly":
        return cls.from_json_dict(json.loads(text))

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Poly({self.to_text()})"


def _coerce(value: Union[Poly, int]) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, int):
        return Poly.const(value)
    raise PolynomialError(f"cannot treat {value!r} as a polynomial")


def serialize(p: Poly, format: str = "text") -> bytes:
    """Serialize to bytes in the requested format ("text" or "json")."""
    if format == "text":
        return p.to_text().encode()
    if format == "json":
        return p.to_json().encode()
    raise PolynomialError(f"unknown serialization format: {format!r}")


def deserialize(data: Union[str, bytes], format: str = "json") -> Poly:
    """Parse a polynomial serialized by :func:`serialize` (JSON only)."""
    if format != "json":
        raise PolynomialError(f"cannot parse format: {format!r}")
    return Poly.from_json(data)
