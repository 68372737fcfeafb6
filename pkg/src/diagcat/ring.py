"""Exact coefficient rings.

Elements are plain Python values chosen per ring so that the hot loops of the
homology code stay cheap:

* ``Integers``      -> ``int``
* ``IntegersMod(m)`` and ``PrimeField(p)`` -> ``int`` in ``range(m)``
* ``Rationals``     -> ``fractions.Fraction``
* ``ParamPoly`` / ``ParamLaurent`` -> :class:`Poly`, a bivariate (Laurent)
  polynomial in the diagram parameters delta and epsilon.

All arithmetic goes through a :class:`RingSpec`, which normalises after every
operation so that structural equality is semantic equality.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Mapping, Union

__all__ = [
    "Poly",
    "RingSpec",
    "RingError",
    "NotAUnitError",
    "ZZ",
    "QQ",
    "POLY",
    "LAURENT",
    "integers_mod",
    "prime_field",
    "parse_ring",
]


class RingError(ValueError):
    pass


class NotAUnitError(RingError):
    """Raised by operations that need an inverse the ring does not have."""


class Poly:
    """Finite map ``(delta_exp, eps_exp) -> nonzero int``.

    Immutable and hashable.  Exponents may be negative; whether that is allowed
    is decided by the owning :class:`RingSpec`.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, int], int] = {}
        for (a, b), c in items:
            key = (int(a), int(b))
            acc[key] = acc.get(key, 0) + int(c)
        self._terms = tuple(sorted((k, c) for k, c in acc.items() if c))
        self._hash = None

    @classmethod
    def constant(cls, c: int) -> "Poly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, a: int, b: int, c: int = 1) -> "Poly":
        return cls({(a, b): c})

    @property
    def terms(self) -> tuple[tuple[tuple[int, int], int], ...]:
        return self._terms

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def min_exponents(self) -> tuple[int, int]:
        if not self._terms:
            return (0, 0)
        return (min(a for (a, _), _ in self._terms), min(b for (_, b), _ in self._terms))

    def __add__(self, other: "Poly") -> "Poly":
        d = dict(self._terms)
        for k, c in other._terms:
            d[k] = d.get(k, 0) + c
        return Poly(d)

    def __neg__(self) -> "Poly":
        return Poly({k: -c for k, c in self._terms})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        d: dict[tuple[int, int], int] = {}
        for (a1, b1), c1 in self._terms:
            for (a2, b2), c2 in other._terms:
                k = (a1 + a2, b1 + b2)
                d[k] = d.get(k, 0) + c1 * c2
        return Poly(d)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poly) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __repr__(self) -> str:
        return f"Poly({dict(self._terms)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (a, b), c in self._terms:
            mono = "".join(
                s for s in (_power("d", a), _power("e", b)) if s
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _power(sym: str, k: int) -> str:
    if k == 0:
        return ""
    return sym if k == 1 else f"{sym}^{k}"


Elem = Union[int, Fraction, Poly]

_KINDS = ("Integers", "IntegersMod", "PrimeField", "Rationals", "ParamPoly", "ParamLaurent")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % k for k in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class RingSpec:
    """One of the supported commutative rings.

    ``modulus`` is only meaningful for ``IntegersMod`` and ``PrimeField``.
    """

    kind: str
    modulus: int = 0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise RingError(f"unknown ring kind {self.kind!r}")
        if self.kind == "IntegersMod" and self.modulus < 1:
            raise RingError("IntegersMod needs a positive modulus")
        if self.kind == "PrimeField" and not _is_prime(self.modulus):
            raise RingError(f"{self.modulus} is not prime")
        if self.kind not in ("IntegersMod", "PrimeField") and self.modulus:
            raise RingError(f"{self.kind} takes no modulus")

    # -- classification ---------------------------------------------------

    @property
    def is_parametric(self) -> bool:
        return self.kind in ("ParamPoly", "ParamLaurent")

    @property
    def is_modular(self) -> bool:
        return self.kind in ("IntegersMod", "PrimeField")

    @property
    def is_field(self) -> bool:
        if self.kind == "PrimeField" or self.kind == "Rationals":
            return True
        return self.kind == "IntegersMod" and _is_prime(self.modulus)

    @property
    def characteristic(self) -> int:
        return self.modulus if self.is_modular else 0

    def __str__(self) -> str:
        return {
            "Integers": "Z",
            "Rationals": "Q",
            "ParamPoly": "Z[d,e]",
            "ParamLaurent": "Z[d^±1,e^±1]",
        }.get(self.kind) or (
            f"F{self.modulus}" if self.kind == "PrimeField" else f"Z/{self.modulus}"
        )

    # -- construction -----------------------------------------------------

    def __call__(self, x: Any) -> Elem:
        """Coerce ``x`` into this ring."""
        k = self.kind
        if k == "Integers":
            if isinstance(x, Fraction) and x.denominator == 1:
                return int(x.numerator)
            if isinstance(x, bool) or not isinstance(x, int):
                raise RingError(f"{x!r} is not an integer")
            return x
        if self.is_modular:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.modulus)) % self.modulus
            if not isinstance(x, int):
                raise RingError(f"cannot coerce {x!r} into {self}")
            return x % self.modulus
        if k == "Rationals":
            return Fraction(x)
        if isinstance(x, int):
            return Poly.constant(x)
        if isinstance(x, Poly):
            if k == "ParamPoly" and min(x.min_exponents()) < 0:
                raise RingError("ParamPoly exponents must be non-negative")
            return x
        raise RingError(f"cannot coerce {x!r} into {self}")

    @property
    def zero(self) -> Elem:
        return self(0)

    @property
    def one(self) -> Elem:
        return self(1)

    def delta(self) -> Poly:
        """The formal parameter delta (parameter rings only)."""
        if not self.is_parametric:
            raise RingError(f"{self} has no formal delta")
        return Poly.monomial(1, 0)

    def eps(self) -> Poly:
        if not self.is_parametric:
            raise RingError(f"{self} has no formal epsilon")
        return Poly.monomial(0, 1)

    # -- arithmetic -------------------------------------------------------

    def add(self, x: Elem, y: Elem) -> Elem:
        if self.is_modular:
            return (x + y) % self.modulus
        return x + y

    def sub(self, x: Elem, y: Elem) -> Elem:
        if self.is_modular:
            return (x - y) % self.modulus
        return x - y

    def neg(self, x: Elem) -> Elem:
        if self.is_modular:
            return (-x) % self.modulus
        return -x

    def mul(self, x: Elem, y: Elem) -> Elem:
        if self.is_modular:
            return (x * y) % self.modulus
        return x * y

    def is_zero(self, x: Elem) -> bool:
        if isinstance(x, Poly):
            return x.is_zero()
        return x == 0

    def pow(self, x: Elem, k: int) -> Elem:
        if k < 0:
            inv = self.try_invert(x)
            if inv is None:
                raise NotAUnitError(f"{x} is not a unit in {self}")
            return self.pow(inv, -k)
        result = self.one
        base = x
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def try_invert(self, x: Elem) -> Elem | None:
        """Return the inverse of ``x``, or ``None`` if ``x`` is not a unit."""
        k = self.kind
        if k == "Integers":
            return x if x in (1, -1) else None
        if self.is_modular:
            if math.gcd(x, self.modulus) != 1:
                return None
            return pow(x, -1, self.modulus) if self.modulus > 1 else 0
        if k == "Rationals":
            return None if x == 0 else 1 / x
        # units of Z[d,e] are +-1; units of the Laurent ring are +-monomials
        if not x.is_monomial():
            return None
        (a, b), c = x.terms[0]
        if c not in (1, -1):
            return None
        if k == "ParamPoly" and (a, b) != (0, 0):
            return None
        return Poly.monomial(-a, -b, c)

    def is_unit(self, x: Elem) -> bool:
        return self.try_invert(x) is not None

    def evaluate_parameters(self, a: int, b: int, delta: Elem, eps: Elem) -> Elem:
        """``delta**a * eps**b``; the prefactor produced by diagram composition."""
        if a == 0 and b == 0:
            return self.one
        return self.mul(self.pow(delta, a), self.pow(eps, b))

    def specialize(self, poly: Poly, delta: Elem, eps: Elem) -> Elem:
        """Evaluate a parameter polynomial at ``delta``, ``eps`` in this ring."""
        acc = self.zero
        for (a, b), c in poly.terms:
            acc = self.add(acc, self.mul(self(c), self.evaluate_parameters(a, b, delta, eps)))
        return acc

    def sum(self, xs: Iterable[Elem]) -> Elem:
        acc = self.zero
        for x in xs:
            acc = self.add(acc, x)
        return acc

    # -- serialisation ----------------------------------------------------

    def to_json(self) -> dict:
        d: dict[str, Any] = {"kind": self.kind}
        if self.is_modular:
            d["modulus"] = self.modulus
        return d

    @classmethod
    def from_json(cls, obj: Mapping) -> "RingSpec":
        return cls(obj["kind"], int(obj.get("modulus", 0)))

    def elem_to_json(self, x: Elem) -> Any:
        if isinstance(x, Poly):
            return {"monomials": [[a, b, c] for (a, b), c in x.terms]}
        if isinstance(x, Fraction):
            return str(x)
        return x

    def elem_from_json(self, obj: Any) -> Elem:
        if isinstance(obj, Mapping):
            return self(Poly({(a, b): c for a, b, c in obj["monomials"]}))
        if isinstance(obj, str):
            return self(Fraction(obj))
        return self(obj)

    def parse_elem(self, text: str) -> Elem:
        """Parse a parameter value given on the command line.

        Accepts integers, fractions (``Rationals``), and the formal generators
        ``delta``/``d`` and ``eps``/``e`` in the parameter rings.
        """
        t = text.strip().lower()
        if t in ("delta", "d"):
            return self.delta()
        if t in ("eps", "epsilon", "e"):
            return self.eps()
        try:
            return self(Fraction(t) if "/" in t else int(t))
        except ValueError as exc:
            raise RingError(f"cannot parse {text!r} as an element of {self}") from exc


ZZ = RingSpec("Integers")
QQ = RingSpec("Rationals")
POLY = RingSpec("ParamPoly")
LAURENT = RingSpec("ParamLaurent")


def integers_mod(m: int) -> RingSpec:
    return RingSpec("IntegersMod", m)


def prime_field(p: int) -> RingSpec:
    return RingSpec("PrimeField", p)


_RING_ALIASES = {
    "z": ZZ,
    "zz": ZZ,
    "integers": ZZ,
    "q": QQ,
    "qq": QQ,
    "rationals": QQ,
    "poly": POLY,
    "laurent": LAURENT,
}


def parse_ring(text: str) -> RingSpec:
    """Parse ``z``, ``q``, ``f5``/``gf5``, ``zmod6``/``z/6``, ``poly``, ``laurent``."""
    t = text.strip().lower()
    if t in _RING_ALIASES:
        return _RING_ALIASES[t]
    m = re.fullmatch(r"(?:f|gf|fp)\(?(\d+)\)?", t)
    if m:
        return prime_field(int(m.group(1)))
    m = re.fullmatch(r"(?:zmod|z/|z_)\(?(\d+)\)?", t)
    if m:
        return integers_mod(int(m.group(1)))
    raise RingError(f"unknown ring {text!r}")
