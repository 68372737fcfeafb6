"""The five diagram algebra families as sparse algebras over a ring."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Any, Iterable, Iterator, Mapping

from .diagram import Diagram, DiagramError, classify, compose, diagram_permutation, identity
from .ring import Elem, RingSpec, parse_ring

__all__ = [
    "Family",
    "FamilyError",
    "ClosureError",
    "AlgebraContext",
    "AlgebraElement",
    "basis",
    "multiply",
    "filtration_basis",
    "quotient_context",
    "augmentation",
    "canonical_retract",
    "rho",
    "matchings",
]


class FamilyError(ValueError):
    pass


class ClosureError(AssertionError):
    """A product left its family; this must never happen."""


class Family(str, Enum):
    ROOK_BRAUER = "rbr"
    ROOK = "rook"
    BRAUER = "br"
    TEMPERLEY_LIEB = "tl"
    ROOK_TEMPERLEY_LIEB = "rtl"

    @classmethod
    def parse(cls, text: str) -> "Family":
        t = text.strip().lower().replace("_", "-")
        aliases = {
            "rook-brauer": cls.ROOK_BRAUER,
            "rookbrauer": cls.ROOK_BRAUER,
            "brauer": cls.BRAUER,
            "temperley-lieb": cls.TEMPERLEY_LIEB,
            "temperleylieb": cls.TEMPERLEY_LIEB,
            "rook-temperley-lieb": cls.ROOK_TEMPERLEY_LIEB,
            "rook-tl": cls.ROOK_TEMPERLEY_LIEB,
            "r": cls.ROOK,
        }
        if t in aliases:
            return aliases[t]
        try:
            return cls(t)
        except ValueError:
            raise FamilyError(f"unknown family {text!r}") from None

    @property
    def allows_missing(self) -> bool:
        return self in (Family.ROOK_BRAUER, Family.ROOK, Family.ROOK_TEMPERLEY_LIEB)

    @property
    def planar(self) -> bool:
        return self in (Family.TEMPERLEY_LIEB, Family.ROOK_TEMPERLEY_LIEB)

    def contains(self, d: Diagram) -> bool:
        f = classify(d)
        if self is Family.ROOK:
            return not (f.has_left_left or f.has_right_right)
        if self is Family.BRAUER:
            return not f.has_missing
        if self is Family.TEMPERLEY_LIEB:
            return f.planar and not f.has_missing
        if self is Family.ROOK_TEMPERLEY_LIEB:
            return f.planar
        return True


def _boundary_node(n: int, pos: int) -> int:
    """Cyclic boundary position (left top to bottom, right bottom to top) to node."""
    return pos if pos <= n else 3 * n + 1 - pos


def _noncrossing(positions: tuple[int, ...], allow_missing: bool) -> Iterator[list[tuple[int, int]]]:
    if not positions:
        yield []
        return
    first, rest = positions[0], positions[1:]
    if allow_missing:
        yield from _noncrossing(rest, allow_missing)
    # inner segment must match up among itself, so only even offsets when perfect
    for k in range(len(rest)):
        if not allow_missing and k % 2:
            continue
        for inner in _noncrossing(rest[:k], allow_missing):
            for outer in _noncrossing(rest[k + 1 :], allow_missing):
                yield [(first, rest[k])] + inner + outer


def _all_matchings(nodes: tuple[int, ...], allow_missing: bool) -> Iterator[list[tuple[int, int]]]:
    if not nodes:
        yield []
        return
    first, rest = nodes[0], nodes[1:]
    if allow_missing:
        yield from _all_matchings(rest, allow_missing)
    for k, other in enumerate(rest):
        for m in _all_matchings(rest[:k] + rest[k + 1 :], allow_missing):
            yield [(first, other)] + m


def _rook_matchings(n: int) -> Iterator[list[tuple[int, int]]]:
    def rec(i: int, used: frozenset) -> Iterator[list[tuple[int, int]]]:
        if i > n:
            yield []
            return
        for m in rec(i + 1, used):
            yield m
        for j in range(1, n + 1):
            if j not in used:
                for m in rec(i + 1, used | {j}):
                    yield [(i, n + j)] + m

    yield from rec(1, frozenset())


def matchings(family: Family, n: int) -> list[Diagram]:
    """Every diagram of ``family`` on ``n`` strands, generated directly."""
    return list(_matchings(_coerce_family(family), n))


@lru_cache(maxsize=64)
def _matchings(family: Family, n: int) -> tuple[Diagram, ...]:
    if n < 1:
        raise FamilyError("n must be positive")
    if family is Family.ROOK:
        raw: Iterable = _rook_matchings(n)
    elif family.planar:
        pos = tuple(range(1, 2 * n + 1))
        raw = (
            [(_boundary_node(n, a), _boundary_node(n, b)) for a, b in m]
            for m in _noncrossing(pos, family.allows_missing)
        )
    else:
        raw = _all_matchings(tuple(range(1, 2 * n + 1)), family.allows_missing)
    return tuple(sorted(Diagram.from_edges(n, m) for m in raw))


def _coerce_family(f: Family | str) -> Family:
    return f if isinstance(f, Family) else Family.parse(f)


@dataclass(frozen=True)
class AlgebraContext:
    """A family algebra over ``ring`` with parameters, optionally truncated.

    With ``floor = k`` the algebra is the quotient by the ideal spanned by
    diagrams with at most ``k`` through strands.
    """

    family: Family
    n: int
    ring: RingSpec
    delta: Elem
    eps: Elem
    floor: int | None = None
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "family", _coerce_family(self.family))
        if self.n < 1:
            raise FamilyError("n must be positive")
        object.__setattr__(self, "delta", self.ring(self.delta))
        object.__setattr__(self, "eps", self.ring(self.eps))
        if self.floor is not None and not 0 <= self.floor < self.n:
            raise FamilyError(f"floor must lie in [0, {self.n}), got {self.floor}")

    @classmethod
    def formal(cls, family: Family | str, n: int, ring: RingSpec | None = None, floor=None):
        """Context with delta and epsilon the formal generators."""
        from .ring import POLY

        ring = ring or POLY
        return cls(_coerce_family(family), n, ring, ring.delta(), ring.eps(), floor)

    # -- basis ------------------------------------------------------------

    @property
    def basis(self) -> list[Diagram]:
        if "basis" not in self._cache:
            full = matchings(self.family, self.n)
            k = -1 if self.floor is None else self.floor
            self._cache["basis"] = [d for d in full if d.through_count > k]
        return self._cache["basis"]

    @property
    def index(self) -> dict[Diagram, int]:
        if "index" not in self._cache:
            self._cache["index"] = {d: i for i, d in enumerate(self.basis)}
        return self._cache["index"]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def unit_index(self) -> int | None:
        return self.index.get(identity(self.n))

    def prefactor(self, a: int, b: int) -> Elem:
        key = ("pre", a, b)
        if key not in self._cache:
            self._cache[key] = self.ring.evaluate_parameters(a, b, self.delta, self.eps)
        return self._cache[key]

    # -- products -----------------------------------------------------------

    def compose_checked(self, x: Diagram, y: Diagram):
        """``compose(x, y)`` plus the family-closure and exponent assertions."""
        prod = compose(x, y)
        if not self.family.contains(prod.diagram):
            raise ClosureError(f"{x} * {y} = {prod.diagram} leaves {self.family.value}")
        if self.family is Family.ROOK and prod.delta_exp:
            raise ClosureError(f"rook product {x} * {y} produced a loop")
        if self.family in (Family.BRAUER, Family.TEMPERLEY_LIEB) and prod.eps_exp:
            raise ClosureError(f"{self.family.value} product {x} * {y} produced epsilon")
        return prod

    def product_index(self, i: int, j: int) -> tuple[int, Elem] | None:
        """Product of basis elements ``i`` and ``j`` as ``(index, coeff)``, or None."""
        key = (i, j)
        table = self._cache.setdefault("table", {})
        if key in table:
            return table[key]
        b = self.basis
        prod = self.compose_checked(b[i], b[j])
        out = None
        if self.floor is None or prod.diagram.through_count > self.floor:
            c = self.prefactor(prod.delta_exp, prod.eps_exp)
            if not self.ring.is_zero(c):
                out = (self.index[prod.diagram], c)
        table[key] = out
        return out

    # -- serialisation ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "family": self.family.value,
            "n": self.n,
            "ring": self.ring.to_json(),
            "delta": self.ring.elem_to_json(self.delta),
            "eps": self.ring.elem_to_json(self.eps),
            "floor": self.floor,
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "AlgebraContext":
        ring = RingSpec.from_json(obj["ring"]) if isinstance(obj["ring"], Mapping) else parse_ring(obj["ring"])
        return cls(
            Family.parse(obj["family"]),
            int(obj["n"]),
            ring,
            ring.elem_from_json(obj["delta"]),
            ring.elem_from_json(obj["eps"]),
            obj.get("floor"),
        )

    def same_algebra(self, other: "AlgebraContext") -> bool:
        return self == other

    def element(self, coeffs: Mapping[Diagram, Any] | Iterable = ()) -> "AlgebraElement":
        return AlgebraElement.make(self, coeffs)

    def one(self) -> "AlgebraElement":
        return self.element({identity(self.n): 1})


class AlgebraElement:
    """A sparse linear combination of basis diagrams."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: AlgebraContext, coeffs: dict[Diagram, Elem]):
        self.ctx = ctx
        self.coeffs = coeffs

    @classmethod
    def make(cls, ctx: AlgebraContext, coeffs: Mapping[Diagram, Any] | Iterable = ()) -> "AlgebraElement":
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        ring = ctx.ring
        out: dict[Diagram, Elem] = {}
        for d, c in items:
            if d.n != ctx.n or not ctx.family.contains(d):
                raise FamilyError(f"{d} is not a {ctx.family.value} diagram on {ctx.n} strands")
            if ctx.floor is not None and d.through_count <= ctx.floor:
                continue
            c = ring.add(out.get(d, ring.zero), ring(c))
            out[d] = c
        return cls(ctx, {d: c for d, c in out.items() if not ring.is_zero(c)})

    def _check(self, other: "AlgebraElement") -> None:
        if self.ctx != other.ctx:
            raise FamilyError("elements live in different algebra contexts")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        ring = self.ctx.ring
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            s = ring.add(out.get(d, ring.zero), c)
            if ring.is_zero(s):
                out.pop(d, None)
            else:
                out[d] = s
        return AlgebraElement(self.ctx, out)

    def __neg__(self) -> "AlgebraElement":
        ring = self.ctx.ring
        return AlgebraElement(self.ctx, {d: ring.neg(c) for d, c in self.coeffs.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, r: Elem) -> "AlgebraElement":
        ring = self.ctx.ring
        r = ring(r)
        out = {d: ring.mul(r, c) for d, c in self.coeffs.items()}
        return AlgebraElement(self.ctx, {d: c for d, c in out.items() if not ring.is_zero(c)})

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return multiply(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def sorted_terms(self) -> list[tuple[Diagram, Elem]]:
        return sorted(self.coeffs.items(), key=lambda t: t[0])

    def to_json(self) -> list:
        ring = self.ctx.ring
        return [[d.to_json(), ring.elem_to_json(c)] for d, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, ctx: AlgebraContext, obj: list) -> "AlgebraElement":
        return cls.make(ctx, [(Diagram.from_json(d), ctx.ring.elem_from_json(c)) for d, c in obj])

    def __repr__(self) -> str:
        terms = " + ".join(f"({c})*{d}" for d, c in self.sorted_terms()) or "0"
        return f"AlgebraElement[{terms}]"


def basis(ctx: AlgebraContext) -> list[Diagram]:
    return list(ctx.basis)


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Bilinear extension of diagram composition, truncated at the floor."""
    a._check(b)
    ctx = a.ctx
    ring = ctx.ring
    idx = ctx.index
    out: dict[Diagram, Elem] = {}
    for x, cx in a.coeffs.items():
        i = idx[x]
        for y, cy in b.coeffs.items():
            hit = ctx.product_index(i, idx[y])
            if hit is None:
                continue
            k, c = hit
            d = ctx.basis[k]
            term = ring.mul(ring.mul(cx, cy), c)
            out[d] = ring.add(out.get(d, ring.zero), term)
    return AlgebraElement(ctx, {d: c for d, c in out.items() if not ring.is_zero(c)})


def filtration_basis(ctx: AlgebraContext, i: int) -> list[Diagram]:
    """Basis diagrams with at most ``i`` through strands (a basis of ``A ∩ I_i``)."""
    if not 0 <= i <= ctx.n:
        raise FamilyError(f"filtration index {i} out of range")
    return [d for d in ctx.basis if d.through_count <= i]


def quotient_context(ctx: AlgebraContext, k: int) -> AlgebraContext:
    if ctx.floor is not None:
        raise FamilyError("context is already a quotient")
    if not 0 <= k < ctx.n:
        raise FamilyError(f"quotient floor must lie in [0, {ctx.n}), got {k}")
    return AlgebraContext(ctx.family, ctx.n, ctx.ring, ctx.delta, ctx.eps, k)


def augmentation(ctx: AlgebraContext, d: Diagram) -> Elem:
    """Action of ``d`` on the trivial module: 1 on permutation diagrams, else 0."""
    return ctx.ring.one if d.through_count == ctx.n else ctx.ring.zero


def canonical_retract(ctx: AlgebraContext) -> tuple[list[tuple[int, ...]], dict[str, bool]]:
    """The permutation group underlying the full-through subalgebra, with checks.

    The report records closure of the group, agreement of diagram composition
    with permutation composition, and that the projection killing diagrams
    with fewer than ``n`` through strands is multiplicative (so the quotient
    followed by the inclusion is the identity on the subalgebra).
    """
    n = ctx.n
    perms = [d for d in ctx.basis if d.through_count == n]
    if not perms:
        raise FamilyError(f"{ctx.family.value} on {n} strands has no permutation diagrams")
    group = sorted(diagram_permutation(d) for d in perms)
    gset = set(group)
    closed = homomorphic = True
    for x in perms:
        for y in perms:
            prod = compose(x, y)
            if (prod.delta_exp, prod.eps_exp) != (0, 0) or prod.diagram.through_count != n:
                closed = False
                continue
            s = diagram_permutation(prod.diagram)
            closed &= s in gset
            tau, sigma = diagram_permutation(x), diagram_permutation(y)
            homomorphic &= s == tuple(tau[k - 1] for k in sigma)
    projection = True
    basis_ = ctx.basis
    for x in basis_:
        for y in basis_:
            full = x.through_count == n and y.through_count == n
            prod = compose(x, y)
            if full != (prod.diagram.through_count == n):
                projection = False
    report = {
        "closed": closed,
        "homomorphism": homomorphic,
        "projection_multiplicative": projection,
        "contains_identity": tuple(range(1, n + 1)) in gset,
    }
    return group, report


def rho(n: int, i: int) -> Diagram:
    """The identity diagram with the strand at height ``i`` removed."""
    if not 1 <= i <= n:
        raise DiagramError(f"rho index {i} out of range for n={n}")
    return Diagram(n, tuple((j, n + j) for j in range(1, n + 1) if j != i))


def context_summary(ctx: AlgebraContext) -> str:
    return json.dumps(ctx.to_json(), sort_keys=True)
