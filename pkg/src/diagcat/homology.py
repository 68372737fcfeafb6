"""Tor of the trivial module over diagram algebras, via bar complexes.

The workhorse is the reduced bar complex ``C_q = Abar^(tensor q)`` where
``Abar`` is the augmentation ideal.  Its basis is ``d`` for non-permutation
diagrams and ``d - id`` for permutation diagrams ``d != id``, so an element
of ``Abar`` is read off from its coefficients away from the identity.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Callable, NamedTuple, Sequence

from .diagram import compose_permutations
from .family import AlgebraContext
from .linalg import invariant_factors, rank_integer, rank_mod_p
from .ring import ZZ, RingSpec

__all__ = [
    "HomologyError",
    "BudgetExceeded",
    "HomologyGroup",
    "ChainComplex",
    "AugmentedAlgebra",
    "algebra_of_context",
    "group_algebra",
    "reduced_bar_complex",
    "unreduced_bar_complex",
    "homology_of_complex",
    "homology",
    "tor_trivial",
    "group_homology_oracle",
    "cell_budget",
    "estimate_cells",
    "symmetric_group",
    "require_specialized",
]

DEFAULT_CELL_BUDGET = 3_000_000


class HomologyError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


def cell_budget() -> int:
    raw = os.environ.get("DIAGCAT_CELL_BUDGET")
    return int(raw) if raw else DEFAULT_CELL_BUDGET


class HomologyGroup(NamedTuple):
    """``R^rank`` plus torsion summands ``Z/t`` (integers only)."""

    rank: int
    torsion: tuple[int, ...] = ()

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = [f"R^{self.rank}"] if self.rank else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def _check_ring(ring: RingSpec) -> None:
    if ring == ZZ or ring.is_field:
        return
    raise HomologyError(f"homology needs a field or the integers, not {ring}")


@dataclass
class ChainComplex:
    """Free modules ``C_0..C_top`` with differentials ``d_q: C_q -> C_{q-1}``.

    ``diffs[q]`` holds the matrix of ``d_q`` as one sparse row per basis
    element of ``C_q``; ``diffs[0]`` is empty.
    """

    ring: RingSpec
    dims: list[int]
    diffs: list[list[dict[int, object]]] = field(default_factory=list)
    _ranks: dict = field(default_factory=dict, repr=False)

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def check(self) -> None:
        """Assert shapes and ``d_{q-1} d_q = 0``."""
        ring = self.ring
        for q in range(1, self.top + 1):
            rows = self.diffs[q]
            if len(rows) != self.dims[q]:
                raise AssertionError(f"d_{q} has {len(rows)} rows, C_{q} has rank {self.dims[q]}")
            if any(c >= self.dims[q - 1] for r in rows for c in r):
                raise AssertionError(f"d_{q} has a column outside C_{q - 1}")
            if q < 2:
                continue
            below = self.diffs[q - 1]
            for k, r in enumerate(rows):
                acc: dict[int, object] = {}
                for c, v in r.items():
                    for cc, w in below[c].items():
                        acc[cc] = ring.add(acc.get(cc, ring.zero), ring.mul(v, w))
                if any(not ring.is_zero(v) for v in acc.values()):
                    raise AssertionError(f"d_{q - 1} d_{q} != 0 on basis element {k}")

    def integer_rows(self, q: int) -> list[dict[int, int]]:
        rows = self.diffs[q]
        if self.ring.kind == "Rationals":
            out = []
            for r in rows:
                den = lcm(*(Fraction(v).denominator for v in r.values())) if r else 1
                out.append({c: int(Fraction(v) * den) for c, v in r.items()})
            return out
        return [{c: int(v) for c, v in r.items()} for r in rows]

    def rank(self, q: int) -> int:
        if q <= 0 or q > self.top:
            return 0
        if q not in self._ranks:
            ring = self.ring
            if ring.is_modular:
                self._ranks[q] = rank_mod_p(self.diffs[q], ring.modulus)
            else:
                self._ranks[q] = rank_integer(self.integer_rows(q))
        return self._ranks[q]


def homology_of_complex(cx: ChainComplex, q: int) -> HomologyGroup:
    """``H_q``; needs ``d_{q+1}``, so ``q < cx.top``."""
    _check_ring(cx.ring)
    if not 0 <= q < cx.top:
        raise HomologyError(f"H_{q} needs degrees up to {q + 1}; complex stops at {cx.top}")
    free = cx.dims[q] - cx.rank(q) - cx.rank(q + 1)
    if cx.ring != ZZ:
        return HomologyGroup(free)
    factors = invariant_factors(cx.integer_rows(q + 1)) if q + 1 <= cx.top else []
    return HomologyGroup(free, tuple(t for t in factors if t > 1))


# -- augmented algebras --------------------------------------------------------


@dataclass
class AugmentedAlgebra:
    """A finite-rank algebra with a basis, a unit and an augmentation.

    ``product(i, j)`` returns the product of basis elements as a sparse
    ``dict`` index -> coefficient; ``augmented[i]`` says whether basis element
    ``i`` acts as 1 (it acts as 0 otherwise).
    """

    ring: RingSpec
    dim: int
    unit: int
    augmented: list[bool]
    product: Callable[[int, int], dict[int, object]]
    label: str = ""


def algebra_of_context(ctx: AlgebraContext, order: Sequence[int] | None = None) -> AugmentedAlgebra:
    """View ``ctx`` as an augmented algebra, optionally with a permuted basis.

    ``order[k]`` is the context basis index placed at position ``k``.
    """
    order = list(range(ctx.dim)) if order is None else list(order)
    if sorted(order) != list(range(ctx.dim)):
        raise HomologyError("basis order must be a permutation")
    where = {b: k for k, b in enumerate(order)}
    unit = ctx.unit_index()
    if unit is None:
        raise HomologyError("context has no identity diagram")

    def product(i: int, j: int) -> dict[int, object]:
        hit = ctx.product_index(order[i], order[j])
        return {} if hit is None else {where[hit[0]]: hit[1]}

    return AugmentedAlgebra(
        ctx.ring,
        ctx.dim,
        where[unit],
        [ctx.basis[b].through_count == ctx.n for b in order],
        product,
        label=f"{ctx.family.value}{ctx.n}",
    )


def group_algebra(group: Sequence[Sequence[int]], ring: RingSpec) -> AugmentedAlgebra:
    """The group algebra of a permutation group, built from composition alone."""
    elems = sorted(tuple(g) for g in group)
    if not elems:
        raise HomologyError("empty group")
    n = len(elems[0])
    index = {g: k for k, g in enumerate(elems)}
    e = tuple(range(1, n + 1))
    if e not in index:
        raise HomologyError("group does not contain the identity")
    table = {}
    for g, h in itertools.product(elems, repeat=2):
        gh = compose_permutations(g, h)
        if gh not in index:
            raise HomologyError(f"not closed under composition: {g} * {h} = {gh}")
        table[index[g], index[h]] = index[gh]
    for g in elems:
        if not any(table[index[g], index[h]] == index[e] for h in elems):
            raise HomologyError(f"{g} has no inverse in the group")
    one = ring.one
    return AugmentedAlgebra(
        ring,
        len(elems),
        index[e],
        [True] * len(elems),
        lambda i, j: {table[i, j]: one},
        label=f"S{n}-subgroup[{len(elems)}]",
    )


def _bar_products(alg: AugmentedAlgebra) -> tuple[list[int], list[list[dict[int, object]]]]:
    """Products of augmentation-ideal basis elements, in ideal coordinates."""
    ring = alg.ring
    idx = [b for b in range(alg.dim) if b != alg.unit]
    pos = {b: k for k, b in enumerate(idx)}
    one = ring.one

    def expand(b: int) -> dict[int, object]:
        if alg.augmented[b]:
            return {b: one, alg.unit: ring.neg(one)}
        return {b: one}

    vecs = [expand(b) for b in idx]
    table = []
    for s in range(len(idx)):
        row = []
        for t in range(len(idx)):
            acc: dict[int, object] = {}
            for i, ci in vecs[s].items():
                for j, cj in vecs[t].items():
                    c = ring.mul(ci, cj)
                    for k, ck in alg.product(i, j).items():
                        acc[k] = ring.add(acc.get(k, ring.zero), ring.mul(c, ck))
            # the identity coefficient must vanish: the ideal is closed
            aug = ring.sum(v for k, v in acc.items() if alg.augmented[k])
            if not ring.is_zero(aug):
                raise AssertionError("augmentation is not multiplicative")
            row.append({pos[k]: v for k, v in acc.items() if k != alg.unit and not ring.is_zero(v)})
        table.append(row)
    return idx, table


def estimate_cells(bar_dim: int, top: int) -> int:
    return sum(bar_dim**q for q in range(top + 1))


def _guard(bar_dim: int, top: int, budget: int | None) -> None:
    budget = cell_budget() if budget is None else budget
    need = estimate_cells(bar_dim, top)
    if need > budget:
        raise BudgetExceeded(
            f"bar complex needs {need} basis tensors up to degree {top}; budget is {budget}"
        )


def _bar_differential(
    ring: RingSpec, m: int, q: int, table: list[list[dict[int, object]]]
) -> list[dict[int, object]]:
    """Sparse rows of ``d_q`` on ``Abar^q``: alternating sum of inner products."""
    rows: list[dict[int, object]] = []
    if q < 2:
        return [{} for _ in range(m**q)]
    powers = [m**k for k in range(q)]
    for tensor in itertools.product(range(m), repeat=q):
        acc: dict[int, object] = {}
        for i in range(q - 1):
            # merge positions i, i+1; result has q-1 factors
            head = 0
            for a in tensor[:i]:
                head = head * m + a
            tail = 0
            for a in tensor[i + 2 :]:
                tail = tail * m + a
            tail_len = q - i - 2
            sign_neg = i % 2 == 0  # sign (-1)^(i+1) with 1-based merge position
            for k, c in table[tensor[i]][tensor[i + 1]].items():
                col = (head * m + k) * powers[tail_len] + tail
                v = ring.neg(c) if sign_neg else c
                acc[col] = ring.add(acc.get(col, ring.zero), v)
        rows.append({c: v for c, v in acc.items() if not ring.is_zero(v)})
    return rows


def reduced_bar_complex(
    source: AlgebraContext | AugmentedAlgebra,
    top: int,
    budget: int | None = None,
    check: bool = True,
) -> ChainComplex:
    """Normalized bar complex ``Abar^(tensor q)`` for ``q = 0..top``."""
    alg = algebra_of_context(source) if isinstance(source, AlgebraContext) else source
    ring = alg.ring
    _check_ring(ring)
    _, table = _bar_products(alg)
    m = len(table)
    _guard(m, top, budget)
    dims = [m**q for q in range(top + 1)]
    diffs: list[list[dict[int, object]]] = [[]]
    for q in range(1, top + 1):
        diffs.append(_bar_differential(ring, m, q, table))
    cx = ChainComplex(ring, dims, diffs)
    if check:
        cx.check()
    return cx


def unreduced_bar_complex(
    source: AlgebraContext | AugmentedAlgebra, top: int, budget: int | None = None
) -> ChainComplex:
    """Full bar complex ``A^(tensor q)`` with augmentation terms at both ends."""
    alg = algebra_of_context(source) if isinstance(source, AlgebraContext) else source
    ring = alg.ring
    _check_ring(ring)
    m = alg.dim
    _guard(m, top, budget)
    dims = [m**q for q in range(top + 1)]
    diffs: list[list[dict[int, object]]] = [[]]
    for q in range(1, top + 1):
        rows = []
        for tensor in itertools.product(range(m), repeat=q):
            acc: dict[int, object] = {}

            def add(col: int, v) -> None:
                acc[col] = ring.add(acc.get(col, ring.zero), v)

            def encode(seq) -> int:
                out = 0
                for a in seq:
                    out = out * m + a
                return out

            if alg.augmented[tensor[0]]:
                add(encode(tensor[1:]), ring.one)
            for i in range(q - 1):
                c_sign = ring.one if (i + 1) % 2 == 0 else ring.neg(ring.one)
                for k, c in alg.product(tensor[i], tensor[i + 1]).items():
                    add(encode(tensor[:i] + (k,) + tensor[i + 2 :]), ring.mul(c_sign, c))
            if alg.augmented[tensor[-1]]:
                add(encode(tensor[:-1]), ring.one if q % 2 == 0 else ring.neg(ring.one))
            rows.append({c: v for c, v in acc.items() if not ring.is_zero(v)})
        diffs.append(rows)
    cx = ChainComplex(ring, dims, diffs)
    cx.check()
    return cx


def homology(cx: ChainComplex, max_degree: int | None = None) -> list[HomologyGroup]:
    top = cx.top - 1 if max_degree is None else max_degree
    return [homology_of_complex(cx, q) for q in range(top + 1)]


def tor_trivial(
    source: AlgebraContext | AugmentedAlgebra, max_degree: int, budget: int | None = None
) -> list[HomologyGroup]:
    """``Tor_q(1, 1)`` for ``q = 0..max_degree``."""
    cx = reduced_bar_complex(source, max_degree + 1, budget=budget)
    return homology(cx, max_degree)


def group_homology_oracle(
    group: Sequence[Sequence[int]], ring: RingSpec, max_degree: int, budget: int | None = None
) -> list[HomologyGroup]:
    """Group homology of a permutation group with trivial coefficients.

    Only permutation composition is used to build the algebra, so this is
    independent of the diagram machinery.
    """
    return tor_trivial(group_algebra(group, ring), max_degree, budget=budget)


def symmetric_group(n: int) -> list[tuple[int, ...]]:
    return sorted(itertools.permutations(range(1, n + 1)))


def require_specialized(ctx: AlgebraContext) -> None:
    if ctx.ring.is_parametric:
        raise HomologyError("specialize delta and epsilon before computing homology")
    _check_ring(ctx.ring)
