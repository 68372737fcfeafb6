"""Idempotents generating the left ideals of reachable link states."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .diagram import Diagram, classify, compose
from .family import AlgebraContext, AlgebraElement, Family, FamilyError, matchings
from .linkstate import (
    Constraint,
    LinkState,
    LinkStateError,
    enumerate_link_states,
    juxtaposition_components,
    mirror_diagram,
    reachable,
    right_link_state,
    sesqui_components,
)
from .ring import NotAUnitError

__all__ = [
    "IdempotentError",
    "GardenPartition",
    "LSControl",
    "mirror_idempotent",
    "brauer_defect_idempotent",
    "spheres_of_influence",
    "single_trundle",
    "tl_defect_idempotent",
    "ls_control_properties",
    "verify_ls_control",
    "verify_principal_ideal",
    "idempotent_report",
]


class IdempotentError(ValueError):
    pass


def _require_no_missing(p: LinkState) -> None:
    if p.missing:
        raise IdempotentError(f"{p} has missing nodes")


def _require_defect(p: LinkState) -> None:
    if not p.defects:
        raise IdempotentError(f"{p} has no defects")


def _require_planar(p: LinkState) -> None:
    if not p.is_planar():
        raise IdempotentError(f"{p} is not planar")


def mirror_idempotent(p: LinkState, ctx: AlgebraContext) -> AlgebraElement:
    """``delta**(-(n-i)/2) * d_p``; needs an invertible delta."""
    _require_no_missing(p)
    if ctx.family.planar:
        _require_planar(p)
    k = len(p.connections)
    inv = ctx.ring.try_invert(ctx.delta)
    if inv is None and k:
        raise NotAUnitError(f"delta = {ctx.delta} is not a unit in {ctx.ring}")
    scale = ctx.ring.pow(inv, k) if k else ctx.ring.one
    return ctx.element({mirror_diagram(p): scale})


def brauer_defect_idempotent(p: LinkState) -> Diagram:
    """A Brauer diagram ``e`` with right link state ``p`` and ``e*e = e``.

    The connections of ``p`` are chained into a single path on the left side
    running from the right node of the last defect back to its left node.
    Connections are taken in order of their smaller endpoint, each traversed
    from smaller to larger node.  Every other defect is a horizontal strand.
    """
    _require_no_missing(p)
    _require_defect(p)
    n = p.n
    j0 = p.defects[-1]
    edges = [(d, n + d) for d in p.defects[:-1]]
    edges += [(n + u, n + v) for u, v in p.connections]
    conns = sorted(p.connections)
    if not conns:
        edges.append((j0, n + j0))
    else:
        edges.append((conns[0][0], n + j0))
        for (_, prev_large), (next_small, _) in zip(conns, conns[1:]):
            edges.append((prev_large, next_small))
        edges.append((conns[-1][1], j0))
    return Diagram.from_edges(n, edges)


@dataclass(frozen=True)
class GardenPartition:
    """Cuts ``1 = a_0 < ... < a_i = n + 1``; garden ``j`` is ``[a_{j-1}, a_j)``."""

    cuts: tuple[int, ...]
    defect_of: tuple[int, ...]

    def garden(self, j: int) -> range:
        return range(self.cuts[j - 1], self.cuts[j])

    def __len__(self) -> int:
        return len(self.defect_of)


def spheres_of_influence(p: LinkState) -> GardenPartition:
    """Split ``1..n`` into one interval per defect with no connection across a cut."""
    _require_no_missing(p)
    _require_planar(p)
    _require_defect(p)
    d = p.defects
    cuts = (1,) + d[1:] + (p.n + 1,)
    parts = GardenPartition(cuts, d)
    for j in range(1, len(d) + 1):
        if d[j - 1] not in parts.garden(j):
            raise AssertionError(f"defect {d[j - 1]} outside its garden {parts.garden(j)}")
    for u, v in p.connections:
        if any(u < c <= v for c in cuts[1:-1]):
            raise AssertionError(f"connection ({u}, {v}) crosses a cut of {cuts}")
    return parts


@lru_cache(maxsize=None)
def _planar_two_defect(m: int) -> tuple[LinkState, ...]:
    return tuple(enumerate_link_states(m, 2, Constraint.PLANAR_NO_MISSING))


def single_trundle(p0: LinkState) -> LinkState:
    """A planar two-defect ``q`` whose juxtaposition with ``p0`` is connected.

    The first such ``q`` in sorted order is returned.  Failing to find one
    would contradict the existence of a one-component meander on these arcs.
    """
    if p0.defects or p0.missing or not p0.is_planar():
        raise IdempotentError(f"{p0} must be a noncrossing perfect matching")
    if p0.n == 0:
        raise IdempotentError("empty matching")
    for q in _planar_two_defect(p0.n):
        if len(juxtaposition_components(p0, q)) == 1:
            return q
    raise AssertionError(f"no connecting two-defect state exists for {p0}")


def _garden_trundle(p: LinkState, lo: int, hi: int):
    """Run :func:`single_trundle` on the arcs of ``p`` inside ``[lo, hi)``.

    Returns the two defects and the connections of the result, in ``p``'s
    numbering, or ``None`` for an empty garden.
    """
    if hi <= lo:
        return None
    arcs = [(u, v) for u, v in p.connections if lo <= u and v < hi]
    if 2 * len(arcs) != hi - lo:
        raise AssertionError(f"garden [{lo}, {hi}) of {p} is not closed under connections")
    local = LinkState.make(hi - lo, [(u - lo + 1, v - lo + 1) for u, v in arcs])
    q = single_trundle(local)
    shift = lo - 1
    return (
        tuple(x + shift for x in q.defects),
        [(u + shift, v + shift) for u, v in q.connections],
    )


def tl_defect_idempotent(p: LinkState) -> Diagram:
    """A planar diagram ``e`` with right link state ``p`` and ``e*e = e``.

    Each defect ``d`` owns a garden split into a front part before ``d`` and a
    back part after it.  Each nonempty part is closed up with
    :func:`single_trundle`, and its two defects are wired so that the
    through strand from ``d`` on the right passes through the back part,
    then the front part, and ends at ``d`` on the left.
    """
    _require_no_missing(p)
    _require_planar(p)
    _require_defect(p)
    n = p.n
    parts = spheres_of_influence(p)
    edges = [(n + u, n + v) for u, v in p.connections]
    for j, d in enumerate(parts.defect_of, start=1):
        g = parts.garden(j)
        front = _garden_trundle(p, g.start, d)
        back = _garden_trundle(p, d + 1, g.stop)
        for part in (front, back):
            if part:
                edges += part[1]
        if front is None and back is None:
            edges.append((d, n + d))
        elif back is None:
            (f0, f1), _ = front
            edges += [(f0, n + d), (f1, d)]
        elif front is None:
            (b0, b1), _ = back
            edges += [(b1, n + d), (b0, d)]
        else:
            (f0, f1), _ = front
            (b0, b1), _ = back
            edges += [(b1, n + d), (f0, b0), (f1, d)]
    e = Diagram.from_edges(n, edges)
    if not classify(e).planar:
        raise AssertionError(f"constructed idempotent {e} for {p} is not planar")
    return e


class LSControl(NamedTuple):
    right_state: bool
    defects_straight: bool
    middle_reaches_right: bool


def ls_control_properties(p: LinkState, e: Diagram) -> LSControl:
    """The three sesqui-diagram conditions that force ``y*e = y`` on ``J_p``."""
    if p.n != e.n:
        raise LinkStateError("link state and diagram on different node counts")
    parts = sesqui_components(p, e)
    comp = {v: c for c in parts.classes for v in c}
    straight = all(("r", j) in comp[("m", j)] for j in p.defects)
    reaches = all(any(v[0] == "r" for v in comp[("m", j)]) for j in range(1, p.n + 1))
    return LSControl(right_link_state(e) == p, straight, reaches)


def _spot_family(e: Diagram) -> Family:
    f = classify(e)
    if f.has_missing:
        return Family.ROOK_BRAUER
    return Family.TEMPERLEY_LIEB if f.planar else Family.BRAUER


# Catalan(10) = 16796 planar diagrams; beyond that enumeration dominates
_SPOT_POOL_N = 10


def verify_ls_control(p: LinkState, e: Diagram, spot_limit: int = 64) -> bool:
    """True iff ``e`` satisfies all three conditions for ``p``.

    When it does, ``y*e = y`` is also asserted for up to ``spot_limit``
    diagrams ``y`` in ``J_p`` drawn evenly from the smallest family holding
    ``e``.  Planar cases above ``_SPOT_POOL_N`` strands skip the spot check, since
    the three conditions alone decide the answer.
    """
    if not all(ls_control_properties(p, e)):
        return False
    fam = _spot_family(e)
    if p.n <= 5 or (fam is Family.TEMPERLEY_LIEB and p.n <= _SPOT_POOL_N):
        pool = [y for y in matchings(fam, p.n) if reachable(p, right_link_state(y))]
        step = max(1, len(pool) // spot_limit)
        for y in pool[::step][:spot_limit]:
            prod = compose(y, e)
            if prod != (y, 0, 0):
                raise AssertionError(f"y*e = {prod} != y for y = {y}, e = {e}, p = {p}")
    return True


def verify_principal_ideal(ctx: AlgebraContext, p: LinkState, e: AlgebraElement) -> bool:
    """Check ``e`` in ``J_p``, ``e*e = e`` and ``y*e = y`` for every basis ``y`` in ``J_p``."""
    if e.ctx != ctx:
        raise FamilyError("element does not belong to this context")
    if p.n != ctx.n:
        raise LinkStateError("link state and algebra on different node counts")
    if e.is_zero():
        in_ideal = True
    else:
        in_ideal = all(reachable(p, right_link_state(d)) for d in e.coeffs)
    if not in_ideal or e * e != e:
        return False
    for y in ctx.basis:
        if reachable(p, right_link_state(y)):
            yy = ctx.element({y: 1})
            if yy * e != yy:
                return False
    return True


def idempotent_report(ctx: AlgebraContext, p: LinkState, e: AlgebraElement | Diagram) -> dict:
    """JSON-ready summary of an idempotent for ``p``."""
    if isinstance(e, Diagram):
        diagram = e
        elem = ctx.element({e: 1})
        e_json = e.to_json()
    else:
        elem = e
        diagram = next(iter(e.coeffs)) if len(e.coeffs) == 1 else None
        e_json = e.to_json()
    controls = list(ls_control_properties(p, diagram)) if diagram is not None else None
    return {
        "p": p.to_json(),
        "e": e_json,
        "idempotent": elem * elem == elem,
        "ls_control": controls,
        "principal_ideal": verify_principal_ideal(ctx, p, elem),
    }
