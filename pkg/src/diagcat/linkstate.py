"""Link states: half-diagrams with connections, defects and missing nodes."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence

from .diagram import Diagram, DiagramError, NodePartition, _labelled_union_find, _crossing

__all__ = [
    "LinkState",
    "LinkStateError",
    "Constraint",
    "extract_link_states",
    "right_link_state",
    "left_link_state",
    "splice",
    "delete_defect",
    "reachable",
    "reachable_bfs",
    "enumerate_link_states",
    "sesqui_components",
    "mirror_diagram",
    "juxtaposition_components",
    "parse_link_state",
]


class LinkStateError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class LinkState:
    n: int
    connections: tuple[tuple[int, int], ...]
    defects: tuple[int, ...]
    missing: tuple[int, ...] = ()

    def __post_init__(self):
        nodes = [v for c in self.connections for v in c] + list(self.defects) + list(self.missing)
        if sorted(nodes) != list(range(1, self.n + 1)):
            raise LinkStateError(
                f"connections/defects/missing must partition 1..{self.n}: {self!r}"
            )
        if any(u >= v for u, v in self.connections):
            raise LinkStateError("connections must be ordered pairs (u < v)")
        if (
            list(self.connections) != sorted(self.connections)
            or list(self.defects) != sorted(self.defects)
            or list(self.missing) != sorted(self.missing)
        ):
            raise LinkStateError("link state lists must be sorted")

    @classmethod
    def make(
        cls,
        n: int,
        connections: Iterable[Sequence[int]] = (),
        defects: Iterable[int] = (),
        missing: Iterable[int] = (),
    ) -> "LinkState":
        return cls(
            n,
            tuple(sorted(tuple(sorted(map(int, c))) for c in connections)),
            tuple(sorted(map(int, defects))),
            tuple(sorted(map(int, missing))),
        )

    @classmethod
    def all_defects(cls, n: int) -> "LinkState":
        return cls(n, (), tuple(range(1, n + 1)), ())

    @property
    def defect_count(self) -> int:
        return len(self.defects)

    def is_planar(self) -> bool:
        """No missing nodes, non-crossing connections, no defect inside an arc.

        These are exactly the right link states of Temperley-Lieb diagrams.
        """
        return not self.missing and self.is_weakly_planar()

    def is_weakly_planar(self) -> bool:
        """Planarity allowing missing nodes anywhere (rook-Temperley-Lieb)."""
        cs = self.connections
        if any(_crossing(a, b) for a, b in itertools.combinations(cs, 2)):
            return False
        return not any(u < d < v for u, v in cs for d in self.defects)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "connections": [list(c) for c in self.connections],
            "defects": list(self.defects),
            "missing": list(self.missing),
        }

    @classmethod
    def from_json(cls, obj) -> "LinkState":
        return cls.make(obj["n"], obj["connections"], obj["defects"], obj.get("missing", ()))

    def to_text(self) -> str:
        """Compact form accepted by :func:`parse_link_state`, e.g. ``1-4,d2,d3``."""
        parts = [f"{u}-{v}" for u, v in self.connections]
        parts += [f"d{d}" for d in self.defects]
        parts += [f"x{m}" for m in self.missing]
        return ",".join(parts)

    def __str__(self) -> str:
        return f"[{self.n}: {self.to_text()}]"


class Constraint(str, Enum):
    ANY = "any"
    NO_MISSING = "no-missing"
    PLANAR_NO_MISSING = "planar"
    NO_CONNECTIONS = "no-connections"

    def admits(self, p: LinkState) -> bool:
        if self is Constraint.ANY:
            return True
        if self is Constraint.NO_MISSING:
            return not p.missing
        if self is Constraint.PLANAR_NO_MISSING:
            return p.is_planar()
        return not p.connections


def _half(x: Diagram, right: bool) -> LinkState:
    n = x.n
    part = x.partner
    conns, defects, missing = [], [], []
    for j in range(1, n + 1):
        node = n + j if right else j
        q = part[node]
        if q == 0:
            missing.append(j)
        elif (q > n) == right:
            other = q - n if right else q
            if j < other:
                conns.append((j, other))
        else:
            defects.append(j)
    return LinkState(n, tuple(conns), tuple(defects), tuple(missing))


def right_link_state(x: Diagram) -> LinkState:
    return _half(x, right=True)


def left_link_state(x: Diagram) -> LinkState:
    return _half(x, right=False)


def extract_link_states(x: Diagram) -> tuple[LinkState, LinkState]:
    """``(left, right)`` link states of ``x``."""
    return _half(x, right=False), _half(x, right=True)


def splice(p: LinkState, i: int, j: int) -> LinkState:
    """Join defects ``i`` and ``j`` into a connection."""
    if i == j or i not in p.defects or j not in p.defects:
        raise LinkStateError(f"splice needs two distinct defects of {p}, got {i}, {j}")
    return LinkState.make(
        p.n,
        p.connections + ((min(i, j), max(i, j)),),
        (d for d in p.defects if d not in (i, j)),
        p.missing,
    )


def delete_defect(p: LinkState, i: int) -> LinkState:
    if i not in p.defects:
        raise LinkStateError(f"{i} is not a defect of {p}")
    return LinkState.make(
        p.n, p.connections, (d for d in p.defects if d != i), p.missing + (i,)
    )


def reachable(p: LinkState, q: LinkState) -> bool:
    """Is ``q`` obtained from ``p`` by splices and deletions?"""
    if p.n != q.n:
        raise LinkStateError("link states on different node counts")
    pc, qc = set(p.connections), set(q.connections)
    pm, qm = set(p.missing), set(q.missing)
    if not (pc <= qc and pm <= qm):
        return False
    pd = set(p.defects)
    if any(u not in pd or v not in pd for u, v in qc - pc):
        return False
    return (qm - pm) <= pd


def _moves(p: LinkState) -> Iterator[LinkState]:
    for i, j in itertools.combinations(p.defects, 2):
        yield splice(p, i, j)
    for i in p.defects:
        yield delete_defect(p, i)


def reachable_bfs(p: LinkState, q: LinkState) -> bool:
    """Breadth-first search over the move graph; the reference for :func:`reachable`."""
    if p.n != q.n:
        raise LinkStateError("link states on different node counts")
    seen = {p}
    queue = deque([p])
    while queue:
        s = queue.popleft()
        if s == q:
            return True
        if s.defect_count <= q.defect_count:
            continue
        for t in _moves(s):
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return False


def _partial_matchings(nodes: tuple[int, ...]) -> Iterator[tuple[list[tuple[int, int]], list[int]]]:
    """All (matching, unmatched) pairs on ``nodes``."""
    if not nodes:
        yield [], []
        return
    first, rest = nodes[0], nodes[1:]
    for m, un in _partial_matchings(rest):
        yield m, [first] + un
    for k, other in enumerate(rest):
        for m, un in _partial_matchings(rest[:k] + rest[k + 1 :]):
            yield [(first, other)] + m, un


def enumerate_link_states(n: int, i: int, constraint: Constraint | str = Constraint.ANY) -> list[LinkState]:
    """All link states on ``n`` nodes with exactly ``i`` defects, sorted."""
    constraint = Constraint(constraint)
    if not 0 <= i <= n:
        raise LinkStateError(f"defect count {i} out of range for n={n}")
    out = []
    for defects in itertools.combinations(range(1, n + 1), i):
        rest = tuple(v for v in range(1, n + 1) if v not in defects)
        for conns, missing in _partial_matchings(rest):
            if constraint is Constraint.NO_CONNECTIONS and conns:
                continue
            if constraint in (Constraint.NO_MISSING, Constraint.PLANAR_NO_MISSING) and missing:
                continue
            p = LinkState.make(n, conns, defects, missing)
            if constraint.admits(p):
                out.append(p)
    return sorted(out)


def sesqui_components(p: LinkState, e: Diagram) -> NodePartition:
    """Components of the sesqui-diagram: ``p`` on the m-nodes, ``e`` on m/r."""
    n = p.n
    if e.n != n:
        raise LinkStateError("link state and diagram on different node counts")
    uf, labels = _labelled_union_find(n, "mr")
    for u, v in p.connections:
        uf.union(u - 1, v - 1)
    for u, v in e.edges:
        uf.union(u - 1, v - 1)
    return NodePartition.from_groups([labels[a] for a in g] for g in uf.groups())


def mirror_diagram(p: LinkState) -> Diagram:
    """``d_p``: both link states equal ``p``, through strands horizontal."""
    if p.missing:
        raise LinkStateError(f"mirror diagram needs a link state without missing nodes: {p}")
    n = p.n
    edges = [(u, v) for u, v in p.connections]
    edges += [(n + u, n + v) for u, v in p.connections]
    edges += [(d, n + d) for d in p.defects]
    return Diagram.from_edges(n, edges)


def juxtaposition_components(p: LinkState, q: LinkState) -> list[list[int]]:
    """Components of the graph on ``1..n`` carrying the connections of both."""
    uf, _ = _labelled_union_find(p.n, "x")
    for u, v in p.connections + q.connections:
        uf.union(u - 1, v - 1)
    return sorted(sorted(a + 1 for a in g) for g in uf.groups())


def parse_link_state(text: str, n: int | None = None) -> LinkState:
    """Parse ``"1-4,d2,d3,d5"`` (``x`` marks missing) or a JSON object."""
    text = text.strip()
    if text.startswith("{"):
        import json

        return LinkState.from_json(json.loads(text))
    conns, defects, missing = [], [], []
    for tok in filter(None, (t.strip() for t in text.strip("[]").split(","))):
        if tok[0] in "dD":
            defects.append(int(tok[1:]))
        elif tok[0] in "xXmM":
            missing.append(int(tok[1:]))
        else:
            u, v = tok.split("-")
            conns.append((int(u), int(v)))
    top = max([v for c in conns for v in c] + defects + missing, default=0)
    try:
        return LinkState.make(n or top, conns, defects, missing)
    except (LinkStateError, DiagramError) as exc:
        raise LinkStateError(f"cannot parse link state {text!r}: {exc}") from exc
