"""Rook-Brauer diagrams and their composition.

Nodes are encoded as integers: ``1..n`` are the left column (top to bottom)
and ``n+1..2n`` the right column, so right node ``j`` is ``n + j``.  A diagram
is stored as a sorted tuple of ordered pairs, which makes tuple equality
diagram equality and gives a stable sort order for bases.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "Diagram",
    "DiagramError",
    "ScaledDiagram",
    "DiagramFeatures",
    "NodePartition",
    "compose",
    "double_diagram_components",
    "compose_from_components",
    "classify",
    "identity",
    "permutation_diagram",
    "diagram_permutation",
    "compose_permutations",
    "parse_diagram",
]


class DiagramError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Diagram:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise DiagramError("a diagram needs at least one strand")
        seen: set[int] = set()
        prev = None
        for u, v in self.edges:
            if not (1 <= u < v <= 2 * self.n):
                raise DiagramError(f"bad edge ({u}, {v}) for n={self.n}")
            if u in seen or v in seen:
                raise DiagramError(f"node used twice in {self.edges}")
            seen.update((u, v))
            if prev is not None and prev >= (u, v):
                raise DiagramError("edges must be sorted")
            prev = (u, v)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Diagram":
        return cls(n, tuple(sorted(tuple(sorted((int(u), int(v)))) for u, v in edges)))

    @classmethod
    def from_partner(cls, n: int, partner: Sequence[int]) -> "Diagram":
        """Build from a 1-indexed partner array (``0`` marks a missing edge)."""
        edges = tuple((u, partner[u]) for u in range(1, 2 * n + 1) if partner[u] > u)
        d = object.__new__(cls)
        object.__setattr__(d, "n", n)
        object.__setattr__(d, "edges", edges)
        return d

    @cached_property
    def partner(self) -> tuple[int, ...]:
        p = [0] * (2 * self.n + 1)
        for u, v in self.edges:
            p[u] = v
            p[v] = u
        return tuple(p)

    @cached_property
    def through_count(self) -> int:
        n = self.n
        return sum(1 for u, v in self.edges if u <= n < v)

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, obj) -> "Diagram":
        return cls.from_edges(obj["n"], obj["edges"])

    def label(self, node: int) -> str:
        return f"L{node}" if node <= self.n else f"R{node - self.n}"

    def to_text(self) -> str:
        """Compact form accepted by :func:`parse_diagram`, e.g. ``L1-R3,L2-L3``."""
        return ",".join(f"{self.label(u)}-{self.label(v)}" for u, v in self.edges)

    def __str__(self) -> str:
        body = ", ".join(f"{self.label(u)}-{self.label(v)}" for u, v in self.edges)
        return f"<{self.n}: {body}>"


class ScaledDiagram(NamedTuple):
    """``delta**delta_exp * eps**eps_exp * diagram``."""

    diagram: Diagram
    delta_exp: int
    eps_exp: int


class DiagramFeatures(NamedTuple):
    planar: bool
    has_missing: bool
    has_left_left: bool
    has_right_right: bool
    through_count: int


def identity(n: int) -> Diagram:
    return Diagram(n, tuple((i, n + i) for i in range(1, n + 1)))


def compose(x: Diagram, y: Diagram) -> ScaledDiagram:
    """Concatenate ``x`` (left) with ``y`` (right) and resolve the middle.

    Closed middle components are loops (every middle node has degree two) and
    contribute a factor of delta; the other middle-only components contribute
    a factor of epsilon.
    """
    n = x.n
    if y.n != n:
        raise DiagramError(f"cannot compose diagrams on {x.n} and {y.n} strands")
    xp = x.partner
    yp = y.partner
    visited = [False] * (n + 1)
    out = [0] * (2 * n + 1)

    # Walk from a middle node k, having just arrived from side `from_x`.
    # Returns the boundary node reached in product numbering, or 0.
    def walk(k: int, from_x: bool) -> int:
        while True:
            visited[k] = True
            if from_x:
                q = yp[k]
                if q == 0:
                    return 0
                if q > n:
                    return q
                k, from_x = q, False
            else:
                q = xp[n + k]
                if q == 0:
                    return 0
                if q <= n:
                    return q
                k, from_x = q - n, True

    for i in range(1, n + 1):
        if out[i]:
            continue
        q = xp[i]
        if q == 0:
            continue
        end = q if q <= n else walk(q - n, True)
        if end:
            out[i] = end
            out[end] = i
    for j in range(n + 1, 2 * n + 1):
        if out[j]:
            continue
        q = yp[j]
        if q == 0:
            continue
        end = q if q > n else walk(q, False)
        if end:
            out[j] = end
            out[end] = j

    loops = contractible = 0
    for k in range(1, n + 1):
        if visited[k]:
            continue
        # a middle-only component; trace it both ways from k
        closed = True
        stack = [k]
        visited[k] = True
        while stack:
            m = stack.pop()
            nbrs = []
            a = xp[n + m]
            b = yp[m]
            if a > n:
                nbrs.append(a - n)
            else:
                closed = False
            if 0 < b <= n:
                nbrs.append(b)
            else:
                closed = False
            for t in nbrs:
                if not visited[t]:
                    visited[t] = True
                    stack.append(t)
        if closed:
            loops += 1
        else:
            contractible += 1
    return ScaledDiagram(Diagram.from_partner(n, out), loops, contractible)


class NodePartition(NamedTuple):
    """A partition of labelled nodes ``(kind, index)`` into classes.

    Classes are sorted tuples and the partition is a sorted tuple of classes,
    so two partitions compare equal iff they are the same relation.
    """

    classes: tuple[tuple[tuple[str, int], ...], ...]

    @classmethod
    def from_groups(cls, groups: Iterable[Iterable[tuple[str, int]]]) -> "NodePartition":
        return cls(tuple(sorted(tuple(sorted(g)) for g in groups)))

    def class_of(self, node: tuple[str, int]) -> tuple[tuple[str, int], ...]:
        for c in self.classes:
            if node in c:
                return c
        raise KeyError(node)

    def related(self, u: tuple[str, int], v: tuple[str, int]) -> bool:
        return v in self.class_of(u)

    def restrict(self, kinds: Iterable[str]) -> "NodePartition":
        keep = set(kinds)
        groups = [[v for v in c if v[0] in keep] for c in self.classes]
        return NodePartition.from_groups(g for g in groups if g)


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller root so the result does not depend on call order
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def groups(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for a in range(len(self.parent)):
            out.setdefault(self.find(a), []).append(a)
        return list(out.values())


def _labelled_union_find(n: int, kinds: str) -> tuple[_UnionFind, list[tuple[str, int]]]:
    labels = [(k, j) for k in kinds for j in range(1, n + 1)]
    return _UnionFind(len(labels)), labels


def double_diagram_components(x: Diagram, y: Diagram) -> NodePartition:
    """Connected components of the double diagram on ``l``, ``m``, ``r`` nodes."""
    n = x.n
    if y.n != n:
        raise DiagramError(f"cannot compose diagrams on {x.n} and {y.n} strands")
    uf, labels = _labelled_union_find(n, "lmr")
    # index: l_j -> j-1, m_j -> n+j-1, r_j -> 2n+j-1
    for u, v in x.edges:  # x: left -> l, right -> m
        uf.union(u - 1, v - 1)
    for u, v in y.edges:  # y: left -> m, right -> r
        uf.union(n + u - 1, n + v - 1)
    return NodePartition.from_groups([labels[a] for a in g] for g in uf.groups())


def compose_from_components(x: Diagram, y: Diagram, parts: NodePartition) -> ScaledDiagram:
    """Re-derive ``compose(x, y)`` from the double-diagram partition."""
    n = x.n
    degree = {j: 0 for j in range(1, n + 1)}
    for j in range(1, n + 1):
        degree[j] += bool(x.partner[n + j]) + bool(y.partner[j])
    edges = []
    loops = contractible = 0
    for c in parts.classes:
        boundary = [v for v in c if v[0] != "m"]
        if len(boundary) == 2:
            edges.append(tuple(j if k == "l" else n + j for k, j in boundary))
        elif not boundary:
            if all(degree[j] == 2 for _, j in c):
                loops += 1
            else:
                contractible += 1
    return ScaledDiagram(Diagram.from_edges(n, edges), loops, contractible)


def _crossing(a: tuple[int, int], b: tuple[int, int]) -> bool:
    (a1, a2), (b1, b2) = a, b
    return a1 < b1 < a2 < b2 or b1 < a1 < b2 < a2


def classify(x: Diagram) -> DiagramFeatures:
    n = x.n
    # cyclic boundary order: left top->bottom, then right bottom->top
    pos = list(range(2 * n + 1))
    for j in range(1, n + 1):
        pos[n + j] = 2 * n + 1 - j
    chords = [tuple(sorted((pos[u], pos[v]))) for u, v in x.edges]
    planar = not any(
        _crossing(chords[s], chords[t])
        for s in range(len(chords))
        for t in range(s + 1, len(chords))
    )
    return DiagramFeatures(
        planar=planar,
        has_missing=2 * len(x.edges) < 2 * n,
        has_left_left=any(v <= n for _, v in x.edges),
        has_right_right=any(u > n for u, _ in x.edges),
        through_count=x.through_count,
    )


def permutation_diagram(sigma: Sequence[int]) -> Diagram:
    """``d_sigma``: right node ``i`` joined to left node ``sigma(i)``.

    ``sigma`` is given in one-line notation, ``sigma[i-1] == sigma(i)``.
    """
    n = len(sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise DiagramError(f"{sigma} is not a permutation of 1..{n}")
    return Diagram.from_edges(n, [(sigma[i - 1], n + i) for i in range(1, n + 1)])


def diagram_permutation(d: Diagram) -> tuple[int, ...]:
    if d.through_count != d.n:
        raise DiagramError(f"{d} has only {d.through_count} through strands")
    p = d.partner
    return tuple(p[d.n + i] for i in range(1, d.n + 1))


def compose_permutations(tau: Sequence[int], sigma: Sequence[int]) -> tuple[int, ...]:
    """``tau o sigma`` in one-line notation."""
    return tuple(tau[s - 1] for s in sigma)


_NODE = re.compile(r"([LRlr])(\d+)")


def parse_diagram(text: str, n: int | None = None) -> Diagram:
    """Parse ``"L2-L3,L1-R5"`` style text or a JSON object string."""
    text = text.strip()
    if text.startswith("{"):
        import json

        return Diagram.from_json(json.loads(text))
    pairs = []
    top = 0
    for chunk in filter(None, (c.strip() for c in text.split(","))):
        ends = chunk.split("-")
        if len(ends) != 2:
            raise DiagramError(f"cannot parse edge {chunk!r}")
        nodes = []
        for e in ends:
            m = _NODE.fullmatch(e.strip())
            if not m:
                raise DiagramError(f"cannot parse node {e!r}")
            side, j = m.group(1).upper(), int(m.group(2))
            top = max(top, j)
            nodes.append((side, j))
        pairs.append(nodes)
    n = n or top
    if not n:
        raise DiagramError("empty diagram needs an explicit n")
    return Diagram.from_edges(
        n, [[j if s == "L" else n + j for s, j in nodes] for nodes in pairs]
    )
