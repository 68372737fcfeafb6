import itertools

from hypothesis import strategies as st

from diagcat.diagram import Diagram


@st.composite
def diagrams(draw, n=None, max_n=5, allow_missing=True):
    """Random rook-Brauer (or Brauer) diagram."""
    if n is None:
        n = draw(st.integers(1, max_n))
    nodes = draw(st.permutations(list(range(1, 2 * n + 1))))
    edges = []
    for a, b in zip(nodes[::2], nodes[1::2]):
        if allow_missing and draw(st.booleans()) and draw(st.booleans()):
            continue
        edges.append((a, b))
    return Diagram.from_edges(n, edges)


def graph_compose(x: Diagram, y: Diagram):
    """Reference composition by explicit graph search on the double diagram."""
    n = x.n
    adj = {}

    def link(u, v):
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)

    for u, v in x.edges:
        link(("l", u) if u <= n else ("m", u - n), ("l", v) if v <= n else ("m", v - n))
    for u, v in y.edges:
        link(("m", u) if u <= n else ("r", u - n), ("m", v) if v <= n else ("r", v - n))
    nodes = [(k, j) for k in "lmr" for j in range(1, n + 1)]
    seen = set()
    edges, loops, contractible = [], 0, 0
    for start in nodes:
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj.get(v, []):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        ends = [v for v in comp if v[0] != "m"]
        if len(ends) == 2:
            edges.append(tuple(j if k == "l" else n + j for k, j in ends))
        elif not ends:
            if all(len(adj.get(v, [])) == 2 for v in comp):
                loops += 1
            else:
                contractible += 1
    return Diagram.from_edges(n, edges), loops, contractible


def all_perfect_matchings(points):
    """Every perfect matching of ``points`` by brute force over permutations."""
    out = set()
    for perm in itertools.permutations(points):
        out.add(tuple(sorted(tuple(sorted(perm[i : i + 2])) for i in range(0, len(perm), 2))))
    return out
