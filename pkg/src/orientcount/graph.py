"""Multigraphs with loops and parallel edges, their text formats and families."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field


class GraphFormatError(ValueError):
    """Malformed edge-list or graph6 input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Multigraph:
    """Vertices ``0..n-1``; edge ``i`` is ``edges[i] = (u, v)``.

    Loops ``(u, u)`` and repeated pairs are allowed.  A loop adds 2 to the
    degree of its vertex.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for i, (u, v) in enumerate(edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {i} = ({u}, {v}) has an endpoint outside [0, {self.n})")
        object.__setattr__(self, "edges", edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def has_loops(self) -> bool:
        return any(u == v for u, v in self.edges)

    def incidence(self) -> list[list[int]]:
        """Edge ids at each vertex in slot order; a loop fills two adjacent slots."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for e, (u, v) in enumerate(self.edges):
            inc[u].append(e)
            inc[v].append(e)
        return inc

    def neighbours(self) -> list[list[tuple[int, int]]]:
        """``(other endpoint, edge id)`` pairs per vertex."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for e, (u, v) in enumerate(self.edges):
            adj[u].append((v, e))
            if u != v:
                adj[v].append((u, e))
        return adj

    def disjoint_union(self, other: "Multigraph") -> "Multigraph":
        shifted = [(u + self.n, v + self.n) for u, v in other.edges]
        label = f"{self.name or 'G'}+{other.name or 'G'}"
        return Multigraph(self.n + other.n, self.edges + tuple(shifted), name=label)

    def label(self) -> str:
        return self.name or f"graph(n={self.n}, m={self.m})"


def degree_sequence(g: Multigraph) -> tuple[int, ...]:
    return tuple(g.degrees())


def is_regular(g: Multigraph) -> int | None:
    """Common degree if every vertex has the same degree, else ``None``."""
    deg = g.degrees()
    if not deg:
        return 0
    return deg[0] if all(d == deg[0] for d in deg) else None


def is_eulerian(g: Multigraph) -> bool:
    return all(d % 2 == 0 for d in g.degrees())


def is_connected(g: Multigraph) -> bool:
    if g.n <= 1:
        return True
    adj = g.neighbours()
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w, _ in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == g.n


def odd_closed_walk(g: Multigraph) -> list[int] | None:
    """Edge ids of an odd cycle, or ``None`` when ``g`` is bipartite.

    A loop is itself an odd cycle of length one.
    """
    for e, (u, v) in enumerate(g.edges):
        if u == v:
            return [e]
    adj = g.neighbours()
    colour = [-1] * g.n
    parent_edge = [-1] * g.n
    parent = [-1] * g.n
    depth = [0] * g.n
    for root in range(g.n):
        if colour[root] != -1:
            continue
        colour[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w, e in adj[u]:
                if colour[w] == -1:
                    colour[w] = 1 - colour[u]
                    parent[w], parent_edge[w], depth[w] = u, e, depth[u] + 1
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return _close_cycle(u, w, e, parent, parent_edge, depth)
    return None


def _close_cycle(u, w, e, parent, parent_edge, depth):
    # tree paths u -> lca and w -> lca, joined by the conflicting edge e
    left, right = [], []
    a, b = u, w
    while depth[a] > depth[b]:
        left.append(parent_edge[a])
        a = parent[a]
    while depth[b] > depth[a]:
        right.append(parent_edge[b])
        b = parent[b]
    while a != b:
        left.append(parent_edge[a])
        a = parent[a]
        right.append(parent_edge[b])
        b = parent[b]
    return left[::-1] + [e] + right


def is_bipartite(g: Multigraph) -> tuple[bool, list[int] | None]:
    walk = odd_closed_walk(g)
    return walk is None, walk


def check_odd_closed_walk(g: Multigraph, walk: list[int]) -> bool:
    """Validate that ``walk`` (edge ids) is a closed walk of odd length."""
    if not walk or len(walk) % 2 == 0:
        return False
    u0, v0 = g.edges[walk[0]]
    for start in {u0, v0}:
        cur = start
        ok = True
        for e in walk:
            a, b = g.edges[e]
            if cur == a:
                cur = b
            elif cur == b:
                cur = a
            else:
                ok = False
                break
        if ok and cur == start:
            return True
    return False


# text formats

def parse_edge_list(text: str) -> Multigraph:
    lines = [(i + 1, ln.split("#", 1)[0].strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(no, ln) for no, ln in lines if ln]
    if not lines:
        raise GraphFormatError("empty input", 1)
    no, header = lines[0]
    n, m = _int_pair(header, no)
    if n < 0 or m < 0:
        raise GraphFormatError("negative size in header", no)
    body = lines[1:]
    if len(body) != m:
        last = body[-1][0] if body else no
        raise GraphFormatError(f"header declares {m} edges but {len(body)} follow", last)
    edges = []
    for no, ln in body:
        u, v = _int_pair(ln, no)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex index out of range [0, {n}): {ln!r}", no)
        edges.append((u, v))
    return Multigraph(n, tuple(edges))


def _int_pair(line: str, no: int) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise GraphFormatError(f"expected two integers, got {line!r}", no)
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphFormatError(f"expected two integers, got {line!r}", no) from None


def serialize(g: Multigraph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def parse_graph6(text: str) -> Multigraph:
    """Decode a graph6 string (simple graphs only)."""
    s = text.strip()
    if s.startswith(">>"):
        if not s.startswith(">>graph6<<"):
            raise GraphFormatError(f"unsupported header {s[:12]!r}")
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphFormatError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(x < 0 or x > 63 for x in data):
        raise GraphFormatError("character outside the graph6 range")
    if data[0] < 63:
        n, pos = data[0], 1
    elif len(data) >= 4 and data[1] < 63:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        pos = 4
    elif len(data) >= 8:
        n = 0
        for x in data[2:8]:
            n = (n << 6) | x
        pos = 8
    else:
        raise GraphFormatError("truncated graph6 size field")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(data) - pos != need:
        raise GraphFormatError(f"expected {need} data bytes for n={n}, got {len(data) - pos}")
    bits = []
    for x in data[pos:]:
        bits.extend((x >> k) & 1 for k in range(5, -1, -1))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Multigraph(n, tuple(edges))


# families

def complete_graph(n: int) -> Multigraph:
    if n < 1:
        raise ValueError("K_n needs n >= 1")
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return Multigraph(n, tuple(edges), name=f"K{n}")


def cycle_graph(n: int) -> Multigraph:
    if n < 3:
        raise ValueError("C_n needs n >= 3")
    edges = [(i, (i + 1) % n) for i in range(n)]
    return Multigraph(n, tuple(edges), name=f"C{n}")


def complete_bipartite(a: int, b: int) -> Multigraph:
    if a < 1 or b < 1:
        raise ValueError("K_{a,b} needs a, b >= 1")
    edges = [(i, a + j) for i in range(a) for j in range(b)]
    return Multigraph(a + b, tuple(edges), name=f"K{a},{b}")


def complete_multipartite(*parts: int) -> Multigraph:
    if len(parts) < 2 or any(p < 1 for p in parts):
        raise ValueError("need at least two non-empty parts")
    offsets = [sum(parts[:i]) for i in range(len(parts))]
    edges = []
    for x in range(len(parts)):
        for y in range(x + 1, len(parts)):
            for i in range(parts[x]):
                for j in range(parts[y]):
                    edges.append((offsets[x] + i, offsets[y] + j))
    return Multigraph(sum(parts), tuple(edges), name="K" + ",".join(map(str, parts)))


def petersen_graph() -> Multigraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Multigraph(10, tuple(outer + spokes + inner), name="Petersen")


FAMILIES = ("K", "C", "Kab", "multipartite", "octahedron", "petersen")


def generate(spec: str) -> Multigraph:
    """Build a named graph.

    Accepted forms: ``K5``, ``K:5``, ``C6``, ``K3,3`` / ``K:3,3`` (complete
    bipartite), ``K2,2,2`` (complete multipartite), ``octahedron``,
    ``petersen`` and ``A+B`` for a disjoint union.
    """
    s = spec.strip()
    if "+" in s:
        parts = [generate(p) for p in s.split("+")]
        g = parts[0]
        for h in parts[1:]:
            g = g.disjoint_union(h)
        return g
    low = s.lower()
    if low == "petersen":
        return petersen_graph()
    if low == "octahedron":
        g = complete_multipartite(2, 2, 2)
        return Multigraph(g.n, g.edges, name="octahedron")
    head, params = low[:1], low[1:].lstrip(":")
    if head not in ("k", "c") or not params:
        raise ValueError(f"unknown graph family {spec!r}")
    try:
        nums = [int(p) for p in params.split(",")]
    except ValueError:
        raise ValueError(f"invalid parameters in {spec!r}") from None
    if head == "c":
        if len(nums) != 1:
            raise ValueError(f"C_n takes one parameter, got {spec!r}")
        return cycle_graph(nums[0])
    if len(nums) == 1:
        return complete_graph(nums[0])
    if len(nums) == 2:
        return complete_bipartite(*nums)
    return complete_multipartite(*nums)
