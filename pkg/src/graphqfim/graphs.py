"""Graphs, graph-state construction and graph composition.

Vertices are 0-based.  Qubit ``q`` of a graph state is vertex ``q`` and is the
``q``-th (leftmost-first) Kronecker factor of every dense object.
"""

import itertools
import warnings
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from ._config import check_dense
from .errors import ParseError, ValidationError
from .pauli import PauliString, StabilizerGroup, to_dense

CATALOG_NAMES = ("complete", "chain", "ring", "star", "triangle_pendant", "diamond")


class IsolatedVertexWarning(UserWarning):
    """A graph has a vertex of degree zero."""


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on ``n`` vertices.

    ``edges`` is a sorted tuple of ``(u, v)`` pairs with ``u < v``; build
    instances with :func:`build_graph` to get validation and normalization.
    """

    n: int
    edges: tuple

    @cached_property
    def adjacency(self):
        a = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.edges:
            a[u, v] = a[v, u] = True
        a.setflags(write=False)
        return a

    def neighbors(self, i):
        return frozenset(int(j) for j in np.flatnonzero(self.adjacency[i]))

    @cached_property
    def neighborhoods(self):
        return tuple(self.neighbors(i) for i in range(self.n))

    def degree(self, i):
        return len(self.neighborhoods[i])

    @property
    def isolated(self):
        return tuple(i for i in range(self.n) if not self.neighborhoods[i])

    @property
    def no_isolated(self):
        return not self.isolated

    def has_edge(self, u, v):
        return bool(self.adjacency[u, v])

    def relabel(self, perm):
        """Graph with vertex ``i`` renamed to ``perm[i]``."""
        perm = list(perm)
        if sorted(perm) != list(range(self.n)):
            raise ValidationError("relabeling must be a permutation of the vertices")
        return build_graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def duplicate_neighborhoods(self):
        """Pairs ``j < k`` with ``N(j) == N(k)``."""
        nb = self.neighborhoods
        return [
            (j, k)
            for j, k in itertools.combinations(range(self.n), 2)
            if nb[j] == nb[k]
        ]

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self.edges)})"


def build_graph(n, edges, warn_isolated=True):
    """Validated graph on ``n`` vertices.

    Edges are normalized to ``(min, max)``; listing the same edge twice (in
    either orientation) is an error, as are self-loops and out-of-range
    vertices.  Isolated vertices only produce an
    :class:`IsolatedVertexWarning`.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValidationError(f"vertex count must be a positive integer, got {n!r}")
    n = int(n)
    seen = set()
    for e in edges:
        try:
            u, v = (int(t) for t in e)
        except (TypeError, ValueError):
            raise ValidationError(f"edge {e!r} is not a vertex pair")
        if not (0 <= u < n and 0 <= v < n):
            raise ValidationError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise ValidationError(f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ValidationError(f"duplicate edge {key}")
        seen.add(key)
    g = Graph(n, tuple(sorted(seen)))
    if warn_isolated and n > 1 and not g.no_isolated:
        warnings.warn(
            f"graph has isolated vertices {list(g.isolated)}",
            IsolatedVertexWarning,
            stacklevel=2,
        )
    return g


def catalog(name, n=4):
    """Named graph families.

    ``complete``, ``chain`` and ``star`` accept any ``n >= 1`` (``star`` has
    center 0), ``ring`` needs ``n >= 3``.  ``triangle_pendant`` (triangle 0-1-2
    plus pendant 3 on vertex 2) and ``diamond`` (K4 minus edge 0-3) exist only
    for ``n == 4``.  Together with chain, star, ring and complete they are the
    six connected graphs on four vertices.
    """
    if name not in CATALOG_NAMES:
        raise ValidationError(f"unknown graph {name!r}; expected one of {CATALOG_NAMES}")
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValidationError(f"vertex count must be a positive integer, got {n!r}")
    if name == "complete":
        edges = itertools.combinations(range(n), 2)
    elif name == "chain":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif name == "ring":
        if n < 3:
            raise ValidationError("ring needs at least 3 vertices")
        edges = [(i, (i + 1) % n) for i in range(n)]
    elif name == "star":
        edges = [(0, i) for i in range(1, n)]
    else:
        if n != 4:
            raise ValidationError(f"{name} is defined only for n=4")
        if name == "triangle_pendant":
            edges = [(0, 1), (0, 2), (1, 2), (2, 3)]
        else:
            edges = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]
    return build_graph(n, list(edges))


def topological_number(g):
    """Number of 4-vertex subsets that are pairwise adjacent (4-cliques)."""
    a = g.adjacency
    count = 0
    for quad in itertools.combinations(range(g.n), 4):
        if all(a[u, v] for u, v in itertools.combinations(quad, 2)):
            count += 1
    return count


def sjcr_connect(a, joint_a, b, joint_b):
    """Join two graphs by identifying a single vertex of each.

    Vertices of ``a`` keep their labels; ``joint_b`` becomes ``joint_a`` and the
    remaining vertices of ``b`` follow in order, so the result has
    ``a.n + b.n - 1`` vertices.
    """
    if not 0 <= joint_a < a.n:
        raise ValidationError(f"joint {joint_a} is not a vertex of the first graph")
    if not 0 <= joint_b < b.n:
        raise ValidationError(f"joint {joint_b} is not a vertex of the second graph")
    mapping = {}
    nxt = a.n
    for v in range(b.n):
        if v == joint_b:
            mapping[v] = joint_a
        else:
            mapping[v] = nxt
            nxt += 1
    edges = list(a.edges) + [(mapping[u], mapping[v]) for u, v in b.edges]
    return build_graph(a.n + b.n - 1, edges, warn_isolated=False)


def default_cells():
    """Small connected building blocks for :func:`random_sjcr`."""
    return (
        catalog("chain", 2),
        catalog("complete", 3),
        catalog("chain", 3),
        catalog("chain", 4),
        catalog("ring", 4),
        catalog("star", 4),
    )


def random_sjcr(k, rng=None, cells=None, max_n=8):
    """Compose ``k`` cells drawn from ``cells`` by repeated single-joint
    connection at random joints, stopping early before exceeding ``max_n``
    vertices."""
    rng = np.random.default_rng(rng)
    cells = default_cells() if cells is None else tuple(cells)
    if not cells:
        raise ValidationError("need at least one cell")
    g = cells[rng.integers(len(cells))]
    for _ in range(k - 1):
        c = cells[rng.integers(len(cells))]
        if g.n + c.n - 1 > max_n:
            break
        g = sjcr_connect(g, int(rng.integers(g.n)), c, int(rng.integers(c.n)))
    return g


def stabilizer_generators(g):
    """The graph-state stabilizers ``g_i = X_i prod_{j in N(i)} Z_j``."""
    gens = []
    for i in range(g.n):
        z = 0
        for j in g.neighborhoods[i]:
            z |= 1 << j
        gens.append(PauliString(g.n, 1 << i, z))
    return StabilizerGroup(gens)


def graph_state_stabilizer(g, cap=None):
    """Density matrix ``prod_i (g_i + 1) / 2`` built from the stabilizers."""
    check_dense(g.n, cap)
    dim = 1 << g.n
    rho = np.eye(dim, dtype=complex)
    eye = np.eye(dim, dtype=complex)
    for gi in stabilizer_generators(g).generators:
        rho = rho @ ((to_dense(gi, cap) + eye) / 2)
    return rho


def graph_state_circuit(g, cap=None):
    """State vector ``prod_{(a,b) in E} CZ_ab |+>^n``.

    Each CZ is applied as its diagonal phase: amplitudes whose bits ``a`` and
    ``b`` are both set change sign.
    """
    check_dense(g.n, cap)
    dim = 1 << g.n
    psi = np.full(dim, 1 / np.sqrt(dim), dtype=complex)
    idx = np.arange(dim)
    for a, b in g.edges:
        # qubit q is bit (n - 1 - q) of the basis index
        ba = (idx >> (g.n - 1 - a)) & 1
        bb = (idx >> (g.n - 1 - b)) & 1
        psi = np.where(ba & bb, -psi, psi)
    return psi


def random_graph(n, p=0.5, rng=None, connected=False, no_isolated=True, max_tries=1000):
    """Erdos-Renyi graph, resampled until it meets the requested conditions."""
    rng = np.random.default_rng(rng)
    for _ in range(max_tries):
        edges = [
            (u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p
        ]
        g = build_graph(n, edges, warn_isolated=False)
        if no_isolated and n > 1 and not g.no_isolated:
            continue
        if connected and not is_connected(g):
            continue
        return g
    raise ValidationError(f"could not sample a graph with n={n}, p={p}")


def is_connected(g):
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in g.neighborhoods[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


# -- edge-list text format ------------------------------------------------


def parse_edge_list(text, path=None):
    """Parse the edge-list text format.

    One ``u v`` pair per line (0-based), ``#`` starts a comment, blank lines
    are ignored.  The first non-comment line may be ``n <count>``; otherwise
    the vertex count is the largest index plus one.
    """
    n = None
    edges = []
    lines = []
    seen_content = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if not seen_content and tokens[0] == "n":
            seen_content = True
            if len(tokens) != 2:
                raise ParseError("expected 'n <count>'", lineno, path)
            try:
                n = int(tokens[1])
            except ValueError:
                raise ParseError(f"bad vertex count {tokens[1]!r}", lineno, path)
            if n < 1:
                raise ParseError("vertex count must be positive", lineno, path)
            continue
        seen_content = True
        if len(tokens) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", lineno, path)
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(f"non-integer vertex in {line!r}", lineno, path)
        if u < 0 or v < 0:
            raise ParseError("vertex indices must be non-negative", lineno, path)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno, path)
        key = (min(u, v), max(u, v))
        if key in lines:
            raise ParseError(f"duplicate edge {key}", lineno, path)
        if n is not None and max(u, v) >= n:
            raise ParseError(f"vertex {max(u, v)} out of range for n={n}", lineno, path)
        lines.append(key)
        edges.append((key, lineno))
    if n is None:
        if not edges:
            raise ParseError("edge list is empty and declares no vertex count", None, path)
        n = max(max(e) for e, _ in edges) + 1
    return build_graph(n, [e for e, _ in edges])


def read_edge_list(path):
    path = Path(path)
    return parse_edge_list(path.read_text(), path=str(path))


def format_edge_list(g):
    lines = [f"n {g.n}"]
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"
