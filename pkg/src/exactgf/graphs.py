"""Grid graphs, graph-times-path products, and exact tree/forest counting
through Laplacian determinants.

Vertices of a k x n grid are numbered column-major: (i, j) with 1 <= i <= k,
1 <= j <= n maps to (j-1)*k + (i-1), so each layer of the product occupies a
contiguous index block and the Laplacian is banded with half-bandwidth k.
That banding is what keeps the determinants cheap even for 200x200 matrices
of huge integers.

Edges carry an orientation label: edges inside a layer are "vertical",
edges between consecutive layers are "horizontal".  The vertical label is
what the weighted Laplacian marks with the variable v when counting
spanning trees by their number of vertical edges.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .core import Matrix, Poly, det_bareiss
from .errors import BadVertexPair

VERTICAL = "vertical"
HORIZONTAL = "horizontal"
OTHER = "other"

_LABELS = (VERTICAL, HORIZONTAL, OTHER)

#: The weight marker for building the v-weighted Laplacian.
VAR_V = Poly((0, 1))


@dataclass(frozen=True)
class LabeledGraph:
    """Undirected multigraph with labeled edges.

    edges is a tuple of (u, v, label, multiplicity) with 0-based vertex
    indices, u != v, and label one of vertical/horizontal/other.
    """

    n_vertices: int
    edges: tuple

    def __post_init__(self):
        norm = []
        for e in self.edges:
            if len(e) == 3:
                u, v, label = e
                mult = 1
            else:
                u, v, label, mult = e
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise ValueError(f"vertex out of range in edge {e}")
            if u == v:
                raise ValueError("self-loops are not allowed")
            if label not in _LABELS:
                raise ValueError(f"unknown label {label!r}")
            if mult < 1:
                raise ValueError("multiplicity must be positive")
            norm.append((u, v, label, mult))
        object.__setattr__(self, "edges", tuple(norm))

    def expanded_edges(self):
        """Edges with multiplicities unrolled (parallel edges distinct)."""
        out = []
        for u, v, label, mult in self.edges:
            out.extend([(u, v, label)] * mult)
        return out

    def is_connected(self) -> bool:
        if self.n_vertices <= 1:
            return True
        parent = list(range(self.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        comp = self.n_vertices
        for u, v, _label, _m in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                comp -= 1
        return comp == 1


def grid_graph(k: int, n: int) -> LabeledGraph:
    """The k x n grid graph with unit-step adjacency."""
    if k < 1 or n < 1:
        raise ValueError("grid dimensions must be positive")

    def idx(i, j):
        return (j - 1) * k + (i - 1)

    edges = []
    for j in range(1, n + 1):
        for i in range(1, k + 1):
            if i < k:
                edges.append((idx(i, j), idx(i + 1, j), VERTICAL, 1))
            if j < n:
                edges.append((idx(i, j), idx(i, j + 1), HORIZONTAL, 1))
    return LabeledGraph(k * n, tuple(edges))


def path_graph(k: int) -> LabeledGraph:
    """Path on k vertices; edges labeled vertical (it is grid_graph(k, 1))."""
    return grid_graph(k, 1)


def product_with_path(g: LabeledGraph, n: int) -> LabeledGraph:
    """n stacked copies of g, consecutive copies joined vertex-to-vertex.

    All intra-copy edges are labeled vertical, the copy-to-copy edges
    horizontal, so grid_graph(k, n) == product_with_path(path_graph(k), n).
    """
    if n < 1:
        raise ValueError("need at least one layer")
    k = g.n_vertices
    edges = []
    for j in range(n):
        base = j * k
        for u, v, _label, mult in g.edges:
            edges.append((base + u, base + v, VERTICAL, mult))
        if j + 1 < n:
            for u in range(k):
                edges.append((base + u, base + k + u, HORIZONTAL, 1))
    return LabeledGraph(k * n, tuple(edges))


def laplacian(g: LabeledGraph, vertical_weight=1) -> Matrix:
    """Weighted Laplacian: off-diagonal (i,j) entry is minus the total
    weight of edges between i and j; rows sum to zero.

    vertical_weight applies to vertical edges only: pass 1 for plain
    counting, VAR_V for the polynomial statistic, or any exact scalar to
    evaluate that polynomial Laplacian at a point.
    """
    n = g.n_vertices
    symbolic = isinstance(vertical_weight, Poly)
    zero = Poly() if symbolic else 0
    rows = [[zero] * n for _ in range(n)]
    for u, v, label, mult in g.edges:
        w = vertical_weight * mult if label == VERTICAL else mult
        if symbolic and not isinstance(w, Poly):
            w = Poly((w,))
        rows[u][v] = rows[u][v] - w
        rows[v][u] = rows[v][u] - w
        rows[u][u] = rows[u][u] + w
        rows[v][v] = rows[v][v] + w
    return Matrix(rows)


def spanning_tree_count(g: LabeledGraph) -> int:
    """Number of spanning trees: determinant of the Laplacian with the
    last row and column deleted (0 when g is disconnected)."""
    lap = laplacian(g)
    reduced = lap.delete_rows_cols({g.n_vertices - 1})
    return det_bareiss(reduced)


def two_forest_count(g: LabeledGraph, a: int, b: int) -> int:
    """Spanning forests with exactly two components, one containing a and
    the other containing b: the Laplacian minor with rows and columns
    {a, b} deleted (all-minors matrix-tree)."""
    if a == b:
        raise BadVertexPair("the two marked vertices must differ")
    lap = laplacian(g)
    reduced = lap.delete_rows_cols({a, b})
    return det_bareiss(reduced)


def ver_polynomial(g: LabeledGraph) -> Poly:
    """Spanning-tree polynomial in v, weighting each tree by v^(number of
    vertical edges).

    Computed by evaluating the v-weighted Laplacian cofactor at the
    integer points 0..D (D = total vertical multiplicity, an upper bound
    for the degree) and interpolating, so each evaluation is a fast
    integer determinant.  Evaluating the result at 1 gives the plain
    spanning-tree count.
    """
    d_bound = sum(m for _u, _v, label, m in g.edges if label == VERTICAL)
    if d_bound == 0:
        return Poly((spanning_tree_count(g),))
    points = list(range(d_bound + 1))
    values = []
    for x in points:
        lap = laplacian(g, vertical_weight=x)
        values.append(det_bareiss(lap.delete_rows_cols({g.n_vertices - 1})))
    coeffs = _newton_interpolate(points, values)
    out = []
    for c in coeffs:
        f = Fraction(c)
        if f.denominator != 1:
            raise ArithmeticError("interpolation produced a non-integer")
        out.append(int(f))
    return Poly(out)


def _newton_interpolate(xs, ys):
    """Coefficients (ascending) of the unique degree < len(xs) polynomial
    through the given points, exact over Fraction."""
    n = len(xs)
    divided = [Fraction(y) for y in ys]
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            divided[i] = (divided[i] - divided[i - 1]) / (xs[i] - xs[i - level])
    # expand the Newton form product-by-product
    coeffs = [Fraction(0)] * n
    coeffs[0] = divided[n - 1]
    for i in range(n - 2, -1, -1):
        # multiply by (x - xs[i]) then add divided[i]
        for j in range(n - 1, 0, -1):
            coeffs[j] = coeffs[j - 1] - xs[i] * coeffs[j]
        coeffs[0] = divided[i] - xs[i] * coeffs[0]
    return coeffs


# ---------------------------------------------------------------------------
# brute-force oracles (subset enumeration, small graphs only)
# ---------------------------------------------------------------------------

def spanning_tree_count_bruteforce(g: LabeledGraph) -> int:
    """Count spanning trees by enumerating edge subsets; parallel edges
    count as distinguishable.  Intended for graphs with <= ~12 edges."""
    edges = g.expanded_edges()
    n = g.n_vertices
    if n == 1:
        return 1
    count = 0
    for subset in combinations(range(len(edges)), n - 1):
        comp, acyclic = _forest_shape(n, [edges[i] for i in subset])
        if acyclic and comp == 1:
            count += 1
    return count


def two_forest_count_bruteforce(g: LabeledGraph, a: int, b: int) -> int:
    """Count two-component spanning forests separating a from b by
    enumerating edge subsets of size n - 2."""
    if a == b:
        raise BadVertexPair("the two marked vertices must differ")
    edges = g.expanded_edges()
    n = g.n_vertices
    count = 0
    for subset in combinations(range(len(edges)), n - 2):
        chosen = [edges[i] for i in subset]
        comp, acyclic = _forest_shape(n, chosen)
        if acyclic and comp == 2 and not _same_component(n, chosen, a, b):
            count += 1
    return count


def ver_polynomial_bruteforce(g: LabeledGraph) -> Poly:
    """Spanning-tree v-polynomial by direct tree enumeration."""
    edges = g.expanded_edges()
    n = g.n_vertices
    if n == 1:
        return Poly((1,))
    counts = {}
    for subset in combinations(range(len(edges)), n - 1):
        chosen = [edges[i] for i in subset]
        comp, acyclic = _forest_shape(n, chosen)
        if acyclic and comp == 1:
            verts = sum(1 for e in chosen if e[2] == VERTICAL)
            counts[verts] = counts.get(verts, 0) + 1
    if not counts:
        return Poly()
    out = [0] * (max(counts) + 1)
    for k, c in counts.items():
        out[k] = c
    return Poly(out)


def _forest_shape(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comp = n
    acyclic = True
    for u, v, *_ in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            acyclic = False
            break
        parent[ru] = rv
        comp -= 1
    return comp, acyclic


def _same_component(n, edges, a, b):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, *_ in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    return find(a) == find(b)


def graph_from_json_dict(obj) -> LabeledGraph:
    """Build a graph from the JSON wire format
    {"n": int, "edges": [[u, v, label, mult], ...]} (mult optional)."""
    try:
        n = int(obj["n"])
        edges = tuple(tuple(e) for e in obj["edges"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed graph JSON: {exc}") from exc
    return LabeledGraph(n, edges)
