"""Exact convex hulls and normalized volumes of lattice polytopes.

Everything is done in integer arithmetic.  A polytope of dimension ``d``
living in ``Z^n`` carries an affine lattice chart (anchor point plus a
saturated basis of its direction lattice); facet inequalities are stored in
chart coordinates.  For full-dimensional polytopes the chart is the identity
with anchor at the origin, so facet data is directly in ambient coordinates.

Facets are found by brute force: every ``d``-subset of points that spans a
hyperplane is tested for one-sidedness.  That is plenty at the sizes we care
about (a dozen points, ambient dimension at most five).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence, Union

from . import integer_linalg as il

Point = tuple[int, ...]


@dataclass(frozen=True)
class Chart:
    """Affine lattice chart ``y -> anchor + sum(y_k * basis[k])``."""

    anchor: Point
    basis: tuple[Point, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_chart(self, x: Sequence[int]) -> Point:
        diff = [a - b for a, b in zip(x, self.anchor)]
        return il.integer_coordinates(self.basis, diff)

    def from_chart(self, y: Sequence[int]) -> Point:
        out = list(self.anchor)
        for coef, b in zip(y, self.basis):
            for i, bi in enumerate(b):
                out[i] += coef * bi
        return tuple(out)

    def normal_to_ambient(self, normal: Sequence[int]) -> Point:
        """Ambient primitive conormal for a full-dimensional chart."""
        if len(self.basis) != len(self.anchor):
            raise ValueError("ambient conormal only defined for full-dimensional charts")
        # <nu, y> with x - anchor = B^T y  =>  <B^{-1} nu, x - anchor>
        Binv = il.inverse_unimodular(il.transpose(self.basis))
        return tuple(il.matvec(il.transpose(Binv), normal))


@dataclass(frozen=True)
class FacetData:
    """Facet ``{<normal, y> = offset}`` with the polytope in ``<normal, y> >= offset``.

    ``normal`` and ``offset`` are in the owning polytope's chart coordinates;
    ``incident`` indexes the polytope's vertex list.
    """

    normal: Point
    offset: int
    incident: frozenset[int]


@dataclass(frozen=True)
class Face:
    """A face given by its vertices.  The empty face has ``dim == -1``."""

    points: tuple[Point, ...]
    dim: int
    chart: Chart | None
    indices: frozenset[int] = field(default=frozenset(), compare=False)

    @property
    def is_empty(self) -> bool:
        return self.dim < 0


@dataclass(frozen=True)
class LatticePolytope:
    ambient_dim: int
    vertices: tuple[Point, ...]
    dim: int
    chart: Chart
    facets: tuple[FacetData, ...]

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    def chart_vertices(self) -> list[Point]:
        return [self.chart.to_chart(v) for v in self.vertices]

    def contains(self, x: Sequence[int]) -> bool:
        try:
            y = self.chart.to_chart(x)
        except ValueError:
            return False
        return all(il.dot(f.normal, y) >= f.offset for f in self.facets) and (
            self.dim > 0 or tuple(x) == self.vertices[0]
        )

    def ambient_facets(self) -> list[tuple[Point, int]]:
        """Facet inequalities ``(rho, b)`` in ambient coordinates (full-dimensional only)."""
        if not self.is_full_dimensional:
            raise ValueError("polytope is not full-dimensional")
        return [(f.normal, f.offset) for f in self.facets]


def _cofactor_normal(rows: Sequence[Sequence[int]], d: int) -> list[int]:
    # normal to the span of d-1 vectors in Z^d (generalised cross product)
    normal = []
    for k in range(d):
        minor = [[r[c] for c in range(d) if c != k] for r in rows]
        normal.append((-1) ** k * il.det(minor))
    return normal


def _chart_for(points: Sequence[Point]) -> Chart:
    n = len(points[0])
    anchor = points[0]
    diffs = [tuple(a - b for a, b in zip(p, anchor)) for p in points[1:]]
    basis = il.lattice_basis_of_span(diffs)
    if len(basis) == n:
        return Chart(tuple([0] * n), tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))
    return Chart(anchor, tuple(basis))


def _facets_in_chart(ys: Sequence[Point], d: int) -> list[tuple[Point, int, frozenset[int]]]:
    found: dict[Point, tuple[Point, int, frozenset[int]]] = {}
    for subset in combinations(range(len(ys)), d):
        base = ys[subset[0]]
        rows = [[a - b for a, b in zip(ys[s], base)] for s in subset[1:]]
        normal = _cofactor_normal(rows, d)
        if not any(normal):
            continue
        normal = il.primitive_vector(normal)
        beta = il.dot(normal, base)
        vals = [il.dot(normal, y) - beta for y in ys]
        if all(v >= 0 for v in vals):
            pass
        elif all(v <= 0 for v in vals):
            normal = tuple(-x for x in normal)
            beta = -beta
        else:
            continue
        if normal not in found:
            incident = frozenset(i for i, v in enumerate(vals) if v == 0)
            found[normal] = (normal, beta, incident)
    return list(found.values())


@lru_cache(maxsize=4096)
def _hull(points: tuple[Point, ...]) -> LatticePolytope:
    n = len(points[0])
    chart = _chart_for(points)
    d = chart.dim
    if d == 0:
        return LatticePolytope(n, (points[0],), 0, chart, ())
    ys = [chart.to_chart(p) for p in points]
    raw = _facets_in_chart(ys, d)
    # a point is a vertex iff the normals of its tight facets have full rank
    keep = []
    for i in range(len(points)):
        tight = [nrm for nrm, _, inc in raw if i in inc]
        if len(tight) >= d and il.rank(tight) == d:
            keep.append(i)
    reindex = {old: new for new, old in enumerate(keep)}
    vertices = tuple(points[i] for i in keep)
    facets = tuple(
        FacetData(nrm, beta, frozenset(reindex[i] for i in inc if i in reindex))
        for nrm, beta, inc in sorted(raw)
    )
    return LatticePolytope(n, vertices, d, chart, facets)


def convex_hull(points: Iterable[Sequence[int]]) -> LatticePolytope:
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        raise ValueError("convex_hull of an empty point set")
    if len({len(p) for p in pts}) != 1:
        raise ValueError("points of mixed dimension")
    return _hull(tuple(pts))


def face_from_points(points: Iterable[Sequence[int]], indices: Iterable[int] = ()) -> Face:
    pts = tuple(sorted({tuple(p) for p in points}))
    if not pts:
        return Face((), -1, None, frozenset(indices))
    chart = _chart_for(pts)
    return Face(pts, chart.dim, chart, frozenset(indices))


def faces_of_codim_one(p: LatticePolytope) -> list[Face]:
    if p.dim == 0:
        return [Face((), -1, None)]
    out = []
    for f in p.facets:
        idx = sorted(f.incident)
        out.append(face_from_points([p.vertices[i] for i in idx], idx))
    return out


def all_faces(p: LatticePolytope) -> list[Face]:
    """Every nonempty proper face, found by intersecting facet incidence sets."""
    sets = {f.incident for f in p.facets}
    frontier = set(sets)
    while frontier:
        new = set()
        for a in frontier:
            for b in sets:
                c = a & b
                if c and c not in sets:
                    new.add(c)
        sets |= new
        frontier = new
    faces = [face_from_points([p.vertices[i] for i in s], s) for s in sets]
    return sorted(faces, key=lambda f: (f.dim, f.points))


def _as_polytope(f: Union[Face, LatticePolytope]) -> LatticePolytope:
    if isinstance(f, LatticePolytope):
        return f
    if f.is_empty:
        raise ValueError("the empty face has no volume")
    return convex_hull(f.points)


@lru_cache(maxsize=8192)
def _volume(p: LatticePolytope, anchor: int) -> int:
    if p.dim == 0:
        return 1
    ys = p.chart_vertices()
    apex = ys[anchor]
    total = 0
    for f in p.facets:
        if anchor in f.incident:
            continue
        height = il.dot(f.normal, apex) - f.offset
        facet = convex_hull([p.vertices[i] for i in f.incident])
        total += height * _volume(facet, 0)
    return total


def normalized_volume(f: Union[Face, LatticePolytope], anchor: int = 0) -> int:
    """``d!`` times the Euclidean volume in the induced lattice (a point has volume 1).

    Computed by coning from vertex ``anchor`` over the facets missing it.
    """
    p = _as_polytope(f)
    if not 0 <= anchor < len(p.vertices):
        raise IndexError("anchor vertex out of range")
    return _volume(p, anchor)


def inner_conormal(p: LatticePolytope, f: Face) -> tuple[Point, int]:
    """Primitive inward conormal ``(rho, b)`` of the facet ``f`` of ``p`` (chart coordinates)."""
    target = set(f.points)
    for fd in p.facets:
        if {p.vertices[i] for i in fd.incident} == target:
            return fd.normal, fd.offset
    raise ValueError("face is not a facet of the polytope")


def lattice_height(rho: Sequence[int], b: int, a: Sequence[int]) -> int:
    return il.dot(rho, a) - b
