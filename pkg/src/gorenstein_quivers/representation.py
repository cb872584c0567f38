"""Finite-dimensional representations of a bound quiver over the rationals.

A representation assigns a space ``k^d`` to every vertex and, to every arrow
``a: x -> y``, a ``dim_y x dim_x`` matrix (columns indexed by the source
basis). A path ``a1.a2...ak`` acts by ``M[ak] * ... * M[a1]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import linalg as la
from .errors import ValidationError
from .quiver import BoundQuiver, Path


class Representation:
    def __init__(self, algebra: BoundQuiver, dims: dict, maps: dict | None = None, *, check: bool = True):
        self.algebra = algebra
        self.dims = {v: int(dims.get(v, 0)) for v in algebra.vertices}
        maps = dict(maps or {})
        self.maps = {}
        for a in algebra.quiver.arrow_list:
            m = maps.get(a.name)
            shape = (self.dims[a.target], self.dims[a.source])
            if m is None:
                m = la.zeros(*shape)
            elif not isinstance(m, la.DomainMatrix):
                m = la.from_rows(m, shape[1])
            self.maps[a.name] = m.to_sparse()
        if check:
            self.check()

    # -- invariants -----------------------------------------------------

    def check(self) -> None:
        errors = []
        for a in self.algebra.quiver.arrow_list:
            shape = (self.dims[a.target], self.dims[a.source])
            if self.maps[a.name].shape != shape:
                errors.append(f"arrow {a.name}: matrix shape {self.maps[a.name].shape} != {shape}")
        if not errors:
            for r in self.algebra.relations:
                if not la.is_zero(self.path_matrix(r)):
                    errors.append(f"relation {r} does not act as zero")
        if errors:
            raise ValidationError(errors)

    # -- basic data -----------------------------------------------------

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.algebra.vertices)

    @property
    def dimension(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.dimension == 0

    def path_matrix(self, p: Path):
        m = la.eye(self.dims[p.source])
        for name in p.arrows:
            m = self.maps[name] * m
        return m

    def dim_dict(self) -> dict[str, int]:
        return {v: d for v, d in self.dims.items() if d}

    def __repr__(self) -> str:
        dv = ",".join(f"{v}:{d}" for v, d in self.dims.items() if d)
        return f"Representation({{{dv}}})"

    def same_as(self, other: "Representation") -> bool:
        """Literal equality of dimensions and matrices (not isomorphism)."""
        return self.dims == other.dims and all(
            self.maps[a] == other.maps[a] for a in self.maps
        )

    def orbit_vectors(self, vertex: str, vector) -> dict[Path, object]:
        """``vector`` (a column at ``vertex``) pushed along every nonzero path."""
        out = {Path.trivial(vertex): vector}
        for p in self.algebra.paths_from(vertex):
            if p.arrows:
                prev = Path(p.source, self.algebra.arrows[p.arrows[-2]].target, p.arrows[:-1]) \
                    if len(p.arrows) > 1 else Path.trivial(vertex)
                out[p] = self.maps[p.arrows[-1]] * out[prev]
        return out


@dataclass
class ModuleMap:
    source: Representation
    target: Representation
    blocks: dict  # vertex -> target_dim x source_dim matrix

    def __post_init__(self):
        for v in self.source.algebra.vertices:
            if v not in self.blocks:
                self.blocks[v] = la.zeros(self.target.dims[v], self.source.dims[v])

    def check(self) -> None:
        errors = []
        for a in self.source.algebra.quiver.arrow_list:
            lhs = self.target.maps[a.name] * self.blocks[a.source]
            rhs = self.blocks[a.target] * self.source.maps[a.name]
            if lhs.to_sparse() != rhs.to_sparse():
                errors.append(f"map does not commute with arrow {a.name}")
        if errors:
            raise ValidationError(errors)

    def compose(self, after: "ModuleMap") -> "ModuleMap":
        """``after`` applied after ``self``."""
        return ModuleMap(
            self.source,
            after.target,
            {v: after.blocks[v] * self.blocks[v] for v in self.source.algebra.vertices},
        )

    def is_zero(self) -> bool:
        return all(la.is_zero(b) for b in self.blocks.values())

    def is_isomorphism(self) -> bool:
        return all(la.is_invertible(b) for b in self.blocks.values())

    def is_injective(self) -> bool:
        return all(la.rank(b) == b.shape[1] for b in self.blocks.values())

    def is_surjective(self) -> bool:
        return all(la.rank(b) == b.shape[0] for b in self.blocks.values())

    def rank_vector(self) -> dict[str, int]:
        return {v: la.rank(b) for v, b in self.blocks.items()}


def identity(m: Representation) -> ModuleMap:
    return ModuleMap(m, m, {v: la.eye(d) for v, d in m.dims.items()})


def zero_module(algebra: BoundQuiver) -> Representation:
    return Representation(algebra, {}, check=False)


# -- indecomposable projectives, injectives, simples ------------------------


def simple(algebra: BoundQuiver, x: str) -> Representation:
    return Representation(algebra, {x: 1}, check=False)


def projective(algebra: BoundQuiver, x: str) -> Representation:
    """P(x): basis the nonzero paths starting at ``x``, arrows act by extension.

    Built once per algebra and vertex; the result is shared, so treat it as read-only.
    """
    cache = algebra.__dict__.setdefault("_projective_cache", {})
    if x not in cache:
        cache[x] = _build_projective(algebra, x)
    return cache[x]


def _build_projective(algebra: BoundQuiver, x: str) -> Representation:
    dims = {y: len(algebra.paths_between(x, y)) for y in algebra.vertices}
    maps = {}
    for a in algebra.quiver.arrow_list:
        entries = {}
        for j, p in enumerate(algebra.paths_between(x, a.source)):
            q = algebra.extend(p, a.name)
            if q is not None:
                entries[(algebra.index(q), j)] = 1
        maps[a.name] = la.from_dict(entries, dims[a.target], dims[a.source])
    return Representation(algebra, dims, maps, check=False)


def injective(algebra: BoundQuiver, x: str) -> Representation:
    """I(x): basis dual to the nonzero paths ending at ``x``.

    The arrow ``a: y -> z`` sends the functional of ``a.r`` to that of ``r``
    and kills functionals of paths not starting with ``a``.
    """
    dims = {y: len(algebra.paths_between(y, x)) for y in algebra.vertices}
    maps = {}
    for a in algebra.quiver.arrow_list:
        entries = {}
        for j, q in enumerate(algebra.paths_between(a.source, x)):
            if q.arrows and q.arrows[0] == a.name:
                r = Path(a.target, x, q.arrows[1:])
                entries[(algebra.index(r), j)] = 1
        maps[a.name] = la.from_dict(entries, dims[a.target], dims[a.source])
    return Representation(algebra, dims, maps, check=False)


def regular(algebra: BoundQuiver) -> "ProjectiveSum":
    """The free module of rank one, as the sum of all P(x)."""
    return ProjectiveSum(algebra, list(algebra.vertices))


# -- sums, sub- and quotient representations -------------------------------


def direct_sum(mods: Sequence[Representation], algebra: BoundQuiver | None = None) -> Representation:
    if algebra is None:
        algebra = mods[0].algebra
    dims = {v: sum(m.dims[v] for m in mods) for v in algebra.vertices}
    maps = {
        a.name: la.block_diag([m.maps[a.name] for m in mods])
        if mods else la.zeros(0, 0)
        for a in algebra.quiver.arrow_list
    }
    return Representation(algebra, dims, maps, check=False)


def subrepresentation(m: Representation, basis: dict) -> tuple[Representation, ModuleMap]:
    """The subrepresentation spanned at each vertex by the columns of ``basis``.

    ``basis[v]`` must have independent columns and the span must be closed
    under the arrows; ``ValueError`` is raised otherwise.
    """
    alg = m.algebra
    basis = {v: basis.get(v, la.zeros(m.dims[v], 0)) for v in alg.vertices}
    dims = {v: b.shape[1] for v, b in basis.items()}
    maps = {}
    for a in alg.quiver.arrow_list:
        maps[a.name] = la.solve(basis[a.target], m.maps[a.name] * basis[a.source])
    sub = Representation(alg, dims, maps, check=False)
    return sub, ModuleMap(sub, m, dict(basis))


def quotient(m: Representation, basis: dict) -> tuple[Representation, ModuleMap]:
    """``m`` modulo the subrepresentation spanned by ``basis``."""
    alg = m.algebra
    proj, comp = {}, {}
    for v in alg.vertices:
        n = m.dims[v]
        u = basis.get(v, la.zeros(n, 0))
        c = la.complement(u)
        comp[v] = c
        full = la.hstack([u, c], n)
        if n:
            inv = full.to_dense().inv().to_sparse()
            proj[v] = inv.extract(list(range(u.shape[1], n)), list(range(n)))
        else:
            proj[v] = la.zeros(0, 0)
    dims = {v: comp[v].shape[1] for v in alg.vertices}
    maps = {
        a.name: proj[a.target] * m.maps[a.name] * comp[a.source]
        for a in alg.quiver.arrow_list
    }
    q = Representation(alg, dims, maps, check=False)
    return q, ModuleMap(m, q, proj)


def kernel(f: ModuleMap) -> tuple[Representation, ModuleMap]:
    return subrepresentation(f.source, {v: la.kernel(b) for v, b in f.blocks.items()})


def image_basis(f: ModuleMap) -> dict:
    return {v: la.column_space(b) for v, b in f.blocks.items()}


def cokernel(f: ModuleMap) -> tuple[Representation, ModuleMap]:
    return quotient(f.target, image_basis(f))


# -- sums of indecomposable projectives ------------------------------------


class ProjectiveSum:
    """``P(x_1) + ... + P(x_n)`` with the summand decomposition recorded.

    At a vertex ``y`` the coordinates are grouped by summand; inside summand
    ``i`` they follow ``algebra.paths_between(x_i, y)``.
    """

    def __init__(self, algebra: BoundQuiver, vertices: Iterable[str]):
        self.algebra = algebra
        self.vertices = list(vertices)
        self.module = direct_sum([projective(algebra, x) for x in self.vertices], algebra)
        self._offsets = {}
        for y in algebra.vertices:
            off = 0
            for i, x in enumerate(self.vertices):
                self._offsets[(i, y)] = off
                off += len(algebra.paths_between(x, y))

    def coordinate(self, i: int, p: Path) -> int:
        """Coordinate of the basis vector ``p`` of summand ``i`` (``p`` starts at x_i)."""
        return self._offsets[(i, p.target)] + self.algebra.index(p)

    def element(self, vector, y: str, i: int) -> dict[Path, object]:
        """Component of a column vector at ``y`` in summand ``i``, as path -> coefficient."""
        x = self.vertices[i]
        out = {}
        rows = vector.to_sparse().rep
        off = self._offsets[(i, y)]
        for k, p in enumerate(self.algebra.paths_between(x, y)):
            row = rows.get(off + k)
            if row and row.get(0):
                out[p] = row[0]
        return out

    def map_to(self, target: Representation, generators: Sequence) -> ModuleMap:
        """The map sending the top generator ``e_{x_i}`` to ``generators[i]``."""
        return map_from_projectives(self.algebra, self.vertices, generators, target, self.module)


def map_from_projectives(algebra, vertices, generators, target: Representation, source=None) -> ModuleMap:
    if source is None:
        source = direct_sum([projective(algebra, x) for x in vertices], algebra)
    cols: dict[str, list] = {y: [] for y in algebra.vertices}
    for x, g in zip(vertices, generators):
        orbit = target.orbit_vectors(x, g)
        for y in algebra.vertices:
            cols[y].extend(orbit[p] for p in algebra.paths_between(x, y))
    blocks = {y: la.hstack(cols[y], target.dims[y]) for y in algebra.vertices}
    return ModuleMap(source, target, blocks)


def path_module(algebra: BoundQuiver, p: Path) -> tuple[Representation, ModuleMap]:
    """The right ideal ``p.Lambda`` as a submodule of P(s(p))."""
    x = p.source
    basis = {}
    for y in algebra.vertices:
        cols = []
        for q in algebra.paths_between(p.target, y):
            pq = algebra.compose(p, q)
            if isinstance(pq, Path):
                cols.append(algebra.index(pq))
        n = len(algebra.paths_between(x, y))
        basis[y] = la.from_dict({(r, c): 1 for c, r in enumerate(cols)}, n, len(cols))
    return subrepresentation(projective(algebra, x), basis)
