"""Finite quivers, paths and monomial bound quivers.

Composition is written left to right: the path ``alpha.beta`` traverses
``alpha`` first and then ``beta``, so ``target(alpha) == source(beta)``.
A relation is a path of length at least two; the algebra is the path algebra
modulo the ideal spanned by all paths containing a relation as a contiguous
subpath.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import NonAdmissible, SchemaError, ValidationError

DEFAULT_PATH_CAP = 10**6


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    """A path in a quiver; trivial when ``arrows`` is empty."""

    source: str
    target: str
    arrows: tuple[str, ...] = ()

    @classmethod
    def trivial(cls, vertex: str) -> "Path":
        return cls(vertex, vertex, ())

    def __len__(self) -> int:
        return len(self.arrows)

    def __bool__(self) -> bool:
        # trivial paths are still nonzero; only ZERO / NON_COMPOSABLE are falsy
        return True

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def sort_key(self):
        return (len(self.arrows), self.arrows, self.source)

    def __str__(self) -> str:
        if not self.arrows:
            return f"e_{self.source}"
        return ".".join(self.arrows)


class _Outcome:
    def __init__(self, name: str):
        self._name = name

    def __repr__(self) -> str:
        return self._name

    def __bool__(self) -> bool:
        return False


ZERO = _Outcome("ZERO")
NON_COMPOSABLE = _Outcome("NON_COMPOSABLE")


class Quiver:
    """Vertices plus named arrows; loops and parallel arrows are allowed."""

    def __init__(self, vertices: Iterable[str], arrows: Iterable[Arrow]):
        self.vertices = tuple(vertices)
        self.arrow_list = tuple(arrows)
        self.arrows = {a.name: a for a in self.arrow_list}
        errors = self._check()
        if errors:
            raise ValidationError(errors)
        self.vertices = tuple(sorted(self.vertices))
        self.arrow_list = tuple(sorted(self.arrow_list, key=lambda a: a.name))

    def _check(self) -> list[str]:
        errors = []
        seen = set()
        for v in self.vertices:
            if v in seen:
                errors.append(f"duplicate vertex {v!r}")
            seen.add(v)
        names = set()
        for a in self.arrow_list:
            if a.name in names:
                errors.append(f"duplicate arrow name {a.name!r}")
            names.add(a.name)
            for end in (a.source, a.target):
                if end not in seen:
                    errors.append(f"arrow {a.name!r} has undeclared endpoint {end!r}")
        return errors

    def out_arrows(self, vertex: str) -> list[Arrow]:
        return [a for a in self.arrow_list if a.source == vertex]

    def in_arrows(self, vertex: str) -> list[Arrow]:
        return [a for a in self.arrow_list if a.target == vertex]

    def path(self, arrows: Iterable[str], start: str | None = None) -> Path:
        """Build a path from arrow names, checking composability."""
        names = tuple(arrows)
        if not names:
            if start is None:
                raise ValueError("trivial path needs a vertex")
            return Path.trivial(start)
        for n in names:
            if n not in self.arrows:
                raise ValueError(f"unknown arrow {n!r}")
        for a, b in zip(names, names[1:]):
            if self.arrows[a].target != self.arrows[b].source:
                raise ValueError(f"arrows {a!r} and {b!r} do not compose")
        return Path(self.arrows[names[0]].source, self.arrows[names[-1]].target, names)


class BoundQuiver:
    """A quiver with a minimal set of monomial relations.

    Instances are treated as immutable; the basis of nonzero paths and the
    derived lookup tables are computed once, on first use.
    """

    def __init__(self, quiver: Quiver, relations: Iterable[Path], *, cap: int = DEFAULT_PATH_CAP):
        self.quiver = quiver
        self.relations = tuple(sorted(set(relations), key=Path.sort_key))
        self.cap = cap
        errors = self._check_relations()
        if errors:
            raise ValidationError(errors)
        self._rel_set = {r.arrows for r in self.relations}
        self._max_rel = max((len(r) for r in self.relations), default=0)
        if self._has_infinite_paths():
            raise NonAdmissible(["infinitely many nonzero paths: ideal is not admissible"])
        self.nonzero_paths

    # -- validation -----------------------------------------------------

    def _check_relations(self) -> list[str]:
        errors = []
        rels = [r.arrows for r in self.relations]
        for r in self.relations:
            if len(r) < 2:
                errors.append(f"relation {r} has length < 2")
        for r in rels:
            for s in rels:
                if r != s and _is_subpath(r, s):
                    errors.append(
                        f"relation {'.'.join(r)} is nested in relation {'.'.join(s)}"
                    )
        return errors

    def _has_infinite_paths(self) -> bool:
        # Nonzero paths are words avoiding finitely many factors, so the
        # language is infinite iff the automaton whose states are the nonzero
        # words of length max(L-1, 1) has a cycle (L = longest relation).
        s = max(self._max_rel - 1, 1)
        states = [Path.trivial(v) for v in self.vertices]
        for _ in range(s):
            nxt = []
            for p in states:
                for a in self.quiver.out_arrows(p.target):
                    q = self.extend(p, a.name)
                    if q is not None:
                        nxt.append(q)
            states = nxt
        succ: dict[tuple, list[tuple]] = {}
        for p in states:
            succ[p.arrows] = []
            for a in self.quiver.out_arrows(p.target):
                q = self.extend(p, a.name)
                if q is not None:
                    succ[p.arrows].append(q.arrows[-s:])
        indeg = {k: 0 for k in succ}
        for k, vs in succ.items():
            for v in vs:
                indeg[v] += 1
        ready = [k for k, d in indeg.items() if d == 0]
        removed = 0
        while ready:
            k = ready.pop()
            removed += 1
            for v in succ[k]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    ready.append(v)
        return removed < len(succ)

    # -- path arithmetic -----------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @property
    def arrows(self) -> dict[str, Arrow]:
        return self.quiver.arrows

    def _suffix_hits_relation(self, arrows: tuple[str, ...]) -> bool:
        n = len(arrows)
        for k in range(2, min(n, self._max_rel) + 1):
            if arrows[n - k:] in self._rel_set:
                return True
        return False

    def is_zero(self, arrows: tuple[str, ...]) -> bool:
        """True when the arrow word contains a relation as a contiguous subpath."""
        for end in range(2, len(arrows) + 1):
            if self._suffix_hits_relation(arrows[:end]):
                return True
        return False

    def extend(self, p: Path, arrow: str) -> Path | None:
        """``p`` followed by ``arrow``, assuming ``p`` itself is nonzero.

        Returns None when the result lies in the ideal.
        """
        a = self.arrows[arrow]
        assert a.source == p.target
        word = p.arrows + (arrow,)
        if self._suffix_hits_relation(word):
            return None
        return Path(p.source, a.target, word)

    def compose(self, p: Path, q: Path):
        """``p`` then ``q``: a Path, ``ZERO`` or ``NON_COMPOSABLE``."""
        if p.target != q.source:
            return NON_COMPOSABLE
        word = p.arrows + q.arrows
        if self.is_zero(word):
            return ZERO
        return Path(p.source, q.target, word)

    @cached_property
    def nonzero_paths(self) -> tuple[Path, ...]:
        """Basis of the algebra ordered by length, then arrow names."""
        found: list[Path] = []
        queue = deque(Path.trivial(v) for v in self.vertices)
        out = {v: [a.name for a in self.quiver.out_arrows(v)] for v in self.vertices}
        while queue:
            p = queue.popleft()
            found.append(p)
            if len(found) > self.cap:
                raise NonAdmissible(
                    [f"more than {self.cap} nonzero paths: ideal is not admissible"]
                )
            for name in out[p.target]:
                q = self.extend(p, name)
                if q is not None:
                    queue.append(q)
        found.sort(key=Path.sort_key)
        return tuple(found)

    @cached_property
    def _blocks(self) -> dict[tuple[str, str], tuple[Path, ...]]:
        blocks: dict[tuple[str, str], list[Path]] = {}
        for p in self.nonzero_paths:
            blocks.setdefault((p.source, p.target), []).append(p)
        return {k: tuple(v) for k, v in blocks.items()}

    @cached_property
    def _index(self) -> dict[Path, int]:
        return {p: i for block in self._blocks.values() for i, p in enumerate(block)}

    def paths_between(self, x: str, y: str) -> tuple[Path, ...]:
        """Nonzero paths from ``x`` to ``y``; the trivial path comes first."""
        return self._blocks.get((x, y), ())

    def paths_from(self, x: str) -> tuple[Path, ...]:
        return tuple(p for p in self.nonzero_paths if p.source == x)

    def paths_to(self, x: str) -> tuple[Path, ...]:
        return tuple(p for p in self.nonzero_paths if p.target == x)

    def index(self, p: Path) -> int:
        """Position of ``p`` inside ``paths_between(p.source, p.target)``."""
        return self._index[p]

    @property
    def dimension(self) -> int:
        return len(self.nonzero_paths)

    def path(self, arrows: Iterable[str], start: str | None = None) -> Path:
        return self.quiver.path(arrows, start)

    def is_relation(self, p: Path) -> bool:
        return p.arrows in self._rel_set

    # -- serialisation ----------------------------------------------------

    def to_document(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [
                {"name": a.name, "from": a.source, "to": a.target}
                for a in self.quiver.arrow_list
            ],
            "relations": [list(r.arrows) for r in self.relations],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_document(), indent=2, sort_keys=True)

    def to_dot(self) -> str:
        lines = ["digraph Q {"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for a in self.quiver.arrow_list:
            lines.append(f'  "{a.source}" -> "{a.target}" [label="{a.name}"];')
        for r in self.relations:
            lines.append(f"  // relation {'.'.join(r.arrows)}")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoundQuiver):
            return NotImplemented
        return self.to_document() == other.to_document()

    def __hash__(self) -> int:
        return hash(json.dumps(self.to_document(), sort_keys=True))

    def __repr__(self) -> str:
        return (
            f"BoundQuiver({len(self.vertices)} vertices, "
            f"{len(self.quiver.arrow_list)} arrows, {len(self.relations)} relations)"
        )


def _is_subpath(small: tuple, big: tuple) -> bool:
    n, m = len(small), len(big)
    return any(big[i:i + n] == small for i in range(m - n + 1))


def bound_quiver(vertices, arrows, relations, *, cap: int = DEFAULT_PATH_CAP) -> BoundQuiver:
    """Convenience constructor: ``arrows`` as ``(name, source, target)`` triples and
    ``relations`` as sequences of arrow names."""
    q = Quiver([str(v) for v in vertices], [Arrow(n, str(s), str(t)) for n, s, t in arrows])
    rels = []
    errors = []
    for r in relations:
        try:
            rels.append(q.path(tuple(r)))
        except ValueError as exc:
            errors.append(f"relation {'.'.join(r)}: {exc}")
    if errors:
        raise ValidationError(errors)
    return BoundQuiver(q, rels, cap=cap)


def parse_quiver(document, *, cap: int = DEFAULT_PATH_CAP) -> BoundQuiver:
    """Parse the JSON quiver schema (a string or an already-decoded mapping)."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise SchemaError("quiver document must be an object")
    missing = [k for k in ("vertices", "arrows") if k not in document]
    if missing:
        raise SchemaError(f"missing keys: {', '.join(missing)}")
    vertices = document["vertices"]
    arrows = document["arrows"]
    relations = document.get("relations", [])
    if not isinstance(vertices, list) or not isinstance(arrows, list) or not isinstance(relations, list):
        raise SchemaError("vertices, arrows and relations must be lists")
    triples = []
    for a in arrows:
        if not isinstance(a, dict) or not {"name", "from", "to"} <= a.keys():
            raise SchemaError(f"malformed arrow entry {a!r}")
        triples.append((str(a["name"]), str(a["from"]), str(a["to"])))
    for r in relations:
        if not isinstance(r, list) or not all(isinstance(x, str) for x in r):
            raise SchemaError(f"malformed relation {r!r}")
    return bound_quiver([str(v) for v in vertices], triples, relations, cap=cap)
