"""String walks, string modules and string enumeration.

A walk is a start vertex plus letters ``(arrow, +1)`` (traverse the arrow)
or ``(arrow, -1)`` (traverse it backwards). Text syntax: comma-separated
arrow names with a ``~`` suffix for inverse letters, or ``@v`` for the
trivial walk at ``v``.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import linalg as la
from .errors import InvalidWalk
from .quiver import BoundQuiver
from .representation import Representation

FORWARD, INVERSE = 1, -1
DEFAULT_STRING_CAP = 100_000


@dataclass(frozen=True)
class StringWalk:
    start: str
    letters: tuple = ()

    def __len__(self) -> int:
        return len(self.letters)

    def end(self, algebra: BoundQuiver) -> str:
        v = self.start
        for name, d in self.letters:
            a = algebra.arrows[name]
            v = a.target if d == FORWARD else a.source
        return v

    def vertices(self, algebra: BoundQuiver) -> list[str]:
        out = [self.start]
        for name, d in self.letters:
            a = algebra.arrows[name]
            out.append(a.target if d == FORWARD else a.source)
        return out

    def inverse(self, algebra: BoundQuiver) -> "StringWalk":
        return StringWalk(self.end(algebra), tuple((n, -d) for n, d in reversed(self.letters)))

    def canonical(self, algebra: BoundQuiver) -> "StringWalk":
        inv = self.inverse(algebra)
        return min(self, inv, key=lambda w: (tuple((n, -d) for n, d in w.letters), w.start))

    def text(self) -> str:
        if not self.letters:
            return f"@{self.start}"
        return ",".join(n if d == FORWARD else f"{n}~" for n, d in self.letters)

    def __str__(self) -> str:
        return self.text()


def parse_walk(text: str, algebra: BoundQuiver) -> StringWalk:
    text = text.strip()
    if text.startswith("@"):
        v = text[1:]
        if v not in algebra.vertices:
            raise InvalidWalk(f"unknown vertex {v!r}")
        return StringWalk(v)
    letters = []
    for tok in text.split(","):
        tok = tok.strip()
        d = INVERSE if tok.endswith("~") else FORWARD
        name = tok.rstrip("~")
        if name not in algebra.arrows:
            raise InvalidWalk(f"unknown arrow {name!r}")
        letters.append((name, d))
    if not letters:
        raise InvalidWalk("empty walk")
    first = algebra.arrows[letters[0][0]]
    start = first.source if letters[0][1] == FORWARD else first.target
    walk = StringWalk(start, tuple(letters))
    validate_walk(walk, algebra)
    return walk


def walk_violation(walk: StringWalk, algebra: BoundQuiver) -> str | None:
    """First violated string condition, or None for a valid string."""
    if walk.start not in algebra.vertices:
        return f"unknown vertex {walk.start!r}"
    v = walk.start
    run: list[str] = []
    run_dir = 0
    prev = None
    for name, d in walk.letters:
        a = algebra.arrows.get(name)
        if a is None:
            return f"unknown arrow {name!r}"
        here = a.source if d == FORWARD else a.target
        if here != v:
            return f"letter {name}{'~' if d == INVERSE else ''} does not start at {v}"
        if prev is not None and prev == (name, -d):
            return f"walk is not reduced at {name}"
        if d == run_dir:
            run.append(name)
        else:
            run, run_dir = [name], d
        word = tuple(run) if d == FORWARD else tuple(reversed(run))
        if algebra.is_zero(word):
            return f"run {'.'.join(word)} lies in the ideal"
        v = a.target if d == FORWARD else a.source
        prev = (name, d)
    return None


def validate_walk(walk: StringWalk, algebra: BoundQuiver) -> None:
    reason = walk_violation(walk, algebra)
    if reason:
        raise InvalidWalk(reason)


def string_module(walk: StringWalk, algebra: BoundQuiver) -> Representation:
    validate_walk(walk, algebra)
    verts = walk.vertices(algebra)
    coord, dims = [], {}
    for v in verts:
        coord.append(dims.get(v, 0))
        dims[v] = dims.get(v, 0) + 1
    entries: dict[str, dict] = {name: {} for name in algebra.arrows}
    for k, (name, d) in enumerate(walk.letters):
        if d == FORWARD:
            entries[name][(coord[k + 1], coord[k])] = 1
        else:
            entries[name][(coord[k], coord[k + 1])] = 1
    maps = {}
    for name, a in algebra.arrows.items():
        maps[name] = la.from_dict(entries[name], dims.get(a.target, 0), dims.get(a.source, 0))
    return Representation(algebra, dims, maps)


@dataclass
class StringEnumeration:
    walks: list
    has_bands: bool
    band_witness: StringWalk | None
    truncated: bool


def _extensions(walk: StringWalk, algebra: BoundQuiver):
    v = walk.end(algebra)
    for a in algebra.quiver.out_arrows(v):
        yield StringWalk(walk.start, walk.letters + ((a.name, FORWARD),))
    for a in algebra.quiver.in_arrows(v):
        yield StringWalk(walk.start, walk.letters + ((a.name, INVERSE),))


def _is_band_candidate(walk: StringWalk, algebra: BoundQuiver) -> bool:
    if not walk.letters or walk.end(algebra) != walk.start:
        return False
    dirs = {d for _, d in walk.letters}
    if len(dirs) < 2:
        return False
    cube = StringWalk(walk.start, walk.letters * 3)
    return walk_violation(cube, algebra) is None


def enumerate_strings(algebra: BoundQuiver, max_length: int | None = None, *,
                      cap: int = DEFAULT_STRING_CAP) -> StringEnumeration:
    """All strings up to inversion, shortest first.

    Without ``max_length`` the search runs until no walk extends; once a band
    shows up (or ``cap`` walks are reached) it stops and is flagged as truncated.
    """
    seen = set()
    out = []
    band = None
    truncated = False
    frontier = [StringWalk(v) for v in algebra.vertices]
    length = 0
    while frontier:
        nxt = []
        for w in frontier:
            key = w.canonical(algebra)
            if key not in seen:
                seen.add(key)
                out.append(key)
            if band is None and _is_band_candidate(w, algebra):
                band = w
            if max_length is not None and length >= max_length:
                continue
            for e in _extensions(w, algebra):
                if walk_violation(e, algebra) is None:
                    nxt.append(e)
        frontier = nxt
        length += 1
        # with a band present the unbounded search would never end
        if len(seen) > cap or (band is not None and max_length is None):
            truncated = bool(frontier)
            break
    out.sort(key=lambda w: (len(w.letters), w.letters, w.start))
    return StringEnumeration(out, band is not None, band, truncated)
