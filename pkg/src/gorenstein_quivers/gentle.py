"""Gentle and string algebra combinatorics: the (g1)-(g4) conditions,
saturated cycles, gentle arrows, critical paths and the Gorenstein-projective
strings attached to saturated cycles.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotGentle
from .quiver import BoundQuiver, Path
from .strings import FORWARD, StringWalk


def min_rotation(cycle: tuple) -> tuple:
    if not cycle:
        return cycle
    return min(cycle[k:] + cycle[:k] for k in range(len(cycle)))


@dataclass
class GentleProfile:
    is_gentle: bool
    violations: list = field(default_factory=list)
    is_string: bool = False
    saturated_cycles: list = field(default_factory=list)
    gentle_arrows: list = field(default_factory=list)
    critical_paths: list = field(default_factory=list)
    n_lambda: int = 0

    def to_dict(self) -> dict:
        return {
            "is_gentle": self.is_gentle,
            "is_string": self.is_string,
            "violations": list(self.violations),
            "saturated_cycles": [".".join(c) for c in self.saturated_cycles],
            "gentle_arrows": list(self.gentle_arrows),
            "critical_paths": [".".join(p.arrows) for p in self.critical_paths],
            "n_lambda": self.n_lambda,
        }


def _quadratic_zero(algebra: BoundQuiver, a: str, b: str) -> bool:
    return algebra.is_relation(Path(algebra.arrows[a].source, algebra.arrows[b].target, (a, b)))


def relation_successors(algebra: BoundQuiver) -> dict[str, list[str]]:
    """``a -> [b, ...]`` with ``a.b`` a quadratic relation."""
    out: dict[str, list[str]] = {a: [] for a in algebra.arrows}
    for r in algebra.relations:
        if len(r.arrows) == 2:
            out[r.arrows[0]].append(r.arrows[1])
    return out


def gentle_violations(algebra: BoundQuiver) -> tuple[list[str], list[str]]:
    """``(gentle violations, string-algebra violations)``, each a list of messages."""
    q = algebra.quiver
    g1, g2, g3, g4 = [], [], [], []
    for v in algebra.vertices:
        if len(q.out_arrows(v)) > 2:
            g1.append(f"(g1) vertex {v} has {len(q.out_arrows(v))} outgoing arrows")
        if len(q.in_arrows(v)) > 2:
            g1.append(f"(g1) vertex {v} has {len(q.in_arrows(v))} incoming arrows")
    for r in algebra.relations:
        if len(r.arrows) != 2:
            g2.append(f"(g2) relation {'.'.join(r.arrows)} has length {len(r.arrows)}")
    for b in sorted(algebra.arrows):
        arrow = algebra.arrows[b]
        before = q.in_arrows(arrow.source)
        after = q.out_arrows(arrow.target)
        pre_in = [a.name for a in before if _quadratic_zero(algebra, a.name, b)]
        post_in = [c.name for c in after if _quadratic_zero(algebra, b, c.name)]
        pre_out = [a.name for a in before if not algebra.is_zero((a.name, b))]
        post_out = [c.name for c in after if not algebra.is_zero((b, c.name))]
        if len(pre_in) > 1:
            g3.append(f"(g3) arrows {', '.join(pre_in)} all compose to zero before {b}")
        if len(post_in) > 1:
            g3.append(f"(g3) arrows {', '.join(post_in)} all compose to zero after {b}")
        if len(pre_out) > 1:
            g4.append(f"(g4) arrows {', '.join(pre_out)} all compose nonzero before {b}")
        if len(post_out) > 1:
            g4.append(f"(g4) arrows {', '.join(post_out)} all compose nonzero after {b}")
    return g1 + g2 + g3 + g4, g1 + g4


def saturated_cycles(algebra: BoundQuiver) -> list[tuple]:
    """Cycles (no repeated arrow) all of whose consecutive products are relations,
    as minimal rotations."""
    succ = relation_successors(algebra)
    found = set()

    def dfs(start, path, used):
        last = path[-1]
        for nxt in succ[last]:
            if nxt == start:
                found.add(min_rotation(tuple(path)))
            elif nxt not in used and nxt > start:
                used.add(nxt)
                path.append(nxt)
                dfs(start, path, used)
                path.pop()
                used.discard(nxt)

    for a in sorted(algebra.arrows):
        dfs(a, [a], {a})
    return sorted(found, key=lambda c: (len(c), c))


def gentle_arrows(algebra: BoundQuiver) -> list[str]:
    """Arrows ``b`` with no arrow ``a`` such that ``a.b`` is a relation."""
    blocked = {r.arrows[1] for r in algebra.relations if len(r.arrows) == 2}
    return sorted(a for a in algebra.arrows if a not in blocked)


def critical_paths(algebra: BoundQuiver) -> list[Path]:
    """Maximal chains of consecutive quadratic relations starting at a gentle arrow.

    Chains never repeat an arrow; for gentle algebras this is automatic.
    """
    succ = relation_successors(algebra)
    out = []

    def extend(chain):
        nexts = [b for b in succ[chain[-1]] if b not in chain]
        if not nexts:
            first = algebra.arrows[chain[0]]
            last = algebra.arrows[chain[-1]]
            out.append(Path(first.source, last.target, tuple(chain)))
            return
        for b in nexts:
            extend(chain + [b])

    for a in gentle_arrows(algebra):
        extend([a])
    return sorted(out, key=lambda p: (-len(p.arrows), p.arrows))


def gentle_profile(algebra: BoundQuiver) -> GentleProfile:
    violations, string_violations = gentle_violations(algebra)
    crit = critical_paths(algebra)
    return GentleProfile(
        is_gentle=not violations,
        violations=violations,
        is_string=not string_violations,
        saturated_cycles=saturated_cycles(algebra),
        gentle_arrows=gentle_arrows(algebra),
        critical_paths=crit,
        n_lambda=max((len(p.arrows) for p in crit), default=0),
    )


def gentle_2cy_relation_shape(algebra: BoundQuiver) -> tuple[bool, list[str]]:
    """Does every relation sit on a saturated 3-cycle or square a saturated loop?"""
    allowed = set()
    for c in saturated_cycles(algebra):
        if len(c) == 3:
            for k in range(3):
                allowed.add((c[k], c[(k + 1) % 3]))
        elif len(c) == 1:
            allowed.add((c[0], c[0]))
    witnesses = [".".join(r.arrows) for r in algebra.relations if r.arrows not in allowed]
    return not witnesses, witnesses


def _maximal_path_from(algebra: BoundQuiver, vertex: str, avoid_first: str | None) -> tuple:
    word: tuple = ()
    first = [a.name for a in algebra.quiver.out_arrows(vertex) if a.name != avoid_first]
    if not first:
        return word
    word = (first[0],)
    while True:
        end = algebra.arrows[word[-1]].target
        nxt = [a.name for a in algebra.quiver.out_arrows(end) if not algebra.is_zero(word + (a.name,))]
        if not nxt:
            return word
        word = word + (nxt[0],)


def kalck_gp_modules(algebra: BoundQuiver, profile: GentleProfile | None = None) -> list[StringWalk]:
    """For each arrow ``a_i`` of each saturated cycle, the maximal path ``u_i``
    leaving ``s(a_i)`` by another arrow (trivial when there is none)."""
    profile = profile or gentle_profile(algebra)
    if not profile.is_gentle:
        raise NotGentle("; ".join(profile.violations))
    out, seen = [], set()
    for cycle in profile.saturated_cycles:
        for a in cycle:
            x = algebra.arrows[a].source
            word = _maximal_path_from(algebra, x, a)
            walk = StringWalk(x, tuple((n, FORWARD) for n in word)).canonical(algebra)
            if walk not in seen:
                seen.add(walk)
                out.append(walk)
    return out
