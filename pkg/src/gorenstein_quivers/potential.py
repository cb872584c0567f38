"""Potentials (sums of cycle powers), cyclic derivatives and the Jacobian check."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NonMonomialDerivative, ValidationError
from .gentle import min_rotation
from .quiver import BoundQuiver, Path


@dataclass(frozen=True)
class Term:
    cycle: tuple
    coefficient: Fraction
    exponent: int

    def word(self) -> tuple:
        return self.cycle * self.exponent

    def text(self) -> str:
        body = ".".join(self.cycle)
        if self.exponent > 1:
            body = f"{body}^{self.exponent}" if len(self.cycle) == 1 else f"({body})^{self.exponent}"
        if self.coefficient != 1:
            body = f"{self.coefficient}*{body}"
        return body


class Potential:
    def __init__(self, terms=()):
        merged: dict[tuple, Fraction] = {}
        order = []
        for cycle, coeff, exponent in terms:
            if exponent < 1:
                raise ValidationError([f"exponent {exponent} must be positive"])
            key = (min_rotation(tuple(cycle)), int(exponent))
            if key not in merged:
                order.append(key)
                merged[key] = Fraction(0)
            merged[key] += Fraction(coeff)
        self.terms = tuple(
            Term(c, merged[(c, e)], e) for c, e in order if merged[(c, e)] != 0
        )

    def is_zero(self) -> bool:
        return not self.terms

    def text(self) -> str:
        return " + ".join(t.text() for t in self.terms) if self.terms else "0"

    def __str__(self) -> str:
        return self.text()

    def __repr__(self) -> str:
        return f"Potential({self.text()!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Potential) and set(self.terms) == set(other.terms)

    def __hash__(self) -> int:
        return hash(frozenset(self.terms))

    def arrows(self) -> set:
        return {a for t in self.terms for a in t.cycle}


def cyclic_derivative(w: Potential, arrow: str, algebra: BoundQuiver | None = None) -> list[tuple[Fraction, tuple]]:
    """``[(coefficient, arrow word), ...]``: for each occurrence of ``arrow`` in a
    term, the rest of the cycle read from just after it; like words combined."""
    acc: dict[tuple, Fraction] = {}
    order = []
    for t in w.terms:
        word = t.word()
        for k, a in enumerate(word):
            if a != arrow:
                continue
            rest = word[k + 1:] + word[:k]
            if rest not in acc:
                acc[rest] = Fraction(0)
                order.append(rest)
            acc[rest] += t.coefficient
    return [(acc[r], r) for r in order if acc[r] != 0]


@dataclass
class JacobianReport:
    holds: bool
    scalars: dict = field(default_factory=dict)
    missing: list = field(default_factory=list)
    extra: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "scalars": {k: str(v) for k, v in sorted(self.scalars.items())},
            "missing": self.missing,
            "extra": self.extra,
        }


def jacobian_check(algebra: BoundQuiver, w: Potential) -> JacobianReport:
    """Do the nonzero cyclic derivatives of ``w``, up to scalars, give exactly the relations?"""
    generated, scalars = set(), {}
    for name in sorted(algebra.arrows):
        d = cyclic_derivative(w, name)
        if not d:
            continue
        if len(d) > 1:
            raise NonMonomialDerivative(
                f"derivative by {name} has {len(d)} distinct paths: "
                + " + ".join(f"{c}*{'.'.join(p)}" for c, p in d)
            )
        coeff, word = d[0]
        scalars[name] = coeff
        generated.add(word)
    relations = {r.arrows for r in algebra.relations}
    missing = sorted(".".join(r) for r in relations - generated)
    extra = sorted(".".join(g) if g else "(empty)" for g in generated - relations)
    return JacobianReport(not missing and not extra, scalars, missing, extra)


def derivative_paths(algebra: BoundQuiver, w: Potential, arrow: str) -> list[tuple[Fraction, Path]]:
    out = []
    for c, word in cyclic_derivative(w, arrow):
        if word:
            out.append((c, algebra.path(word)))
    return out
