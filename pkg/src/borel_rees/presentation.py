"""Presentation variables, the toric maps, multidegrees, and fiber enumeration.

The presentation ring has one variable per (ideal index, minimal generator)
pair. A PresMonomial is a multiset of those variables; the toric map phi sends
it to its multidegree: the product of the underlying generators together with
the vector counting factors per ideal. MixedMonomial adds an ambient x-part
and models monomials of the full multi-graded presentation ring.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

from .borel import StronglyStableIdeal
from .monomial import Monomial, format_monomial, product, rlex_sort_key


@dataclass(frozen=True)
class PresVar:
    """Presentation variable for one minimal generator of one ideal (1-based)."""

    ideal_index: int
    generator: Monomial

    def sort_key(self):
        return (self.ideal_index, rlex_sort_key(self.generator))

    def label(self, style: str = "auto", r: int | None = None) -> str:
        """Display label; two-ideal quadric runs get the compact T../Z.. aliases."""
        if (
            style in ("auto", "legacy")
            and self.generator.degree == 2
            and self.ideal_index <= 2
            and (r is None or r <= 2)
        ):
            idx = self.generator.variables_with_multiplicity()
            if max(idx) <= 9:
                letter = "T" if self.ideal_index == 1 else "Z"
                return f"{letter}{idx[0]}{idx[1]}"
        return f"T[{self.ideal_index}]{{{format_monomial(self.generator)}}}"

    def __str__(self) -> str:
        return self.label()


class MultiDegree(NamedTuple):
    """Image of phi: ambient exponents plus the per-ideal t-grading."""

    x_exps: tuple[int, ...]
    t_exps: tuple[int, ...]

    @property
    def x_monomial(self) -> Monomial:
        return Monomial(self.x_exps)

    @property
    def total_t(self) -> int:
        return sum(self.t_exps)

    def display(self) -> str:
        xs = format_monomial(Monomial(self.x_exps))
        ts = "*".join(
            f"t{i + 1}^{e}" if e > 1 else f"t{i + 1}"
            for i, e in enumerate(self.t_exps)
            if e > 0
        )
        return f"{xs};{ts}" if ts else xs


class PresMonomial:
    """A monomial in the presentation variables, stored canonically sorted.

    The storage order (ideal index ascending, generator rlex-descending) is
    only a canonical form for hashing and deduplication; the term orders in
    `orders` impose their own comparisons.
    """

    __slots__ = ("factors",)

    def __init__(self, factors: Iterable[PresVar]):
        object.__setattr__(
            self, "factors", tuple(sorted(factors, key=PresVar.sort_key))
        )

    def __setattr__(self, name, value):
        raise AttributeError("PresMonomial is immutable")

    @classmethod
    def one(cls) -> "PresMonomial":
        return cls(())

    @property
    def degree(self) -> int:
        return len(self.factors)

    def t_vector(self, r: int) -> tuple[int, ...]:
        counts = [0] * r
        for f in self.factors:
            counts[f.ideal_index - 1] += 1
        return tuple(counts)

    def __mul__(self, other: "PresMonomial") -> "PresMonomial":
        return PresMonomial(self.factors + other.factors)

    def divides(self, other: "PresMonomial") -> bool:
        """Multiset containment; factor tuples are sorted, so merge-scan."""
        it = iter(other.factors)
        for f in self.factors:
            for g in it:
                if g == f:
                    break
            else:
                return False
        return True

    def quotient(self, other: "PresMonomial") -> "PresMonomial":
        remaining = list(self.factors)
        for f in other.factors:
            remaining.remove(f)  # raises ValueError on non-divisor
        return PresMonomial(remaining)

    def __eq__(self, other) -> bool:
        return isinstance(other, PresMonomial) and self.factors == other.factors

    def __hash__(self) -> int:
        return hash(self.factors)

    def __repr__(self) -> str:
        return f"PresMonomial({self.factors!r})"

    def label(self, style: str = "auto", r: int | None = None) -> str:
        if not self.factors:
            return "1"
        parts = []
        for var, group in itertools.groupby(self.factors):
            k = len(list(group))
            base = var.label(style, r)
            parts.append(base if k == 1 else f"{base}^{k}")
        return "*".join(parts)

    def __str__(self) -> str:
        return self.label()

    def __getstate__(self):
        return self.factors

    def __setstate__(self, state):
        object.__setattr__(self, "factors", tuple(state))


@dataclass(frozen=True)
class MixedMonomial:
    """x-monomial times presentation monomial: a monomial of the big ring."""

    x_part: Monomial
    t_part: PresMonomial

    @property
    def degree(self) -> int:
        return self.x_part.degree + self.t_part.degree

    def __mul__(self, other: "MixedMonomial") -> "MixedMonomial":
        return MixedMonomial(self.x_part * other.x_part, self.t_part * other.t_part)

    def divides(self, other: "MixedMonomial") -> bool:
        return self.x_part.divides(other.x_part) and self.t_part.divides(other.t_part)

    def quotient(self, other: "MixedMonomial") -> "MixedMonomial":
        return MixedMonomial(
            self.x_part.quotient(other.x_part), self.t_part.quotient(other.t_part)
        )

    def label(self, style: str = "auto", r: int | None = None) -> str:
        xs = format_monomial(self.x_part)
        ts = self.t_part.label(style, r)
        if ts == "1":
            return xs
        if xs == "1":
            return ts
        return f"{xs}*{ts}"

    def __str__(self) -> str:
        return self.label()


def content(u: PresMonomial, n: int) -> Monomial:
    """Product of the underlying generator monomials (t-grading forgotten)."""
    return product([f.generator for f in u.factors], n)


def phi(
    v: PresMonomial | MixedMonomial,
    ideals: Sequence[StronglyStableIdeal],
) -> MultiDegree:
    """The toric map: T_{i,j} -> u_{i,j} t_i, extended multiplicatively."""
    n = ideals[0].n
    r = len(ideals)
    if isinstance(v, MixedMonomial):
        x = v.x_part * content(v.t_part, n)
        return MultiDegree(x.exps, v.t_part.t_vector(r))
    return MultiDegree(content(v, n).exps, v.t_vector(r))


def _generator_multisets(
    gens: Sequence[Monomial], count: int, budget: Monomial | None
) -> Iterator[tuple[Monomial, ...]]:
    """All non-increasing choices of `count` generators, optionally pruned so
    the running product divides `budget`. Non-increasing index choice kills
    permutation duplicates."""
    n = gens[0].n if gens else 0

    def rec(start: int, left: int, remaining: Monomial):
        if left == 0:
            yield ()
            return
        for k in range(start, len(gens)):
            g = gens[k]
            if budget is not None and not g.divides(remaining):
                continue
            rest = remaining.quotient(g) if budget is not None else remaining
            for tail in rec(k, left - 1, rest):
                yield (g,) + tail

    if count == 0:
        yield ()
        return
    if not gens:
        return
    start_budget = budget if budget is not None else Monomial.one(n)
    yield from rec(0, count, start_budget)


def enumerate_fiber(
    mu: MultiDegree, ideals: Sequence[StronglyStableIdeal]
) -> list[PresMonomial]:
    """All presentation monomials mapping onto mu under phi, canonically sorted.

    Exact backtracking: per ideal, place t_exps[i] generators in non-increasing
    order with divisibility pruning against the remaining x-budget; at the end
    the budget must be used up exactly.
    """
    n = ideals[0].n
    r = len(ideals)
    if len(mu.t_exps) != r:
        raise ValueError(f"t-vector length {len(mu.t_exps)} != r={r}")
    target = Monomial(mu.x_exps)
    if target.degree != sum(
        a * ideal.degree for a, ideal in zip(mu.t_exps, ideals)
    ):
        return []

    results: list[PresMonomial] = []

    def per_ideal(i: int, remaining: Monomial, chosen: list[PresVar]):
        if i == r:
            if remaining.degree == 0:
                results.append(PresMonomial(chosen))
            return
        ideal = ideals[i]
        count = mu.t_exps[i]
        for ms in _generator_multisets(ideal.minimal_generators, count, remaining):
            used = product(ms, n)
            per_ideal(
                i + 1,
                remaining.quotient(used),
                chosen + [PresVar(i + 1, g) for g in ms],
            )

    per_ideal(0, target, [])
    return sorted(results, key=lambda v: tuple(f.sort_key() for f in v.factors))


def enumerate_mixed_fiber(
    mu: MultiDegree, ideals: Sequence[StronglyStableIdeal]
) -> list[MixedMonomial]:
    """All monomials m*u of the full presentation ring with phi(m*u) = mu."""
    n = ideals[0].n
    target = Monomial(mu.x_exps)
    out: list[MixedMonomial] = []
    for t_part in pres_monomials_with_t(ideals, mu.t_exps, budget=target):
        c = content(t_part, n)
        out.append(MixedMonomial(target.quotient(c), t_part))
    return out


def pres_monomials_with_t(
    ideals: Sequence[StronglyStableIdeal],
    t_exps: Sequence[int],
    budget: Monomial | None = None,
) -> Iterator[PresMonomial]:
    """All presentation monomials with the exact t-vector, content | budget."""
    per_ideal_choices = []
    for i, ideal in enumerate(ideals):
        choices = list(
            _generator_multisets(ideal.minimal_generators, t_exps[i], budget)
        )
        per_ideal_choices.append(choices)
    for combo in itertools.product(*per_ideal_choices):
        factors = [
            PresVar(i + 1, g) for i, ms in enumerate(combo) for g in ms
        ]
        u = PresMonomial(factors)
        if budget is not None and not content(u, ideals[0].n).divides(budget):
            continue
        yield u


def t_vectors(t_budget: Sequence[int]) -> Iterator[tuple[int, ...]]:
    yield from itertools.product(*(range(b + 1) for b in t_budget))


def fibers_by_multidegree(
    ideals: Sequence[StronglyStableIdeal], t_budget: Sequence[int]
) -> Iterator[tuple[MultiDegree, list[PresMonomial]]]:
    """Group every presentation monomial with t <= budget by its multidegree.

    Yields (multidegree, fiber) pairs in a deterministic order: t-vectors
    lexicographically, x-exponents ascending within each t-slice. Building the
    fibers by grouping is equivalent to calling enumerate_fiber per multidegree
    and is what the exhaustive verifier iterates.
    """
    if len(t_budget) != len(ideals):
        raise ValueError(
            f"t budget needs {len(ideals)} entries, got {len(t_budget)}"
        )
    n = ideals[0].n
    for tv in t_vectors(t_budget):
        groups: dict[tuple[int, ...], list[PresMonomial]] = {}
        for u in pres_monomials_with_t(ideals, tv):
            x = content(u, n).exps
            groups.setdefault(x, []).append(u)
        for x in sorted(groups):
            fiber = sorted(
                groups[x], key=lambda v: tuple(f.sort_key() for f in v.factors)
            )
            yield MultiDegree(x, tv), fiber


def enumerate_multidegrees(
    ideals: Sequence[StronglyStableIdeal], t_budget: Sequence[int]
) -> Iterator[MultiDegree]:
    """Every multidegree hit by some presentation monomial with t <= budget."""
    for mu, _ in fibers_by_multidegree(ideals, t_budget):
        yield mu
