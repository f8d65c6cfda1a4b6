"""Strongly stable ideals from Borel generators and the two-quadric region split."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .monomial import (
    Monomial,
    all_one_step_reductions,
    monomial_from_any,
    rlex_sort_key,
)


class InvalidIdeal(ValueError):
    pass


@dataclass(frozen=True)
class StronglyStableIdeal:
    """A strongly stable ideal generated in a single degree.

    minimal_generators is the full set of degree-d monomials in the ideal
    (equigenerated ideals have no divisibility among generators), closed under
    one-step reductions and sorted rlex-descending.
    """

    n: int
    degree: int
    borel_generators: tuple[Monomial, ...]
    minimal_generators: tuple[Monomial, ...]

    @property
    def num_borel_generators(self) -> int:
        return len(self.borel_generators)

    def __contains__(self, m: Monomial) -> bool:
        return m in set(self.minimal_generators)

    def describe(self) -> str:
        gens = ",".join(str(g) for g in self.borel_generators)
        return f"B({gens})@n={self.n}"


def borel_closure(gens: Sequence[Monomial], n: int) -> StronglyStableIdeal:
    """Smallest strongly stable ideal containing gens (all of one degree).

    Breadth-first closure under every legal one-step reduction.
    """
    gens = tuple(gens)
    if not gens:
        raise InvalidIdeal("empty Borel generator list")
    if any(g.n != n for g in gens):
        raise InvalidIdeal(f"generator ambient dimension differs from n={n}")
    degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise InvalidIdeal(
            f"mixed generator degrees {sorted({g.degree for g in gens})}"
        )
    seen = set(gens)
    frontier = list(gens)
    while frontier:
        m = frontier.pop()
        for red, _, _ in all_one_step_reductions(m):
            if red not in seen:
                seen.add(red)
                frontier.append(red)
    minimal = tuple(sorted(seen, key=rlex_sort_key))
    return StronglyStableIdeal(
        n=n, degree=degree, borel_generators=gens, minimal_generators=minimal
    )


@dataclass(frozen=True)
class TwoQuadricView:
    """Region data for I = B(M, N) with quadrics M = x_a*x_b, N = x_c*x_d.

    B_M lists the minimal generators of B(M); B_N those of B(M,N) outside
    B(M). Principal ideals degenerate to N = None with B_N empty, which is
    what the mixed order needs to coincide with plain rlex there.
    """

    ideal: StronglyStableIdeal
    M: Monomial
    N: Monomial | None
    a: int
    b: int
    c: int
    d: int
    B_M: tuple[Monomial, ...]
    B_N: tuple[Monomial, ...]

    def in_B_N(self, m: Monomial) -> bool:
        return m in self._bn_set

    @property
    def _bn_set(self) -> frozenset:
        return frozenset(self.B_N)


def _quadric_indices(m: Monomial) -> tuple[int, int]:
    sup = m.variables_with_multiplicity()
    if len(sup) != 2:
        raise InvalidIdeal(f"{m} is not a quadric")
    return sup[0], sup[1]


def region_partition(ideal: StronglyStableIdeal) -> TwoQuadricView:
    """Split the minimal generators of a two-quadric-generator ideal.

    Requires exactly two Borel generators x_a*x_b and x_c*x_d in the
    incomparable shape c < a <= b < d (which generator is which is detected,
    not taken from input order).
    """
    if ideal.num_borel_generators != 2:
        raise InvalidIdeal(
            f"region partition needs exactly 2 Borel generators, "
            f"got {ideal.num_borel_generators}"
        )
    if ideal.degree != 2:
        raise InvalidIdeal(f"region partition needs quadrics, degree={ideal.degree}")
    g1, g2 = ideal.borel_generators
    p = _quadric_indices(g1)
    q = _quadric_indices(g2)
    # N is the generator reaching the later variable; shape: c < a <= b < d
    if q[1] > p[1]:
        (a, b), (c, d), M, N = p, q, g1, g2
    else:
        (a, b), (c, d), M, N = q, p, g2, g1
    if not (c < a <= b < d):
        raise InvalidIdeal(
            f"Borel generators {g1}, {g2} are not in the shape c < a <= b < d"
        )
    closure_m = set(borel_closure([M], ideal.n).minimal_generators)
    B_M = tuple(g for g in ideal.minimal_generators if g in closure_m)
    B_N = tuple(g for g in ideal.minimal_generators if g not in closure_m)
    return TwoQuadricView(
        ideal=ideal, M=M, N=N, a=a, b=b, c=c, d=d, B_M=B_M, B_N=B_N
    )


def principal_view(ideal: StronglyStableIdeal) -> TwoQuadricView:
    """Degenerate view for a principal ideal: everything is in the M region."""
    if ideal.num_borel_generators != 1:
        raise InvalidIdeal("principal view needs exactly one Borel generator")
    (g,) = ideal.borel_generators
    sup = g.variables_with_multiplicity()
    return TwoQuadricView(
        ideal=ideal,
        M=g,
        N=None,
        a=sup[0],
        b=sup[-1],
        c=0,
        d=0,
        B_M=ideal.minimal_generators,
        B_N=(),
    )


def order_view(ideal: StronglyStableIdeal) -> TwoQuadricView:
    """View suitable for the region-aware orders: principal or two-quadric."""
    if ideal.num_borel_generators == 1:
        return principal_view(ideal)
    return region_partition(ideal)


def validate_collection(
    ideals: Iterable[StronglyStableIdeal],
) -> tuple[StronglyStableIdeal, ...]:
    """Check single-degree generation and order the ideals by degree.

    The reorder is a stable sort, so equal-degree collections keep their
    given order.
    """
    out = []
    for ideal in ideals:
        degs = {g.degree for g in ideal.borel_generators}
        if len(degs) != 1:
            raise InvalidIdeal(f"ideal {ideal.describe()} has mixed degrees {degs}")
        out.append(ideal)
    if not out:
        raise InvalidIdeal("empty ideal collection")
    if len({i.n for i in out}) != 1:
        raise InvalidIdeal("ideals live in different ambient rings")
    return tuple(sorted(out, key=lambda i: i.degree))


def load_collection(spec: dict) -> tuple[StronglyStableIdeal, ...]:
    """Build a validated collection from the JSON ideal spec.

    Expected shape:
        {"n": 6, "ideals": [{"borel_generators": ["x4*x5", "x2*x6"]}, ...]}
    """
    try:
        n = int(spec["n"])
        raw_ideals = spec["ideals"]
    except (KeyError, TypeError) as exc:
        raise InvalidIdeal(f"ideal spec missing field: {exc}") from exc
    ideals = []
    for entry in raw_ideals:
        gens = [monomial_from_any(g, n) for g in entry["borel_generators"]]
        ideals.append(borel_closure(gens, n))
    return validate_collection(ideals)


def collection_spec(ideals: Sequence[StronglyStableIdeal]) -> dict:
    """Inverse of load_collection, for report headers."""
    return {
        "n": ideals[0].n,
        "ideals": [
            {"borel_generators": [str(g) for g in ideal.borel_generators]}
            for ideal in ideals
        ],
    }
