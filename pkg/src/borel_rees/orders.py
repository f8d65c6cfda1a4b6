"""Presentation-variable term orders and the marked binomial collections.

Three variable orders drive everything: plain rlex on one ideal's generators,
the mixed order that lifts the whole B_N region above B_M, and the two-ideal
head-and-tail order (first ideal block by rlex above second ideal block by
mrlex). Each induces a revlex order on presentation monomials; the G1/G2/G3
collections are the coincident-product quadratic binomials marked by the
matching induced order, and the syzygy set supplies the linear-in-T relations
of the full presentation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .borel import InvalidIdeal, StronglyStableIdeal, TwoQuadricView, order_view
from .monomial import Monomial, rlex_sort_key
from .presentation import MixedMonomial, PresMonomial, PresVar
from .reduction import MarkedBinomial, lift_to_mixed


class OrderDomainError(KeyError):
    """A presentation variable fell outside the order's declared context."""


@dataclass(frozen=True)
class PresOrder:
    """A total order on a finite set of presentation variables.

    kind is one of "rlex", "mrlex", "ht". ranked lists the variables in
    descending order; comparisons of presentation monomials are revlex over
    that ranking (degree first, the smallest differing variable decides).
    """

    kind: str
    ranked: tuple[PresVar, ...]
    views: tuple[TwoQuadricView, ...]

    @classmethod
    def rlex(cls, ideal: StronglyStableIdeal, ideal_index: int = 1) -> "PresOrder":
        ranked = tuple(
            PresVar(ideal_index, g)
            for g in sorted(ideal.minimal_generators, key=rlex_sort_key)
        )
        try:
            views = (order_view(ideal),)
        except InvalidIdeal:
            views = ()  # rlex itself never needs the region split
        return cls("rlex", ranked, views)

    @classmethod
    def mrlex(
        cls,
        view: TwoQuadricView,
        ideal_index: int = 1,
        literal_clause: bool = False,
    ) -> "PresOrder":
        """Mixed order: B_N block above B_M block, rlex inside each block.

        literal_clause=True applies the cross-region comparison by plain rlex
        instead of the block rule; that reading degenerates to rlex and is
        kept only for experimentation.
        """
        ranked = tuple(
            PresVar(ideal_index, g) for g in _mrlex_chain(view, literal_clause)
        )
        return cls("mrlex", ranked, (view,))

    @classmethod
    def head_and_tail(
        cls, view1: TwoQuadricView, view2: TwoQuadricView
    ) -> "PresOrder":
        first = tuple(
            PresVar(1, g)
            for g in sorted(view1.ideal.minimal_generators, key=rlex_sort_key)
        )
        second = tuple(PresVar(2, g) for g in _mrlex_chain(view2, False))
        return cls("ht", first + second, (view1, view2))

    @cached_property
    def rank(self) -> dict[PresVar, int]:
        return {v: i for i, v in enumerate(self.ranked)}

    def var_rank(self, p: PresVar) -> int:
        try:
            return self.rank[p]
        except KeyError:
            raise OrderDomainError(f"{p} outside the {self.kind} order's context")

    def compare_presvars(self, p: PresVar, q: PresVar) -> int:
        """1 if p > q, -1 if p < q, 0 if equal (lower rank is larger)."""
        rp, rq = self.var_rank(p), self.var_rank(q)
        if rp == rq:
            return 0
        return 1 if rp < rq else -1

    def compare_presmonomials(self, A: PresMonomial, B: PresMonomial) -> int:
        """Induced (graded) revlex: 1 if A > B, -1 if A < B, 0 if equal."""
        if A.degree != B.degree:
            return 1 if A.degree > B.degree else -1
        ea = self._exponents(A)
        eb = self._exponents(B)
        for x, y in zip(reversed(ea), reversed(eb)):
            if x != y:
                return 1 if x < y else -1
        return 0

    def _exponents(self, A: PresMonomial) -> list[int]:
        exps = [0] * len(self.ranked)
        for f in A.factors:
            exps[self.var_rank(f)] += 1
        return exps

    def sort_factors_descending(self, T: PresMonomial) -> tuple[PresVar, ...]:
        return tuple(sorted(T.factors, key=self.var_rank))


def _mrlex_chain(view: TwoQuadricView, literal_clause: bool) -> list[Monomial]:
    gens = sorted(view.ideal.minimal_generators, key=rlex_sort_key)
    if literal_clause:
        return gens
    top = [g for g in gens if view.in_B_N(g)]
    bottom = [g for g in gens if not view.in_B_N(g)]
    return top + bottom


@dataclass(frozen=True)
class StandardFactorization:
    """Factors of a presentation monomial sorted descending by an order.

    L_M / L_N are the order-latest factors lying in the B_M / B_N regions
    (None when a region contributes no factor).
    """

    factors: tuple[PresVar, ...]
    L_M: PresVar | None
    L_N: PresVar | None


def standard_factorization(
    T: PresMonomial, order: PresOrder, view: TwoQuadricView | None = None
) -> StandardFactorization:
    if view is None:
        if not order.views:
            raise InvalidIdeal(
                "standard factorization needs a region split; pass view="
            )
        view = order.views[-1]
    factors = order.sort_factors_descending(T)
    L_M = L_N = None
    for f in factors:
        if view.in_B_N(f.generator):
            L_N = f
        else:
            L_M = f
    return StandardFactorization(factors, L_M, L_N)


def region_minima(
    mu_x: Monomial, view: TwoQuadricView
) -> tuple[Monomial | None, Monomial | None]:
    """Order-smallest B_M / B_N generator dividing the multidegree.

    Inside a single region the rlex and mixed orders agree, so the minima are
    order-independent.
    """
    m_div = [g for g in view.B_M if g.divides(mu_x)]
    n_div = [g for g in view.B_N if g.divides(mu_x)]
    M_prime = max(m_div, key=rlex_sort_key, default=None)
    N_prime = max(n_div, key=rlex_sort_key, default=None)
    return M_prime, N_prime


def _pair_key(p: tuple[PresVar, PresVar]):
    return tuple(sorted((f.sort_key() for f in p)))


def _coincident_product_binomials(
    left: Sequence[PresVar],
    right: Sequence[PresVar],
    order: PresOrder,
    source: str,
    cross_only: bool,
) -> list[MarkedBinomial]:
    """Quadratic binomials among products of one left and one right variable.

    Groups unordered variable pairs by the product of their generators and
    emits one marked binomial per unordered pair of distinct factorizations,
    the lead being the larger monomial under the induced order. Distinct
    factorizations of one product never share a variable, so lead and trail
    are automatically different.
    """
    by_product: dict[tuple[int, ...], list[tuple[PresVar, PresVar]]] = {}
    seen: set = set()
    for p in left:
        for q in right:
            if cross_only and p.ideal_index == q.ideal_index:
                continue
            pair = (p, q)
            key = _pair_key(pair)
            if key in seen:
                continue
            seen.add(key)
            prod = (p.generator * q.generator).exps
            by_product.setdefault(prod, []).append(pair)
    out = []
    for prod in sorted(by_product):
        pairs = by_product[prod]
        for a in range(len(pairs)):
            for b in range(a + 1, len(pairs)):
                A = PresMonomial(pairs[a])
                B = PresMonomial(pairs[b])
                cmp = order.compare_presmonomials(A, B)
                lead, trail = (A, B) if cmp > 0 else (B, A)
                out.append(MarkedBinomial(lead, trail, source))
    out.sort(key=lambda g: (tuple(f.sort_key() for f in g.lead.factors)))
    return out


def build_G1(
    ideal: StronglyStableIdeal, ideal_index: int = 1
) -> list[MarkedBinomial]:
    """All coincident-product quadratic binomials of one ideal, rlex-marked."""
    order = PresOrder.rlex(ideal, ideal_index)
    vars_ = [PresVar(ideal_index, g) for g in ideal.minimal_generators]
    return _coincident_product_binomials(vars_, vars_, order, "G1", False)


def build_G2(
    view: TwoQuadricView, ideal_index: int = 1, literal_clause: bool = False
) -> list[MarkedBinomial]:
    """As build_G1 but marked by the mixed order of the given region split."""
    order = PresOrder.mrlex(view, ideal_index, literal_clause)
    vars_ = [PresVar(ideal_index, g) for g in view.ideal.minimal_generators]
    return _coincident_product_binomials(vars_, vars_, order, "G2", False)


def build_G3(view1: TwoQuadricView, view2: TwoQuadricView) -> list[MarkedBinomial]:
    """Cross binomials T_u Z_v - T_u' Z_v', marked by the larger mixed-order
    second-ideal part (equivalently, head-and-tail initial terms)."""
    order = PresOrder.head_and_tail(view1, view2)
    first = [PresVar(1, g) for g in view1.ideal.minimal_generators]
    second = [PresVar(2, g) for g in view2.ideal.minimal_generators]
    return _coincident_product_binomials(first, second, order, "G3", True)


def build_head_and_tail_basis(
    view1: TwoQuadricView, view2: TwoQuadricView
) -> list[MarkedBinomial]:
    """G = G1 u G2 u G3 for a pair of two-quadric-generator ideals."""
    return (
        build_G1(view1.ideal, 1)
        + build_G2(view2, 2)
        + build_G3(view1, view2)
    )


def build_syzygy_set(
    ideals: Sequence[StronglyStableIdeal],
) -> list[MarkedBinomial]:
    """Linear syzygy binomials x_i T_{l,k} - x_j T_{l,k'} with i < j.

    One per (generator, variable swap) with both sides minimal generators;
    these are exactly the one-step reduction moves between generators of one
    ideal, lifted to the presentation ring.
    """
    out = []
    n = ideals[0].n
    for l, ideal in enumerate(ideals, start=1):
        genset = set(ideal.minimal_generators)
        for u in ideal.minimal_generators:
            for j in u.support():
                for i in range(1, j):
                    swapped = Monomial(
                        tuple(
                            e + (1 if k == i - 1 else 0) - (1 if k == j - 1 else 0)
                            for k, e in enumerate(u.exps)
                        )
                    )
                    if swapped in genset:
                        lead = MixedMonomial(
                            Monomial.variable(i, n),
                            PresMonomial([PresVar(l, u)]),
                        )
                        trail = MixedMonomial(
                            Monomial.variable(j, n),
                            PresMonomial([PresVar(l, swapped)]),
                        )
                        out.append(MarkedBinomial(lead, trail, "SYZ"))
    out.sort(
        key=lambda g: (
            g.lead.t_part.factors[0].sort_key(),
            g.lead.x_part.exps,
        )
    )
    return out


def build_fiber_type_basis(
    ideals: Sequence[StronglyStableIdeal],
    fiber_gb: Sequence[MarkedBinomial],
) -> list[MarkedBinomial]:
    """Syzygies plus the fiber basis lifted to mixed monomials (x-part 1)."""
    n = ideals[0].n
    return build_syzygy_set(ideals) + lift_to_mixed(fiber_gb, n)


def dump_basis(rules: Sequence[MarkedBinomial], r: int | None = None) -> str:
    """JSON-lines dump: one {"lead", "trail", "source"} object per rule."""
    lines = [
        json.dumps(
            {"lead": _side(g.lead, r), "trail": _side(g.trail, r),
             "source": g.source or "ADHOC"},
            sort_keys=True,
        )
        for g in rules
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def _side(v, r):
    return v.label("auto", r) if hasattr(v, "label") else str(v)


def _rlex_sorted(T: PresMonomial) -> tuple[PresVar, ...]:
    return tuple(sorted(T.factors, key=lambda f: rlex_sort_key(f.generator)))


def _mrlex_sorted(T: PresMonomial, view: TwoQuadricView) -> tuple[PresVar, ...]:
    return tuple(
        sorted(
            T.factors,
            key=lambda f: (
                0 if view.in_B_N(f.generator) else 1,
                rlex_sort_key(f.generator),
            ),
        )
    )


def sink_violations_rlex(T: PresMonomial, view: TwoQuadricView) -> list[str]:
    """Index inequalities every rlex-basis sink must satisfy, as violations.

    Factors are taken in rlex standard factorization order; for k < l with
    indices (i, j) and (i', j'): same-region pairs need i <= i' and j <= j';
    a B_M factor before a B_N factor needs i <= i' or c < i, and when i = i'
    additionally i = j or c < j.
    """
    return _pair_violations(_rlex_sorted(T), view, mixed_order=False)


def sink_violations_mrlex(T: PresMonomial, view: TwoQuadricView) -> list[str]:
    """Mixed-order analogue: same-region pairs monotone; B_N before B_M needs
    i <= i'."""
    return _pair_violations(_mrlex_sorted(T, view), view, mixed_order=True)


def _pair_violations(factors, view, mixed_order: bool) -> list[str]:
    bad = []
    idx = [f.generator.variables_with_multiplicity() for f in factors]
    regions = [view.in_B_N(f.generator) for f in factors]
    for k in range(len(factors)):
        for l in range(k + 1, len(factors)):
            (i, j), (i2, j2) = idx[k], idx[l]
            same = regions[k] == regions[l]
            if same:
                if not (i <= i2 and j <= j2):
                    bad.append(f"{factors[k]},{factors[l]}: same-region monotone")
            elif not mixed_order and not regions[k] and regions[l]:
                if not (i <= i2 or view.c < i):
                    bad.append(f"{factors[k]},{factors[l]}: head index")
                if i == i2 and not (i == j or view.c < j):
                    bad.append(f"{factors[k]},{factors[l]}: equal-head tail")
            elif mixed_order and regions[k] and not regions[l]:
                if not (i <= i2):
                    bad.append(f"{factors[k]},{factors[l]}: cross-region head")
    return bad


def sink_violations_ht(
    V: PresMonomial, view1: TwoQuadricView, view2: TwoQuadricView
) -> list[str]:
    """Head-and-tail sink checks: per-block inequalities plus the tail chain.

    When both blocks are nonempty and the mixed-order-last second-ideal factor
    sits in B_N2, every second-ideal factor must, and their indices chain as
    i_1 <= ... <= i_q <= c2 < b2 < j_1 <= ... <= j_q <= d2.
    """
    t_factors = PresMonomial([f for f in V.factors if f.ideal_index == 1])
    z_factors = PresMonomial([f for f in V.factors if f.ideal_index == 2])
    bad = []
    if t_factors.factors:
        bad += sink_violations_rlex(t_factors, view1)
    if z_factors.factors:
        bad += sink_violations_mrlex(z_factors, view2)
    if not (t_factors.factors and z_factors.factors):
        return bad
    zs = _mrlex_sorted(z_factors, view2)
    if view2.in_B_N(zs[-1].generator):
        if not all(view2.in_B_N(f.generator) for f in zs):
            bad.append("tail block mixes regions despite B_N-final factor")
        else:
            heads = [f.generator.variables_with_multiplicity()[0] for f in zs]
            tails = [f.generator.variables_with_multiplicity()[1] for f in zs]
            chain = (
                all(a <= b for a, b in zip(heads, heads[1:]))
                and heads[-1] <= view2.c
                and view2.b < tails[0]
                and all(a <= b for a, b in zip(tails, tails[1:]))
                and tails[-1] <= view2.d
            )
            if not chain:
                bad.append(f"tail chain broken: heads={heads} tails={tails}")
    return bad
