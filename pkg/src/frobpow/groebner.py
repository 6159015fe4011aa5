"""Buchberger's algorithm, normal forms and standard-monomial enumeration.

Desk-scale inputs only: pair pruning uses just the coprime-lead criterion,
pair selection is the normal strategy (smallest lcm in the monomial order,
ties by index), and a degree cap guards against runaway computations.
"""

from __future__ import annotations

from .polynomials import (
    MonomialOrder,
    Polynomial,
    monomial_degree,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
    monomial_quotient,
)


class DegreeCapExceeded(RuntimeError):
    pass


class GroebnerBasis:
    """A reduced Groebner basis: monic generators, no leading monomial of one
    dividing any monomial of another."""

    def __init__(self, generators, order, original=None):
        self.generators = list(generators)
        self.order = order
        self.original = list(original) if original is not None else list(generators)
        self.leading_monomials = tuple(
            g.leading_monomial(order) for g in self.generators
        )

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


def normal_form(f, gb, order=None):
    """Remainder of f under multivariate division by gb.

    No monomial of the result is divisible by a leading monomial of gb; the
    map f -> normal_form(f, gb) is F_p-linear and idempotent.
    """
    if isinstance(gb, GroebnerBasis):
        gens, order = gb.generators, gb.order
    else:
        gens = list(gb)
        if order is None:
            raise ValueError("order required when gb is a plain list")
    if not gens:
        return f
    p = f.p
    leads = [(g.leading_monomial(order), g) for g in gens]
    work = dict(f.terms)
    remainder = {}
    key = order.key
    while work:
        mono = max(work, key=key)
        c = work.pop(mono)
        for lm, g in leads:
            if monomial_divides(lm, mono):
                shift = monomial_quotient(mono, lm)
                factor = c * pow(g.terms[lm], -1, p) % p
                for m2, c2 in g.terms.items():
                    if m2 == lm:
                        continue
                    m = monomial_mul(m2, shift)
                    v = (work.get(m, 0) - factor * c2) % p
                    if v:
                        work[m] = v
                    else:
                        work.pop(m, None)
                break
        else:
            remainder[mono] = c
    return Polynomial(f.p, f.num_vars, remainder)


def s_polynomial(f, g, order):
    p = f.p
    lmf = f.leading_monomial(order)
    lmg = g.leading_monomial(order)
    lcm = monomial_lcm(lmf, lmg)
    cf = pow(f.terms[lmf], -1, p)
    cg = pow(g.terms[lmg], -1, p)
    return f.term_mul(monomial_quotient(lcm, lmf), cf) - g.term_mul(
        monomial_quotient(lcm, lmg), cg
    )


def buchberger(gens, order, degree_cap=512):
    """Reduced Groebner basis of the ideal generated by gens.

    Deterministic for a fixed input order.  Raises DegreeCapExceeded if any
    S-pair lcm degree exceeds ``degree_cap``.
    """
    basis = [g.monic(order) for g in gens if not g.is_zero()]
    if not basis:
        raise ValueError("degenerate input: all generators are zero")
    p = basis[0].p

    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}

    def pair_sort_key(pair):
        i, j = pair
        lcm = monomial_lcm(
            basis[i].leading_monomial(order), basis[j].leading_monomial(order)
        )
        return (order.key(lcm), i, j)

    while pairs:
        i, j = min(pairs, key=pair_sort_key)
        pairs.discard((i, j))
        lmi = basis[i].leading_monomial(order)
        lmj = basis[j].leading_monomial(order)
        lcm = monomial_lcm(lmi, lmj)
        if monomial_degree(lcm) > degree_cap:
            raise DegreeCapExceeded(
                f"S-pair lcm degree {monomial_degree(lcm)} exceeds cap {degree_cap};"
                " raise degree_cap if the input is really this hard"
            )
        # Buchberger's first criterion: coprime leading monomials
        if all(min(a, b) == 0 for a, b in zip(lmi, lmj)):
            continue
        r = normal_form(s_polynomial(basis[i], basis[j], order), basis, order)
        if not r.is_zero():
            basis.append(r.monic(order))
            k = len(basis) - 1
            pairs.update((i2, k) for i2 in range(k))

    # minimalize: drop generators whose lead is divisible by a kept one's lead
    minimal = []
    for g in sorted(basis, key=lambda g: order.key(g.leading_monomial(order))):
        lm = g.leading_monomial(order)
        if not any(
            monomial_divides(h.leading_monomial(order), lm) for h in minimal
        ):
            minimal.append(g)
    # reduce tails against the rest
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        r = normal_form(g, others, order) if others else g
        reduced.append(r.monic(order))
    reduced.sort(key=lambda g: order.key(g.leading_monomial(order)))
    return GroebnerBasis(reduced, order, original=gens)


def monomials_of_degree(num_vars, m):
    """All exponent tuples of total degree m, as a generator."""
    if num_vars == 0:
        if m == 0:
            yield ()
        return
    if num_vars == 1:
        yield (m,)
        return
    for e in range(m + 1):
        for rest in monomials_of_degree(num_vars - 1, m - e):
            yield (e,) + rest


def standard_monomials(gb, m):
    """Degree-m monomials not divisible by any leading monomial of gb,
    sorted descending in the basis order; an F_p-basis of (R/ideal)_m."""
    leads = gb.leading_monomials
    out = [
        mono
        for mono in monomials_of_degree(gb.order.num_vars, m)
        if not any(monomial_divides(lm, mono) for lm in leads)
    ]
    return gb.order.sorted_desc(out)
