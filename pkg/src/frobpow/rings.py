"""Standard-graded complete-intersection presentations R = K[x_1..x_N]/(H_1..H_r).

Carries the Hilbert function (by exact power-series arithmetic), graded bases
of standard monomials (by Groebner data), the a-invariant and the regularity.
The two routes to dim R_m are deliberately redundant and cross-asserted.

Geometric hypotheses (normality, Cohen-Macaulayness, invertibility of the
dualizing sheaf, smoothness) are user-asserted flags carried as metadata;
nothing here verifies them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .groebner import buchberger, standard_monomials
from .polynomials import MonomialOrder, Polynomial, check_prime, poly_parse

KNOWN_FLAGS = frozenset(
    {"normal_domain", "cohen_macaulay", "omega_invertible", "smooth_proj",
     "strongly_semistable"}
)


class AssumptionMissing(RuntimeError):
    """A computation was requested whose formula needs an unasserted flag."""

    def __init__(self, flag, why):
        super().__init__(
            f"refusing: assumption flag {flag!r} is not set. {why}"
        )
        self.flag = flag


@dataclass(frozen=True)
class GradedBasis:
    """Standard monomials of one graded piece R_m, with column positions."""

    degree: int
    monomials: tuple
    index: dict

    def __len__(self):
        return len(self.monomials)


class RingPresentation:
    """K[x_1..x_N]/(H_1..H_r) with char(K) = p, complete-intersection convention
    dim R = N - r."""

    def __init__(self, p, var_names, relations=(), flags=(), order_kind="grevlex"):
        check_prime(p)
        self.p = p
        self.var_names = tuple(var_names)
        self.num_vars = len(self.var_names)
        self.relations = tuple(relations)
        self.flags = frozenset(flags)
        unknown = self.flags - KNOWN_FLAGS
        if unknown:
            raise ValueError(f"unknown assumption flags: {sorted(unknown)}")
        for h in self.relations:
            if h.p != p or h.num_vars != self.num_vars:
                raise ValueError("relation not defined over this ring's variables")
            if h.is_zero() or not h.is_homogeneous():
                raise ValueError("relations must be nonzero and homogeneous")
        self.relation_degrees = tuple(h.degree() for h in self.relations)
        if any(d < 1 for d in self.relation_degrees):
            raise ValueError("relation degrees must be >= 1")
        if len(self.relations) >= self.num_vars:
            raise ValueError("need dim R = N - r >= 1")
        self.order = MonomialOrder(order_kind, self.num_vars)
        self._gb = None
        self._bases = {}
        self._nf_cache = {}
        self._hilbert_numerator = None

    # -- structural numbers ------------------------------------------------

    @property
    def dim(self):
        """Krull dimension, N - r by the complete-intersection convention."""
        return self.num_vars - len(self.relations)

    def ring_degree(self):
        """Product of the relation degrees (Bezout); 1 for a polynomial ring."""
        return math.prod(self.relation_degrees)

    def a_invariant(self):
        """sum of relation degrees minus the number of variables."""
        return sum(self.relation_degrees) - self.num_vars

    def regularity(self):
        """a-invariant + dim R; valid for Cohen-Macaulay rings only."""
        if "cohen_macaulay" not in self.flags:
            raise AssumptionMissing(
                "cohen_macaulay",
                "the formula reg(R) = a + dim(R) is only valid for "
                "Cohen-Macaulay rings",
            )
        return self.a_invariant() + self.dim

    # -- Hilbert function --------------------------------------------------

    def hilbert_dim(self, m):
        """Coefficient of t^m in prod_j (1 - t^{delta_j}) / (1 - t)^N,
        by exact integer power-series truncation."""
        if m < 0:
            return 0
        if self._hilbert_numerator is None:
            num = [1]
            for d in self.relation_degrees:
                new = num + [0] * d
                for i, c in enumerate(num):
                    new[i + d] -= c
                num = new
            self._hilbert_numerator = num
        n = self.num_vars
        total = 0
        for k, c in enumerate(self._hilbert_numerator):
            if k > m:
                break
            if c:
                total += c * math.comb(m - k + n - 1, n - 1)
        return total

    # -- Groebner-backed graded bases --------------------------------------

    def groebner_basis(self):
        if self._gb is None:
            if self.relations:
                self._gb = buchberger(list(self.relations), self.order)
            else:
                from .groebner import GroebnerBasis

                self._gb = GroebnerBasis([], self.order, original=[])
        return self._gb

    def graded_basis(self, m):
        """Standard monomials of degree m, with the index map used for matrix
        columns/rows.  Hard-asserts agreement with hilbert_dim."""
        basis = self._bases.get(m)
        if basis is None:
            monos = tuple(standard_monomials(self.groebner_basis(), m))
            expected = self.hilbert_dim(m)
            if len(monos) != expected:
                raise AssertionError(
                    f"standard-monomial count {len(monos)} != Hilbert dimension "
                    f"{expected} in degree {m}: Groebner bug or non-CI input"
                )
            basis = GradedBasis(m, monos, {mono: i for i, mono in enumerate(monos)})
            self._bases[m] = basis
        return basis

    # -- normal forms ------------------------------------------------------

    def monomial_normal_form(self, mono):
        """Normal form of a single monomial modulo the relations, memoized.

        Returns a dict monomial -> coefficient.  Iterative so that long
        reduction chains (high Frobenius powers) cannot blow the stack.
        """
        cache = self._nf_cache
        hit = cache.get(mono)
        if hit is not None:
            return hit
        gb = self.groebner_basis()
        leads = list(zip(gb.leading_monomials, gb.generators))
        p = self.p
        stack = [mono]
        while stack:
            cur = stack[-1]
            if cur in cache:
                stack.pop()
                continue
            reducer = None
            for lm, g in leads:
                if all(a <= b for a, b in zip(lm, cur)):
                    reducer = (lm, g)
                    break
            if reducer is None:
                cache[cur] = {cur: 1}
                stack.pop()
                continue
            lm, g = reducer
            shift = tuple(b - a for a, b in zip(lm, cur))
            tail = [
                (tuple(x + y for x, y in zip(m2, shift)), c2)
                for m2, c2 in g.terms.items()
                if m2 != lm
            ]
            missing = [m2 for m2, _ in tail if m2 not in cache]
            if missing:
                stack.extend(missing)
                continue
            # cur = x^shift * lm(g); g monic, so cur == -sum tail in R
            acc = {}
            for m2, c2 in tail:
                for mr, cr in cache[m2].items():
                    v = (acc.get(mr, 0) - c2 * cr) % p
                    if v:
                        acc[mr] = v
                    else:
                        acc.pop(mr, None)
            cache[cur] = acc
            stack.pop()
        return cache[mono]

    def normal_form(self, f):
        """Normal form of a polynomial modulo the relations."""
        if f.p != self.p or f.num_vars != self.num_vars:
            raise ValueError("polynomial not defined over this ring")
        if not self.relations:
            return f
        p = self.p
        acc = {}
        for mono, c in f.terms.items():
            for mr, cr in self.monomial_normal_form(mono).items():
                v = (acc.get(mr, 0) + c * cr) % p
                if v:
                    acc[mr] = v
                else:
                    acc.pop(mr, None)
        return Polynomial(p, self.num_vars, acc)

    # -- convenience -------------------------------------------------------

    def parse(self, text):
        return poly_parse(text, self.var_names, self.p)

    def __repr__(self):
        rels = ", ".join(str(d) for d in self.relation_degrees)
        return (
            f"RingPresentation(F_{self.p}[{', '.join(self.var_names)}]"
            f" / relations of degrees ({rels}))"
        )
