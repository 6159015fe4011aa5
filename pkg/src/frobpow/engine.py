"""Degree-wise membership in Frobenius powers by exact linear algebra.

For a homogeneous h of degree m and q = p^e, h lies in I^[q] iff h's
coordinate vector over the standard monomials of R_m is in the column span of
the map

    (+)_i R_{m - q*d_i}  ->  R_m,    v |-> sum_i v_i * f_i^q .

Rows are the standard monomials of R_m, columns are (generator, source
monomial) pairs in a fixed deterministic order, so membership certificates
are reproducible.  Membership in a whole degree piece is a single rank test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .bounds import inclusion_threshold
from .polynomials import Polynomial, monomial_mul

EVIDENCE_NOTE = (
    "finite evidence only: tight-closure membership quantifies over all "
    "powers q = p^e, so passing every tested q proves nothing by itself"
)


class NotFoundWithinCap(RuntimeError):
    def __init__(self, q, cap):
        super().__init__(
            f"no containment degree found for q={q} up to cap {cap}: either "
            "the ideal is not R_+-primary or the cap is too small"
        )
        self.q = q
        self.cap = cap


@dataclass(frozen=True)
class IdealSpec:
    """Homogeneous generators of an R_+-primary ideal, degrees cached."""

    generators: tuple
    primary: bool = True

    def __post_init__(self):
        if not self.generators:
            raise ValueError("need at least one generator")
        for g in self.generators:
            if g.is_zero() or not g.is_homogeneous():
                raise ValueError("generators must be nonzero and homogeneous")
        object.__setattr__(self, "degrees", tuple(g.degree() for g in self.generators))
        object.__setattr__(self, "sorted_degrees", tuple(sorted(self.degrees)))

    @classmethod
    def from_strings(cls, ring, texts, primary=True):
        return cls(tuple(ring.parse(t) for t in texts), primary=primary)


@dataclass(frozen=True)
class MembershipCertificate:
    """Verdict for element in I^[q], with coefficients h_i such that
    element = sum h_i * f_i^q in R when member is true."""

    member: bool
    element: Polynomial
    q: int
    coefficients: tuple | None = None


@dataclass(frozen=True)
class ContainmentRow:
    e: int
    q: int
    k_empirical: int | None  # None: not found within the cap (reported as data)
    k_threshold: int | None
    tight: bool | None
    cap_exceeded: int | None = None


@dataclass(frozen=True)
class ContainmentTable:
    rows: tuple

    def __iter__(self):
        return iter(self.rows)


@dataclass(frozen=True)
class ClosureRow:
    e: int
    q: int
    member: bool


@dataclass(frozen=True)
class TightClosureReport:
    element: Polynomial
    multiplier: Polynomial
    rows: tuple
    notes: tuple


@dataclass(frozen=True)
class FrobeniusClosureReport:
    element: Polynomial
    rows: tuple
    found_e: int | None
    predicted_sufficient_q: int | None


class MembershipEngine:
    """Membership/containment machinery for one (ring, ideal) pair; caches
    normal forms of generator Frobenius powers and graded bases."""

    def __init__(self, ring, ideal):
        self.ring = ring
        self.ideal = ideal
        for g in ideal.generators:
            if g.p != ring.p or g.num_vars != ring.num_vars:
                raise ValueError("ideal generator not defined over the ring")
        self._fq_cache = {}

    def _check_q(self, q):
        p = self.ring.p
        v = q
        while v > 1 and v % p == 0:
            v //= p
        if v != 1:
            raise ValueError(f"{q} is not a power of the characteristic {p}")

    def _generator_power(self, i, q):
        key = (i, q)
        if key not in self._fq_cache:
            raw = self.ideal.generators[i].frobenius_power(q)
            self._fq_cache[key] = self.ring.normal_form(raw)
        return self._fq_cache[key]

    # -- matrix assembly ---------------------------------------------------

    def _columns(self, q, m):
        """Yield ((generator index, source monomial), coord dict) pairs for
        the degree-m piece of the map onto I^[q]."""
        ring = self.ring
        p = ring.p
        for i, d in enumerate(self.ideal.degrees):
            src_deg = m - q * d
            if src_deg < 0:
                continue
            gq = self._generator_power(i, q)
            if gq.is_zero():
                continue
            for mono in ring.graded_basis(src_deg).monomials:
                coords = {}
                for mt, ct in gq.terms.items():
                    prod = monomial_mul(mono, mt)
                    for mr, cr in ring.monomial_normal_form(prod).items():
                        v = (coords.get(mr, 0) + ct * cr) % p
                        if v:
                            coords[mr] = v
                        else:
                            coords.pop(mr, None)
                yield (i, mono), coords

    def matrix_shape(self, q, m):
        """(rows, cols) of the membership matrix in degree m, for size caps."""
        rows = self.ring.hilbert_dim(m)
        cols = sum(
            self.ring.hilbert_dim(m - q * d)
            for d in self.ideal.degrees
            if m - q * d >= 0
        )
        return rows, cols

    def _assemble(self, q, m):
        target = self.ring.graded_basis(m)
        index = target.index
        col_meta = []
        cols = []
        for meta, coords in self._columns(q, m):
            col = np.zeros(len(target), dtype=np.int64)
            for mono, c in coords.items():
                col[index[mono]] = c
            col_meta.append(meta)
            cols.append(col)
        if cols:
            A = np.stack(cols, axis=1)
        else:
            A = np.zeros((len(target), 0), dtype=np.int64)
        return target, col_meta, A

    # -- operations --------------------------------------------------------

    def membership(self, q, h):
        """Solve for h in I^[q]; returns a certificate that is re-verified by
        polynomial arithmetic and normal-form reduction before returning."""
        self._check_q(q)
        if not h.is_homogeneous():
            raise ValueError("element must be homogeneous")
        ring = self.ring
        hn = ring.normal_form(h)
        if hn.is_zero():
            zero = tuple(
                Polynomial.zero(ring.p, ring.num_vars) for _ in self.ideal.generators
            )
            return MembershipCertificate(True, h, q, zero)
        m = hn.degree()
        target, col_meta, A = self._assemble(q, m)
        b = np.zeros(len(target), dtype=np.int64)
        for mono, c in hn.terms.items():
            b[target.index[mono]] = c
        x = linalg.solve_mod(A, b, ring.p)
        if x is None:
            return MembershipCertificate(False, h, q)
        coeff_terms = [dict() for _ in self.ideal.generators]
        for (i, mono), v in zip(col_meta, x):
            v = int(v)
            if v:
                coeff_terms[i][mono] = v
        coeffs = tuple(
            Polynomial(ring.p, ring.num_vars, t) for t in coeff_terms
        )
        self._verify_certificate(q, h, coeffs)
        return MembershipCertificate(True, h, q, coeffs)

    def _verify_certificate(self, q, h, coeffs):
        ring = self.ring
        total = Polynomial.zero(ring.p, ring.num_vars)
        for hi, g in zip(coeffs, self.ideal.generators):
            total = total + hi * g.frobenius_power(q)
        if not ring.normal_form(h - total).is_zero():
            raise AssertionError(
                "certificate identity failed to re-verify: linear algebra and "
                "polynomial arithmetic disagree"
            )

    def degree_containment(self, q, k):
        """True iff R_k is contained in I^[q] (rank test on one matrix)."""
        self._check_q(q)
        if k < 0:
            raise ValueError("degree must be >= 0")
        dim = self.ring.hilbert_dim(k)
        if dim == 0:
            return True
        _, _, A = self._assemble(q, k)
        if A.shape[1] < dim:
            return False
        return linalg.rank_mod(A, self.ring.p) == dim

    def default_cap(self, q, nu_hint=None):
        """Search cap for the minimal containment degree: predicted threshold
        plus slack 8 when a nu hint is available, else q * sum(d_i) + N."""
        if nu_hint is not None:
            a = self.ring.a_invariant()
            return inclusion_threshold(Fraction(nu_hint), a, q) + 8
        return q * sum(self.ideal.degrees) + self.ring.num_vars

    def min_containment_degree(self, q, cap=None, nu_hint=None):
        """Minimal k with R_k (hence R_{>=k}) inside I^[q].

        Containment is monotone in k because R is standard-graded
        (R_{k+1} = R_1 * R_k), so an ascending scan with growing stride
        followed by a bisection back is valid.
        """
        self._check_q(q)
        if not self.ideal.primary:
            raise ValueError("minimal containment degree needs an R_+-primary ideal")
        if cap is None:
            cap = self.default_cap(q, nu_hint)
        start = q * min(self.ideal.degrees)
        if start > cap:
            raise NotFoundWithinCap(q, cap)
        last_false = start - 1
        first_true = None
        k = start
        step = 1
        while True:
            if self.degree_containment(q, k):
                first_true = k
                break
            last_false = k
            if k >= cap:
                break
            k = min(k + step, cap)
            step *= 2
        if first_true is None:
            raise NotFoundWithinCap(q, cap)
        while first_true - last_false > 1:
            mid = (first_true + last_false) // 2
            if self.degree_containment(q, mid):
                first_true = mid
            else:
                last_false = mid
        return first_true


def containment_table(engine, e_list, nu=None, cap=None):
    """k_empirical(q) vs the theoretical threshold across q = p^e."""
    p = engine.ring.p
    a = engine.ring.a_invariant() if nu is not None else None
    rows = []
    for e in e_list:
        q = p**e
        k_thy = inclusion_threshold(Fraction(nu), a, q) if nu is not None else None
        try:
            k_emp = engine.min_containment_degree(q, cap=cap, nu_hint=nu)
        except NotFoundWithinCap as exc:
            rows.append(ContainmentRow(e, q, None, k_thy, None, exc.cap))
            continue
        tight = (k_emp == k_thy) if k_thy is not None else None
        rows.append(ContainmentRow(e, q, k_emp, k_thy, tight))
    return ContainmentTable(tuple(rows))


def tight_closure_witness_test(engine, f, c, e_range, nu=None):
    """Test c * f^q in I^[q] for each e; finite evidence for f in I*, never a
    proof."""
    if c.is_zero():
        raise ValueError("witness multiplier c must be nonzero")
    if not f.is_homogeneous() or not c.is_homogeneous():
        raise ValueError("f and c must be homogeneous")
    p = engine.ring.p
    rows = []
    for e in e_range:
        q = p**e
        cert = engine.membership(q, c * f.frobenius_power(q))
        rows.append(ClosureRow(e, q, cert.member))
    notes = [EVIDENCE_NOTE]
    if nu is not None:
        a = engine.ring.a_invariant()
        if Fraction(f.degree()) >= Fraction(nu) and c.degree() > a:
            notes.append(
                f"guarantee: deg(f) = {f.degree()} >= nu = {nu} and "
                f"deg(c) = {c.degree()} > a = {a}, so every test is predicted "
                "to pass (f lies in the tight closure by the slope bound)"
            )
    return TightClosureReport(f, c, tuple(rows), tuple(notes))


def frobenius_closure_test(engine, f, e_max, nu=None):
    """Smallest e <= e_max with f^{p^e} in I^[p^e], or none.

    When nu is supplied and deg(f) > nu, also reports the predicted
    sufficient q: the smallest p^e with q * (deg(f) - nu) > a.
    """
    if not f.is_homogeneous():
        raise ValueError("f must be homogeneous")
    p = engine.ring.p
    rows = []
    found = None
    for e in range(e_max + 1):
        q = p**e
        member = engine.membership(q, f.frobenius_power(q)).member
        rows.append(ClosureRow(e, q, member))
        if member:
            found = e
            break
    predicted = None
    if nu is not None and not f.is_zero():
        excess = Fraction(f.degree()) - Fraction(nu)
        if excess > 0:
            a = engine.ring.a_invariant()
            q = 1
            while not Fraction(q) * excess > a:
                q *= p
            predicted = q
    return FrobeniusClosureReport(f, tuple(rows), found, predicted)
