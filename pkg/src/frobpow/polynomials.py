"""Sparse multivariate polynomials over a prime field F_p.

Monomials are exponent tuples; a polynomial is a dict mapping monomials to
nonzero residues in [0, p).  All values are immutable after construction and
every operation returns a fully normalized polynomial (coefficients reduced,
zero terms dropped), so equality is structural.
"""

from __future__ import annotations

import re

Monomial = tuple  # tuple[int, ...], one exponent per variable


class PolyError(ValueError):
    pass


class ParseError(PolyError):
    """Syntax error in a polynomial string, with the byte offset of the problem."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


def is_prime(p):
    """Trial division up to sqrt(p)."""
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def check_prime(p):
    if not is_prime(p):
        raise PolyError(f"characteristic must be prime, got {p}")


def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a, b):
    """True if monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def monomial_quotient(b, a):
    """b / a, assuming a divides b."""
    return tuple(y - x for x, y in zip(a, b))


def monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_degree(m):
    return sum(m)


class MonomialOrder:
    """Graded or lexicographic total order on monomials, fixed variable order.

    ``key`` returns a sort key; larger key = larger monomial, so the leading
    monomial of a polynomial is the max under ``key``.
    """

    KINDS = ("grevlex", "grlex", "lex")

    def __init__(self, kind="grevlex", num_vars=None):
        if kind not in self.KINDS:
            raise PolyError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.num_vars = num_vars

    def key(self, mono):
        if self.kind == "lex":
            return mono
        if self.kind == "grlex":
            return (sum(mono), mono)
        # grevlex: compare degree, then reverse-lex on negated reversed exponents
        return (sum(mono), tuple(-e for e in reversed(mono)))

    def sorted_desc(self, monomials):
        return sorted(monomials, key=self.key, reverse=True)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.num_vars == other.num_vars
        )

    def __repr__(self):
        return f"MonomialOrder({self.kind!r}, num_vars={self.num_vars})"


class Polynomial:
    """Immutable sparse polynomial over F_p."""

    __slots__ = ("p", "num_vars", "terms", "_hash")

    def __init__(self, p, num_vars, terms=None):
        check_prime(p)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "num_vars", num_vars)
        clean = {}
        for mono, c in (terms or {}).items():
            if len(mono) != num_vars:
                raise PolyError(f"monomial {mono} has wrong arity for {num_vars} vars")
            if any(e < 0 for e in mono):
                raise PolyError(f"negative exponent in {mono}")
            c %= p
            if c:
                clean[tuple(mono)] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *_):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, p, num_vars):
        return cls(p, num_vars, {})

    @classmethod
    def constant(cls, p, num_vars, c):
        return cls(p, num_vars, {(0,) * num_vars: c})

    @classmethod
    def variable(cls, p, num_vars, i, exponent=1):
        mono = tuple(exponent if j == i else 0 for j in range(num_vars))
        return cls(p, num_vars, {mono: 1})

    # -- queries -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self):
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def leading_monomial(self, order):
        if not self.terms:
            raise PolyError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order):
        return self.terms[self.leading_monomial(order)]

    # -- arithmetic --------------------------------------------------------

    def _check_compatible(self, other):
        if self.p != other.p or self.num_vars != other.num_vars:
            raise PolyError(
                f"incompatible polynomials: F_{self.p} in {self.num_vars} vars"
                f" vs F_{other.p} in {other.num_vars} vars"
            )

    def __add__(self, other):
        self._check_compatible(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return Polynomial(self.p, self.num_vars, terms)

    def __neg__(self):
        return Polynomial(
            self.p, self.num_vars, {m: self.p - c for m, c in self.terms.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check_compatible(other)
        p = self.p
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = monomial_mul(m1, m2)
                terms[m] = (terms.get(m, 0) + c1 * c2) % p
        return Polynomial(p, self.num_vars, terms)

    __rmul__ = __mul__

    def scale(self, c):
        c %= self.p
        return Polynomial(
            self.p, self.num_vars, {m: c * v for m, v in self.terms.items()}
        )

    def monic(self, order):
        inv = pow(self.leading_coefficient(order), -1, self.p)
        return self.scale(inv)

    def term_mul(self, mono, c=1):
        """Multiply by a single term c * x^mono."""
        return Polynomial(
            self.p,
            self.num_vars,
            {monomial_mul(m, mono): v * c for m, v in self.terms.items()},
        )

    def __pow__(self, n):
        """Binary exponentiation via poly_mul; the Frobenius oracle."""
        if n < 0:
            raise PolyError("negative exponent")
        result = Polynomial.constant(self.p, self.num_vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def frobenius_power(self, q):
        """f^q for q = p^e, computed termwise: c * m  ->  c * m^q.

        Valid because c^q = c in F_p and the Frobenius endomorphism is
        additive in characteristic p.
        """
        p = self.p
        e_check = q
        while e_check > 1:
            if e_check % p:
                raise PolyError(f"{q} is not a power of the characteristic {p}")
            e_check //= p
        if q < 1:
            raise PolyError(f"{q} is not a power of the characteristic {p}")
        return Polynomial(
            p,
            self.num_vars,
            {tuple(e * q for e in m): c for m, c in self.terms.items()},
        )

    # -- equality / hashing ------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.p == other.p
            and self.num_vars == other.num_vars
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            h = hash((self.p, self.num_vars, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def __repr__(self):
        return f"Polynomial(p={self.p}, {self.terms!r})"


# -- parsing / formatting --------------------------------------------------

_DEFAULT_ORDER_CACHE = {}


def _default_order(n):
    if n not in _DEFAULT_ORDER_CACHE:
        _DEFAULT_ORDER_CACHE[n] = MonomialOrder("grevlex", n)
    return _DEFAULT_ORDER_CACHE[n]


_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_INT = re.compile(r"\d+")


def poly_parse(text, var_names, p):
    """Parse ``text`` into a Polynomial in the given variables over F_p.

    Grammar: polynomial ::= ['-'] term (('+'|'-') term)*
             term       ::= [integer] ['*'] factor ('*'? factor)*
             factor     ::= var ['^' positiveint]
    Whitespace is insignificant.  Variable names are case-sensitive.
    """
    check_prime(p)
    n = len(var_names)
    var_index = {name: i for i, name in enumerate(var_names)}
    s = text
    pos = 0
    terms = {}

    def skip_ws():
        nonlocal pos
        while pos < len(s) and s[pos].isspace():
            pos += 1

    def parse_int():
        nonlocal pos
        m = _INT.match(s, pos)
        if not m:
            raise ParseError("expected integer", pos)
        pos = m.end()
        return int(m.group())

    def parse_factor(exps):
        nonlocal pos
        m = _IDENT.match(s, pos)
        name = m.group()
        if name not in var_index:
            raise ParseError(f"unknown variable {name!r}", pos)
        pos = m.end()
        skip_ws()
        e = 1
        if pos < len(s) and s[pos] == "^":
            pos += 1
            skip_ws()
            e = parse_int()
            if e < 1:
                raise ParseError("exponent must be positive", pos)
        exps[var_index[name]] += e

    def parse_term():
        nonlocal pos
        coeff = 1
        exps = [0] * n
        saw_any = False
        skip_ws()
        if pos < len(s) and s[pos].isdigit():
            coeff = parse_int()
            saw_any = True
            skip_ws()
        while pos < len(s):
            if s[pos] == "*":
                pos += 1
                skip_ws()
                if not (pos < len(s) and _IDENT.match(s, pos)):
                    raise ParseError("expected variable after '*'", pos)
                parse_factor(exps)
                saw_any = True
            elif _IDENT.match(s, pos):
                parse_factor(exps)
                saw_any = True
            else:
                break
            skip_ws()
        if not saw_any:
            raise ParseError("expected term", pos)
        return coeff, tuple(exps)

    skip_ws()
    if pos >= len(s):
        raise ParseError("empty polynomial", pos)
    sign = 1
    if s[pos] == "-":
        sign = -1
        pos += 1
    while True:
        coeff, mono = parse_term()
        terms[mono] = terms.get(mono, 0) + sign * coeff
        skip_ws()
        if pos >= len(s):
            break
        if s[pos] == "+":
            sign = 1
        elif s[pos] == "-":
            sign = -1
        else:
            raise ParseError(f"unexpected character {s[pos]!r}", pos)
        pos += 1
    return Polynomial(p, n, terms)


def poly_format(f, var_names, order=None):
    """Deterministic string form; round-trips through poly_parse."""
    if f.is_zero():
        return "0"
    order = order or _default_order(f.num_vars)
    parts = []
    for mono in order.sorted_desc(f.terms):
        c = f.terms[mono]
        factors = []
        for name, e in zip(var_names, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append(f"{c}*" + "*".join(factors))
    return " + ".join(parts)
