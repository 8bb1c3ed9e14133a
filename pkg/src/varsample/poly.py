"""Sparse multivariate and dense univariate polynomials over F_p.

Univariate coefficient lists are stored lowest degree first with no trailing
zeros, so ``[]`` is the zero polynomial. The ``up_*`` helpers work on those
raw lists and are what the root finder and the eliminator call in hot loops.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, DivisionByZero, MixedFields, ParseError, UndeclaredVariable
from .field import Field, FieldElement

# ---------------------------------------------------------------------------
# dense univariate kernels on lists of ints

def up_trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def up_add(a: Sequence[int], b: Sequence[int], p: int) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = (out[i] + y) % p
    return up_trim(out)


def up_sub(a: Sequence[int], b: Sequence[int], p: int) -> list:
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, y in enumerate(b):
        out[i] = (out[i] - y) % p
    return up_trim(out)


def up_mul(a: Sequence[int], b: Sequence[int], p: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return up_trim([c % p for c in out])


def up_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list, list]:
    if not b:
        raise DivisionByZero("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) <= db:
        return [], up_trim(r)
    inv_lead = pow(b[-1], -1, p)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] % p
        if c == 0:
            continue
        c = c * inv_lead % p
        q[i - db] = c
        off = i - db
        for j in range(db):
            r[off + j] -= c * b[j]
        r[i] = 0
    return up_trim(q), up_trim([x % p for x in r[:db]])


def up_mod(a: Sequence[int], b: Sequence[int], p: int) -> list:
    """Remainder of ``a`` by a *monic* ``b``."""
    r = list(a)
    db = len(b) - 1
    if len(r) <= db:
        return up_trim(r)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] % p
        if c:
            off = i - db
            for j in range(db):
                r[off + j] -= c * b[j]
    return up_trim([x % p for x in r[:db]])


def up_monic(a: Sequence[int], p: int) -> list:
    if not a:
        return []
    inv_lead = pow(a[-1], -1, p)
    return [x * inv_lead % p for x in a]


def up_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list:
    """Monic gcd; ``[]`` only when both inputs are zero."""
    a, b = list(a), list(b)
    while b:
        b = up_monic(b, p)
        a, b = b, up_mod(a, b, p)
    return up_monic(a, p)


def up_mulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list:
    return up_mod(up_mul(a, b, p), m, p)


def up_powmod(base: Sequence[int], e: int, m: Sequence[int], p: int) -> list:
    """``base**e mod m`` for monic ``m`` by square-and-multiply."""
    result = up_mod([1], m, p)
    base = up_mod(base, m, p)
    while e:
        if e & 1:
            result = up_mulmod(result, base, m, p)
        e >>= 1
        if e:
            base = up_mulmod(base, base, m, p)
    return result


def up_eval(a: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


class UniPoly:
    """Dense univariate polynomial, coefficients lowest degree first."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Iterable[int], field: Field):
        p = field.p
        self.coeffs = tuple(up_trim([int(c) % p for c in coeffs]))
        self.field = field

    @classmethod
    def _raw(cls, coeffs: list, field: Field) -> "UniPoly":
        obj = cls.__new__(cls)
        obj.coeffs = tuple(coeffs)
        obj.field = field
        return obj

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        # zero polynomial reports 0; callers check is_zero() first
        return max(len(self.coeffs) - 1, 0)

    def _check(self, other: "UniPoly"):
        if other.field != self.field:
            raise MixedFields("polynomials over different fields")

    def __add__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        return UniPoly._raw(up_add(self.coeffs, other.coeffs, self.field.p), self.field)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        return UniPoly._raw(up_sub(self.coeffs, other.coeffs, self.field.p), self.field)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        return UniPoly._raw(up_mul(self.coeffs, other.coeffs, self.field.p), self.field)

    def __neg__(self) -> "UniPoly":
        return self.scale(-1)

    def scale(self, c: int) -> "UniPoly":
        return UniPoly([x * int(c) for x in self.coeffs], self.field)

    def __divmod__(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        self._check(other)
        q, r = up_divmod(self.coeffs, other.coeffs, self.field.p)
        return UniPoly._raw(q, self.field), UniPoly._raw(r, self.field)

    def monic(self) -> "UniPoly":
        return UniPoly._raw(up_monic(self.coeffs, self.field.p), self.field)

    def __call__(self, x) -> FieldElement:
        return FieldElement(up_eval(self.coeffs, int(x), self.field.p), self.field)

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.field.p))

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)}, p={self.field.p})"


# ---------------------------------------------------------------------------
# sparse multivariate polynomials as {exponent tuple: coefficient} dicts

def _dict_add(a: Mapping, b: Mapping, p: int) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = (out.get(m, 0) + c) % p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _dict_mul(a: Mapping, b: Mapping, p: int) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = out.get(m, 0) + ca * cb
    return {m: c % p for m, c in out.items() if c % p}


class MultiPoly:
    """Sparse polynomial in ``nvars`` variables over a prime field.

    ``terms`` maps exponent tuples to nonzero residues. Instances are treated
    as immutable once built.
    """

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: Field, nvars: int, terms: Mapping[Sequence[int], int] | None = None):
        p = field.p
        clean: dict = {}
        for mono, c in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars:
                raise DimensionMismatch(f"monomial {mono} has {len(mono)} exponents, expected {nvars}")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            v = (clean.get(mono, 0) + int(c)) % p
            if v:
                clean[mono] = v
            else:
                clean.pop(mono, None)
        self.field = field
        self.nvars = nvars
        self.terms = clean

    @classmethod
    def _raw(cls, field: Field, nvars: int, terms: dict) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.field = field
        obj.nvars = nvars
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, field: Field, nvars: int, c: int) -> "MultiPoly":
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, field: Field, nvars: int, i: int) -> "MultiPoly":
        mono = [0] * nvars
        mono[i] = 1
        return cls(field, nvars, {tuple(mono): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def _check(self, other: "MultiPoly"):
        if other.field != self.field:
            raise MixedFields("polynomials over different fields")
        if other.nvars != self.nvars:
            raise DimensionMismatch(f"{self.nvars} vs {other.nvars} variables")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        return MultiPoly._raw(self.field, self.nvars, _dict_add(self.terms, other.terms, self.field.p))

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __neg__(self) -> "MultiPoly":
        return self.scale(-1)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        return MultiPoly._raw(self.field, self.nvars, _dict_mul(self.terms, other.terms, self.field.p))

    def scale(self, c) -> "MultiPoly":
        p = self.field.p
        c = int(c) % p
        if c == 0:
            return MultiPoly._raw(self.field, self.nvars, {})
        return MultiPoly._raw(self.field, self.nvars, {m: v * c % p for m, v in self.terms.items()})

    def eval(self, point: Sequence) -> FieldElement:
        return FieldElement(self.eval_int([int(x) for x in point]), self.field)

    __call__ = eval

    def eval_int(self, point: Sequence[int]) -> int:
        if len(point) != self.nvars:
            raise DimensionMismatch(f"point has {len(point)} coordinates, expected {self.nvars}")
        p = self.field.p
        acc = 0
        for mono, c in self.terms.items():
            for x, e in zip(point, mono):
                if e:
                    c = c * pow(x, e, p)
            acc += c
        return acc % p

    def to_unipoly(self) -> UniPoly:
        if self.nvars != 1:
            raise DimensionMismatch("only univariate polynomials convert to UniPoly")
        deg = self.total_degree()
        coeffs = [0] * (deg + 1)
        for (e,), c in self.terms.items():
            coeffs[e] = c
        return UniPoly._raw(up_trim(coeffs), self.field)

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.field == other.field
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field.p, self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        names = [f"x{i + 1}" for i in range(self.nvars)]
        return f"MultiPoly({format_poly(self, names)}, p={self.field.p})"


def eval_poly(f: MultiPoly, point: Sequence) -> FieldElement:
    return f.eval(point)


def total_degree(f: MultiPoly) -> int:
    return f.total_degree()


def linear_forms(base: Sequence[int], basis: Sequence[Sequence[int]], p: int) -> list[dict]:
    """Coordinate functions ``x_i = base_i + sum_j basis[j][i] * t_j`` as dicts in k variables."""
    k = len(basis)
    forms = []
    for i, v in enumerate(base):
        form = {}
        if v % p:
            form[(0,) * k] = v % p
        for j, col in enumerate(basis):
            c = col[i] % p
            if c:
                mono = [0] * k
                mono[j] = 1
                form[tuple(mono)] = c
        forms.append(form)
    return forms


def _horner(terms: list, var: int, forms: list[dict], k: int, p: int) -> dict:
    """Substitute ``forms[var:]`` into ``terms`` (pairs of (exponents, coeff))."""
    if var == len(forms):
        c = sum(c for _, c in terms) % p
        return {(0,) * k: c} if c else {}
    groups: dict[int, list] = {}
    for mono, c in terms:
        groups.setdefault(mono[var], []).append((mono, c))
    form = forms[var]
    acc: dict = {}
    for e in range(max(groups), -1, -1):
        if acc:
            acc = _dict_mul(acc, form, p)
        if e in groups:
            acc = _dict_add(acc, _horner(groups[e], var + 1, forms, k, p), p)
    return acc


def substitute_linear_forms(f: MultiPoly, forms: list[dict], k: int) -> MultiPoly:
    if len(forms) != f.nvars:
        raise DimensionMismatch(f"{len(forms)} forms for {f.nvars} variables")
    if not f.terms:
        return MultiPoly._raw(f.field, k, {})
    return MultiPoly._raw(f.field, k, _horner(list(f.terms.items()), 0, forms, k, f.field.p))


def substitute_affine(f: MultiPoly, a) -> MultiPoly:
    """Restrict ``f`` to the affine subspace ``a``: ``g(t) = f(base + B t)``.

    The result lives in ``a.dim`` variables and never has larger total degree.
    """
    if a.ambient_dim != f.nvars:
        raise DimensionMismatch(f"subspace lives in F^{a.ambient_dim}, polynomial has {f.nvars} variables")
    forms = linear_forms(a.base, a.basis, f.field.p)
    return substitute_linear_forms(f, forms, a.dim)


# ---------------------------------------------------------------------------
# text syntax

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\^)|(\*)|([+-])|(\S))")


def _split_identifier(ident: str, names: Sequence[str]) -> list[str] | None:
    if ident in names:
        return [ident]
    for name in sorted(names, key=len, reverse=True):
        if ident.startswith(name):
            rest = _split_identifier(ident[len(name):], names)
            if rest is not None:
                return [name] + rest
    return None


def parse_poly(text: str, names: Sequence[str], field: Field, line: int | None = None) -> MultiPoly:
    """Parse ``x^2 + 3*x*y - 1`` style text over the declared variable ``names``."""
    names = list(names)
    index = {name: i for i, name in enumerate(names)}
    n = len(names)
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        col = m.start(m.lastindex) + 1
        kind = ("num", "ident", "^", "*", "sign", "bad")[m.lastindex - 1]
        tokens.append((kind, m.group(m.lastindex), col))
        pos = m.end()
    if not tokens:
        raise ParseError("empty polynomial", line, 1)

    terms: dict = {}
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else (None, None, len(text) + 1)

    first = True
    while i < len(tokens):
        sign = 1
        kind, val, col = peek()
        if kind == "sign":
            sign = -1 if val == "-" else 1
            i += 1
        elif not first:
            raise ParseError(f"expected '+' or '-', got {val!r}", line, col)
        first = False
        coeff = 1
        mono = [0] * n
        factors = 0
        while True:
            kind, val, col = peek()
            if kind == "num":
                coeff *= int(val)
                i += 1
            elif kind == "ident":
                parts = _split_identifier(val, names)
                if parts is None:
                    raise UndeclaredVariable(f"undeclared variable {val!r}", line, col)
                i += 1
                exp = 1
                if peek()[0] == "^":
                    i += 1
                    kind2, val2, col2 = peek()
                    if kind2 != "num":
                        raise ParseError("expected exponent after '^'", line, col2)
                    exp = int(val2)
                    i += 1
                for name in parts[:-1]:
                    mono[index[name]] += 1
                mono[index[parts[-1]]] += exp
            elif kind == "bad":
                raise ParseError(f"unexpected character {val!r}", line, col)
            else:
                if factors == 0:
                    raise ParseError("expected a term", line, col)
                break
            factors += 1
            if peek()[0] == "*":
                i += 1
                if peek()[0] not in ("num", "ident"):
                    raise ParseError("dangling '*'", line, peek()[2])
        m = tuple(mono)
        terms[m] = terms.get(m, 0) + sign * coeff
    return MultiPoly(field, n, terms)


def format_poly(f: MultiPoly, names: Sequence[str]) -> str:
    if not f.terms:
        return "0"
    p = f.field.p
    out = []
    for mono in sorted(f.terms, key=lambda m: (-sum(m), [-e for e in m])):
        c = f.terms[mono]
        neg = c > p // 2
        mag = p - c if neg else c
        factors = []
        for name, e in zip(names, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        body = "*".join(factors)
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)
