"""Exact Laurent polynomials over the Gaussian rationals, and square matrices
of them."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

Monomial = Tuple[Tuple[str, int], ...]


class LaurentError(ValueError):
    pass


class Gauss:
    """a + bi with rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __add__(self, o):
        return Gauss(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return Gauss(self.re - o.re, self.im - o.im)

    def __neg__(self):
        return Gauss(-self.re, -self.im)

    def __mul__(self, o):
        return Gauss(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def conj(self):
        return Gauss(self.re, -self.im)

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("zero has no inverse")
        return Gauss(self.re / n, -self.im / n)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re or self.im)

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = Gauss(o)
        return isinstance(o, Gauss) and self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"Gauss({format_gauss(self)})"


def format_gauss(c: Gauss) -> str:
    if not c.im:
        return str(c.re)
    im = "i" if c.im == 1 else "-i" if c.im == -1 else f"{c.im}i"
    if not c.re:
        return im
    sign = "" if im.startswith("-") else "+"
    return f"({c.re}{sign}{im})"


_ONE = Gauss(1)


class Laurent:
    """A Laurent polynomial: map from monomial to nonzero Gaussian coefficient.

    Monomials are sorted tuples of (variable, nonzero exponent)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Gauss] = ()):
        self.terms: Dict[Monomial, Gauss] = {m: c for m, c in dict(terms).items() if c}

    @classmethod
    def const(cls, c) -> "Laurent":
        c = c if isinstance(c, Gauss) else Gauss(c)
        return cls({(): c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "Laurent":
        return cls({((name, power),) if power else (): _ONE})

    def __add__(self, o):
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out[m] + c if m in out else c
        return Laurent(out)

    def __neg__(self):
        return Laurent({m: -c for m, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if isinstance(o, (int, Fraction, Gauss)):
            o = Laurent.const(o)
        out: Dict[Monomial, Gauss] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = _mono_mul(m1, m2)
                c = c1 * c2
                out[m] = out[m] + c if m in out else c
        return Laurent(out)

    def star(self) -> "Laurent":
        """Conjugate coefficients and negate exponents (|z| = 1)."""
        return Laurent({tuple((v, -e) for v, e in m): c.conj() for m, c in self.terms.items()})

    def evaluate(self, point: Mapping[str, Gauss]) -> "Laurent":
        out = Laurent()
        for m, c in self.terms.items():
            coef, rest = c, []
            for v, e in m:
                if v not in point:
                    rest.append((v, e))
                    continue
                x = point[v] if isinstance(point[v], Gauss) else Gauss(point[v])
                if e < 0:
                    if not x:
                        raise LaurentError(f"cannot evaluate {v}^{e} at 0")
                    x = x.inverse()
                for _ in range(abs(e)):
                    coef = coef * x
            out = out + Laurent({tuple(rest): coef})
        return out

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, o):
        return isinstance(o, Laurent) and self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Laurent({format_laurent(self)!r})"


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for v, e in b:
        out[v] = out.get(v, 0) + e
    return tuple(sorted((v, e) for v, e in out.items() if e))


def format_laurent(x: Laurent) -> str:
    if not x.terms:
        return "0"
    parts = []
    for m in sorted(x.terms):
        c = x.terms[m]
        mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
        if not mono:
            text = format_gauss(c)
        elif c == _ONE:
            text = mono
        elif c == -_ONE:
            text = "-" + mono
        else:
            text = f"{format_gauss(c)}*{mono}"
        parts.append(text)
    return "+".join(parts).replace("+-", "-")


_NUM = r"\d+(?:/\d+)?"
_COEF_RE = re.compile(rf"^(?:(?P<num>{_NUM})(?P<i>i)?|(?P<bare>i))$")
_FACTOR_RE = re.compile(r"^(?P<var>[A-Za-z_][A-Za-z0-9_]*)(?:\^(?P<exp>-?\d+))?$")


def parse_laurent(text: str, variables: Iterable[str] = None) -> Laurent:
    """Parse entries such as "0", "z0", "-1/2i*z0^-1", "1 + 2i*z0*z1^2"."""
    allowed = set(variables) if variables is not None else None
    s = "".join(text.split())
    if not s:
        raise LaurentError("empty entry")
    # split into signed terms, not splitting the minus of an exponent
    terms, start = [], 0
    for i, ch in enumerate(s):
        if ch in "+-" and i > 0 and s[i - 1] != "^":
            terms.append(s[start:i])
            start = i
    terms.append(s[start:])
    total = Laurent()
    for t in terms:
        sign = 1
        while t and t[0] in "+-":
            sign = -sign if t[0] == "-" else sign
            t = t[1:]
        if not t:
            raise LaurentError(f"dangling sign in {text!r}")
        coef, mono = Gauss(sign), Laurent.const(1)
        for j, factor in enumerate(t.split("*")):
            cm = _COEF_RE.match(factor)
            if cm and j == 0:
                if cm.group("bare"):
                    value = Gauss(0, 1)
                elif cm.group("i"):
                    value = Gauss(0, Fraction(cm.group("num")))
                else:
                    value = Gauss(Fraction(cm.group("num")))
                coef = coef * value
                continue
            fm = _FACTOR_RE.match(factor)
            if not fm or fm.group("var") == "i":
                raise LaurentError(f"cannot parse {factor!r} in {text!r}")
            if allowed is not None and fm.group("var") not in allowed:
                raise LaurentError(f"unknown variable {fm.group('var')!r}")
            mono = mono * Laurent.var(fm.group("var"), int(fm.group("exp") or 1))
        total = total + mono * coef
    return total


class LaurentMatrix:
    """Square matrix with Laurent entries; treated as immutable."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[Laurent]]):
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise LaurentError("matrix must be square")
        self.rows: Tuple[Tuple[Laurent, ...], ...] = tuple(tuple(r) for r in rows)

    @property
    def size(self) -> int:
        return len(self.rows)

    @classmethod
    def zero(cls, n: int) -> "LaurentMatrix":
        return cls([[Laurent() for _ in range(n)] for _ in range(n)])

    @classmethod
    def identity(cls, n: int) -> "LaurentMatrix":
        return cls([[Laurent.const(1) if i == j else Laurent() for j in range(n)] for i in range(n)])

    @classmethod
    def parse(cls, rows: Sequence[Sequence[str]], variables=None) -> "LaurentMatrix":
        return cls([[parse_laurent(str(x), variables) for x in r] for r in rows])

    def _same(self, o):
        if self.size != o.size:
            raise LaurentError(f"size mismatch: {self.size} vs {o.size}")

    def __add__(self, o):
        self._same(o)
        return LaurentMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, o.rows)])

    def __sub__(self, o):
        self._same(o)
        return LaurentMatrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, o.rows)])

    def __neg__(self):
        return LaurentMatrix([[-a for a in r] for r in self.rows])

    def __matmul__(self, o):
        self._same(o)
        cols = list(zip(*o.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = Laurent()
                for a, b in zip(r, c):
                    if a.terms and b.terms:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return LaurentMatrix(out)

    def scale(self, x: Laurent) -> "LaurentMatrix":
        return LaurentMatrix([[x * a for a in r] for r in self.rows])

    def adjoint(self) -> "LaurentMatrix":
        return LaurentMatrix([[self.rows[j][i].star() for j in range(self.size)]
                              for i in range(self.size)])

    def evaluate(self, point: Mapping[str, Gauss]) -> "LaurentMatrix":
        return LaurentMatrix([[a.evaluate(point) for a in r] for r in self.rows])

    def is_zero(self) -> bool:
        return not any(a.terms for r in self.rows for a in r)

    def __eq__(self, o):
        return isinstance(o, LaurentMatrix) and self.rows == o.rows

    def __hash__(self):
        return hash(self.rows)

    def to_strings(self) -> List[List[str]]:
        return [[format_laurent(a) for a in r] for r in self.rows]

    def __repr__(self):
        return f"LaurentMatrix({self.to_strings()})"


def star_product(a: LaurentMatrix, b: LaurentMatrix) -> LaurentMatrix:
    return a @ b


def adjoint(a: LaurentMatrix) -> LaurentMatrix:
    return a.adjoint()


def evaluate(a: LaurentMatrix, point: Mapping[str, Gauss]) -> LaurentMatrix:
    return a.evaluate(point)
