"""Ordinals below epsilon_0 in hereditary Cantor normal form."""
from __future__ import annotations

from functools import total_ordering
from typing import Iterable, Optional, Tuple, Union

LESS, EQUAL, GREATER = "less", "equal", "greater"


class OrdinalError(ValueError):
    pass


class OrdinalParseError(OrdinalError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


@total_ordering
class Ordinal:
    """Immutable CNF ordinal: a tuple of (exponent, coefficient) with strictly
    decreasing exponents and positive coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[Tuple["Ordinal", int]] = ()):
        terms = tuple(terms)
        for i, (e, c) in enumerate(terms):
            if not isinstance(e, Ordinal) or not isinstance(c, int) or c < 1:
                raise OrdinalError(f"bad CNF term {e!r}*{c!r}")
            if i and _cmp(terms[i - 1][0], e) != GREATER:
                raise OrdinalError("CNF exponents must strictly decrease")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Ordinal is immutable")

    @classmethod
    def _raw(cls, terms: tuple) -> "Ordinal":
        # trusted constructor, skips invariant checks
        obj = object.__new__(cls)
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def nat(cls, n: int) -> "Ordinal":
        if n < 0:
            raise OrdinalError("natural numbers only")
        return ZERO if n == 0 else cls._raw(((ZERO, n),))

    def __eq__(self, other):
        if isinstance(other, int):
            other = as_ordinal(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __lt__(self, other):
        return _cmp(self, as_ordinal(other)) == LESS

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self.terms))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        return add(self, as_ordinal(other))

    def __radd__(self, other):
        return add(as_ordinal(other), self)

    def __mul__(self, other):
        return mul(self, as_ordinal(other))

    def __rmul__(self, other):
        return mul(as_ordinal(other), self)

    def __repr__(self):
        return f"Ordinal({format(self)!r})"

    def __str__(self):
        return format(self)

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0])

    def __int__(self):
        if not self.is_finite:
            raise OrdinalError(f"{format(self)} is not finite")
        return self.terms[0][1] if self.terms else 0

    @property
    def lead_exponent(self) -> Optional["Ordinal"]:
        return self.terms[0][0] if self.terms else None


ZERO = Ordinal._raw(())
ONE = Ordinal._raw(((ZERO, 1),))
OMEGA = Ordinal._raw(((ONE, 1),))

OrdinalLike = Union[Ordinal, int]


def as_ordinal(x: OrdinalLike) -> Ordinal:
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Ordinal.nat(x)
    raise TypeError(f"cannot interpret {x!r} as an ordinal")


def _cmp(a: Ordinal, b: Ordinal) -> str:
    if a is b:
        return EQUAL
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = _cmp(ea, eb)
        if c != EQUAL:
            return c
        if ca != cb:
            return LESS if ca < cb else GREATER
    if len(a.terms) == len(b.terms):
        return EQUAL
    return LESS if len(a.terms) < len(b.terms) else GREATER


def cmp(a: OrdinalLike, b: OrdinalLike) -> str:
    return _cmp(as_ordinal(a), as_ordinal(b))


def add(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    a, b = as_ordinal(a), as_ordinal(b)
    if not b.terms:
        return a
    lead, coef = b.terms[0]
    kept = []
    for e, c in a.terms:
        order = _cmp(e, lead)
        if order == GREATER:
            kept.append((e, c))
        else:
            if order == EQUAL:
                coef += c
            break
    return Ordinal._raw(tuple(kept) + ((lead, coef),) + b.terms[1:])


def left_sub(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    """The unique x with a + x = b."""
    a, b = as_ordinal(a), as_ordinal(b)
    if _cmp(a, b) == GREATER:
        raise OrdinalError(f"underflow: {format(a)} > {format(b)}")
    i = 0
    while i < len(a.terms) and a.terms[i] == b.terms[i]:
        i += 1
    if i == len(a.terms):
        return Ordinal._raw(b.terms[i:])
    (ea, ca), (eb, cb) = a.terms[i], b.terms[i]
    if ea == eb:
        return Ordinal._raw(((eb, cb - ca),) + b.terms[i + 1:])
    return Ordinal._raw(b.terms[i:])


def mul(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    a, b = as_ordinal(a), as_ordinal(b)
    if not a.terms or not b.terms:
        return ZERO
    lead, coef = a.terms[0]
    out = ZERO
    for e, c in b.terms:
        if e.terms:
            piece = Ordinal._raw(((add(lead, e), c),))
        else:
            piece = Ordinal._raw(((lead, coef * c),) + a.terms[1:])
        out = add(out, piece)
    return out


def omega_pow(a: OrdinalLike) -> Ordinal:
    return Ordinal._raw(((as_ordinal(a), 1),))


def divmod_omega(a: OrdinalLike, k: OrdinalLike) -> Tuple[Optional[int], Ordinal]:
    """Split a = w^k*n + r with r < w^k.

    Returns (None, a) when a >= w^(k+1), which has no such split."""
    a, k = as_ordinal(a), as_ordinal(k)
    if not a.terms:
        return 0, ZERO
    order = _cmp(a.terms[0][0], k)
    if order == GREATER:
        return None, a
    if order == EQUAL:
        return a.terms[0][1], Ordinal._raw(a.terms[1:])
    return 0, a


def omega_times(k: OrdinalLike, n: int) -> Ordinal:
    """w^k * n for a natural n."""
    return ZERO if n == 0 else Ordinal._raw(((as_ordinal(k), n),))


def format(a: OrdinalLike) -> str:  # noqa: A001 - mirrors the public name
    a = as_ordinal(a)
    if not a.terms:
        return "0"
    parts = []
    for e, c in a.terms:
        if not e.terms:
            parts.append(str(c))
            continue
        if e == ONE:
            text = "w"
        elif e.is_finite or e == OMEGA:
            text = "w^" + format(e)
        else:
            text = "w^(" + format(e) + ")"
        parts.append(text if c == 1 else f"{text}*{c}")
    return "+".join(parts)


class _Parser:
    def __init__(self, text: str):
        # positions refer to the original text, so keep an index map
        self.chars = [(i, ch) for i, ch in enumerate(text) if not ch.isspace()]
        self.end = len(text)
        self.i = 0

    def pos(self) -> int:
        return self.chars[self.i][0] if self.i < len(self.chars) else self.end

    def peek(self) -> Optional[str]:
        return self.chars[self.i][1] if self.i < len(self.chars) else None

    def expect(self, ch: str):
        if self.peek() != ch:
            found = self.peek()
            raise OrdinalParseError(
                f"expected {ch!r}, found {'end of input' if found is None else repr(found)}",
                self.pos(),
            )
        self.i += 1

    def nat(self) -> int:
        start = self.i
        while self.peek() is not None and self.peek().isdigit():
            self.i += 1
        if start == self.i:
            raise OrdinalParseError("expected a natural number", self.pos())
        return int("".join(ch for _, ch in self.chars[start:self.i]))

    def expr(self) -> Ordinal:
        value = self.term()
        while self.peek() == "+":
            self.i += 1
            value = add(value, self.term())
        return value

    def term(self) -> Ordinal:
        ch = self.peek()
        if ch is not None and ch.isdigit():
            return Ordinal.nat(self.nat())
        if ch != "w":
            raise OrdinalParseError("expected a number or 'w'", self.pos())
        self.i += 1
        exponent = ONE
        if self.peek() == "^":
            self.i += 1
            exponent = self.base()
        coef = 1
        if self.peek() == "*":
            self.i += 1
            at = self.pos()
            coef = self.nat()
            if coef == 0:
                raise OrdinalParseError("coefficient 0 is not allowed", at)
        return Ordinal._raw(((exponent, coef),))

    def base(self) -> Ordinal:
        ch = self.peek()
        if ch is not None and ch.isdigit():
            return Ordinal.nat(self.nat())
        if ch == "w":
            self.i += 1
            return OMEGA
        if ch == "(":
            self.i += 1
            value = self.expr()
            self.expect(")")
            return value
        raise OrdinalParseError("expected an exponent", self.pos())


def parse(text: str) -> Ordinal:
    p = _Parser(text)
    value = p.expr()
    if p.peek() is not None:
        raise OrdinalParseError(f"unexpected {p.peek()!r}", p.pos())
    return value
