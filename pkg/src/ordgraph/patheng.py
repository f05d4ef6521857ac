"""Paths as normal-form words: composition, degree, heads and tails."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .ordinal import ZERO, Ordinal, OrdinalLike, as_ordinal, divmod_omega, left_sub, omega_pow
from .presentation import Presentation


class PathError(ValueError):
    pass


@dataclass(frozen=True)
class Path:
    """A normal-form word. ``base`` is the range vertex r(path), which is
    also the source when the word is empty."""

    base: str
    word: Tuple[str, ...] = ()

    def __str__(self):
        return format_path(self)

    def __len__(self):
        return len(self.word)


def identity(v: str) -> Path:
    return Path(v)


def rng(p: Presentation, a: Path) -> str:
    return a.base


def src(p: Presentation, a: Path) -> str:
    return p.gen(a.word[-1]).src if a.word else a.base


def _check_composable(p: Presentation, word: Sequence[str]):
    for x, y in zip(word, word[1:]):
        if p.gen(x).src != p.gen(y).rng:
            raise PathError(f"word does not compose at {x}.{y}: s({x}) != r({y})")


def normalize(p: Presentation, word: Iterable[str], base: Optional[str] = None) -> Path:
    word = tuple(word)
    if not word:
        if base is None:
            raise PathError("empty word needs a base vertex")
        if base not in p.vertices:
            raise PathError(f"unknown vertex {base!r}")
        return Path(base)
    _check_composable(p, word)
    first = p.gen(word[0]).rng
    if base is not None and base != first:
        raise PathError(f"word starts at {first}, not {base}")
    # right fold; stack[-1] is the current leading generator
    stack: List[str] = []
    for u in reversed(word):
        if stack and p.level(u) < p.level(stack[-1]):
            stack[-1] = p.prepend(u, stack[-1])
        else:
            stack.append(u)
    stack.reverse()
    return Path(first, tuple(stack))


def compose(p: Presentation, a: Path, b: Path) -> Path:
    if src(p, a) != rng(p, b):
        raise PathError(f"cannot compose: s({a}) = {src(p, a)} but r({b}) = {rng(p, b)}")
    if not a.word:
        return b
    if not b.word:
        return a
    return normalize(p, a.word + b.word)


def degree_of_word(p: Presentation, word: Iterable[str]) -> Ordinal:
    counts: dict = {}
    for x in word:
        lv = p.level(x)
        counts[lv] = counts.get(lv, 0) + 1
    return Ordinal._raw(tuple((Ordinal.nat(k), counts[k]) for k in sorted(counts, reverse=True)))


def degree(p: Presentation, a: Path) -> Ordinal:
    """d(a); the word is in normal form so this sums block lengths."""
    return degree_of_word(p, a.word)


# -- atoms ---------------------------------------------------------------------

def sigma_power(p: Presentation, a: str, j: int) -> str:
    """sigma^j(a), using the eventual periodicity of the orbit for large j."""
    key = ("orbit", a)
    orbit = p._cache.get(key)
    if orbit is None:
        seq, index = [a], {a: 0}
        while True:
            nxt = p.sigma[seq[-1]]
            if nxt in index:
                orbit = (seq, index[nxt])
                break
            index[nxt] = len(seq)
            seq.append(nxt)
        p._cache[key] = orbit
    seq, start = orbit
    if j < len(seq):
        return seq[j]
    period = len(seq) - start
    return seq[start + (j - start) % period]


def atom_head(p: Presentation, a: str, r: Ordinal) -> Tuple[str, ...]:
    """Head word of atom a at a position 0 <= r < w^level(a)."""
    g = p.gen(a)
    j, rest = divmod_omega(r, g.level - 1)
    if j is None:
        raise PathError(f"position {r} is beyond the atom {a}")
    out = tuple(g.lasso_entry(i) for i in range(j))
    if rest:
        out += atom_head(p, g.lasso_entry(j), rest)
    return out


def atom_tail(p: Presentation, a: str, r: Ordinal) -> str:
    """The tail atom a(r)^-1 a for 0 <= r < w^level(a)."""
    g = p.gen(a)
    j, rest = divmod_omega(r, g.level - 1)
    if j is None:
        raise PathError(f"position {r} is beyond the atom {a}")
    if not rest:
        return sigma_power(p, a, j)
    inner = atom_tail(p, g.lasso_entry(j), rest)
    return p.prepend(inner, sigma_power(p, a, j + 1))


def _split(p: Presentation, a: Path, beta: OrdinalLike):
    """Locate beta in a: (index of the generator cut, residual inside it)."""
    beta = as_ordinal(beta)
    rem = beta
    for i, x in enumerate(a.word):
        if not rem:
            return i, ZERO
        d = omega_pow(p.level(x))
        if d <= rem:
            rem = left_sub(d, rem)
        else:
            return i, rem
    if rem:
        raise PathError(f"position {beta} exceeds the degree {degree(p, a)} of {a}")
    return len(a.word), ZERO


def head(p: Presentation, a: Path, beta: OrdinalLike) -> Path:
    i, rem = _split(p, a, beta)
    word = a.word[:i]
    if rem:
        word += atom_head(p, a.word[i], rem)
    return Path(a.base, word)


def tail(p: Presentation, a: Path, beta: OrdinalLike) -> Path:
    i, rem = _split(p, a, beta)
    if rem:
        t = atom_tail(p, a.word[i], rem)
        return Path(p.gen(t).rng, (t,) + a.word[i + 1:])
    if i == len(a.word):
        return Path(src(p, a))
    return Path(p.gen(a.word[i]).rng, a.word[i:])


def equals(a: Path, b: Path) -> bool:
    return a == b


def divides(p: Presentation, a: Path, b: Path) -> bool:
    """b in a.Lambda."""
    if a.base != b.base:
        return False
    da = degree(p, a)
    if da > degree(p, b):
        return False
    return head(p, b, da) == a


def fixed_by_loop(p: Presentation, h: Path, g) -> Optional[int]:
    """Least n > 0 with h^n g = g, or None.

    When d(h) is absorbed by g, every h^n g differs from g only in its first
    generator, which runs through the finitely many atoms of one level; the
    orbit repeats within that many steps, so the search bound is exact."""
    from . import boundary

    if src(p, h) != h.base or h.base != _range_of(g):
        raise PathError("fixed_by_loop needs a loop h at r(g)")
    if not h.word:
        raise PathError("the loop must have positive degree")
    step = (lambda x: compose(p, h, x)) if isinstance(g, Path) \
        else (lambda x: boundary.star_compose(p, h, x))
    size = (lambda x: degree(p, x)) if isinstance(g, Path) \
        else (lambda x: boundary.star_length(p, x))
    x = step(g)
    if size(x) != size(g):
        return None
    first = g.word[0] if isinstance(g, Path) else boundary.first_generator(g)
    bound = len(p.names(p.level(first))) + 1
    for n in range(1, bound + 1):
        if x == g:
            return n
        x = step(x)
    return None


def _range_of(g) -> str:
    return g.base if isinstance(g, Path) else g.range


# -- literals ----------------------------------------------------------------

def parse_path(p: Presentation, text: str) -> Path:
    text = text.strip()
    if text.startswith("id:"):
        return normalize(p, (), base=text[3:].strip())
    if not text:
        raise PathError("empty path literal")
    names = [t.strip() for t in text.split(".")]
    for n in names:
        if n not in p.gens:
            raise PathError(f"unknown generator {n!r}")
    return normalize(p, names)


def format_path(a: Path) -> str:
    return ".".join(a.word) if a.word else f"id:{a.base}"
