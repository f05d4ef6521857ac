"""Star paths: finite paths and eventually periodic infinite extensions."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import FrozenSet, Iterator, List, Sequence, Tuple, Union

from . import conditions
from .ordinal import OMEGA, Ordinal, OrdinalLike, add, as_ordinal, divmod_omega, left_sub, mul
from .patheng import Path, PathError, compose, degree, head, normalize, parse_path, src, tail
from .presentation import Presentation, primitive_root


@dataclass(frozen=True)
class Finite:
    path: Path

    @property
    def range(self) -> str:
        return self.path.base

    def __str__(self):
        return format_star(self)


@dataclass(frozen=True)
class OmegaTail:
    """prefix . cycle^w in canonical form; build with :func:`omega_tail`."""

    prefix: Path
    cycle: Path

    @property
    def range(self) -> str:
        return self.prefix.base

    def __str__(self):
        return format_star(self)


StarPath = Union[Finite, OmegaTail]


def as_star(f) -> StarPath:
    return Finite(f) if isinstance(f, Path) else f


def omega_tail(p: Presentation, prefix: Sequence[str], cycle: Sequence[str],
               base: str = None) -> OmegaTail:
    """Canonical form of prefix.cycle^w.

    Lower-level generators at the end of the cycle are absorbed into the first
    top-level atom of the next copy, so the unrolled word is
    prefix.x1..xp.(x1'.x2..xp)^w with every cycle entry at the top level.
    Then the cycle is made primitive and the prefix rolled back."""
    cycle_path = normalize(p, cycle)
    c = cycle_path.word
    if src(p, cycle_path) != cycle_path.base:
        raise PathError(f"cycle {'.'.join(c)} is not a loop")
    top = p.level(c[0])
    split = next((i for i, x in enumerate(c) if p.level(x) < top), len(c))
    xs, ys = c[:split], c[split:]
    first = normalize(p, ys + xs[:1]).word[0] if ys else xs[0]
    prefix = tuple(prefix)
    if prefix and p.gen(prefix[-1]).src != cycle_path.base:
        raise PathError("prefix does not end at the cycle's range")
    start = p.gen(prefix[0]).rng if prefix else (base or cycle_path.base)
    if not prefix and base is not None and base != cycle_path.base:
        raise PathError("empty prefix must sit at the cycle's range")
    body = list(normalize(p, prefix + xs, base=start).word)
    loop = primitive_root((first,) + xs[1:])
    while body and body[-1] == loop[-1]:
        body.pop()
        loop = loop[-1:] + loop[:-1]
    loop_base = p.gen(loop[0]).rng
    return OmegaTail(Path(start if body else loop_base, tuple(body)), Path(loop_base, loop))


def first_generator(f: StarPath) -> str:
    if isinstance(f, Finite):
        if not f.path.word:
            raise PathError("empty path has no generators")
        return f.path.word[0]
    return (f.prefix.word or f.cycle.word)[0]


def _cycle_level(p: Presentation, f: OmegaTail) -> int:
    return p.level(f.cycle.word[0])


def star_length(p: Presentation, f: StarPath) -> Ordinal:
    if isinstance(f, Finite):
        return add(degree(p, f.path), 1)
    return add(degree(p, f.prefix), mul(degree(p, f.cycle), OMEGA))


def unroll(f: OmegaTail, n: int) -> Tuple[str, ...]:
    """Generators number |prefix|+1 .. |prefix|+n of the infinite word."""
    c = f.cycle.word
    return tuple(c[i % len(c)] for i in range(n))


def _window(p: Presentation, f: OmegaTail, beta: Ordinal) -> Tuple[Path, int]:
    """A finite head of f long enough to contain position beta, plus the
    number of cycle generators it uses."""
    dp = degree(p, f.prefix)
    copies = 1
    if dp <= beta:
        q, _ = divmod_omega(left_sub(dp, beta), _cycle_level(p, f))
        if q is None:
            raise PathError(f"position {beta} is not below L(f)")
        copies = q + 1
    word = f.prefix.word + unroll(f, copies)
    return Path(f.prefix.base if f.prefix.word else f.cycle.base, word), copies


def _check_position(p: Presentation, f: StarPath, beta: Ordinal):
    if beta >= star_length(p, f):
        raise PathError(f"position {beta} is not below L(f) = {star_length(p, f)}")


def star_head(p: Presentation, f: StarPath, beta: OrdinalLike) -> Path:
    beta = as_ordinal(beta)
    f = as_star(f)
    _check_position(p, f, beta)
    if isinstance(f, Finite):
        return head(p, f.path, beta)
    window, _ = _window(p, f, beta)
    return head(p, window, beta)


def star_tail(p: Presentation, f: StarPath, beta: OrdinalLike) -> StarPath:
    beta = as_ordinal(beta)
    f = as_star(f)
    _check_position(p, f, beta)
    if isinstance(f, Finite):
        return Finite(tail(p, f.path, beta))
    window, used = _window(p, f, beta)
    rest = tail(p, window, beta)
    c = f.cycle.word
    k = used % len(c)
    return omega_tail(p, rest.word, c[k:] + c[:k], base=rest.base)


def star_compose(p: Presentation, e: Path, f: StarPath) -> StarPath:
    f = as_star(f)
    if src(p, e) != f.range:
        raise PathError(f"cannot compose: s({e}) = {src(p, e)} but r(f) = {f.range}")
    if isinstance(f, Finite):
        return Finite(compose(p, e, f.path))
    return omega_tail(p, e.word + f.prefix.word, f.cycle.word, base=e.base)


def omega_power(p: Presentation, h: Path) -> OmegaTail:
    if not h.word:
        raise PathError("h must have positive degree")
    if src(p, h) != h.base:
        raise PathError(f"{h} is not a loop")
    return omega_tail(p, (), h.word, base=h.base)


# -- boundary membership -------------------------------------------------------

def visited_inner(p: Presentation, x: str) -> FrozenSet[str]:
    """Vertices s(x(b)) for positions b < d(x); excludes the source."""
    key = ("visited", x)
    hit = p._cache.get(key)
    if hit is None:
        g = p.gen(x)
        out = {g.rng}
        for y in set(g.prefix + g.cycle):
            out |= visited_inner(p, y)
        hit = p._cache[key] = frozenset(out)
    return hit


def visited(p: Presentation, f: StarPath) -> FrozenSet[str]:
    """All vertices s(f(b)) for b < L(f)."""
    out = {f.range}
    if isinstance(f, Finite):
        for x in f.path.word:
            out |= visited_inner(p, x)
        out.add(src(p, f.path))
    else:
        for x in f.prefix.word + f.cycle.word:
            out |= visited_inner(p, x)
    return frozenset(out)


def critical_position(L: Ordinal, k: int):
    """Least position g with L <= g + w^k, or None when every g < L is safe."""
    k_ord = Ordinal.nat(k)
    above = tuple(t for t in L.terms if t[0] > k_ord)
    coef = next((c for e, c in L.terms if e == k_ord), 0)
    below = any(e < k_ord for e, _ in L.terms)
    if below:
        return Ordinal._raw(above + (((k_ord, coef),) if coef else ()))
    if coef:
        return Ordinal._raw(above + (((k_ord, coef - 1),) if coef > 1 else ()))
    return None


def is_boundary(p: Presentation, f: StarPath) -> bool:
    """Checks L(f) > g + w^k whenever s(f(g)) is k-regular.

    Positions g with g + w^k < L are always fine, so for each level only the
    vertices visited from the critical position onwards matter."""
    f = as_star(f)
    L = star_length(p, f)
    for k in range(p.max_level + 1):
        mu = critical_position(L, k)
        if mu is None:
            continue
        late = visited(p, star_tail(p, f, mu))
        if any(conditions.is_regular(p, v, k) for v in late):
            return False
    return True


def maximal_extension(p: Presentation, v: str) -> StarPath:
    """Greedy extension from v, closing into a cycle at the first repeated
    vertex. Ties: higher level, then generators that can be continued, then
    name. Falls back to a bounded boundary search if the greedy path fails."""
    word: List[str] = []
    seen = {}
    x = v
    while x not in seen:
        seen[x] = len(word)
        options = [g for g in p.gens.values() if g.rng == x]
        if not options:
            result = Finite(normalize(p, word, base=v))
            break
        best = min(options, key=lambda g: (-g.level, not _continues(p, g.src), g.name))
        word.append(best.name)
        x = best.src
    else:
        i = seen[x]
        result = omega_tail(p, word[:i], word[i:], base=v)
    if is_boundary(p, result):
        return result
    for bound in range(1, 4):
        found = enumerate_boundary(p, v, bound, bound + 1)
        if found:
            return found[0]
    return result


def _continues(p: Presentation, x: str) -> bool:
    return any(g.rng == x for g in p.gens.values())


def normal_words(p: Presentation, v: str, max_len: int) -> Iterator[Tuple[str, ...]]:
    """Normal words with range v of length <= max_len (levels non-increasing)."""
    def grow(word, x, top):
        yield word
        if len(word) == max_len:
            return
        for g in p.gens.values():
            if g.rng == x and g.level <= top:
                yield from grow(word + (g.name,), g.src, g.level)
    yield from grow((), v, p.max_level)


def enumerate_star(p: Presentation, v: str, prefix_bound: int, cycle_bound: int) -> List[StarPath]:
    """Canonical star paths from v within the word-length bounds, boundary or not."""
    found = {}
    for word in normal_words(p, v, prefix_bound):
        f = Finite(Path(v, word))
        found[f] = None
        end = src(p, f.path)
        for loop in normal_words(p, end, cycle_bound):
            if loop and p.gen(loop[-1]).src == end:
                found[omega_tail(p, word, loop, base=v)] = None
    return sorted(found, key=format_star)


def enumerate_boundary(p: Presentation, v: str, prefix_bound: int, cycle_bound: int) -> List[StarPath]:
    return [f for f in enumerate_star(p, v, prefix_bound, cycle_bound) if is_boundary(p, f)]


# -- literals ----------------------------------------------------------------

_STAR_RE = re.compile(r"^(?:(?P<prefix>.*)\.)?\((?P<cycle>[^()]*)\)\^w$")


def parse_star(p: Presentation, text: str) -> StarPath:
    text = "".join(text.split())
    m = _STAR_RE.match(text)
    if not m:
        return Finite(parse_path(p, text))
    cycle = parse_path(p, m.group("cycle"))
    if not cycle.word:
        raise PathError("cycle must be nonempty")
    prefix = parse_path(p, m.group("prefix")) if m.group("prefix") else None
    if prefix is None:
        return omega_tail(p, (), cycle.word, base=cycle.base)
    return omega_tail(p, prefix.word, cycle.word, base=prefix.base)


def format_star(f: StarPath) -> str:
    if isinstance(f, Finite):
        return str(f.path)
    cyc = "(" + ".".join(f.cycle.word) + ")^w"
    return ".".join(f.prefix.word) + "." + cyc if f.prefix.word else cyc
