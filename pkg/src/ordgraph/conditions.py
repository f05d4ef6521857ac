"""Regularity, condition (C), components, non-returning and full paths, and a
bounded search for condition (S)."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

from .ordinal import Ordinal, omega_times
from .patheng import Path, PathError, compose, degree, divides, head, normalize, sigma_power, tail
from .presentation import Presentation


@dataclass(frozen=True)
class RegularityReport:
    vertex: str
    level: int
    source_regular: bool
    row_count: int

    @property
    def regular(self) -> bool:
        # row-finiteness is automatic for finite presentations
        return self.source_regular


@dataclass(frozen=True)
class ConditionCWitness:
    level: int
    atom: str
    loop: Path


@dataclass(frozen=True)
class SResult:
    verified_up_to: Optional[int] = None
    level: Optional[int] = None
    component: Tuple[str, ...] = ()
    n: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.verified_up_to is not None


def reachable(p: Presentation, v: str, k: int) -> FrozenSet[str]:
    """{s(e) : e in v.Lambda_k}: follow r(u) -> s(u) for generators below level k."""
    key = ("reach", v, k)
    hit = p._cache.get(key)
    if hit is not None:
        return hit
    arcs: Dict[str, List[str]] = {}
    for g in p.lower(k):
        arcs.setdefault(g.rng, []).append(g.src)
    seen, todo = {v}, [v]
    while todo:
        for w in arcs.get(todo.pop(), ()):
            if w not in seen:
                seen.add(w)
                todo.append(w)
    p._cache[key] = frozenset(seen)
    return p._cache[key]


def regularity(p: Presentation, v: str, k: int) -> RegularityReport:
    if v not in p.vertices:
        raise ValueError(f"unknown vertex {v!r}")
    has_in = {g.rng for g in p.generators(k)}
    source_regular = all(w in has_in for w in reachable(p, v, k))
    return RegularityReport(v, k, source_regular, len(p.generators(k, v)))


def is_regular(p: Presentation, v: str, k: int) -> bool:
    key = ("regular", v, k)
    hit = p._cache.get(key)
    if hit is None:
        hit = p._cache[key] = regularity(p, v, k).regular
    return hit


def regular_vertices(p: Presentation, k: int) -> List[str]:
    return [v for v in p.vertices if is_regular(p, v, k)]


def condition_c(p: Presentation) -> Optional[ConditionCWitness]:
    """None when condition (C) holds, else the least witness ordered by
    (level, loop length, loop word, atom)."""
    best = None
    for k in p.levels():
        if k == 0:
            continue
        lower = sorted(p.lower(k), key=lambda g: p.order[g.name])
        for a in p.generators(k):
            if not is_regular(p, a.rng, k):
                continue
            loop = _fixing_loop(p, a.name, lower)
            if loop is None:
                continue
            path = normalize(p, loop)
            key = (k, len(path.word), path.word, p.order[a.name])
            if best is None or key < best[0]:
                best = (key, ConditionCWitness(k, a.name, path))
        if best is not None:
            return best[1]
    return None


def _fixing_loop(p: Presentation, a: str, lower) -> Optional[Tuple[str, ...]]:
    """Shortest nonempty g (letters below the level of a) with g.a = a,
    found by BFS over arcs b -> prepend(u, b)."""
    parent: Dict[str, Tuple[str, str]] = {a: None}
    queue = deque([a])
    while queue:
        b = queue.popleft()
        rb = p.gen(b).rng
        for u in lower:
            if u.src != rb:
                continue
            c = p.prepend(u.name, b)
            if c == a:
                labels = [u.name]
                while parent[b] is not None:
                    prev, lab = parent[b]
                    labels.append(lab)
                    b = prev
                return tuple(labels)  # last applied first: g = u_n ... u_1
            if c not in parent:
                parent[c] = (b, u.name)
                queue.append(c)
    return None


def short_loop(p: Presentation, v: str, k: int) -> Optional[Path]:
    """A nonempty loop at v built from generators of level < k, if any."""
    arcs: Dict[str, List[str]] = {}
    for g in p.lower(k):
        arcs.setdefault(g.rng, []).append(g.name)
    parent = {v: None}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for name in arcs.get(x, ()):
            y = p.gen(name).src
            if y == v:
                word = [name]
                while parent[x] is not None:
                    x, lab = parent[x]
                    word.append(lab)
                return normalize(p, reversed(word))
            if y not in parent:
                parent[y] = (x, name)
                queue.append(y)
    return None


def components(p: Presentation, k: int) -> List[Tuple[str, ...]]:
    parent = {v: v for v in p.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in p.lower(k):
        a, b = find(g.src), find(g.rng)
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: Dict[str, List[str]] = {}
    for v in p.vertices:
        groups.setdefault(find(v), []).append(v)
    return sorted(tuple(sorted(g)) for g in groups.values())


def component_of(p: Presentation, v: str, k: int) -> Tuple[str, ...]:
    return next(c for c in components(p, k) if v in c)


# -- non-returning and full paths -----------------------------------------------

def tail_positions(p: Presentation, a: str) -> Dict[str, Ordinal]:
    """Every tail atom a(r)^-1 a with r < w^level(a), mapped to its least position.

    Position w^(k-1)*i + r' gives sigma^i(a) when r' = 0 and otherwise
    prepend(tail(h_(i+1), r'), sigma^(i+1)(a)); the pair (lasso index, sigma^i(a))
    determines everything after it, so the scan stops when that pair repeats."""
    key = ("tailpos", a)
    hit = p._cache.get(key)
    if hit is not None:
        return hit
    g = p.gen(a)
    out: Dict[str, Ordinal] = {}
    if g.is_edge:
        out[a] = Ordinal.nat(0)
        p._cache[key] = out
        return out
    seen = set()
    i = 0
    while True:
        state = (g.lasso_index(i), sigma_power(p, a, i))
        if state in seen:
            break
        seen.add(state)
        cut = omega_times(g.level - 1, i)
        out.setdefault(state[1], cut)
        h = g.lasso_entry(i)
        if g.level >= 2:
            nxt = sigma_power(p, a, i + 1)
            for t, r in tail_positions(p, h).items():
                if r:
                    out.setdefault(p.prepend(t, nxt), cut + r)
        i += 1
    p._cache[key] = out
    return out


def _pure_block(p: Presentation, e: Path) -> Tuple[int, int]:
    d = degree(p, e)
    if len(d.terms) != 1:
        raise PathError(f"degree {d} of {e} is not of the form w^k*n")
    exponent, n = d.terms[0]
    return int(exponent), n


def non_returning(p: Presentation, e: Path) -> bool:
    k, n = _pure_block(p, e)
    betas = sorted(set(tail_positions(p, e.word[0]).values()))
    for j in range(1, n):
        for r in sorted(set(tail_positions(p, e.word[j]).values())):
            gamma = omega_times(k, j) + r
            front = head(p, e, gamma)
            for beta in betas:
                back = tail(p, e, beta)
                if front.word and back.base != p.gen(front.word[-1]).src:
                    continue
                if divides(p, e, compose(p, front, back)):
                    return False
    return True


def visited_below(p: Presentation, e: Path, k: int) -> FrozenSet[str]:
    """{s(e(b)) : b < w^k, b <= d(e)}."""
    from .boundary import visited_inner

    out = {e.base}
    for x in e.word:
        g = p.gen(x)
        if g.level < k:
            out |= visited_inner(p, x)
            out.add(g.src)
            continue
        while g.level > k:
            g = p.gen(g.lasso_entry(0))
        out |= visited_inner(p, g.name)
        break
    return frozenset(out)


def alpha_full(p: Presentation, e: Path, k: int) -> bool:
    seen = visited_below(p, e, k)
    return all(reachable(p, v, k) & seen for v in component_of(p, e.base, k))


def condition_s(p: Presentation, max_n: Optional[int] = None, slack: int = 2,
                budget: int = 200_000) -> SResult:
    """Bounded search: for every level k with generators, every component of
    Lambda_k and every n <= max_n, look for a non-returning k-full word of
    m level-k generators with n <= m <= n + slack."""
    if max_n is not None and max_n < 1:
        raise ValueError("max_n must be at least 1")
    for k in p.levels():
        gens = p.generators(k)
        limit = max_n if max_n is not None else 2 * len(gens) + 2
        for comp in components(p, k):
            lengths = _witness_lengths(p, k, comp, limit + slack, budget)
            for n in range(1, limit + 1):
                if not any(m in lengths for m in range(n, n + slack + 1)):
                    return SResult(level=k, component=comp, n=n)
    return SResult(verified_up_to=max_n if max_n is not None else
                   min((2 * len(p.generators(k)) + 2 for k in p.levels()), default=1))


def _witness_lengths(p: Presentation, k: int, comp, max_len: int, budget: int) -> set:
    found = set()
    into: Dict[str, List[str]] = {}
    for g in p.generators(k):
        into.setdefault(g.rng, []).append(g.name)
    stack = [(v, ()) for v in sorted(comp, reverse=True)]
    visits = 0
    while stack and visits < budget:
        x, word = stack.pop()
        visits += 1
        if word:
            path = Path(p.gen(word[0]).rng, word)
            if len(word) not in found and non_returning(p, path) and alpha_full(p, path, k):
                found.add(len(word))
        if len(word) < max_len:
            for name in reversed(into.get(x, ())):
                stack.append((p.gen(name).src, word + (name,)))
    return found
