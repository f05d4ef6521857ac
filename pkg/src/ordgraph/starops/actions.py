"""The boundary-path representation tau and the shift representation pi,
as partial maps on basis vectors."""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from ..boundary import (StarPath, enumerate_boundary, is_boundary, star_compose, star_head,
                        star_length, star_tail)
from ..conditions import is_regular
from ..ordinal import omega_pow
from ..patheng import Path, degree
from ..presentation import Presentation
from ..report import Check, Report, run_checks
from ..shift import is_cancellative, shift_v
from .reps import disjoint


@dataclass(frozen=True)
class ShiftBasisVector:
    f: StarPath
    n: Tuple[int, ...]

    def __str__(self):
        return f"({self.f}, {list(self.n)})"


def _gen_path(p: Presentation, name: str) -> Path:
    return Path(p.gen(name).rng, (name,))


def _in_cylinder(p: Presentation, e: Path, f: StarPath) -> bool:
    """f in e.(boundary)."""
    d = degree(p, e)
    return e.base == f.range and d < star_length(p, f) and star_head(p, f, d) == e


# -- tau -----------------------------------------------------------------------

def tau_apply(p: Presentation, gen: str, f: StarPath) -> Optional[StarPath]:
    if gen in p.vertices:
        return f if f.range == gen else None
    g = p.gen(gen)
    if g.src != f.range:
        return None
    return star_compose(p, _gen_path(p, gen), f)


def tau_adjoint(p: Presentation, gen: str, f: StarPath) -> Optional[StarPath]:
    if gen in p.vertices:
        return f if f.range == gen else None
    e = _gen_path(p, gen)
    if not _in_cylinder(p, e, f):
        return None
    return star_tail(p, f, degree(p, e))


# -- pi ------------------------------------------------------------------------

def _v(p: Presentation, f, k: int) -> int:
    key = ("shift-v", f, k)
    hit = p._cache.get(key)
    if hit is None:
        hit = p._cache[key] = shift_v(p, f, k, strict=False)
    return hit


def pi_apply(p: Presentation, gen: str, b: ShiftBasisVector) -> Optional[ShiftBasisVector]:
    if gen in p.vertices:
        return b if b.f.range == gen else None
    ef = tau_apply(p, gen, b.f)
    if ef is None:
        return None
    e = _gen_path(p, gen)
    L = star_length(p, ef)
    m = []
    for k, n in enumerate(b.n):
        if L <= omega_pow(k + 1):
            m.append(n + _v(p, e, k))
        else:
            m.append(n + _v(p, ef, k) - _v(p, b.f, k))
    return ShiftBasisVector(ef, tuple(m))


def pi_adjoint(p: Presentation, gen: str, b: ShiftBasisVector) -> Optional[ShiftBasisVector]:
    if gen in p.vertices:
        return b if b.f.range == gen else None
    f = tau_adjoint(p, gen, b.f)
    if f is None:
        return None
    e = _gen_path(p, gen)
    L = star_length(p, b.f)
    n = []
    for k, m in enumerate(b.n):
        if L <= omega_pow(k + 1):
            n.append(m - _v(p, e, k))
        else:
            n.append(m - _v(p, b.f, k) + _v(p, f, k))
    return ShiftBasisVector(f, tuple(n))


def in_graded_subspace(p: Presentation, f: StarPath, k: int, zeta: int) -> bool:
    """Whether f spans part of the subspace on which the level-k gauge
    intertwining is expected: for every j in [k, zeta), L(f) <= w^(j+1) or
    f is j-cancellative."""
    L = star_length(p, f)
    return all(L <= omega_pow(j + 1) or is_cancellative(p, f, j) is True
               for j in range(k, zeta))


# -- relation checking on partial maps ---------------------------------------------

Word = Sequence[Tuple[str, bool]]  # (generator, adjoint?) applied right to left


def _apply(step, word: Word, vec: Counter) -> Counter:
    for gen, star in reversed(word):
        out: Counter = Counter()
        for basis, c in vec.items():
            image = step(gen, star, basis)
            if image is not None:
                out[image] += c
        vec = +out
    return vec


def _relation_thunks(p: Presentation, samples, step, label: str) -> List[Callable[[], Check]]:
    gens = list(p.gens.values())
    names = [g.name for g in gens] + list(p.vertices)
    thunks = []

    def same(rel, subject, lhs: Word, rhs: Word, rhs_sum: Sequence[Word] = ()):
        def check():
            bad = []
            for b in samples:
                left = _apply(step, lhs, Counter({b: 1}))
                right = _apply(step, rhs, Counter({b: 1})) if rhs else Counter()
                for w in rhs_sum:
                    right.update(_apply(step, w, Counter({b: 1})))
                if left != +right:
                    bad.append(str(b))
            detail = f"fails on {bad[0]} ({len(bad)} of {len(samples)} samples)" if bad else ""
            return Check(rel, subject, not bad, detail)
        return check

    for g in gens:
        thunks.append(same("(1)", g.name, [(g.name, True), (g.name, False)], [(g.src, False)]))
    for e in gens:
        for f in gens:
            if e.src == f.rng and e.level < f.level:
                ef = p.prepend(e.name, f.name)
                thunks.append(same("(2)", f"{e.name}.{f.name}={ef}",
                                   [(e.name, False), (f.name, False)], [(ef, False)]))
    for i, x in enumerate(names):
        for y in names[i + 1:]:
            if disjoint(p, x, y):
                thunks.append(same("(3)", f"{x}*{y}=0", [(x, True), (y, False)], []))
    for k in p.levels():
        for v in p.vertices:
            if is_regular(p, v, k):
                row = [[(a.name, False), (a.name, True)] for a in p.generators(k, v)]
                thunks.append(same("(4)", f"{v}@{k}", [(v, False)], [], row))
    return thunks


def _tau_step(p):
    def step(gen, star, f):
        return (tau_adjoint if star else tau_apply)(p, gen, f)
    return step


def _pi_step(p):
    def step(gen, star, b):
        return (pi_adjoint if star else pi_apply)(p, gen, b)
    return step


def verify_tau(p: Presentation, samples: Iterable[StarPath], parallel: bool = False) -> Report:
    samples = list(samples)
    thunks = _relation_thunks(p, samples, _tau_step(p), "tau")

    def closure():
        bad = [f"{g}.{f}" for f in samples for g in p.gens
               if (h := tau_apply(p, g, f)) is not None and not is_boundary(p, h)]
        return Check("boundary", "tau images", not bad, f"{bad[0]} is not a boundary path" if bad else "")
    thunks.append(closure)
    return run_checks(thunks, parallel)


def verify_pi(p: Presentation, samples: Iterable[ShiftBasisVector], zeta: int,
              parallel: bool = False) -> Report:
    samples = list(samples)
    if zeta > p.max_level + 1:
        raise ValueError(f"zeta must be at most {p.max_level + 1}")
    if any(len(b.n) != zeta for b in samples):
        raise ValueError(f"every sample needs {zeta} integer coordinates")
    thunks = _relation_thunks(p, samples, _pi_step(p), "pi")

    for k in range(zeta):
        def gauge(k=k):
            graded = [b for b in samples if in_graded_subspace(p, b.f, k, zeta)]
            bad = []
            for b in graded:
                for gen in list(p.vertices) + [g.name for g in p.gens.values() if g.level <= k]:
                    want = 1 if gen in p.gens and p.gen(gen).level == k else 0
                    out = pi_apply(p, gen, b)
                    if out is not None and out.n[k] - b.n[k] != want:
                        bad.append(f"{gen} on {b}")
                    back = pi_adjoint(p, gen, b)
                    if back is not None and b.n[k] - back.n[k] != want:
                        bad.append(f"{gen}* on {b}")
            detail = f"{len(graded)} graded samples" + (f"; fails: {bad[0]}" if bad else "")
            return Check("gauge", f"level {k}", not bad, detail)
        thunks.append(gauge)
    return run_checks(thunks, parallel)


def shift_samples(p: Presentation, zeta: int, prefix_bound: int = 1, cycle_bound: int = 2,
                  radius: int = 2) -> List[ShiftBasisVector]:
    paths = []
    for v in p.vertices:
        paths.extend(enumerate_boundary(p, v, prefix_bound, cycle_bound))
    grid = list(itertools.product(range(-radius, radius + 1), repeat=zeta))
    return [ShiftBasisVector(f, n) for f in paths for n in grid]
