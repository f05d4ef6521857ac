"""Cancellativity and the integer shift function v(f)_k."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .boundary import Finite, OmegaTail, StarPath, as_star, star_compose, star_head, star_length, star_tail
from .ordinal import Ordinal, divmod_omega, left_sub, omega_pow, omega_times
from .patheng import Path, degree


class ShiftError(ValueError):
    pass


@dataclass(frozen=True)
class CancellativityWitness:
    """f = f(beta) f(eps)^-1 f with -eps + beta >= w^k."""

    eps: Ordinal
    beta: Ordinal


def _cut_tails(p, g: StarPath, k: int, count: int):
    L = star_length(p, g)
    for i in range(count):
        pos = omega_times(k, i)
        if pos >= L:
            return
        yield pos, star_tail(p, g, pos)


def is_cancellative(p, f: Union[StarPath, Path], k: int):
    """True, or a witness that f is not k-cancellative.

    Equal tails at eps < beta with -eps + beta >= w^k are exactly the failures
    (left cancellation turns f = f(beta) f(eps)^-1 f into f(eps)^-1 f = f(beta)^-1 f).
    A failure at inner positions propagates to the next whole-w^k cuts, so
    scanning cuts until a tail repeats is exact."""
    f = as_star(f)
    bound = omega_pow(k + 1)
    L = star_length(p, f)
    if L < bound:
        return True
    g = Finite(star_head(p, f, bound)) if L > bound else f
    count = len(p.names(k + 1)) + 2
    if isinstance(g, OmegaTail):
        count += len(g.prefix.word) + len(g.cycle.word)
    first = {}
    for pos, t in _cut_tails(p, g, k, count):
        if t in first:
            return CancellativityWitness(first[t], pos)
        first[t] = pos
    return True


def check_witness(p, f, w: CancellativityWitness, k: int) -> bool:
    f = as_star(f)
    if w.eps > w.beta or w.beta >= omega_pow(k + 1) or left_sub(w.eps, w.beta) < omega_pow(k):
        return False
    front, back = star_head(p, f, w.beta), star_tail(p, f, w.eps)
    if (p.gen(front.word[-1]).src if front.word else front.base) != back.range:
        return False
    return star_compose(p, front, back) == f


def _least_rotation(word):
    return min(range(len(word)), key=lambda i: word[i:] + word[:i])


def class_position(p, f: StarPath, k: int) -> Ordinal:
    """Position gamma with f(gamma)^-1 f equal to the chosen class
    representative c(f) (taken at beta = 0). Needs L(f) <= w^(k+1), or a
    finite f whose degree is exactly w^(k+1)."""
    if isinstance(f, OmegaTail):
        m = p.level(f.cycle.word[0])
        r = _least_rotation(f.cycle.word)
        return degree(p, f.prefix) + omega_times(m, r)
    # a single atom of level k+1: follow sigma into its eventual cycle and
    # stop at the first atom (in declaration order) of that cycle
    (atom,) = f.path.word
    seen = []
    x = atom
    while x not in seen:
        seen.append(x)
        x = p.sigma[x]
    loop = seen[seen.index(x):]
    target = min(loop, key=p.order.__getitem__)
    return omega_times(k, seen.index(target))


def shift_v(p, f: Union[StarPath, Path], k: int, strict: bool = True) -> int:
    """v(f)_k.

    With ``strict`` the value is only produced where it is well defined:
    finite paths of degree below w^(k+1) and k-cancellative star paths.
    ``strict=False`` extends it to every star path by applying the class
    representative rule everywhere (any choice works as long
    as v(f) = v(f(w^(k+1))) for long f)."""
    f = as_star(f)
    bound = omega_pow(k + 1)
    if isinstance(f, Finite) and degree(p, f.path) < bound:
        return divmod_omega(degree(p, f.path), k)[0]
    if strict and is_cancellative(p, f, k) is not True:
        raise ShiftError(f"{f} is not {k}-cancellative, so v(f)_{k} is not determined")
    if star_length(p, f) > bound and not (isinstance(f, Finite) and degree(p, f.path) == bound):
        return shift_v(p, Finite(star_head(p, f, bound)), k, strict)
    gamma = class_position(p, f, k)
    n, _ = divmod_omega(gamma, k)
    return n
