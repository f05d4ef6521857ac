"""The correspondence X_k over O(Lambda_k), its representation psi into
O(Lambda_(k+1)), and exact checks of the representation identities."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from ..conditions import is_regular
from ..patheng import compose, degree, divides, src, tail
from ..presentation import Presentation
from ..report import Check, Report, run_checks
from .laurent import Gauss, Laurent, LaurentMatrix
from .reps import RepError, Representation, generator_path


@dataclass(frozen=True)
class XElement:
    """A finitely supported function from level-k atoms to matrices."""

    level: int
    values: Tuple[Tuple[str, LaurentMatrix], ...]

    @classmethod
    def make(cls, level: int, values: Mapping[str, LaurentMatrix]) -> "XElement":
        return cls(level, tuple(sorted((a, m) for a, m in values.items() if not m.is_zero())))

    def __getitem__(self, atom: str) -> Optional[LaurentMatrix]:
        return dict(self.values).get(atom)

    @property
    def support(self) -> List[str]:
        return [a for a, _ in self.values]


def delta(p: Presentation, rep: Representation, atom: str) -> XElement:
    return XElement.make(p.level(atom), {atom: rep[p.gen(atom).src]})


def _check_level(x: XElement, y: XElement):
    if x.level != y.level:
        raise ValueError(f"level mismatch: {x.level} vs {y.level}")


def x_add(x: XElement, y: XElement) -> XElement:
    _check_level(x, y)
    out = dict(x.values)
    for a, m in y.values:
        out[a] = out[a] + m if a in out else m
    return XElement.make(x.level, out)


def x_inner(x: XElement, y: XElement, rep: Representation) -> LaurentMatrix:
    _check_level(x, y)
    total = rep.zero()
    ys = dict(y.values)
    for a, m in x.values:
        if a in ys:
            total = total + m.adjoint() @ ys[a]
    return total


def x_right_act(x: XElement, m: LaurentMatrix) -> XElement:
    return XElement.make(x.level, {a: v @ m for a, v in x.values})


def x_scale(x: XElement, c: Laurent) -> XElement:
    return XElement.make(x.level, {a: v.scale(c) for a, v in x.values})


def x_left_act(p: Presentation, g, x: XElement, adjoint: bool = False) -> XElement:
    """phi(T_g) x, or phi(T_g)^* x. g is a vertex name, a generator name of
    level below k, or a path of degree below w^k."""
    if isinstance(g, str):
        g = generator_path(p, g)
    k = x.level
    if degree(p, g) >= _omega_k(k):
        raise ValueError(f"{g} does not lie in Lambda_{k}")
    out: Dict[str, LaurentMatrix] = {}
    for e in p.names(k):
        ep = generator_path(p, e)
        if not adjoint:
            # (phi(T_g)x)(e) = x(g^-1 e) for e in g.Lambda
            if divides(p, g, ep):
                (pre,) = tail(p, ep, degree(p, g)).word
                if x[pre] is not None:
                    out[e] = x[pre]
        elif src(p, g) == ep.base:
            # (phi(T_g^*)x)(e) = x(ge)
            (ge,) = compose(p, g, ep).word
            if x[ge] is not None:
                out[e] = x[ge]
    return XElement.make(k, out)


def _omega_k(k: int):
    from ..ordinal import omega_pow
    return omega_pow(k)


def x_psi(p: Presentation, x: XElement, rep_big: Representation) -> LaurentMatrix:
    total = rep_big.zero()
    for a, m in x.values:
        total = total + rep_big[a] @ m
    return total


# -- algebra elements of O(Lambda_k), kept as words so phi can act on them -------

Word = Tuple[Tuple[str, bool], ...]  # factors left to right, (name, adjoint?)


@dataclass(frozen=True)
class AlgebraElement:
    terms: Tuple[Tuple[Gauss, Word], ...]

    def matrix(self, rep: Representation) -> LaurentMatrix:
        total = rep.zero()
        for c, word in self.terms:
            m = LaurentMatrix.identity(rep.size)
            for name, star in word:
                m = m @ (rep[name].adjoint() if star else rep[name])
            total = total + m.scale(Laurent.const(c))
        return total

    def act(self, p: Presentation, x: XElement) -> XElement:
        out = XElement.make(x.level, {})
        for c, word in self.terms:
            y = x
            for name, star in reversed(word):
                y = x_left_act(p, name, y, adjoint=star)
            out = x_add(out, x_scale(y, Laurent.const(c)))
        return out


def algebra_generators(p: Presentation, k: int) -> List[str]:
    return list(p.vertices) + [g.name for g in p.gens.values() if g.level < k]


def random_algebra_element(p: Presentation, k: int, rng: random.Random,
                           max_terms: int = 3, max_len: int = 3) -> AlgebraElement:
    names = algebra_generators(p, k)
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        c = Gauss(rng.randint(-3, 3), rng.randint(-2, 2))
        word = tuple((rng.choice(names), rng.random() < 0.5) for _ in range(rng.randint(1, max_len)))
        terms.append((c, word))
    return AlgebraElement(tuple(terms))


def random_x(p: Presentation, k: int, rep_small: Representation, rng: random.Random) -> XElement:
    values = {}
    for a in p.names(k):
        if rng.random() < 0.7:
            m = random_algebra_element(p, k, rng).matrix(rep_small)
            values[a] = rep_small[p.gen(a).src] @ m
    return XElement.make(k, values)


# -- verification --------------------------------------------------------------------

def _eq(relation: str, subject: str, lhs: LaurentMatrix, rhs: LaurentMatrix) -> Check:
    diff = lhs - rhs
    return Check(relation, subject, diff.is_zero(), "" if diff.is_zero() else f"residual {diff.to_strings()}")


def verify_correspondence(p: Presentation, k: int, rep_small: Representation,
                          rep_big: Representation, samples: int = 20, seed: int = 0,
                          parallel: bool = False) -> Report:
    """Check psi(x.a) = psi(x)pi(a), psi(phi(a)x) = pi(a)psi(x),
    psi(x)^*psi(y) = pi(<x,y>) on random elements, and covariance at every
    k-regular vertex. pi is rep_small, which must agree with rep_big on the
    generators of Lambda_k."""
    shared = algebra_generators(p, k)
    for name in shared:
        if rep_small[name] != rep_big[name]:
            raise RepError(f"rep_small and rep_big disagree on {name}")
    for a in p.names(k):
        rep_big[a]
    rng = random.Random(seed)
    cases = []
    for i in range(samples):
        cases.append((i, random_x(p, k, rep_small, rng), random_x(p, k, rep_small, rng),
                      random_algebra_element(p, k, rng)))
    cases.append((samples, XElement.make(k, {}), XElement.make(k, {}), random_algebra_element(p, k, rng)))

    thunks = []
    for i, x, y, a in cases:
        A = a.matrix(rep_small)
        thunks.append(lambda i=i, x=x, A=A: _eq(
            "(i)", f"sample {i}", x_psi(p, x_right_act(x, A), rep_big), x_psi(p, x, rep_big) @ A))
        thunks.append(lambda i=i, x=x, a=a, A=A: _eq(
            "(ii)", f"sample {i}", x_psi(p, a.act(p, x), rep_big), A @ x_psi(p, x, rep_big)))
        thunks.append(lambda i=i, x=x, y=y: _eq(
            "(iii)", f"sample {i}", x_psi(p, x, rep_big).adjoint() @ x_psi(p, y, rep_big),
            x_inner(x, y, rep_small)))
    for v in p.vertices:
        if not is_regular(p, v, k):
            continue

        def cov(v=v):
            total = rep_big.zero()
            for g in p.generators(k, v):
                m = x_psi(p, delta(p, rep_small, g.name), rep_big)
                total = total + m @ m.adjoint()
            return _eq("(iv)", v, total, rep_small[v])
        thunks.append(cov)
    return run_checks(thunks, parallel)


def directed_graph_check(p: Presentation, rep: Representation, samples: int = 100,
                         seed: int = 0) -> Report:
    """Compare X_0 with the usual graph correspondence on c_c(edges) over
    c_0(vertices): (h.f)(e) = h(r(e))f(e), (f.h)(e) = f(e)h(s(e)),
    <f,g>(v) = sum over s(e)=v of conj(f(e))g(e)."""
    edges = p.names(0)
    rng = random.Random(seed)

    def gauss():
        return Gauss(rng.randint(-4, 4), rng.randint(-4, 4))

    def embed_fn(f: Mapping[str, Gauss]) -> XElement:
        return XElement.make(0, {e: rep[p.gen(e).src].scale(Laurent.const(c)) for e, c in f.items()})

    def embed_h(h: Mapping[str, Gauss]) -> LaurentMatrix:
        total = rep.zero()
        for v, c in h.items():
            total = total + rep[v].scale(Laurent.const(c))
        return total

    checks = []
    for i in range(samples):
        f = {e: gauss() for e in edges}
        g = {e: gauss() for e in edges}
        h = {v: gauss() for v in p.vertices}
        hf = {e: h[p.gen(e).rng] * f[e] for e in edges}
        fh = {e: f[e] * h[p.gen(e).src] for e in edges}
        inner = {v: _gsum(f[e].conj() * g[e] for e in edges if p.gen(e).src == v) for v in p.vertices}

        left = AlgebraElement(tuple((c, ((v, False),)) for v, c in h.items())).act(p, embed_fn(f))
        checks.append(Check("left", f"sample {i}", left == embed_fn(hf)))
        checks.append(Check("right", f"sample {i}", x_right_act(embed_fn(f), embed_h(h)) == embed_fn(fh)))
        checks.append(_eq("inner", f"sample {i}", x_inner(embed_fn(f), embed_fn(g), rep), embed_h(inner)))
    return Report(checks)


def _gsum(items) -> Gauss:
    total = Gauss(0)
    for x in items:
        total = total + x
    return total
