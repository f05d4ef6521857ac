"""Matrix representations and the Cuntz-Krieger relation checker."""
from __future__ import annotations

import json
from pathlib import Path as FsPath
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from ..conditions import is_regular, regularity
from ..patheng import Path, divides, src
from ..presentation import Presentation
from ..report import Check, Report, run_checks
from .laurent import Laurent, LaurentError, LaurentMatrix


class RepError(ValueError):
    pass


class Representation:
    def __init__(self, size: int, variables: Sequence[str], assign: Mapping[str, LaurentMatrix]):
        self.size = size
        self.variables = tuple(variables)
        self.assign: Dict[str, LaurentMatrix] = dict(assign)
        for name, m in self.assign.items():
            if m.size != size:
                raise RepError(f"matrix for {name} has size {m.size}, expected {size}")

    def __getitem__(self, name: str) -> LaurentMatrix:
        try:
            return self.assign[name]
        except KeyError:
            raise RepError(f"no matrix assigned to {name!r}") from None

    def __contains__(self, name):
        return name in self.assign

    def zero(self) -> LaurentMatrix:
        return LaurentMatrix.zero(self.size)

    def restrict(self, names: Iterable[str]) -> "Representation":
        return Representation(self.size, self.variables, {n: self[n] for n in names})

    def to_dict(self) -> dict:
        return {"size": self.size, "variables": list(self.variables),
                "assign": {n: m.to_strings() for n, m in self.assign.items()}}


def rep_from_dict(doc: Mapping) -> Representation:
    try:
        size = doc["size"]
        variables = doc.get("variables", [])
        raw = doc["assign"]
    except (KeyError, TypeError):
        raise RepError("representation needs 'size' and 'assign'") from None
    if not isinstance(size, int) or size < 1:
        raise RepError("size must be a positive integer")
    assign = {}
    for name, rows in raw.items():
        if len(rows) != size or any(len(r) != size for r in rows):
            raise RepError(f"matrix for {name} is not {size}x{size}")
        try:
            assign[name] = LaurentMatrix.parse(rows, variables)
        except LaurentError as exc:
            raise RepError(f"entry of {name}: {exc}") from None
    return Representation(size, variables, assign)


def load_rep(source: Union[str, FsPath, Mapping]) -> Representation:
    if isinstance(source, Mapping):
        return rep_from_dict(source)
    try:
        doc = json.loads(FsPath(source).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise RepError(f"cannot read representation {source}: {exc}") from None
    return rep_from_dict(doc)


def generator_path(p: Presentation, name: str) -> Path:
    if name in p.vertices:
        return Path(name)
    return Path(p.gen(name).rng, (name,))


def disjoint(p: Presentation, x: str, y: str) -> bool:
    """x.Lambda and y.Lambda do not meet (otherwise one divides the other)."""
    a, b = generator_path(p, x), generator_path(p, y)
    return not (divides(p, a, b) or divides(p, b, a))


def default_levels(p: Presentation, rep: Representation) -> List[int]:
    out = []
    for k in p.levels():
        names = p.names(k)
        have = [n in rep for n in names]
        if all(have):
            out.append(k)
        elif any(have):
            missing = next(n for n, h in zip(names, have) if not h)
            raise RepError(f"level {k} is only partly assigned; {missing} has no matrix")
    return out


def _eq_check(relation: str, subject: str, lhs: LaurentMatrix, rhs: LaurentMatrix) -> Check:
    diff = lhs - rhs
    if diff.is_zero():
        return Check(relation, subject, True)
    return Check(relation, subject, False, f"residual {diff.to_strings()}")


def verify_ck(p: Presentation, rep: Representation, levels: Optional[Iterable[int]] = None,
              parallel: bool = False) -> Report:
    levels = sorted(set(levels)) if levels is not None else default_levels(p, rep)
    gens = [g for g in p.gens.values() if g.level in levels]
    for name in [g.name for g in gens] + list(p.vertices):
        rep[name]  # raises on a missing assignment
    T = rep.assign
    thunks = []

    def nonzero(name):
        return lambda: Check("(1)", name, not T[name].is_zero(),
                             "" if not T[name].is_zero() else "generator is the zero matrix")

    for v in p.vertices:
        thunks.append(nonzero(v))
    for g in gens:
        thunks.append(nonzero(g.name))
        thunks.append(lambda g=g: _eq_check("(1)", g.name, T[g.name].adjoint() @ T[g.name], T[g.src]))
    for v in p.vertices:
        thunks.append(lambda v=v: _eq_check("(P)", f"{v}*={v}", T[v].adjoint(), T[v]))
        thunks.append(lambda v=v: _eq_check("(P)", f"{v}^2={v}", T[v] @ T[v], T[v]))
        for w in p.vertices:
            if p.vertices.index(w) > p.vertices.index(v):
                thunks.append(lambda v=v, w=w: _eq_check("(P)", f"{v}{w}=0", T[v] @ T[w], rep.zero()))
    for e in gens:
        for f in gens:
            if e.src == f.rng and e.level < f.level:
                ef = p.prepend(e.name, f.name)
                thunks.append(lambda e=e, f=f, ef=ef: _eq_check(
                    "(2)", f"{e.name}.{f.name}={ef}", T[e.name] @ T[f.name], T[ef]))
    names = [g.name for g in gens] + list(p.vertices)
    for i, x in enumerate(names):
        for y in names[i + 1:]:
            if disjoint(p, x, y):
                thunks.append(lambda x=x, y=y: _eq_check(
                    "(3)", f"{x}*{y}=0", T[x].adjoint() @ T[y], rep.zero()))
    for k in levels:
        for v in p.vertices:
            if not is_regular(p, v, k):
                continue
            row = [g.name for g in p.generators(k, v)]

            def rel4(v=v, row=row, k=k):
                total = rep.zero()
                for a in row:
                    total = total + T[a] @ T[a].adjoint()
                return _eq_check("(4)", f"{v}@{k}", total, T[v])
            thunks.append(rel4)
    return run_checks(thunks, parallel)


def gauge_rescale(p: Presentation, rep: Representation, k: int, var: str = "lam") -> Representation:
    """Keep levels <= k and multiply the level-k matrices by a fresh variable."""
    if var in rep.variables:
        raise RepError(f"variable {var} already in use")
    lam = Laurent.var(var)
    assign = {v: rep[v] for v in p.vertices}
    for g in p.gens.values():
        if g.level < k:
            assign[g.name] = rep[g.name]
        elif g.level == k:
            assign[g.name] = rep[g.name].scale(lam)
    return Representation(rep.size, rep.variables + (var,), assign)


def katsura_vertices(p: Presentation, k: int) -> List[str]:
    return [v for v in p.vertices if regularity(p, v, k).regular]


def ideal_span_member(p: Presentation, pq: Tuple[Path, Path], k: int) -> bool:
    """Whether T_p T_v T_q^* (v = s(p) = s(q)) is one of the spanning elements
    of the ideal generated by the k-regular vertex projections."""
    a, b = pq
    if src(p, a) != src(p, b):
        raise ValueError("p and q must have the same source")
    return src(p, a) in katsura_vertices(p, k)
