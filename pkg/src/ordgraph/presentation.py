"""Finitely presented ordinal graphs: data model, loading and validation."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path as FsPath
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

FORMAT = "ordgraph-v1"
NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")

Lasso = Tuple[Tuple[str, ...], Tuple[str, ...]]


class PresentationError(ValueError):
    """Raised for schema problems and failed validation.

    ``findings`` lists every failed check with its witness."""

    def __init__(self, message: str, findings: Optional[List["Finding"]] = None):
        super().__init__(message)
        self.findings = findings or []


@dataclass(frozen=True)
class Finding:
    check: str
    subject: str
    detail: str

    def __str__(self):
        return f"[{self.check}] {self.subject}: {self.detail}"


@dataclass(frozen=True)
class Generator:
    name: str
    level: int
    src: str
    rng: str
    prefix: Tuple[str, ...] = ()
    cycle: Tuple[str, ...] = ()

    @property
    def is_edge(self) -> bool:
        return self.level == 0

    @property
    def lasso(self) -> Lasso:
        return self.prefix, self.cycle

    def lasso_entry(self, i: int) -> str:
        """Head generator number i+1 of the eventually periodic lasso word."""
        if i < len(self.prefix):
            return self.prefix[i]
        return self.cycle[(i - len(self.prefix)) % len(self.cycle)]

    def lasso_index(self, i: int) -> int:
        # position i reduced into prefix + one period
        if i < len(self.prefix):
            return i
        return len(self.prefix) + (i - len(self.prefix)) % len(self.cycle)


def primitive_root(word: Tuple[str, ...]) -> Tuple[str, ...]:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word[:d] * (n // d) == word:
            return word[:d]
    return word


def canonical_lasso(prefix: Iterable[str], cycle: Iterable[str]) -> Lasso:
    prefix, cycle = list(prefix), tuple(cycle)
    if not cycle:
        raise ValueError("lasso cycle must be nonempty")
    cycle = primitive_root(cycle)
    while prefix and prefix[-1] == cycle[-1]:
        prefix.pop()
        cycle = cycle[-1:] + cycle[:-1]
    return tuple(prefix), cycle


def shift_lasso(lasso: Lasso) -> Lasso:
    prefix, cycle = lasso
    if prefix:
        return canonical_lasso(prefix[1:], cycle)
    return canonical_lasso((), cycle[1:] + cycle[:1])


def lasso_unroll(lasso: Lasso, n: int) -> Tuple[str, ...]:
    prefix, cycle = lasso
    out = list(prefix[:n])
    while len(out) < n:
        out.extend(cycle)
    return tuple(out[:n])


class Presentation:
    """A validated, immutable presentation.

    Generators keep declaration order (edges first, then atoms by level);
    that order is the deterministic tie-break used throughout."""

    def __init__(self, vertices, generators, prepend, tails):
        self.vertices: Tuple[str, ...] = tuple(vertices)
        self.gens: Dict[str, Generator] = dict(generators)
        self.prepend_table: Dict[Tuple[str, str], str] = dict(prepend)
        self.tails_table: Dict[Tuple[str, int], str] = dict(tails)
        self.max_level = max((g.level for g in self.gens.values()), default=0)
        self.order = {name: i for i, name in enumerate(self.gens)}
        self._by_level: Dict[int, Tuple[str, ...]] = {}
        for g in self.gens.values():
            self._by_level[g.level] = self._by_level.get(g.level, ()) + (g.name,)
        self.sigma: Dict[str, str] = {}
        self._cache: dict = {}

    def __repr__(self):
        return (f"Presentation(vertices={len(self.vertices)}, "
                f"generators={len(self.gens)}, K={self.max_level})")

    def gen(self, name: str) -> Generator:
        try:
            return self.gens[name]
        except KeyError:
            raise PresentationError(f"unknown generator {name!r}") from None

    def level(self, name: str) -> int:
        return self.gen(name).level

    def names(self, level: int) -> Tuple[str, ...]:
        return self._by_level.get(level, ())

    def levels(self) -> List[int]:
        return sorted(self._by_level)

    def generators(self, level: int, range: Optional[str] = None) -> List[Generator]:
        gens = [self.gens[n] for n in self.names(level)]
        if range is not None:
            gens = [g for g in gens if g.rng == range]
        return gens

    def lower(self, level: int) -> List[Generator]:
        """All generators of level < ``level``."""
        return [g for g in self.gens.values() if g.level < level]

    def prepend(self, u: str, a: str) -> str:
        try:
            return self.prepend_table[(u, a)]
        except KeyError:
            raise PresentationError(f"no prepend entry for ({u}, {a})") from None

    def tail_atom(self, a: str, j: int) -> str:
        """sigma^j(a): the tail atom after j head generators."""
        for _ in range(j):
            a = self.sigma[a]
        return a

    def to_dict(self) -> dict:
        doc = {
            "format": FORMAT,
            "vertices": list(self.vertices),
            "edges": [{"name": g.name, "src": g.src, "rng": g.rng}
                      for g in self.gens.values() if g.is_edge],
            "atoms": {},
            "prepend": {},
        }
        for g in self.gens.values():
            if not g.is_edge:
                doc["atoms"].setdefault(str(g.level), []).append({
                    "name": g.name, "src": g.src, "rng": g.rng,
                    "prefix": list(g.prefix), "cycle": list(g.cycle)})
        for (u, a), r in self.prepend_table.items():
            doc["prepend"].setdefault(str(self.level(a)), []).append(
                {"left": u, "atom": a, "result": r})
        if self.tails_table:
            doc["tails"] = {}
            for (a, j), r in self.tails_table.items():
                doc["tails"].setdefault(str(self.level(a)), []).append(
                    {"atom": a, "shift": j, "result": r})
        return doc


def atoms(p: Presentation, level: int, range: Optional[str] = None) -> List[Generator]:
    if level < 1:
        raise ValueError("atoms have level >= 1")
    return p.generators(level, range)


# -- loading -----------------------------------------------------------------

def _need(doc: Mapping, key: str, kind, where: str):
    if key not in doc:
        raise PresentationError(f"schema: missing key {key!r} in {where}")
    value = doc[key]
    if not isinstance(value, kind):
        raise PresentationError(f"schema: {where}.{key} has the wrong type")
    return value


def _name(value, where: str) -> str:
    if not isinstance(value, str) or not NAME_RE.match(value):
        raise PresentationError(f"schema: invalid name {value!r} in {where}")
    return value


def _level_key(key: str, where: str) -> int:
    if not (isinstance(key, str) and key.isdigit()):
        raise PresentationError(f"schema: level key {key!r} in {where} is not a natural number")
    return int(key)


def build(doc: Mapping) -> Presentation:
    """Structural construction without semantic validation."""
    if not isinstance(doc, Mapping):
        raise PresentationError("schema: document must be a JSON object")
    if doc.get("format") != FORMAT:
        raise PresentationError(f"schema: format must be {FORMAT!r}")
    vertices = [_name(v, "vertices") for v in _need(doc, "vertices", list, "document")]
    if len(set(vertices)) != len(vertices):
        raise PresentationError("schema: duplicate vertex name")
    vset = set(vertices)
    gens: Dict[str, Generator] = {}

    def add(gen: Generator):
        if gen.name in gens or gen.name in vset:
            raise PresentationError(f"schema: duplicate name {gen.name!r}")
        for end in (gen.src, gen.rng):
            if end not in vset:
                raise PresentationError(f"unknown vertex {end!r} in generator {gen.name!r}")
        gens[gen.name] = gen

    for i, e in enumerate(_need(doc, "edges", list, "document")):
        where = f"edges[{i}]"
        if not isinstance(e, Mapping):
            raise PresentationError(f"schema: {where} must be an object")
        add(Generator(_name(_need(e, "name", str, where), where), 0,
                      _name(_need(e, "src", str, where), where),
                      _name(_need(e, "rng", str, where), where)))

    raw_atoms = doc.get("atoms", {})
    if not isinstance(raw_atoms, Mapping):
        raise PresentationError("schema: atoms must be an object")
    for key in sorted(raw_atoms, key=lambda k: _level_key(k, "atoms")):
        level = _level_key(key, "atoms")
        if level < 1:
            raise PresentationError("schema: atom levels start at 1")
        for i, a in enumerate(raw_atoms[key]):
            where = f"atoms[{key}][{i}]"
            if not isinstance(a, Mapping):
                raise PresentationError(f"schema: {where} must be an object")
            prefix = [_name(x, where) for x in _need(a, "prefix", list, where)]
            cycle = [_name(x, where) for x in _need(a, "cycle", list, where)]
            if not cycle:
                raise PresentationError(f"schema: {where} has an empty cycle")
            prefix, cycle = canonical_lasso(prefix, cycle)
            add(Generator(_name(_need(a, "name", str, where), where), level,
                          _name(_need(a, "src", str, where), where),
                          _name(_need(a, "rng", str, where), where), prefix, cycle))

    def table(key, fields):
        raw = doc.get(key, {})
        if not isinstance(raw, Mapping):
            raise PresentationError(f"schema: {key} must be an object")
        rows = []
        for lk, entries in raw.items():
            level = _level_key(lk, key)
            if not isinstance(entries, list):
                raise PresentationError(f"schema: {key}[{lk}] must be a list")
            for i, entry in enumerate(entries):
                where = f"{key}[{lk}][{i}]"
                if not isinstance(entry, Mapping):
                    raise PresentationError(f"schema: {where} must be an object")
                rows.append((level, where, [entry.get(f) for f in fields]))
        return rows

    prepend: Dict[Tuple[str, str], str] = {}
    for level, where, (u, a, r) in table("prepend", ("left", "atom", "result")):
        for x in (u, a, r):
            _name(x, where)
            if x not in gens:
                raise PresentationError(f"unknown generator {x!r} in {where}")
        if gens[a].level != level:
            raise PresentationError(f"schema: {where} lists atom {a!r} under the wrong level")
        if (u, a) in prepend and prepend[(u, a)] != r:
            raise PresentationError(f"schema: conflicting prepend entries for ({u}, {a})")
        prepend[(u, a)] = r

    tails: Dict[Tuple[str, int], str] = {}
    for level, where, (a, j, r) in table("tails", ("atom", "shift", "result")):
        for x in (a, r):
            _name(x, where)
            if x not in gens:
                raise PresentationError(f"unknown generator {x!r} in {where}")
        if not isinstance(j, int) or isinstance(j, bool) or j < 1:
            raise PresentationError(f"schema: {where} shift must be a positive integer")
        if gens[a].level != level:
            raise PresentationError(f"schema: {where} lists atom {a!r} under the wrong level")
        tails[(a, j)] = r

    # lasso entries must name generators one level down
    for g in gens.values():
        for x in g.prefix + g.cycle:
            if x not in gens:
                raise PresentationError(f"unknown generator {x!r} in lasso of {g.name!r}")
    return Presentation(vertices, gens, prepend, tails)


def validate(p: Presentation) -> List[Finding]:
    """Run every semantic check and return the failures (empty when valid).

    Also resolves the single-step tail map ``p.sigma`` as a side effect."""
    out: List[Finding] = []
    G = p.gens

    # (e) coherence of lassos
    for g in G.values():
        if g.is_edge:
            continue
        word = g.prefix + g.cycle + g.cycle
        bad = [x for x in word if G[x].level != g.level - 1]
        if bad:
            out.append(Finding("coherence", g.name,
                               f"lasso entry {bad[0]} is not of level {g.level - 1}"))
            continue
        for x, y in zip(word, word[1:]):
            if G[x].src != G[y].rng:
                out.append(Finding("coherence", g.name,
                                   f"lasso entries {x}.{y} do not compose"))
                break
        if G[word[0]].rng != g.rng:
            out.append(Finding("coherence", g.name,
                               f"rng {g.rng} differs from rng of lasso head {word[0]}"))
    if out:
        return out

    # (e) coherence of prepend entries
    for (u, a), r in sorted(p.prepend_table.items()):
        gu, ga, gr = G[u], G[a], G[r]
        subject = f"({u}, {a})"
        if ga.is_edge:
            out.append(Finding("coherence", subject, f"{a} is not an atom"))
        elif gu.level >= ga.level:
            out.append(Finding("coherence", subject, f"level of {u} is not below level of {a}"))
        elif gu.src != ga.rng:
            out.append(Finding("coherence", subject, f"s({u}) != r({a})"))
        elif gr.level != ga.level:
            out.append(Finding("coherence", subject, f"result {r} has the wrong level"))
        elif gr.src != ga.src:
            out.append(Finding("coherence", subject, f"src({r}) != src({a})"))
        elif gr.rng != gu.rng:
            out.append(Finding("coherence", subject, f"rng({r}) != r({u})"))

    # (a) totality
    for a in G.values():
        if a.is_edge:
            continue
        for u in p.lower(a.level):
            if u.src == a.rng and (u.name, a.name) not in p.prepend_table:
                out.append(Finding("totality", f"({u.name}, {a.name})",
                                   "missing prepend entry"))

    # (b) left cancellation
    seen: Dict[Tuple[str, str], str] = {}
    for (u, a), r in sorted(p.prepend_table.items()):
        if (u, r) in seen:
            out.append(Finding("cancellation", f"({u}, {seen[(u, r)]}), ({u}, {a})",
                               f"both prepend to {r}"))
        seen[(u, r)] = a
    if out:
        return out

    # (c) lasso compatibility
    for (u, a), r in sorted(p.prepend_table.items()):
        ga = G[a]
        if G[u].level == ga.level - 1:
            expected = canonical_lasso((u,) + ga.prefix, ga.cycle)
        else:
            h1 = ga.lasso_entry(0)
            first = p.prepend_table.get((u, h1))
            if first is None:
                out.append(Finding("lasso", f"({u}, {a})", f"needs prepend entry ({u}, {h1})"))
                continue
            rest_prefix, rest_cycle = shift_lasso(ga.lasso)
            expected = canonical_lasso((first,) + rest_prefix, rest_cycle)
        if G[r].lasso != expected:
            out.append(Finding("lasso", f"({u}, {a})",
                               f"lasso of {r} is {_show(G[r].lasso)}, expected {_show(expected)}"))

    # (d) tail closure
    by_key: Dict[Tuple[Lasso, str], List[str]] = {}
    for g in G.values():
        if not g.is_edge:
            by_key.setdefault((g.lasso, g.src), []).append(g.name)
    p.sigma.clear()
    for a in G.values():
        if a.is_edge:
            continue
        want = shift_lasso(a.lasso)
        explicit = p.tails_table.get((a.name, 1))
        if explicit is not None:
            t = G[explicit]
            if t.level != a.level or t.lasso != want or t.src != a.src:
                out.append(Finding("tails", a.name,
                                   f"explicit tail {explicit} does not match shifted lasso {_show(want)}"))
            else:
                p.sigma[a.name] = explicit
            continue
        found = by_key.get((want, a.src), [])
        if not found:
            out.append(Finding("tails", a.name, f"no atom has lasso {_show(want)} and src {a.src}"))
        elif len(found) > 1:
            out.append(Finding("tails", a.name,
                               f"ambiguous tail: {', '.join(found)} share lasso {_show(want)}"))
        else:
            p.sigma[a.name] = found[0]
    if out:
        return out
    for (a, j), r in sorted(p.tails_table.items()):
        if p.tail_atom(a, j) != r:
            out.append(Finding("tails", a, f"explicit tail at shift {j} is {r}, "
                                           f"but iterating gives {p.tail_atom(a, j)}"))

    # (f) tail consistency: folding the head word back onto the tail recovers a
    for a in G.values():
        if a.is_edge:
            continue
        span = len(a.prefix) + len(a.cycle)
        for j in range(1, span + 1):
            x = p.tail_atom(a.name, j)
            ok = True
            for i in range(j - 1, -1, -1):
                x = p.prepend_table.get((a.lasso_entry(i), x))
                if x is None:
                    ok = False
                    break
            if not ok or x != a.name:
                out.append(Finding("tail-consistency", a.name,
                                   f"head word of length {j} does not refold onto the tail"))
                break

    # (g) associativity of prepend across levels
    for (u1, a), r1 in sorted(p.prepend_table.items()):
        if G[u1].is_edge:
            continue
        for u in p.lower(G[u1].level):
            if u.src != G[u1].rng:
                continue
            lhs = p.prepend_table.get((u.name, r1))
            mid = p.prepend_table.get((u.name, u1))
            rhs = p.prepend_table.get((mid, a)) if mid else None
            if lhs != rhs:
                out.append(Finding("coherence", f"({u.name}, {u1}, {a})",
                                   f"prepend is not associative: {lhs} vs {rhs}"))
    return out


def _show(lasso: Lasso) -> str:
    prefix, cycle = lasso
    return ".".join(prefix) + ("." if prefix else "") + "(" + ".".join(cycle) + ")^w"


def from_dict(doc: Mapping) -> Presentation:
    p = build(doc)
    findings = validate(p)
    if findings:
        raise PresentationError("validation failed: " + "; ".join(map(str, findings)), findings)
    return p


def load(source: Union[str, FsPath, Mapping]) -> Presentation:
    """Load from a mapping, a JSON string, or a file path."""
    if isinstance(source, Mapping):
        return from_dict(source)
    text = str(source)
    if isinstance(source, FsPath) or not text.lstrip().startswith("{"):
        try:
            text = FsPath(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise PresentationError(f"cannot read {source}: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PresentationError(f"schema: invalid JSON ({exc})") from None
    return from_dict(doc)
