"""Random small presentations for property tests.

Level-1 atoms are generated by closing a few seed lassos under the
one-step shift and under prepending edges. A level-1 atom is determined by
its canonical lasso together with its source, so closure terminates exactly
when backward extension keeps falling into known cycles; otherwise the
attempt is abandoned once it passes ``cap`` atoms."""
from __future__ import annotations

import random
from typing import Dict, List, Optional, Tuple

from .presentation import FORMAT, Lasso, Presentation, canonical_lasso, from_dict, shift_lasso


def _random_graph(rng: random.Random, n_vertices: int, n_edges: int):
    vertices = [f"v{i}" for i in range(n_vertices)]
    edges = []
    for i in range(n_edges):
        edges.append({"name": f"e{i}", "src": rng.choice(vertices), "rng": rng.choice(vertices)})
    return vertices, edges


def _closed_walk(rng: random.Random, edges, start: str, max_len: int) -> Optional[List[dict]]:
    """A lasso-ordered closed word: entry i+1 has range equal to the src of entry i."""
    by_rng: Dict[str, List[dict]] = {}
    for e in edges:
        by_rng.setdefault(e["rng"], []).append(e)
    for _ in range(20):
        word, x = [], start
        for _ in range(max_len):
            options = by_rng.get(x, [])
            if not options:
                break
            e = rng.choice(options)
            word.append(e)
            x = e["src"]
            if x == start:
                return word
    return None


def _close(edges, seeds: List[Tuple[Lasso, str]], cap: int):
    by_name = {e["name"]: e for e in edges}
    out_of: Dict[str, List[str]] = {}  # edges u with s(u) = x, prependable onto atoms with range x
    for e in edges:
        out_of.setdefault(e["src"], []).append(e["name"])
    known: Dict[Tuple[Lasso, str], str] = {}
    order: List[Tuple[Lasso, str]] = []
    todo = list(seeds)
    while todo:
        key = todo.pop()
        if key in known:
            continue
        if len(known) >= cap:
            return None
        known[key] = f"a{len(known)}"
        order.append(key)
        (prefix, cycle), s = key
        todo.append((shift_lasso((prefix, cycle)), s))
        first = (prefix + cycle)[0]
        for u in out_of.get(by_name[first]["rng"], []):
            todo.append((canonical_lasso((u,) + prefix, cycle), s))
    return known, order


def random_presentation(rng: random.Random, max_vertices: int = 3, max_edges: int = 4,
                        atoms: bool = True, cap: int = 12, tries: int = 200) -> Presentation:
    for _ in range(tries):
        nv = rng.randint(1, max_vertices)
        vertices, edges = _random_graph(rng, nv, rng.randint(1, max_edges))
        doc = {"format": FORMAT, "vertices": vertices, "edges": edges, "atoms": {}, "prepend": {}}
        if not atoms:
            return from_dict(doc)
        seeds = []
        for _ in range(rng.randint(1, 2)):
            walk = _closed_walk(rng, edges, rng.choice(vertices), 4)
            if walk:
                seeds.append((canonical_lasso((), [e["name"] for e in walk]), rng.choice(vertices)))
        if not seeds:
            continue
        closed = _close(edges, seeds, cap)
        if closed is None:
            continue
        known, order = closed
        by_name = {e["name"]: e for e in edges}
        level1, prepend = [], []
        for key in order:
            (prefix, cycle), s = key
            first = (prefix + cycle)[0]
            level1.append({"name": known[key], "src": s, "rng": by_name[first]["rng"],
                           "prefix": list(prefix), "cycle": list(cycle)})
            for e in edges:
                if e["src"] == by_name[first]["rng"]:
                    result = known[(canonical_lasso((e["name"],) + prefix, cycle), s)]
                    prepend.append({"left": e["name"], "atom": known[key], "result": result})
        doc["atoms"] = {"1": level1}
        doc["prepend"] = {"1": prepend}
        return from_dict(doc)
    raise RuntimeError("no presentation found within the retry budget")


def corpus(seed: int = 0, size: int = 12) -> List[Presentation]:
    """A deterministic mix of presentations with and without level-1 atoms."""
    rng = random.Random(seed)
    out = []
    for i in range(size):
        out.append(random_presentation(rng, atoms=(i % 3 != 2)))
    return out
