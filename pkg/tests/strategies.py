import itertools
import random

from hypothesis import strategies as st

from ordgraph.ordinal import ZERO, Ordinal


def _from_terms(pairs):
    # pairs of (exponent, coefficient); merge duplicates and sort descending
    merged = {}
    for e, c in pairs:
        merged[e] = merged.get(e, 0) + c
    return Ordinal(sorted(merged.items(), key=lambda t: t[0], reverse=True))


def ordinals(depth: int = 2, max_terms: int = 3, max_coef: int = 5):
    """Hereditary CNF ordinals with nesting at most ``depth``."""
    if depth == 0:
        return st.integers(0, max_coef).map(Ordinal.nat)
    exps = ordinals(depth - 1, 2, 3)
    term = st.tuples(exps, st.integers(1, max_coef))
    return st.lists(term, max_size=max_terms).map(_from_terms)


def small_ordinals(max_exp: int = 4, max_terms: int = 3, max_coef: int = 4):
    """Ordinals below w^w (finite exponents), the range the flat oracle covers."""
    term = st.tuples(st.integers(0, max_exp).map(Ordinal.nat), st.integers(1, max_coef))
    return st.lists(term, max_size=max_terms).map(_from_terms)


def random_ordinal(rng: random.Random, depth: int = 2, max_terms: int = 3, max_coef: int = 5) -> Ordinal:
    if depth == 0:
        return Ordinal.nat(rng.randint(0, max_coef))
    pairs = [(random_ordinal(rng, depth - 1, 2, 3), rng.randint(1, max_coef))
             for _ in range(rng.randint(0, max_terms))]
    return _from_terms(pairs)


# -- paths ----------------------------------------------------------------------

def all_paths(p, max_len: int):
    from ordgraph.boundary import normal_words
    from ordgraph.patheng import Path
    return [Path(v, w) for v in p.vertices for w in normal_words(p, v, max_len)]


def random_position(p, a, rng: random.Random) -> Ordinal:
    """A random ordinal in [0, d(a)], landing inside generators as well as on cuts."""
    from ordgraph.ordinal import omega_times
    from ordgraph.patheng import Path, degree
    if not a.word or rng.random() < 0.1:
        return degree(p, a) if a.word and rng.random() < 0.5 else ZERO
    i = rng.randrange(len(a.word))
    start = degree(p, Path(a.base, a.word[:i]))
    k = p.level(a.word[i])
    inner = ZERO
    for j in range(k - 1, -1, -1):
        inner = inner + omega_times(j, rng.randint(0, 3))
    return start + inner


def positions(p, a, reach: int = 4):
    """Every ordinal in [0, d(a)] whose inner coordinates inside a generator are at most ``reach``."""
    from ordgraph.ordinal import omega_times
    from ordgraph.patheng import Path, degree
    out = []
    for i, x in enumerate(a.word):
        start = degree(p, Path(a.base, a.word[:i]))
        k = p.level(x)
        for coords in itertools.product(range(reach + 1), repeat=k):
            inner = ZERO
            for j, c in zip(range(k - 1, -1, -1), coords):
                inner = inner + omega_times(j, c)
            out.append(start + inner)
    out.append(degree(p, a))
    return sorted(set(out))
