"""Bundled example presentations and representations."""
from importlib import resources

from .presentation import Presentation, load
from .starops.reps import Representation, load_rep


def path(name: str):
    return resources.files("ordgraph") / "data" / name


def presentation(name: str) -> Presentation:
    return load(str(path(f"{name}.json")))


def representation(name: str) -> Representation:
    return load_rep(str(path(f"{name}.rep.json")))
