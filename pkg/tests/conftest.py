import itertools

import numpy as np
import pytest

from onecomm.commutators import commutator_mask
from onecomm.group import conjugacy_classes
from onecomm.groupfile import corpus_dir, load_group
from onecomm.semidirect import build_paper_group

CORPUS = sorted(p.stem for p in corpus_dir().glob("*.json"))
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def corpus():
    return {name: load_group(corpus_dir() / f"{name}.json") for name in CORPUS}


@pytest.fixture(scope="session")
def paper_group():
    return build_paper_group()


@pytest.fixture(scope="session")
def paper_classes(paper_group):
    return conjugacy_classes(paper_group)


@pytest.fixture(scope="session")
def paper_mask(paper_group, paper_classes):
    mask, method = commutator_mask(paper_group, "auto", paper_classes)
    assert method == "class-reduced"
    return mask


# pure-Python permutation helpers used as independent oracles


def py_compose(p, q):
    return tuple(p[q[i] - 1] for i in range(len(p)))


def py_inverse(p):
    inv = [0] * len(p)
    for i, x in enumerate(p, 1):
        inv[x - 1] = i
    return tuple(inv)


def py_closure(gens):
    ident = tuple(range(1, len(gens[0]) + 1))
    seen = {ident}
    todo = [ident]
    while todo:
        x = todo.pop()
        for g in gens:
            y = py_compose(g, x)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def py_commutators(elems):
    return {py_compose(py_compose(g, h), py_compose(py_inverse(g), py_inverse(h)))
            for g in elems for h in elems}


def py_classes(elems):
    remaining, classes = set(elems), []
    while remaining:
        x = min(remaining)
        cls = {py_compose(py_compose(g, x), py_inverse(g)) for g in elems}
        classes.append(cls)
        remaining -= cls
    return classes


def is_even(p):
    return sum(1 for i, j in itertools.combinations(range(len(p)), 2) if p[i] > p[j]) % 2 == 0


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(12345)
