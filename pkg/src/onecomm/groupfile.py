"""Group input files.

A group file is JSON::

    {"name": "S3", "degree": 3, "generators": [[2, 1, 3], [2, 3, 1]]}

with generators given as 1-based image arrays.  ``{"builtin": "paper-group"}``
stands for Z_2^10 x| A_6 built from the bundled matrices.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .group import FiniteGroup
from .perm import Permutation, PermutationError, generate

BUILTINS = ("paper-group",)


class GroupFileError(ValueError):
    pass


def parse_group(text: str, source: str = "<string>") -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GroupFileError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise GroupFileError(f"{source}: top level must be an object")
    if "builtin" in doc:
        if doc["builtin"] not in BUILTINS:
            raise GroupFileError(f"{source}: field 'builtin': unknown value {doc['builtin']!r}")
        return doc
    for key in ("degree", "generators"):
        if key not in doc:
            raise GroupFileError(f"{source}: missing field {key!r}")
    degree = doc["degree"]
    if not isinstance(degree, int) or degree < 1:
        raise GroupFileError(f"{source}: field 'degree' must be a positive integer")
    gens = doc["generators"]
    if not isinstance(gens, list) or not gens:
        raise GroupFileError(f"{source}: field 'generators' must be a nonempty list")
    for i, g in enumerate(gens):
        if not isinstance(g, list) or len(g) != degree or not all(isinstance(x, int) for x in g):
            raise GroupFileError(f"{source}: field 'generators[{i}]' must list {degree} integers")
        try:
            Permutation(tuple(g))
        except PermutationError as exc:
            raise GroupFileError(f"{source}: field 'generators[{i}]': {exc}") from None
    return doc


def group_from_doc(doc: dict, source: str = "<string>", size_cap: int | None = None) -> FiniteGroup:
    if doc.get("builtin") == "paper-group":
        from .semidirect import build_paper_group

        return build_paper_group()
    gens = [Permutation(tuple(g)) for g in doc["generators"]]
    kwargs = {} if size_cap is None else {"size_cap": size_cap}
    return generate(gens, name=doc.get("name", Path(source).stem), **kwargs)


def load_group(path: str | Path, size_cap: int | None = None) -> FiniteGroup:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise GroupFileError(f"{path}: {exc.strerror}") from None
    doc = parse_group(text, str(path))
    doc.setdefault("name", path.stem)
    return group_from_doc(doc, str(path), size_cap)


def corpus_dir() -> Path:
    return Path(str(resources.files("onecomm.data").joinpath("corpus")))


def corpus_path(name: str) -> Path:
    return corpus_dir() / f"{name}.json"


def marker_path() -> Path:
    return Path(str(resources.files("onecomm.data").joinpath("paper_group.json")))
