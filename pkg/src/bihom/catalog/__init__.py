"""Built-in catalog: the 2-dimensional classification rows and three 3-dimensional examples.

Each entry is a JSON data file under ``data/`` holding an algebra document in
canonical (round-trip stable) form plus provenance and editorial notes.
"""

from __future__ import annotations

import json
import random
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import List, Tuple

from ..axioms import verify_bihom_poisson
from ..documents import load_algebra
from ..errors import UnknownId
from ..linalg import BiHomAlgebra
from ..oracle import DEFAULT_SEED, confirm_report
from ..report import Report


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    source: str
    document: dict
    editorial_notes: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def algebra(self) -> BiHomAlgebra:
        return _algebra(self.id)


def _natural(eid: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", eid)]


@lru_cache(maxsize=None)
def _load_all() -> Tuple[CatalogEntry, ...]:
    out = []
    for item in resources.files(__package__).joinpath("data").iterdir():
        if not item.name.endswith(".json"):
            continue
        payload = json.loads(item.read_text(encoding="utf-8"))
        out.append(CatalogEntry(
            id=payload["id"],
            source=payload["source"],
            document=payload["document"],
            editorial_notes=tuple(payload.get("editorial_notes", ())),
        ))
    out.sort(key=lambda e: _natural(e.id))
    return tuple(out)


def catalog_entries() -> List[CatalogEntry]:
    return list(_load_all())


def catalog_ids() -> List[str]:
    return [e.id for e in _load_all()]


def get_entry(eid: str) -> CatalogEntry:
    for e in _load_all():
        if e.id == eid:
            return e
    raise UnknownId(eid)


@lru_cache(maxsize=None)
def _algebra(eid: str) -> BiHomAlgebra:
    return load_algebra(get_entry(eid).document)


def _verify_one(eid: str, seed: int) -> Report:
    entry = get_entry(eid)
    report = verify_bihom_poisson(_algebra(eid), subject=eid)
    confirm_report(entry.document, report, random.Random(f"{seed}:{eid}"))
    return report


def catalog_verify(selector: str = "all", seed: int = DEFAULT_SEED, jobs: int = 1) -> List[Tuple[str, Report]]:
    """Symbolic verification of selected entries, FAILs re-checked numerically.

    Results are ordered by id and do not depend on ``jobs``.
    """
    ids = catalog_ids() if selector == "all" else [get_entry(selector).id]
    if jobs > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_verify_one, ids, [seed] * len(ids)))
    else:
        reports = [_verify_one(eid, seed) for eid in ids]
    return list(zip(ids, reports))


def ex2_10_untwisted() -> BiHomAlgebra:
    """The 3-dimensional algebra before twisting, with alpha = beta = id."""
    params = ["a", "b", "c", "d"]
    return load_algebra({
        "dimension": 3,
        "parameters": params,
        "kind": "poisson",
        "mu": [[1, 1, 1, "1"], [1, 2, 3, "1"], [2, 1, 3, "1"]],
        "bracket": [
            [1, 2, 2, "a"], [1, 2, 3, "b"], [1, 3, 2, "c"], [1, 3, 3, "d"],
            [2, 1, 2, "-a"], [2, 1, 3, "-b"], [3, 1, 2, "-c"], [3, 1, 3, "-d"],
        ],
        "alpha": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
        "beta": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
    })


def ex2_10_alpha():
    """The twisting map: alpha(e1) = l1 e2 + l2 e3, alpha(e2) = l3 e2 + l4 e3, alpha(e3) = l5 e2 + l6 e3."""
    from ..documents import parse_matrix

    params = tuple(f"lambda{i}" for i in range(1, 7))
    return parse_matrix(
        [["0", "0", "0"], ["lambda1", "lambda3", "lambda5"], ["lambda2", "lambda4", "lambda6"]],
        params,
    )
