import json
from importlib import resources
from pathlib import Path

import pytest

from cohodim.fpgroup import parse_presentations
from cohodim.simplicial import SimplicialComplex

DATA = Path(__file__).parent / "data"
CORPUS = resources.files("cohodim") / "corpus"

FINITE_GROUPS = ["trivial", "cyclic5", "s3", "s4", "a4", "a5", "d4", "q8", "heis27"]


def corpus_presentation(name):
    return parse_presentations((CORPUS / f"{name}.grp").read_text(encoding="utf-8"))[""]


def corpus_complex(name):
    return SimplicialComplex.from_json(json.loads((CORPUS / f"{name}.json").read_text(encoding="utf-8")))


@pytest.fixture(scope="session")
def oracle_values():
    return json.loads((DATA / "oracle_values.json").read_text(encoding="utf-8"))
