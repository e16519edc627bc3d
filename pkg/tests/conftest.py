import json
from pathlib import Path

import numpy as np
import pytest

from cwskit import cws, gf2
from cwskit.observables import Type4Observable

REPO = Path(__file__).resolve().parents[1]
CODE_FILE = REPO / "codes" / "cross-10-20-3.json"
TABLE_FILE = REPO / "fixtures" / "paper-table2.json"


@pytest.fixture(scope="session")
def ring_code():
    """The ((10,20,3)) double-ring code shipped with the repository."""
    code, _ = cws.from_dict(json.loads(CODE_FILE.read_text()))
    return code


@pytest.fixture(scope="session")
def ring_errors():
    return cws.ErrorSet.weight_one(10)


@pytest.fixture(scope="session")
def reference_table():
    """Published reference data: Pauli observable exponents, seven
    four-term observables, and the conditional sign table."""
    data = json.loads(TABLE_FILE.read_text())
    observables = {
        entry["name"]: Type4Observable.from_dict(entry)
        for entry in data["observables"]
    }
    return {
        "pauli": [gf2.parse_vector(s) for s in data["pauli_observables"]],
        "observables": observables,
        "classes": data["classes"],
    }


@pytest.fixture()
def toy_code():
    """n=4 cycle graph with a codeword pair whose difference is reachable
    by a weight-2 error; used for non-detection cases."""
    adjacency = gf2.parse_matrix(["0101", "1010", "0101", "1010"])
    words = [gf2.parse_vector(w) for w in ("0000", "0011", "0101")]
    return cws.build_code(adjacency, words)


@pytest.fixture()
def cycle5_code():
    adjacency = np.zeros((5, 5), dtype=np.uint8)
    for i in range(5):
        adjacency[i, (i + 1) % 5] = adjacency[(i + 1) % 5, i] = 1
    words = [np.zeros(5, dtype=np.uint8), np.ones(5, dtype=np.uint8)]
    return cws.build_code(adjacency, words)


def random_code(rng: np.random.Generator, n: int, max_words: int = 8):
    """Random simple graph plus random distinct codewords led by zero."""
    adjacency = np.zeros((n, n), dtype=np.uint8)
    for i in range(n):
        for j in range(i + 1, n):
            adjacency[i, j] = adjacency[j, i] = rng.integers(0, 2)
    count = min(int(rng.integers(1, max_words + 1)), 2 ** n)
    seen = {0}
    words = [np.zeros(n, dtype=np.uint8)]
    while len(words) < count:
        value = int(rng.integers(1, 2 ** n))
        if value not in seen:
            seen.add(value)
            words.append(gf2.from_int(value, n))
    return cws.build_code(adjacency, words)
