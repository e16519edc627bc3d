"""Codeword stabilized codes in standard form.

A code is specified by a simple-graph adjacency matrix M and a list of
classical codewords; the stabilizer generators are derived as X at vertex
i together with Z on its neighbourhood (row i of M), and the codeword
operators are Z to the power of each classical word.  Detection of a
Pauli error reduces to classical detection of its image under the
classicalization map z + M x.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from . import gf2
from .pauli import Pauli


class InvalidCodeError(ValueError):
    """A code definition violates a structural invariant."""


@dataclass
class CwsCode:
    n: int
    adjacency: np.ndarray
    codewords: np.ndarray  # K x n, row 0 is the all-zero word
    generators: list[Pauli] = field(repr=False)

    @property
    def num_codewords(self) -> int:
        return int(self.codewords.shape[0])


def build_code(adjacency, codewords) -> CwsCode:
    """Validate a definition and derive the stabilizer generators.

    Raises InvalidCodeError naming the violated invariant: the adjacency
    matrix must be square, symmetric and zero-diagonal; the codewords must
    be distinct, of matching length, and start with the all-zero word.
    """
    m = gf2.as_matrix(adjacency)
    if m.shape[0] != m.shape[1]:
        raise InvalidCodeError(f"adjacency matrix must be square, got {m.shape}")
    n = m.shape[0]
    if not np.array_equal(m, m.T):
        raise InvalidCodeError("adjacency matrix must be symmetric")
    if np.any(np.diag(m)):
        raise InvalidCodeError("adjacency matrix must have zero diagonal")
    words = [gf2.as_vector(w) for w in codewords]
    if not words:
        raise InvalidCodeError("at least one codeword required")
    for w in words:
        if w.shape[0] != n:
            raise InvalidCodeError(
                f"codeword length {w.shape[0]} does not match n={n}"
            )
    if np.any(words[0]):
        raise InvalidCodeError("first codeword must be the all-zero word")
    seen = set()
    for w in words:
        key = gf2.format_vector(w)
        if key in seen:
            raise InvalidCodeError(f"duplicate codeword {key}")
        seen.add(key)
    m.setflags(write=False)
    word_matrix = np.array(words, dtype=np.uint8)
    word_matrix.setflags(write=False)
    generators = [
        Pauli(x=np.eye(n, dtype=np.uint8)[i], z=m[i]) for i in range(n)
    ]
    return CwsCode(n=n, adjacency=m, codewords=word_matrix, generators=generators)


def classicalize(code: CwsCode, e: Pauli) -> np.ndarray:
    """Classical word z + M x of a Pauli error, phase discarded."""
    if e.n != code.n:
        raise ValueError(f"error acts on {e.n} qubits, code has {code.n}")
    return e.z ^ gf2.matvec(code.adjacency, e.x)


@dataclass
class DetectionResult:
    detected: bool
    word: np.ndarray
    degenerate: bool
    detail: str

    def __bool__(self) -> bool:
        return self.detected


def detects(code: CwsCode, e: Pauli) -> DetectionResult:
    """Classical detectability of a Pauli error.

    A nonzero classical word must not be a difference of two codewords.
    A zero word means the error is a stabilizer element up to phase; it
    passes only when it commutes with every codeword operator, i.e. acts
    as the identity on the whole code (flagged "degenerate-pass").
    """
    word = classicalize(code, e)
    if not word.any():
        overlap = gf2.matvec(code.codewords, e.x)
        if overlap.any():
            i = int(np.nonzero(overlap)[0][0])
            return DetectionResult(
                False, word, True,
                f"degenerate error anticommutes with codeword operator C_{i + 1}",
            )
        return DetectionResult(True, word, True, "degenerate-pass")
    index = {gf2.format_vector(w): i for i, w in enumerate(code.codewords)}
    for i, w in enumerate(code.codewords):
        hit = index.get(gf2.format_vector(w ^ word))
        if hit is not None:
            return DetectionResult(
                False, word, False,
                f"classical collision: C_{i + 1} + {gf2.format_vector(word)}"
                f" equals C_{hit + 1}",
            )
    return DetectionResult(True, word, False, "classically detected")


def codeword_matrix(code: CwsCode) -> np.ndarray:
    """K x n matrix whose i-th row is the i-th classical codeword."""
    return code.codewords.copy()


@dataclass
class ErrorSet:
    """Ordered Pauli errors with unique human-readable labels."""

    errors: list[Pauli]
    labels: list[str]

    def __post_init__(self):
        if len(self.errors) != len(self.labels):
            raise ValueError("errors and labels differ in length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be unique")
        sizes = {e.n for e in self.errors}
        if len(sizes) > 1:
            raise ValueError("errors act on different qubit counts")

    def __len__(self) -> int:
        return len(self.errors)

    def __iter__(self):
        return iter(zip(self.labels, self.errors))

    def subset(self, indices) -> "ErrorSet":
        return ErrorSet(
            [self.errors[i] for i in indices],
            [self.labels[i] for i in indices],
        )

    @classmethod
    def weight_one(cls, n: int) -> "ErrorSet":
        """All 3n single-qubit errors ordered X_1, Y_1, Z_1, X_2, ..."""
        errors, labels = [], []
        for q in range(n):
            for letter in "XYZ":
                errors.append(Pauli.single(n, q, letter))
                labels.append(f"{letter}{q + 1}")
        return cls(errors, labels)


def errors_from_entries(entries, n: int) -> ErrorSet:
    """Build an ErrorSet from strings or {"label","pauli"} mappings."""
    errors, labels = [], []
    for entry in entries:
        if isinstance(entry, str):
            label, text = entry, entry
        else:
            label, text = entry["label"], entry["pauli"]
        p = Pauli.from_string(text)
        if p.n != n:
            raise ValueError(f"error {label!r} acts on {p.n} qubits, expected {n}")
        errors.append(p)
        labels.append(label)
    return ErrorSet(errors, labels)


def to_dict(code: CwsCode) -> dict:
    return {
        "n": code.n,
        "adjacency": [gf2.format_vector(row) for row in code.adjacency],
        "codewords": [gf2.format_vector(w) for w in code.codewords],
    }


def from_dict(d: dict) -> tuple[CwsCode, ErrorSet | None]:
    """Build a code (and optional error set) from its JSON form."""
    for key in ("n", "adjacency", "codewords"):
        if key not in d:
            raise InvalidCodeError(f"missing field {key!r}")
    adjacency = gf2.parse_matrix(d["adjacency"])
    if adjacency.shape[0] != d["n"]:
        raise InvalidCodeError(
            f"adjacency has {adjacency.shape[0]} rows but n={d['n']}"
        )
    code = build_code(adjacency, [gf2.parse_vector(w) for w in d["codewords"]])
    errors = None
    if "errors" in d:
        errors = errors_from_entries(d["errors"], code.n)
    return code, errors


def code_fingerprint(code: CwsCode) -> str:
    """SHA-256 of the canonical JSON definition; identifies the code."""
    canonical = json.dumps(to_dict(code), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("ascii")).hexdigest()
